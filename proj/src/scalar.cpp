#include "klr/scalar.hpp"

namespace klr {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n % d == 0) return n == d;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    unsigned __int128 acc = 1, b = base % m;
    while (exp) {
        if (exp & 1) acc = acc * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw value_error("division by zero in F_p");
    return mod_pow(a % p, p - 2, p);
}

Field Field::prime(std::uint64_t p) {
    if (!is_prime_u64(p)) {
        throw value_error("modulus " + std::to_string(p) + " is not prime");
    }
    if (p >= (1ull << 31)) throw value_error("prime modulus too large");
    return Field(p);
}

std::uint64_t Field::root_of_unity(std::uint64_t e) const {
    if (is_rational()) {
        if (e == 1) return 1;
        throw value_error("rationals contain no nontrivial roots of unity");
    }
    if (e == 0 || (p_ - 1) % e != 0) {
        throw value_error("F_" + std::to_string(p_) + " has no e-th root of unity, e=" +
                          std::to_string(e));
    }
    for (std::uint64_t z = e == 1 ? 1 : 2; z < p_; ++z) {
        if (mod_pow(z, e, p_) != 1) continue;
        // primitive: z^(e/q) != 1 for prime divisors q of e
        bool primitive = true;
        for (std::uint64_t q = 2; q <= e; ++q) {
            if (e % q == 0 && is_prime_u64(q) && mod_pow(z, e / q, p_) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return z;
    }
    throw value_error("no primitive root found");
}

std::string Field::to_string() const {
    return is_rational() ? "rational" : "fp:" + std::to_string(p_);
}

Scalar::Scalar(Field f, const mpq_class& q) : field_(f) {
    if (f.is_rational()) {
        q_ = q;
        q_.canonicalize();
    } else {
        // embed an integer-valued rational via reduction mod p
        mpq_class c = q;
        c.canonicalize();
        if (c.get_den() != 1) throw value_error("non-integer rational into F_p");
        mpz_class m = c.get_num() % static_cast<long>(f.modulus());
        if (m < 0) m += static_cast<long>(f.modulus());
        r_ = m.get_ui();
    }
}

void Scalar::assign_int(long v) {
    if (field_.is_rational()) {
        q_ = v;
    } else {
        long p = static_cast<long>(field_.modulus());
        long m = v % p;
        if (m < 0) m += p;
        r_ = static_cast<std::uint64_t>(m);
    }
}

void Scalar::check_same(const Scalar& o) const {
    if (field_ != o.field_) throw value_error("scalar field mismatch");
}

bool Scalar::is_zero() const {
    return field_.is_rational() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rational() ? q_ == 1 : r_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar out(field_, 0L);
    if (field_.is_rational()) out.q_ = q_ + o.q_;
    else out.r_ = (r_ + o.r_) % field_.modulus();
    return out;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    Scalar out(field_, 0L);
    if (field_.is_rational()) out.q_ = q_ - o.q_;
    else out.r_ = (r_ + field_.modulus() - o.r_) % field_.modulus();
    return out;
}

Scalar Scalar::operator-() const {
    Scalar out(field_, 0L);
    if (field_.is_rational()) out.q_ = -q_;
    else out.r_ = r_ == 0 ? 0 : field_.modulus() - r_;
    return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar out(field_, 0L);
    if (field_.is_rational()) out.q_ = q_ * o.q_;
    else out.r_ = r_ * o.r_ % field_.modulus();
    return out;
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inverse();
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw value_error("division by zero");
    Scalar out(field_, 0L);
    if (field_.is_rational()) out.q_ = 1 / q_;
    else out.r_ = mod_inverse(r_, field_.modulus());
    return out;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same(o);
    return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

bool Scalar::operator<(const Scalar& o) const {
    check_same(o);
    return field_.is_rational() ? q_ < o.q_ : r_ < o.r_;
}

std::string Scalar::to_string() const {
    return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

}  // namespace klr
