#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace klr {

// Thrown when an argument violates a documented precondition.
struct value_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a substitution sends a denominator to zero.
struct poisoned_denominator : std::domain_error {
    using std::domain_error::domain_error;
};

bool is_prime_u64(std::uint64_t n);

// Coefficient field descriptor: the rationals or F_p for a prime p.
class Field {
  public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint64_t p);

    bool is_rational() const { return p_ == 0; }
    std::uint64_t modulus() const { return p_; }

    // Smallest primitive e-th root of unity in F_p; requires p = 1 (mod e).
    std::uint64_t root_of_unity(std::uint64_t e) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    std::string to_string() const;

  private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;  // 0 marks the rational field
};

// Exact field element over one of the two backends.
class Scalar {
  public:
    Scalar() : field_(Field::rationals()), q_(0) {}
    Scalar(Field f, long v) : field_(f) { assign_int(v); }
    Scalar(Field f, const mpq_class& q);

    static Scalar zero(Field f) { return Scalar(f, 0L); }
    static Scalar one(Field f) { return Scalar(f, 1L); }

    Field field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Total order used only for canonical sorting.
    bool operator<(const Scalar& o) const;

    const mpq_class& rational() const { return q_; }
    std::uint64_t residue() const { return r_; }

    std::string to_string() const;

  private:
    void assign_int(long v);
    void check_same(const Scalar& o) const;

    Field field_;
    mpq_class q_;         // rational backend
    std::uint64_t r_ = 0; // prime backend, reduced mod p
};

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

}  // namespace klr
