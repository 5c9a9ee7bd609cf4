#include "klr/ratfunc.hpp"

namespace klr {

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)) {
    if (num_.field() != den.field() || num_.vars() != den.vars()) {
        throw value_error("fraction ring mismatch");
    }
    if (den.is_zero()) throw value_error("zero denominator");
    push_factor(den, 1);
    reduce();
}

void RationalFunction::push_factor(const MultiPoly& f, int mult) {
    if (f.is_zero()) throw value_error("zero denominator factor");
    den_cache_.reset();
    Scalar lc = f.leading_coeff();
    MultiPoly monic = f;
    if (!lc.is_one()) {
        monic = f * lc.inverse();
        Scalar scale = lc.inverse();
        for (int k = 1; k < mult; ++k) scale = scale * lc.inverse();
        num_ = num_ * scale;
    }
    if (monic.is_constant()) return;  // folded into the numerator
    den_[monic] += mult;
}

void RationalFunction::reduce() {
    den_cache_.reset();
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    auto is_linear = [](const MultiPoly& f) { return f.degree() && *f.degree() <= 1; };
    // linear factors are irreducible: trial division suffices
    for (auto it = den_.begin(); it != den_.end();) {
        if (is_linear(it->first)) {
            while (it->second > 0) {
                auto q = try_div(num_, it->first);
                if (!q) break;
                num_ = std::move(*q);
                --it->second;
            }
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
    // composite factors (user-supplied denominators): split off full gcds
    // until stable
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = den_.begin(); it != den_.end(); ++it) {
            if (is_linear(it->first)) continue;
            MultiPoly g = poly_gcd(num_, it->first);
            if (g.is_constant()) continue;
            MultiPoly f = it->first;
            int mult = it->second;
            den_.erase(it);
            num_ = div_exact(num_, g);
            MultiPoly rest = div_exact(f, g).monic();
            if (!rest.is_constant()) den_[rest] += mult;
            if (mult > 1) den_[g.monic()] += mult - 1;
            changed = true;
            break;
        }
    }
}

const MultiPoly& RationalFunction::denominator() const {
    if (!den_cache_) {
        MultiPoly d = MultiPoly::constant(field(), vars(), 1L);
        for (const auto& [f, m] : den_) {
            for (int k = 0; k < m; ++k) d = d * f;
        }
        den_cache_ = std::move(d);
    }
    return *den_cache_;
}

bool RationalFunction::is_one() const {
    return den_.empty() && num_.is_constant() && !num_.is_zero() &&
           num_.constant_value().is_one();
}

const MultiPoly& RationalFunction::as_polynomial() const {
    if (!is_polynomial()) throw value_error("fraction has a nontrivial denominator");
    return num_;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (field() != o.field() || vars() != o.vars()) throw value_error("fraction ring mismatch");
    // common denominator takes the factorwise maximum multiplicity
    RationalFunction out(field(), vars());
    std::map<MultiPoly, int> lcm = den_;
    for (const auto& [f, m] : o.den_) {
        auto it = lcm.find(f);
        if (it == lcm.end()) lcm.emplace(f, m);
        else it->second = std::max(it->second, m);
    }
    MultiPoly lift_a = MultiPoly::constant(field(), vars(), 1L);
    MultiPoly lift_b = lift_a;
    for (const auto& [f, m] : lcm) {
        int m1 = den_.count(f) ? den_.at(f) : 0;
        int m2 = o.den_.count(f) ? o.den_.at(f) : 0;
        for (int k = 0; k < m - m1; ++k) lift_a = lift_a * f;
        for (int k = 0; k < m - m2; ++k) lift_b = lift_b * f;
    }
    out.num_ = num_ * lift_a + o.num_ * lift_b;
    out.den_ = std::move(lcm);
    out.reduce();
    return out;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return *this + (-o);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    out.den_cache_.reset();
    return out;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (field() != o.field() || vars() != o.vars()) throw value_error("fraction ring mismatch");
    RationalFunction out(field(), vars());
    out.num_ = num_ * o.num_;
    out.den_ = den_;
    for (const auto& [f, m] : o.den_) out.den_[f] += m;
    out.reduce();
    return out;
}

RationalFunction RationalFunction::operator*(const Scalar& c) const {
    if (c.is_zero()) return zero(field(), vars());
    RationalFunction out = *this;
    out.num_ = out.num_ * c;
    out.den_cache_.reset();
    return out;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    return *this * o.inverse();
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw value_error("inverse of zero fraction");
    RationalFunction out(field(), vars());
    out.num_ = MultiPoly::constant(field(), vars(), 1L);
    for (const auto& [f, m] : den_) {
        for (int k = 0; k < m; ++k) out.num_ = out.num_ * f;
    }
    out.push_factor(num_, 1);
    out.reduce();
    return out;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    if (!(num_ == o.num_)) return false;
    if (den_ == o.den_) return true;
    return denominator() == o.denominator();
}

bool RationalFunction::operator<(const RationalFunction& o) const {
    if (num_ < o.num_) return true;
    if (o.num_ < num_) return false;
    const MultiPoly& a = denominator();
    const MultiPoly& b = o.denominator();
    return a < b;
}

RationalFunction RationalFunction::substitute(const PosMap& g, int out_vars) const {
    RationalFunction out(field(), out_vars);
    out.num_ = num_.substitute(g, out_vars);
    for (const auto& [f, m] : den_) {
        MultiPoly img = f.substitute(g, out_vars);
        if (img.is_zero()) {
            throw poisoned_denominator("substitution sends denominator factor " + f.to_string() +
                                       " to zero under " + g.to_string());
        }
        out.push_factor(img, m);
    }
    out.reduce();
    return out;
}

RationalFunction RationalFunction::substitute_affine(const std::vector<Scalar>& scale,
                                                     const std::vector<Scalar>& shift) const {
    RationalFunction out(field(), vars());
    out.num_ = num_.substitute_affine(scale, shift);
    for (const auto& [f, m] : den_) {
        MultiPoly img = f.substitute_affine(scale, shift);
        if (img.is_zero()) throw poisoned_denominator("affine substitution kills denominator");
        out.push_factor(img, m);
    }
    out.reduce();
    return out;
}

std::string RationalFunction::to_string(const std::string& stem) const {
    if (is_polynomial()) return num_.to_string(stem);
    return "(" + num_.to_string(stem) + ")/(" + denominator().to_string(stem) + ")";
}

}  // namespace klr
