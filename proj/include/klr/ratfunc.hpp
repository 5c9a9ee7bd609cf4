#pragma once

#include "klr/poly.hpp"

namespace klr {

// Reduced fraction of multivariate polynomials.  Canonical form: numerator
// and denominator coprime, denominator monic under grlex.  The denominator is
// held as a multiset of monic factors (linear factors in all internal
// arithmetic, so reduction is trial division rather than a full gcd); the
// observable pair (numerator(), denominator()) is unique for equal fractions.
class RationalFunction {
  public:
    RationalFunction(Field f, int vars)
        : num_(MultiPoly::zero(f, vars)) {}
    RationalFunction(MultiPoly num, MultiPoly den);
    explicit RationalFunction(MultiPoly num) : num_(std::move(num)) {}

    static RationalFunction zero(Field f, int vars) { return RationalFunction(f, vars); }
    static RationalFunction one(Field f, int vars) {
        return RationalFunction(MultiPoly::constant(f, vars, 1L));
    }

    Field field() const { return num_.field(); }
    int vars() const { return num_.vars(); }
    const MultiPoly& numerator() const { return num_; }
    const MultiPoly& denominator() const;  // expanded, monic
    const std::map<MultiPoly, int>& den_factors() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_polynomial() const { return den_.empty(); }
    const MultiPoly& as_polynomial() const;  // requires is_polynomial()

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator*(const Scalar& c) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction inverse() const;

    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }
    bool operator<(const RationalFunction& o) const;

    // x_v -> x_{g(v)}; throws poisoned_denominator if the denominator
    // collapses to zero (possible only for non-injective g).
    RationalFunction substitute(const PosMap& g, int out_vars) const;
    RationalFunction substitute_affine(const std::vector<Scalar>& scale,
                                       const std::vector<Scalar>& shift) const;

    std::string to_string(const std::string& stem = "x") const;

  private:
    void push_factor(const MultiPoly& f, int mult);  // normalizes to monic
    void reduce();

    MultiPoly num_;
    std::map<MultiPoly, int> den_;  // monic nonconstant factors
    mutable std::optional<MultiPoly> den_cache_;
};

// Canonical reduced form of n/d; rf_normalize(a*n, a*d) == rf_normalize(n, d).
inline RationalFunction rf_normalize(MultiPoly n, MultiPoly d) {
    return RationalFunction(std::move(n), std::move(d));
}

}  // namespace klr
