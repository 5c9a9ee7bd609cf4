#pragma once

#include "klr/klr_algebra.hpp"

namespace klr {

// Affine Hecke algebra context: rank d, invertible parameter q (not 0 or 1),
// and a finite spectrum F of pairwise distinct nonzero scalars viewed as a
// quiver with an arrow i -> j iff j = q i.  Operators act on the direct sum
// of Laurent-polynomial rings indexed by F^d; Laurent monomials are fractions
// with monomial denominators.
class HeckeContext {
  public:
    HeckeContext(int d, Field f, Scalar q, std::vector<Scalar> spectrum);

    // F = {1, zeta, ..., zeta^{e-1}} with q = zeta_e (needs p = 1 mod e).
    static HeckeContext cyclic(int d, Field f, int e);
    // F = {q^a : |a| <= window} over any field, q a non-root-of-unity there.
    static HeckeContext orbit(int d, Field f, const Scalar& q, int window);

    int d() const { return d_; }
    Field field() const { return field_; }
    const Scalar& q() const { return q_; }
    const std::vector<Scalar>& spectrum() const { return spectrum_; }
    std::vector<std::string> labels() const;

    // vertices = spectrum indices, arrows i -> j iff spec[j] = q spec[i]
    Quiver spectrum_quiver() const;
    const std::vector<Seq>& components() const { return comps_; }

    TwistedOp gen_e(const Seq& s) const;
    TwistedOp gen_T(int r) const;
    TwistedOp gen_X(int r, int exponent = 1) const;
    TwistedOp identity_op() const;
    TwistedOp mult(const RationalFunction& c) const;

    // The intertwiner Psi_r as the bare reflection, its two closed forms, and
    // the integral form (q X_r - X_{r+1}) Psi_r.
    TwistedOp psi(int r) const;
    TwistedOp psi_via_left_form(int r) const;
    TwistedOp psi_via_right_form(int r) const;
    TwistedOp psi_tilde(int r) const;

    TwistedOp t_word(const std::vector<int>& word) const;

    MultiPoly X(int r) const { return MultiPoly::variable(field_, d_, r); }

  private:
    int d_;
    Field field_;
    Scalar q_;
    std::vector<Scalar> spectrum_;
    std::vector<Seq> comps_;
};

// Denominator classes the hat subalgebra may invert, per component.
struct HatScan {
    bool admissible = true;
    std::vector<std::string> uses;        // classified denominator factors
    std::vector<std::string> violations;  // factors outside the allowed classes
};
// Classifies every denominator factor of every term as X_r, (X_r - X_t) with
// i_r != i_t, or (q X_r - X_t) with q i_r != i_t, against the term's target
// component.
HatScan hat_scan(const HeckeContext& h, const TwistedOp& op);

VerificationReport hecke_relation_suite(const HeckeContext& h, int width = 1);
VerificationReport hecke_intertwiner_check(const HeckeContext& h, int degree_cap = 4);
VerificationReport t_word_independence(const HeckeContext& h);

// Props B.2/B.3 dictionary: the KLR algebra over the spectrum quiver and the
// Hecke algebra act identically under x_r e(i) = (i_r^{-1} X_r - 1) e(i);
// includes the hat-membership bookkeeping of every denominator in sight.
VerificationReport dictionary_check(const HeckeContext& h, int width = 1);

}  // namespace klr
