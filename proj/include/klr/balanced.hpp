#pragma once

#include "klr/klr_algebra.hpp"

namespace klr {

// Operator on the quotient polynomial module: a twisted operator over the d
// reduced (class) variables whose position maps may be non-bijective; source
// and target sequences are stored via their base preimages.  Normal-form
// equality decides equality in the balanced quotient.
using QuotientOp = TwistedOp;

enum class StarKind { X, Tau, Psi, PsiTilde };

// The balanced quotient attached to (Gamma, I0 | I1) and a base dimension
// vector alpha: the doubled algebra over phi(alpha), the class-position
// dictionaries, projection to the quotient module and the starred generators.
class BalancedContext {
  public:
    BalancedContext(DoubledQuiver dq, DimVec alpha, Field f, int cap = 8);

    const DoubledQuiver& dq() const { return dq_; }
    const KLRContext& base() const { return base_; }
    const KLRContext& doubled() const { return doubled_; }
    const DimVec& alpha() const { return alpha_; }
    const DimVec& alpha_bar() const { return alpha_bar_; }
    int d() const { return base_.d(); }
    int dbar() const { return doubled_.d(); }
    Field field() const { return base_.field(); }

    // r -> r' dictionary: rdict(i)[r] = |phi(i_0..i_{r-1})| (0-based)
    std::vector<int> rdict(const Seq& i) const;
    // class collapse [0,dbar) -> [0,d) of the phi image of i
    PosMap cls_map(const Seq& i) const;
    // section [0,d) -> [0,dbar): class r -> its first position r'
    PosMap section_map(const Seq& i) const;

    // components of Ibar^albar by classification
    std::vector<Seq> well_ordered_seqs() const;  // exactly the phi images
    std::vector<Seq> unordered_seqs() const;
    std::vector<Seq> almost_ordered_seqs() const;

    // Quotient projection; requires every source/target well-ordered.
    QuotientOp project(const TwistedOp& t) const;

    // Starred generators evaluated through the doubled algebra and projected.
    // flip_signed_case negates the i_r = i_{r+1} in I1 tau case (negative
    // control for the verification harness).
    QuotientOp star_e(const Seq& i) const;
    QuotientOp star_gen(StarKind kind, int r, const Seq& i, bool flip_signed_case = false) const;
    QuotientOp star_gen_full(StarKind kind, int r, bool flip_signed_case = false) const;
    QuotientOp star_one() const;

    // Multiplicative extension of the generator assignment to words.
    QuotientOp phi_word(const GeneratorWord& w, bool flip_signed_case = false) const;

    // Balanced lift of w through the hat-letter substitution, with its
    // reduced word; asserts the lift is reduced and balanced.
    struct Lift {
        Perm perm;
        std::vector<int> word;
        Lift() : perm(0) {}
    };
    Lift balance_lift(const Perm& w, const Seq& i) const;

    // Balanced means u sends each doubled pair of positions to a consecutive
    // pair, in order.
    bool is_balanced(const Perm& u, const Seq& i) const;

  private:
    DoubledQuiver dq_;
    DimVec alpha_, alpha_bar_;
    KLRContext base_, doubled_;
};

// (H) starred relation items + (A) generator agreement; flip_signed_case
// drives the negative control.
VerificationReport verify_phi_hom_agreement(const BalancedContext& b, int width = 1,
                                            bool flip_signed_case = false);

// (S) surjectivity at truncation: projected well-ordered basis monomials of
// degree <= D lie in the span of the Phi images of matching degree.
VerificationReport verify_phi_surjectivity(const BalancedContext& b, int D, int width = 1);

// Lemma on unordered kernels: basis monomials from unordered to well-ordered
// components send polynomials into the ideal J.
VerificationReport kernel_unordered_check(const BalancedContext& b, int D);

// J-preservation spot test: well-ordered to well-ordered monomials map
// J-generators times small monomials into J.
VerificationReport j_preservation_check(const BalancedContext& b, int D = 2);

// Degree-truncated equality of the two-sided spans generated through
// unordered vs almost-ordered middle idempotents.
VerificationReport almost_ordered_check(const BalancedContext& b, int D);

// Graded dimension of e(j) R_alpha e(i) vs the rank of projected well-ordered
// basis monomials, degree by degree.
VerificationReport graded_dim_match(const BalancedContext& b, const Seq& i, const Seq& j, int D);

// Remark-level quotient collapse identities: x_{r'} = x_{r'+1} on phi images
// and tau_a^2 = 0 at doubled positions.
VerificationReport quotient_collapse_check(const BalancedContext& b);

// project(T2 ∘ T1) = project(T2) ∘ project(T1) on generator pairs through eRe.
VerificationReport quotient_consistency_check(const BalancedContext& b);

// Images of the intertwiners under Phi match the case tables.
VerificationReport intertwiner_image_check(const BalancedContext& b);

// Unbalanced maps project to non-injective class maps, balanced ones to
// permutations, on all tau-word operators between phi images.
VerificationReport balanced_dichotomy_check(const BalancedContext& b);

}  // namespace klr
