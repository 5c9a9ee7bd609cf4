#pragma once

#include "klr/parallel.hpp"
#include "klr/report.hpp"
#include "klr/span.hpp"
#include "klr/twisted_op.hpp"

namespace klr {

// One letter of a generator word.
struct Atom {
    enum class Kind { E, X, Tau, Psi, PsiTilde };
    Kind kind;
    int index = 0;  // 0-based; Tau/Psi swap positions index, index+1
    Seq seq;        // for E atoms

    static Atom e(Seq s) { return Atom{Kind::E, 0, std::move(s)}; }
    static Atom x(int r) { return Atom{Kind::X, r, {}}; }
    static Atom tau(int r) { return Atom{Kind::Tau, r, {}}; }
    static Atom psi(int r) { return Atom{Kind::Psi, r, {}}; }
    static Atom psi_tilde(int r) { return Atom{Kind::PsiTilde, r, {}}; }
};

// Word in the generators; evaluation composes right to left (the algebra
// acts on the left of the polynomial representation).
using GeneratorWord = std::vector<Atom>;

// A KLR algebra context: quiver, component sequences, scalar field and the
// P-polynomial convention P_{i,j}(u,v) = (u-v)^{h(j,i)}.
class KLRContext {
  public:
    KLRContext(Quiver q, DimVec alpha, Field f, int cap = 8);
    // Components = all of I^d (used by the Hecke dictionary).
    static KLRContext full(Quiver q, int d, Field f);

    const Quiver& quiver() const { return quiver_; }
    Field field() const { return field_; }
    int d() const { return d_; }
    const std::vector<Seq>& components() const { return comps_; }
    bool has_component(const Seq& s) const;

    MultiPoly p_poly(Vertex i, Vertex j, const MultiPoly& u, const MultiPoly& v) const;
    MultiPoly q_poly(Vertex i, Vertex j, const MultiPoly& u, const MultiPoly& v) const;

    int tau_degree(int r, const Seq& s) const;  // -a(i_r, i_{r+1})

    TwistedOp gen_e(const Seq& s) const;
    TwistedOp gen_x_on(int r, const Seq& s) const;   // x_r e(s)
    TwistedOp gen_tau_on(int r, const Seq& s) const; // tau_r e(s)
    TwistedOp gen_x(int r) const;
    TwistedOp gen_tau(int r) const;
    TwistedOp identity_op() const;
    TwistedOp gen(const Atom& a) const;

    TwistedOp eval_word(const GeneratorWord& w) const;

    // Multiplication by a polynomial (diagonally on all components).
    TwistedOp mult_op(const MultiPoly& f) const;

    // Intertwining operator Psi_r e(s) and its denominator-free form
    // PsiTilde_r = (x_r - x_{r+1}) Psi_r.  Requires a type-A family quiver.
    TwistedOp intertwiner(int r, const Seq& s) const;
    TwistedOp intertwiner_tilde(int r, const Seq& s) const;

    MultiPoly x(int r) const { return MultiPoly::variable(field_, d_, r); }

  private:
    KLRContext(Quiver q, std::vector<Seq> comps, Field f, int d);
    Quiver quiver_;
    Field field_;
    int d_;
    std::vector<Seq> comps_;
};

// All permutations w with to = from∘w^{-1} (i.e. w moves letter from[a] to
// position w(a)), in lexicographic image order.
std::vector<Perm> perms_mapping(const Seq& from, const Seq& to);

// Result sequence of the left action: (w·s)_a = s_{w^{-1}(a)}.
Seq permute_seq(const Perm& w, const Seq& s);

// Generator provider for the defining-relation items.  The plain algebra and
// the starred images inside the balanced quotient both satisfy the same
// relations, so the suite is written once against this interface.
struct RelationOps {
    const Quiver* quiver = nullptr;  // supplies h counts for Q and delta
    Field field = Field::rationals();
    int d = 0;
    std::vector<Seq> comps;
    std::vector<std::string> labels;
    std::string suite;
    std::function<TwistedOp(const Seq&)> e;
    std::function<TwistedOp(int)> x;
    std::function<TwistedOp(int)> tau;
    // multiplication by f(x_1..x_d) restricted to component s
    std::function<TwistedOp(const MultiPoly&, const Seq&)> mult_on;
    std::function<TwistedOp()> one;
};

std::vector<std::function<CheckRecord()>> relation_items(const RelationOps& ops);

// Every defining relation checked as an exact operator identity.
VerificationReport relation_suite(const KLRContext& ctx, int width = 1);

struct BasisMonomial {
    std::vector<int> word;  // canonical reduced word of w
    Expo exps;              // monomial exponents
    int degree = 0;
    std::string to_string() const;
};

// tau_w x^a e(i) for w in S_{i,j}, deg(tau_w) + 2|a| in [min_deg, max_deg].
std::vector<BasisMonomial> basis_monomials(const KLRContext& ctx, const Seq& i, const Seq& j,
                                           int min_deg, int max_deg);

// Minimal tau-word degree over S_{i,j}; nullopt when the set is empty.
std::optional<int> min_tau_degree(const KLRContext& ctx, const Seq& i, const Seq& j);

TwistedOp tau_word_op(const KLRContext& ctx, const Seq& i, const std::vector<int>& word);
TwistedOp basis_op(const KLRContext& ctx, const Seq& i, const BasisMonomial& m);

// Exact-rank linear independence of the basis monomials, degree by degree.
VerificationReport independence_check(const KLRContext& ctx, const Seq& i, const Seq& j, int D,
                                      int width = 1);

// f symmetric: f w = w f for each sample word.
VerificationReport center_check(const KLRContext& ctx, const MultiPoly& f,
                                const std::vector<GeneratorWord>& samples);

}  // namespace klr
