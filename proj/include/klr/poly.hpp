#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klr/scalar.hpp"

namespace klr {

// Exponent vector; length equals the ambient variable count.
using Expo = std::vector<std::uint32_t>;

// Graded lexicographic order on exponent vectors.
struct GrlexLess {
    bool operator()(const Expo& a, const Expo& b) const;
};

// Total function [0,d) -> [0,d'), as an image array.  Not necessarily
// injective; bijective maps embed permutations.
class PosMap {
  public:
    PosMap() = default;
    explicit PosMap(std::vector<int> img) : img_(std::move(img)) {}
    static PosMap identity(int d);
    static PosMap transposition(int d, int r);  // swaps r, r+1

    int domain() const { return static_cast<int>(img_.size()); }
    int operator()(int v) const { return img_[static_cast<size_t>(v)]; }
    const std::vector<int>& image() const { return img_; }

    bool is_identity() const;
    bool is_injective() const;
    // this∘g : apply g first.
    PosMap after(const PosMap& g) const;

    bool operator==(const PosMap& o) const { return img_ == o.img_; }
    bool operator<(const PosMap& o) const { return img_ < o.img_; }

    std::string to_string() const;

  private:
    std::vector<int> img_;
};

// Sparse multivariate polynomial over an exact field.
class MultiPoly {
  public:
    MultiPoly(Field f, int vars) : field_(f), vars_(vars) {}
    static MultiPoly zero(Field f, int vars) { return MultiPoly(f, vars); }
    static MultiPoly constant(Field f, int vars, const Scalar& c);
    static MultiPoly constant(Field f, int vars, long c);
    static MultiPoly variable(Field f, int vars, int v, std::uint32_t e = 1);
    static MultiPoly monomial(Field f, int vars, const Expo& e, const Scalar& c);

    Field field() const { return field_; }
    int vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_value() const;  // requires is_constant()

    // Total degree; nullopt encodes degree(0) = -infinity.
    std::optional<int> degree() const;

    const std::map<Expo, Scalar, GrlexLess>& terms() const { return terms_; }
    void add_term(const Expo& e, const Scalar& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Scalar& c) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }
    bool operator<(const MultiPoly& o) const;  // canonical sort order

    // x_v -> x_{g(v)}; the codomain has `out_vars` variables.
    MultiPoly substitute(const PosMap& g, int out_vars) const;
    // x_v -> scale[v]*x_v + shift[v].
    MultiPoly substitute_affine(const std::vector<Scalar>& scale,
                                const std::vector<Scalar>& shift) const;

    Scalar leading_coeff() const;  // under grlex; zero for the zero polynomial
    // Scales so the grlex-leading coefficient is 1.
    MultiPoly monic() const;

    bool is_symmetric_under_swap(int r) const;  // s_r-invariance

    std::string to_string(const std::string& stem = "x") const;

  private:
    Field field_;
    int vars_;
    std::map<Expo, Scalar, GrlexLess> terms_;
};

// Exact quotient; throws value_error unless b divides a.
MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b);
// Quotient if the division is exact.
std::optional<MultiPoly> try_div(const MultiPoly& a, const MultiPoly& b);

// Monic gcd under grlex.  gcd(0,0) = 0.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// s_r action: swap x_r and x_{r+1}.
MultiPoly swap_action(const MultiPoly& f, int r);

// Demazure operator: (x_r - x_{r+1})^{-1} (s_r(f) - f); always exact.
MultiPoly demazure(int r, const MultiPoly& f);

}  // namespace klr
