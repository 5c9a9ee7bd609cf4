#pragma once

#include "klr/quiver.hpp"
#include "klr/report.hpp"

namespace klr {

// Sparse integer matrix over basis indices r in a window [lo, hi] of Z.
class IntMat {
  public:
    IntMat() = default;

    void add(long row, long col, long v);
    long get(long row, long col) const;
    const std::map<std::pair<long, long>, long>& entries() const { return m_; }

    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    // [a, b] = ab - ba
    static IntMat commutator(const IntMat& a, const IntMat& b);

    bool operator==(const IntMat& o) const { return m_ == o.m_; }
    // agreement on columns in [lo, hi]
    bool equal_on_columns(const IntMat& o, long lo, long hi) const;

  private:
    std::map<std::pair<long, long>, long> m_;  // (row, col) -> nonzero value
};

// The level-one module on basis u_r, r in the window, with the Chevalley
// action f_i u_r = [i = r mod e] u_{r+1}, e_i u_r = [i = r-1 mod e] u_{r-1};
// h_i is the commutator [e_i, f_i].
class TruncatedUModule {
  public:
    TruncatedUModule(int e, long lo, long hi);

    int e() const { return e_; }
    long lo() const { return lo_; }
    long hi() const { return hi_; }

    IntMat f(int i) const;
    IntMat ee(int i) const;  // Chevalley raising operator
    IntMat h(int i) const;

  private:
    int e_;
    long lo_, hi_;
};

// u_r -> u'_{Upsilon(r)} as a sparse 0/1 matrix; the image window must
// contain Upsilon of the source window.
IntMat embed_upsilon(int e, int k, const TruncatedUModule& src, const TruncatedUModule& dst);

// The bracket-formula images of the generators of the smaller algebra inside
// the bigger one: r in [1,k-1] -> same, r = k -> brackets, r in [k+1,e-1] ->
// shift, affine node per k.
IntMat embedded_f(int e, int k, int r, const TruncatedUModule& dst);
IntMat embedded_e(int e, int k, int r, const TruncatedUModule& dst);
IntMat embedded_h(int e, int k, int r, const TruncatedUModule& dst);

// Compatibility of the embeddings with every generator on interior basis
// vectors (2-step neighborhoods inside both windows).
VerificationReport compat_check(int e, int k, long lo, long hi);

// [e_i, f_j] = delta_{ij} h_i on interior indices.
VerificationReport serre_check(int e, long lo, long hi);

// Commutation of the weight-lattice maps iota and phi with the doubling, and
// the pi_e / pi_{e+1} squares on the truncated multilinear quiver.
VerificationReport weight_maps_check(int e, int k);
VerificationReport covering_square_check(int e, int k, int l, int N, int len_cap = 4);

}  // namespace klr
