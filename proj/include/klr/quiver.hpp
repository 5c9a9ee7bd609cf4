#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "klr/perm.hpp"

namespace klr {

// Vertex ids are opaque indices into a label table.
using Vertex = int;
using Seq = std::vector<Vertex>;

std::string seq_to_string(const Seq& s, const std::vector<std::string>& labels);

// Finite quiver without 1-loops; h(i,j) counts arrows i -> j.
class Quiver {
  public:
    Quiver() = default;
    Quiver(std::vector<std::string> labels, std::map<std::pair<Vertex, Vertex>, int> arrows);

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Vertex v) const { return labels_[static_cast<size_t>(v)]; }

    int h(Vertex i, Vertex j) const;
    // Cartan entry a(i,j) = 2 delta_ij - h(i,j) - h(j,i), recomputed on demand.
    int cartan(Vertex i, Vertex j) const;
    const std::map<std::pair<Vertex, Vertex>, int>& arrows() const { return arrows_; }

    // Unique vertex with an arrow into i (type-A families); -1 if none.
    Vertex predecessor(Vertex i) const;
    Vertex successor(Vertex i) const;

    bool isomorphic_under(const Quiver& other, const std::vector<Vertex>& map_to_other) const;

  private:
    std::vector<std::string> labels_;
    std::map<std::pair<Vertex, Vertex>, int> arrows_;
};

// Dimension vector: finitely supported vertex -> multiplicity map.
class DimVec {
  public:
    DimVec() = default;
    explicit DimVec(std::map<Vertex, int> mult);

    int height() const;
    int multiplicity(Vertex v) const;
    const std::map<Vertex, int>& entries() const { return mult_; }

    DimVec operator+(const DimVec& o) const;
    bool operator==(const DimVec& o) const { return mult_ == o.mult_; }
    bool operator<(const DimVec& o) const { return mult_ < o.mult_; }

    std::string to_string() const;

  private:
    std::map<Vertex, int> mult_;  // only nonzero entries stored
};

DimVec seq_dimvec(const Seq& s);

// All sequences with content alpha, lexicographic by vertex id.
std::vector<Seq> enumerate_seqs(const DimVec& alpha, int cap = 8);

// Cyclic quiver Z/eZ with arrows i -> i+1.
Quiver make_cyclic(int e);
// Linear A_n segment on vertices 0..n-1 with arrows i -> i+1.
Quiver make_linear(int n);

// l disjoint copies of the linear quiver on {-e*N,...,e*N}; vertex labels
// "(a,b)".  Returns the quiver plus the (a,b) -> vertex id index.
struct MultilinearQuiver {
    Quiver quiver;
    std::map<std::pair<int, int>, Vertex> index;  // (a, copy) -> id
    int e = 0, N = 0, l = 0;
};
MultilinearQuiver make_truncated_multilinear(int l, int N, int e);

// Doubled quiver data: base, the I0/I1 split, the doubled quiver and the
// vertex correspondence maps.
class DoubledQuiver {
  public:
    DoubledQuiver(Quiver base, std::set<Vertex> i1);

    const Quiver& base() const { return base_; }
    const Quiver& doubled() const { return doubled_; }
    bool in_i1(Vertex v) const { return i1_.count(v) > 0; }
    const std::set<Vertex>& i1() const { return i1_; }

    // vertex maps: i -> i0 (i in I0); i -> (i1, i2) (i in I1)
    Vertex bar0(Vertex i) const;
    Vertex bar1(Vertex i) const;
    Vertex bar2(Vertex i) const;

    // class of a doubled vertex: 0, 1 or 2; and its base vertex
    int cls(Vertex vbar) const { return cls_[static_cast<size_t>(vbar)]; }
    Vertex base_of(Vertex vbar) const { return base_of_[static_cast<size_t>(vbar)]; }

    Seq phi_seq(const Seq& s) const;
    DimVec phi_dimvec(const DimVec& a) const;

    // preimage of a well-ordered sequence under phi; throws if none exists
    Seq phi_preimage(const Seq& sbar) const;

    struct SeqFlags {
        bool well_ordered = false;
        bool unordered = false;
        bool almost_ordered = false;
    };
    SeqFlags classify(const Seq& sbar) const;

  private:
    Quiver base_;
    std::set<Vertex> i1_;
    Quiver doubled_;
    std::map<Vertex, Vertex> b0_, b1_, b2_;
    std::vector<int> cls_;
    std::vector<Vertex> base_of_;
};

// Index map of eq. (B.1): strictly increasing, image skips one residue class
// mod e+1.
long upsilon(int e, int k, long n);

// Reduce the first coordinate mod e: the covering map from the multilinear
// quiver onto the cyclic one.
Seq pi_e(const MultilinearQuiver& mq, int e, const Seq& s);

}  // namespace klr
