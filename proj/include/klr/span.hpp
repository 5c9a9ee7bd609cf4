#pragma once

#include "klr/twisted_op.hpp"

namespace klr {

// Exact row space over the scalar field for vectors flattened from twisted
// operators.  Coordinates are (term key, numerator monomial) pairs after
// clearing each key's denominators by a running per-key lcm; when a new
// denominator enlarges some lcm the echelon basis is rebuilt from the stored
// pivot generators (membership and rank are invariant under the refinement).
class OpSpan {
  public:
    OpSpan(Field f, int d) : field_(f), d_(d) {}

    // Returns true if the operator enlarged the span.
    bool insert(const TwistedOp& op);
    bool contains(const TwistedOp& op);
    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    using Coord = std::pair<TermKey, Expo>;
    using SparseVec = std::map<Coord, Scalar>;

    bool ensure_lcm(const TwistedOp& op);  // true if any lcm grew
    SparseVec flatten(const TwistedOp& op) const;
    void rebuild();
    // Reduces v against the echelon rows in place; returns true if v -> 0.
    bool reduce(SparseVec& v) const;
    void add_row(SparseVec v);

    struct Clearing {
        std::map<MultiPoly, int> factors;
        MultiPoly expanded;
        Clearing(Field f, int d) : expanded(MultiPoly::constant(f, d, 1L)) {}
    };

    Field field_;
    int d_;
    std::vector<TwistedOp> gens_;        // operators that contributed pivots
    std::map<TermKey, Clearing> lcm_;    // per-key denominator common multiple
    std::map<Coord, SparseVec> rows_;    // pivot coordinate -> reduced row
};

// Exact rank of a small dense-ish matrix over any exact field-like type
// (Scalar or RationalFunction): needs is_zero, +, -, *, inverse.
template <class F>
int matrix_rank(std::vector<std::map<int, F>> rows) {
    int rank = 0;
    std::map<int, std::map<int, F>> echelon;  // pivot column -> row
    for (auto& v : rows) {
        while (!v.empty()) {
            int c = v.begin()->first;
            auto it = echelon.find(c);
            if (it == echelon.end()) break;
            F factor = v.begin()->second * it->second.begin()->second.inverse();
            for (const auto& [col, val] : it->second) {
                auto slot = v.find(col);
                if (slot == v.end()) {
                    F nv = -(factor * val);
                    if (!nv.is_zero()) v.emplace(col, nv);
                } else {
                    slot->second = slot->second - factor * val;
                    if (slot->second.is_zero()) v.erase(slot);
                }
            }
        }
        if (!v.empty()) {
            echelon.emplace(v.begin()->first, std::move(v));
            ++rank;
        }
    }
    return rank;
}

}  // namespace klr
