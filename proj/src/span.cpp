#include "klr/span.hpp"

namespace klr {

bool OpSpan::ensure_lcm(const TwistedOp& op) {
    bool grew = false;
    for (const auto& [key, coeff] : op.terms()) {
        auto it = lcm_.find(key);
        if (it == lcm_.end()) it = lcm_.emplace(key, Clearing(field_, d_)).first;
        bool key_grew = false;
        for (const auto& [f, m] : coeff.den_factors()) {
            int& have = it->second.factors[f];
            if (have < m) {
                have = m;
                key_grew = true;
            }
        }
        if (key_grew) {
            MultiPoly d = MultiPoly::constant(field_, d_, 1L);
            for (const auto& [f, m] : it->second.factors) {
                for (int k = 0; k < m; ++k) d = d * f;
            }
            it->second.expanded = std::move(d);
            grew = true;
        }
    }
    return grew;
}

OpSpan::SparseVec OpSpan::flatten(const TwistedOp& op) const {
    SparseVec v;
    for (const auto& [key, coeff] : op.terms()) {
        const Clearing& cl = lcm_.at(key);
        MultiPoly cofactor = MultiPoly::constant(field_, d_, 1L);
        for (const auto& [f, m] : cl.factors) {
            int used = coeff.den_factors().count(f) ? coeff.den_factors().at(f) : 0;
            for (int k = 0; k < m - used; ++k) cofactor = cofactor * f;
        }
        const MultiPoly cleared = coeff.numerator() * cofactor;
        for (const auto& [e, c] : cleared.terms()) {
            v.emplace(Coord{key, e}, c);
        }
    }
    return v;
}

bool OpSpan::reduce(SparseVec& v) const {
    while (!v.empty()) {
        auto it = rows_.find(v.begin()->first);
        if (it == rows_.end()) return false;
        Scalar factor = v.begin()->second * it->second.begin()->second.inverse();
        for (const auto& [coord, val] : it->second) {
            auto slot = v.find(coord);
            if (slot == v.end()) {
                Scalar nv = -(factor * val);
                if (!nv.is_zero()) v.emplace(coord, nv);
            } else {
                slot->second = slot->second - factor * val;
                if (slot->second.is_zero()) v.erase(slot);
            }
        }
    }
    return true;
}

void OpSpan::add_row(SparseVec v) {
    rows_.emplace(v.begin()->first, std::move(v));
}

void OpSpan::rebuild() {
    rows_.clear();
    for (const TwistedOp& g : gens_) {
        SparseVec v = flatten(g);
        if (!reduce(v)) add_row(std::move(v));
    }
}

bool OpSpan::insert(const TwistedOp& op) {
    if (op.is_zero()) return false;
    if (ensure_lcm(op)) rebuild();
    SparseVec v = flatten(op);
    if (reduce(v)) return false;
    add_row(std::move(v));
    gens_.push_back(op);
    return true;
}

bool OpSpan::contains(const TwistedOp& op) {
    if (op.is_zero()) return true;
    if (ensure_lcm(op)) rebuild();
    SparseVec v = flatten(op);
    return reduce(v);
}

}  // namespace klr
