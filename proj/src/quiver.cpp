#include "klr/quiver.hpp"

#include <algorithm>

namespace klr {

std::string seq_to_string(const Seq& s, const std::vector<std::string>& labels) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += labels[static_cast<size_t>(s[i])];
    }
    return out + ")";
}

Quiver::Quiver(std::vector<std::string> labels, std::map<std::pair<Vertex, Vertex>, int> arrows)
    : labels_(std::move(labels)), arrows_(std::move(arrows)) {
    for (auto it = arrows_.begin(); it != arrows_.end();) {
        auto [src, tgt] = it->first;
        if (src < 0 || tgt < 0 || src >= vertex_count() || tgt >= vertex_count()) {
            throw value_error("arrow endpoint out of range");
        }
        if (src == tgt && it->second != 0) throw value_error("quiver has a 1-loop");
        if (it->second < 0) throw value_error("negative arrow multiplicity");
        if (it->second == 0) it = arrows_.erase(it);
        else ++it;
    }
}

int Quiver::h(Vertex i, Vertex j) const {
    auto it = arrows_.find({i, j});
    return it == arrows_.end() ? 0 : it->second;
}

int Quiver::cartan(Vertex i, Vertex j) const {
    return 2 * (i == j ? 1 : 0) - h(i, j) - h(j, i);
}

Vertex Quiver::predecessor(Vertex i) const {
    Vertex found = -1;
    for (const auto& [edge, mult] : arrows_) {
        if (edge.second == i && mult > 0) {
            if (found >= 0) throw value_error("vertex has several predecessors");
            found = edge.first;
        }
    }
    return found;
}

Vertex Quiver::successor(Vertex i) const {
    Vertex found = -1;
    for (const auto& [edge, mult] : arrows_) {
        if (edge.first == i && mult > 0) {
            if (found >= 0) throw value_error("vertex has several successors");
            found = edge.second;
        }
    }
    return found;
}

bool Quiver::isomorphic_under(const Quiver& other, const std::vector<Vertex>& map_to_other) const {
    if (vertex_count() != other.vertex_count()) return false;
    if (static_cast<int>(map_to_other.size()) != vertex_count()) return false;
    std::vector<bool> hit(map_to_other.size(), false);
    for (Vertex v : map_to_other) {
        if (v < 0 || v >= other.vertex_count() || hit[static_cast<size_t>(v)]) return false;
        hit[static_cast<size_t>(v)] = true;
    }
    for (Vertex i = 0; i < vertex_count(); ++i) {
        for (Vertex j = 0; j < vertex_count(); ++j) {
            if (h(i, j) != other.h(map_to_other[static_cast<size_t>(i)],
                                   map_to_other[static_cast<size_t>(j)])) {
                return false;
            }
        }
    }
    return true;
}

DimVec::DimVec(std::map<Vertex, int> mult) : mult_(std::move(mult)) {
    for (auto it = mult_.begin(); it != mult_.end();) {
        if (it->second < 0) throw value_error("negative multiplicity");
        if (it->second == 0) it = mult_.erase(it);
        else ++it;
    }
}

int DimVec::height() const {
    int h = 0;
    for (const auto& [v, m] : mult_) h += m;
    return h;
}

int DimVec::multiplicity(Vertex v) const {
    auto it = mult_.find(v);
    return it == mult_.end() ? 0 : it->second;
}

DimVec DimVec::operator+(const DimVec& o) const {
    std::map<Vertex, int> m = mult_;
    for (const auto& [v, c] : o.mult_) m[v] += c;
    return DimVec(std::move(m));
}

std::string DimVec::to_string() const {
    std::string out;
    for (const auto& [v, m] : mult_) {
        if (!out.empty()) out += ",";
        out += std::to_string(v) + ":" + std::to_string(m);
    }
    return out.empty() ? "0" : out;
}

DimVec seq_dimvec(const Seq& s) {
    std::map<Vertex, int> m;
    for (Vertex v : s) m[v] += 1;
    return DimVec(std::move(m));
}

std::vector<Seq> enumerate_seqs(const DimVec& alpha, int cap) {
    if (alpha.height() > cap) {
        throw value_error("sequence enumeration cap exceeded: height " +
                          std::to_string(alpha.height()) + " > " + std::to_string(cap));
    }
    Seq base;
    for (const auto& [v, m] : alpha.entries()) {
        for (int i = 0; i < m; ++i) base.push_back(v);
    }
    std::vector<Seq> out;
    std::sort(base.begin(), base.end());
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

Quiver make_cyclic(int e) {
    if (e < 2) throw value_error("cyclic quiver needs e >= 2");
    std::vector<std::string> labels;
    std::map<std::pair<Vertex, Vertex>, int> arrows;
    for (int i = 0; i < e; ++i) {
        labels.push_back(std::to_string(i));
        arrows[{i, (i + 1) % e}] += 1;
    }
    return Quiver(std::move(labels), std::move(arrows));
}

Quiver make_linear(int n) {
    if (n < 1) throw value_error("linear quiver needs n >= 1");
    std::vector<std::string> labels;
    std::map<std::pair<Vertex, Vertex>, int> arrows;
    for (int i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        if (i + 1 < n) arrows[{i, i + 1}] = 1;
    }
    return Quiver(std::move(labels), std::move(arrows));
}

MultilinearQuiver make_truncated_multilinear(int l, int N, int e) {
    if (l < 1 || N < 1 || e < 2) throw value_error("multilinear quiver needs l,N >= 1, e >= 2");
    MultilinearQuiver mq;
    mq.e = e;
    mq.N = N;
    mq.l = l;
    std::vector<std::string> labels;
    std::map<std::pair<Vertex, Vertex>, int> arrows;
    int id = 0;
    for (int b = 1; b <= l; ++b) {
        for (int a = -e * N; a <= e * N; ++a) {
            labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
            mq.index[{a, b}] = id++;
        }
    }
    for (const auto& [ab, v] : mq.index) {
        auto next = mq.index.find({ab.first + 1, ab.second});
        if (next != mq.index.end()) arrows[{v, next->second}] = 1;
    }
    mq.quiver = Quiver(std::move(labels), std::move(arrows));
    return mq;
}

DoubledQuiver::DoubledQuiver(Quiver base, std::set<Vertex> i1)
    : base_(std::move(base)), i1_(std::move(i1)) {
    for (Vertex v : i1_) {
        if (v < 0 || v >= base_.vertex_count()) throw value_error("I1 vertex out of range");
    }
    for (Vertex i : i1_) {
        for (Vertex j : i1_) {
            if (base_.h(i, j) > 0) {
                throw value_error("arrows between I1 vertices: " + base_.label(i) + " -> " +
                                  base_.label(j));
            }
        }
    }
    std::vector<std::string> labels;
    auto add_vertex = [&](const std::string& lab, int c, Vertex b) {
        labels.push_back(lab);
        cls_.push_back(c);
        base_of_.push_back(b);
        return static_cast<Vertex>(labels.size() - 1);
    };
    for (Vertex i = 0; i < base_.vertex_count(); ++i) {
        if (in_i1(i)) {
            b1_[i] = add_vertex(base_.label(i) + "^1", 1, i);
            b2_[i] = add_vertex(base_.label(i) + "^2", 2, i);
        } else {
            b0_[i] = add_vertex(base_.label(i) + "^0", 0, i);
        }
    }
    std::map<std::pair<Vertex, Vertex>, int> arrows;
    for (const auto& [edge, mult] : base_.arrows()) {
        auto [i, j] = edge;
        bool i1i = in_i1(i), i1j = in_i1(j);
        if (!i1i && !i1j) arrows[{b0_[i], b0_[j]}] += mult;
        else if (!i1i && i1j) arrows[{b0_[i], b1_[j]}] += mult;
        else if (i1i && !i1j) arrows[{b2_[i], b0_[j]}] += mult;
        // both in I1 rejected above
    }
    for (Vertex i : i1_) arrows[{b1_[i], b2_[i]}] += 1;
    doubled_ = Quiver(std::move(labels), std::move(arrows));
}

Vertex DoubledQuiver::bar0(Vertex i) const {
    auto it = b0_.find(i);
    if (it == b0_.end()) throw value_error("vertex not in I0");
    return it->second;
}

Vertex DoubledQuiver::bar1(Vertex i) const {
    auto it = b1_.find(i);
    if (it == b1_.end()) throw value_error("vertex not in I1");
    return it->second;
}

Vertex DoubledQuiver::bar2(Vertex i) const {
    auto it = b2_.find(i);
    if (it == b2_.end()) throw value_error("vertex not in I1");
    return it->second;
}

Seq DoubledQuiver::phi_seq(const Seq& s) const {
    Seq out;
    for (Vertex v : s) {
        if (in_i1(v)) {
            out.push_back(bar1(v));
            out.push_back(bar2(v));
        } else {
            out.push_back(bar0(v));
        }
    }
    return out;
}

DimVec DoubledQuiver::phi_dimvec(const DimVec& a) const {
    std::map<Vertex, int> m;
    for (const auto& [v, c] : a.entries()) {
        if (in_i1(v)) {
            m[bar1(v)] += c;
            m[bar2(v)] += c;
        } else {
            m[bar0(v)] += c;
        }
    }
    return DimVec(std::move(m));
}

Seq DoubledQuiver::phi_preimage(const Seq& sbar) const {
    Seq out;
    size_t a = 0;
    while (a < sbar.size()) {
        Vertex v = sbar[a];
        int c = cls(v);
        if (c == 0) {
            out.push_back(base_of(v));
            ++a;
        } else if (c == 1) {
            if (a + 1 >= sbar.size() || sbar[a + 1] != bar2(base_of(v))) {
                throw value_error("sequence is not a phi image");
            }
            out.push_back(base_of(v));
            a += 2;
        } else {
            throw value_error("sequence is not a phi image");
        }
    }
    return out;
}

DoubledQuiver::SeqFlags DoubledQuiver::classify(const Seq& sbar) const {
    auto well_ordered = [this](const Seq& s) {
        // each class-1 letter is immediately followed by its partner
        for (size_t a = 0; a < s.size(); ++a) {
            if (cls(s[a]) == 1) {
                if (a + 1 >= s.size() || s[a + 1] != bar2(base_of(s[a]))) return false;
            }
        }
        return true;
    };
    SeqFlags flags;
    flags.well_ordered = well_ordered(sbar);
    // unordered: some prefix has more class-2 letters than class-1 letters
    int ones = 0, twos = 0;
    for (Vertex v : sbar) {
        if (cls(v) == 1) ++ones;
        if (cls(v) == 2) ++twos;
        if (twos > ones) {
            flags.unordered = true;
            break;
        }
    }
    // almost ordered: s_r of a well-ordered sequence at a class-1 position
    for (size_t r = 0; r + 1 < sbar.size(); ++r) {
        if (cls(sbar[r + 1]) != 1) continue;
        Seq j = sbar;
        std::swap(j[r], j[r + 1]);
        if (well_ordered(j)) {
            flags.almost_ordered = true;
            break;
        }
    }
    return flags;
}

long upsilon(int e, int k, long n) {
    if (e < 2 || k < 0 || k >= e) throw value_error("upsilon needs e >= 2, 0 <= k < e");
    long a = n >= 0 ? n / e : -((-n + e - 1) / e);  // floor division
    long b = n - a * e;                             // b in [0, e-1]
    if (b <= k) return a * (e + 1) + b;
    return a * (e + 1) + b + 1;
}

Seq pi_e(const MultilinearQuiver& mq, int e, const Seq& s) {
    Seq out;
    for (Vertex v : s) {
        bool found = false;
        for (const auto& [ab, id] : mq.index) {
            if (id == v) {
                long m = ab.first % e;
                if (m < 0) m += e;
                out.push_back(static_cast<Vertex>(m));
                found = true;
                break;
            }
        }
        if (!found) throw value_error("vertex not in multilinear quiver");
    }
    return out;
}

}  // namespace klr
