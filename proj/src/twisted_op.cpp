#include "klr/twisted_op.hpp"

#include <sstream>

namespace klr {

int DegreeTag::value() const {
    if (kind_ != Kind::Homog) throw value_error("degree tag has no single value");
    return val_;
}

DegreeTag DegreeTag::operator+(const DegreeTag& o) const {
    if (kind_ == Kind::Zero || o.kind_ == Kind::Zero) return zero();
    if (kind_ == Kind::Inhomog || o.kind_ == Kind::Inhomog) return inhomogeneous();
    return homogeneous(val_ + o.val_);
}

DegreeTag DegreeTag::merge(const DegreeTag& o) const {
    if (kind_ == Kind::Zero) return o;
    if (o.kind_ == Kind::Zero) return *this;
    if (kind_ == Kind::Inhomog || o.kind_ == Kind::Inhomog) return inhomogeneous();
    return val_ == o.val_ ? *this : inhomogeneous();
}

std::string DegreeTag::to_string() const {
    switch (kind_) {
        case Kind::Zero: return "zero";
        case Kind::Homog: return std::to_string(val_);
        default: return "inhomogeneous";
    }
}

bool TermKey::operator<(const TermKey& o) const {
    if (src != o.src) return src < o.src;
    if (tgt != o.tgt) return tgt < o.tgt;
    return map < o.map;
}

bool TermKey::operator==(const TermKey& o) const {
    return src == o.src && tgt == o.tgt && map == o.map;
}

TwistedOp TwistedOp::identity(Field f, int d, const std::vector<Seq>& comps) {
    TwistedOp out(f, d);
    for (const Seq& s : comps) {
        out.add_term({s, s, PosMap::identity(d)}, RationalFunction::one(f, d));
    }
    out.degree_ = comps.empty() ? DegreeTag::zero() : DegreeTag::homogeneous(0);
    return out;
}

TwistedOp TwistedOp::single(Field f, int d, Seq src, Seq tgt, PosMap map, RationalFunction coeff,
                            DegreeTag deg) {
    TwistedOp out(f, d);
    out.add_term({std::move(src), std::move(tgt), std::move(map)}, coeff);
    out.degree_ = out.is_zero() ? DegreeTag::zero() : deg;
    return out;
}

TwistedOp TwistedOp::with_degree(DegreeTag t) const {
    TwistedOp out = *this;
    out.degree_ = is_zero() ? DegreeTag::zero() : t;
    return out;
}

void TwistedOp::add_term(const TermKey& key, const RationalFunction& coeff) {
    if (static_cast<int>(key.src.size()) != static_cast<int>(key.tgt.size())) {
        throw value_error("term source/target length mismatch");
    }
    if (key.map.domain() != d_ || coeff.vars() != d_) {
        throw value_error("term arity mismatch with ambient variable count");
    }
    if (coeff.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TwistedOp TwistedOp::operator+(const TwistedOp& o) const {
    if (field_ != o.field_ || d_ != o.d_) throw value_error("operator ambient mismatch");
    TwistedOp out = *this;
    for (const auto& [key, c] : o.terms_) out.add_term(key, c);
    out.degree_ = out.is_zero() ? DegreeTag::zero() : degree_.merge(o.degree_);
    return out;
}

TwistedOp TwistedOp::operator-(const TwistedOp& o) const { return *this + o * Scalar(o.field_, -1); }

TwistedOp TwistedOp::operator*(const Scalar& c) const {
    TwistedOp out(field_, d_);
    if (c.is_zero()) return out;
    for (const auto& [key, t] : terms_) out.terms_.emplace(key, t * c);
    out.degree_ = degree_;
    return out;
}

namespace {
// 2*degree when the polynomial is homogeneous (each x_r has algebra degree 2)
std::optional<int> homogeneous_xdegree(const MultiPoly& p) {
    auto deg = p.degree();
    if (!deg) return std::nullopt;
    for (const auto& [e, s] : p.terms()) {
        (void)s;
        int tot = 0;
        for (auto x : e) tot += static_cast<int>(x);
        if (tot != *deg) return std::nullopt;
    }
    return 2 * *deg;
}
}  // namespace

TwistedOp TwistedOp::scale_outer(const RationalFunction& c) const {
    TwistedOp out(field_, d_);
    for (const auto& [key, t] : terms_) out.add_term(key, t * c);
    if (out.is_zero()) {
        out.degree_ = DegreeTag::zero();
        return out;
    }
    out.degree_ = DegreeTag::inhomogeneous();
    auto dn = homogeneous_xdegree(c.numerator());
    auto dd = homogeneous_xdegree(c.denominator());
    if (dn && dd) out.degree_ = degree_ + DegreeTag::homogeneous(*dn - *dd);
    return out;
}

bool TwistedOp::operator==(const TwistedOp& o) const {
    return field_ == o.field_ && d_ == o.d_ && terms_ == o.terms_;
}

std::string TwistedOp::to_string(const std::vector<std::string>& labels,
                                 const std::string& stem) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << seq_to_string(key.src, labels) << " -> " << seq_to_string(key.tgt, labels)
           << "; " << key.map.to_string() << "; " << c.to_string(stem) << "]";
    }
    return os.str();
}

TwistedOp compose(const TwistedOp& t2, const TwistedOp& t1) {
    if (t2.field() != t1.field() || t2.ambient_vars() != t1.ambient_vars()) {
        throw value_error("operator ambient mismatch in composition");
    }
    TwistedOp out(t1.field(), t1.ambient_vars());
    for (const auto& [k1, c1] : t1.terms()) {
        for (const auto& [k2, c2] : t2.terms()) {
            if (k1.tgt != k2.src) continue;
            TermKey key{k1.src, k2.tgt, k2.map.after(k1.map)};
            out.add_term(key, c2 * c1.substitute(k2.map, t1.ambient_vars()));
        }
    }
    return out.with_degree(t2.degree() + t1.degree());
}

PolyVec act(const TwistedOp& t, const PolyVec& v) {
    PolyVec out;
    for (const auto& [key, c] : t.terms()) {
        auto it = v.find(key.src);
        if (it == v.end() || it->second.is_zero()) continue;
        RationalFunction moved = c * it->second.substitute(key.map, t.ambient_vars());
        auto slot = out.find(key.tgt);
        if (slot == out.end()) {
            out.emplace(key.tgt, moved);
        } else {
            slot->second = slot->second + moved;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

}  // namespace klr
