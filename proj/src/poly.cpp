#include "klr/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace klr {

bool GrlexLess::operator()(const Expo& a, const Expo& b) const {
    long ta = std::accumulate(a.begin(), a.end(), 0L);
    long tb = std::accumulate(b.begin(), b.end(), 0L);
    if (ta != tb) return ta < tb;
    return a < b;
}

PosMap PosMap::identity(int d) {
    std::vector<int> img(static_cast<size_t>(d));
    std::iota(img.begin(), img.end(), 0);
    return PosMap(std::move(img));
}

PosMap PosMap::transposition(int d, int r) {
    if (r < 0 || r + 1 >= d) throw value_error("transposition index out of range");
    PosMap m = identity(d);
    std::swap(m.img_[static_cast<size_t>(r)], m.img_[static_cast<size_t>(r) + 1]);
    return m;
}

bool PosMap::is_identity() const {
    for (int v = 0; v < domain(); ++v) {
        if (img_[static_cast<size_t>(v)] != v) return false;
    }
    return true;
}

bool PosMap::is_injective() const {
    std::vector<int> seen;
    seen = img_;
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

PosMap PosMap::after(const PosMap& g) const {
    std::vector<int> img(g.img_.size());
    for (size_t v = 0; v < g.img_.size(); ++v) {
        img[v] = img_[static_cast<size_t>(g.img_[v])];
    }
    return PosMap(std::move(img));
}

std::string PosMap::to_string() const {
    std::string s = "[";
    for (size_t v = 0; v < img_.size(); ++v) {
        if (v) s += ",";
        s += std::to_string(img_[v]);
    }
    return s + "]";
}

MultiPoly MultiPoly::constant(Field f, int vars, const Scalar& c) {
    MultiPoly p(f, vars);
    p.add_term(Expo(static_cast<size_t>(vars), 0), c);
    return p;
}

MultiPoly MultiPoly::constant(Field f, int vars, long c) {
    return constant(f, vars, Scalar(f, c));
}

MultiPoly MultiPoly::variable(Field f, int vars, int v, std::uint32_t e) {
    if (v < 0 || v >= vars) throw value_error("variable index out of range");
    Expo ex(static_cast<size_t>(vars), 0);
    ex[static_cast<size_t>(v)] = e;
    return monomial(f, vars, ex, Scalar::one(f));
}

MultiPoly MultiPoly::monomial(Field f, int vars, const Expo& e, const Scalar& c) {
    MultiPoly p(f, vars);
    p.add_term(e, c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Expo& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Scalar MultiPoly::constant_value() const {
    if (terms_.empty()) return Scalar::zero(field_);
    if (!is_constant()) throw value_error("not a constant polynomial");
    return terms_.begin()->second;
}

std::optional<int> MultiPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    const Expo& e = terms_.rbegin()->first;  // grlex max has max total degree
    return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
}

void MultiPoly::add_term(const Expo& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != vars_) throw value_error("exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    if (field_ != o.field_ || vars_ != o.vars_) throw value_error("polynomial ring mismatch");
    MultiPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(field_, vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (field_ != o.field_ || vars_ != o.vars_) throw value_error("polynomial ring mismatch");
    MultiPoly out(field_, vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Expo e(ea);
            for (size_t v = 0; v < e.size(); ++v) e[v] += eb[v];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

MultiPoly MultiPoly::operator*(const Scalar& c) const {
    MultiPoly out(field_, vars_);
    if (c.is_zero()) return out;
    for (const auto& [e, t] : terms_) out.terms_.emplace(e, t * c);
    return out;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return field_ == o.field_ && vars_ == o.vars_ && terms_ == o.terms_;
}

bool MultiPoly::operator<(const MultiPoly& o) const {
    if (vars_ != o.vars_) return vars_ < o.vars_;
    auto a = terms_.begin(), b = o.terms_.begin();
    GrlexLess less;
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        if (less(a->first, b->first)) return true;
        if (less(b->first, a->first)) return false;
        if (a->second < b->second) return true;
        if (b->second < a->second) return false;
    }
    return a == terms_.end() && b != o.terms_.end();
}

MultiPoly MultiPoly::substitute(const PosMap& g, int out_vars) const {
    if (g.domain() != vars_) throw value_error("substitution arity mismatch");
    MultiPoly out(field_, out_vars);
    for (const auto& [e, c] : terms_) {
        Expo img(static_cast<size_t>(out_vars), 0);
        for (size_t v = 0; v < e.size(); ++v) {
            int t = g(static_cast<int>(v));
            if (t < 0 || t >= out_vars) throw value_error("substitution target out of range");
            img[static_cast<size_t>(t)] += e[v];
        }
        out.add_term(img, c);
    }
    return out;
}

MultiPoly MultiPoly::substitute_affine(const std::vector<Scalar>& scale,
                                       const std::vector<Scalar>& shift) const {
    if (static_cast<int>(scale.size()) != vars_ || static_cast<int>(shift.size()) != vars_) {
        throw value_error("affine substitution arity mismatch");
    }
    // precompute per-variable powers of (a_v x_v + b_v) up to the occurring exponents
    MultiPoly out(field_, vars_);
    for (const auto& [e, c] : terms_) {
        MultiPoly term = constant(field_, vars_, c);
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            MultiPoly lin = variable(field_, vars_, static_cast<int>(v)) * scale[v];
            lin = lin + constant(field_, vars_, shift[v]);
            for (std::uint32_t k = 0; k < e[v]; ++k) term = term * lin;
        }
        out = out + term;
    }
    return out;
}

Scalar MultiPoly::leading_coeff() const {
    if (terms_.empty()) return Scalar::zero(field_);
    return terms_.rbegin()->second;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return *this;
    return *this * leading_coeff().inverse();
}

bool MultiPoly::is_symmetric_under_swap(int r) const {
    return swap_action(*this, r) == *this;
}

std::string MultiPoly::to_string(const std::string& stem) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        bool unit = it->second.is_one();
        bool any = false;
        std::ostringstream mono;
        for (size_t v = 0; v < it->first.size(); ++v) {
            if (it->first[v] == 0) continue;
            if (any) mono << "*";
            any = true;
            mono << stem << (v + 1);
            if (it->first[v] > 1) mono << "^" << it->first[v];
        }
        if (!any) {
            os << it->second.to_string();
        } else if (unit) {
            os << mono.str();
        } else {
            os << it->second.to_string() << "*" << mono.str();
        }
    }
    return os.str();
}

std::optional<MultiPoly> try_div(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw value_error("division by zero polynomial");
    MultiPoly rem = a;
    MultiPoly quo(a.field(), a.vars());
    const Expo& lead_b = b.terms().rbegin()->first;
    const Scalar lc_b = b.terms().rbegin()->second;
    while (!rem.is_zero()) {
        const Expo& lead_r = rem.terms().rbegin()->first;
        Expo diff(lead_r.size());
        for (size_t v = 0; v < diff.size(); ++v) {
            if (lead_r[v] < lead_b[v]) return std::nullopt;
            diff[v] = lead_r[v] - lead_b[v];
        }
        Scalar q = rem.terms().rbegin()->second / lc_b;
        MultiPoly t = MultiPoly::monomial(a.field(), a.vars(), diff, q);
        quo = quo + t;
        rem = rem - t * b;
    }
    return quo;
}

MultiPoly div_exact(const MultiPoly& a, const MultiPoly& b) {
    auto q = try_div(a, b);
    if (!q) throw value_error("inexact polynomial division");
    return *q;
}

namespace {

// Univariate view of f in variable v with polynomial coefficients.
std::map<std::uint32_t, MultiPoly> coeffs_in(const MultiPoly& f, int v) {
    std::map<std::uint32_t, MultiPoly> out;
    for (const auto& [e, c] : f.terms()) {
        Expo rest = e;
        std::uint32_t k = rest[static_cast<size_t>(v)];
        rest[static_cast<size_t>(v)] = 0;
        auto it = out.find(k);
        if (it == out.end()) {
            it = out.emplace(k, MultiPoly::zero(f.field(), f.vars())).first;
        }
        it->second.add_term(rest, c);
    }
    return out;
}

int top_variable(const MultiPoly& a, const MultiPoly& b) {
    for (int v = a.vars() - 1; v >= 0; --v) {
        auto used = [v](const MultiPoly& p) {
            for (const auto& [e, c] : p.terms()) {
                (void)c;
                if (e[static_cast<size_t>(v)] > 0) return true;
            }
            return false;
        };
        if (used(a) || used(b)) return v;
    }
    return -1;
}

// Pseudo-remainder of A by B in S[x_v], both nonzero in x_v with deg_x(A) >= deg_x(B).
MultiPoly pseudo_rem(MultiPoly A, const MultiPoly& B, int v) {
    auto bc = coeffs_in(B, v);
    std::uint32_t db = bc.rbegin()->first;
    const MultiPoly lb = bc.rbegin()->second;
    while (true) {
        if (A.is_zero()) return A;
        auto ac = coeffs_in(A, v);
        std::uint32_t da = ac.rbegin()->first;
        if (da < db) return A;
        const MultiPoly la = ac.rbegin()->second;
        // A <- lb*A - la * x^(da-db) * B
        MultiPoly shift(A.field(), A.vars());
        Expo ex(static_cast<size_t>(A.vars()), 0);
        ex[static_cast<size_t>(v)] = da - db;
        shift.add_term(ex, Scalar::one(A.field()));
        A = A * lb - la * shift * B;
    }
}

MultiPoly content_in(const MultiPoly& f, int v);

MultiPoly gcd_impl(MultiPoly a, MultiPoly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    int v = top_variable(a, b);
    if (v < 0) return MultiPoly::constant(a.field(), a.vars(), 1L);

    // split off contents with respect to x_v
    MultiPoly ca = content_in(a, v);
    MultiPoly cb = content_in(b, v);
    MultiPoly pa = div_exact(a, ca);
    MultiPoly pb = div_exact(b, cb);
    MultiPoly cont = gcd_impl(ca, cb);

    // primitive PRS on pa, pb
    auto deg_v = [v](const MultiPoly& p) {
        auto cs = coeffs_in(p, v);
        return cs.empty() ? 0u : cs.rbegin()->first;
    };
    if (deg_v(pa) < deg_v(pb)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        MultiPoly r = pseudo_rem(pa, pb, v);
        pa = pb;
        if (r.is_zero()) {
            pb = r;
        } else {
            pb = div_exact(r, content_in(r, v));
        }
    }
    if (deg_v(pa) > 0) pa = div_exact(pa, content_in(pa, v));
    return (cont * pa).monic();
}

MultiPoly content_in(const MultiPoly& f, int v) {
    auto cs = coeffs_in(f, v);
    MultiPoly g = MultiPoly::zero(f.field(), f.vars());
    for (const auto& [k, c] : cs) {
        (void)k;
        g = gcd_impl(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g.is_zero() ? MultiPoly::constant(f.field(), f.vars(), 1L) : g;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.field() != b.field() || a.vars() != b.vars()) {
        throw value_error("polynomial ring mismatch");
    }
    if (a.is_zero() && b.is_zero()) return a;
    return gcd_impl(a, b);
}

MultiPoly swap_action(const MultiPoly& f, int r) {
    return f.substitute(PosMap::transposition(f.vars(), r), f.vars());
}

MultiPoly demazure(int r, const MultiPoly& f) {
    if (r < 0 || r + 1 >= f.vars()) throw value_error("demazure index out of range");
    MultiPoly num = swap_action(f, r) - f;
    MultiPoly den = MultiPoly::variable(f.field(), f.vars(), r) -
                    MultiPoly::variable(f.field(), f.vars(), r + 1);
    return div_exact(num, den);
}

}  // namespace klr
