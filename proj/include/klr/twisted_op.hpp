#pragma once

#include <functional>

#include "klr/quiver.hpp"
#include "klr/ratfunc.hpp"

namespace klr {

// Tracked algebra degree.  The zero operator is homogeneous of every degree;
// sums of unequal degrees are inhomogeneous.
class DegreeTag {
  public:
    static DegreeTag zero() { return DegreeTag(Kind::Zero, 0); }
    static DegreeTag homogeneous(int v) { return DegreeTag(Kind::Homog, v); }
    static DegreeTag inhomogeneous() { return DegreeTag(Kind::Inhomog, 0); }

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_homogeneous() const { return kind_ != Kind::Inhomog; }
    int value() const;

    DegreeTag operator+(const DegreeTag& o) const;  // composition bookkeeping
    DegreeTag merge(const DegreeTag& o) const;      // addition bookkeeping

    bool operator==(const DegreeTag& o) const { return kind_ == o.kind_ && val_ == o.val_; }
    std::string to_string() const;

  private:
    enum class Kind { Zero, Homog, Inhomog };
    DegreeTag(Kind k, int v) : kind_(k), val_(v) {}
    Kind kind_;
    int val_;
};

struct TermKey {
    Seq src, tgt;
    PosMap map;
    bool operator<(const TermKey& o) const;
    bool operator==(const TermKey& o) const;
};

// Finite sum of (source sequence, target sequence, position map, coefficient)
// terms acting on a direct sum of polynomial rings: on input f·e(src) the term
// contributes coeff · substitute(f, map) · e(tgt).  Equality of normal forms
// is equality of operators.
class TwistedOp {
  public:
    TwistedOp(Field f, int d) : field_(f), d_(d), degree_(DegreeTag::zero()) {}
    static TwistedOp zero(Field f, int d) { return TwistedOp(f, d); }
    // Identity on the listed components.
    static TwistedOp identity(Field f, int d, const std::vector<Seq>& comps);
    static TwistedOp single(Field f, int d, Seq src, Seq tgt, PosMap map, RationalFunction coeff,
                            DegreeTag deg);

    Field field() const { return field_; }
    int ambient_vars() const { return d_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<TermKey, RationalFunction>& terms() const { return terms_; }

    DegreeTag degree() const { return degree_; }
    TwistedOp with_degree(DegreeTag t) const;

    void add_term(const TermKey& key, const RationalFunction& coeff);

    TwistedOp operator+(const TwistedOp& o) const;
    TwistedOp operator-(const TwistedOp& o) const;
    TwistedOp operator*(const Scalar& c) const;
    // Left multiplication by a coefficient on every target component.
    TwistedOp scale_outer(const RationalFunction& c) const;

    bool operator==(const TwistedOp& o) const;  // compares normal forms only
    bool operator!=(const TwistedOp& o) const { return !(*this == o); }

    std::string to_string(const std::vector<std::string>& labels,
                          const std::string& stem = "x") const;

  private:
    Field field_;
    int d_;
    std::map<TermKey, RationalFunction> terms_;
    DegreeTag degree_;
};

// T2∘T1 (apply T1 first).  Term pairs with tgt(t1) != src(t2) contribute zero.
TwistedOp compose(const TwistedOp& t2, const TwistedOp& t1);

// Polynomial vector: one entry per component sequence.
using PolyVec = std::map<Seq, RationalFunction>;

PolyVec act(const TwistedOp& t, const PolyVec& v);

}  // namespace klr
