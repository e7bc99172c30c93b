#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "alc/rational_fn.hpp"

namespace alc {

// a + b*s with s^2 = radicand; one adjoined root per computation.
class SqrtExt {
public:
    SqrtExt() : a_(0), b_(0), rad_(std::make_shared<RationalFn>(0)) {}
    SqrtExt(RationalFn a, RationalFn b, std::shared_ptr<const RationalFn> rad)
        : a_(std::move(a)), b_(std::move(b)), rad_(std::move(rad)) {}
    static SqrtExt root(std::shared_ptr<const RationalFn> rad) { return SqrtExt(0, 1, rad); }
    SqrtExt lift(const RationalFn& v) const { return SqrtExt(v, 0, rad_); }

    const RationalFn& a() const { return a_; }
    const RationalFn& b() const { return b_; }
    const RationalFn& radicand() const { return *rad_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    SqrtExt operator+(const SqrtExt& o) const { check(o); return SqrtExt(a_ + o.a_, b_ + o.b_, rad_); }
    SqrtExt operator-(const SqrtExt& o) const { check(o); return SqrtExt(a_ - o.a_, b_ - o.b_, rad_); }
    SqrtExt operator-() const { return SqrtExt(-a_, -b_, rad_); }
    SqrtExt operator*(const SqrtExt& o) const {
        check(o);
        return SqrtExt(a_ * o.a_ + b_ * o.b_ * *rad_, a_ * o.b_ + b_ * o.a_, rad_);
    }
    RationalFn norm() const { return a_ * a_ - b_ * b_ * *rad_; }
    SqrtExt inverse() const {
        RationalFn n = norm();
        if (n.is_zero()) throw PolyError("SqrtExt: zero divisor");
        return SqrtExt(a_ / n, -b_ / n, rad_);
    }
    SqrtExt operator/(const SqrtExt& o) const { return *this * o.inverse(); }
    bool operator==(const SqrtExt& o) const { return a_ == o.a_ && b_ == o.b_; }

    // As a rational function in the given root variable.
    RationalFn as_rational(int root_var) const { return a_ + b_ * RationalFn(Poly::var(root_var)); }
    std::string str() const { return "(" + a_.str() + ") + (" + b_.str() + ")*sqrt(" + rad_->str() + ")"; }

private:
    void check(const SqrtExt& o) const {
        if (rad_ != o.rad_ && !(*rad_ == *o.rad_)) throw PolyError("SqrtExt: mismatched radicands");
    }
    RationalFn a_, b_;
    std::shared_ptr<const RationalFn> rad_;
};

// Numeric element of Q(sqrt(d)); d = 0 gives plain rationals.
struct QuadElem {
    mpq_class a = 0, b = 0, d = 0;

    QuadElem() = default;
    QuadElem(const mpq_class& av) : a(av) {}
    QuadElem(long av) : a(av) {}
    QuadElem(const mpq_class& av, const mpq_class& bv, const mpq_class& dv) : a(av), b(bv), d(dv) {}

    static mpq_class pick_d(const QuadElem& x, const QuadElem& y) { return x.d != 0 ? x.d : y.d; }
    bool is_zero() const { return a == 0 && b == 0; }
    QuadElem operator+(const QuadElem& o) const { return {a + o.a, b + o.b, pick_d(*this, o)}; }
    QuadElem operator-(const QuadElem& o) const { return {a - o.a, b - o.b, pick_d(*this, o)}; }
    QuadElem operator-() const { return {-a, -b, d}; }
    QuadElem operator*(const QuadElem& o) const {
        mpq_class dd = pick_d(*this, o);
        return {a * o.a + b * o.b * dd, a * o.b + b * o.a, dd};
    }
    mpq_class norm() const { return a * a - b * b * d; }
    QuadElem inverse() const {
        mpq_class n = norm();
        if (n == 0) throw PolyError("QuadElem: zero divisor");
        return {a / n, -b / n, d};
    }
    QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }
    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QuadElem& o) const { return !(*this == o); }
    double approx() const { return a.get_d() + b.get_d() * std::sqrt(d.get_d()); }
    std::string str() const {
        if (b == 0) return rat_str(a);
        return rat_str(a) + " + " + rat_str(b) + "*sqrt(" + rat_str(d) + ")";
    }
};

}  // namespace alc
