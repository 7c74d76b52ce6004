#pragma once

#include <string>
#include <utility>

#include "orefrac/error.hpp"
#include "orefrac/ore.hpp"

namespace orefrac {

/// Right fraction num * den^-1 in the skewfield K(D). Kept in minimal form:
/// gcrd(num, den) = 1 and den monic; zero is (0, 1).
template <DifferentialFieldElement K>
class ScalarFraction {
public:
    ScalarFraction() : num_{}, den_(OrePoly<K>::one()) {}
    explicit ScalarFraction(OrePoly<K> whole) : num_(std::move(whole)), den_(OrePoly<K>::one()) {}
    ScalarFraction(const OrePoly<K>& num, const OrePoly<K>& den) {
        auto s = simplify(num, den);
        num_ = s.num_;
        den_ = s.den_;
    }

    static ScalarFraction zero() { return ScalarFraction(); }
    static ScalarFraction one() { return ScalarFraction(OrePoly<K>::one()); }

    const OrePoly<K>& num() const { return num_; }
    const OrePoly<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_operator() const { return den_.is_one(); }

    /// Divides out the gcrd and makes the denominator monic (the unit moves
    /// into the numerator, matching the uniqueness up to elements of K).
    static ScalarFraction simplify(const OrePoly<K>& a, const OrePoly<K>& b) {
        if (b.is_zero())
            throw OreError(errc::zero_denominator, "ratfrac", "fraction with zero denominator");
        ScalarFraction out;
        if (a.is_zero()) return out;
        OrePoly<K> d = gcrd(a, b);
        OrePoly<K> a0 = exact_right_div(a, d);
        OrePoly<K> b0 = exact_right_div(b, d);
        OrePoly<K> unit(K::one() / b0.leading_coeff());
        out.num_ = a0 * unit;
        out.den_ = b0 * unit;
        return out;
    }

    ScalarFraction inverse() const {
        if (is_zero()) throw OreError(errc::inverse_of_zero, "ratfrac", "inverse of the zero fraction");
        return ScalarFraction(den_, num_);
    }

    friend ScalarFraction operator+(const ScalarFraction& x, const ScalarFraction& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        auto [m, s1, t1] = lcrm_cofactors(x.den_, y.den_);
        return ScalarFraction(x.num_ * s1 + y.num_ * t1, m);
    }
    friend ScalarFraction operator-(const ScalarFraction& x, const ScalarFraction& y) {
        return x + (-y);
    }
    ScalarFraction operator-() const {
        ScalarFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    /// x*y rewrites den_x^-1 * num_y as a right fraction t*s^-1 through a
    /// common right multiple num_y*s = den_x*t.
    friend ScalarFraction operator*(const ScalarFraction& x, const ScalarFraction& y) {
        if (x.is_zero() || y.is_zero()) return ScalarFraction();
        auto [m, s, t] = lcrm_cofactors(y.num_, x.den_);
        (void)m;
        return ScalarFraction(x.num_ * t, y.den_ * s);
    }

    friend bool operator==(const ScalarFraction& x, const ScalarFraction& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const ScalarFraction& x, const ScalarFraction& y) { return !(x == y); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ") * (" + den_.to_string() + ")^-1";
    }

private:
    OrePoly<K> num_, den_;
};

/// Equality of fractions; minimal forms are canonical, so this is structural.
template <DifferentialFieldElement K>
bool frac_equal(const ScalarFraction<K>& a, const ScalarFraction<K>& b) {
    return a == b;
}

}  // namespace orefrac
