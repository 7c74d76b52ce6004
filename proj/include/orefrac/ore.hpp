#pragma once

#include <cassert>
#include <limits>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "orefrac/error.hpp"
#include "orefrac/field.hpp"

namespace orefrac {

/// Differential operator sum c_k D^k over a differential field K, with the
/// commutation rule D*f = f*D + f'. Zero has an empty coefficient list and
/// order kOrderZero, which compares below every attainable order.
template <DifferentialFieldElement K>
class OrePoly {
public:
    static constexpr int kOrderZero = std::numeric_limits<int>::min();

    OrePoly() = default;
    explicit OrePoly(const K& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    explicit OrePoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static OrePoly zero() { return OrePoly{}; }
    static OrePoly one() { return OrePoly(K::one()); }
    static OrePoly d() { return monomial(K::one(), 1); }
    static OrePoly monomial(const K& coeff, int order) {
        if (coeff.is_zero()) return OrePoly{};
        std::vector<K> v(static_cast<std::size_t>(order) + 1, K::zero());
        v.back() = coeff;
        return OrePoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    int order() const { return c_.empty() ? kOrderZero : static_cast<int>(c_.size()) - 1; }

    const K& coeff(int k) const {
        static const K kZero = K::zero();
        if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<std::size_t>(k)];
    }

    const K& leading_coeff() const {
        if (c_.empty())
            throw OreError(errc::zero_argument, "ore", "leading coefficient of the zero operator");
        return c_.back();
    }

    /// Sum of coefficient sizes; pivot tie-breaking metric.
    std::size_t complexity() const {
        std::size_t s = 0;
        for (const auto& c : c_)
            if (!c.is_zero()) s += c.complexity() + 1;
        return s;
    }

    friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
        return OrePoly(std::move(v));
    }
    friend OrePoly operator-(const OrePoly& a, const OrePoly& b) {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = v[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] - b.c_[i];
        return OrePoly(std::move(v));
    }
    OrePoly operator-() const {
        OrePoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    /// Noncommutative product: D^k f = sum_i C(k,i) f^(i) D^(k-i).
    friend OrePoly operator*(const OrePoly& a, const OrePoly& b) {
        if (a.is_zero() || b.is_zero()) return OrePoly{};
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K::zero());
        for (std::size_t k = 0; k < a.c_.size(); ++k) {
            if (a.c_[k].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                K der = b.c_[j];
                for (std::size_t i = 0; i <= k; ++i) {
                    if (!der.is_zero()) {
                        K w = K(1);
                        if (i > 0) {
                            if constexpr (std::is_same_v<K, RatFunc>)
                                w = K(Rat(binomial(static_cast<unsigned long>(k),
                                                   static_cast<unsigned long>(i))));
                            else
                                w = binomial_as<K>(k, i);
                        }
                        v[k - i + j] = v[k - i + j] + a.c_[k] * w * der;
                    }
                    der = der.derivative();
                }
            }
        }
        return OrePoly(std::move(v));
    }

    friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const OrePoly& a, const OrePoly& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = order(); k >= 0; --k) {
            const K& c = coeff(k);
            if (c.is_zero()) continue;
            bool neg = c.is_negative();
            K mag = neg ? -c : c;
            std::string piece;
            if (k == 0) {
                piece = mag.to_string();
            } else {
                std::string dpart = k == 1 ? "D" : "D^" + std::to_string(k);
                if (mag.is_one()) {
                    piece = dpart;
                } else {
                    std::string cs = mag.to_string();
                    if (mag.needs_parens_as_factor()) cs = "(" + cs + ")";
                    piece = cs + "*" + dpart;
                }
            }
            if (out.empty())
                out = (neg ? "-" : "") + piece;
            else
                out += (neg ? " - " : " + ") + piece;
        }
        return out;
    }

private:
    template <typename T>
    static T binomial_as(std::size_t n, std::size_t k) {
        // Generic fallback: build C(n,k) by repeated addition in T.
        T num = T(1), den = T(1);
        for (std::size_t i = 0; i < k; ++i) {
            num = num * T(static_cast<long>(n - i));
            den = den * T(static_cast<long>(i + 1));
        }
        return num / den;
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<K> c_;
};

/// Right division: a = q*b + r with order(r) < order(b). The quotient is
/// built leading-term first; q_t = lc(r)/lc(b) at each step.
template <DifferentialFieldElement K>
std::pair<OrePoly<K>, OrePoly<K>> right_divmod(const OrePoly<K>& a, const OrePoly<K>& b) {
    if (b.is_zero()) throw OreError(errc::division_by_zero, "ore", "right division by zero operator");
    OrePoly<K> q, r = a;
    while (!r.is_zero() && r.order() >= b.order()) {
        K c = r.leading_coeff() / b.leading_coeff();
        auto t = OrePoly<K>::monomial(c, r.order() - b.order());
        q = q + t;
        r = r - t * b;
    }
    return {q, r};
}

/// Left division: a = b*q + r with order(r) < order(b).
template <DifferentialFieldElement K>
std::pair<OrePoly<K>, OrePoly<K>> left_divmod(const OrePoly<K>& a, const OrePoly<K>& b) {
    if (b.is_zero()) throw OreError(errc::division_by_zero, "ore", "left division by zero operator");
    OrePoly<K> q, r = a;
    while (!r.is_zero() && r.order() >= b.order()) {
        K c = r.leading_coeff() / b.leading_coeff();
        auto t = OrePoly<K>::monomial(c, r.order() - b.order());
        q = q + t;
        r = r - b * t;
    }
    return {q, r};
}

template <DifferentialFieldElement K>
OrePoly<K> exact_right_div(const OrePoly<K>& a, const OrePoly<K>& b) {
    auto [q, r] = right_divmod(a, b);
    if (!r.is_zero())
        throw OreError(errc::non_exact_division, "ore", "right division left a remainder");
    return q;
}

template <DifferentialFieldElement K>
OrePoly<K> exact_left_div(const OrePoly<K>& a, const OrePoly<K>& b) {
    auto [q, r] = left_divmod(a, b);
    if (!r.is_zero())
        throw OreError(errc::non_exact_division, "ore", "left division left a remainder");
    return q;
}

/// Monic via left unit: (1/lc) * p. Right ideals are preserved.
template <DifferentialFieldElement K>
OrePoly<K> monic_left(const OrePoly<K>& p) {
    if (p.is_zero()) throw OreError(errc::zero_argument, "ore", "cannot normalize the zero operator");
    return OrePoly<K>(K::one() / p.leading_coeff()) * p;
}

/// Monic via right unit: p * (1/lc). Left ideals are preserved.
template <DifferentialFieldElement K>
OrePoly<K> monic_right(const OrePoly<K>& p) {
    if (p.is_zero()) throw OreError(errc::zero_argument, "ore", "cannot normalize the zero operator");
    return p * OrePoly<K>(K::one() / p.leading_coeff());
}

/// Greatest common right divisor, monic. gcrd(a,0) = monic(a).
template <DifferentialFieldElement K>
OrePoly<K> gcrd(const OrePoly<K>& a, const OrePoly<K>& b) {
    if (a.is_zero() && b.is_zero())
        throw OreError(errc::both_zero, "ore", "gcrd of two zero operators");
    OrePoly<K> x = a, y = b;
    while (!y.is_zero()) {
        auto r = right_divmod(x, y).second;
        x = y;
        y = r;
    }
    return monic_left(x);
}

/// Extended gcrd: g = gcrd(a,b) together with u*a + v*b = g.
template <DifferentialFieldElement K>
std::tuple<OrePoly<K>, OrePoly<K>, OrePoly<K>> gcrd_extended(const OrePoly<K>& a, const OrePoly<K>& b) {
    if (a.is_zero() && b.is_zero())
        throw OreError(errc::both_zero, "ore", "gcrd of two zero operators");
    OrePoly<K> r0 = a, r1 = b;
    OrePoly<K> u0 = OrePoly<K>::one(), u1, v0, v1 = OrePoly<K>::one();
    while (!r1.is_zero()) {
        auto [q, r2] = right_divmod(r0, r1);
        OrePoly<K> u2 = u0 - q * u1;
        OrePoly<K> v2 = v0 - q * v1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    OrePoly<K> unit(K::one() / r0.leading_coeff());
    return {unit * r0, unit * u0, unit * v0};
}

/// Least common left multiple with cofactors: m = p*a = q*b, m monic.
template <DifferentialFieldElement K>
std::tuple<OrePoly<K>, OrePoly<K>, OrePoly<K>> lclm_cofactors(const OrePoly<K>& a, const OrePoly<K>& b) {
    if (a.is_zero() || b.is_zero())
        throw OreError(errc::zero_argument, "ore", "lclm of a zero operator");
    // Run the extended Euclidean scheme to exhaustion; the cofactor row that
    // reaches remainder 0 yields the least common left multiple.
    OrePoly<K> r0 = a, r1 = b;
    OrePoly<K> u0 = OrePoly<K>::one(), u1, v0, v1 = OrePoly<K>::one();
    while (!r1.is_zero()) {
        auto [q, r2] = right_divmod(r0, r1);
        OrePoly<K> u2 = u0 - q * u1;
        OrePoly<K> v2 = v0 - q * v1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    OrePoly<K> m = u1 * a;
    OrePoly<K> unit(K::one() / m.leading_coeff());
    return {unit * m, unit * u1, -(unit * v1)};
}

template <DifferentialFieldElement K>
OrePoly<K> lclm(const OrePoly<K>& a, const OrePoly<K>& b) {
    return std::get<0>(lclm_cofactors(a, b));
}

/// Greatest common left divisor (via left division), monic on the right.
template <DifferentialFieldElement K>
OrePoly<K> gcld(const OrePoly<K>& a, const OrePoly<K>& b) {
    if (a.is_zero() && b.is_zero())
        throw OreError(errc::both_zero, "ore", "gcld of two zero operators");
    OrePoly<K> x = a, y = b;
    while (!y.is_zero()) {
        auto r = left_divmod(x, y).second;
        x = y;
        y = r;
    }
    return monic_right(x);
}

/// Least common right multiple with cofactors: m = a*s = b*t, m monic.
/// This is the mirror of lclm, with division and cofactors on the left/right
/// sides swapped.
template <DifferentialFieldElement K>
std::tuple<OrePoly<K>, OrePoly<K>, OrePoly<K>> lcrm_cofactors(const OrePoly<K>& a, const OrePoly<K>& b) {
    if (a.is_zero() || b.is_zero())
        throw OreError(errc::zero_argument, "ore", "lcrm of a zero operator");
    OrePoly<K> r0 = a, r1 = b;
    OrePoly<K> u0 = OrePoly<K>::one(), u1, v0, v1 = OrePoly<K>::one();
    while (!r1.is_zero()) {
        auto [q, r2] = left_divmod(r0, r1);
        OrePoly<K> u2 = u0 - u1 * q;
        OrePoly<K> v2 = v0 - v1 * q;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    OrePoly<K> m = a * u1;
    OrePoly<K> unit(K::one() / m.leading_coeff());
    return {m * unit, u1 * unit, -(v1 * unit)};
}

template <DifferentialFieldElement K>
OrePoly<K> lcrm(const OrePoly<K>& a, const OrePoly<K>& b) {
    return std::get<0>(lcrm_cofactors(a, b));
}

/// Formal adjoint: (c D^k)* = (-D)^k c; an involutive antihomomorphism.
template <DifferentialFieldElement K>
OrePoly<K> adjoint(const OrePoly<K>& p) {
    OrePoly<K> result;
    for (int k = 0; k <= (p.is_zero() ? -1 : p.order()); ++k) {
        const K& c = p.coeff(k);
        if (c.is_zero()) continue;
        OrePoly<K> term = OrePoly<K>::monomial(k % 2 == 0 ? K::one() : -K::one(), k) * OrePoly<K>(c);
        result = result + term;
    }
    return result;
}

/// Applies the operator to a field element: sum c_k * f^(k).
template <DifferentialFieldElement K>
K apply(const OrePoly<K>& p, const K& f) {
    K acc = K::zero();
    K der = f;
    for (int k = 0; k <= (p.is_zero() ? -1 : p.order()); ++k) {
        if (!p.coeff(k).is_zero()) acc = acc + p.coeff(k) * der;
        der = der.derivative();
    }
    return acc;
}

}  // namespace orefrac
