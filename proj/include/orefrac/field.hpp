#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <utility>

#include "orefrac/error.hpp"
#include "orefrac/poly.hpp"
#include "orefrac/rational.hpp"

namespace orefrac {

/// Contract every coefficient field of the operator algebra must satisfy:
/// exact field arithmetic, a derivation, and enough introspection to print
/// and to drive pivot selection. Constants embed through the `long` ctor.
template <typename K>
concept DifferentialFieldElement =
    std::regular<K> && std::constructible_from<K, long> && requires(const K& a, const K& b) {
        { a + b } -> std::convertible_to<K>;
        { a - b } -> std::convertible_to<K>;
        { a* b } -> std::convertible_to<K>;
        { a / b } -> std::convertible_to<K>;
        { -a } -> std::convertible_to<K>;
        { a.derivative() } -> std::convertible_to<K>;
        { a.is_zero() } -> std::convertible_to<bool>;
        { a.is_one() } -> std::convertible_to<bool>;
        { a.is_negative() } -> std::convertible_to<bool>;
        { a.complexity() } -> std::convertible_to<std::size_t>;
        { a.to_string() } -> std::convertible_to<std::string>;
        { K::zero() } -> std::convertible_to<K>;
        { K::one() } -> std::convertible_to<K>;
    };

/// Element of K = Q(x) with derivation d/dx. Canonical form: num and den are
/// integer-coefficient polynomials with no common factor (content included),
/// den has positive leading coefficient, zero is (0, 1).
class RatFunc {
public:
    RatFunc() : num_{}, den_(Rat(1)) {}
    RatFunc(long c) : RatFunc(Poly(c), Poly(Rat(1))) {}
    explicit RatFunc(const Rat& c) : RatFunc(Poly(c), Poly(Rat(1))) {}
    explicit RatFunc(Poly num) : RatFunc(std::move(num), Poly(Rat(1))) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(1); }
    static RatFunc variable() { return RatFunc(Poly::variable()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.degree() == 0 && num_.coeff(0) == 1 && den_.degree() == 0 && den_.coeff(0) == 1; }
    bool is_negative() const { return !num_.is_zero() && num_.lc() < 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    std::size_t complexity() const {
        if (is_zero()) return 0;
        return static_cast<std::size_t>(num_.degree() + den_.degree());
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        Poly g = Poly::gcd_primitive(a.den_, b.den_);
        if (g.degree() == 0)
            return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        Poly ar = Poly::exact_div_primitive(a.den_, g), br = Poly::exact_div_primitive(b.den_, g);
        return RatFunc(a.num_ * br + b.num_ * ar, a.den_ * br);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        // Cross-cancel before multiplying to keep the final gcd cheap.
        Poly an = a.num_, bd = b.den_;
        if (an.degree() > 0 && bd.degree() > 0) {
            Poly g = Poly::gcd_primitive(an, bd);
            if (g.degree() > 0) {
                an = Poly::exact_div_primitive(an, g);
                bd = Poly::exact_div_primitive(bd, g);
            }
        }
        Poly bn = b.num_, ad = a.den_;
        if (bn.degree() > 0 && ad.degree() > 0) {
            Poly g = Poly::gcd_primitive(bn, ad);
            if (g.degree() > 0) {
                bn = Poly::exact_div_primitive(bn, g);
                ad = Poly::exact_div_primitive(ad, g);
            }
        }
        RatFunc r;
        r.num_ = an * bn;
        r.den_ = ad * bd;
        if (!r.den_.is_unit_one()) r.finish_reduced();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw OreError(errc::division_by_zero, "field", "division by zero in Q(x)");
        return a * RatFunc(b.den_, b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// d/dx via the quotient rule; the constructor reduces the square.
    RatFunc derivative() const {
        if (is_zero()) return RatFunc();
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    std::string to_string() const {
        if (den_.degree() == 0 && den_.coeff(0) == 1) return num_.to_string();
        std::string n = num_.to_string();
        if (has_toplevel_add(n)) n = "(" + n + ")";
        std::string d = den_.to_string();
        if (has_toplevel_op(d)) d = "(" + d + ")";
        return n + "/" + d;
    }

    /// True when the printed form contains a top-level '+', '-' or '/',
    /// i.e. when it needs parentheses as a multiplication operand.
    bool needs_parens_as_factor() const {
        std::string s = to_string();
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] == '/' ) return true;
        return has_toplevel_add(s);
    }

private:
    static bool has_toplevel_add(const std::string& s) {
        int depth = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char ch = s[i];
            if (ch == '(') ++depth;
            else if (ch == ')') --depth;
            else if (depth == 0 && i > 0 && (ch == '+' || ch == '-')) return true;
        }
        return false;
    }
    static bool has_toplevel_op(const std::string& s) {
        int depth = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char ch = s[i];
            if (ch == '(') ++depth;
            else if (ch == ')') --depth;
            else if (depth == 0 && i > 0 && (ch == '+' || ch == '-' || ch == '*' || ch == '/')) return true;
        }
        return false;
    }

    void normalize() {
        if (den_.is_zero())
            throw OreError(errc::zero_denominator, "field", "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(Rat(1));
            return;
        }
        if (den_.is_unit_one() && num_.is_integral()) return;
        // Integerize first so the gcd and divisions run over Z.
        auto [cn, pn] = num_.content_primitive();
        auto [cd, pd] = den_.content_primitive();
        if (pn.degree() > 0 && pd.degree() > 0) {
            Poly g = Poly::gcd_primitive(pn, pd);
            if (g.degree() > 0) {
                pn = Poly::exact_div_primitive(pn, g);
                pd = Poly::exact_div_primitive(pd, g);
            }
        }
        Rat scale = cn / cd;  // canonical: already in lowest terms
        num_ = pn * Rat(scale.get_num());
        den_ = pd * Rat(scale.get_den());
    }

    /// Final content/sign normalization, assuming num and den are already
    /// coprime as polynomials.
    void finish_reduced() {
        auto [cn, pn] = num_.content_primitive();
        auto [cd, pd] = den_.content_primitive();
        Rat scale = cn / cd;  // canonical: already in lowest terms
        num_ = pn * Rat(scale.get_num());
        den_ = pd * Rat(scale.get_den());
    }

    Poly num_, den_;
};

static_assert(DifferentialFieldElement<RatFunc>);

namespace detail {

/// Hermite reduction tail: rewrites proper a/d (d squarefree-factored along
/// the way) as g' + h with squarefree-denominator h, returning h's numerator
/// and denominator. Only the vanishing of h matters to callers.
inline std::pair<Poly, Poly> hermite_remainder(Poly a, const Poly& d) {
    Poly dm = Poly::gcd(d, d.derivative());
    Poly ds = Poly::exact_div(d, dm);
    while (dm.degree() > 0) {
        Poly dm2 = Poly::gcd(dm, dm.derivative());
        Poly dms = Poly::exact_div(dm, dm2);
        // ds*dm'/dm is a polynomial coprime to dms.
        Poly h = Poly::exact_div(ds * dm.derivative(), dm);
        auto [b, c] = Poly::diophantine(-h, dms, a);
        a = c - b.derivative() * Poly::exact_div(ds, dms);
        dm = dm2;
    }
    return {a, ds};
}

}  // namespace detail

/// Decides membership in the image of d/dx on Q(x): f = g' for some rational
/// g iff after Hermite reduction the squarefree-denominator remainder has no
/// proper part (all residues vanish). Polynomial parts are always integrable.
inline bool is_total_derivative(const RatFunc& f) {
    if (f.is_zero()) return true;
    if (f.den().degree() == 0) return true;
    Poly proper = Poly::divmod(f.num(), f.den()).second;
    if (proper.is_zero()) return true;
    auto [rem, ds] = detail::hermite_remainder(proper, f.den());
    if (rem.is_zero()) return true;
    if (ds.degree() == 0) return true;
    return Poly::divmod(rem, ds).second.is_zero();
}

}  // namespace orefrac
