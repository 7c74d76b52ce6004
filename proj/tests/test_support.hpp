#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "orefrac/field.hpp"
#include "orefrac/matops.hpp"
#include "orefrac/ore.hpp"
#include "orefrac/poly.hpp"

namespace testsup {

using orefrac::OpMatrix;
using orefrac::OrePoly;
using orefrac::Poly;
using orefrac::Rat;
using orefrac::RatFunc;

using Ore = OrePoly<RatFunc>;
using Mat = OpMatrix<RatFunc>;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eedULL);
    return gen;
}

inline int rand_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng());
}

/// OREFRAC_MAX_ORDER caps operator orders used by randomized tests.
inline int cap_order(int requested) {
    static int cap = [] {
        const char* s = std::getenv("OREFRAC_MAX_ORDER");
        return s ? std::atoi(s) : -1;
    }();
    if (cap >= 0 && requested > cap) return cap;
    return requested;
}

inline Rat rand_rat(int mag = 5) {
    int n = rand_int(-mag, mag);
    return Rat(n);
}

inline Poly rand_poly(int max_deg, bool nonzero = false) {
    int deg = rand_int(0, max_deg);
    std::vector<Rat> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = rand_rat();
    Poly p{std::move(c)};
    if (nonzero && p.is_zero()) return Poly(Rat(rand_int(1, 5)));
    return p;
}

/// Random element of Q(x): polynomial numerator, small monic-ish denominator
/// a quarter of the time.
inline RatFunc rand_ratfunc(int max_deg = 2) {
    Poly num = rand_poly(max_deg);
    if (rand_int(0, 3) == 0) {
        Poly den = rand_poly(std::max(1, max_deg - 1), true);
        if (den.degree() < 1) den = Poly::variable() + den;
        return RatFunc(num, den);
    }
    return RatFunc(num);
}

inline RatFunc rand_ratfunc_nonzero(int max_deg = 2) {
    for (;;) {
        RatFunc f = rand_ratfunc(max_deg);
        if (!f.is_zero()) return f;
    }
}

inline Ore rand_ore(int max_order, int coeff_deg = 2) {
    int ord = rand_int(0, cap_order(max_order));
    std::vector<RatFunc> c(static_cast<std::size_t>(ord) + 1);
    for (auto& x : c) x = rand_ratfunc(coeff_deg);
    c.back() = rand_ratfunc_nonzero(coeff_deg);
    return Ore(std::move(c));
}

inline Ore rand_ore_constant_coeffs(int max_order) {
    int ord = rand_int(0, cap_order(max_order));
    std::vector<RatFunc> c(static_cast<std::size_t>(ord) + 1);
    for (auto& x : c) x = RatFunc(rand_rat());
    c.back() = RatFunc(Rat(rand_int(1, 5)));
    return Ore(std::move(c));
}

inline Mat rand_matrix(int n, int max_order, int coeff_deg = 2, int zero_weight = 3) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rand_int(0, zero_weight) != 0) m.at(i, j) = rand_ore(max_order, coeff_deg);
    return m;
}

inline Mat rand_nondegenerate(int n, int max_order, int coeff_deg = 2) {
    for (;;) {
        Mat m = rand_matrix(n, max_order, coeff_deg);
        if (!orefrac::dieudonne_det(m).is_zero()) return m;
    }
}

/// Product of a few elementary matrices: swaps and add-left-multiples.
inline Mat rand_unimodular(int n, int ops = 3, int op_order = 1, int coeff_deg = 1) {
    Mat m = Mat::identity(n);
    if (n == 1) return m;
    for (int t = 0; t < ops; ++t) {
        if (rand_int(0, 2) == 0) {
            int i = rand_int(0, n - 1), j = rand_int(0, n - 1);
            m.swap_rows(i, j);
        } else {
            int i = rand_int(0, n - 1), j = rand_int(0, n - 1);
            if (i == j) continue;
            m.row_addmul(i, j, rand_ore(op_order, coeff_deg));
        }
    }
    return m;
}

/// Non-degenerate matrix with known Dieudonne degree: U1 * diag * U2.
inline Mat rand_nondeg_with_degree(int n, int total_degree, int ops = 2) {
    Mat d = Mat::identity(n);
    int remaining = cap_order(total_degree);
    for (int i = 0; i < n && remaining > 0; ++i) {
        int k = i == n - 1 ? remaining : rand_int(0, remaining);
        remaining -= k;
        std::vector<RatFunc> c(static_cast<std::size_t>(k) + 1);
        for (auto& x : c) x = rand_ratfunc(1);
        c.back() = RatFunc(1);
        d.at(i, i) = Ore(std::move(c));
    }
    return rand_unimodular(n, ops) * d * rand_unimodular(n, ops);
}

/// Constant-coefficient operator viewed in C[lambda].
inline Poly to_commutative(const Ore& p) {
    if (p.is_zero()) return Poly{};
    std::vector<Rat> c(static_cast<std::size_t>(p.order()) + 1);
    for (int k = 0; k <= p.order(); ++k) {
        const RatFunc& f = p.coeff(k);
        assert(f.is_constant());
        c[static_cast<std::size_t>(k)] = f.num().coeff(0) / f.den().coeff(0);
    }
    return Poly{std::move(c)};
}

inline Ore from_commutative(const Poly& p) {
    std::vector<RatFunc> c(static_cast<std::size_t>(p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k) c[static_cast<std::size_t>(k)] = RatFunc(p.coeff(k));
    return Ore(std::move(c));
}

/// Commutative determinant over Q[lambda] by cofactor expansion (n <= 3).
inline Poly commutative_det(const std::vector<std::vector<Poly>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Poly acc;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Poly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Poly term = m[0][j] * commutative_det(minor);
        acc = j % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace testsup
