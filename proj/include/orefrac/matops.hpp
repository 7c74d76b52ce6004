#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orefrac/error.hpp"
#include "orefrac/ore.hpp"
#include "orefrac/ratfrac.hpp"

namespace orefrac {

/// Rectangular matrix over K[D]. Entries are individually canonical; shape is
/// fixed at construction.
template <DifferentialFieldElement K>
class OpMatrix {
public:
    OpMatrix() : rows_(0), cols_(0) {}
    OpMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}
    OpMatrix(int rows, int cols, std::vector<OrePoly<K>> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        assert(static_cast<int>(e_.size()) == rows_ * cols_);
    }

    static OpMatrix identity(int n) {
        OpMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = OrePoly<K>::one();
        return m;
    }
    static OpMatrix scalar(int n, const OrePoly<K>& p) {
        OpMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = p;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const OrePoly<K>& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    OrePoly<K>& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }
    bool is_identity() const {
        if (!is_square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if (i == j && !at(i, j).is_one()) return false;
                if (i != j && !at(i, j).is_zero()) return false;
            }
        return true;
    }

    friend OpMatrix operator+(const OpMatrix& a, const OpMatrix& b) {
        a.require_same_shape(b);
        OpMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend OpMatrix operator-(const OpMatrix& a, const OpMatrix& b) {
        a.require_same_shape(b);
        OpMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    OpMatrix operator-() const {
        OpMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }
    friend OpMatrix operator*(const OpMatrix& a, const OpMatrix& b) {
        if (a.cols_ != b.rows_)
            throw OreError(errc::shape_mismatch, "matops", "inner dimensions disagree");
        OpMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }

    friend bool operator==(const OpMatrix& a, const OpMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const OpMatrix& a, const OpMatrix& b) { return !(a == b); }

    OpMatrix block(int r0, int c0, int nr, int nc) const {
        OpMatrix m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
        return m;
    }

    // Elementary operations. Row combinations multiply on the left, column
    // combinations on the right; both are the unimodular moves of the theory.
    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    }
    void row_addmul(int i, int j, const OrePoly<K>& p) {  // row_i += p * row_j
        for (int c = 0; c < cols_; ++c) at(i, c) = at(i, c) + p * at(j, c);
    }
    void col_addmul(int j, int i, const OrePoly<K>& p) {  // col_j += col_i * p
        for (int r = 0; r < rows_; ++r) at(r, j) = at(r, j) + at(r, i) * p;
    }
    void row_scale(int i, const K& c) {  // row_i := c * row_i, c a unit of K
        OrePoly<K> op(c);
        for (int j = 0; j < cols_; ++j) at(i, j) = op * at(i, j);
    }
    void col_scale(int j, const K& c) {  // col_j := col_j * c, c a unit of K
        OrePoly<K> op(c);
        for (int r = 0; r < rows_; ++r) at(r, j) = at(r, j) * op;
    }

    std::string to_string() const {
        std::string out = "[";
        for (int i = 0; i < rows_; ++i) {
            if (i) out += ", ";
            out += "[";
            for (int j = 0; j < cols_; ++j) {
                if (j) out += ", ";
                out += at(i, j).to_string();
            }
            out += "]";
        }
        return out + "]";
    }

private:
    void require_same_shape(const OpMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw OreError(errc::shape_mismatch, "matops", "matrix shapes disagree");
    }

    int rows_, cols_;
    std::vector<OrePoly<K>> e_;
};

/// Dieudonne determinant value: leading coefficient det1 and degree d, or the
/// distinguished zero.
template <DifferentialFieldElement K>
struct DetValue {
    bool zero = true;
    K det1 = K::zero();
    long degree = 0;

    static DetValue make_zero() { return DetValue{}; }
    static DetValue of(K d1, long d) { return DetValue{false, std::move(d1), d}; }
    bool is_zero() const { return zero; }

    friend DetValue operator*(const DetValue& a, const DetValue& b) {
        if (a.zero || b.zero) return make_zero();
        return of(a.det1 * b.det1, a.degree + b.degree);
    }
    friend bool operator==(const DetValue& a, const DetValue& b) {
        if (a.zero != b.zero) return false;
        if (a.zero) return true;
        return a.det1 == b.det1 && a.degree == b.degree;
    }
    friend bool operator!=(const DetValue& a, const DetValue& b) { return !(a == b); }
};

/// Invertible transform tracked together with its exact inverse.
template <DifferentialFieldElement K>
struct UnimodularWitness {
    OpMatrix<K> U, Uinv;

    static UnimodularWitness identity(int n) {
        return {OpMatrix<K>::identity(n), OpMatrix<K>::identity(n)};
    }
};

namespace detail {

/// Picks among nonzero candidates the entry of minimal order, breaking ties
/// by smallest coefficient size, then lowest index.
template <DifferentialFieldElement K>
struct PivotChoice {
    int index = -1;
    int ord = 0;
    std::size_t size = 0;

    void offer(int idx, const OrePoly<K>& p) {
        if (p.is_zero()) return;
        int o = p.order();
        std::size_t s = p.complexity();
        if (index < 0 || o < ord || (o == ord && s < size)) {
            index = idx;
            ord = o;
            size = s;
        }
    }
};

/// Scale factor that clears every coefficient denominator in the row and
/// strips the common content afterwards; K::one() when nothing to do.
/// `poly_content` controls whether the (pricier) polynomial content gcd runs
/// or only denominators and integer content are handled.
/// Specific to K = Q(x); other fields fall back to no rescaling.
inline RatFunc row_normalizer(const OpMatrix<RatFunc>& t, int i, bool poly_content) {
    Poly den_lcm(Rat(1));
    Int den_int(1);
    for (int j = 0; j < t.cols(); ++j) {
        const auto& e = t.at(i, j);
        for (int k = 0; k <= (e.is_zero() ? -1 : e.order()); ++k) {
            const RatFunc& c = e.coeff(k);
            if (c.is_zero()) continue;
            auto [cd, pd] = c.den().content_primitive();
            Int q = cd.get_num();
            den_int = den_int / ::gcd(den_int, q) * q;
            if (pd.degree() > 0) {
                Poly g = Poly::gcd_primitive(den_lcm, pd);
                den_lcm = g.degree() > 0 ? Poly::exact_div_primitive(den_lcm, g) * pd : den_lcm * pd;
            }
        }
    }
    bool cleared_trivially = den_lcm.degree() == 0 && den_int == 1;
    Poly content;
    Int content_int(0);
    bool any = false;
    for (int j = 0; j < t.cols(); ++j) {
        const auto& e = t.at(i, j);
        for (int k = 0; k <= (e.is_zero() ? -1 : e.order()); ++k) {
            const RatFunc& c = e.coeff(k);
            if (c.is_zero()) continue;
            Poly cleared = cleared_trivially
                               ? c.num()
                               : c.num() * Poly::exact_div_primitive(den_lcm * Poly(Rat(den_int)), c.den());
            auto [cc, cp] = cleared.content_primitive();
            content_int = ::gcd(content_int, Int(cc.get_num()));
            if (!any) {
                content = poly_content ? cp : Poly(Rat(1));
                any = true;
            } else if (content.degree() > 0) {
                content = Poly::gcd_primitive(content, cp);
            }
        }
    }
    if (!any) return RatFunc::one();
    return RatFunc(den_lcm * Poly(Rat(den_int)), content * Poly(Rat(content_int)));
}

template <DifferentialFieldElement K>
K row_normalizer(const OpMatrix<K>&, int, bool) {
    return K::one();
}

/// Trial exact division of a whole row by a primitive polynomial (all
/// coefficients must be integral). Returns false untouched when it does not
/// divide. Used to strip the known Bareiss-style factor without a gcd.
inline bool row_divide_exact(OpMatrix<RatFunc>& t, int i, const Poly& p) {
    if (p.degree() <= 0) return false;
    std::vector<std::vector<RatFunc>> rows(t.cols());
    for (int j = 0; j < t.cols(); ++j) {
        const auto& e = t.at(i, j);
        if (e.is_zero()) continue;
        rows[j].resize(static_cast<std::size_t>(e.order()) + 1, RatFunc::zero());
        for (int k = 0; k <= e.order(); ++k) {
            const RatFunc& c = e.coeff(k);
            if (c.is_zero()) continue;
            if (c.den().degree() != 0 || !c.num().is_integral()) return false;
            Poly q;
            if (!Poly::divide_if_exact(c.num(), p, q)) return false;
            rows[j][static_cast<std::size_t>(k)] = RatFunc(q * Poly(Rat(1) / c.den().coeff(0)));
        }
    }
    for (int j = 0; j < t.cols(); ++j)
        t.at(i, j) = t.at(i, j).is_zero() ? OrePoly<RatFunc>{} : OrePoly<RatFunc>(std::move(rows[j]));
    return true;
}

template <DifferentialFieldElement K>
bool row_divide_exact(OpMatrix<K>&, int, const Poly&) {
    return false;
}

/// In-place reduction of T to upper triangular form by elementary row
/// operations. Maintains A = U * T when a witness is supplied and reports the
/// row-swap parity for determinant sign tracking.
///
/// In fraction-free mode the entry below the pivot is eliminated by the
/// cross-multiplication step row_i := lc_p * row_i - (lc_i D^k) * row_d, and
/// rows are rescaled to cleared, content-free coefficients; the unit row
/// scalings are tracked (they multiply the determinant) and the product of
/// all applied scale factors is returned.
template <DifferentialFieldElement K>
K row_reduce_engine(OpMatrix<K>& t, UnimodularWitness<K>* w, int& swap_parity, bool fraction_free) {
    swap_parity = 0;
    K scale_acc = K::one();
    const int m = t.rows(), n = t.cols();
    auto do_swap = [&](int i, int j) {
        if (i == j) return;
        t.swap_rows(i, j);
        swap_parity ^= 1;
        if (w) {
            w->U.swap_cols(i, j);
            w->Uinv.swap_rows(i, j);
        }
    };
    auto do_addmul = [&](int i, int j, const OrePoly<K>& p) {  // row_i += p*row_j
        t.row_addmul(i, j, p);
        if (w) {
            w->U.col_addmul(j, i, -p);
            w->Uinv.row_addmul(i, j, p);
        }
    };
    auto do_scale = [&](int i, const K& c) {  // row_i := c*row_i
        t.row_scale(i, c);
        scale_acc = scale_acc * c;
        if (w) {
            w->U.col_scale(i, K::one() / c);
            w->Uinv.row_scale(i, c);
        }
    };
    static const int mode = [] {
        const char* s = std::getenv("ORE_ENGINE_MODE");
        return s ? std::atoi(s) : 0;
    }();
    auto normalize_row = [&](int i, bool poly_content) {
        if (!fraction_free) return;
        K s = row_normalizer(t, i, poly_content);
        if (!s.is_one()) do_scale(i, s);
    };
    if (fraction_free)
        for (int i = 0; i < m; ++i) normalize_row(i, true);
    for (int d = 0; d < std::min(m, n); ++d) {
        for (;;) {
            PivotChoice<K> best;
            for (int i = d; i < m; ++i) best.offer(i, t.at(i, d));
            if (best.index < 0) break;
            do_swap(d, best.index);
            bool clear = true;
            for (int i = d + 1; i < m; ++i) {
                if (t.at(i, d).is_zero()) continue;
                if (fraction_free && mode != 2) {
                    while (!t.at(i, d).is_zero() && t.at(i, d).order() >= t.at(d, d).order()) {
                        int k = t.at(i, d).order() - t.at(d, d).order();
                        K lci = t.at(i, d).leading_coeff();
                        K lcp = t.at(d, d).leading_coeff();
                        do_scale(i, lcp);
                        do_addmul(i, d, -(OrePoly<K>(lci) * OrePoly<K>::monomial(K::one(), k)));
                        normalize_row(i, mode == 0);
                    }
                    if (mode == 1) normalize_row(i, true);
                } else {
                    auto q = right_divmod(t.at(i, d), t.at(d, d)).first;
                    do_addmul(i, d, -q);
                    normalize_row(i, true);
                }
                if (!t.at(i, d).is_zero()) clear = false;
            }
            if (clear) break;
        }
    }
    return scale_acc;
}

/// Mirror engine: column operations only, maintaining A = T * V.
template <DifferentialFieldElement K>
void col_reduce_engine(OpMatrix<K>& t, UnimodularWitness<K>* w, int& swap_parity) {
    swap_parity = 0;
    if (!t.is_square())
        throw OreError(errc::not_square, "matops", "column reduction expects a square matrix");
    const int n = t.rows();
    auto do_swap = [&](int i, int j) {
        if (i == j) return;
        t.swap_cols(i, j);
        swap_parity ^= 1;
        if (w) {
            w->U.swap_rows(i, j);
            w->Uinv.swap_cols(i, j);
        }
    };
    auto do_addmul = [&](int j, int i, const OrePoly<K>& p) {  // col_j += col_i*p
        t.col_addmul(j, i, p);
        if (w) {
            w->U.row_addmul(i, j, -p);
            w->Uinv.col_addmul(j, i, p);
        }
    };
    for (int d = n - 1; d >= 0; --d) {
        for (;;) {
            PivotChoice<K> best;
            for (int j = d; j >= 0; --j) best.offer(j, t.at(d, j));
            if (best.index < 0) break;
            do_swap(d, best.index);
            bool clear = true;
            for (int j = d - 1; j >= 0; --j) {
                if (t.at(d, j).is_zero()) continue;
                auto q = left_divmod(t.at(d, j), t.at(d, d)).first;
                do_addmul(j, d, -q);
                if (!t.at(d, j).is_zero()) clear = false;
            }
            if (clear) break;
        }
    }
}

}  // namespace detail

/// A = U * T with T upper triangular; the witness carries U and its inverse.
template <DifferentialFieldElement K>
std::pair<UnimodularWitness<K>, OpMatrix<K>> row_reduce_upper(const OpMatrix<K>& a) {
    OpMatrix<K> t = a;
    auto w = UnimodularWitness<K>::identity(a.rows());
    int parity;
    detail::row_reduce_engine(t, &w, parity, /*fraction_free=*/false);
    return {std::move(w), std::move(t)};
}

/// A = T * U with T upper triangular, built from elementary column moves.
template <DifferentialFieldElement K>
std::pair<OpMatrix<K>, UnimodularWitness<K>> col_reduce_upper(const OpMatrix<K>& a) {
    OpMatrix<K> t = a;
    auto w = UnimodularWitness<K>::identity(a.cols());
    int parity;
    detail::col_reduce_engine(t, &w, parity);
    return {std::move(t), std::move(w)};
}

template <DifferentialFieldElement K>
DetValue<K> dieudonne_det(const OpMatrix<K>& a) {
    if (!a.is_square())
        throw OreError(errc::not_square, "matops", "determinant of a non-square matrix");
    OpMatrix<K> t = a;
    int parity;
    K scale = detail::row_reduce_engine<K>(t, nullptr, parity, /*fraction_free=*/true);
    K d1 = parity ? -K::one() : K::one();
    long deg = 0;
    for (int i = 0; i < t.rows(); ++i) {
        const auto& p = t.at(i, i);
        if (p.is_zero()) return DetValue<K>::make_zero();
        d1 = d1 * p.leading_coeff();
        deg += p.order();
    }
    return DetValue<K>::of(d1 / scale, deg);
}

template <DifferentialFieldElement K>
bool is_unimodular(const OpMatrix<K>& a) {
    auto det = dieudonne_det(a);
    return !det.is_zero() && det.degree == 0;
}

/// Inverse of an invertible element of M_n(K[D]); the triangular form has
/// order-zero diagonal, so back substitution stays inside K[D].
template <DifferentialFieldElement K>
OpMatrix<K> inverse_unimodular(const OpMatrix<K>& a) {
    if (!a.is_square())
        throw OreError(errc::not_square, "matops", "inverse of a non-square matrix");
    const int n = a.rows();
    OpMatrix<K> t = a;
    auto w = UnimodularWitness<K>::identity(n);
    int parity;
    detail::row_reduce_engine(t, &w, parity, /*fraction_free=*/true);
    for (int i = 0; i < n; ++i)
        if (t.at(i, i).is_zero() || t.at(i, i).order() != 0)
            throw OreError(errc::not_invertible, "matops", "matrix has nonzero Dieudonne degree");
    OpMatrix<K> x(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = n - 1; i >= 0; --i) {
            OrePoly<K> rhs = i == j ? OrePoly<K>::one() : OrePoly<K>::zero();
            for (int k = i + 1; k < n; ++k) rhs = rhs - t.at(i, k) * x.at(k, j);
            x.at(i, j) = OrePoly<K>(K::one() / t.at(i, i).coeff(0)) * rhs;
        }
    return x * w.Uinv;
}

/// Entrywise adjoint of the transpose; an involutive antihomomorphism.
template <DifferentialFieldElement K>
OpMatrix<K> adjoint_mat(const OpMatrix<K>& a) {
    OpMatrix<K> r(a.cols(), a.rows());
    for (int i = 0; i < a.cols(); ++i)
        for (int j = 0; j < a.rows(); ++j) r.at(i, j) = adjoint(a.at(j, i));
    return r;
}

/// Greatest common right divisor data for a pair of n x n matrices:
///   A = A1 * D,  B = B1 * D,  C * A + E * B = D,
/// with D upper triangular and (A1, B1) coprime.
template <DifferentialFieldElement K>
struct MatGcrd {
    OpMatrix<K> D, A1, B1, C, E;
};

/// Row-reduces the stacked matrix [A; B] to [D; 0] with a tracked unimodular
/// transform W; the blocks of W and W^-1 carry all the certificates.
template <DifferentialFieldElement K>
MatGcrd<K> mat_gcrd(const OpMatrix<K>& a, const OpMatrix<K>& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw OreError(errc::shape_mismatch, "matops", "mat_gcrd expects square matrices of equal size");
    if (dieudonne_det(b).is_zero())
        throw OreError(errc::degenerate_matrix, "matops", "mat_gcrd denominator argument is degenerate");
    const int n = a.rows();
    OpMatrix<K> stacked(2 * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            stacked.at(i, j) = a.at(i, j);
            stacked.at(n + i, j) = b.at(i, j);
        }
    auto w = UnimodularWitness<K>::identity(2 * n);
    int parity;
    detail::row_reduce_engine(stacked, &w, parity, /*fraction_free=*/true);
    MatGcrd<K> out;
    out.D = stacked.block(0, 0, n, n);
    out.A1 = w.U.block(0, 0, n, n);
    out.B1 = w.U.block(n, 0, n, n);
    out.C = w.Uinv.block(0, 0, n, n);
    out.E = w.Uinv.block(0, n, n, n);
    return out;
}

/// A = U1 * D * U2 with D diagonal; pivots are chosen of minimal order over
/// the whole active submatrix, searched by alternating row and column moves.
template <DifferentialFieldElement K>
std::tuple<UnimodularWitness<K>, OpMatrix<K>, UnimodularWitness<K>> diag_form(const OpMatrix<K>& a) {
    if (!a.is_square())
        throw OreError(errc::not_square, "matops", "diagonal form of a non-square matrix");
    if (dieudonne_det(a).is_zero())
        throw OreError(errc::degenerate_matrix, "matops", "diagonal form of a degenerate matrix");
    const int n = a.rows();
    OpMatrix<K> t = a;
    auto u1 = UnimodularWitness<K>::identity(n);
    auto u2 = UnimodularWitness<K>::identity(n);

    auto row_swap = [&](int i, int j) {
        if (i == j) return;
        t.swap_rows(i, j);
        u1.U.swap_cols(i, j);
        u1.Uinv.swap_rows(i, j);
    };
    auto row_addmul = [&](int i, int j, const OrePoly<K>& p) {
        t.row_addmul(i, j, p);
        u1.U.col_addmul(j, i, -p);
        u1.Uinv.row_addmul(i, j, p);
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        t.swap_cols(i, j);
        u2.U.swap_rows(i, j);
        u2.Uinv.swap_cols(i, j);
    };
    auto col_addmul = [&](int j, int i, const OrePoly<K>& p) {
        t.col_addmul(j, i, p);
        u2.U.row_addmul(i, j, -p);
        u2.Uinv.col_addmul(j, i, p);
    };

    for (int d = 0; d < n; ++d) {
        for (;;) {
            int bi = -1, bj = -1, bord = 0;
            std::size_t bsize = 0;
            for (int i = d; i < n; ++i)
                for (int j = d; j < n; ++j) {
                    const auto& p = t.at(i, j);
                    if (p.is_zero()) continue;
                    int o = p.order();
                    std::size_t s = p.complexity();
                    if (bi < 0 || o < bord || (o == bord && s < bsize)) {
                        bi = i;
                        bj = j;
                        bord = o;
                        bsize = s;
                    }
                }
            assert(bi >= 0);  // non-degenerate input keeps the block nonzero
            row_swap(d, bi);
            col_swap(d, bj);
            bool clear = true;
            for (int i = d + 1; i < n; ++i) {
                if (t.at(i, d).is_zero()) continue;
                auto q = right_divmod(t.at(i, d), t.at(d, d)).first;
                row_addmul(i, d, -q);
                if (!t.at(i, d).is_zero()) clear = false;
            }
            for (int j = d + 1; j < n; ++j) {
                if (t.at(d, j).is_zero()) continue;
                auto q = left_divmod(t.at(d, j), t.at(d, d)).first;
                col_addmul(j, d, -q);
                if (!t.at(d, j).is_zero()) clear = false;
            }
            if (clear) break;
        }
    }
    return {std::move(u1), std::move(t), std::move(u2)};
}

/// Solves B * X = A over the skewfield and clears denominators with a scalar
/// least common right multiple: B^-1 A = N * (c I)^-1.
template <DifferentialFieldElement K>
std::pair<OpMatrix<K>, OrePoly<K>> left_quotient_as_right_fraction(const OpMatrix<K>& b,
                                                                   const OpMatrix<K>& a) {
    if (!b.is_square() || b.rows() != a.rows())
        throw OreError(errc::shape_mismatch, "matops", "left quotient shapes disagree");
    const int n = b.rows(), m = a.cols();
    using SF = ScalarFraction<K>;
    std::vector<std::vector<SF>> bf(n, std::vector<SF>(n)), af(n, std::vector<SF>(m));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) bf[i][j] = SF(b.at(i, j));
        for (int j = 0; j < m; ++j) af[i][j] = SF(a.at(i, j));
    }
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!bf[i][k].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            throw OreError(errc::degenerate_matrix, "matops", "left quotient by a degenerate matrix");
        std::swap(bf[k], bf[pivot]);
        std::swap(af[k], af[pivot]);
        for (int i = k + 1; i < n; ++i) {
            if (bf[i][k].is_zero()) continue;
            SF f = bf[i][k] * bf[k][k].inverse();
            for (int j = k; j < n; ++j) bf[i][j] = bf[i][j] - f * bf[k][j];
            for (int j = 0; j < m; ++j) af[i][j] = af[i][j] - f * af[k][j];
        }
    }
    std::vector<std::vector<SF>> x(n, std::vector<SF>(m));
    for (int i = n - 1; i >= 0; --i) {
        SF inv = bf[i][i].inverse();
        for (int j = 0; j < m; ++j) {
            SF rhs = af[i][j];
            for (int k = i + 1; k < n; ++k) rhs = rhs - bf[i][k] * x[k][j];
            x[i][j] = inv * rhs;
        }
    }
    OrePoly<K> common = OrePoly<K>::one();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (!x[i][j].den().is_one()) common = lcrm(common, x[i][j].den());
    OpMatrix<K> num(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (x[i][j].is_zero()) continue;
            OrePoly<K> e = exact_left_div(common, x[i][j].den());
            num.at(i, j) = x[i][j].num() * e;
        }
    return {std::move(num), std::move(common)};
}

/// Common right multiple A*C = B*D with C, D non-degenerate.
template <DifferentialFieldElement K>
std::pair<OpMatrix<K>, OpMatrix<K>> common_right_multiple(const OpMatrix<K>& a, const OpMatrix<K>& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw OreError(errc::shape_mismatch, "matops", "common right multiple of mismatched shapes");
    if (dieudonne_det(a).is_zero() || dieudonne_det(b).is_zero())
        throw OreError(errc::degenerate_matrix, "matops", "common right multiple of a degenerate matrix");
    auto [num, common] = left_quotient_as_right_fraction(b, a);
    return {OpMatrix<K>::scalar(a.rows(), common), std::move(num)};
}

}  // namespace orefrac
