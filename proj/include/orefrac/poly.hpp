#pragma once

#include <cassert>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "orefrac/error.hpp"
#include "orefrac/rational.hpp"

namespace orefrac {
namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

inline u64 powmod(u64 base, u64 exp, u64 p) {
    u64 acc = 1;
    while (exp) {
        if (exp & 1) acc = mulmod(acc, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return acc;
}

inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

/// Lazily grown pool of 62-bit primes for modular gcd.
inline u64 nth_prime(std::size_t i) {
    static std::vector<u64> primes;
    static Int cursor = Int(1) << 62;
    while (primes.size() <= i) {
        mpz_nextprime(cursor.get_mpz_t(), cursor.get_mpz_t());
        primes.push_back(cursor.get_ui());
    }
    return primes[i];
}

inline void modpoly_trim(std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

/// Monic gcd of two polynomials over Z/p.
inline std::vector<u64> modpoly_gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
    modpoly_trim(a);
    modpoly_trim(b);
    while (!b.empty()) {
        // a := a mod b
        u64 binv = invmod(b.back(), p);
        while (a.size() >= b.size()) {
            u64 c = mulmod(a.back(), binv, p);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                u64 sub = mulmod(c, b[i], p);
                u64& slot = a[shift + i];
                slot = slot >= sub ? slot - sub : slot + p - sub;
            }
            modpoly_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

}  // namespace detail

/// Dense univariate polynomial over Q. Coefficient of x^k sits at index k;
/// the zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit Poly(long c) : Poly(Rat(c)) {}
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(const Rat& coeff, int deg) {
        if (coeff == 0) return Poly{};
        std::vector<Rat> v(static_cast<std::size_t>(deg) + 1, Rat(0));
        v.back() = coeff;
        return Poly(std::move(v));
    }
    static Poly variable() { return monomial(Rat(1), 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Rat& coeff(int k) const {
        static const Rat kZero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<std::size_t>(k)];
    }
    const Rat& lc() const {
        assert(!c_.empty());
        return c_.back();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
        return Poly(std::move(v));
    }
    Poly operator-() const {
        Poly r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly{};
        if (std::min(a.c_.size(), b.c_.size()) >= 8 && a.is_integral() && b.is_integral())
            return mul_kronecker(a, b);
        std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }

    bool is_integral() const {
        for (const auto& c : c_)
            if (c.get_den() != 1) return false;
        return true;
    }
    friend Poly operator*(const Poly& a, const Rat& s) {
        if (s == 0) return Poly{};
        Poly r(a);
        for (auto& c : r.c_) c *= s;
        return r;
    }
    friend Poly operator*(const Rat& s, const Poly& a) { return a * s; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly{};
        std::vector<Rat> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return Poly(std::move(v));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw OreError(errc::division_by_zero, "field", "polynomial division by zero");
        Poly q, r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Rat c = r.lc() / b.lc();
            int k = r.degree() - b.degree();
            Poly t = monomial(c, k);
            q = q + t;
            r = r - t * b;
        }
        return {q, r};
    }

    static Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero())
            throw OreError(errc::non_exact_division, "field", "polynomial division left a remainder");
        return q;
    }

    Poly monic() const {
        assert(!is_zero());
        return *this * (Rat(1) / lc());
    }

    /// Monic gcd; gcd(0,0) = 0.
    static Poly gcd(const Poly& a, const Poly& b) {
        Poly g = gcd_primitive(a, b);
        return g.is_zero() ? g : g.monic();
    }

    /// The gcd as a primitive integer polynomial with positive leading
    /// coefficient. Computed modulo 62-bit primes with CRT reconstruction and
    /// certified by trial division; a single prime settles the coprime case.
    static Poly gcd_primitive(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b.is_zero() ? b : b.content_primitive().second;
        if (b.is_zero()) return a.content_primitive().second;
        std::vector<Int> x = a.to_int_primitive();
        std::vector<Int> y = b.to_int_primitive();
        if (x.size() == 1 || y.size() == 1) return Poly(Rat(1));
        Int glc = ::gcd(x.back(), y.back());

        std::vector<Int> acc;
        Int modulus(1);
        int best_deg = -1;
        for (std::size_t pi = 0;; ++pi) {
            detail::u64 p = detail::nth_prime(pi);
            if (mpz_fdiv_ui(x.back().get_mpz_t(), p) == 0) continue;
            if (mpz_fdiv_ui(y.back().get_mpz_t(), p) == 0) continue;
            auto gp = detail::modpoly_gcd(to_mod(x, p), to_mod(y, p), p);
            int deg = static_cast<int>(gp.size()) - 1;
            if (deg == 0) return Poly(Rat(1));
            if (best_deg >= 0 && deg > best_deg) continue;  // unlucky prime
            if (best_deg < 0 || deg < best_deg) {
                best_deg = deg;
                acc.assign(gp.size(), Int(0));
                modulus = 1;
            }
            // Normalize the image to leading coefficient glc before lifting.
            detail::u64 scale = mpz_fdiv_ui(glc.get_mpz_t(), p);
            for (auto& c : gp) c = detail::mulmod(c, scale, p);
            crt_combine(acc, modulus, gp, p);
            std::vector<Int> cand = acc;
            int_primitive(cand);
            if (int_divides(x, cand) && int_divides(y, cand)) return from_int(cand);
        }
    }

    /// Fast exact division for integer-coefficient a by a primitive integer
    /// divisor (quotient is integral by the Gauss lemma when it exists).
    static Poly exact_div_primitive(const Poly& a, const Poly& b) {
        std::vector<Int> x = to_int_checked(a);
        std::vector<Int> y = to_int_checked(b);
        std::vector<Int> q;
        if (!int_divmod_exact(x, y, q))
            throw OreError(errc::non_exact_division, "field", "integer polynomial division left a remainder");
        return from_int(q);
    }

    /// Integer trial division: q := a/b and true when b divides a with an
    /// integral quotient; false (q unspecified) otherwise.
    static bool divide_if_exact(const Poly& a, const Poly& b, Poly& q) {
        if (b.is_zero()) return false;
        if (a.is_zero()) {
            q = Poly{};
            return true;
        }
        std::vector<Int> x = to_int_checked(a);
        std::vector<Int> y = to_int_checked(b);
        std::vector<Int> qi;
        if (!int_divmod_exact(x, y, qi)) return false;
        q = from_int(qi);
        return true;
    }

    static Poly lcm(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly{};
        return exact_div(a * b, gcd(a, b)).monic();
    }

    /// Extended gcd: returns (g, s, t) with g monic and s*a + t*b = g.
    static std::tuple<Poly, Poly, Poly> extended_gcd(const Poly& a, const Poly& b) {
        Poly r0 = a, r1 = b;
        Poly s0(Rat(1)), s1, t0, t1(Rat(1));
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            Poly s2 = s0 - q * s1;
            Poly t2 = t0 - q * t1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
            t0 = t1; t1 = t2;
        }
        if (r0.is_zero()) return {r0, Poly{}, Poly{}};
        Rat inv = Rat(1) / r0.lc();
        return {r0 * inv, s0 * inv, t0 * inv};
    }

    /// Solves a*s + b*t = c with deg s < deg b, assuming gcd(a,b) divides c.
    static std::pair<Poly, Poly> diophantine(const Poly& a, const Poly& b, const Poly& c) {
        auto [g, u, v] = extended_gcd(a, b);
        Poly scaled = exact_div(c, g);
        Poly s = divmod(u * scaled, b).second;
        Poly t = exact_div(c - a * s, b);
        (void)v;
        return {s, t};
    }

    /// Splits into rational content and integer primitive part with positive
    /// leading coefficient: *this = content * primitive.
    std::pair<Rat, Poly> content_primitive() const {
        if (is_zero()) return {Rat(0), Poly{}};
        Int den_lcm(1);
        bool dens_trivial = true;
        for (const auto& c : c_) {
            Int d = c.get_den();
            if (d != 1) {
                dens_trivial = false;
                den_lcm = den_lcm / ::gcd(den_lcm, d) * d;
            }
        }
        Int num_gcd(0);
        if (dens_trivial) {
            for (const auto& c : c_) {
                num_gcd = ::gcd(num_gcd, c.get_num());
                if (num_gcd == 1) break;
            }
            if (num_gcd == 1) {
                if (sgn(lc()) > 0) return {Rat(1), *this};
                return {Rat(-1), -*this};
            }
        } else {
            for (const auto& c : c_) {
                Int scaled_num = c.get_num() * (den_lcm / c.get_den());
                num_gcd = ::gcd(num_gcd, scaled_num);
            }
        }
        if (sgn(lc()) < 0) num_gcd = -num_gcd;
        Rat content = make_rat(num_gcd, den_lcm);
        Poly prim = *this * (Rat(1) / content);
        return {content, prim};
    }

    bool is_unit_one() const { return c_.size() == 1 && c_[0] == 1; }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rat& c = coeff(k);
            if (c == 0) continue;
            bool neg = c < 0;
            Rat mag = neg ? Rat(-c) : c;
            std::string body;
            if (k == 0) {
                body = rat_to_string(mag);
            } else {
                if (mag != 1) body = rat_to_string(mag) + "*";
                body += var;
                if (k > 1) body += "^" + std::to_string(k);
            }
            if (out.empty())
                out = (neg ? "-" : "") + body;
            else
                out += (neg ? "-" : "+") + body;
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    /// Integer form with content and denominators stripped, positive leading.
    std::vector<Int> to_int_primitive() const {
        Int den_lcm(1);
        for (const auto& c : c_) {
            Int d = c.get_den();
            den_lcm = den_lcm / ::gcd(den_lcm, d) * d;
        }
        std::vector<Int> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            v[i] = c_[i].get_num() * (den_lcm / c_[i].get_den());
        int_primitive(v);
        return v;
    }

    static Poly from_int(const std::vector<Int>& v) {
        std::vector<Rat> c(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) c[i] = Rat(v[i]);
        return Poly(std::move(c));
    }

    static void int_trim(std::vector<Int>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    static void int_primitive(std::vector<Int>& v) {
        int_trim(v);
        if (v.empty()) return;
        Int g(0);
        for (const auto& c : v) g = ::gcd(g, c);
        if (sgn(v.back()) < 0) g = -g;
        if (g != 1)
            for (auto& c : v) c /= g;
    }

    static std::vector<Int> to_int_checked(const Poly& p) {
        std::vector<Int> v(p.c_.size());
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i].get_den() != 1)
                throw OreError(errc::non_exact_division, "field",
                               "integer polynomial routine fed a non-integer coefficient");
            v[i] = p.c_[i].get_num();
        }
        return v;
    }

    static std::vector<detail::u64> to_mod(const std::vector<Int>& v, detail::u64 p) {
        std::vector<detail::u64> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = mpz_fdiv_ui(v[i].get_mpz_t(), p);
        return r;
    }

    /// CRT step: acc (mod modulus) and image (mod p) to acc (mod modulus*p),
    /// coefficients kept in the symmetric range.
    static void crt_combine(std::vector<Int>& acc, Int& modulus, const std::vector<detail::u64>& img,
                            detail::u64 p) {
        Int P(static_cast<unsigned long>(p));
        Int minv;
        mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), P.get_mpz_t());
        Int next = modulus * P;
        Int half = next / 2;
        for (std::size_t i = 0; i < acc.size(); ++i) {
            Int target(static_cast<unsigned long>(i < img.size() ? img[i] : 0));
            Int diff = ((target - acc[i]) * minv) % P;
            if (sgn(diff) < 0) diff += P;
            acc[i] += modulus * diff;
            if (acc[i] > half) acc[i] -= next;
        }
        modulus = next;
    }

    /// Exact division over Z; returns false (leaving q unspecified) when b
    /// does not divide a. Divisor must be nonzero.
    static bool int_divmod_exact(std::vector<Int> a, const std::vector<Int>& b, std::vector<Int>& q) {
        int_trim(a);
        if (a.empty()) {
            q.clear();
            return true;
        }
        if (a.size() < b.size()) return false;
        q.assign(a.size() - b.size() + 1, Int(0));
        const Int& blc = b.back();
        while (!a.empty() && a.size() >= b.size()) {
            Int c, rem;
            mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), a.back().get_mpz_t(), blc.get_mpz_t());
            if (rem != 0) return false;
            std::size_t shift = a.size() - b.size();
            q[shift] = c;
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
            int_trim(a);
        }
        return a.empty();
    }

    static bool int_divides(const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> q;
        return int_divmod_exact(a, b, q);
    }

    /// Integer polynomial product through Kronecker substitution: pack signed
    /// coefficients as positive/negative parts, one big-integer multiply per
    /// quadrant pair, unpack fixed-width digits.
    static Poly mul_kronecker(const Poly& a, const Poly& b) {
        const std::size_t na = a.c_.size(), nb = b.c_.size();
        std::size_t abits = 1, bbits = 1;
        for (const auto& c : a.c_)
            abits = std::max(abits, mpz_sizeinbase(c.get_num().get_mpz_t(), 2));
        for (const auto& c : b.c_)
            bbits = std::max(bbits, mpz_sizeinbase(c.get_num().get_mpz_t(), 2));
        std::size_t nmin = std::min(na, nb), log2n = 1;
        while ((std::size_t{1} << log2n) < nmin) ++log2n;
        const std::size_t slot_bytes = (abits + bbits + log2n + 3 + 7) / 8;

        auto pack = [&](const std::vector<Rat>& src, bool positive) {
            std::vector<unsigned char> buf(src.size() * slot_bytes, 0);
            for (std::size_t i = 0; i < src.size(); ++i) {
                const auto& num = src[i].get_num();
                if ((sgn(num) > 0) != positive || sgn(num) == 0) continue;
                mpz_export(buf.data() + i * slot_bytes, nullptr, -1, 1, 0, 0, num.get_mpz_t());
            }
            Int packed;
            mpz_import(packed.get_mpz_t(), buf.size(), -1, 1, 0, 0, buf.data());
            return packed;
        };
        Int ap = pack(a.c_, true), an = pack(a.c_, false);
        Int bp = pack(b.c_, true), bn = pack(b.c_, false);
        Int u = ap * bp + an * bn;  // positive contributions
        Int v = ap * bn + an * bp;  // negative contributions

        const std::size_t nout = na + nb - 1;
        auto unpack = [&](const Int& big) {
            std::vector<unsigned char> buf(nout * slot_bytes + slot_bytes, 0);
            std::size_t count = 0;
            mpz_export(buf.data(), &count, -1, 1, 0, 0, big.get_mpz_t());
            std::vector<Int> digits(nout);
            for (std::size_t i = 0; i < nout; ++i)
                mpz_import(digits[i].get_mpz_t(), slot_bytes, -1, 1, 0, 0, buf.data() + i * slot_bytes);
            return digits;
        };
        std::vector<Int> pos = unpack(u), neg = unpack(v);
        std::vector<Rat> out(nout);
        for (std::size_t i = 0; i < nout; ++i) out[i] = Rat(pos[i] - neg[i]);
        return Poly(std::move(out));
    }

    std::vector<Rat> c_;
};

}  // namespace orefrac
