#pragma once

#include <gmpxx.h>

#include <string>

namespace orefrac {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

}  // namespace orefrac
