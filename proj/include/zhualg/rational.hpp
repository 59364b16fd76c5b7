#pragma once
#include <gmpxx.h>
#include <string>
#include <stdexcept>
#include <cstdint>

namespace zhualg {

using Rat = mpq_class;

// Generalized binomial binom(r, k) = r(r-1)...(r-k+1)/k! for rational r, k >= 0.
inline Rat binom(const Rat& r, long k) {
    if (k < 0) return Rat(0);
    Rat num(1), fact(1);
    for (long j = 0; j < k; ++j) {
        num *= r - j;
        fact *= (j + 1);
    }
    return num / fact;
}

inline Rat binom(long n, long k) { return binom(Rat(n), k); }

inline Rat factorial(long n) {
    Rat f(1);
    for (long j = 2; j <= n; ++j) f *= j;
    return f;
}

inline std::string rat_str(const Rat& r) {
    Rat c(r);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "n", "-n", "n/d".
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline long rat_to_long(const Rat& r) {
    if (r.get_den() != 1 || !r.get_num().fits_slong_p())
        throw std::invalid_argument("expected small integer, got " + rat_str(r));
    return r.get_num().get_si();
}

} // namespace zhualg
