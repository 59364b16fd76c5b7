#pragma once
#include "zhualg/rational.hpp"
#include <string>

namespace zhualg {

// Elements of Q(zeta_T) for T in {1,2,3}, stored as a + b*zeta with zeta a
// fixed primitive T-th root of unity.  For T <= 2 zeta is rational (1 or -1)
// and b stays 0.  For T = 3 the reduction rule is zeta^2 = -1 - zeta.
struct Cyc {
    int T = 1;
    Rat a, b;

    Cyc() = default;
    explicit Cyc(int T_, const Rat& a_ = Rat(0), const Rat& b_ = Rat(0)) : T(T_), a(a_), b(b_) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    // Elements of smaller order embed in Q(zeta_3), so mixed operands promote
    // to the larger T; otherwise a rational scalar times a T=3 element would
    // skip the zeta^2 reduction.
    static int join(int s, int t) { return s > t ? s : t; }

    friend Cyc operator+(const Cyc& x, const Cyc& y) { return Cyc(join(x.T, y.T), x.a + y.a, x.b + y.b); }
    friend Cyc operator-(const Cyc& x, const Cyc& y) { return Cyc(join(x.T, y.T), x.a - y.a, x.b - y.b); }
    friend Cyc operator-(const Cyc& x) { return Cyc(x.T, -x.a, -x.b); }
    friend Cyc operator*(const Cyc& x, const Cyc& y) {
        int t = join(x.T, y.T);
        if (t != 3) return Cyc(t, x.a * y.a, Rat(0));
        return Cyc(3, x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b);
    }
    Cyc inverse() const {
        if (T != 3) {
            if (a == 0) throw std::invalid_argument("division by zero");
            return Cyc(T, 1 / a);
        }
        Rat n = a * a - a * b + b * b; // norm to Q
        if (n == 0) throw std::invalid_argument("division by zero");
        // conjugate is (a - b) - b*zeta
        return Cyc(3, (a - b) / n, -b / n);
    }
    friend Cyc operator/(const Cyc& x, const Cyc& y) { return x * y.inverse(); }
    friend bool operator==(const Cyc& x, const Cyc& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Cyc& x, const Cyc& y) { return !(x == y); }

    std::string str() const {
        if (b == 0) return rat_str(a);
        std::string s = rat_str(a);
        s += (b > 0 ? "+" : "-");
        Rat ab = abs(b);
        if (ab != 1) s += rat_str(ab) + "*";
        s += "w";
        return s;
    }
};

// zeta_T^j as a Cyc (j taken mod T).
inline Cyc root_of_unity(int T, long j) {
    j = ((j % T) + T) % T;
    if (T == 1) return Cyc(1, Rat(1));
    if (T == 2) return Cyc(2, j == 0 ? Rat(1) : Rat(-1));
    if (T == 3) {
        if (j == 0) return Cyc(3, Rat(1));
        if (j == 1) return Cyc(3, Rat(0), Rat(1));
        return Cyc(3, Rat(-1), Rat(-1)); // zeta^2
    }
    throw std::invalid_argument("only automorphism orders 1,2,3 supported");
}

inline bool field_is_zero(const Rat& x) { return x == 0; }
inline bool field_is_zero(const Cyc& x) { return x.is_zero(); }

// Multiplicative identity for generic linear algebra.  Cyc(1) is the *zero*
// of Q(zeta_1) -- the int argument is the order, not a value -- so the
// generic F(1) spelling must not be used with Cyc.
template <class F> inline F field_one() { return F(1); }
template <> inline Cyc field_one<Cyc>() { return Cyc(1, Rat(1)); }

} // namespace zhualg
