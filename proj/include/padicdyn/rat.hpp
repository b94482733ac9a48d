#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "padicdyn/errors.hpp"

namespace padicdyn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline double rat_double(const Rat& q) { return q.convert_to<double>(); }

/**
 * Extended valuation value: an integer or +infinity (valuation of 0).
 */
struct Val {
    bool infinite = false;
    long long v = 0;

    static Val inf() { return Val{true, 0}; }
    static Val of(long long x) { return Val{false, x}; }

    bool operator==(const Val& o) const {
        return infinite == o.infinite && (infinite || v == o.v);
    }
    bool operator!=(const Val& o) const { return !(*this == o); }
    bool operator<(const Val& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return v < o.v;
    }
    bool operator<=(const Val& o) const { return *this == o || *this < o; }
    bool operator>=(const Val& o) const { return !(*this < o); }
    bool operator>(const Val& o) const { return o < *this; }

    Val operator+(const Val& o) const {
        if (infinite || o.infinite) return inf();
        return of(v + o.v);
    }
};

inline Val val_min(const Val& a, const Val& b) { return a < b ? a : b; }

// v_p of a nonzero integer.
inline long long vp_int(Int n, long long p) {
    if (n == 0) throw ZeroPolynomial("vp of zero integer");
    long long k = 0;
    Int q, r;
    for (;;) {
        boost::multiprecision::divide_qr(n, Int(p), q, r);
        if (r != 0) break;
        n = q;
        ++k;
    }
    return k;
}

// p-adic valuation of a rational; vp(0) = +infinity.
inline Val vp(const Rat& x, long long p) {
    if (x == 0) return Val::inf();
    return Val::of(vp_int(rat_num(x), p) - vp_int(rat_den(x), p));
}

// p^e as an exact rational, e any integer.
inline Rat rat_p_pow(long long p, long long e) {
    Int n = 1;
    for (long long i = 0; i < (e >= 0 ? e : -e); ++i) n *= p;
    return e >= 0 ? Rat(n) : Rat(Int(1), n);
}

// |x|_p = p^{-vp(x)} as an exact rational.
inline Rat abs_p(const Rat& x, long long p) {
    if (x == 0) return Rat(0);
    return rat_p_pow(p, -vp(x, p).v);
}

inline long long mod_ll(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

// Modular inverse mod a prime, by extended Euclid.
inline long long inv_mod(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = mod_ll(a, p);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw Error("NotInvertible", "element not invertible mod p");
    return mod_ll(t, p);
}

/**
 * Residue field element of F_p = O/m for the p-adic valuation on Q.
 */
struct Fp {
    long long r = 0;
    long long p = 2;

    Fp() = default;
    Fp(long long value, long long prime) : r(mod_ll(value, prime)), p(prime) {}

    bool operator==(const Fp& o) const { return r == o.r && p == o.p; }
    bool operator!=(const Fp& o) const { return !(*this == o); }
    Fp operator+(const Fp& o) const { return Fp(r + o.r, p); }
    Fp operator-(const Fp& o) const { return Fp(r - o.r, p); }
    Fp operator*(const Fp& o) const { return Fp(mod_ll(r * o.r, p), p); }
    Fp inv() const { return Fp(inv_mod(r, p), p); }
};

inline long long mod_int(const Int& n, long long p) {
    Int r = n % p;
    long long v = r.convert_to<long long>();
    return mod_ll(v, p);
}

// Reduction map O -> F_p on rationals of nonnegative valuation.
inline Fp reduce(const Rat& x, long long p) {
    if (vp(x, p) < Val::of(0))
        throw NegativeValuation("reduce requires vp(x) >= 0, got " + rat_str(x));
    long long n = mod_int(rat_num(x), p);
    long long d = mod_int(rat_den(x), p);
    return Fp(n, p) * Fp(d, p).inv();
}

/**
 * A point of P^1(Q): a rational number or the point at infinity.
 */
struct P1Q {
    bool is_inf = false;
    Rat v;

    P1Q() : is_inf(false), v(0) {}
    explicit P1Q(Rat value) : is_inf(false), v(std::move(value)) {}
    static P1Q infinity() {
        P1Q x;
        x.is_inf = true;
        return x;
    }

    bool operator==(const P1Q& o) const {
        if (is_inf != o.is_inf) return false;
        return is_inf || v == o.v;
    }
    bool operator!=(const P1Q& o) const { return !(*this == o); }
};

inline std::string p1_str(const P1Q& x) { return x.is_inf ? "inf" : rat_str(x.v); }

// -log_p of the chordal distance, +infinity when x == y.
inline Val chordal_val(const P1Q& x, const P1Q& y, long long p) {
    if (x == y) return Val::inf();
    if (x.is_inf || y.is_inf) {
        const Rat& a = x.is_inf ? y.v : x.v;
        // ||a, inf|| = 1 / max(1, |a|)
        Val va = vp(a, p);
        if (va.infinite || va.v >= 0) return Val::of(0);
        return Val::of(-va.v);
    }
    Val diff = vp(x.v - y.v, p);
    Val vx = vp(x.v, p), vy = vp(y.v, p);
    long long corr = 0;
    if (!vx.infinite && vx.v < 0) corr += vx.v;
    if (!vy.infinite && vy.v < 0) corr += vy.v;
    return Val::of(diff.v - corr);
}

// Chordal metric on P^1(Q), normalized so the maximum distance is 1.
inline Rat chordal(const P1Q& x, const P1Q& y, long long p) {
    Val c = chordal_val(x, y, p);
    if (c.infinite) return Rat(0);
    return rat_p_pow(p, -c.v);
}

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw ParseError("bad rational literal '" + s + "'");
    }
}

inline bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

} // namespace padicdyn
