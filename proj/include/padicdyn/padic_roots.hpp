#pragma once

#include <climits>
#include <vector>

#include "padicdyn/poly.hpp"

namespace padicdyn {

/**
 * A certified approximation to a root in Q_p: |root - approx|_p <= p^{-acc}.
 * `exact` is set when approx is the root on the nose (f(approx) == 0 in Q).
 */
struct PadicRoot {
    Rat approx;
    bool exact = false;
    long long acc = 0;
};

namespace detail {

inline Int pow_int(long long p, long long e) {
    Int r = 1;
    for (long long i = 0; i < e; ++i) r *= p;
    return r;
}

inline Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int eval_mod(const std::vector<Int>& c, const Int& x, const Int& m) {
    Int acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mod_pos(acc * x + *it, m);
    return acc;
}

inline Int inv_mod_ppow(const Int& a, long long p, long long N) {
    // unit mod p^N: invert via Euler's theorem
    Int m = pow_int(p, N);
    Int phi = pow_int(p, N - 1) * (p - 1);
    return boost::multiprecision::powm(mod_pos(a, m), phi - 1, m);
}

// Newton iteration mod p^M from a simple residue root r0.
inline Int hensel_lift(const QPoly& h, long long r0, long long p, long long M) {
    auto prim = to_primitive(h).first;
    std::vector<Int> c(prim.begin(), prim.end());
    std::vector<Int> dc;
    for (size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * static_cast<long long>(k));
    Int m = pow_int(p, M);
    Int x = mod_pos(Int(r0), m);
    for (int it = 0; it < 4 * static_cast<int>(sizeof(long long) * 8) && it < 400; ++it) {
        Int fx = eval_mod(c, x, m);
        if (fx == 0) return x;
        Int dfx = eval_mod(dc, x, m);
        Int corr = mod_pos(fx * inv_mod_ppow(dfx, p, M), m);
        x = mod_pos(x - corr, m);
    }
    Int fx = eval_mod(c, x, m);
    if (fx != 0)
        throw PrecisionCapExceeded("Hensel iteration did not stabilize");
    return x;
}

inline Rat balanced_lift(const Int& x, const Int& m) {
    Int b = x;
    if (2 * b > m) b -= m;
    return Rat(b);
}

struct RootAcc {
    std::vector<PadicRoot> roots;
    int missing = 0;  // root mass certified to lie outside Q_p (or unresolved)
};

// Roots of valuation exactly `sval` are handled through h(u) = f(p^s u);
// multiple residue roots recurse one level deeper in the tree of discs.
inline void roots_rec(const QPoly& f, long long p, long long target_acc, int depth,
                      bool positive_only, RootAcc& out) {
    if (depth > 96) throw PrecisionCapExceeded("root isolation recursion too deep");
    QPoly g = f;
    if (g.trailing_zeros() > 0) {
        // exact zero root (valuation +infinity, so always in range)
        out.roots.push_back({Rat(0), true, LLONG_MAX});
        std::vector<Rat> shifted(g.coeffs().begin() + g.trailing_zeros(), g.coeffs().end());
        g = QPoly(std::move(shifted));
    }
    for (const auto& seg : newton_segments(g, p)) {
        if (positive_only && !(seg.rootval > 0)) continue;
        if (rat_den(seg.rootval) != 1) {
            out.missing += seg.count;
            continue;
        }
        long long s = rat_num(seg.rootval).convert_to<long long>();
        // substitute u -> p^s u and clear content so reduction mod p is usable
        std::vector<Rat> hc(g.coeffs());
        for (size_t k = 0; k < hc.size(); ++k)
            if (hc[k] != 0) hc[k] *= rat_p_pow(p, s * static_cast<long long>(k));
        QPoly h(std::move(hc));
        auto prim = to_primitive(h).first;
        h = from_int_coeffs(prim);
        // residue polynomial over F_p
        std::vector<long long> hbar;
        for (const auto& z : prim) hbar.push_back(mod_int(z, p));
        auto eval_bar = [&](long long r) {
            long long acc = 0;
            for (auto it = hbar.rbegin(); it != hbar.rend(); ++it)
                acc = mod_ll(acc * r + *it, p);
            return acc;
        };
        std::vector<long long> dbar;
        for (size_t k = 1; k < hbar.size(); ++k)
            dbar.push_back(mod_ll(hbar[k] * static_cast<long long>(k % p), p));
        auto eval_dbar = [&](long long r) {
            long long acc = 0;
            for (auto it = dbar.rbegin(); it != dbar.rend(); ++it)
                acc = mod_ll(acc * r + *it, p);
            return acc;
        };
        int found_here = 0;
        for (long long r = 1; r < p; ++r) {
            if (eval_bar(r) != 0) continue;
            if (eval_dbar(r) != 0) {
                long long M = std::max<long long>(24, target_acc - s);
                Int u = hensel_lift(h, r, p, M);
                Rat root = rat_p_pow(p, s) * balanced_lift(u, pow_int(p, M));
                bool exact = (f.eval(root) == 0);
                out.roots.push_back({root, exact, exact ? LLONG_MAX : M + s});
                ++found_here;
            } else {
                RootAcc sub;
                roots_rec(h.shift(Rat(r)), p, std::max<long long>(24, target_acc - s),
                          depth + 1, true, sub);
                for (auto& rt : sub.roots) {
                    Rat root = rat_p_pow(p, s) * (Rat(r) + rt.approx);
                    bool exact = (f.eval(root) == 0);
                    long long acc = rt.acc == LLONG_MAX ? LLONG_MAX : rt.acc + s;
                    out.roots.push_back({root, exact, exact ? LLONG_MAX : acc});
                    ++found_here;
                }
                out.missing += sub.missing;
            }
        }
        if (found_here < seg.count) out.missing += seg.count - found_here;
    }
}

} // namespace detail

/**
 * All roots of a squarefree rational polynomial inside Q_p, as certified
 * approximations accurate to at least p^{-precision}.  Throws NotSplitOverQp
 * when some root lies in a proper extension (non-integral Newton slope, or a
 * residue factor without a simple F_p-root).
 */
inline std::vector<PadicRoot> padic_roots(const QPoly& f, long long p, long long precision) {
    if (f.is_zero()) throw ZeroPolynomial("padic_roots of the zero polynomial");
    if (f.degree() == 0) return {};
    detail::RootAcc acc;
    detail::roots_rec(f, p, precision, 0, false, acc);
    if (acc.missing > 0 || static_cast<int>(acc.roots.size()) < f.degree())
        throw NotSplitOverQp("polynomial has " + std::to_string(f.degree()) +
                             " roots, only " + std::to_string(acc.roots.size()) +
                             " are Q_p-rational at p=" + std::to_string(p));
    return acc.roots;
}

} // namespace padicdyn
