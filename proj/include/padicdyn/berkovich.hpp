#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "padicdyn/ratmap.hpp"

namespace padicdyn {

namespace detail {

// p-adic truncation of a below level m: the balanced representative of the
// digits at levels < m.  Result r satisfies vp(a - r) >= m.
inline Rat canonical_center(const Rat& a, long long m, long long p) {
    if (a == 0) return Rat(0);
    Val v = vp(a, p);
    if (v.v >= m) return Rat(0);
    Rat unit = a / rat_p_pow(p, v.v);
    long long digits = m - v.v;
    Int mod = 1;
    for (long long i = 0; i < digits; ++i) mod *= p;
    Int n = rat_num(unit) % mod;
    if (n < 0) n += mod;
    Int den_inv;
    {
        // invert denominator mod p^digits (coprime to p by construction)
        Int phi = (mod / p) * (p - 1);
        den_inv = boost::multiprecision::powm(rat_den(unit) % mod, phi - 1, mod);
    }
    Int r = (n * den_inv) % mod;
    if (r < 0) r += mod;
    if (2 * r > mod) r -= mod;
    return Rat(r) * rat_p_pow(p, v.v);
}

inline long long rat_ceil(const Rat& t) {
    Int n = rat_num(t), d = rat_den(t);
    Int q = n / d;
    if (n > q * d) q += 1;
    return q.convert_to<long long>();
}

} // namespace detail

/**
 * A point of the Berkovich line over Q viewed inside an algebraically closed
 * completion: a type I point of P^1(Q), or the disc point zeta_{a, p^{-t}}
 * with rational center and rational log-radius t.
 */
struct BerkPoint {
    long long p = 2;
    bool type1 = false;
    P1Q x;       // type I value
    Rat center;  // disc data
    Rat t;       // log-radius: radius = p^{-t}

    BerkPoint() = default;

    static BerkPoint type_i(P1Q value, long long prime) {
        BerkPoint b;
        b.p = prime;
        b.type1 = true;
        b.x = std::move(value);
        return b;
    }
    static BerkPoint disk(Rat a, Rat logradius, long long prime) {
        BerkPoint b;
        b.p = prime;
        b.type1 = false;
        b.t = std::move(logradius);
        b.center = detail::canonical_center(a, detail::rat_ceil(b.t), prime);
        return b;
    }
    static BerkPoint gauss(long long prime) { return disk(Rat(0), Rat(0), prime); }

    bool hyperbolic() const { return !type1; }

    bool operator==(const BerkPoint& o) const {
        if (p != o.p || type1 != o.type1) return false;
        if (type1) return x == o.x;
        return t == o.t && center == o.center;
    }
    bool operator!=(const BerkPoint& o) const { return !(*this == o); }

    // arbitrary strict order usable for map keys and deterministic output
    bool operator<(const BerkPoint& o) const {
        if (type1 != o.type1) return type1 < o.type1;
        if (type1) {
            if (x.is_inf != o.x.is_inf) return x.is_inf < o.x.is_inf;
            if (x.is_inf) return false;
            return x.v < o.x.v;
        }
        if (t != o.t) return t < o.t;
        return center < o.center;
    }
};

inline std::string berk_str(const BerkPoint& b) {
    if (b.type1) return "P1(" + p1_str(b.x) + ")";
    return "zeta(" + rat_str(b.center) + ", p^-" + rat_str(b.t) + ")";
}

// -log_p diam_G: t inside the unit disc, with the inversion rule outside.
inline Rat ldiam(const BerkPoint& b) {
    if (b.type1)
        throw TypeIPoint("type I points have diameter 0; ldiam undefined");
    Val va = vp(b.center, b.p);
    if (!va.infinite && Rat(va.v) < b.t) {
        // center valuation below t: the disc misses 0
        if (va.v < 0) return b.t - 2 * Rat(va.v);  // outside the unit ball
        return b.t;                                // inside the unit ball
    }
    // 0 lies in the disc: the point is zeta_{0, p^{-t}}
    if (b.t >= 0) return b.t;
    return -b.t;
}

// diam_G as an exact rational; requires the log-radius to be integral.
inline Rat diam_G(const BerkPoint& b) {
    if (b.type1) return Rat(0);
    Rat l = ldiam(b);
    if (rat_den(l) != 1)
        throw NonIntegralRadius("diameter p^-(" + rat_str(l) + ") is irrational");
    return rat_p_pow(b.p, -rat_num(l).convert_to<long long>());
}

namespace detail {

// (center, t) view with t = +infinity for finite type I points
struct CT {
    bool inf_pt;  // the type I point at infinity
    Rat a;
    bool t_inf;
    Rat t;
};

inline CT ct_of(const BerkPoint& b) {
    if (b.type1) {
        if (b.x.is_inf) return {true, Rat(0), false, Rat(0)};
        return {false, b.x.v, true, Rat(0)};
    }
    return {false, b.center, false, b.t};
}

inline Rat vp_rat_or_big(const Rat& x, long long p, const Rat& big) {
    Val v = vp(x, p);
    return v.infinite ? big : Rat(v.v);
}

} // namespace detail

namespace detail {

// Least common ancestor for the tree rooted at the type I point infinity:
// the smallest disc containing both arguments, or infinity itself when one
// argument is infinity.
inline BerkPoint lca_inf(const BerkPoint& x, const BerkPoint& y) {
    const long long p = x.p;
    auto cx = ct_of(x), cy = ct_of(y);
    if (cx.inf_pt || cy.inf_pt) return BerkPoint::type_i(P1Q::infinity(), p);
    if (cx.a == cy.a) {
        if (cx.t_inf) return y;
        if (cy.t_inf) return x;
        return BerkPoint::disk(cx.a, std::min(cx.t, cy.t), p);
    }
    Rat m = Rat(vp(cx.a - cy.a, p).v);
    if (!cx.t_inf) m = std::min(m, cx.t);
    if (!cy.t_inf) m = std::min(m, cy.t);
    return BerkPoint::disk(cx.a, m, p);
}

// depth in the infinity-rooted order: infinity shallowest, type I deepest
inline int depth_rank(const BerkPoint& b) {
    if (b.type1) return b.x.is_inf ? 0 : 2;
    return 1;
}

inline bool deeper(const BerkPoint& a, const BerkPoint& b) {
    int ra = depth_rank(a), rb = depth_rank(b);
    if (ra != rb) return ra > rb;
    if (ra == 1) return a.t > b.t;
    return false;
}

} // namespace detail

// median of three points in the tree: the deepest pairwise LCA
inline BerkPoint med(const BerkPoint& a, const BerkPoint& b, const BerkPoint& c) {
    BerkPoint m1 = detail::lca_inf(a, b), m2 = detail::lca_inf(a, c),
              m3 = detail::lca_inf(b, c);
    if (m1 == m2) return m3;
    if (m1 == m3) return m2;
    if (m2 == m3) return m1;
    // degenerate agreement of depths cannot occur in a tree; deepest wins
    BerkPoint best = m1;
    if (detail::deeper(m2, best)) best = m2;
    if (detail::deeper(m3, best)) best = m3;
    return best;
}

// x wedge_{zeta_G} y: the unique point on all three paths joining x, y and
// the Gauss point.
inline BerkPoint join(const BerkPoint& x, const BerkPoint& y) {
    return med(x, y, BerkPoint::gauss(x.p));
}

// is q on the closed segment [a, b]?
inline bool on_segment(const BerkPoint& q, const BerkPoint& a, const BerkPoint& b) {
    return med(a, b, q) == q;
}

// big metric on hyperbolic space
inline Rat rho(const BerkPoint& x, const BerkPoint& y) {
    if (x.type1 || y.type1) throw TypeIPoint("rho needs hyperbolic points");
    if (x == y) return Rat(0);
    BerkPoint j = join(x, y);
    return Rat(-2) * ldiam(j) + ldiam(x) + ldiam(y);
}

// small metric d(x,y) = 2 diam(join) - diam(x) - diam(y)
inline Rat small_d(const BerkPoint& x, const BerkPoint& y) {
    BerkPoint j = join(x, y);
    Rat dj = diam_G(j);
    Rat dx = x.type1 ? Rat(0) : diam_G(x);
    Rat dy = y.type1 ? Rat(0) : diam_G(y);
    return 2 * dj - dx - dy;
}

/**
 * An extended value: a rational or -infinity (used for log Hsia kernels).
 */
struct LogVal {
    bool neg_inf = false;
    Rat v;

    static LogVal minus_inf() { return {true, Rat(0)}; }
    static LogVal of(Rat x) { return {false, std::move(x)}; }
    bool operator==(const LogVal& o) const {
        return neg_inf == o.neg_inf && (neg_inf || v == o.v);
    }
};

// log_v of the Hsia kernel relative to the Gauss point:
// log delta(x,y)_G = -rho(x ^ y, zeta_G); for distinct type I points in the
// unit disc this is log_v |x-y|.
inline LogVal hsia_log(const BerkPoint& x, const BerkPoint& y) {
    if (x == y && x.type1) return LogVal::minus_inf();
    BerkPoint j = join(x, y);
    BerkPoint g = BerkPoint::gauss(x.p);
    if (j == g) return LogVal::of(Rat(0));
    return LogVal::of(-rho(j, g));
}

// generalized Hsia kernel via the base-change cocycle:
// log delta(x,y)_{z0} = log delta(x,y)_G - log delta(x,z0)_G - log delta(y,z0)_G
inline LogVal hsia_log_base(const BerkPoint& x, const BerkPoint& y, const BerkPoint& z0) {
    if (z0.type1) throw TypeIPoint("hsia base point must be hyperbolic");
    LogVal main = hsia_log(x, y);
    if (main.neg_inf) return main;
    LogVal hx = hsia_log(x, z0), hy = hsia_log(y, z0);
    return LogVal::of(main.v - hx.v - hy.v);
}

// inversion z -> 1/z on points
inline BerkPoint invert_point(const BerkPoint& b) {
    const long long p = b.p;
    if (b.type1) {
        if (b.x.is_inf) return BerkPoint::type_i(P1Q(Rat(0)), p);
        if (b.x.v == 0) return BerkPoint::type_i(P1Q::infinity(), p);
        return BerkPoint::type_i(P1Q(Rat(1) / b.x.v), p);
    }
    Val va = vp(b.center, p);
    if (!va.infinite && Rat(va.v) < b.t)  // 0 outside the disc
        return BerkPoint::disk(Rat(1) / b.center, b.t - 2 * Rat(va.v), p);
    return BerkPoint::disk(Rat(0), -b.t, p);
}

// exact Moebius action on points, via affine/inversion decomposition
inline BerkPoint mobius_apply(const Mobius& m, const BerkPoint& b) {
    const long long p = b.p;
    auto affine_apply = [&](const Rat& s, const Rat& o, const BerkPoint& q) {
        if (q.type1) {
            if (q.x.is_inf) return q;
            return BerkPoint::type_i(P1Q(s * q.x.v + o), p);
        }
        return BerkPoint::disk(s * q.center + o, q.t + Rat(vp(s, p).v), p);
    };
    if (m.c == 0) return affine_apply(m.a / m.d, m.b / m.d, b);
    // (az+b)/(cz+d) = a/c + ((bc-ad)/c) * (1/(cz+d))
    BerkPoint t2 = affine_apply(m.c, m.d, b);
    BerkPoint iv = invert_point(t2);
    return affine_apply((m.b * m.c - m.a * m.d) / m.c, m.a / m.c, iv);
}

/**
 * Reduction of a rational map at a type II point: a coprime pair over F_p.
 * degree 0 means the point is moved; the constant value records where.
 */
struct ReducedMap {
    long long p = 2;
    int deg = 0;
    std::vector<long long> fnum;  // X-coefficients ascending, length deg+1
    std::vector<long long> fden;
    bool constant = false;
    long long const_value = 0;  // element of P^1(F_p); -1 encodes infinity

    // evaluate on P^1(F_p); directions are residues 0..p-1 or -1 for infinity
    long long eval_dir(long long dir) const {
        auto eval_poly = [&](const std::vector<long long>& c, long long z) {
            long long acc = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mod_ll(acc * z + *it, p);
            return acc;
        };
        long long fn, gn;
        if (dir == -1) {
            fn = fnum.back();
            gn = fden.back();
        } else {
            fn = eval_poly(fnum, dir);
            gn = eval_poly(fden, dir);
        }
        if (gn == 0) return -1;
        return mod_ll(fn * inv_mod(gn, p), p);
    }
};

namespace detail {

inline std::vector<long long> fp_trim(std::vector<long long> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

inline std::vector<long long> fp_gcd(std::vector<long long> a, std::vector<long long> b,
                                     long long p) {
    a = fp_trim(std::move(a));
    b = fp_trim(std::move(b));
    while (!b.empty()) {
        // a mod b
        long long inv = inv_mod(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            long long f = mod_ll(a.back() * inv, p);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i)
                a[off + i] = mod_ll(a[off + i] - f * b[i], p);
            a = fp_trim(std::move(a));
            if (a.size() >= b.size() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    return a;
}

inline std::vector<long long> fp_divexact(std::vector<long long> a,
                                          const std::vector<long long>& b, long long p) {
    std::vector<long long> q(a.size() - b.size() + 1, 0);
    long long inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        long long f = mod_ll(a.back() * inv, p);
        size_t off = a.size() - b.size();
        q[off] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = mod_ll(a[off + i] - f * b[i], p);
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return q;
}

// cancel common factors of a reduced binary-form pair, tracking the degree
inline ReducedMap cancel_reduced_pair(std::vector<long long> A, std::vector<long long> B,
                                      int d, long long p) {
    ReducedMap rm;
    rm.p = p;
    bool a_zero = std::all_of(A.begin(), A.end(), [](long long v) { return v == 0; });
    bool b_zero = std::all_of(B.begin(), B.end(), [](long long v) { return v == 0; });
    if (a_zero || b_zero) {
        rm.deg = 0;
        rm.constant = true;
        rm.const_value = a_zero ? 0 : -1;
        rm.fnum = {a_zero ? 0LL : 1LL};
        rm.fden = {a_zero ? 1LL : 0LL};
        return rm;
    }
    // common X powers (trailing zeros)
    size_t xa = 0, xb = 0;
    while (A[xa] == 0) ++xa;
    while (B[xb] == 0) ++xb;
    size_t xc = std::min(xa, xb);
    A.erase(A.begin(), A.begin() + static_cast<long>(xc));
    B.erase(B.begin(), B.begin() + static_cast<long>(xc));
    int dx = d - static_cast<int>(xc);
    // common Y powers (leading zeros relative to form degree dx)
    auto At = fp_trim(A), Bt = fp_trim(B);
    int ydefA = dx - (static_cast<int>(At.size()) - 1);
    int ydefB = dx - (static_cast<int>(Bt.size()) - 1);
    int yc = std::min(ydefA, ydefB);
    int dy = dx - yc;
    // polynomial gcd of the cores
    auto g = fp_gcd(At, Bt, p);
    int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
        At = fp_divexact(std::move(At), g, p);
        Bt = fp_divexact(std::move(Bt), g, p);
    }
    rm.deg = dy - dg;
    At.resize(static_cast<size_t>(rm.deg) + 1, 0);
    Bt.resize(static_cast<size_t>(rm.deg) + 1, 0);
    rm.fnum = std::move(At);
    rm.fden = std::move(Bt);
    if (rm.deg == 0) {
        rm.constant = true;
        rm.const_value = rm.fden[0] == 0
                             ? -1
                             : mod_ll(rm.fnum[0] * inv_mod(rm.fden[0], p), p);
    }
    return rm;
}

} // namespace detail

// Reduction of phi at an integral disc point: conjugate by z -> a + p^t z,
// normalize, reduce mod p, cancel.
inline ReducedMap reduce_map_at(const RationalMap& phi, const BerkPoint& zeta) {
    if (zeta.type1) throw TypeIPoint("reduction needs a hyperbolic point");
    if (rat_den(zeta.t) != 1)
        throw NonIntegralRadius("reduction at log-radius " + rat_str(zeta.t));
    long long t = rat_num(zeta.t).convert_to<long long>();
    Mobius gamma = Mobius::affine(rat_p_pow(phi.p, t), zeta.center);
    RationalMap conj = phi.conjugate(gamma);
    std::vector<long long> A, B;
    for (const auto& c : conj.F.c) A.push_back(vp(c, phi.p) > Val::of(0) ? 0 : reduce(c, phi.p).r);
    for (const auto& c : conj.G.c) B.push_back(vp(c, phi.p) > Val::of(0) ? 0 : reduce(c, phi.p).r);
    return detail::cancel_reduced_pair(std::move(A), std::move(B), conj.d, phi.p);
}

inline long long tangent_map_dir(const RationalMap& phi, const BerkPoint& zeta, long long dir) {
    ReducedMap rm = reduce_map_at(phi, zeta);
    if (rm.constant) throw NotFixed("tangent map at a moved point");
    return rm.eval_dir(dir);
}

enum class FixClass { NotFixedPt, Repelling, MultIndifferent, AddIndifferent, IdIndifferent };

inline const char* fix_class_name(FixClass c) {
    switch (c) {
        case FixClass::NotFixedPt: return "not-fixed";
        case FixClass::Repelling: return "repelling";
        case FixClass::MultIndifferent: return "mult-indifferent";
        case FixClass::AddIndifferent: return "add-indifferent";
        case FixClass::IdIndifferent: return "id-indifferent";
    }
    return "?";
}

inline FixClass classify_fixed(const RationalMap& phi, const BerkPoint& zeta) {
    ReducedMap rm = reduce_map_at(phi, zeta);
    if (rm.constant) return FixClass::NotFixedPt;
    if (rm.deg >= 2) return FixClass::Repelling;
    // reduced Moebius [[alpha, beta], [gamma, delta]] acting as (alpha z + beta)/(gamma z + delta)
    long long al = rm.fnum[1], be = rm.fnum[0], ga = rm.fden[1], de = rm.fden[0];
    const long long p = phi.p;
    if (be == 0 && ga == 0 && al == de) return FixClass::IdIndifferent;
    long long tr = mod_ll(al + de, p);
    long long det = mod_ll(al * de - be * ga, p);
    long long disc = mod_ll(tr * tr - 4 * det, p);
    return disc != 0 ? FixClass::MultIndifferent : FixClass::AddIndifferent;
}

namespace detail {

// image of a disc point when the map has no w-point inside the disc, i.e.
// psi = 1/(phi - w) has no pole there, so psi maps the disc onto a disc with
// center psi(a) and radius given by the sup seminorm.
struct CleanImage {
    bool ok = false;
    BerkPoint point;
};

inline CleanImage try_clean_target(const RationalMap& phi, const Rat& a, const Rat& t,
                                   bool w_inf, const Rat& w) {
    const long long p = phi.p;
    QPoly fa = phi.fz().shift(a);
    QPoly ga = phi.gz().shift(a);
    QPoly den = w_inf ? ga : fa - ga * w;
    if (den.is_zero() || has_root_val_ge(den, t, p)) return {};
    QPoly num = w_inf ? fa : ga;
    // center of the (possibly Moebius-twisted) image disc
    Rat b = num.coeff(0) / den.coeff(0);
    QPoly diff = num - den * b;
    if (diff.is_zero()) return {};  // constant map; excluded for degree >= 1
    Rat u = gauss_val(diff, t, p) - gauss_val(den, t, p);
    BerkPoint img = BerkPoint::disk(b, u, p);
    if (w_inf) return {true, img};
    // pull back through z -> w + 1/z
    Mobius mu(w, Rat(1), Rat(1), Rat(0));
    return {true, mobius_apply(mu, img)};
}

// certified walk from the Gauss point of the conjugated map toward the image,
// one residue level per step; only available at integral log-radius.
inline BerkPoint image_by_walk(const RationalMap& phi, const Rat& a, long long t) {
    const long long p = phi.p;
    Mobius sigma = Mobius::affine(rat_p_pow(p, t), a);
    BinForm P(1, {sigma.b, sigma.a}), Q(1, {sigma.d, sigma.c});
    BinForm F0 = bf_compose(phi.F, P, Q);
    BinForm G0 = bf_compose(phi.G, P, Q);
    Mobius tau = Mobius::identity();
    bool inverted_once = false;
    for (int step = 0; step < 4096; ++step) {
        Mobius ad = tau.adjugate();
        BinForm top = F0 * ad.a + G0 * ad.b;
        BinForm bot = F0 * ad.c + G0 * ad.d;
        // normalize the pair
        bool first = true;
        long long m = 0;
        for (const BinForm* f : {&top, &bot})
            for (const auto& c : f->c) {
                if (c == 0) continue;
                long long v = vp(c, p).v;
                if (first || v < m) { m = v; first = false; }
            }
        Rat scale = rat_p_pow(p, -m);
        std::vector<long long> A, B;
        for (const auto& c : top.c) {
            Rat s = c * scale;
            A.push_back(vp(s, p) > Val::of(0) ? 0 : reduce(s, p).r);
        }
        for (const auto& c : bot.c) {
            Rat s = c * scale;
            B.push_back(vp(s, p) > Val::of(0) ? 0 : reduce(s, p).r);
        }
        ReducedMap rm = cancel_reduced_pair(std::move(A), std::move(B), top.deg, p);
        if (!rm.constant) return mobius_apply(tau, BerkPoint::gauss(p));
        if (rm.const_value == -1) {
            if (inverted_once || step > 0)
                throw ProbeExhausted("image walk saw an unexpected infinity step");
            inverted_once = true;
            tau = tau.compose(Mobius::inversion());
        } else {
            tau = tau.compose(Mobius::affine(Rat(p), Rat(rm.const_value)));
        }
    }
    throw PrecisionCapExceeded("image walk did not terminate");
}

} // namespace detail

/**
 * Image of a Berkovich point under a rational map.  Type I points evaluate
 * directly.  Disc points go through a pole-free Moebius chart when one
 * exists (Newton-polygon certified); otherwise a reduction walk from the
 * Gauss point locates the image exactly.
 */
inline BerkPoint image_point(const RationalMap& phi, const BerkPoint& zeta) {
    const long long p = phi.p;
    if (zeta.type1) return BerkPoint::type_i(phi.eval(zeta.x), p);
    const Rat& a = zeta.center;
    const Rat& t = zeta.t;
    // deterministic target chart order: center image first, then small w
    P1Q phia = phi.eval(P1Q(a));
    auto clean = detail::try_clean_target(phi, a, t, true, Rat(0));
    if (clean.ok) return clean.point;
    std::vector<Rat> ws;
    if (!phia.is_inf) ws.push_back(phia.v);
    long long ct = detail::rat_ceil(t);
    for (const Rat& base : {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(3)})
        ws.push_back(base);
    if (!phia.is_inf) {
        ws.push_back(phia.v + rat_p_pow(p, ct));
        ws.push_back(phia.v - rat_p_pow(p, ct));
        ws.push_back(phia.v + rat_p_pow(p, ct + 1));
        ws.push_back(phia.v * Rat(p));
        if (phia.v != 0) ws.push_back(phia.v / Rat(p));
    }
    for (const auto& w : ws) {
        clean = detail::try_clean_target(phi, a, t, false, w);
        if (clean.ok) return clean.point;
    }
    if (rat_den(t) == 1)
        return detail::image_by_walk(phi, a, rat_num(t).convert_to<long long>());
    throw ProbeExhausted("no pole-free chart found at a non-integral radius");
}

} // namespace padicdyn
