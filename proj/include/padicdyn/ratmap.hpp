#pragma once

#include <utility>
#include <vector>

#include "padicdyn/poly.hpp"

namespace padicdyn {

/**
 * Homogeneous binary form of fixed degree; c[k] multiplies X^k Y^{deg-k},
 * so c doubles as the coefficient list of the dehomogenization F(z,1).
 */
struct BinForm {
    int deg = 0;
    std::vector<Rat> c;  // length deg+1

    BinForm() = default;
    BinForm(int d, std::vector<Rat> coeffs) : deg(d), c(std::move(coeffs)) {
        c.resize(static_cast<size_t>(deg) + 1, Rat(0));
    }
    static BinForm from_poly(const QPoly& f, int d) {
        std::vector<Rat> v(f.coeffs());
        return BinForm(d, std::move(v));
    }
    QPoly dehom() const { return QPoly(std::vector<Rat>(c)); }
    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }
    BinForm operator*(const Rat& s) const {
        BinForm r = *this;
        for (auto& x : r.c) x *= s;
        return r;
    }
    BinForm operator+(const BinForm& o) const {
        BinForm r = *this;
        for (size_t k = 0; k < r.c.size(); ++k) r.c[k] += o.c[k];
        return r;
    }
};

// product of binary forms (degrees add)
inline BinForm bf_mul(const BinForm& a, const BinForm& b) {
    BinForm r(a.deg + b.deg, std::vector<Rat>(static_cast<size_t>(a.deg + b.deg) + 1, Rat(0)));
    for (int i = 0; i <= a.deg; ++i)
        for (int j = 0; j <= b.deg; ++j)
            r.c[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
    return r;
}

// F(P, Q) for binary forms P, Q of equal degree e; result degree deg(F) * e.
inline BinForm bf_compose(const BinForm& f, const BinForm& P, const BinForm& Q) {
    const int e = P.deg;
    // powers of P and Q
    std::vector<BinForm> Pp(static_cast<size_t>(f.deg) + 1), Qp(static_cast<size_t>(f.deg) + 1);
    BinForm one(0, {Rat(1)});
    Pp[0] = one;
    Qp[0] = one;
    for (int k = 1; k <= f.deg; ++k) {
        Pp[static_cast<size_t>(k)] = bf_mul(Pp[static_cast<size_t>(k - 1)], P);
        Qp[static_cast<size_t>(k)] = bf_mul(Qp[static_cast<size_t>(k - 1)], Q);
    }
    BinForm r(f.deg * e, std::vector<Rat>(static_cast<size_t>(f.deg * e) + 1, Rat(0)));
    for (int k = 0; k <= f.deg; ++k) {
        if (f.c[static_cast<size_t>(k)] == 0) continue;
        BinForm term = bf_mul(Pp[static_cast<size_t>(k)], Qp[static_cast<size_t>(f.deg - k)]);
        for (size_t i = 0; i < term.c.size(); ++i)
            r.c[i] += f.c[static_cast<size_t>(k)] * term.c[i];
    }
    return r;
}

/**
 * Moebius transformation z -> (a z + b) / (c z + d), det != 0.
 */
struct Mobius {
    Rat a, b, c, d;

    Mobius() : a(1), b(0), c(0), d(1) {}
    Mobius(Rat a_, Rat b_, Rat c_, Rat d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mobius identity() { return Mobius(); }
    static Mobius affine(const Rat& scale, const Rat& offset) {
        return Mobius(scale, offset, Rat(0), Rat(1));
    }
    static Mobius inversion() { return Mobius(Rat(0), Rat(1), Rat(1), Rat(0)); }

    Rat det() const { return a * d - b * c; }
    Mobius adjugate() const { return Mobius(d, -b, -c, a); }
    Mobius compose(const Mobius& o) const {  // this after o: (this ∘ o)(z)
        return Mobius(a * o.a + b * o.c, a * o.b + b * o.d,
                      c * o.a + d * o.c, c * o.b + d * o.d);
    }
    bool unit_integral(long long p) const {
        if (vp(det(), p) != Val::of(0)) return false;
        for (const Rat* e : {&a, &b, &c, &d})
            if (*e != 0 && vp(*e, p) < Val::of(0)) return false;
        return true;
    }
    P1Q apply(const P1Q& x) const {
        if (x.is_inf) {
            if (c == 0) return P1Q::infinity();
            return P1Q(a / c);
        }
        Rat den = c * x.v + d;
        if (den == 0) return P1Q::infinity();
        return P1Q((a * x.v + b) / den);
    }
};

/**
 * Normalized coprime homogeneous lift pair over Q with a fixed prime.
 */
struct RationalMap {
    long long p = 2;
    int d = 1;
    BinForm F, G;
    Rat res;  // resultant of the normalized lift

    RationalMap() = default;

    RationalMap(const QPoly& num, const QPoly& den, long long prime) {
        if (num.is_zero()) throw CommonFactor("zero numerator");
        if (den.is_zero()) throw CommonFactor("zero denominator");
        p = prime;
        d = std::max(num.degree(), den.degree());
        QPoly g = poly_gcd(num, den);
        if (g.degree() > 0)
            throw CommonFactor("numerator and denominator share a factor of degree " +
                               std::to_string(g.degree()));
        F = BinForm::from_poly(num, d);
        G = BinForm::from_poly(den, d);
        normalize();
        res = resultant_forms(F.c, G.c);
        if (res == 0) throw CommonFactor("vanishing resultant");
    }

    static RationalMap from_forms(BinForm f, BinForm g, long long prime) {
        RationalMap m;
        m.p = prime;
        m.d = f.deg;
        m.F = std::move(f);
        m.G = std::move(g);
        // strip any polynomial common factor that appeared (composition guard)
        QPoly a = m.F.dehom(), b = m.G.dehom();
        QPoly h = poly_gcd(a, b);
        if (h.degree() > 0) {
            auto qa = a.divrem(h), qb = b.divrem(h);
            m.d -= h.degree();
            m.F = BinForm::from_poly(qa.first, m.d);
            m.G = BinForm::from_poly(qb.first, m.d);
        }
        m.normalize();
        m.res = resultant_forms(m.F.c, m.G.c);
        if (m.res == 0) throw CommonFactor("vanishing resultant after composition");
        return m;
    }

    // scale so that min coefficient valuation is 0
    void normalize() {
        bool first = true;
        long long m = 0;
        for (const BinForm* f : {&F, &G})
            for (const auto& x : f->c) {
                if (x == 0) continue;
                long long v = vp(x, p).v;
                if (first || v < m) { m = v; first = false; }
            }
        if (first) throw CommonFactor("zero lift");
        if (m != 0) {
            Rat s = rat_p_pow(p, -m);
            F = F * s;
            G = G * s;
        }
    }

    QPoly fz() const { return F.dehom(); }
    QPoly gz() const { return G.dehom(); }

    long long ord_res() const { return vp(res, p).v; }

    P1Q eval(const P1Q& x) const {
        if (x.is_inf) {
            Rat fn = F.c[static_cast<size_t>(d)], gn = G.c[static_cast<size_t>(d)];
            if (gn == 0) return P1Q::infinity();
            return P1Q(fn / gn);
        }
        Rat fn = fz().eval(x.v), gn = gz().eval(x.v);
        if (gn == 0) return P1Q::infinity();
        return P1Q(fn / gn);
    }

    RationalMap iterate(int n) const {
        if (n < 1) throw Error("BadArgument", "iterate needs n >= 1");
        RationalMap acc = *this;
        for (int k = 1; k < n; ++k) {
            BinForm f2 = bf_compose(F, acc.F, acc.G);
            BinForm g2 = bf_compose(G, acc.F, acc.G);
            acc = from_forms(std::move(f2), std::move(g2), p);
            long long want = 1;
            for (int i = 0; i <= k; ++i) want *= d;
            if (acc.d != want)
                throw Error("DegreeDrop", "iterate degree drop detected");
        }
        return acc;
    }

    RationalMap conjugate(const Mobius& m) const {
        if (m.det() == 0) throw Error("BadArgument", "singular Moebius");
        BinForm P(1, {m.b, m.a});  // a X + b Y: coefficient of X is a
        BinForm Q(1, {m.d, m.c});
        BinForm Fg = bf_compose(F, P, Q);
        BinForm Gg = bf_compose(G, P, Q);
        Mobius ad = m.adjugate();
        BinForm top = Fg * ad.a + Gg * ad.b;
        BinForm bot = Fg * ad.c + Gg * ad.d;
        return from_forms(std::move(top), std::move(bot), p);
    }

    // F(z,1) - z G(z,1); infinity is fixed iff the degree drops below d+1.
    struct FixedPointPoly {
        QPoly poly;
        bool inf_fixed;
        int inf_mult;
    };
    FixedPointPoly fixed_point_poly() const {
        QPoly r = fz() - gz().shift_up(1);
        int drop = (d + 1) - r.degree();
        return {r, drop > 0, drop};
    }

    // one-variable Wronskian f'g - f g'; finite critical points are its roots
    QPoly critical_poly() const {
        QPoly f = fz(), g = gz();
        return f.derivative() * g - f * g.derivative();
    }

    Rat multiplier(const P1Q& P) const {
        if (P.is_inf) {
            RationalMap inv = conjugate(Mobius::inversion());
            return inv.multiplier(P1Q(Rat(0)));
        }
        if (eval(P) != P) throw NotFixed("multiplier at a non-fixed point");
        QPoly g = gz();
        Rat gv = g.eval(P.v);
        if (gv == 0) throw NotFixed("fixed point is a pole");  // cannot happen: phi(P)=P finite
        Rat w = critical_poly().eval(P.v);
        return w / (gv * gv);
    }
};

} // namespace padicdyn
