#pragma once

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

#include "padicdyn/rat.hpp"

namespace padicdyn {

/**
 * Univariate polynomial over Q, coefficients ascending by degree.
 * The zero polynomial has an empty coefficient vector and degree -1.
 */
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rat& a) { return QPoly(std::vector<Rat>{a}); }
    static QPoly monomial(const Rat& a, int k) {
        std::vector<Rat> v(static_cast<size_t>(k) + 1, Rat(0));
        v.back() = a;
        return QPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : Rat(0);
    }
    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    QPoly derivative() const {
        if (c_.size() <= 1) return QPoly();
        std::vector<Rat> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rat(static_cast<long long>(k));
        return QPoly(std::move(d));
    }

    QPoly operator+(const QPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
        return QPoly(std::move(r));
    }
    QPoly operator-(const QPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
        return QPoly(std::move(r));
    }
    QPoly operator*(const QPoly& o) const {
        if (is_zero() || o.is_zero()) return QPoly();
        std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return QPoly(std::move(r));
    }
    QPoly operator*(const Rat& s) const {
        if (s == 0) return QPoly();
        std::vector<Rat> r(c_);
        for (auto& x : r) x *= s;
        return QPoly(std::move(r));
    }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Substitute another polynomial: this(g(x)).
    QPoly compose(const QPoly& g) const {
        QPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * g + QPoly::constant(*it);
        return acc;
    }

    // Shift of variable: this(x + a).
    QPoly shift(const Rat& a) const {
        QPoly acc;
        QPoly lin(std::vector<Rat>{a, Rat(1)});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * lin + QPoly::constant(*it);
        return acc;
    }

    // Exact division with remainder over Q.
    std::pair<QPoly, QPoly> divrem(const QPoly& d) const {
        assert(!d.is_zero());
        QPoly r = *this, q;
        std::vector<Rat> qc(std::max<size_t>(1, c_.size()), Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Rat f = r.lead() / d.lead();
            qc[static_cast<size_t>(k)] = f;
            r = r - d * QPoly::monomial(f, k);
            if (r.degree() == k + d.degree()) {
                // leading term must have cancelled; force-trim numeric residue
                assert(r.coeff(k + d.degree()) == 0);
            }
        }
        q = QPoly(std::move(qc));
        return {q, r};
    }

    // Multiply by x^k.
    QPoly shift_up(int k) const {
        if (is_zero()) return QPoly();
        std::vector<Rat> r(c_.size() + static_cast<size_t>(k), Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i + static_cast<size_t>(k)] = c_[i];
        return QPoly(std::move(r));
    }

    // Number of trailing zero coefficients (order of vanishing at 0).
    int trailing_zeros() const {
        int k = 0;
        while (k < static_cast<int>(c_.size()) && c_[static_cast<size_t>(k)] == 0) ++k;
        return k;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Integer content-cleared version: primitive integer coefficient list and the
// rational factor pulled out, so that poly = factor * primitive.
inline std::pair<std::vector<Int>, Rat> to_primitive(const QPoly& f) {
    if (f.is_zero()) return {{}, Rat(0)};
    Int den = 1;
    for (const auto& q : f.coeffs()) den = boost::multiprecision::lcm(den, rat_den(q));
    std::vector<Int> z;
    z.reserve(f.coeffs().size());
    Int g = 0;
    for (const auto& q : f.coeffs()) {
        Int n = rat_num(q) * (den / rat_den(q));
        z.push_back(n);
        g = boost::multiprecision::gcd(g, n);
    }
    if (g == 0) g = 1;
    if (z.back() < 0) g = -g;
    for (auto& n : z) n /= g;
    return {z, Rat(g, den)};
}

inline QPoly from_int_coeffs(const std::vector<Int>& z) {
    std::vector<Rat> r;
    r.reserve(z.size());
    for (const auto& n : z) r.emplace_back(n);
    return QPoly(std::move(r));
}

// Polynomial gcd over Q via the primitive pseudo-remainder sequence over Z.
// Result is primitive with positive leading coefficient (or zero).
inline QPoly poly_gcd(QPoly a, QPoly b) {
    if (a.is_zero()) return b.is_zero() ? QPoly() : from_int_coeffs(to_primitive(b).first);
    if (b.is_zero()) return from_int_coeffs(to_primitive(a).first);
    auto A = to_primitive(a).first;
    auto B = to_primitive(b).first;
    auto deg = [](const std::vector<Int>& v) { return static_cast<int>(v.size()) - 1; };
    if (deg(A) < deg(B)) std::swap(A, B);
    while (!B.empty()) {
        // pseudo-remainder of A by B
        std::vector<Int> R = A;
        const Int lb = B.back();
        int db = deg(B);
        while (static_cast<int>(R.size()) - 1 >= db && !R.empty()) {
            int k = static_cast<int>(R.size()) - 1 - db;
            Int lr = R.back();
            for (auto& x : R) x *= lb;
            for (int i = 0; i <= db; ++i)
                R[static_cast<size_t>(k + i)] -= lr * B[static_cast<size_t>(i)];
            while (!R.empty() && R.back() == 0) R.pop_back();
        }
        // make primitive
        Int g = 0;
        for (const auto& x : R) g = boost::multiprecision::gcd(g, x);
        if (g != 0)
            for (auto& x : R) x /= g;
        A = std::move(B);
        B = std::move(R);
    }
    if (!A.empty() && A.back() < 0)
        for (auto& x : A) x = -x;
    return from_int_coeffs(A);
}

inline QPoly squarefree_part(const QPoly& f) {
    if (f.degree() <= 0) return f;
    QPoly g = poly_gcd(f, f.derivative());
    if (g.degree() <= 0) return f;
    auto [q, r] = f.divrem(g);
    assert(r.is_zero());
    return q;
}

// Exact determinant of a rational matrix by integer Bareiss elimination.
inline Rat det_exact(std::vector<std::vector<Rat>> m) {
    const size_t n = m.size();
    if (n == 0) return Rat(1);
    Int den = 1;
    for (auto& row : m)
        for (auto& x : row) den = boost::multiprecision::lcm(den, rat_den(x));
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a[i][j] = rat_num(m[i][j]) * (den / rat_den(m[i][j]));
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return Rat(0);
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = t / prev;
            }
        prev = a[k][k];
    }
    Int det = sign * a[n - 1][n - 1];
    Rat scale = Rat(1);
    for (size_t i = 0; i < n; ++i) scale *= Rat(Int(1), den);
    return Rat(det) * scale;
}

// Resultant of two binary forms of common degree d, given by full coefficient
// lists (length d+1, ascending in X so fc[k] multiplies X^k Y^{d-k}).
// Determinant of the 2d x 2d Sylvester matrix; degree drops are handled by
// the zero leading entries, matching the binary-form convention.
inline Rat resultant_forms(const std::vector<Rat>& fc, const std::vector<Rat>& gc) {
    assert(fc.size() == gc.size());
    const int d = static_cast<int>(fc.size()) - 1;
    if (d == 0) return Rat(1);
    const size_t n = 2 * static_cast<size_t>(d);
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    // row i (0..d-1): coefficients of F, descending, shifted by i
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= d; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = fc[static_cast<size_t>(d - j)];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= d; ++j)
            m[static_cast<size_t>(d + i)][static_cast<size_t>(i + j)] = gc[static_cast<size_t>(d - j)];
    return det_exact(std::move(m));
}

/**
 * Tropical data of a polynomial in one indeterminate A: the lines
 * v_p(c_k) + k t indexed by monomials.  The Gauss valuation at parameter
 * valuation t is their minimum; it equals v_p(q(A0)) for generic A0 with
 * v_p(A0) = t.
 */
struct TropLine {
    long long val;  // v_p(c_k)
    long long k;    // monomial degree, the slope in t
};

inline std::vector<TropLine> trop_lines(const QPoly& q, long long p) {
    std::vector<TropLine> lines;
    const auto& c = q.coeffs();
    for (size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) lines.push_back({vp(c[k], p).v, static_cast<long long>(k)});
    return lines;
}

inline Rat trop_min(const std::vector<TropLine>& lines, const Rat& t) {
    assert(!lines.empty());
    bool first = true;
    Rat best(0);
    for (const auto& ln : lines) {
        Rat v = Rat(ln.val) + Rat(ln.k) * t;
        if (first || v < best) { best = v; first = false; }
    }
    return best;
}

// Gauss valuation min_k (vp(c_k) + k t); exact for rational t.
inline Rat gauss_val(const QPoly& q, const Rat& t, long long p) {
    if (q.is_zero()) throw ZeroPolynomial("gauss_val of the zero polynomial");
    return trop_min(trop_lines(q, p), t);
}

/**
 * Newton polygon segment: roots_count roots of p-adic valuation `rootval`.
 * Roots equal to zero are reported separately by the caller via
 * trailing_zeros().
 */
struct NewtonSegment {
    Rat rootval;
    int count;
};

// Lower convex hull of (k, vp(c_k)); segment of slope s gives roots of
// valuation -s.
inline std::vector<NewtonSegment> newton_segments(const QPoly& q, long long p) {
    std::vector<std::pair<long long, long long>> pts;  // (k, vp)
    const auto& c = q.coeffs();
    for (size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) pts.push_back({static_cast<long long>(k), vp(c[k], p).v});
    std::vector<NewtonSegment> segs;
    if (pts.size() < 2) return segs;
    // lower hull, left to right
    std::vector<std::pair<long long, long long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep if b is strictly below segment a-pt
            Int lhs = Int(b.second - a.second) * Int(pt.first - a.first);
            Int rhs = Int(pt.second - a.second) * Int(b.first - a.first);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long long dk = hull[i + 1].first - hull[i].first;
        long long dv = hull[i + 1].second - hull[i].second;
        segs.push_back({Rat(-dv, dk), static_cast<int>(dk)});
    }
    return segs;
}

// Does q have a root (in an algebraic closure) of valuation >= t?
// Roots at zero count with valuation +infinity.
inline bool has_root_val_ge(const QPoly& q, const Rat& t, long long p) {
    if (q.is_zero()) return true;
    if (q.trailing_zeros() > 0) return true;
    for (const auto& s : newton_segments(q, p))
        if (s.rootval >= t) return true;
    return false;
}

} // namespace padicdyn
