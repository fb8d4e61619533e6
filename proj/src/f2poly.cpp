#include "cuphom/f2poly.hpp"
#include "cuphom/errors.hpp"

#include <algorithm>
#include <bit>

namespace cuphom {

F2Poly F2Poly::monomial(std::size_t e) {
    F2Poly p;
    p.set(e);
    return p;
}

bool F2Poly::is_zero() const {
    for (auto x : w) if (x) return false;
    return true;
}

long long F2Poly::degree() const {
    for (std::size_t k = w.size(); k-- > 0;)
        if (w[k]) return (long long)(k * 64 + 63 - std::countl_zero(w[k]));
    return -1;
}

void F2Poly::set(std::size_t i) {
    std::size_t k = i >> 6;
    if (k >= w.size()) w.resize(k + 1, 0);
    w[k] |= std::uint64_t(1) << (i & 63);
}

void F2Poly::trim() {
    while (!w.empty() && w.back() == 0) w.pop_back();
}

bool F2Poly::operator==(const F2Poly& o) const {
    F2Poly a = *this, b = o;
    a.trim();
    b.trim();
    return a.w == b.w;
}

F2Poly add(const F2Poly& a, const F2Poly& b) {
    F2Poly c = a;
    if (b.w.size() > c.w.size()) c.w.resize(b.w.size(), 0);
    for (std::size_t k = 0; k < b.w.size(); ++k) c.w[k] ^= b.w[k];
    c.trim();
    return c;
}

F2Poly shift_left(const F2Poly& a, std::size_t k) {
    if (a.is_zero() || k == 0) {
        F2Poly c = a;
        c.trim();
        return c;
    }
    std::size_t wk = k >> 6, bk = k & 63;
    F2Poly c;
    c.w.assign(a.w.size() + wk + 1, 0);
    for (std::size_t i = 0; i < a.w.size(); ++i) {
        c.w[i + wk] ^= a.w[i] << bk;
        if (bk) c.w[i + wk + 1] ^= a.w[i] >> (64 - bk);
    }
    c.trim();
    return c;
}

F2Poly mul(const F2Poly& a, const F2Poly& b) {
    if (a.is_zero() || b.is_zero()) return F2Poly();
    F2Poly c;
    c.w.assign(a.w.size() + b.w.size() + 1, 0);
    for (std::size_t i = 0; i < a.w.size(); ++i) {
        std::uint64_t word = a.w[i];
        while (word) {
            int bit = std::countr_zero(word);
            word &= word - 1;
            std::size_t sh = i * 64 + std::size_t(bit);
            std::size_t wk = sh >> 6, bk = sh & 63;
            for (std::size_t j = 0; j < b.w.size(); ++j) {
                c.w[j + wk] ^= b.w[j] << bk;
                if (bk) c.w[j + wk + 1] ^= b.w[j] >> (64 - bk);
            }
        }
    }
    c.trim();
    return c;
}

F2Poly divide_exact(const F2Poly& a, const F2Poly& b) {
    if (b.is_zero()) throw SemanticError("f2poly: division by zero");
    F2Poly r = a;
    r.trim();
    F2Poly q;
    const long long db = b.degree();
    for (;;) {
        long long dr = r.degree();
        if (dr < db) break;
        std::size_t sh = std::size_t(dr - db);
        q.set(sh);
        r = add(r, shift_left(b, sh));
    }
    if (!r.is_zero()) throw SemanticError("f2poly: inexact division");
    return q;
}

std::size_t trailing_zeros(const F2Poly& a) {
    for (std::size_t k = 0; k < a.w.size(); ++k)
        if (a.w[k]) return k * 64 + std::size_t(std::countr_zero(a.w[k]));
    return 0;
}

void LaurentPoly::normalize() {
    if (p.is_zero()) {
        val = 0;
        p = F2Poly();
        return;
    }
    std::size_t t = trailing_zeros(p);
    if (t) {
        F2Poly q;
        for (long long i = t; i <= p.degree(); ++i)
            if (p.get((std::size_t)i)) q.set((std::size_t)(i - t));
        p = q;
        val += (long long)t;
    }
    p.trim();
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long long v = std::min(a.val, b.val);
    LaurentPoly c;
    c.p = add(shift_left(a.p, std::size_t(a.val - v)), shift_left(b.p, std::size_t(b.val - v)));
    c.val = v;
    c.normalize();
    return c;
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly c;
    c.p = mul(a.p, b.p);
    c.val = a.val + b.val;
    c.normalize();
    return c;
}

std::string to_string(const LaurentPoly& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (long long i = 0; i <= a.p.degree(); ++i) {
        if (!a.p.get((std::size_t)i)) continue;
        if (!s.empty()) s += "+";
        long long e = a.val + i;
        if (e == 0) s += "1";
        else if (e == 1) s += "U";
        else s += "U^" + std::to_string(e);
    }
    return s;
}

bool LaurentMatrix::is_zero() const {
    for (const auto& x : a) if (!x.is_zero()) return false;
    return true;
}

LaurentMatrix mul(const LaurentMatrix& x, const LaurentMatrix& y) {
    if (x.cols != y.rows) throw SemanticError("laurent mul: dimension mismatch");
    LaurentMatrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                if (y.at(k, j).is_zero()) continue;
                z.at(i, j) = add(z.at(i, j), mul(x.at(i, k), y.at(k, j)));
            }
        }
    return z;
}

LaurentMatrix add(const LaurentMatrix& x, const LaurentMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw SemanticError("laurent add: dimension mismatch");
    LaurentMatrix z = x;
    for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] = add(z.a[k], y.a[k]);
    return z;
}

std::size_t rank_laurent(const LaurentMatrix& input) {
    const std::size_t r = input.rows, c = input.cols;
    if (r == 0 || c == 0) return 0;

    // Clear valuations row by row (does not change rank), leaving F2[U] entries.
    std::vector<F2Poly> m(r * c);
    for (std::size_t i = 0; i < r; ++i) {
        long long vmin = 0;
        bool any = false;
        for (std::size_t j = 0; j < c; ++j)
            if (!input.at(i, j).is_zero()) {
                if (!any || input.at(i, j).val < vmin) vmin = input.at(i, j).val;
                any = true;
            }
        if (!any) continue;
        for (std::size_t j = 0; j < c; ++j) {
            const LaurentPoly& e = input.at(i, j);
            if (!e.is_zero()) m[i * c + j] = shift_left(e.p, std::size_t(e.val - vmin));
        }
    }

    F2Poly prev = F2Poly::one();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        // Pivot: lowest-degree nonzero in this column, earliest row on ties.
        std::size_t piv = r;
        long long best = -1;
        for (std::size_t i = rank; i < r; ++i) {
            long long d = m[i * c + col].degree();
            if (d >= 0 && (best < 0 || d < best)) {
                best = d;
                piv = i;
            }
        }
        if (piv == r) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < c; ++j) std::swap(m[rank * c + j], m[piv * c + j]);
        const F2Poly p = m[rank * c + col];
        for (std::size_t i = rank + 1; i < r; ++i) {
            const F2Poly f = m[i * c + col];
            // Bareiss: every remaining row is rescaled, zero multiplier or not,
            // so the division by the previous pivot stays exact.
            for (std::size_t j = col; j < c; ++j) {
                F2Poly t = add(mul(m[i * c + j], p), mul(m[rank * c + j], f));
                m[i * c + j] = t.is_zero() ? t : divide_exact(t, prev);
            }
        }
        prev = p;
        ++rank;
    }
    return rank;
}

std::size_t laurent_homology_rank(const LaurentMatrix& d) {
    if (d.rows != d.cols) throw SemanticError("laurent homology: differential must be square");
    if (!mul(d, d).is_zero()) throw SemanticError("laurent homology: d^2 != 0");
    return d.rows - 2 * rank_laurent(d);
}

F2Poly mod(const F2Poly& a, const F2Poly& b) {
    if (b.is_zero()) throw SemanticError("f2poly: division by zero");
    F2Poly r = a;
    r.trim();
    const long long db = b.degree();
    for (;;) {
        long long dr = r.degree();
        if (dr < db) break;
        r = add(r, shift_left(b, std::size_t(dr - db)));
    }
    return r;
}

F2Poly gcd(const F2Poly& a, const F2Poly& b) {
    F2Poly x = a, y = b;
    x.trim();
    y.trim();
    while (!y.is_zero()) {
        F2Poly r = mod(x, y);
        x = y;
        y = r;
    }
    return x;
}

LaurentMatrix transpose(const LaurentMatrix& m) {
    LaurentMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

LaurentMatrix vstack(const LaurentMatrix& top, const LaurentMatrix& bottom) {
    if (top.cols != bottom.cols) throw SemanticError("vstack: column mismatch");
    LaurentMatrix s(top.rows + bottom.rows, top.cols);
    for (std::size_t i = 0; i < top.rows; ++i)
        for (std::size_t j = 0; j < top.cols; ++j) s.at(i, j) = top.at(i, j);
    for (std::size_t i = 0; i < bottom.rows; ++i)
        for (std::size_t j = 0; j < bottom.cols; ++j) s.at(top.rows + i, j) = bottom.at(i, j);
    return s;
}

namespace {

// Rational functions num/den over F2[U], normalized by gcd.
struct RatPoly {
    F2Poly num, den = F2Poly::one();

    bool is_zero() const { return num.is_zero(); }
    void normalize() {
        if (num.is_zero()) {
            den = F2Poly::one();
            return;
        }
        F2Poly g = cuphom::gcd(num, den);
        if (g.degree() > 0) {
            num = divide_exact(num, g);
            den = divide_exact(den, g);
        }
    }
};

RatPoly rat_add(const RatPoly& a, const RatPoly& b) {
    RatPoly c;
    c.num = add(mul(a.num, b.den), mul(b.num, a.den));
    c.den = mul(a.den, b.den);
    c.normalize();
    return c;
}

RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
    RatPoly c;
    c.num = mul(a.num, b.num);
    c.den = mul(a.den, b.den);
    c.normalize();
    return c;
}

RatPoly rat_div(const RatPoly& a, const RatPoly& b) {
    RatPoly c;
    c.num = mul(a.num, b.den);
    c.den = mul(a.den, b.num);
    c.normalize();
    return c;
}

} // namespace

std::vector<std::vector<LaurentPoly>> laurent_kernel_basis(const LaurentMatrix& m) {
    const std::size_t r = m.rows, c = m.cols;
    std::vector<RatPoly> a(r * c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const LaurentPoly& e = m.at(i, j);
            if (e.is_zero()) continue;
            RatPoly& x = a[i * c + j];
            if (e.val >= 0) x.num = shift_left(e.p, std::size_t(e.val));
            else {
                x.num = e.p;
                x.den = shift_left(F2Poly::one(), std::size_t(-e.val));
            }
        }

    // Reduced echelon over the rational function field.
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && a[piv * c + col].is_zero()) ++piv;
        if (piv == r) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < c; ++j) std::swap(a[rank * c + j], a[piv * c + j]);
        RatPoly inv = a[rank * c + col];
        for (std::size_t j = col; j < c; ++j)
            a[rank * c + j] = rat_div(a[rank * c + j], inv);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == rank || a[i * c + col].is_zero()) continue;
            RatPoly f = a[i * c + col];
            for (std::size_t j = col; j < c; ++j)
                a[i * c + j] = rat_add(a[i * c + j], rat_mul(f, a[rank * c + j]));
        }
        pivots.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(c, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<LaurentPoly>> basis;
    for (std::size_t f = 0; f < c; ++f) {
        if (is_pivot[f]) continue;
        // x_f = 1, x_{pivot p} = entry (p, f); clear denominators afterwards.
        std::vector<RatPoly> x(c);
        x[f].num = F2Poly::one();
        for (std::size_t p = 0; p < pivots.size(); ++p) x[pivots[p]] = a[p * c + f];
        F2Poly lcm = F2Poly::one();
        for (const auto& e : x)
            if (!e.is_zero()) lcm = divide_exact(mul(lcm, e.den), cuphom::gcd(lcm, e.den));
        std::vector<LaurentPoly> v(c);
        for (std::size_t j = 0; j < c; ++j) {
            if (x[j].is_zero()) continue;
            v[j].p = mul(x[j].num, divide_exact(lcm, x[j].den));
            v[j].val = 0;
            v[j].normalize();
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace cuphom
