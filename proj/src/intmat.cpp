#include "cuphom/intmat.hpp"
#include "cuphom/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace cuphom {

bool IntMatrix::is_zero() const {
    for (const auto& x : a) if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw SemanticError("int mul: dimension mismatch");
    IntMatrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

IntMatrix add(const IntMatrix& x, const IntMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw SemanticError("int add: dimension mismatch");
    IntMatrix z = x;
    for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] += y.a[k];
    return z;
}

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

struct SnfWork {
    IntMatrix m, left, right;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
        for (std::size_t j = 0; j < left.cols; ++j) std::swap(left.at(a, j), left.at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
        for (std::size_t i = 0; i < right.rows; ++i) std::swap(right.at(i, a), right.at(i, b));
    }
    // row[a] += q * row[b]
    void add_row(std::size_t a, std::size_t b, const Int& q) {
        for (std::size_t j = 0; j < m.cols; ++j) m.at(a, j) += q * m.at(b, j);
        for (std::size_t j = 0; j < left.cols; ++j) left.at(a, j) += q * left.at(b, j);
    }
    // col[a] += q * col[b]
    void add_col(std::size_t a, std::size_t b, const Int& q) {
        for (std::size_t i = 0; i < m.rows; ++i) m.at(i, a) += q * m.at(i, b);
        for (std::size_t i = 0; i < right.rows; ++i) right.at(i, a) += q * right.at(i, b);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < m.cols; ++j) m.at(a, j) = -m.at(a, j);
        for (std::size_t j = 0; j < left.cols; ++j) left.at(a, j) = -left.at(a, j);
    }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
    SnfWork w{input, IntMatrix::identity(input.rows), IntMatrix::identity(input.cols)};
    const std::size_t n = std::min(input.rows, input.cols);

    for (std::size_t t = 0; t < n; ++t) {
        // Smallest nonzero entry of the trailing block, first in reading order.
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < w.m.rows; ++i)
            for (std::size_t j = t; j < w.m.cols; ++j) {
                const Int v = iabs(w.m.at(i, j));
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            // Clear column t, restarting whenever a remainder becomes the
            // smaller pivot; then clear row t the same way.
            bool swapped = false;
            for (std::size_t i = t + 1; i < w.m.rows && !swapped; ++i) {
                if (w.m.at(i, t) == 0) continue;
                Int q = w.m.at(i, t) / w.m.at(t, t);
                w.add_row(i, t, -q);
                if (w.m.at(i, t) != 0) {
                    w.swap_rows(t, i);
                    swapped = true;
                }
            }
            if (swapped) continue;
            for (std::size_t j = t + 1; j < w.m.cols && !swapped; ++j) {
                if (w.m.at(t, j) == 0) continue;
                Int q = w.m.at(t, j) / w.m.at(t, t);
                w.add_col(j, t, -q);
                if (w.m.at(t, j) != 0) {
                    w.swap_cols(t, j);
                    swapped = true;
                }
            }
            if (swapped) continue;

            // Enforce divisibility into the trailing block.
            bool fixed = false;
            for (std::size_t i = t + 1; i < w.m.rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < w.m.cols && !fixed; ++j)
                    if (w.m.at(i, j) % w.m.at(t, t) != 0) {
                        w.add_row(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (w.m.at(t, t) < 0) w.negate_row(t);
    }

    SmithForm out;
    out.left = std::move(w.left);
    out.right = std::move(w.right);
    for (std::size_t t = 0; t < n; ++t) out.diagonal.push_back(w.m.at(t, t));
    return out;
}

std::size_t rank_bareiss(const IntMatrix& input) {
    IntMatrix m = input;
    const std::size_t r = m.rows, c = m.cols;
    Int prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && m.at(piv, col) == 0) ++piv;
        if (piv == r) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < c; ++j) std::swap(m.at(rank, j), m.at(piv, j));
        const Int p = m.at(rank, col);
        for (std::size_t i = rank + 1; i < r; ++i) {
            const Int f = m.at(i, col);
            for (std::size_t j = col; j < c; ++j)
                m.at(i, j) = (m.at(i, j) * p - m.at(rank, j) * f) / prev;
        }
        prev = p;
        ++rank;
    }
    return rank;
}

namespace {

// Rank modulo a word-sized prime.
std::size_t rank_mod_p(const IntMatrix& input, std::uint64_t p) {
    const std::size_t r = input.rows, c = input.cols;
    std::vector<std::uint64_t> m(r * c);
    for (std::size_t k = 0; k < r * c; ++k) {
        Int v = input.a[k] % Int(p);
        if (v < 0) v += p;
        m[k] = v.convert_to<std::uint64_t>();
    }
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
        return (std::uint64_t)((__uint128_t)a * b % p);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t s = 1;
        while (e) {
            if (e & 1) s = mulmod(s, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return s;
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = rank;
        while (piv < r && m[piv * c + col] == 0) ++piv;
        if (piv == r) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < c; ++j) std::swap(m[rank * c + j], m[piv * c + j]);
        std::uint64_t inv = powmod(m[rank * c + col], p - 2);
        for (std::size_t i = rank + 1; i < r; ++i) {
            std::uint64_t f = m[i * c + col];
            if (!f) continue;
            std::uint64_t scale = mulmod(f, inv);
            for (std::size_t j = col; j < c; ++j) {
                std::uint64_t sub = mulmod(scale, m[rank * c + j]);
                m[i * c + j] = (m[i * c + j] + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

// Bareiss with per-row content reduction; rank-safe because scaling a row by
// a nonzero rational does not change the rank.  Aborts (returns false) when
// entries outgrow the bit cap.
bool rank_content_reduced(const IntMatrix& input, std::size_t bit_cap, std::size_t& rank_out) {
    IntMatrix m = input;
    const std::size_t r = m.rows, c = m.cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        // Prefer the smallest pivot to limit growth.
        std::size_t piv = r;
        Int best = 0;
        for (std::size_t i = rank; i < r; ++i) {
            const Int v = iabs(m.at(i, col));
            if (v != 0 && (best == 0 || v < best)) {
                best = v;
                piv = i;
            }
        }
        if (piv == r) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < c; ++j) std::swap(m.at(rank, j), m.at(piv, j));
        const Int p = m.at(rank, col);
        for (std::size_t i = rank + 1; i < r; ++i) {
            const Int f = m.at(i, col);
            if (f == 0) continue;
            Int content = 0;
            for (std::size_t j = col; j < c; ++j) {
                m.at(i, j) = m.at(i, j) * p - m.at(rank, j) * f;
                content = boost::multiprecision::gcd(content, m.at(i, j));
            }
            if (content > 1)
                for (std::size_t j = col; j < c; ++j) m.at(i, j) /= content;
            for (std::size_t j = col; j < c; ++j)
                if (boost::multiprecision::msb(iabs(m.at(i, j)) + 1) > bit_cap) return false;
        }
        ++rank;
    }
    rank_out = rank;
    return true;
}

} // namespace

namespace {

// Deterministic Miller-Rabin for 64-bit inputs (the standard witness set).
bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                            31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return (std::uint64_t)((__uint128_t)a * b % n);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                            31ULL, 37ULL}) {
        std::uint64_t x = powmod(a % n, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

const std::vector<std::uint64_t>& modular_primes() {
    static const std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> ps;
        for (std::uint64_t c = (std::uint64_t(1) << 62) - 1; ps.size() < 5; c -= 2)
            if (is_prime_u64(c)) ps.push_back(c);
        return ps;
    }();
    return primes;
}

} // namespace

QRank rank_q(const IntMatrix& m) {
    QRank out;
    if (m.rows == 0 || m.cols == 0) return out;
    std::size_t n = std::max(m.rows, m.cols);
    if (n <= 320) {
        if (rank_content_reduced(m, 4096, out.rank)) return out;
    }
    // Modular fallback for large or badly growing inputs: rank over Q is the
    // maximum of ranks mod p, attained for every prime not dividing a fixed
    // nonzero minor.
    out.certified = false;
    out.rank = 0;
    for (auto p : modular_primes()) out.rank = std::max(out.rank, rank_mod_p(m, p));
    return out;
}

bool miller_rabin_is_prime(std::uint64_t n) { return is_prime_u64(n); }

std::size_t homology_ranks_q(const IntMatrix& boundary_in, const IntMatrix& boundary_out) {
    if (boundary_out.cols != boundary_in.rows)
        throw SemanticError("homology_ranks: boundary dimensions do not compose");
    if (!mul(boundary_out, boundary_in).is_zero())
        throw SemanticError("homology_ranks: not a complex");
    std::size_t dim = boundary_out.cols;
    return (dim - rank_q(boundary_out).rank) - rank_q(boundary_in).rank;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    if (m.rows != m.cols) throw SemanticError("inverse_unimodular: not square");
    SmithForm s = smith_normal_form(m);
    for (const Int& d : s.diagonal)
        if (d != 1) throw SemanticError("inverse_unimodular: matrix is not unimodular");
    // left * m * right = I  =>  m^{-1} = right * left
    return mul(s.right, s.left);
}

} // namespace cuphom
