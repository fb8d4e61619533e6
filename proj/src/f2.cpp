#include "cuphom/f2.hpp"
#include "cuphom/errors.hpp"

#include <algorithm>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cuphom {

std::size_t F2Vec::popcount() const {
    std::size_t c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* ra = row(a);
    std::uint64_t* rb = row(b);
    for (std::size_t k = 0; k < words; ++k) std::swap(ra[k], rb[k]);
}

F2Vec F2Matrix::get_row(std::size_t i) const {
    F2Vec v(cols);
    const std::uint64_t* r = row(i);
    for (std::size_t k = 0; k < words; ++k) v.w[k] = r[k];
    return v;
}

void F2Matrix::set_row(std::size_t i, const F2Vec& v) {
    std::uint64_t* r = row(i);
    for (std::size_t k = 0; k < words; ++k) r[k] = v.w[k];
}

F2Vec F2Matrix::get_col(std::size_t j) const {
    F2Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i)
        if (get(i, j)) v.set(i, true);
    return v;
}

bool F2Matrix::is_zero() const {
    for (auto x : data) if (x) return false;
    return true;
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

namespace {

// Work large enough to be worth spawning threads for.
constexpr std::size_t kParallelCutoff = std::size_t(1) << 16;

inline bool bit_at(const std::uint64_t* r, std::size_t j) {
    return (r[j >> 6] >> (j & 63)) & 1u;
}

// Forward elimination; clears only rows below the pivot.
template <bool Parallel>
std::size_t eliminate_rank(F2Matrix& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && !bit_at(m.row(piv), col)) ++piv;
        if (piv == m.rows) continue;
        m.swap_rows(rank, piv);
        const std::uint64_t* pr = m.row(rank);
        const std::size_t words = m.words;
        const std::size_t w0 = col >> 6; // earlier words are all zero by now
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
            for (long long i = (long long)rank + 1; i < (long long)m.rows; ++i) {
                std::uint64_t* ri = m.row((std::size_t)i);
                if (bit_at(ri, col))
                    for (std::size_t k = w0; k < words; ++k) ri[k] ^= pr[k];
            }
        } else {
            for (std::size_t i = rank + 1; i < m.rows; ++i) {
                std::uint64_t* ri = m.row(i);
                if (bit_at(ri, col))
                    for (std::size_t k = w0; k < words; ++k) ri[k] ^= pr[k];
            }
        }
        ++rank;
    }
    return rank;
}

template <bool Parallel>
std::vector<std::size_t> eliminate_rref(F2Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && !bit_at(m.row(piv), col)) ++piv;
        if (piv == m.rows) continue;
        m.swap_rows(rank, piv);
        const std::uint64_t* pr = m.row(rank);
        const std::size_t words = m.words;
        const std::size_t w0 = col >> 6;
        if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
            for (long long i = 0; i < (long long)m.rows; ++i) {
                if ((std::size_t)i == rank) continue;
                std::uint64_t* ri = m.row((std::size_t)i);
                if (bit_at(ri, col))
                    for (std::size_t k = w0; k < words; ++k) ri[k] ^= pr[k];
            }
        } else {
            for (std::size_t i = 0; i < m.rows; ++i) {
                if (i == rank) continue;
                std::uint64_t* ri = m.row(i);
                if (bit_at(ri, col))
                    for (std::size_t k = w0; k < words; ++k) ri[k] ^= pr[k];
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

} // namespace

std::size_t rank_f2_serial(F2Matrix m) { return eliminate_rank<false>(m); }

std::size_t rank_f2_parallel(F2Matrix m) {
#ifdef _OPENMP
    return eliminate_rank<true>(m);
#else
    return eliminate_rank<false>(m);
#endif
}

std::size_t rank_f2(const F2Matrix& m) {
    if (m.rows * m.words >= kParallelCutoff) return rank_f2_parallel(m);
    return rank_f2_serial(m);
}

std::vector<std::size_t> rref_inplace(F2Matrix& m, bool use_parallel) {
#ifdef _OPENMP
    if (use_parallel) return eliminate_rref<true>(m);
#endif
    (void)use_parallel;
    return eliminate_rref<false>(m);
}

std::vector<std::size_t> rref_inplace(F2Matrix& m) {
    return rref_inplace(m, m.rows * m.words >= kParallelCutoff);
}

std::vector<F2Vec> kernel_basis(const F2Matrix& m) {
    F2Matrix r = m;
    std::vector<std::size_t> pivots = rref_inplace(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<F2Vec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        F2Vec v(m.cols);
        v.set(f, true);
        for (std::size_t p = 0; p < pivots.size(); ++p)
            if (r.get(p, f)) v.set(pivots[p], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<F2Vec> solve(const F2Matrix& m, const F2Vec& b) {
    if (b.n != m.rows) throw SemanticError("solve: dimension mismatch");
    F2Matrix aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const std::uint64_t* s = m.row(i);
        std::uint64_t* d = aug.row(i);
        for (std::size_t k = 0; k < m.words; ++k) d[k] = s[k];
        if (b.get(i)) aug.set(i, m.cols, true);
    }
    std::vector<std::size_t> pivots = rref_inplace(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    F2Vec x(m.cols);
    for (std::size_t p = 0; p < pivots.size(); ++p)
        if (aug.get(p, m.cols)) x.set(pivots[p], true);
    return x;
}

F2Matrix mul(const F2Matrix& a, const F2Matrix& b) {
    if (a.cols != b.rows) throw SemanticError("mul: dimension mismatch");
    F2Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        std::uint64_t* ci = c.row(i);
        const std::uint64_t* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            if ((ai[k >> 6] >> (k & 63)) & 1u) {
                const std::uint64_t* bk = b.row(k);
                for (std::size_t t = 0; t < b.words; ++t) ci[t] ^= bk[t];
            }
        }
    }
    return c;
}

F2Matrix add(const F2Matrix& a, const F2Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw SemanticError("add: dimension mismatch");
    F2Matrix c = a;
    for (std::size_t k = 0; k < c.data.size(); ++k) c.data[k] ^= b.data[k];
    return c;
}

F2Matrix transpose(const F2Matrix& a) {
    F2Matrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.words; ++k) {
            std::uint64_t word = a.row(i)[k];
            while (word) {
                int b = std::countr_zero(word);
                word &= word - 1;
                t.set(std::size_t(k * 64 + b), i, true);
            }
        }
    return t;
}

std::optional<F2Matrix> inverse(const F2Matrix& a) {
    if (a.rows != a.cols) return std::nullopt;
    std::size_t n = a.rows;
    F2Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (a.get(i, j)) aug.set(i, j, true);
        aug.set(i, n + i, true);
    }
    std::vector<std::size_t> pivots = rref_inplace(aug);
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    F2Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (aug.get(i, n + j)) inv.set(i, j, true);
    return inv;
}

F2Vec apply(const F2Matrix& m, const F2Vec& v) {
    if (v.n != m.cols) throw SemanticError("apply: dimension mismatch");
    F2Vec out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::uint64_t acc = 0;
        const std::uint64_t* r = m.row(i);
        for (std::size_t k = 0; k < m.words; ++k) acc ^= r[k] & v.w[k];
        if (std::popcount(acc) & 1) out.set(i, true);
    }
    return out;
}

F2Matrix submatrix(const F2Matrix& m, const std::vector<std::size_t>& row_ids,
                   const std::vector<std::size_t>& col_ids) {
    F2Matrix s(row_ids.size(), col_ids.size());
    for (std::size_t i = 0; i < row_ids.size(); ++i)
        for (std::size_t j = 0; j < col_ids.size(); ++j)
            if (m.get(row_ids[i], col_ids[j])) s.set(i, j, true);
    return s;
}

F2Matrix from_columns(const std::vector<F2Vec>& cols, std::size_t nrows) {
    F2Matrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < nrows; ++i)
            if (cols[j].get(i)) m.set(i, j, true);
    return m;
}

F2Matrix from_rows(const std::vector<F2Vec>& rows, std::size_t ncols) {
    F2Matrix m(rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

std::size_t homology_ranks_f2(const F2Matrix& boundary_in, const F2Matrix& boundary_out) {
    if (boundary_out.cols != boundary_in.rows)
        throw SemanticError("homology_ranks: boundary dimensions do not compose");
    if (!mul(boundary_out, boundary_in).is_zero())
        throw SemanticError("homology_ranks: not a complex");
    std::size_t dim = boundary_out.cols;
    return (dim - rank_f2(boundary_out)) - rank_f2(boundary_in);
}

} // namespace cuphom
