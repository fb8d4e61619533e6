#pragma once

// Bit-packed linear algebra over GF(2).  Rows are arrays of 64-bit words and
// elimination works by whole-word XOR.  Every routine here comes in a serial
// flavor and an OpenMP flavor; the unsuffixed entry points dispatch on size.
// Pivoting is deterministic (first nonzero in column order), so kernel bases
// and echelon forms are reproducible across runs and across the two kernels.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cuphom {

struct F2Vec {
    std::size_t n = 0;
    std::vector<std::uint64_t> w;

    F2Vec() = default;
    explicit F2Vec(std::size_t n_) : n(n_), w((n_ + 63) / 64, 0) {}

    bool get(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w[i >> 6] ^= std::uint64_t(1) << (i & 63); }
    void xor_in(const F2Vec& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
    bool is_zero() const {
        for (auto x : w) if (x) return false;
        return true;
    }
    std::size_t popcount() const;
    bool operator==(const F2Vec& o) const { return n == o.n && w == o.w; }
};

struct F2Matrix {
    std::size_t rows = 0, cols = 0, words = 0;
    std::vector<std::uint64_t> data; // row-major, words per row

    F2Matrix() = default;
    F2Matrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), words((c + 63) / 64), data(r * words, 0) {}

    std::uint64_t* row(std::size_t i) { return data.data() + i * words; }
    const std::uint64_t* row(std::size_t i) const { return data.data() + i * words; }

    bool get(std::size_t i, std::size_t j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool v) {
        std::uint64_t m = std::uint64_t(1) << (j & 63);
        if (v) row(i)[j >> 6] |= m; else row(i)[j >> 6] &= ~m;
    }
    void flip(std::size_t i, std::size_t j) { row(i)[j >> 6] ^= std::uint64_t(1) << (j & 63); }

    void xor_rows(std::size_t dst, std::size_t src) {
        std::uint64_t* d = row(dst);
        const std::uint64_t* s = row(src);
        for (std::size_t k = 0; k < words; ++k) d[k] ^= s[k];
    }
    void swap_rows(std::size_t a, std::size_t b);

    F2Vec get_row(std::size_t i) const;
    void set_row(std::size_t i, const F2Vec& v);
    F2Vec get_col(std::size_t j) const;

    bool is_zero() const;
    bool operator==(const F2Matrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }

    static F2Matrix identity(std::size_t n);
};

// --- elimination kernels ---------------------------------------------------

// Forward elimination, rank only.
std::size_t rank_f2_serial(F2Matrix m);
std::size_t rank_f2_parallel(F2Matrix m);
std::size_t rank_f2(const F2Matrix& m);

// Full reduced row echelon form in place; returns pivot columns in order.
std::vector<std::size_t> rref_inplace(F2Matrix& m, bool use_parallel);
std::vector<std::size_t> rref_inplace(F2Matrix& m);

// Basis of {v : m v = 0}, echelonized, deterministic.
std::vector<F2Vec> kernel_basis(const F2Matrix& m);

// One solution of m x = b, or nullopt.
std::optional<F2Vec> solve(const F2Matrix& m, const F2Vec& b);

// --- assorted matrix algebra ------------------------------------------------

F2Matrix mul(const F2Matrix& a, const F2Matrix& b);
F2Matrix add(const F2Matrix& a, const F2Matrix& b);
F2Matrix transpose(const F2Matrix& a);
std::optional<F2Matrix> inverse(const F2Matrix& a);
F2Vec apply(const F2Matrix& m, const F2Vec& v);

F2Matrix submatrix(const F2Matrix& m, const std::vector<std::size_t>& row_ids,
                   const std::vector<std::size_t>& col_ids);
F2Matrix from_columns(const std::vector<F2Vec>& cols, std::size_t nrows);
F2Matrix from_rows(const std::vector<F2Vec>& rows, std::size_t ncols);

// dim ker(boundary_out) - rank(boundary_in); throws SemanticError unless
// boundary_out * boundary_in = 0.
std::size_t homology_ranks_f2(const F2Matrix& boundary_in, const F2Matrix& boundary_out);

} // namespace cuphom
