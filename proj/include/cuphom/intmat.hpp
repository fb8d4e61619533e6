#pragma once

// Exact integer matrices (arbitrary precision) with Smith normal form and
// fraction-free rank over Q.  SNF tracks both unimodular transforms so
// left * M * right == diag can be checked literally.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace cuphom {

using Int = boost::multiprecision::cpp_int;

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a; // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool is_zero() const;
    static IntMatrix identity(std::size_t n);
};

IntMatrix mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix add(const IntMatrix& x, const IntMatrix& y);

struct SmithForm {
    std::vector<Int> diagonal; // d1 | d2 | ..., nonnegative
    IntMatrix left, right;     // unimodular; left * M * right = diag
};

SmithForm smith_normal_form(const IntMatrix& m);

// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rank_bareiss(const IntMatrix& m);

// Rank over Q, tiered: Bareiss with per-row content reduction at desk scale,
// multi-modular maximum beyond it.  `certified` is false only on the modular
// path.
struct QRank {
    std::size_t rank = 0;
    bool certified = true;
};
QRank rank_q(const IntMatrix& m);

// dim ker(boundary_out) - rank(boundary_in) over Q; requires composition 0.
std::size_t homology_ranks_q(const IntMatrix& boundary_in, const IntMatrix& boundary_out);

// Deterministic Miller-Rabin (exact for 64-bit inputs).
bool miller_rabin_is_prime(std::uint64_t n);

// Inverse of a unimodular integer matrix (det = +-1); throws otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

} // namespace cuphom
