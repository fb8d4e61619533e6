#pragma once

// Polynomials over F2 in one variable U (dense bits) and Laurent entries
// U^val * p(U).  Matrix rank is taken over the fraction field F2(U), which
// for the surgery complexes equals dimension over the completed ring
// F2[[U,U^-1] (every nonzero Laurent polynomial becomes a unit there).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cuphom {

struct F2Poly {
    std::vector<std::uint64_t> w; // bit i of the stream = coefficient of U^i

    F2Poly() = default;
    static F2Poly zero() { return F2Poly(); }
    static F2Poly one() { return monomial(0); }
    static F2Poly monomial(std::size_t e);

    bool is_zero() const;
    long long degree() const; // -1 for zero
    bool get(std::size_t i) const {
        std::size_t k = i >> 6;
        return k < w.size() && ((w[k] >> (i & 63)) & 1u);
    }
    void set(std::size_t i);
    void trim();

    bool operator==(const F2Poly& o) const;
};

F2Poly add(const F2Poly& a, const F2Poly& b);
F2Poly mul(const F2Poly& a, const F2Poly& b);
F2Poly shift_left(const F2Poly& a, std::size_t k); // multiply by U^k
// Exact division; throws SemanticError if the remainder is nonzero.
F2Poly divide_exact(const F2Poly& a, const F2Poly& b);
std::size_t trailing_zeros(const F2Poly& a); // valuation; 0 for zero input

// U^val * p with p(0) = 1 when nonzero.
struct LaurentPoly {
    F2Poly p;
    long long val = 0;

    static LaurentPoly zero() { return {}; }
    static LaurentPoly monomial(long long e) { return {F2Poly::one(), e}; }
    bool is_zero() const { return p.is_zero(); }
    void normalize();
    bool operator==(const LaurentPoly& o) const { return val == o.val && p == o.p; }
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
std::string to_string(const LaurentPoly& a);

struct LaurentMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<LaurentPoly> a;

    LaurentMatrix() = default;
    LaurentMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    LaurentPoly& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const LaurentPoly& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool is_zero() const;
};

LaurentMatrix mul(const LaurentMatrix& x, const LaurentMatrix& y);
LaurentMatrix add(const LaurentMatrix& x, const LaurentMatrix& y);

F2Poly gcd(const F2Poly& a, const F2Poly& b);
F2Poly mod(const F2Poly& a, const F2Poly& b);

LaurentMatrix transpose(const LaurentMatrix& m);
LaurentMatrix vstack(const LaurentMatrix& top, const LaurentMatrix& bottom);

// Rank over F2(U); fraction-free elimination in F2[U].
std::size_t rank_laurent(const LaurentMatrix& m);

// Basis of {x : m x = 0} over F2(U), scaled to Laurent entries.
std::vector<std::vector<LaurentPoly>> laurent_kernel_basis(const LaurentMatrix& m);

// dim - 2 * rank for a square d with d*d = 0 over the Laurent ring (checked).
std::size_t laurent_homology_rank(const LaurentMatrix& d);

} // namespace cuphom
