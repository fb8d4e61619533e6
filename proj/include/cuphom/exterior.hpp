#pragma once

// Exterior algebra on ell generators over F2, Z or Q.  Basis elements are
// subsets of {1..ell} stored as bitmasks (bit i-1 = generator i); the basis
// of a graded piece is ordered by increasing bitmask value.  Contraction by
// an alternating k-form uses the shuffle sign that moves the contracted
// slots to the front, so iota_a . iota_b = iota_{b ^ a} holds on the nose
// over Z, and a 3-form squares to zero.

#include <cstdint>
#include <cstddef>
#include <map>
#include <vector>

namespace cuphom {

enum class Ring { F2, Z, Q };

using Mask = std::uint32_t;

// Sign (+1/-1) of the shuffle sorting (sorted T, sorted R) for disjoint T, R.
int shuffle_sign(Mask t, Mask r);

struct Multivector {
    int ell = 0;
    Ring ring = Ring::F2;
    std::map<Mask, long long> coeffs; // zero coefficients absent

    Multivector() = default;
    Multivector(int ell_, Ring ring_) : ell(ell_), ring(ring_) {}

    void add_term(Mask s, long long c);
    long long coeff(Mask s) const;
    bool is_zero() const { return coeffs.empty(); }
    static Multivector basis(int ell, Ring ring, Mask s);
};

Multivector add(const Multivector& a, const Multivector& b);
Multivector reduce_mod2(const Multivector& a);
bool operator==(const Multivector& a, const Multivector& b);

// Alternating k-form as a coefficient table on k-subsets.
struct AltForm {
    int ell = 0;
    int k = 0;
    std::map<Mask, long long> coeff;

    void add_term(Mask t, long long c);
    long long get(Mask t) const;
    bool is_zero() const { return coeff.empty(); }
};

// Wedge product; shuffle signs over Z/Q, signs vanish over F2.
Multivector wedge(const Multivector& a, const Multivector& b);

// Interior multiplication by a k-form: degree drops by exactly k.
Multivector contract(const AltForm& f, const Multivector& x);

// Wedge of two forms (k1+k2-form); for two 3-forms this is the 6-form whose
// coefficient on U is the signed sum over 3+3 partitions of U.
AltForm form_wedge(const AltForm& a, const AltForm& b);

// Graded piece bookkeeping: masks of cardinality `degree`, ascending.
struct GradedPiece {
    int degree = 0;
    std::vector<Mask> basis;
};
GradedPiece degree_basis(int ell, int degree);

} // namespace cuphom
