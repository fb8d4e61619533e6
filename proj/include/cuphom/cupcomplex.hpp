#pragma once

// The cup homology complex: Lambda^*(R^ell) with differential contraction by
// a triple cup product form, U never materialized.  The differential pairs an
// exterior-degree drop of 3 with one U^{-1} and is U-equivariant, so the
// Laurent-module rank equals the plain dimension of H(Lambda^*, iota_mu);
// the UConvention marker only records the grading story for reports.

#include "cuphom/cupform.hpp"
#include "cuphom/f2.hpp"
#include "cuphom/homology.hpp"
#include "cuphom/intmat.hpp"

#include <optional>

namespace cuphom {

struct UConvention {
    int u_homological_degree = -2;
    int d3_u_power = -1;
};

struct CupComplex {
    int ell = 0;
    ThreeForm mu;
    Ring ring = Ring::F2;
    UConvention u_convention{};

    explicit CupComplex(ThreeForm mu_, Ring ring_ = Ring::F2)
        : ell(mu_.ell), mu(std::move(mu_)), ring(ring_) {}
};

// Matrix of iota_mu from Lambda^i to Lambda^{i-3}, bitmask basis order.
F2Matrix differential_matrix_f2(const ThreeForm& mu, int degree);
IntMatrix differential_matrix_int(const ThreeForm& mu, int degree);

// Full differential on the unrolled 2^ell basis (mod 2).
F2Matrix full_differential_f2(const ThreeForm& mu);
IntMatrix full_differential_int(const ThreeForm& mu);

struct RankReport {
    std::size_t rank_f2 = 0;
    std::size_t rank_q = 0;
    std::vector<std::size_t> by_degree; // F2 homology dimension per exterior degree
    bool two_torsion_detected = false;
    bool q_certified = true;
};

// Total homology rank over both rings; by-degree profile over F2.
RankReport homology_rank(const CupComplex& c);

// F2 side only (by-degree profile and total).
std::pair<std::size_t, std::vector<std::size_t>> homology_rank_f2(const ThreeForm& mu);
std::size_t homology_rank_q(const ThreeForm& mu, bool* certified = nullptr);

// --- connect-sum calculus ---------------------------------------------------
//
// For two split pieces mu1, mu2 agreeing away from component r, the maps
// (d^{K_i})_* act on the homology of (Lambda^*(indices != r), iota_nu) where
// nu is the common r-free part: inserting x^r and contracting by the
// r-triples of mu_i is contraction by the 2-form mu_i(r,.,.).

struct PsiContext {
    int ell = 0;
    int r = 0;
    HomologyData h;        // homology of the r-free complex
    F2Matrix a_star;       // (d^{K1})_*
    F2Matrix b_star;       // (d^{K2})_*
    F2Matrix dk_star;      // (d^K)_* = (d^{K1} + d^{K2})_*
    F2Matrix psi;          // a* + b* + a* b*
};

PsiContext build_psi_context(const ThreeForm& mu1, const ThreeForm& mu2, int r);

// Matrix of iota_{mu1} + iota_{mu2} + iota_{mu1} o iota_{mu2} on homology.
F2Matrix psi_map(const ThreeForm& mu1, const ThreeForm& mu2, int r);

struct KernelContainment {
    bool contained = true;
    std::optional<F2Vec> witness_class; // class coordinates on failure
};

// Every homology class killed by (d^K)_* must be killed by psi.
KernelContainment kernel_containment_check(const ThreeForm& mu1, const ThreeForm& mu2, int r);

// Disjoint-sum form of a (on ell1) and b (on ell2, shifted).
ThreeForm direct_sum_form(const ThreeForm& a, const ThreeForm& b);

// Product of the two ranks; asserts equality with the direct computation on
// the disjoint sum in both rings.
std::size_t kunneth_rank(const ThreeForm& a, const ThreeForm& b);

} // namespace cuphom
