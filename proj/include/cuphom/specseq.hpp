#pragma once

// Spectral sequences of finite filtered F2 chain complexes.  Pages are the
// classical subquotients  E_r^p = Z_r^p / (Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1})
// with  Z_r^p = {x in F_p : dx in F_{p-r}},  computed with explicit coset
// representatives chosen by deterministic pivoting.  Convergence is checked
// against total homology directly rather than trusted.

#include "cuphom/cupform.hpp"
#include "cuphom/f2.hpp"
#include "cuphom/hypercube.hpp"

#include <string>
#include <vector>

namespace cuphom {

struct FilteredComplex {
    F2Matrix d;
    std::vector<int> filtration;
    std::vector<int> grading;              // relative homological grading
    std::vector<std::size_t> vertex_of;    // hypercube tags, SIZE_MAX when absent

    int min_filt() const;
    int max_filt() const;
    int depth() const { return max_filt() - min_filt(); }
    std::size_t dim() const { return d.rows; }
};

// Validates d^2 = 0 and that d never increases filtration.
FilteredComplex make_filtered(F2Matrix d, std::vector<int> filtration,
                              std::vector<int> grading = {},
                              std::vector<std::size_t> vertex_of = {});

// eps-filtration F(x) = ell - ||eps||.
FilteredComplex from_hypercube(const TotalComplex& t, int ell);

struct PageLevel {
    int p = 0;
    std::vector<F2Vec> reps; // ambient coordinates
    F2Matrix d_r;            // to the reps basis of level p - r

    // echelon data for class computations
    std::vector<F2Vec> den_rows;
    std::vector<std::size_t> den_piv, rep_piv;
};

struct Page {
    int r = 0;
    int min_p = 0;
    std::vector<PageLevel> levels; // indexed by p - min_p

    const PageLevel* level(int p) const;
    std::size_t total_dim() const;
    std::vector<std::size_t> dims() const;
    bool d_is_zero() const;
};

Page page(const FilteredComplex& fc, int r);

struct CollapseReport {
    bool collapsed = false;       // d_k = 0 for all k >= r
    int first_live_page = 0;      // smallest k >= r with d_k != 0 (0 if none)
    std::size_t e_infinity_total = 0;
    std::size_t total_homology = 0;
};

// E_infinity total always equals total homology; that identity is asserted.
CollapseReport collapse_check(const FilteredComplex& fc, int r);

struct E3Identification {
    bool matches = false;
    std::string detail;
    std::vector<F2Matrix> d3_on_exterior;   // per degree, transported to Lambda basis
    std::vector<F2Matrix> iota_mu;          // per degree
};

// For the cup-model cube only: matches the E_3 basis at level p with
// Lambda^p (generator i present iff eps_i = 0) and compares d_3 with
// contraction by mu.  Rejects inputs that are not model cubes.
E3Identification identify_e3_with_exterior(const FilteredComplex& fc, const ThreeForm& mu);

} // namespace cuphom
