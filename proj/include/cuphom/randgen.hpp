#pragma once

// Seeded random models: complexes with d^2 = 0, chain maps between them,
// and hyperboxes built from homotopy-commutator edges so the box relations
// hold by construction.  Deterministic for a fixed seed.

#include "cuphom/cupform.hpp"
#include "cuphom/f2.hpp"
#include "cuphom/hypercube.hpp"

#include <random>

namespace cuphom::randgen {

using Rng = std::mt19937_64;

F2Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);
F2Matrix random_invertible(std::size_t n, Rng& rng);

// P S P^-1 with S a block shift; homology dimension n - 2r.
F2Matrix random_differential(std::size_t n, std::size_t r, Rng& rng);

// Uniform random element of the space of chain maps (dW f = f dV).
F2Matrix random_chain_map(const F2Matrix& dv, const F2Matrix& dw, Rng& rng);

ThreeForm random_threeform(int ell, std::size_t max_triples, long long coeff_bound, Rng& rng);

// Split pair (nu + alpha, nu + beta) sharing the r-free part nu.
struct SplitPair {
    ThreeForm mu1, mu2;
    int r = 1;
};
SplitPair random_split_pair(int ell, Rng& rng);

// Valid hyperbox of dimension 1 or 2 (relations hold by construction).
HyperboxComplex random_hyperbox(const std::vector<int>& size, std::size_t max_vertex_dim,
                                Rng& rng);

} // namespace cuphom::randgen
