#pragma once

// Homology of finite F2 chain complexes with explicit, reproducible class
// representatives.  A complex here is a square matrix d with d*d = 0 acting
// on an unrolled basis; graded complexes elsewhere assemble their blocks into
// this form.  Representatives extend an echelon basis of the boundary space
// to one of the cycle space, so class_of and induced_map are deterministic.

#include "cuphom/f2.hpp"

#include <vector>

namespace cuphom {

struct HomologyData {
    std::size_t dim = 0;             // ambient dimension
    std::vector<F2Vec> reps;         // homology class representatives
    std::vector<F2Vec> bnd_rows;     // echelon basis of the boundary space
    std::vector<std::size_t> bnd_piv;
    std::vector<std::size_t> rep_piv;

    std::size_t rank() const { return reps.size(); }
};

// d must be square with d*d = 0 (checked).
HomologyData homology(const F2Matrix& d);

// Coordinates of the class of a cycle x in the representative basis.
// Throws SemanticError when x is not a cycle of the complex.
F2Vec class_of(const HomologyData& h, F2Vec x);

// Matrix of the map induced on homology by a chain map f.
F2Matrix induced_map(const F2Matrix& f, const HomologyData& src, const HomologyData& dst);

// dim ker d - rank d for a square differential; checks d*d = 0.
std::size_t homology_rank_of(const F2Matrix& d);

// Mapping cone of f : (V, dv) -> (W, dw); block matrix [[dv,0],[f,dw]].
F2Matrix cone_matrix(const F2Matrix& dv, const F2Matrix& dw, const F2Matrix& f);

// f is a quasi-isomorphism iff its cone is acyclic.
bool is_quasi_iso(const F2Matrix& dv, const F2Matrix& dw, const F2Matrix& f);

} // namespace cuphom
