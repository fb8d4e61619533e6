#pragma once

// Hyperboxes and hypercubes of F2 chain complexes.  A box of size d has a
// based complex at each lattice point and maps D^{eps'} for unit steps
// eps' in {0,1}^n, subject to  sum_{gamma <= eps'} D^{eps'-gamma} D^{gamma} = 0.
// Face complexes and cancellation work on vertex-index subsets of one shared
// box rather than copies.

#include "cuphom/f2.hpp"
#include "cuphom/homology.hpp"

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <map>
#include <vector>

namespace cuphom {

using Vertex = std::vector<int>;
using StepMask = std::uint32_t; // bit per axis

struct VertexComplex {
    std::size_t dim = 0;
    std::vector<int> grading; // relative; empty means all zero
    F2Matrix d0;              // dim x dim
};

struct HyperboxComplex {
    std::vector<int> size; // d_1..d_n
    std::vector<VertexComplex> verts;
    std::map<std::pair<std::size_t, StepMask>, F2Matrix> maps;

    explicit HyperboxComplex(std::vector<int> size_ = {});

    std::size_t axes() const { return size.size(); }
    std::size_t vertex_count() const { return verts.size(); }
    std::size_t vertex_id(const Vertex& v) const;
    Vertex vertex_at(std::size_t id) const;
    bool in_box(const Vertex& v) const;
    bool is_hypercube() const;

    VertexComplex& vertex(const Vertex& v) { return verts[vertex_id(v)]; }
    const VertexComplex& vertex(const Vertex& v) const { return verts[vertex_id(v)]; }

    // D^{step} out of vertex id; step 0 is the internal differential.
    const F2Matrix* find_map(std::size_t id, StepMask step) const;
    F2Matrix map_or_zero(std::size_t id, StepMask step) const;
    void set_map(std::size_t id, StepMask step, F2Matrix m);
    void set_map(const Vertex& v, StepMask step, F2Matrix m);
};

struct RelationViolation {
    Vertex eps;
    StepMask step;
};

std::vector<RelationViolation> check_relations(const HyperboxComplex& h);

struct TotalComplex {
    F2Matrix d;
    std::vector<std::size_t> vertex_of; // basis element -> vertex id
    std::vector<int> weight_of;         // ||eps||
    std::vector<int> grading_of;
    std::vector<std::size_t> offset;    // vertex id -> first basis index (SIZE_MAX if absent)

    std::size_t dim() const { return d.rows; }
    std::size_t homology_rank() const;
};

// Vertex-index subset of a box; faces and cancellations live here.
struct LatticeView {
    const HyperboxComplex* box = nullptr;
    std::vector<std::size_t> vertices; // sorted ids

    static LatticeView full(const HyperboxComplex& h);
};

// Block restriction of the total differential to the view; checks d^2 = 0.
TotalComplex total_of(const LatticeView& view);

// Requires a hypercube whose relations hold.
TotalComplex total_complex(const HyperboxComplex& h);

// face[i] in {0..d_i} fixes axis i, -1 leaves it free.
LatticeView face_view(const HyperboxComplex& h, const std::vector<int>& face);
TotalComplex face_complex(const HyperboxComplex& h, const std::vector<int>& face);

// Removes the pairs (eps, eps + tau_axis) selected by the predicate after
// verifying each selected edge map is a quasi-isomorphism; preserves the
// total homology rank (checked).
LatticeView cancel_acyclic_edge(const LatticeView& view, int axis,
                                const std::function<bool(const Vertex&)>& pred);
LatticeView cancel_acyclic_edge(const HyperboxComplex& h, int axis,
                                const std::function<bool(const Vertex&)>& pred);

// Hyperbox of dimension <= 2 with relations holding -> hypercube with the
// corner complexes; the (2,1) diagonal is D^{10} D^{11} + D^{11} D^{10}.
HyperboxComplex compress(const HyperboxComplex& h);

// Merge two consecutive steps (pos, pos+1) along an axis; iterating these
// merges in any order reproduces compress.
HyperboxComplex compress_step(const HyperboxComplex& h, int axis, int pos);

bool boxes_equal(const HyperboxComplex& a, const HyperboxComplex& b);

struct ChainComplex {
    F2Matrix d; // square, d^2 = 0
};
ChainComplex make_complex(F2Matrix d);

struct MappingCone {
    ChainComplex source, target;
    F2Matrix f; // chain map, verified by make_cone
};
MappingCone make_cone(ChainComplex source, ChainComplex target, F2Matrix f);

// 2 dim H(V) - 2 rk f_* when the homologies match in dimension, cross-checked
// against the direct cone homology; otherwise falls back to the direct
// computation.
std::size_t cone_rank(const MappingCone& m);

// F + G J^{-1} K over F2; throws SemanticError when J is singular.
F2Matrix gluing_reduce(const F2Matrix& f, const F2Matrix& g, const F2Matrix& j,
                       const F2Matrix& k);

// JSON: {"size": [...], "vertices": {"010": {"dim": n, "grading": [...],
// "maps": {"001": [[row, col], ...]}}}}, strict.
HyperboxComplex hyperbox_from_json(const nlohmann::json& j);

} // namespace cuphom
