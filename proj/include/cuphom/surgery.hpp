#pragma once

// Model realizations of the surgery formula: Spin^c lattice arithmetic for
// framed links, the integer surgery mapping cone built from model knot
// complex data, and the cup-model hypercube that feeds the spectral
// sequence.  Lattice points live in H(L)_i = lk(K_i, L-K_i)/2 + Z and are
// stored with doubled coordinates.

#include "cuphom/cupform.hpp"
#include "cuphom/f2poly.hpp"
#include "cuphom/hypercube.hpp"
#include "cuphom/intmat.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cuphom {

struct SpincCoord {
    enum class Kind { Finite, PlusInf, MinusInf };
    Kind kind = Kind::Finite;
    long long twice = 0; // doubled coordinate when finite

    static SpincCoord finite(long long twice_) { return {Kind::Finite, twice_}; }
    static SpincCoord plus_inf() { return {Kind::PlusInf, 0}; }
    static SpincCoord minus_inf() { return {Kind::MinusInf, 0}; }
    bool operator==(const SpincCoord&) const = default;
};

using SpincPoint = std::vector<SpincCoord>;

struct FramedLinkLattice {
    int ell = 0;
    std::vector<std::vector<long long>> lambda; // framings on the diagonal

    // Doubled offset of H(L)_i: sum of off-diagonal entries in row i.
    long long doubled_offset(int i) const;
};

FramedLinkLattice make_lattice(std::vector<std::vector<long long>> lambda);

struct SpincClasses {
    std::size_t b1 = 0;
    std::vector<SpincPoint> torsion_reps; // each flagged torsion by construction
    Int torsion_count = 1;
};

// Classes of H(L)/Lambda via Smith normal form of Lambda; only the torsion
// classes (fixed under the free directions) are enumerated.
SpincClasses spinc_classes(const FramedLinkLattice& l);

// Whether s - t lies in the row lattice of Lambda.
bool same_spinc_class(const FramedLinkLattice& l, const SpincPoint& s, const SpincPoint& t);

// Oriented sublink: (component index, +-1).
using OrientedSublink = std::vector<std::pair<int, int>>;

// psi^M(s) = s - [M]/2: drops the M coordinates and shifts the rest by the
// linking with the dropped components; +-infinity passes through.
SpincPoint psi_map_lattice(const SpincPoint& s, const OrientedSublink& m,
                           const FramedLinkLattice& l);

// --- model knot complexes ----------------------------------------------------

struct KnotGenerator {
    std::string name;
    int alexander = 0;
    int maslov = 0;
};

struct KnotArrow {
    std::size_t from = 0, to = 0;
    int nz = 0, nw = 0;
};

struct ModelKnotComplex {
    std::vector<KnotGenerator> gens;
    std::vector<KnotArrow> arrows;

    int max_abs_alexander() const;
};

// Validates: A(x)-A(y) = nz-nw per arrow, Alexander multiset symmetric about
// zero, U=1 specialization squares to zero.
void validate_knot(const ModelKnotComplex& k);

// {"generators":[{"name","A","M"}], "differential":[{"from","to","nz","nw"}]}
ModelKnotComplex knot_from_json(const nlohmann::json& j);

struct SValue {
    enum class Kind { Finite, PlusInf, MinusInf };
    Kind kind = Kind::Finite;
    long long v = 0;

    static SValue finite(long long s) { return {Kind::Finite, s}; }
    static SValue plus_inf() { return {Kind::PlusInf, 0}; }
    static SValue minus_inf() { return {Kind::MinusInf, 0}; }
};

// A^infty(s): U-exponent E_s = (A(x)-s) v 0 - (A(y)-s) v 0 + nw on each
// arrow; nw at s = +infty, nz at s = -infty.  d^2 = 0 is verified.
LaurentMatrix a_infinity(const ModelKnotComplex& k, SValue s);

// I^{+-K}_s = diag(U^{(+-(A(x)-s)) v 0}); chain map property is verified.
LaurentMatrix inclusion_map(const ModelKnotComplex& k, long long s, int sign);

// Row functional A^infty(+-infty) -> F2[U,U^-1] inducing an isomorphism on
// homology; requires the +-infty complex to have homology of rank one.
LaurentMatrix default_destabilization(const ModelKnotComplex& k, int sign);

struct SurgeryClassData {
    long long class_rep = 0;
    std::vector<long long> a_slots, b_slots;
    LaurentMatrix d;
    std::size_t rank = 0;
};

struct SurgeryComplexSlice {
    long long framing = 0;
    long long truncation = 0;
    std::vector<SurgeryClassData> classes;
    bool truncation_stable = true;
};

struct Destabilizations {
    std::optional<LaurentMatrix> plus, minus; // defaults when absent
};

// Mapping cone over s in [-S, S]: A(s) -> B(s) via Phi^+ and A(s) -> B(s+n)
// via Phi^-; homology rank reported per Spin^c class (s mod n, or each s for
// n = 0).  Ranks are recomputed at S+3 and must agree.
SurgeryComplexSlice knot_surgery_complex(const ModelKnotComplex& k, long long n,
                                         const Destabilizations& dest = {},
                                         std::optional<long long> truncation = std::nullopt);

// --- cup-model cube -----------------------------------------------------------

// One generator per cube vertex, maps of length 3 supported on the triples
// of mu (mod 2); the only nontrivial relation is forced by mu ^ mu = 0 mod 2.
HyperboxComplex build_cup_model_cube(const ThreeForm& mu);

struct Perturbation {
    Vertex eps;
    StepMask step; // ||step|| >= 4
    F2Matrix m;
};

// Adds higher-diagonal entries; rejects with the violated relation.
HyperboxComplex perturb_model(const HyperboxComplex& h, const std::vector<Perturbation>& extra);

} // namespace cuphom
