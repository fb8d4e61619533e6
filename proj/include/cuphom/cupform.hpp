#pragma once

// Triple cup product forms on ell generators and the link-level bookkeeping
// around them: complexity, connect-sum additivity, and the component
// splitting step that drives the complexity induction.  Coefficients are
// kept over Z; reduction mod 2 happens when complexes are assembled.

#include "cuphom/exterior.hpp"

#include <nlohmann/json_fwd.hpp>

#include <memory>
#include <string>
#include <vector>

namespace cuphom {

struct ThreeForm {
    int ell = 0;
    std::map<Mask, long long> triples; // keys have exactly three bits set

    ThreeForm() = default;
    explicit ThreeForm(int ell_) : ell(ell_) {}

    // 1-based strictly increasing indices.
    void set(int i, int j, int k, long long c);
    long long get(int i, int j, int k) const;
    void add(Mask t, long long c);
    bool is_zero() const { return triples.empty(); }

    AltForm as_altform() const;         // k = 3, Z coefficients
    AltForm as_altform_mod2() const;    // coefficients reduced mod 2
};

bool operator==(const ThreeForm& a, const ThreeForm& b);

// Interior multiplication against the three-form, in the ring of x
// (coefficients reduced mod 2 first when x lives over F2).
Multivector contract(const ThreeForm& mu, const Multivector& x);

std::size_t complexity(const ThreeForm& mu);
ThreeForm connect_sum(const ThreeForm& a, const ThreeForm& b);

// Restriction to triples containing component r (1-based).
ThreeForm component_part(const ThreeForm& mu, int r);
ThreeForm component_complement(const ThreeForm& mu, int r);

// Splits off the lexicographically last triple containing r.  Requires r to
// sit in at least two nonzero triples; both pieces have strictly smaller
// complexity and they sum back to mu exactly.
std::pair<ThreeForm, ThreeForm> split_component(const ThreeForm& mu, int r);

struct ReductionNode {
    enum class Kind { Leaf, KnotSplit, DisjointSplit };
    Kind kind = Kind::Leaf;
    ThreeForm form;
    int r = 0; // split index for KnotSplit
    std::unique_ptr<ReductionNode> left, right;

    std::size_t depth() const;
    void leaves(std::vector<const ReductionNode*>& out) const;
};

// Split tree terminating at forms with complexity <= 1.
std::unique_ptr<ReductionNode> reduction_trace(const ThreeForm& mu);

// Homologically split link: pairwise linking all zero.
struct LinkModel {
    int ell = 0;
    std::vector<std::vector<long long>> linking; // symmetric, zero diagonal
    ThreeForm milnor;

    bool homologically_split() const;
};

// JSON: {"ell": n, "triples": [[i, j, k, coeff], ...]}, strict.
ThreeForm threeform_from_json(const nlohmann::json& j);
nlohmann::json threeform_to_json(const ThreeForm& mu);

// Same schema plus an optional "linking" matrix.
LinkModel linkmodel_from_json(const nlohmann::json& j);

} // namespace cuphom
