#include "cuphom/cupform.hpp"
#include "cuphom/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>

namespace cuphom {

namespace {

Mask triple_mask(int i, int j, int k, int ell) {
    if (!(1 <= i && i < j && j < k && k <= ell))
        throw SemanticError("triple indices must satisfy 1 <= i < j < k <= ell");
    return (Mask(1) << (i - 1)) | (Mask(1) << (j - 1)) | (Mask(1) << (k - 1));
}

} // namespace

void ThreeForm::set(int i, int j, int k, long long c) {
    add(triple_mask(i, j, k, ell), c - get(i, j, k));
}

long long ThreeForm::get(int i, int j, int k) const {
    auto it = triples.find(triple_mask(i, j, k, ell));
    return it == triples.end() ? 0 : it->second;
}

void ThreeForm::add(Mask t, long long c) {
    if (std::popcount((std::uint32_t)t) != 3 || (t >> ell) != 0)
        throw SemanticError("three-form key must be a 3-subset of {1..ell}");
    if (c == 0) return;
    auto it = triples.find(t);
    if (it == triples.end()) {
        triples.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second == 0) triples.erase(it);
}

AltForm ThreeForm::as_altform() const {
    AltForm f;
    f.ell = ell;
    f.k = 3;
    for (const auto& [t, c] : triples) f.add_term(t, c);
    return f;
}

AltForm ThreeForm::as_altform_mod2() const {
    AltForm f;
    f.ell = ell;
    f.k = 3;
    for (const auto& [t, c] : triples)
        if (c % 2 != 0) f.add_term(t, 1);
    return f;
}

bool operator==(const ThreeForm& a, const ThreeForm& b) {
    return a.ell == b.ell && a.triples == b.triples;
}

Multivector contract(const ThreeForm& mu, const Multivector& x) {
    return contract(x.ring == Ring::F2 ? mu.as_altform_mod2() : mu.as_altform(), x);
}

std::size_t complexity(const ThreeForm& mu) { return mu.triples.size(); }

ThreeForm connect_sum(const ThreeForm& a, const ThreeForm& b) {
    if (a.ell != b.ell) throw SemanticError("connect_sum: mismatched ell");
    ThreeForm out = a;
    for (const auto& [t, c] : b.triples) out.add(t, c);
    return out;
}

ThreeForm component_part(const ThreeForm& mu, int r) {
    if (r < 1 || r > mu.ell) throw SemanticError("component_part: index out of range");
    ThreeForm out(mu.ell);
    Mask bit = Mask(1) << (r - 1);
    for (const auto& [t, c] : mu.triples)
        if (t & bit) out.add(t, c);
    return out;
}

ThreeForm component_complement(const ThreeForm& mu, int r) {
    if (r < 1 || r > mu.ell) throw SemanticError("component_part: index out of range");
    ThreeForm out(mu.ell);
    Mask bit = Mask(1) << (r - 1);
    for (const auto& [t, c] : mu.triples)
        if (!(t & bit)) out.add(t, c);
    return out;
}

std::pair<ThreeForm, ThreeForm> split_component(const ThreeForm& mu, int r) {
    ThreeForm part = component_part(mu, r);
    if (part.triples.size() < 2)
        throw SemanticError("split_component: no reduction available at this component");
    // Isolate the lexicographically last triple containing r (largest mask).
    Mask last = part.triples.rbegin()->first;
    long long c = part.triples.rbegin()->second;
    ThreeForm isolated(mu.ell);
    isolated.add(last, c);
    ThreeForm rest = mu;
    rest.add(last, -c);
    return {rest, isolated};
}

std::size_t ReductionNode::depth() const {
    if (kind == Kind::Leaf) return 0;
    return 1 + std::max(left->depth(), right->depth());
}

void ReductionNode::leaves(std::vector<const ReductionNode*>& out) const {
    if (kind == Kind::Leaf) {
        out.push_back(this);
        return;
    }
    left->leaves(out);
    right->leaves(out);
}

std::unique_ptr<ReductionNode> reduction_trace(const ThreeForm& mu) {
    auto node = std::make_unique<ReductionNode>();
    node->form = mu;
    if (complexity(mu) <= 1) return node;

    // A component shared by two triples allows the knot split; otherwise the
    // triples are pairwise disjoint and the last one splits off geometrically.
    int split_r = 0;
    for (int r = 1; r <= mu.ell && !split_r; ++r)
        if (component_part(mu, r).triples.size() >= 2) split_r = r;

    ThreeForm a(mu.ell), b(mu.ell);
    if (split_r) {
        auto [rest, isolated] = split_component(mu, split_r);
        a = std::move(rest);
        b = std::move(isolated);
        node->kind = ReductionNode::Kind::KnotSplit;
        node->r = split_r;
    } else {
        Mask last = mu.triples.rbegin()->first;
        long long c = mu.triples.rbegin()->second;
        b = ThreeForm(mu.ell);
        b.add(last, c);
        a = mu;
        a.add(last, -c);
        node->kind = ReductionNode::Kind::DisjointSplit;
    }
    node->left = reduction_trace(a);
    node->right = reduction_trace(b);
    return node;
}

bool LinkModel::homologically_split() const {
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j)
            if (i != j && linking[i][j] != 0) return false;
    return true;
}

namespace {

void check_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                const std::vector<std::string>& required, const char* ctx) {
    if (!j.is_object()) throw ParseError(std::string(ctx) + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ParseError(std::string(ctx) + ": unknown field '" + it.key() + "'");
    for (const auto& k : required)
        if (!j.contains(k))
            throw ParseError(std::string(ctx) + ": missing field '" + k + "'");
}

} // namespace

ThreeForm threeform_from_json(const nlohmann::json& j) {
    check_keys(j, {"ell", "triples", "linking"}, {"ell", "triples"}, "three-form");
    if (!j["ell"].is_number_integer()) throw ParseError("three-form: 'ell' must be an integer");
    int ell = j["ell"].get<int>();
    if (ell < 0 || ell > 16)
        throw SemanticError("three-form: ell out of supported range [0, 16]");
    ThreeForm mu(ell);
    if (!j["triples"].is_array()) throw ParseError("three-form: 'triples' must be an array");
    for (const auto& e : j["triples"]) {
        if (!e.is_array() || e.size() != 4)
            throw ParseError("three-form: each triple must be [i, j, k, coeff]");
        for (const auto& x : e)
            if (!x.is_number_integer()) throw ParseError("three-form: triple entries must be integers");
        int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
        long long c = e[3].get<long long>();
        if (!(1 <= i && i < jj && jj < k && k <= ell))
            throw SemanticError("three-form: indices must satisfy 1 <= i < j < k <= ell");
        if (c == 0) throw SemanticError("three-form: zero coefficients must be omitted");
        if (mu.get(i, jj, k) != 0) throw SemanticError("three-form: duplicate triple key");
        mu.set(i, jj, k, c);
    }
    return mu;
}

nlohmann::json threeform_to_json(const ThreeForm& mu) {
    nlohmann::json triples = nlohmann::json::array();
    for (const auto& [t, c] : mu.triples) {
        std::vector<int> idx;
        for (int b = 0; b < mu.ell; ++b)
            if (t & (Mask(1) << b)) idx.push_back(b + 1);
        triples.push_back({idx[0], idx[1], idx[2], c});
    }
    return {{"ell", mu.ell}, {"triples", triples}};
}

LinkModel linkmodel_from_json(const nlohmann::json& j) {
    LinkModel lm;
    lm.milnor = threeform_from_json(j);
    lm.ell = lm.milnor.ell;
    lm.linking.assign(lm.ell, std::vector<long long>(lm.ell, 0));
    if (j.contains("linking")) {
        const auto& lk = j["linking"];
        if (!lk.is_array() || (int)lk.size() != lm.ell)
            throw ParseError("linking: expected an ell x ell matrix");
        for (int i = 0; i < lm.ell; ++i) {
            if (!lk[i].is_array() || (int)lk[i].size() != lm.ell)
                throw ParseError("linking: expected an ell x ell matrix");
            for (int k = 0; k < lm.ell; ++k) {
                if (!lk[i][k].is_number_integer())
                    throw ParseError("linking: entries must be integers");
                lm.linking[i][k] = lk[i][k].get<long long>();
            }
        }
        for (int i = 0; i < lm.ell; ++i) {
            if (lm.linking[i][i] != 0)
                throw SemanticError("linking: diagonal must be zero");
            for (int k = 0; k < lm.ell; ++k)
                if (lm.linking[i][k] != lm.linking[k][i])
                    throw SemanticError("linking: matrix must be symmetric");
        }
    }
    return lm;
}

} // namespace cuphom
