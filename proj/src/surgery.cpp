#include "cuphom/surgery.hpp"
#include "cuphom/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace cuphom {

long long FramedLinkLattice::doubled_offset(int i) const {
    long long s = 0;
    for (int j = 0; j < ell; ++j)
        if (j != i) s += lambda[i][j];
    return s;
}

FramedLinkLattice make_lattice(std::vector<std::vector<long long>> lambda) {
    FramedLinkLattice l;
    l.ell = int(lambda.size());
    for (const auto& row : lambda)
        if ((int)row.size() != l.ell) throw SemanticError("lattice: matrix must be square");
    for (int i = 0; i < l.ell; ++i)
        for (int j = 0; j < l.ell; ++j)
            if (i != j && lambda[i][j] != lambda[j][i])
                throw SemanticError("lattice: linking numbers must be symmetric");
    l.lambda = std::move(lambda);
    return l;
}

SpincClasses spinc_classes(const FramedLinkLattice& l) {
    const int n = l.ell;
    IntMatrix lam(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lam.at(i, j) = l.lambda[i][j];
    SmithForm snf = smith_normal_form(lam);

    SpincClasses out;
    std::size_t rank = 0;
    for (const Int& d : snf.diagonal)
        if (d != 0) ++rank;
    out.b1 = std::size_t(n) - rank;
    for (const Int& d : snf.diagonal)
        if (d != 0) out.torsion_count *= d;

    // Row lattice of Lambda = span of d_i * w_i where w_i are rows of V^{-1};
    // quotient coordinates of x are (x V).  Torsion classes have free
    // coordinates zero and c_i in [0, d_i).
    IntMatrix w = inverse_unimodular(snf.right); // rows w_i
    if (out.torsion_count > 4096)
        throw SemanticError("spinc_classes: torsion part too large to enumerate");

    std::vector<long long> divisors;
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i)
        divisors.push_back(snf.diagonal[i].convert_to<long long>());

    std::vector<long long> counter(divisors.size(), 0);
    for (;;) {
        SpincPoint p(n);
        for (int j = 0; j < n; ++j) {
            Int twice = l.doubled_offset(j);
            for (std::size_t i = 0; i < divisors.size(); ++i)
                if (divisors[i] != 0 && counter[i] != 0)
                    twice += 2 * counter[i] * w.at(i, j);
            p[j] = SpincCoord::finite(twice.convert_to<long long>());
        }
        out.torsion_reps.push_back(std::move(p));

        std::size_t k = 0;
        for (; k < divisors.size(); ++k) {
            if (divisors[k] == 0) continue;
            if (++counter[k] < divisors[k]) break;
            counter[k] = 0;
        }
        if (k == divisors.size()) break;
    }
    return out;
}

bool same_spinc_class(const FramedLinkLattice& l, const SpincPoint& s, const SpincPoint& t) {
    const int n = l.ell;
    if ((int)s.size() != n || (int)t.size() != n)
        throw SemanticError("same_spinc_class: bad point arity");
    IntMatrix z(1, n);
    for (int j = 0; j < n; ++j) {
        if (s[j].kind != SpincCoord::Kind::Finite || t[j].kind != SpincCoord::Kind::Finite)
            throw SemanticError("same_spinc_class: points must be finite");
        long long diff = s[j].twice - t[j].twice;
        if (diff % 2 != 0) return false;
        z.at(0, j) = diff / 2;
    }
    // Solve x^T Lambda = z; with U Lambda V = D this reads y D = z V.
    IntMatrix lam(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lam.at(i, j) = l.lambda[i][j];
    SmithForm snf = smith_normal_form(lam);
    IntMatrix zv = mul(z, snf.right);
    for (int i = 0; i < n; ++i) {
        const Int& d = i < (int)snf.diagonal.size() ? snf.diagonal[i] : Int(0);
        if (d == 0) {
            if (zv.at(0, i) != 0) return false;
        } else if (zv.at(0, i) % d != 0) {
            return false;
        }
    }
    return true;
}

SpincPoint psi_map_lattice(const SpincPoint& s, const OrientedSublink& m,
                           const FramedLinkLattice& l) {
    if ((int)s.size() != l.ell) throw SemanticError("psi_map_lattice: bad point arity");
    std::set<int> dropped;
    for (const auto& [idx, sign] : m) {
        if (idx < 1 || idx > l.ell) throw SemanticError("psi_map_lattice: component out of range");
        if (sign != 1 && sign != -1) throw SemanticError("psi_map_lattice: orientation must be +-1");
        if (!dropped.insert(idx).second)
            throw SemanticError("psi_map_lattice: repeated component");
    }
    SpincPoint out;
    for (int j = 1; j <= l.ell; ++j) {
        if (dropped.count(j)) continue;
        SpincCoord c = s[j - 1];
        if (c.kind == SpincCoord::Kind::Finite)
            for (const auto& [idx, sign] : m)
                c.twice -= sign * l.lambda[j - 1][idx - 1];
        out.push_back(c);
    }
    return out;
}

// --- model knot complexes ----------------------------------------------------

int ModelKnotComplex::max_abs_alexander() const {
    int m = 0;
    for (const auto& g : gens) m = std::max(m, std::abs(g.alexander));
    return m;
}

void validate_knot(const ModelKnotComplex& k) {
    for (std::size_t e = 0; e < k.arrows.size(); ++e) {
        const KnotArrow& a = k.arrows[e];
        if (a.from >= k.gens.size() || a.to >= k.gens.size())
            throw SemanticError("knot complex: arrow " + std::to_string(e) +
                                " references a missing generator");
        if (a.nz < 0 || a.nw < 0)
            throw SemanticError("knot complex: arrow " + std::to_string(e) +
                                " has negative basepoint counts");
        if (k.gens[a.from].alexander - k.gens[a.to].alexander != a.nz - a.nw)
            throw SemanticError("knot complex: arrow '" + k.gens[a.from].name + "' -> '" +
                                k.gens[a.to].name + "' violates A(x)-A(y) = nz-nw");
    }
    std::map<int, int> alex;
    for (const auto& g : k.gens) alex[g.alexander]++;
    for (const auto& [a, c] : alex)
        if (alex.count(-a) == 0 || alex.at(-a) != c)
            throw SemanticError("knot complex: Alexander gradings are not symmetric about 0");
    // U = 1 specialization.
    F2Matrix d(k.gens.size(), k.gens.size());
    for (const auto& a : k.arrows) d.flip(a.to, a.from);
    if (!mul(d, d).is_zero())
        throw SemanticError("knot complex: U=1 specialization does not square to zero");
}

ModelKnotComplex knot_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("knot complex: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "generators" && it.key() != "differential")
            throw ParseError("knot complex: unknown field '" + it.key() + "'");
    if (!j.contains("generators") || !j["generators"].is_array())
        throw ParseError("knot complex: missing 'generators' array");
    ModelKnotComplex k;
    std::map<std::string, std::size_t> by_name;
    for (const auto& g : j["generators"]) {
        if (!g.is_object() || !g.contains("name") || !g.contains("A") || !g.contains("M"))
            throw ParseError("knot complex: generator needs 'name', 'A', 'M'");
        for (auto it = g.begin(); it != g.end(); ++it)
            if (it.key() != "name" && it.key() != "A" && it.key() != "M")
                throw ParseError("knot complex: unknown generator field '" + it.key() + "'");
        if (!g["name"].is_string() || !g["A"].is_number_integer() || !g["M"].is_number_integer())
            throw ParseError("knot complex: generator fields have wrong types");
        KnotGenerator gen{g["name"].get<std::string>(), g["A"].get<int>(), g["M"].get<int>()};
        if (by_name.count(gen.name))
            throw SemanticError("knot complex: duplicate generator '" + gen.name + "'");
        by_name[gen.name] = k.gens.size();
        k.gens.push_back(std::move(gen));
    }
    if (j.contains("differential")) {
        if (!j["differential"].is_array())
            throw ParseError("knot complex: 'differential' must be an array");
        for (const auto& e : j["differential"]) {
            if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
                !e.contains("nz") || !e.contains("nw"))
                throw ParseError("knot complex: arrow needs 'from', 'to', 'nz', 'nw'");
            for (auto it = e.begin(); it != e.end(); ++it)
                if (it.key() != "from" && it.key() != "to" && it.key() != "nz" && it.key() != "nw")
                    throw ParseError("knot complex: unknown arrow field '" + it.key() + "'");
            if (!e["from"].is_string() || !e["to"].is_string() ||
                !e["nz"].is_number_integer() || !e["nw"].is_number_integer())
                throw ParseError("knot complex: arrow fields have wrong types");
            std::string from = e["from"].get<std::string>(), to = e["to"].get<std::string>();
            if (!by_name.count(from) || !by_name.count(to))
                throw SemanticError("knot complex: arrow references unknown generator '" +
                                    (by_name.count(from) ? to : from) + "'");
            k.arrows.push_back({by_name[from], by_name[to], e["nz"].get<int>(), e["nw"].get<int>()});
        }
    }
    validate_knot(k);
    return k;
}

namespace {

long long clamp0(long long x) { return x > 0 ? x : 0; }

long long exponent_at(const KnotArrow& a, const ModelKnotComplex& k, SValue s) {
    switch (s.kind) {
        case SValue::Kind::PlusInf: return a.nw;
        case SValue::Kind::MinusInf: return a.nz;
        case SValue::Kind::Finite: break;
    }
    long long ax = k.gens[a.from].alexander, ay = k.gens[a.to].alexander;
    return clamp0(ax - s.v) - clamp0(ay - s.v) + a.nw;
}

} // namespace

LaurentMatrix a_infinity(const ModelKnotComplex& k, SValue s) {
    const std::size_t g = k.gens.size();
    LaurentMatrix d(g, g);
    for (const auto& a : k.arrows)
        d.at(a.to, a.from) = add(d.at(a.to, a.from), LaurentPoly::monomial(exponent_at(a, k, s)));
    if (!mul(d, d).is_zero())
        throw SemanticError("a_infinity: differential does not square to zero at this s");
    return d;
}

LaurentMatrix inclusion_map(const ModelKnotComplex& k, long long s, int sign) {
    if (sign != 1 && sign != -1) throw SemanticError("inclusion_map: sign must be +-1");
    const std::size_t g = k.gens.size();
    LaurentMatrix inc(g, g);
    for (std::size_t i = 0; i < g; ++i)
        inc.at(i, i) = LaurentPoly::monomial(clamp0(sign * (k.gens[i].alexander - s)));
    LaurentMatrix lhs = mul(inc, a_infinity(k, SValue::finite(s)));
    LaurentMatrix rhs = mul(a_infinity(k, sign > 0 ? SValue::plus_inf() : SValue::minus_inf()), inc);
    for (std::size_t t = 0; t < lhs.a.size(); ++t)
        if (!(lhs.a[t] == rhs.a[t]))
            throw std::logic_error("inclusion_map: chain map identity failed");
    return inc;
}

LaurentMatrix default_destabilization(const ModelKnotComplex& k, int sign) {
    LaurentMatrix d = a_infinity(k, sign > 0 ? SValue::plus_inf() : SValue::minus_inf());
    if (laurent_homology_rank(d) != 1)
        throw SemanticError("default destabilization needs S^3-like homology at s = +-infinity; "
                            "supply destabilization maps");
    std::size_t base_rank = rank_laurent(d);
    for (const auto& f : laurent_kernel_basis(transpose(d))) {
        LaurentMatrix row(1, d.cols);
        for (std::size_t j = 0; j < d.cols; ++j) row.at(0, j) = f[j];
        if (rank_laurent(vstack(d, row)) > base_rank) return row;
    }
    throw std::logic_error("default_destabilization: no functional survives on homology");
}

namespace {

struct ClassLayout {
    std::vector<long long> a_slots, b_slots;
};

ClassLayout layout_for_class(long long rep, long long n, long long S) {
    ClassLayout lay;
    if (n == 0) {
        lay.a_slots = {rep};
        lay.b_slots = {rep};
        return lay;
    }
    long long step = n > 0 ? n : -n;
    long long start = rep;
    while (start - step >= -S) start -= step;
    for (long long s = start; s <= S; s += step) lay.a_slots.push_back(s);
    std::set<long long> bs;
    for (long long s : lay.a_slots) {
        bs.insert(s);
        bs.insert(s + n);
    }
    lay.b_slots.assign(bs.begin(), bs.end());
    return lay;
}

SurgeryClassData assemble_class(const ModelKnotComplex& k, long long n, long long rep,
                                long long S, const LaurentMatrix& dplus,
                                const LaurentMatrix& dminus) {
    const std::size_t g = k.gens.size();
    SurgeryClassData cls;
    cls.class_rep = rep;
    ClassLayout lay = layout_for_class(rep, n, S);
    cls.a_slots = lay.a_slots;
    cls.b_slots = lay.b_slots;

    std::map<long long, std::size_t> b_index;
    for (std::size_t i = 0; i < lay.b_slots.size(); ++i) b_index[lay.b_slots[i]] = i;

    const std::size_t dim = lay.a_slots.size() * g + lay.b_slots.size();
    cls.d = LaurentMatrix(dim, dim);
    const std::size_t b_off = lay.a_slots.size() * g;

    for (std::size_t ai = 0; ai < lay.a_slots.size(); ++ai) {
        long long s = lay.a_slots[ai];
        LaurentMatrix ds = a_infinity(k, SValue::finite(s));
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j)
                if (!ds.at(i, j).is_zero()) cls.d.at(ai * g + i, ai * g + j) = ds.at(i, j);
        LaurentMatrix phi_plus = mul(dplus, inclusion_map(k, s, +1));
        LaurentMatrix phi_minus = mul(dminus, inclusion_map(k, s, -1));
        std::size_t brow_plus = b_off + b_index.at(s);
        std::size_t brow_minus = b_off + b_index.at(s + n);
        for (std::size_t j = 0; j < g; ++j) {
            cls.d.at(brow_plus, ai * g + j) =
                add(cls.d.at(brow_plus, ai * g + j), phi_plus.at(0, j));
            cls.d.at(brow_minus, ai * g + j) =
                add(cls.d.at(brow_minus, ai * g + j), phi_minus.at(0, j));
        }
    }
    cls.rank = laurent_homology_rank(cls.d);
    return cls;
}

std::vector<long long> class_reps(const ModelKnotComplex& k, long long n) {
    std::vector<long long> reps;
    if (n != 0) {
        long long step = n > 0 ? n : -n;
        for (long long c = 0; c < step; ++c) reps.push_back(c);
    } else {
        long long w = k.max_abs_alexander() + 2;
        for (long long s = -w; s <= w; ++s) reps.push_back(s);
    }
    return reps;
}

} // namespace

SurgeryComplexSlice knot_surgery_complex(const ModelKnotComplex& k, long long n,
                                         const Destabilizations& dest,
                                         std::optional<long long> truncation) {
    validate_knot(k);
    const long long needed = k.max_abs_alexander() + (n > 0 ? n : -n);
    long long S = truncation.value_or(needed + 2);
    if (S <= needed)
        throw SemanticError("knot_surgery_complex: truncation must exceed max|A| + |n|");

    LaurentMatrix dplus = dest.plus ? *dest.plus : default_destabilization(k, +1);
    LaurentMatrix dminus = dest.minus ? *dest.minus : default_destabilization(k, -1);
    const std::size_t g = k.gens.size();
    if (dplus.rows != 1 || dplus.cols != g || dminus.rows != 1 || dminus.cols != g)
        throw SemanticError("knot_surgery_complex: destabilization maps must be 1 x #generators");
    // Destabilizations must be quasi-isomorphisms onto the one-generator model.
    for (int sign : {+1, -1}) {
        const LaurentMatrix& f = sign > 0 ? dplus : dminus;
        LaurentMatrix dinf = a_infinity(k, sign > 0 ? SValue::plus_inf() : SValue::minus_inf());
        LaurentMatrix cone(g + 1, g + 1);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) cone.at(i, j) = dinf.at(i, j);
        for (std::size_t j = 0; j < g; ++j) cone.at(g, j) = f.at(0, j);
        if (laurent_homology_rank(cone) != 0)
            throw SemanticError(std::string("knot_surgery_complex: ") +
                                (sign > 0 ? "+" : "-") +
                                "K destabilization is not a quasi-isomorphism");
    }

    SurgeryComplexSlice slice;
    slice.framing = n;
    slice.truncation = S;
    for (long long rep : class_reps(k, n))
        slice.classes.push_back(assemble_class(k, n, rep, S, dplus, dminus));

    for (const auto& cls : slice.classes) {
        SurgeryClassData again = assemble_class(k, n, cls.class_rep, S + 3, dplus, dminus);
        if (again.rank != cls.rank)
            throw std::logic_error("knot_surgery_complex: rank not stable under truncation bump");
    }
    return slice;
}

// --- cup-model cube -----------------------------------------------------------

HyperboxComplex build_cup_model_cube(const ThreeForm& mu) {
    const int ell = mu.ell;
    HyperboxComplex h(std::vector<int>(ell, 1));
    for (std::size_t id = 0; id < h.vertex_count(); ++id) {
        h.verts[id].dim = 1;
        h.verts[id].d0 = F2Matrix(1, 1);
        int w = std::popcount((std::uint32_t)id); // vertex id is the eps bitmask
        h.verts[id].grading = {-w};
    }
    F2Matrix one(1, 1);
    one.set(0, 0, true);
    for (const auto& [t, c] : mu.triples) {
        if (c % 2 == 0) continue;
        for (std::size_t id = 0; id < h.vertex_count(); ++id) {
            if (StepMask(id) & t) continue; // the step must stay inside the cube
            h.set_map(id, StepMask(t), one);
        }
    }
    if (!check_relations(h).empty())
        throw std::logic_error("build_cup_model_cube: relations fail (mu ^ mu != 0 mod 2?)");
    return h;
}

HyperboxComplex perturb_model(const HyperboxComplex& h, const std::vector<Perturbation>& extra) {
    HyperboxComplex out = h;
    for (const auto& p : extra) {
        if (std::popcount((std::uint32_t)p.step) < 4)
            throw SemanticError("perturb_model: extra entries must have ||eps'|| >= 4");
        out.set_map(p.eps, p.step, p.m);
    }
    auto bad = check_relations(out);
    if (!bad.empty()) {
        std::string where;
        for (int c : bad.front().eps) where += std::to_string(c);
        std::string step;
        for (std::size_t i = 0; i < h.axes(); ++i)
            step += (bad.front().step & (StepMask(1) << i)) ? '1' : '0';
        throw RelationError("perturb_model: relation violated at eps=(" + where + "), eps'=(" +
                            step + ")");
    }
    return out;
}

} // namespace cuphom
