#include "cuphom/specseq.hpp"
#include "cuphom/cupcomplex.hpp"
#include "cuphom/errors.hpp"
#include "cuphom/homology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace cuphom {

int FilteredComplex::min_filt() const {
    return filtration.empty() ? 0 : *std::min_element(filtration.begin(), filtration.end());
}

int FilteredComplex::max_filt() const {
    return filtration.empty() ? 0 : *std::max_element(filtration.begin(), filtration.end());
}

FilteredComplex make_filtered(F2Matrix d, std::vector<int> filtration,
                              std::vector<int> grading,
                              std::vector<std::size_t> vertex_of) {
    if (d.rows != d.cols || filtration.size() != d.rows)
        throw SemanticError("filtered complex: shape mismatch");
    if (!mul(d, d).is_zero()) throw SemanticError("filtered complex: d^2 != 0");
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
            if (d.get(i, j) && filtration[i] > filtration[j])
                throw SemanticError("filtered complex: differential increases filtration");
    FilteredComplex fc;
    fc.d = std::move(d);
    fc.filtration = std::move(filtration);
    fc.grading = grading.empty() ? std::vector<int>(fc.d.rows, 0) : std::move(grading);
    fc.vertex_of = vertex_of.empty() ? std::vector<std::size_t>(fc.d.rows, SIZE_MAX)
                                     : std::move(vertex_of);
    return fc;
}

FilteredComplex from_hypercube(const TotalComplex& t, int ell) {
    std::vector<int> filt(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i) filt[i] = ell - t.weight_of[i];
    return make_filtered(t.d, std::move(filt), t.grading_of, t.vertex_of);
}

namespace {

// Basis of Z_r^p = {x supported on F_p : dx in F_{p-r}}, ambient coordinates.
std::vector<F2Vec> z_space(const FilteredComplex& fc, int p, int r) {
    std::vector<std::size_t> cols, rows;
    for (std::size_t j = 0; j < fc.dim(); ++j)
        if (fc.filtration[j] <= p) cols.push_back(j);
    for (std::size_t i = 0; i < fc.dim(); ++i)
        if (fc.filtration[i] > p - r) rows.push_back(i);
    std::vector<F2Vec> out;
    if (cols.empty()) return out;
    F2Matrix a = submatrix(fc.d, rows, cols);
    for (const F2Vec& k : kernel_basis(a)) {
        F2Vec v(fc.dim());
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (k.get(t)) v.set(cols[t], true);
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t leading_bit(const F2Vec& v) {
    for (std::size_t k = 0; k < v.w.size(); ++k)
        if (v.w[k]) {
            std::uint64_t x = v.w[k];
            int b = 0;
            while (!((x >> b) & 1u)) ++b;
            return k * 64 + std::size_t(b);
        }
    return v.n;
}

void reduce_against(F2Vec& v, const std::vector<F2Vec>& rows,
                    const std::vector<std::size_t>& pivots) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (v.get(pivots[i])) v.xor_in(rows[i]);
}

void echelon_insert(F2Vec v, std::vector<F2Vec>& rows, std::vector<std::size_t>& pivots) {
    reduce_against(v, rows, pivots);
    if (v.is_zero()) return;
    pivots.push_back(leading_bit(v));
    rows.push_back(std::move(v));
}

} // namespace

const PageLevel* Page::level(int p) const {
    int idx = p - min_p;
    if (idx < 0 || idx >= (int)levels.size()) return nullptr;
    return &levels[idx];
}

std::size_t Page::total_dim() const {
    std::size_t t = 0;
    for (const auto& l : levels) t += l.reps.size();
    return t;
}

std::vector<std::size_t> Page::dims() const {
    std::vector<std::size_t> d;
    for (const auto& l : levels) d.push_back(l.reps.size());
    return d;
}

bool Page::d_is_zero() const {
    for (const auto& l : levels)
        if (!l.d_r.is_zero()) return false;
    return true;
}

Page page(const FilteredComplex& fc, int r) {
    if (r < 1) throw SemanticError("page: r must be >= 1");
    Page pg;
    pg.r = r;
    pg.min_p = fc.min_filt();
    const int pmax = fc.max_filt();

    for (int p = pg.min_p; p <= pmax; ++p) {
        PageLevel lvl;
        lvl.p = p;
        // Denominator Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1}.
        for (const F2Vec& v : z_space(fc, p - 1, r - 1))
            echelon_insert(v, lvl.den_rows, lvl.den_piv);
        for (const F2Vec& v : z_space(fc, p + r - 1, r - 1))
            echelon_insert(apply(fc.d, v), lvl.den_rows, lvl.den_piv);
        // Representatives extend the denominator echelon inside Z_r^p.
        std::vector<F2Vec> span = lvl.den_rows;
        std::vector<std::size_t> span_piv = lvl.den_piv;
        for (const F2Vec& z : z_space(fc, p, r)) {
            F2Vec v = z;
            reduce_against(v, span, span_piv);
            if (v.is_zero()) continue;
            span.push_back(v);
            span_piv.push_back(leading_bit(v));
            lvl.reps.push_back(v);
            lvl.rep_piv.push_back(span_piv.back());
        }
        pg.levels.push_back(std::move(lvl));
    }

    // d_r per level, expressed in the representative bases.
    for (int p = pg.min_p; p <= pmax; ++p) {
        PageLevel& src = pg.levels[p - pg.min_p];
        src.d_r = F2Matrix(0, src.reps.size());
        int q = p - r;
        if (q < pg.min_p) {
            if (!src.reps.empty()) src.d_r = F2Matrix(0, src.reps.size());
            continue;
        }
        PageLevel& dst = pg.levels[q - pg.min_p];
        F2Matrix m(dst.reps.size(), src.reps.size());
        for (std::size_t j = 0; j < src.reps.size(); ++j) {
            F2Vec y = apply(fc.d, src.reps[j]);
            reduce_against(y, dst.den_rows, dst.den_piv);
            for (std::size_t i = 0; i < dst.reps.size(); ++i)
                if (y.get(dst.rep_piv[i])) {
                    m.set(i, j, true);
                    y.xor_in(dst.reps[i]);
                }
            if (!y.is_zero())
                throw std::logic_error("page: image escapes the target subquotient");
        }
        src.d_r = std::move(m);
    }
    return pg;
}

CollapseReport collapse_check(const FilteredComplex& fc, int r) {
    CollapseReport rep;
    const int depth = fc.depth();
    rep.collapsed = true;
    rep.first_live_page = 0;
    for (int k = std::max(r, 1); k <= depth; ++k) {
        if (!page(fc, k).d_is_zero()) {
            rep.collapsed = false;
            rep.first_live_page = k;
            break;
        }
    }
    rep.e_infinity_total = page(fc, depth + 1).total_dim();
    rep.total_homology = homology_rank_of(fc.d);
    if (rep.e_infinity_total != rep.total_homology)
        throw std::logic_error("collapse_check: E_infinity total does not match total homology");
    return rep;
}

E3Identification identify_e3_with_exterior(const FilteredComplex& fc, const ThreeForm& mu) {
    const int ell = mu.ell;
    E3Identification id;
    if (fc.dim() != (std::size_t(1) << ell))
        throw SemanticError("identify_e3: complex is not a cup-model cube for this ell");
    // Model shape: one generator per cube vertex, tags present and distinct.
    std::vector<std::size_t> by_vertex(std::size_t(1) << ell, SIZE_MAX);
    for (std::size_t i = 0; i < fc.dim(); ++i) {
        std::size_t v = fc.vertex_of[i];
        if (v == SIZE_MAX || v >= by_vertex.size() || by_vertex[v] != SIZE_MAX)
            throw SemanticError("identify_e3: input lacks one-generator vertex tags");
        by_vertex[v] = i;
    }
    for (std::size_t i = 0; i < fc.dim(); ++i) {
        int weight = std::popcount((std::uint32_t)fc.vertex_of[i]);
        if (fc.filtration[i] != ell - weight)
            throw SemanticError("identify_e3: filtration is not the eps-filtration");
    }

    Page e3 = page(fc, 3);
    const Mask full = (Mask(1) << ell) - 1;

    // Basis change from representative coordinates to the Lambda^p basis.
    auto basis_matrix = [&](const PageLevel& lvl, int p) {
        GradedPiece g = degree_basis(ell, p);
        std::vector<std::size_t> pos(std::size_t(1) << ell, SIZE_MAX);
        for (std::size_t t = 0; t < g.basis.size(); ++t) pos[g.basis[t]] = t;
        F2Matrix c(g.basis.size(), lvl.reps.size());
        for (std::size_t j = 0; j < lvl.reps.size(); ++j)
            for (std::size_t i = 0; i < fc.dim(); ++i) {
                if (!lvl.reps[j].get(i) || fc.filtration[i] != p) continue;
                Mask s = full & ~Mask(fc.vertex_of[i]); // eps_i = 0 <-> generator present
                c.set(pos[s], j, true);
            }
        return c;
    };

    id.matches = true;
    for (int p = 0; p <= ell; ++p) {
        const PageLevel* lvl = e3.level(p);
        F2Matrix iota = differential_matrix_f2(mu, p);
        F2Matrix transported(iota.rows, iota.cols);
        if (lvl && !lvl->reps.empty()) {
            F2Matrix cp = basis_matrix(*lvl, p);
            auto cp_inv = inverse(cp);
            if (!cp_inv)
                throw SemanticError("identify_e3: representatives do not project onto the level basis");
            if (p - 3 >= 0) {
                const PageLevel* dst = e3.level(p - 3);
                if (dst && !dst->reps.empty()) {
                    F2Matrix cq = basis_matrix(*dst, p - 3);
                    transported = mul(cq, mul(lvl->d_r, *cp_inv));
                }
            }
        }
        if (!(transported == iota)) {
            id.matches = false;
            if (id.detail.empty())
                id.detail = "d_3 disagrees with contraction at exterior degree " + std::to_string(p);
        }
        id.d3_on_exterior.push_back(std::move(transported));
        id.iota_mu.push_back(std::move(iota));
    }
    if (id.matches) id.detail = "d_3 equals contraction by mu in the exterior basis";
    return id;
}

} // namespace cuphom
