#include "cuphom/homology.hpp"
#include "cuphom/errors.hpp"

namespace cuphom {

namespace {

// Reduce v against echelon rows (each row has a recorded pivot column).
void reduce_against(F2Vec& v, const std::vector<F2Vec>& rows,
                    const std::vector<std::size_t>& pivots) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (v.get(pivots[i])) v.xor_in(rows[i]);
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

// Insert v into an echelon set, keeping earlier rows fixed.
bool echelon_insert(F2Vec v, std::vector<F2Vec>& rows, std::vector<std::size_t>& pivots) {
    reduce_against(v, rows, pivots);
    if (v.is_zero()) return false;
    rows.push_back(v);
    pivots.push_back(leading_bit(rows.back()));
    return true;
}

} // namespace

HomologyData homology(const F2Matrix& d) {
    if (d.rows != d.cols) throw SemanticError("homology: differential must be square");
    if (!mul(d, d).is_zero()) throw SemanticError("homology: d^2 != 0");

    HomologyData h;
    h.dim = d.rows;

    // Boundary space = column space of d, echelonized.
    for (std::size_t j = 0; j < d.cols; ++j)
        echelon_insert(d.get_col(j), h.bnd_rows, h.bnd_piv);

    // Extend to the cycle space; the new vectors represent homology classes.
    std::vector<F2Vec> span = h.bnd_rows;
    std::vector<std::size_t> span_piv = h.bnd_piv;
    for (const F2Vec& z : kernel_basis(d)) {
        F2Vec v = z;
        reduce_against(v, span, span_piv);
        if (v.is_zero()) continue;
        span.push_back(v);
        span_piv.push_back(leading_bit(v));
        h.reps.push_back(v);
        h.rep_piv.push_back(span_piv.back());
    }
    return h;
}

F2Vec class_of(const HomologyData& h, F2Vec x) {
    if (x.n != h.dim) throw SemanticError("class_of: dimension mismatch");
    reduce_against(x, h.bnd_rows, h.bnd_piv);
    F2Vec coords(h.reps.size());
    for (std::size_t i = 0; i < h.reps.size(); ++i)
        if (x.get(h.rep_piv[i])) {
            coords.set(i, true);
            x.xor_in(h.reps[i]);
        }
    if (!x.is_zero()) throw SemanticError("class_of: vector is not a cycle");
    return coords;
}

F2Matrix induced_map(const F2Matrix& f, const HomologyData& src, const HomologyData& dst) {
    F2Matrix out(dst.rank(), src.rank());
    for (std::size_t j = 0; j < src.rank(); ++j) {
        F2Vec coords = class_of(dst, apply(f, src.reps[j]));
        for (std::size_t i = 0; i < dst.rank(); ++i)
            if (coords.get(i)) out.set(i, j, true);
    }
    return out;
}

std::size_t homology_rank_of(const F2Matrix& d) {
    if (d.rows != d.cols) throw SemanticError("homology_rank_of: differential must be square");
    if (!mul(d, d).is_zero()) throw SemanticError("homology_rank_of: d^2 != 0");
    return d.rows - 2 * rank_f2(d);
}

F2Matrix cone_matrix(const F2Matrix& dv, const F2Matrix& dw, const F2Matrix& f) {
    if (f.cols != dv.rows || f.rows != dw.rows)
        throw SemanticError("cone_matrix: chain map dimensions do not match");
    std::size_t nv = dv.rows, nw = dw.rows;
    F2Matrix c(nv + nw, nv + nw);
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j)
            if (dv.get(i, j)) c.set(i, j, true);
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nv; ++j)
            if (f.get(i, j)) c.set(nv + i, j, true);
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nw; ++j)
            if (dw.get(i, j)) c.set(nv + i, nv + j, true);
    return c;
}

bool is_quasi_iso(const F2Matrix& dv, const F2Matrix& dw, const F2Matrix& f) {
    return homology_rank_of(cone_matrix(dv, dw, f)) == 0;
}

} // namespace cuphom
