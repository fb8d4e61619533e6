#include "cuphom/randgen.hpp"
#include "cuphom/errors.hpp"

#include <algorithm>
#include <bit>

namespace cuphom::randgen {

F2Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    F2Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rng() & 1) m.set(i, j, true);
    return m;
}

F2Matrix random_invertible(std::size_t n, Rng& rng) {
    for (;;) {
        F2Matrix m = random_matrix(n, n, rng);
        if (rank_f2(m) == n) return m;
    }
}

F2Matrix random_differential(std::size_t n, std::size_t r, Rng& rng) {
    if (2 * r > n) throw SemanticError("random_differential: need 2r <= n");
    F2Matrix s(n, n);
    for (std::size_t i = 0; i < r; ++i) s.set(r + i, i, true);
    F2Matrix p = random_invertible(n, rng);
    return mul(p, mul(s, *inverse(p)));
}

F2Matrix random_chain_map(const F2Matrix& dv, const F2Matrix& dw, Rng& rng) {
    const std::size_t nv = dv.rows, nw = dw.rows;
    if (nv == 0 || nw == 0) return F2Matrix(nw, nv);
    // Unknowns f[i][j]; constraints (f dv + dw f)[i][j] = 0.
    F2Matrix sys(nv * nw, nv * nw);
    auto unk = [nv](std::size_t i, std::size_t j) { return i * nv + j; };
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            std::size_t row = i * nv + j;
            for (std::size_t k = 0; k < nv; ++k)
                if (dv.get(k, j)) sys.flip(row, unk(i, k));
            for (std::size_t k = 0; k < nw; ++k)
                if (dw.get(i, k)) sys.flip(row, unk(k, j));
        }
    std::vector<F2Vec> basis = kernel_basis(sys);
    F2Vec pick(nv * nw);
    for (const F2Vec& b : basis)
        if (rng() & 1) pick.xor_in(b);
    F2Matrix f(nw, nv);
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nv; ++j)
            if (pick.get(unk(i, j))) f.set(i, j, true);
    return f;
}

ThreeForm random_threeform(int ell, std::size_t max_triples, long long coeff_bound, Rng& rng) {
    ThreeForm mu(ell);
    if (ell < 3 || max_triples == 0) return mu;
    std::size_t count = rng() % (max_triples + 1);
    for (std::size_t t = 0; t < count; ++t) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            int i = 1 + int(rng() % ell);
            int j = 1 + int(rng() % ell);
            int k = 1 + int(rng() % ell);
            if (i == j || j == k || i == k) continue;
            int lo = std::min({i, j, k}), hi = std::max({i, j, k});
            int mid = i + j + k - lo - hi;
            long long c = (long long)(rng() % (2 * coeff_bound + 1)) - coeff_bound;
            if (c == 0) c = 1;
            mu.set(lo, mid, hi, c);
            break;
        }
    }
    return mu;
}

SplitPair random_split_pair(int ell, Rng& rng) {
    SplitPair sp;
    sp.r = 1 + int(rng() % ell);
    // common r-free part
    ThreeForm nu(ell);
    std::size_t nu_count = rng() % 3;
    for (std::size_t t = 0; t < nu_count; ++t) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            int i = 1 + int(rng() % ell);
            int j = 1 + int(rng() % ell);
            int k = 1 + int(rng() % ell);
            if (i == j || j == k || i == k || i == sp.r || j == sp.r || k == sp.r) continue;
            int lo = std::min({i, j, k}), hi = std::max({i, j, k});
            nu.set(lo, i + j + k - lo - hi, hi, 1 + (long long)(rng() % 2));
            break;
        }
    }
    auto r_triples = [&](std::size_t count) {
        ThreeForm f(ell);
        for (std::size_t t = 0; t < count; ++t) {
            for (int attempt = 0; attempt < 16; ++attempt) {
                int j = 1 + int(rng() % ell);
                int k = 1 + int(rng() % ell);
                if (j == k || j == sp.r || k == sp.r) continue;
                int a = std::min({sp.r, j, k}), c = std::max({sp.r, j, k});
                int b = sp.r + j + k - a - c;
                f.set(a, b, c, 1 + (long long)(rng() % 2));
                break;
            }
        }
        return f;
    };
    sp.mu1 = connect_sum(nu, r_triples(1 + rng() % 2));
    sp.mu2 = connect_sum(nu, r_triples(1 + rng() % 2));
    return sp;
}

namespace {

struct EdgeData {
    F2Matrix map, homotopy;
};

// Edge [d, h] for a random h; a chain map that is null-homotopic on the nose.
EdgeData homotopy_edge(const F2Matrix& dsrc, const F2Matrix& ddst, Rng& rng) {
    EdgeData e;
    e.homotopy = random_matrix(ddst.rows, dsrc.rows, rng);
    e.map = add(mul(ddst, e.homotopy), mul(e.homotopy, dsrc));
    return e;
}

} // namespace

HyperboxComplex random_hyperbox(const std::vector<int>& size, std::size_t max_vertex_dim,
                                Rng& rng) {
    if (size.empty() || size.size() > 2)
        throw SemanticError("random_hyperbox: dimension must be 1 or 2");
    HyperboxComplex h(size);
    for (std::size_t id = 0; id < h.vertex_count(); ++id) {
        std::size_t n = 2 + rng() % (max_vertex_dim - 1);
        std::size_t r = rng() % (n / 2 + 1);
        h.verts[id].dim = n;
        h.verts[id].d0 = random_differential(n, r, rng);
    }

    const std::size_t axes = size.size();
    std::map<std::pair<std::size_t, int>, EdgeData> edges; // (vertex id, axis)
    for (std::size_t id = 0; id < h.vertex_count(); ++id) {
        Vertex v = h.vertex_at(id);
        for (std::size_t ax = 0; ax < axes; ++ax) {
            Vertex up = v;
            up[ax] += 1;
            if (!h.in_box(up)) continue;
            EdgeData e = homotopy_edge(h.verts[id].d0, h.verts[h.vertex_id(up)].d0, rng);
            h.set_map(id, StepMask(1) << ax, e.map);
            edges[{id, int(ax)}] = std::move(e);
        }
    }
    if (axes == 2) {
        for (std::size_t id = 0; id < h.vertex_count(); ++id) {
            Vertex v = h.vertex_at(id);
            Vertex diag = v;
            diag[0] += 1;
            diag[1] += 1;
            if (!h.in_box(diag)) continue;
            Vertex right = v, top = v;
            right[0] += 1;
            top[1] += 1;
            // [d, D11] = D01(right) D10(base) + D10(top) D01(base)
            const EdgeData& a = edges.at({id, 0});
            const EdgeData& b = edges.at({id, 1});
            const EdgeData& bprime = edges.at({h.vertex_id(right), 1});
            const EdgeData& aprime = edges.at({h.vertex_id(top), 0});
            F2Matrix d11 = add(mul(bprime.homotopy, a.map), mul(aprime.homotopy, b.map));
            h.set_map(id, StepMask(3), d11);
        }
    }
    if (!check_relations(h).empty())
        throw std::logic_error("random_hyperbox: construction violated the relations");
    return h;
}

} // namespace cuphom::randgen
