#include "cuphom/hypercube.hpp"
#include "cuphom/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace cuphom {

HyperboxComplex::HyperboxComplex(std::vector<int> size_) : size(std::move(size_)) {
    for (int d : size)
        if (d < 1) throw SemanticError("hyperbox: sizes must be >= 1");
    std::size_t count = 1;
    for (int d : size) count *= std::size_t(d + 1);
    verts.resize(count);
}

std::size_t HyperboxComplex::vertex_id(const Vertex& v) const {
    if (v.size() != size.size()) throw SemanticError("hyperbox: bad vertex arity");
    std::size_t id = 0, stride = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0 || v[i] > size[i]) throw SemanticError("hyperbox: vertex out of box");
        id += std::size_t(v[i]) * stride;
        stride *= std::size_t(size[i] + 1);
    }
    return id;
}

Vertex HyperboxComplex::vertex_at(std::size_t id) const {
    Vertex v(size.size());
    for (std::size_t i = 0; i < size.size(); ++i) {
        v[i] = int(id % std::size_t(size[i] + 1));
        id /= std::size_t(size[i] + 1);
    }
    return v;
}

bool HyperboxComplex::in_box(const Vertex& v) const {
    if (v.size() != size.size()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < 0 || v[i] > size[i]) return false;
    return true;
}

bool HyperboxComplex::is_hypercube() const {
    for (int d : size)
        if (d != 1) return false;
    return true;
}

const F2Matrix* HyperboxComplex::find_map(std::size_t id, StepMask step) const {
    auto it = maps.find({id, step});
    return it == maps.end() ? nullptr : &it->second;
}

F2Matrix HyperboxComplex::map_or_zero(std::size_t id, StepMask step) const {
    if (step == 0) return verts[id].d0;
    if (const F2Matrix* m = find_map(id, step)) return *m;
    Vertex v = vertex_at(id);
    for (std::size_t i = 0; i < axes(); ++i)
        if (step & (StepMask(1) << i)) v[i] += 1;
    if (!in_box(v)) return F2Matrix(0, 0);
    return F2Matrix(verts[vertex_id(v)].dim, verts[id].dim);
}

void HyperboxComplex::set_map(std::size_t id, StepMask step, F2Matrix m) {
    Vertex v = vertex_at(id);
    if (step == 0) {
        if (m.rows != verts[id].dim || m.cols != verts[id].dim)
            throw SemanticError("hyperbox: internal differential has wrong shape");
        verts[id].d0 = std::move(m);
        return;
    }
    for (std::size_t i = 0; i < axes(); ++i)
        if (step & (StepMask(1) << i)) v[i] += 1;
    if (!in_box(v)) throw SemanticError("hyperbox: map target outside the box");
    if (m.rows != verts[vertex_id(v)].dim || m.cols != verts[id].dim)
        throw SemanticError("hyperbox: map has wrong shape");
    if (m.is_zero()) {
        maps.erase({id, step});
        return;
    }
    maps[{id, step}] = std::move(m);
}

void HyperboxComplex::set_map(const Vertex& v, StepMask step, F2Matrix m) {
    set_map(vertex_id(v), step, std::move(m));
}

std::vector<RelationViolation> check_relations(const HyperboxComplex& h) {
    const std::size_t n = h.axes();
    const StepMask full = (StepMask(1) << n) - 1;
    std::vector<std::vector<RelationViolation>> per_vertex(h.vertex_count());
    // independent per vertex; aggregated in vertex order afterwards
#pragma omp parallel for schedule(dynamic)
    for (long long vid = 0; vid < (long long)h.vertex_count(); ++vid) {
        std::size_t id = (std::size_t)vid;
        std::vector<RelationViolation>& bad = per_vertex[id];
        Vertex eps = h.vertex_at(id);
        for (StepMask step = 0; step <= full; ++step) {
            Vertex target = eps;
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i)
                if (step & (StepMask(1) << i)) {
                    target[i] += 1;
                    if (target[i] > h.size[i]) ok = false;
                }
            if (!ok) continue;
            std::size_t tid = h.vertex_id(target);
            F2Matrix sum(h.verts[tid].dim, h.verts[id].dim);
            // gamma runs over all submasks of step, including 0 and step.
            StepMask gamma = step;
            for (;;) {
                Vertex mid = eps;
                for (std::size_t i = 0; i < n; ++i)
                    if (gamma & (StepMask(1) << i)) mid[i] += 1;
                std::size_t mid_id = h.vertex_id(mid);
                F2Matrix first = h.map_or_zero(id, gamma);
                F2Matrix second = h.map_or_zero(mid_id, step & ~gamma);
                if (!first.is_zero() && !second.is_zero())
                    sum = add(sum, mul(second, first));
                if (gamma == 0) break;
                gamma = (gamma - 1) & step;
            }
            if (!sum.is_zero()) bad.push_back({eps, step});
        }
    }
    std::vector<RelationViolation> bad;
    for (auto& v : per_vertex)
        for (auto& x : v) bad.push_back(std::move(x));
    return bad;
}

std::size_t TotalComplex::homology_rank() const {
    return d.rows - 2 * rank_f2(d);
}

LatticeView LatticeView::full(const HyperboxComplex& h) {
    LatticeView v;
    v.box = &h;
    v.vertices.resize(h.vertex_count());
    std::iota(v.vertices.begin(), v.vertices.end(), std::size_t(0));
    return v;
}

TotalComplex total_of(const LatticeView& view) {
    const HyperboxComplex& h = *view.box;
    TotalComplex t;
    t.offset.assign(h.vertex_count(), SIZE_MAX);
    std::size_t dim = 0;
    for (std::size_t id : view.vertices) {
        t.offset[id] = dim;
        dim += h.verts[id].dim;
    }
    t.d = F2Matrix(dim, dim);
    t.vertex_of.resize(dim);
    t.weight_of.resize(dim);
    t.grading_of.assign(dim, 0);
    for (std::size_t id : view.vertices) {
        Vertex eps = h.vertex_at(id);
        int w = std::accumulate(eps.begin(), eps.end(), 0);
        const VertexComplex& vc = h.verts[id];
        for (std::size_t k = 0; k < vc.dim; ++k) {
            t.vertex_of[t.offset[id] + k] = id;
            t.weight_of[t.offset[id] + k] = w;
            if (!vc.grading.empty()) t.grading_of[t.offset[id] + k] = vc.grading[k];
        }
        for (std::size_t i = 0; i < vc.dim; ++i)
            for (std::size_t j = 0; j < vc.dim; ++j)
                if (vc.d0.rows && vc.d0.get(i, j)) t.d.set(t.offset[id] + i, t.offset[id] + j, true);
    }
    for (const auto& [key, m] : h.maps) {
        auto [id, step] = key;
        if (t.offset[id] == SIZE_MAX) continue;
        Vertex target = h.vertex_at(id);
        for (std::size_t i = 0; i < h.axes(); ++i)
            if (step & (StepMask(1) << i)) target[i] += 1;
        std::size_t tid = h.vertex_id(target);
        if (t.offset[tid] == SIZE_MAX) continue;
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j)
                if (m.get(i, j)) t.d.set(t.offset[tid] + i, t.offset[id] + j, true);
    }
    if (!mul(t.d, t.d).is_zero())
        throw RelationError("total complex: differential does not square to zero");
    return t;
}

TotalComplex total_complex(const HyperboxComplex& h) {
    if (!h.is_hypercube())
        throw SemanticError("total_complex: box must be a hypercube of size (1,...,1)");
    if (!check_relations(h).empty())
        throw RelationError("total_complex: hyperbox relations fail");
    return total_of(LatticeView::full(h));
}

LatticeView face_view(const HyperboxComplex& h, const std::vector<int>& face) {
    if (face.size() != h.axes()) throw SemanticError("face: bad arity");
    LatticeView v;
    v.box = &h;
    for (std::size_t id = 0; id < h.vertex_count(); ++id) {
        Vertex eps = h.vertex_at(id);
        bool in = true;
        for (std::size_t i = 0; i < face.size(); ++i) {
            if (face[i] < 0) continue;
            if (face[i] > h.size[i]) throw SemanticError("face: coordinate out of box");
            if (eps[i] != face[i]) in = false;
        }
        if (in) v.vertices.push_back(id);
    }
    return v;
}

TotalComplex face_complex(const HyperboxComplex& h, const std::vector<int>& face) {
    return total_of(face_view(h, face));
}

LatticeView cancel_acyclic_edge(const LatticeView& view, int axis,
                                const std::function<bool(const Vertex&)>& pred) {
    const HyperboxComplex& h = *view.box;
    if (axis < 0 || std::size_t(axis) >= h.axes())
        throw SemanticError("cancel_acyclic_edge: bad axis");
    std::vector<bool> in_view(h.vertex_count(), false);
    for (std::size_t id : view.vertices) in_view[id] = true;

    StepMask tau = StepMask(1) << axis;
    std::vector<std::size_t> sources, targets;
    for (std::size_t id : view.vertices) {
        Vertex eps = h.vertex_at(id);
        if (!pred(eps)) continue;
        Vertex up = eps;
        up[axis] += 1;
        if (!h.in_box(up)) throw SemanticError("cancel_acyclic_edge: selected edge exits the box");
        std::size_t tid = h.vertex_id(up);
        if (!in_view[tid]) throw SemanticError("cancel_acyclic_edge: selected edge leaves the view");
        sources.push_back(id);
        targets.push_back(tid);
    }
    std::vector<bool> in_piece(h.vertex_count(), false);
    for (std::size_t id : sources) in_piece[id] = true;
    for (std::size_t id : targets) {
        if (in_piece[id])
            throw SemanticError("cancel_acyclic_edge: selected pairs overlap along the axis");
        in_piece[id] = true;
    }
    if (sources.empty()) return view;

    for (std::size_t k = 0; k < sources.size(); ++k) {
        const VertexComplex& a = h.verts[sources[k]];
        const VertexComplex& b = h.verts[targets[k]];
        if (!is_quasi_iso(a.d0, b.d0, h.map_or_zero(sources[k], tau))) {
            Vertex eps = h.vertex_at(sources[k]);
            std::string where;
            for (int c : eps) where += std::to_string(c);
            throw SemanticError("cancel_acyclic_edge: edge at (" + where +
                                ") is not a quasi-isomorphism");
        }
    }

    // The piece must sit as a subcomplex or as a quotient piece of the view.
    bool maps_out = false, maps_in = false;
    for (const auto& [key, m] : h.maps) {
        auto [id, step] = key;
        if (!in_view[id]) continue;
        Vertex target = h.vertex_at(id);
        for (std::size_t i = 0; i < h.axes(); ++i)
            if (step & (StepMask(1) << i)) target[i] += 1;
        std::size_t tid = h.vertex_id(target);
        if (!in_view[tid] || m.is_zero()) continue;
        if (in_piece[id] && !in_piece[tid]) maps_out = true;
        if (!in_piece[id] && in_piece[tid]) maps_in = true;
    }
    if (maps_out && maps_in)
        throw SemanticError("cancel_acyclic_edge: selected pairs are neither a sub- nor a quotient-piece");

    LatticeView piece{view.box, {}};
    LatticeView rest{view.box, {}};
    for (std::size_t id : view.vertices)
        (in_piece[id] ? piece : rest).vertices.push_back(id);

    if (total_of(piece).homology_rank() != 0)
        throw std::logic_error("cancel_acyclic_edge: removed piece is not acyclic");
    if (total_of(rest).homology_rank() != total_of(view).homology_rank())
        throw std::logic_error("cancel_acyclic_edge: total homology rank changed");
    return rest;
}

LatticeView cancel_acyclic_edge(const HyperboxComplex& h, int axis,
                                const std::function<bool(const Vertex&)>& pred) {
    return cancel_acyclic_edge(LatticeView::full(h), axis, pred);
}

namespace {

// Composition of D^{tau_axis} edge maps from coordinate a to b (exclusive)
// with the other coordinates fixed; empty composition is the identity.
F2Matrix edge_composition(const HyperboxComplex& h, int axis, Vertex at, int a, int b) {
    at[axis] = a;
    F2Matrix acc = F2Matrix::identity(h.verts[h.vertex_id(at)].dim);
    for (int j = a; j < b; ++j) {
        at[axis] = j;
        acc = mul(h.map_or_zero(h.vertex_id(at), StepMask(1) << axis), acc);
    }
    return acc;
}

HyperboxComplex compress_axis(const HyperboxComplex& h, int axis) {
    const int d = h.size[axis];
    if (d == 1) return h;
    std::vector<int> new_size = h.size;
    new_size[axis] = 1;
    HyperboxComplex out(new_size);

    const std::size_t n = h.axes();
    auto old_vertex = [&](Vertex v) {
        v[axis] *= d;
        return v;
    };

    for (std::size_t id = 0; id < out.vertex_count(); ++id) {
        Vertex v = out.vertex_at(id);
        out.verts[id] = h.verts[h.vertex_id(old_vertex(v))];
    }
    for (std::size_t id = 0; id < out.vertex_count(); ++id) {
        Vertex v = out.vertex_at(id);
        Vertex ov = old_vertex(v);
        for (StepMask step = 1; step < (StepMask(1) << n); ++step) {
            Vertex target = v;
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i)
                if (step & (StepMask(1) << i)) {
                    target[i] += 1;
                    if (target[i] > out.size[i]) ok = false;
                }
            if (!ok) continue;
            if (!(step & (StepMask(1) << axis))) {
                out.set_map(id, step, h.map_or_zero(h.vertex_id(ov), step));
                continue;
            }
            StepMask rest = step & ~(StepMask(1) << axis);
            if (rest == 0) {
                out.set_map(id, step, edge_composition(h, axis, ov, 0, d));
                continue;
            }
            // Diagonal: sum over the position of the diagonal jump.
            Vertex shifted = ov;
            for (std::size_t i = 0; i < n; ++i)
                if (rest & (StepMask(1) << i)) shifted[i] += 1;
            F2Matrix sum;
            bool first = true;
            for (int j = 0; j < d; ++j) {
                Vertex at = ov;
                at[axis] = j;
                F2Matrix tail = edge_composition(h, axis, shifted, j + 1, d);
                F2Matrix diag = h.map_or_zero(h.vertex_id(at), step);
                F2Matrix head = edge_composition(h, axis, ov, 0, j);
                F2Matrix term = mul(tail, mul(diag, head));
                sum = first ? term : add(sum, term);
                first = false;
            }
            out.set_map(id, step, sum);
        }
    }
    return out;
}

} // namespace

HyperboxComplex compress(const HyperboxComplex& h) {
    if (h.axes() > 2)
        throw SemanticError("compress: general compression out of scope (dimension > 2)");
    if (!check_relations(h).empty())
        throw RelationError("compress: hyperbox relations fail");
    HyperboxComplex out = h;
    for (std::size_t ax = 0; ax < h.axes(); ++ax)
        out = compress_axis(out, int(ax));
    if (!check_relations(out).empty())
        throw std::logic_error("compress: result violates the hypercube relation");
    return out;
}

HyperboxComplex compress_step(const HyperboxComplex& h, int axis, int pos) {
    if (axis < 0 || std::size_t(axis) >= h.axes())
        throw SemanticError("compress_step: bad axis");
    const int d = h.size[axis];
    if (pos < 0 || pos + 2 > d)
        throw SemanticError("compress_step: no pair of steps at this position");

    std::vector<int> new_size = h.size;
    new_size[axis] -= 1;
    HyperboxComplex out(new_size);
    const std::size_t n = h.axes();
    auto old_vertex = [&](Vertex v) {
        if (v[axis] > pos) v[axis] += 1;
        return v;
    };

    for (std::size_t id = 0; id < out.vertex_count(); ++id)
        out.verts[id] = h.verts[h.vertex_id(old_vertex(out.vertex_at(id)))];

    for (std::size_t id = 0; id < out.vertex_count(); ++id) {
        Vertex v = out.vertex_at(id);
        Vertex ov = old_vertex(v);
        for (StepMask step = 1; step < (StepMask(1) << n); ++step) {
            Vertex target = v;
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i)
                if (step & (StepMask(1) << i)) {
                    target[i] += 1;
                    if (target[i] > out.size[i]) ok = false;
                }
            if (!ok) continue;
            const bool along = (step & (StepMask(1) << axis)) != 0;
            if (!along || v[axis] != pos) {
                out.set_map(id, step, h.map_or_zero(h.vertex_id(ov), step));
                continue;
            }
            StepMask tau = StepMask(1) << axis;
            Vertex mid = ov;
            mid[axis] += 1;
            if (step == tau) {
                out.set_map(id, step,
                            mul(h.map_or_zero(h.vertex_id(mid), tau),
                                h.map_or_zero(h.vertex_id(ov), tau)));
                continue;
            }
            // merged diagonal: edge(pos+1) D^{11}(pos) + D^{11}(pos+1) edge(pos)
            Vertex shifted = mid;
            for (std::size_t i = 0; i < n; ++i)
                if ((step & ~tau) & (StepMask(1) << i)) shifted[i] += 1;
            F2Matrix first = mul(h.map_or_zero(h.vertex_id(shifted), tau),
                                 h.map_or_zero(h.vertex_id(ov), step));
            F2Matrix second = mul(h.map_or_zero(h.vertex_id(mid), step),
                                  h.map_or_zero(h.vertex_id(ov), tau));
            out.set_map(id, step, add(first, second));
        }
    }
    return out;
}

bool boxes_equal(const HyperboxComplex& a, const HyperboxComplex& b) {
    if (a.size != b.size) return false;
    for (std::size_t id = 0; id < a.vertex_count(); ++id) {
        if (a.verts[id].dim != b.verts[id].dim) return false;
        if (!(a.verts[id].d0 == b.verts[id].d0)) return false;
    }
    const StepMask full = (StepMask(1) << a.axes()) - 1;
    for (std::size_t id = 0; id < a.vertex_count(); ++id) {
        Vertex v = a.vertex_at(id);
        for (StepMask step = 1; step <= full; ++step) {
            Vertex target = v;
            bool ok = true;
            for (std::size_t i = 0; i < a.axes(); ++i)
                if (step & (StepMask(1) << i)) {
                    target[i] += 1;
                    if (target[i] > a.size[i]) ok = false;
                }
            if (!ok) continue;
            if (!(a.map_or_zero(id, step) == b.map_or_zero(id, step))) return false;
        }
    }
    return true;
}

ChainComplex make_complex(F2Matrix d) {
    if (d.rows != d.cols) throw SemanticError("chain complex: differential must be square");
    if (!mul(d, d).is_zero()) throw SemanticError("chain complex: d^2 != 0");
    return ChainComplex{std::move(d)};
}

MappingCone make_cone(ChainComplex source, ChainComplex target, F2Matrix f) {
    if (f.cols != source.d.rows || f.rows != target.d.rows)
        throw SemanticError("mapping cone: map shape mismatch");
    if (!(mul(f, source.d) == mul(target.d, f)))
        throw SemanticError("mapping cone: f is not a chain map");
    return MappingCone{std::move(source), std::move(target), std::move(f)};
}

std::size_t cone_rank(const MappingCone& m) {
    HomologyData hv = homology(m.source.d);
    HomologyData hw = homology(m.target.d);
    std::size_t direct =
        homology_rank_of(cone_matrix(m.source.d, m.target.d, m.f));
    if (hv.rank() != hw.rank()) return direct; // long-exact-sequence fallback
    std::size_t formula = 2 * hv.rank() - 2 * rank_f2(induced_map(m.f, hv, hw));
    if (formula != direct)
        throw std::logic_error("cone_rank: formula disagrees with direct homology");
    return formula;
}

F2Matrix gluing_reduce(const F2Matrix& f, const F2Matrix& g, const F2Matrix& j,
                       const F2Matrix& k) {
    auto jinv = inverse(j);
    if (!jinv)
        throw SemanticError("gluing_reduce: J is not a quasi-isomorphism (singular matrix)");
    return add(f, mul(g, mul(*jinv, k)));
}

HyperboxComplex hyperbox_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("hypercube: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "size" && it.key() != "vertices")
            throw ParseError("hypercube: unknown field '" + it.key() + "'");
    if (!j.contains("size") || !j.contains("vertices"))
        throw ParseError("hypercube: missing 'size' or 'vertices'");
    if (!j["size"].is_array()) throw ParseError("hypercube: 'size' must be an array");
    std::vector<int> size;
    for (const auto& x : j["size"]) {
        if (!x.is_number_integer()) throw ParseError("hypercube: sizes must be integers");
        int d = x.get<int>();
        if (d < 1 || d > 9) throw SemanticError("hypercube: sizes must be in [1, 9]");
        size.push_back(d);
    }
    if (size.empty() || size.size() > 12)
        throw SemanticError("hypercube: dimension must be in [1, 12]");
    HyperboxComplex h(size);

    const auto& verts = j["vertices"];
    if (!verts.is_object()) throw ParseError("hypercube: 'vertices' must be an object");

    auto parse_vertex_key = [&](const std::string& key) {
        if (key.size() != size.size())
            throw ParseError("hypercube: vertex key '" + key + "' has wrong length");
        Vertex v(size.size());
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (key[i] < '0' || key[i] > '9')
                throw ParseError("hypercube: vertex key '" + key + "' must be digits");
            v[i] = key[i] - '0';
            if (v[i] > size[i])
                throw SemanticError("hypercube: vertex '" + key + "' outside the box");
        }
        return v;
    };

    std::vector<bool> seen(h.vertex_count(), false);
    for (auto it = verts.begin(); it != verts.end(); ++it) {
        Vertex v = parse_vertex_key(it.key());
        std::size_t id = h.vertex_id(v);
        seen[id] = true;
        const auto& spec = it.value();
        if (!spec.is_object()) throw ParseError("hypercube: vertex spec must be an object");
        for (auto f = spec.begin(); f != spec.end(); ++f)
            if (f.key() != "dim" && f.key() != "grading" && f.key() != "maps")
                throw ParseError("hypercube: unknown vertex field '" + f.key() + "'");
        if (!spec.contains("dim") || !spec["dim"].is_number_integer())
            throw ParseError("hypercube: vertex needs an integer 'dim'");
        int dim = spec["dim"].get<int>();
        if (dim < 0 || dim > 4096) throw SemanticError("hypercube: vertex dim out of range");
        h.verts[id].dim = std::size_t(dim);
        h.verts[id].d0 = F2Matrix(dim, dim);
        if (spec.contains("grading")) {
            if (!spec["grading"].is_array() || (int)spec["grading"].size() != dim)
                throw ParseError("hypercube: grading must list one integer per generator");
            for (const auto& x : spec["grading"]) {
                if (!x.is_number_integer()) throw ParseError("hypercube: grading entries must be integers");
                h.verts[id].grading.push_back(x.get<int>());
            }
        }
    }
    for (std::size_t id = 0; id < h.vertex_count(); ++id)
        if (!seen[id]) {
            std::string key;
            for (int c : h.vertex_at(id)) key += std::to_string(c);
            throw SemanticError("hypercube: vertex '" + key + "' missing");
        }

    // Second pass: maps, once all dims are known.
    for (auto it = verts.begin(); it != verts.end(); ++it) {
        Vertex v = parse_vertex_key(it.key());
        std::size_t id = h.vertex_id(v);
        const auto& spec = it.value();
        if (!spec.contains("maps")) continue;
        if (!spec["maps"].is_object()) throw ParseError("hypercube: 'maps' must be an object");
        for (auto m = spec["maps"].begin(); m != spec["maps"].end(); ++m) {
            const std::string& sk = m.key();
            if (sk.size() != size.size())
                throw ParseError("hypercube: step key '" + sk + "' has wrong length");
            StepMask step = 0;
            for (std::size_t i = 0; i < sk.size(); ++i) {
                if (sk[i] == '1') step |= StepMask(1) << i;
                else if (sk[i] != '0')
                    throw ParseError("hypercube: step key '" + sk + "' must be 0/1 digits");
            }
            Vertex target = v;
            for (std::size_t i = 0; i < size.size(); ++i)
                if (step & (StepMask(1) << i)) target[i] += 1;
            if (!h.in_box(target))
                throw SemanticError("hypercube: map '" + it.key() + "' + '" + sk +
                                    "' exits the box");
            F2Matrix mat(h.verts[h.vertex_id(target)].dim, h.verts[id].dim);
            if (!m.value().is_array()) throw ParseError("hypercube: map entries must be an array");
            for (const auto& e : m.value()) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                    !e[1].is_number_integer())
                    throw ParseError("hypercube: map entries must be [row, col] pairs");
                std::size_t r = e[0].get<std::size_t>(), c = e[1].get<std::size_t>();
                if (r >= mat.rows || c >= mat.cols)
                    throw SemanticError("hypercube: map entry out of range");
                mat.flip(r, c);
            }
            h.set_map(id, step, std::move(mat));
        }
    }
    return h;
}

} // namespace cuphom
