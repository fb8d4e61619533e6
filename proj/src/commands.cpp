#include "cuphom/commands.hpp"

#include "cuphom/cupcomplex.hpp"
#include "cuphom/cupform.hpp"
#include "cuphom/errors.hpp"
#include "cuphom/hypercube.hpp"
#include "cuphom/randgen.hpp"
#include "cuphom/specseq.hpp"
#include "cuphom/surgery.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace cuphom {

namespace {

using ojson = nlohmann::ordered_json;

ojson load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    ojson j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return j;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const RelationError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

void emit(const ojson& j, const RunConfig& cfg, std::ostream& out,
          const std::function<void(std::ostream&)>& text) {
    if (cfg.format == "text") text(out);
    else out << j.dump(2) << "\n";
}

} // namespace

int run_cup(const std::string& input_path, const RunConfig& cfg, std::ostream& out,
            std::ostream& err) {
    return guarded(err, [&]() -> int {
        LinkModel lm = linkmodel_from_json(load_json(input_path));
        if (!lm.homologically_split())
            throw SemanticError("link is not homologically split (nonzero pairwise linking)");
        const bool want_f2 = cfg.ring == "f2" || cfg.ring == "both";
        const bool want_q = cfg.ring == "q" || cfg.ring == "both";
        if (!want_f2 && !want_q) throw SemanticError("ring must be f2, q or both");

        ojson rep;
        std::optional<std::size_t> rank_f2_val, rank_q_val;
        std::vector<std::size_t> by_degree;
        if (want_f2) {
            auto [total, degrees] = homology_rank_f2(lm.milnor);
            rank_f2_val = total;
            by_degree = degrees;
        }
        bool certified = true;
        if (want_q) rank_q_val = homology_rank_q(lm.milnor, &certified);

        rep["rank_f2"] = rank_f2_val ? ojson(*rank_f2_val) : ojson(nullptr);
        rep["rank_q"] = rank_q_val ? ojson(*rank_q_val) : ojson(nullptr);
        rep["by_degree"] = want_f2 ? ojson(by_degree) : ojson(nullptr);
        rep["two_torsion"] = (rank_f2_val && rank_q_val)
                                 ? ojson(*rank_f2_val > *rank_q_val)
                                 : ojson(nullptr);
        emit(rep, cfg, out, [&](std::ostream& o) {
            o << "ell " << lm.ell << "\n";
            if (rank_f2_val) o << "rank_f2 " << *rank_f2_val << "\n";
            if (rank_q_val) o << "rank_q " << *rank_q_val << "\n";
            if (want_f2) {
                o << "by_degree";
                for (auto d : by_degree) o << " " << d;
                o << "\n";
            }
            if (rank_f2_val && rank_q_val)
                o << "two_torsion " << (*rank_f2_val > *rank_q_val ? "yes" : "no") << "\n";
        });
        return 0;
    });
}

int run_surgery_knot(const std::string& input_path, long long framing, const RunConfig& cfg,
                     std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        ModelKnotComplex k = knot_from_json(load_json(input_path));
        SurgeryComplexSlice slice = knot_surgery_complex(k, framing, {}, cfg.truncation);
        ojson rep;
        rep["framing"] = slice.framing;
        rep["truncation"] = slice.truncation;
        rep["classes"] = ojson::array();
        for (const auto& cls : slice.classes)
            rep["classes"].push_back({{"class", cls.class_rep}, {"rank", cls.rank}});
        rep["truncation_stable"] = slice.truncation_stable;
        emit(rep, cfg, out, [&](std::ostream& o) {
            o << "framing " << slice.framing << "  truncation " << slice.truncation << "\n";
            for (const auto& cls : slice.classes)
                o << "class " << cls.class_rep << ": rank " << cls.rank << "\n";
            o << "truncation_stable " << (slice.truncation_stable ? "yes" : "no") << "\n";
        });
        return 0;
    });
}

int run_hypercube(const std::string& input_path, const RunConfig& cfg, std::ostream& out,
                  std::ostream& err) {
    return guarded(err, [&]() -> int {
        HyperboxComplex h = hyperbox_from_json(load_json(input_path));
        std::vector<RelationViolation> bad = check_relations(h);

        ojson rep;
        rep["relations_ok"] = bad.empty();
        rep["violations"] = ojson::array();
        for (const auto& v : bad) {
            std::string eps, step;
            for (int c : v.eps) eps += std::to_string(c);
            for (std::size_t i = 0; i < h.axes(); ++i)
                step += (v.step & (StepMask(1) << i)) ? '1' : '0';
            rep["violations"].push_back({eps, step});
        }
        if (!bad.empty()) {
            emit(rep, cfg, out, [&](std::ostream& o) {
                o << "relations FAIL\n";
                for (const auto& v : rep["violations"])
                    o << "violated at eps=" << v[0].get<std::string>()
                      << " eps'=" << v[1].get<std::string>() << "\n";
            });
            err << "error: hyperbox relations violated\n";
            return 4;
        }
        if (cfg.check_only) {
            emit(rep, cfg, out, [&](std::ostream& o) { o << "relations ok\n"; });
            return 0;
        }
        if (!h.is_hypercube())
            throw SemanticError("page computation needs a hypercube; use --check for boxes");

        TotalComplex t = total_complex(h);
        FilteredComplex fc = from_hypercube(t, int(h.axes()));
        const int depth = fc.depth();
        const int upto = cfg.pages.value_or(depth + 1);

        rep["page_dims"] = ojson::object();
        int last_live = 0;
        for (int r = 1; r <= std::max(upto, depth); ++r) {
            Page pg = page(fc, r);
            if (r <= upto) rep["page_dims"][std::to_string(r)] = pg.dims();
            if (r <= depth && !pg.d_is_zero()) last_live = r;
        }
        CollapseReport cr = collapse_check(fc, last_live + 1);
        rep["collapse_page"] = last_live + 1;
        rep["e_infinity_total"] = cr.e_infinity_total;
        rep["total_homology"] = cr.total_homology;
        rep["converges"] = cr.e_infinity_total == cr.total_homology;

        emit(rep, cfg, out, [&](std::ostream& o) {
            o << "relations ok\n";
            for (auto it = rep["page_dims"].begin(); it != rep["page_dims"].end(); ++it) {
                o << "E_" << it.key() << " dims";
                for (const auto& d : it.value()) o << " " << d.get<std::size_t>();
                o << "\n";
            }
            o << "collapse at page " << rep["collapse_page"].get<int>() << "\n";
            o << "E_infinity total " << cr.e_infinity_total << " = total homology "
              << cr.total_homology << "\n";
        });
        return 0;
    });
}

namespace {

ojson reduce_node_report(const ReductionNode& node) {
    ojson n;
    n["triples"] = threeform_to_json(node.form)["triples"];
    n["complexity"] = complexity(node.form);
    auto [rank, by_degree] = homology_rank_f2(node.form);
    n["rank_f2"] = rank;
    switch (node.kind) {
        case ReductionNode::Kind::Leaf: n["kind"] = "leaf"; break;
        case ReductionNode::Kind::KnotSplit: n["kind"] = "knot_split"; break;
        case ReductionNode::Kind::DisjointSplit: n["kind"] = "disjoint_split"; break;
    }
    if (node.kind == ReductionNode::Kind::KnotSplit) {
        n["r"] = node.r;
        // Psi calculus runs on the two split forms sharing the r-free part.
        ThreeForm nu = component_complement(node.form, node.r);
        ThreeForm mu1 = node.left->form;
        ThreeForm mu2 = connect_sum(nu, node.right->form);
        PsiContext ctx = build_psi_context(mu1, mu2, node.r);
        std::size_t h = ctx.h.rank();
        std::size_t cone_dk = 2 * h - 2 * rank_f2(ctx.dk_star);
        std::size_t cone_psi = 2 * h - 2 * rank_f2(ctx.psi);
        KernelContainment kc = kernel_containment_check(mu1, mu2, node.r);
        n["checks"] = {{"cone_dk_rank", cone_dk},
                       {"cone_psi_rank", cone_psi},
                       {"parent_rank_equals_cone_dk", cone_dk == rank},
                       {"kernel_containment", kc.contained},
                       {"rank_inequality", cone_psi >= rank}};
    }
    if (node.kind == ReductionNode::Kind::DisjointSplit) {
        std::size_t left = homology_rank_f2(node.left->form).first;
        std::size_t right = homology_rank_f2(node.right->form).first;
        bool kunneth =
            left * right == rank * (std::size_t(1) << node.form.ell);
        n["checks"] = {{"left_rank", left}, {"right_rank", right}, {"kunneth", kunneth}};
    }
    if (node.left) {
        n["children"] = ojson::array();
        n["children"].push_back(reduce_node_report(*node.left));
        n["children"].push_back(reduce_node_report(*node.right));
    }
    return n;
}

void reduce_text(const ojson& n, std::ostream& o, int indent) {
    std::string pad(std::size_t(indent) * 2, ' ');
    o << pad << n["kind"].get<std::string>() << " c=" << n["complexity"].get<std::size_t>()
      << " rank_f2=" << n["rank_f2"].get<std::size_t>();
    if (n.contains("r")) o << " r=" << n["r"].get<int>();
    if (n.contains("checks")) {
        o << " checks[";
        bool first = true;
        for (auto it = n["checks"].begin(); it != n["checks"].end(); ++it) {
            if (!first) o << " ";
            first = false;
            o << it.key() << "=" << it.value().dump();
        }
        o << "]";
    }
    o << "\n";
    if (n.contains("children"))
        for (const auto& c : n["children"]) reduce_text(c, o, indent + 1);
}

bool reduce_checks_pass(const ojson& n) {
    if (n.contains("checks"))
        for (auto it = n["checks"].begin(); it != n["checks"].end(); ++it)
            if (it.value().is_boolean() && !it.value().get<bool>()) return false;
    if (n.contains("children"))
        for (const auto& c : n["children"])
            if (!reduce_checks_pass(c)) return false;
    return true;
}

} // namespace

int run_reduce(const std::string& input_path, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&]() -> int {
        ThreeForm mu = threeform_from_json(load_json(input_path));
        auto trace = reduction_trace(mu);
        ojson rep;
        rep["trace"] = reduce_node_report(*trace);
        std::vector<const ReductionNode*> leaves;
        trace->leaves(leaves);
        bool leaves_ok = true;
        for (const auto* l : leaves)
            if (complexity(l->form) > 1) leaves_ok = false;
        rep["leaves"] = leaves.size();
        rep["all_leaves_c_le_1"] = leaves_ok;
        rep["all_checks_pass"] = reduce_checks_pass(rep["trace"]);
        emit(rep, cfg, out, [&](std::ostream& o) {
            reduce_text(rep["trace"], o, 0);
            o << "leaves " << leaves.size() << ", all c<=1: " << (leaves_ok ? "yes" : "no")
              << ", checks: " << (rep["all_checks_pass"].get<bool>() ? "pass" : "FAIL") << "\n";
        });
        return rep["all_checks_pass"].get<bool>() && leaves_ok ? 0 : 3;
    });
}

int run_properties(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        randgen::Rng rng(cfg.seed);
        ojson rep;
        bool all_ok = true;
        auto record = [&](const std::string& name, bool ok) {
            rep[name] = ok ? "pass" : "fail";
            all_ok = all_ok && ok;
        };

        const std::size_t n_d2 = cfg.count.value_or(50);
        bool d2_ok = true;
        for (std::size_t t = 0; t < n_d2; ++t) {
            ThreeForm mu = randgen::random_threeform(3 + int(rng() % 6), 6, 3, rng);
            F2Matrix d = full_differential_f2(mu);
            if (!mul(d, d).is_zero()) d2_ok = false;
            IntMatrix dz = full_differential_int(mu);
            if (!mul(dz, dz).is_zero()) d2_ok = false;
        }
        record("d_squared_zero", d2_ok);

        bool cone_ok = true;
        for (std::size_t t = 0; t < cfg.count.value_or(50); ++t) {
            std::size_t n = 2 + rng() % 8;
            std::size_t r = rng() % (n / 2 + 1);
            F2Matrix dv = randgen::random_differential(n, r, rng);
            F2Matrix dw = randgen::random_differential(n, r, rng);
            F2Matrix f = randgen::random_chain_map(dv, dw, rng);
            MappingCone cone = make_cone(make_complex(dv), make_complex(dw), f);
            std::size_t direct = homology_rank_of(cone_matrix(dv, dw, f));
            if (cone_rank(cone) != direct) cone_ok = false;
        }
        record("cone_rank_formula", cone_ok);

        bool glue_ok = true;
        for (std::size_t t = 0; t < cfg.count.value_or(50); ++t) {
            std::size_t n = 1 + rng() % 6;
            F2Matrix f = randgen::random_matrix(n, n, rng);
            F2Matrix g = randgen::random_matrix(n, n, rng);
            F2Matrix jm = randgen::random_invertible(n, rng);
            F2Matrix k = randgen::random_matrix(n, n, rng);
            F2Matrix reduced = gluing_reduce(f, g, jm, k);
            F2Matrix theta(2 * n, 2 * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (f.get(i, j)) theta.set(i, j, true);
                    if (g.get(i, j)) theta.set(i, n + j, true);
                    if (k.get(i, j)) theta.set(n + i, j, true);
                    if (jm.get(i, j)) theta.set(n + i, n + j, true);
                }
            std::size_t lhs = 2 * (2 * n) - 2 * rank_f2(theta);
            std::size_t rhs = 2 * n - 2 * rank_f2(reduced);
            if (lhs != rhs) glue_ok = false;
        }
        record("gluing_lemma", glue_ok);

        bool kun_ok = true;
        for (std::size_t t = 0; t < cfg.count.value_or(50) / 5 + 1; ++t) {
            ThreeForm a = randgen::random_threeform(3 + int(rng() % 2), 2, 2, rng);
            ThreeForm b = randgen::random_threeform(3 + int(rng() % 2), 2, 2, rng);
            std::size_t prod = homology_rank_f2(a).first * homology_rank_f2(b).first;
            if (kunneth_rank(a, b) != prod) kun_ok = false;
        }
        record("kunneth_multiplicativity", kun_ok);

        bool psi_ok = true;
        for (std::size_t t = 0; t < cfg.count.value_or(50) / 5 + 1; ++t) {
            auto sp = randgen::random_split_pair(4 + int(rng() % 3), rng);
            PsiContext ctx = build_psi_context(sp.mu1, sp.mu2, sp.r);
            F2Matrix id = F2Matrix::identity(ctx.h.rank());
            F2Matrix ia = add(id, ctx.a_star), ib = add(id, ctx.b_star);
            if (!(mul(ia, ia) == id) || !(mul(ib, ib) == id)) psi_ok = false;
            F2Matrix expected = add(ctx.dk_star, mul(ctx.a_star, ctx.b_star));
            if (!(ctx.psi == expected)) psi_ok = false;
            if (!kernel_containment_check(sp.mu1, sp.mu2, sp.r).contained) psi_ok = false;
        }
        record("psi_calculus", psi_ok);

        rep["seed"] = cfg.seed;
        emit(rep, cfg, out, [&](std::ostream& o) {
            for (auto it = rep.begin(); it != rep.end(); ++it)
                o << it.key() << " " << it.value().dump() << "\n";
        });
        if (!all_ok) err << "error: property suite failed\n";
        return all_ok ? 0 : 3;
    });
}

} // namespace cuphom
