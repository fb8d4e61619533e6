#include <doctest.h>

#include "cuphom/cupcomplex.hpp"
#include "cuphom/errors.hpp"
#include "cuphom/randgen.hpp"
#include "cuphom/specseq.hpp"
#include "cuphom/surgery.hpp"

using namespace cuphom;

namespace {

FilteredComplex model_complex(const ThreeForm& mu) {
    HyperboxComplex h = build_cup_model_cube(mu);
    return from_hypercube(total_complex(h), mu.ell);
}

} // namespace

TEST_CASE("filtration from the hypercube") {
    ThreeForm mu(2);
    FilteredComplex fc = model_complex(mu);
    // 2-cube: values ell - ||eps|| in {0,1,2} with binomial counts
    std::vector<int> counts(3, 0);
    for (int f : fc.filtration) counts[f]++;
    CHECK(counts == std::vector<int>{1, 2, 1});

    ThreeForm mu3(3);
    mu3.set(1, 2, 3, 1);
    FilteredComplex fc3 = model_complex(mu3);
    std::vector<int> c3(4, 0);
    for (int f : fc3.filtration) c3[f]++;
    CHECK(c3 == std::vector<int>{1, 3, 3, 1});

    // the differential may not increase filtration
    F2Matrix up(2, 2);
    up.set(0, 1, true);
    CHECK_THROWS_AS(make_filtered(up, {1, 0}), SemanticError);
}

TEST_CASE("pages of a zero differential") {
    FilteredComplex fc = make_filtered(F2Matrix(5, 5), {0, 0, 1, 2, 2});
    for (int r = 1; r <= 4; ++r) {
        Page pg = page(fc, r);
        CHECK(pg.total_dim() == 5);
        CHECK(pg.d_is_zero());
    }
    CollapseReport cr = collapse_check(fc, 1);
    CHECK(cr.collapsed);
    CHECK(cr.e_infinity_total == 5);
}

TEST_CASE("cup-model cube pages for ell = 3") {
    ThreeForm mu(3);
    mu.set(1, 2, 3, 1);
    FilteredComplex fc = model_complex(mu);

    Page e1 = page(fc, 1);
    CHECK(e1.total_dim() == 8);
    CHECK(e1.d_is_zero());
    Page e2 = page(fc, 2);
    CHECK(e2.total_dim() == 8);
    CHECK(e2.d_is_zero());
    Page e3 = page(fc, 3);
    CHECK(e3.total_dim() == 8);
    std::size_t d3_rank = 0;
    for (const auto& lvl : e3.levels) d3_rank += rank_f2(lvl.d_r);
    CHECK(d3_rank == 1);
    Page e4 = page(fc, 4);
    CHECK(e4.total_dim() == 6);

    CollapseReport cr = collapse_check(fc, 4);
    CHECK(cr.collapsed);
    CHECK(cr.e_infinity_total == 6);
    CHECK(cr.total_homology == 6);
}

TEST_CASE("depth-1 filtration of a mapping cone recovers the induced map") {
    randgen::Rng rng(151);
    // zero differentials: d1 must literally equal the chain map matrix
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 1 + rng() % 6;
        F2Matrix f = randgen::random_matrix(n, n, rng);
        F2Matrix cone = cone_matrix(F2Matrix(n, n), F2Matrix(n, n), f);
        std::vector<int> filt(2 * n, 0);
        for (std::size_t i = 0; i < n; ++i) filt[i] = 1;
        FilteredComplex fc = make_filtered(cone, filt);
        Page e1 = page(fc, 1);
        const PageLevel* top = e1.level(1);
        REQUIRE(top != nullptr);
        REQUIRE(top->reps.size() == n);
        CHECK(top->d_r == f);
        // E_2 is already E_infinity for a depth-1 filtration
        CHECK(page(fc, 2).total_dim() == homology_rank_of(cone));
    }
    // with internal differentials, d1 has the rank of the induced map
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 2 + rng() % 6;
        std::size_t r = rng() % (n / 2 + 1);
        F2Matrix dv = randgen::random_differential(n, r, rng);
        F2Matrix dw = randgen::random_differential(n, r, rng);
        F2Matrix f = randgen::random_chain_map(dv, dw, rng);
        F2Matrix cone = cone_matrix(dv, dw, f);
        std::vector<int> filt(2 * n, 0);
        for (std::size_t i = 0; i < n; ++i) filt[i] = 1;
        FilteredComplex fc = make_filtered(cone, filt);
        Page e1 = page(fc, 1);
        HomologyData hv = homology(dv), hw = homology(dw);
        std::size_t d1_rank = 0;
        for (const auto& lvl : e1.levels) d1_rank += rank_f2(lvl.d_r);
        CHECK(d1_rank == rank_f2(induced_map(f, hv, hw)));
        CHECK(page(fc, 2).total_dim() == homology_rank_of(cone));
    }
}

TEST_CASE("page dimensions are monotone and d_r squares to zero") {
    randgen::Rng rng(157);
    for (int t = 0; t < 25; ++t) {
        ThreeForm mu = randgen::random_threeform(3 + int(rng() % 3), 4, 3, rng);
        FilteredComplex fc = model_complex(mu);
        const int depth = fc.depth();
        std::vector<std::size_t> prev_dims;
        for (int r = 1; r <= depth + 2; ++r) {
            Page pg = page(fc, r);
            // levelwise monotone nonincreasing dimensions
            std::vector<std::size_t> dims = pg.dims();
            if (!prev_dims.empty())
                for (std::size_t k = 0; k < dims.size(); ++k) CHECK(dims[k] <= prev_dims[k]);
            prev_dims = dims;
            // d_r d_r = 0: compose level p -> p-r -> p-2r
            for (const auto& lvl : pg.levels) {
                int q = lvl.p - pg.r;
                const PageLevel* mid = pg.level(q);
                if (!mid || lvl.d_r.rows == 0 || mid->d_r.rows == 0) continue;
                CHECK(mul(mid->d_r, lvl.d_r).is_zero());
            }
            if (r > depth) CHECK(pg.d_is_zero()); // depth bound
        }
        CollapseReport cr = collapse_check(fc, 1);
        CHECK(cr.e_infinity_total == cr.total_homology);
    }
}

TEST_CASE("pages satisfy the homology recursion on generic cubes") {
    // cubes with internal differentials and vertex dims > 1: the next page
    // must be the homology of the current one, levelwise
    randgen::Rng rng(173);
    for (int t = 0; t < 20; ++t) {
        HyperboxComplex h = randgen::random_hyperbox({1, 1}, 5, rng);
        FilteredComplex fc = from_hypercube(total_complex(h), 2);
        for (int r = 1; r <= fc.depth() + 1; ++r) {
            Page cur = page(fc, r);
            Page next = page(fc, r + 1);
            for (const auto& lvl : cur.levels) {
                std::size_t incoming = 0;
                const PageLevel* above = cur.level(lvl.p + r);
                if (above) incoming = rank_f2(above->d_r);
                std::size_t expect = lvl.reps.size() - rank_f2(lvl.d_r) - incoming;
                const PageLevel* nxt = next.level(lvl.p);
                CHECK((nxt ? nxt->reps.size() : 0) == expect);
            }
        }
    }
}

TEST_CASE("model spectral sequence: d1 = d2 = 0, d3 = contraction, E4 collapse") {
    randgen::Rng rng(163);
    for (int t = 0; t < 25; ++t) {
        int ell = 3 + int(rng() % 4);
        ThreeForm mu = randgen::random_threeform(ell, 4, 3, rng);
        FilteredComplex fc = model_complex(mu);
        CHECK(page(fc, 1).d_is_zero());
        CHECK(page(fc, 2).d_is_zero());
        E3Identification id = identify_e3_with_exterior(fc, mu);
        CHECK(id.matches);
        CollapseReport cr = collapse_check(fc, 4);
        CHECK(cr.collapsed);
        CHECK(cr.e_infinity_total == homology_rank_f2(mu).first);
    }
}

TEST_CASE("e3 identification specifics") {
    ThreeForm mu(3);
    mu.set(1, 2, 3, 1);
    E3Identification id = identify_e3_with_exterior(model_complex(mu), mu);
    CHECK(id.matches);

    ThreeForm zero(3);
    E3Identification idz = identify_e3_with_exterior(model_complex(zero), zero);
    CHECK(idz.matches);
    for (const auto& m : idz.d3_on_exterior) CHECK(m.is_zero());

    ThreeForm mu4(4);
    mu4.set(1, 2, 3, 1);
    E3Identification id4 = identify_e3_with_exterior(model_complex(mu4), mu4);
    CHECK(id4.matches);
    std::size_t total_rank = 0;
    for (const auto& m : id4.d3_on_exterior) total_rank += rank_f2(m);
    CHECK(total_rank == 2);

    // non-model input is rejected
    FilteredComplex plain = make_filtered(F2Matrix(8, 8), std::vector<int>(8, 0));
    CHECK_THROWS_AS(identify_e3_with_exterior(plain, mu), SemanticError);
}

TEST_CASE("perturbed model breaks E4 collapse but still converges") {
    ThreeForm mu(5);
    HyperboxComplex h = build_cup_model_cube(mu);
    F2Matrix one(1, 1);
    one.set(0, 0, true);
    HyperboxComplex hp = perturb_model(h, {{Vertex{0, 0, 0, 0, 0}, StepMask(0b11111), one}});
    FilteredComplex fc = from_hypercube(total_complex(hp), 5);
    CollapseReport cr = collapse_check(fc, 4);
    CHECK_FALSE(cr.collapsed);
    CHECK(cr.first_live_page == 5);
    CHECK(cr.e_infinity_total == cr.total_homology);
    CHECK(cr.total_homology == 30);
    CHECK(collapse_check(fc, 6).collapsed);
}
