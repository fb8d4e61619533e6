#include <doctest.h>

#include "cuphom/cupcomplex.hpp"
#include "cuphom/errors.hpp"
#include "cuphom/randgen.hpp"

using namespace cuphom;

namespace {

ThreeForm single_triple(int ell, long long c) {
    ThreeForm mu(ell);
    mu.set(1, 2, 3, c);
    return mu;
}

} // namespace

TEST_CASE("differential matrices") {
    ThreeForm mu = single_triple(3, 1);
    CHECK(differential_matrix_f2(mu, 0).is_zero());
    CHECK(differential_matrix_f2(mu, 2).is_zero());

    F2Matrix d3 = differential_matrix_f2(mu, 3);
    REQUIRE(d3.rows == 1);
    REQUIRE(d3.cols == 1);
    CHECK(d3.get(0, 0));

    // coefficient 2 dies mod 2 but survives over Z
    ThreeForm mu2 = single_triple(3, 2);
    CHECK(differential_matrix_f2(mu2, 3).is_zero());
    CHECK(differential_matrix_int(mu2, 3).at(0, 0) == 2);
}

TEST_CASE("cup homology ranks match the low-b1 laws") {
    for (int ell = 0; ell <= 2; ++ell) {
        CupComplex c{ThreeForm(ell)};
        RankReport r = homology_rank(c);
        CHECK(r.rank_f2 == std::size_t(1) << ell);
        CHECK(r.rank_q == std::size_t(1) << ell);
        CHECK_FALSE(r.two_torsion_detected);
    }

    RankReport r1 = homology_rank(CupComplex{single_triple(3, 1)});
    CHECK(r1.rank_f2 == 6);
    CHECK(r1.rank_q == 6);

    RankReport r2 = homology_rank(CupComplex{single_triple(3, 2)});
    CHECK(r2.rank_f2 == 8);
    CHECK(r2.rank_q == 6);
    CHECK(r2.two_torsion_detected);

    ThreeForm pair6(6);
    pair6.set(1, 2, 3, 1);
    pair6.set(4, 5, 6, 1);
    CHECK(homology_rank(CupComplex{pair6}).rank_f2 == 36);
}

TEST_CASE("per-degree profile against brute force on the unrolled algebra") {
    randgen::Rng rng(83);
    for (int t = 0; t < 40; ++t) {
        int ell = 3 + int(rng() % 4);
        ThreeForm mu = randgen::random_threeform(ell, 5, 3, rng);
        auto [total, by_degree] = homology_rank_f2(mu);
        // independent route: full differential on the 2^ell basis
        F2Matrix d = full_differential_f2(mu);
        CHECK(mul(d, d).is_zero());
        CHECK(total == d.rows - 2 * rank_f2(d));
        std::size_t sum = 0;
        for (auto v : by_degree) sum += v;
        CHECK(sum == total);
    }
}

TEST_CASE("d squares to zero in both rings") {
    randgen::Rng rng(89);
    for (int t = 0; t < 200; ++t) {
        ThreeForm mu = randgen::random_threeform(3 + int(rng() % 6), 6, 3, rng);
        F2Matrix d = full_differential_f2(mu);
        CHECK(mul(d, d).is_zero());
        IntMatrix dz = full_differential_int(mu);
        CHECK(mul(dz, dz).is_zero());
    }
}

TEST_CASE("rank defect bookkeeping") {
    randgen::Rng rng(97);
    for (int t = 0; t < 50; ++t) {
        int ell = 3 + int(rng() % 4);
        ThreeForm mu = randgen::random_threeform(ell, 5, 3, rng);
        auto [total, by_degree] = homology_rank_f2(mu);
        F2Matrix d = full_differential_f2(mu);
        CHECK(total + 2 * rank_f2(d) == std::size_t(1) << ell);
    }
}

TEST_CASE("modular rank path agrees with the Kunneth pin at ell = 12") {
    // dims reach 924, past the certified-Bareiss cutoff; the product shape
    // pins the true rank over Q at 6^4 = 1296
    ThreeForm mu(12);
    mu.set(1, 2, 3, 1);
    mu.set(4, 5, 6, 2);
    mu.set(7, 8, 9, 1);
    mu.set(10, 11, 12, 3);
    bool certified = true;
    CHECK(homology_rank_q(mu, &certified) == 1296);
    CHECK_FALSE(certified); // the large degrees go through the modular path
}

TEST_CASE("kunneth multiplicativity") {
    CHECK(kunneth_rank(ThreeForm(1), ThreeForm(1)) == 4);
    CHECK(kunneth_rank(single_triple(3, 1), ThreeForm(1)) == 12);
    CHECK(kunneth_rank(single_triple(3, 1), single_triple(3, 1)) == 36);

    randgen::Rng rng(101);
    for (int t = 0; t < 20; ++t) {
        ThreeForm a = randgen::random_threeform(3 + int(rng() % 2), 3, 3, rng);
        ThreeForm b = randgen::random_threeform(1 + int(rng() % 3), 2, 3, rng);
        std::size_t prod = homology_rank_f2(a).first * homology_rank_f2(b).first;
        CHECK(kunneth_rank(a, b) == prod);
    }
}

TEST_CASE("psi map special cases") {
    // mu2 = 0: both cross terms vanish
    ThreeForm mu1(4);
    mu1.set(1, 2, 3, 1);
    mu1.set(1, 2, 4, 1);
    PsiContext ctx = build_psi_context(mu1, ThreeForm(4), 1);
    CHECK(ctx.psi == ctx.a_star);
    CHECK(ctx.b_star.is_zero());

    // mu1 = mu2: the sum cancels mod 2 and the square vanishes
    PsiContext same = build_psi_context(mu1, mu1, 1);
    CHECK(same.psi.is_zero());

    // disagreement away from r is rejected
    ThreeForm nu(4);
    nu.set(2, 3, 4, 1);
    CHECK_THROWS_AS(build_psi_context(connect_sum(mu1, nu), mu1, 1), SemanticError);
}

TEST_CASE("psi rank example on the 32-dim space") {
    ThreeForm mu1(5), mu2(5);
    mu1.set(1, 2, 3, 1);
    mu2.set(1, 4, 5, 1);
    PsiContext ctx = build_psi_context(mu1, mu2, 1);
    // d^K contracts the union form; its full-space rank equals the rank of
    // the homology-level map here because nu = 0
    ThreeForm dk(5);
    dk.set(1, 2, 3, 1);
    dk.set(1, 4, 5, 1);
    std::size_t full_rank = rank_f2(full_differential_f2(dk));
    CHECK(rank_f2(ctx.dk_star) == full_rank);
    CHECK(rank_f2(ctx.psi) == full_rank);
}

TEST_CASE("psi involution and factorization identities") {
    randgen::Rng rng(103);
    for (int t = 0; t < 50; ++t) {
        auto sp = randgen::random_split_pair(4 + int(rng() % 3), rng);
        PsiContext ctx = build_psi_context(sp.mu1, sp.mu2, sp.r);
        F2Matrix id = F2Matrix::identity(ctx.h.rank());
        F2Matrix ia = add(id, ctx.a_star);
        F2Matrix ib = add(id, ctx.b_star);
        CHECK(mul(ia, ia) == id);
        CHECK(mul(ib, ib) == id);
        // psi = dk + a b  and  psi = Id + (Id+a)(Id+b)^{-1} with (Id+b)^{-1} = Id+b
        CHECK(ctx.psi == add(ctx.dk_star, mul(ctx.a_star, ctx.b_star)));
        CHECK(ctx.psi == add(id, mul(ia, ib)));
        CHECK(ctx.dk_star == add(ctx.a_star, ctx.b_star));
    }
}

TEST_CASE("psi reduction agrees with the full-space induced map") {
    // independent route: contract on all ell indices, pass to homology of
    // iota_nu there, and compare the induced rank of iota_{alpha+beta}
    // against the compacted (d^K)_* of the psi context
    randgen::Rng rng(179);
    for (int t = 0; t < 30; ++t) {
        auto sp = randgen::random_split_pair(4 + int(rng() % 2), rng);
        PsiContext ctx = build_psi_context(sp.mu1, sp.mu2, sp.r);

        ThreeForm nu = component_complement(sp.mu1, sp.r);
        ThreeForm rpart = connect_sum(component_part(sp.mu1, sp.r),
                                      component_part(sp.mu2, sp.r));
        F2Matrix dnu_full = full_differential_f2(nu);
        F2Matrix dk_full = full_differential_f2(rpart);
        REQUIRE(mul(dnu_full, dk_full) == mul(dk_full, dnu_full));
        HomologyData hfull = homology(dnu_full);
        std::size_t full_rank = rank_f2(induced_map(dk_full, hfull, hfull));
        CHECK(full_rank == rank_f2(ctx.dk_star));
        // the full homology is two copies of the r-free homology
        CHECK(hfull.rank() == 2 * ctx.h.rank());
    }
}

TEST_CASE("kernel containment and the rank inequality chain") {
    CHECK(kernel_containment_check(ThreeForm(3), ThreeForm(3), 1).contained);

    randgen::Rng rng(107);
    for (int t = 0; t < 50; ++t) {
        auto sp = randgen::random_split_pair(4 + int(rng() % 3), rng);
        KernelContainment kc = kernel_containment_check(sp.mu1, sp.mu2, sp.r);
        CHECK(kc.contained);

        PsiContext ctx = build_psi_context(sp.mu1, sp.mu2, sp.r);
        std::size_t h = ctx.h.rank();
        std::size_t cone_psi = 2 * h - 2 * rank_f2(ctx.psi);
        std::size_t cone_dk = 2 * h - 2 * rank_f2(ctx.dk_star);
        CHECK(cone_psi >= cone_dk);

        // cone of (d^K)_* computes the cup homology of the recombined form
        ThreeForm nu = component_complement(sp.mu1, sp.r);
        ThreeForm full = connect_sum(nu, connect_sum(component_part(sp.mu1, sp.r),
                                                     component_part(sp.mu2, sp.r)));
        CHECK(cone_dk == homology_rank_f2(full).first);
    }
}
