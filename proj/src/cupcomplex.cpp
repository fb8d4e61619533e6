#include "cuphom/cupcomplex.hpp"
#include "cuphom/errors.hpp"

#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cuphom {

namespace {

// Positions of s within the ascending mask enumeration of its degree.
std::vector<std::size_t> index_of_masks(const std::vector<Mask>& basis, int ell) {
    std::vector<std::size_t> idx(std::size_t(1) << ell, SIZE_MAX);
    for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
    return idx;
}

} // namespace

F2Matrix differential_matrix_f2(const ThreeForm& mu, int degree) {
    if (degree < 0 || degree > mu.ell)
        throw SemanticError("differential_matrix: degree out of range");
    GradedPiece src = degree_basis(mu.ell, degree);
    GradedPiece dst = degree_basis(mu.ell, degree - 3);
    F2Matrix d(dst.basis.size(), src.basis.size());
    if (degree < 3) return d;
    auto dst_idx = index_of_masks(dst.basis, mu.ell);
    for (std::size_t j = 0; j < src.basis.size(); ++j) {
        Mask s = src.basis[j];
        for (const auto& [t, c] : mu.triples) {
            if ((s & t) != t || (c % 2 == 0)) continue;
            d.flip(dst_idx[s & ~t], j);
        }
    }
    return d;
}

IntMatrix differential_matrix_int(const ThreeForm& mu, int degree) {
    if (degree < 0 || degree > mu.ell)
        throw SemanticError("differential_matrix: degree out of range");
    GradedPiece src = degree_basis(mu.ell, degree);
    GradedPiece dst = degree_basis(mu.ell, degree - 3);
    IntMatrix d(dst.basis.size(), src.basis.size());
    if (degree < 3) return d;
    auto dst_idx = index_of_masks(dst.basis, mu.ell);
    for (std::size_t j = 0; j < src.basis.size(); ++j) {
        Mask s = src.basis[j];
        for (const auto& [t, c] : mu.triples) {
            if ((s & t) != t) continue;
            d.at(dst_idx[s & ~t], j) += shuffle_sign(t, s & ~t) * c;
        }
    }
    return d;
}

F2Matrix full_differential_f2(const ThreeForm& mu) {
    std::size_t n = std::size_t(1) << mu.ell;
    F2Matrix d(n, n);
    for (Mask s = 0; s < n; ++s)
        for (const auto& [t, c] : mu.triples) {
            if ((Mask(s) & t) != t || (c % 2 == 0)) continue;
            d.flip(Mask(s) & ~t, s);
        }
    return d;
}

IntMatrix full_differential_int(const ThreeForm& mu) {
    std::size_t n = std::size_t(1) << mu.ell;
    IntMatrix d(n, n);
    for (Mask s = 0; s < n; ++s)
        for (const auto& [t, c] : mu.triples) {
            if ((Mask(s) & t) != t) continue;
            d.at(Mask(s) & ~t, s) += shuffle_sign(t, Mask(s) & ~t) * c;
        }
    return d;
}

std::pair<std::size_t, std::vector<std::size_t>> homology_rank_f2(const ThreeForm& mu) {
    const int ell = mu.ell;
    std::vector<std::size_t> drank(ell + 4, 0);
#pragma omp parallel for schedule(dynamic)
    for (int i = 3; i <= ell; ++i)
        drank[i] = rank_f2(differential_matrix_f2(mu, i));

    std::vector<std::size_t> by_degree(ell + 1, 0);
    std::size_t total = 0;
    for (int i = 0; i <= ell; ++i) {
        std::size_t dim_i = degree_basis(ell, i).basis.size();
        by_degree[i] = dim_i - drank[i] - (i + 3 <= ell ? drank[i + 3] : 0);
        total += by_degree[i];
    }
    return {total, by_degree};
}

std::size_t homology_rank_q(const ThreeForm& mu, bool* certified) {
    const int ell = mu.ell;
    std::vector<std::size_t> drank(ell + 4, 0);
    bool all_certified = true;
#pragma omp parallel for schedule(dynamic)
    for (int i = 3; i <= ell; ++i) {
        QRank qr = rank_q(differential_matrix_int(mu, i));
        drank[i] = qr.rank;
        if (!qr.certified) {
#pragma omp critical
            all_certified = false;
        }
    }
    std::size_t total = 0;
    for (int i = 0; i <= ell; ++i) {
        std::size_t dim_i = degree_basis(ell, i).basis.size();
        total += dim_i - drank[i] - (i + 3 <= ell ? drank[i + 3] : 0);
    }
    if (certified) *certified = all_certified;
    return total;
}

RankReport homology_rank(const CupComplex& c) {
    RankReport r;
    auto [f2_total, by_degree] = homology_rank_f2(c.mu);
    r.rank_f2 = f2_total;
    r.by_degree = std::move(by_degree);
    r.rank_q = homology_rank_q(c.mu, &r.q_certified);
    if (r.rank_f2 < r.rank_q)
        throw std::logic_error("rank over F2 fell below rank over Q");
    r.two_torsion_detected = r.rank_f2 > r.rank_q;
    return r;
}

namespace {

// Contraction by a k-form as a matrix on the unrolled 2^m basis, mod 2.
F2Matrix contraction_matrix(const AltForm& f, int m) {
    std::size_t n = std::size_t(1) << m;
    F2Matrix d(n, n);
    for (Mask s = 0; s < n; ++s)
        for (const auto& [t, c] : f.coeff) {
            if ((Mask(s) & t) != t || (c % 2 == 0)) continue;
            d.flip(Mask(s) & ~t, s);
        }
    return d;
}

// The r-triples of mu, as a 2-form on the remaining indices (compacted).
AltForm two_form_at(const ThreeForm& mu, int r) {
    AltForm f;
    f.ell = mu.ell - 1;
    f.k = 2;
    Mask rbit = Mask(1) << (r - 1);
    Mask low = rbit - 1;
    for (const auto& [t, c] : mu.triples) {
        if (!(t & rbit) || (c % 2 == 0)) continue;
        Mask rest = t & ~rbit;
        Mask compact = (rest & low) | ((rest >> 1) & ~low);
        f.add_term(compact, 1);
    }
    return f;
}

// nu compacted to the indices != r.
AltForm r_free_form(const ThreeForm& mu, int r) {
    AltForm f;
    f.ell = mu.ell - 1;
    f.k = 3;
    Mask rbit = Mask(1) << (r - 1);
    Mask low = rbit - 1;
    for (const auto& [t, c] : mu.triples) {
        if ((t & rbit) || (c % 2 == 0)) continue;
        Mask compact = (t & low) | ((t >> 1) & ~low);
        f.add_term(compact, 1);
    }
    return f;
}

} // namespace

PsiContext build_psi_context(const ThreeForm& mu1, const ThreeForm& mu2, int r) {
    if (mu1.ell != mu2.ell) throw SemanticError("psi_map: mismatched ell");
    if (r < 1 || r > mu1.ell) throw SemanticError("psi_map: split index out of range");
    AltForm nu1 = r_free_form(mu1, r), nu2 = r_free_form(mu2, r);
    if (!(nu1.coeff == nu2.coeff))
        throw SemanticError("psi_map: split pieces disagree on r-free triples");

    PsiContext ctx;
    ctx.ell = mu1.ell;
    ctx.r = r;
    const int m = mu1.ell - 1;
    F2Matrix dnu = contraction_matrix(nu1, m);
    ctx.h = homology(dnu);

    F2Matrix a = contraction_matrix(two_form_at(mu1, r), m);
    F2Matrix b = contraction_matrix(two_form_at(mu2, r), m);
    ctx.a_star = induced_map(a, ctx.h, ctx.h);
    ctx.b_star = induced_map(b, ctx.h, ctx.h);
    ctx.dk_star = induced_map(add(a, b), ctx.h, ctx.h);
    ctx.psi = add(add(ctx.a_star, ctx.b_star), mul(ctx.a_star, ctx.b_star));
    return ctx;
}

F2Matrix psi_map(const ThreeForm& mu1, const ThreeForm& mu2, int r) {
    return build_psi_context(mu1, mu2, r).psi;
}

KernelContainment kernel_containment_check(const ThreeForm& mu1, const ThreeForm& mu2, int r) {
    PsiContext ctx = build_psi_context(mu1, mu2, r);
    KernelContainment out;
    for (const F2Vec& v : kernel_basis(ctx.dk_star)) {
        if (!apply(ctx.psi, v).is_zero()) {
            out.contained = false;
            out.witness_class = v;
            return out;
        }
    }
    return out;
}

ThreeForm direct_sum_form(const ThreeForm& a, const ThreeForm& b) {
    ThreeForm out(a.ell + b.ell);
    for (const auto& [t, c] : a.triples) out.add(t, c);
    for (const auto& [t, c] : b.triples) out.add(t << a.ell, c);
    return out;
}

std::size_t kunneth_rank(const ThreeForm& a, const ThreeForm& b) {
    ThreeForm sum = direct_sum_form(a, b);
    std::size_t product_f2 = homology_rank_f2(a).first * homology_rank_f2(b).first;
    std::size_t direct_f2 = homology_rank_f2(sum).first;
    if (product_f2 != direct_f2)
        throw std::logic_error("kunneth_rank: F2 product mismatch");
    std::size_t product_q = homology_rank_q(a) * homology_rank_q(b);
    std::size_t direct_q = homology_rank_q(sum);
    if (product_q != direct_q)
        throw std::logic_error("kunneth_rank: Q product mismatch");
    return product_f2;
}

} // namespace cuphom
