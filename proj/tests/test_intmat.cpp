#include <doctest.h>

#include "cuphom/errors.hpp"
#include "cuphom/f2.hpp"
#include "cuphom/intmat.hpp"
#include "cuphom/randgen.hpp"

using namespace cuphom;

namespace {

IntMatrix from_ints(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

IntMatrix diag_of(const SmithForm& s, std::size_t rows, std::size_t cols) {
    IntMatrix d(rows, cols);
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) d.at(i, i) = s.diagonal[i];
    return d;
}

void check_snf(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
        if (s.diagonal[i] == 0) CHECK(s.diagonal[i + 1] == 0);
        else CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    }
    CHECK(mul(mul(s.left, m), s.right).a == diag_of(s, m.rows, m.cols).a);
}

} // namespace

TEST_CASE("smith normal form examples") {
    SmithForm a = smith_normal_form(from_ints({{2}}));
    CHECK(a.diagonal == std::vector<Int>{2});

    SmithForm b = smith_normal_form(IntMatrix::identity(5));
    for (const Int& d : b.diagonal) CHECK(d == 1);

    // det = -8, gcd = 2, so the invariant factors are 2 and 4
    SmithForm c = smith_normal_form(from_ints({{2, 4}, {6, 8}}));
    CHECK(c.diagonal == std::vector<Int>({2, 4}));

    check_snf(from_ints({{2, 4}, {6, 8}}));
    check_snf(from_ints({{0, 0}, {0, 0}}));
    check_snf(from_ints({{6, 10, 15}}));
}

TEST_CASE("snf transforms on random matrices") {
    randgen::Rng rng(23);
    for (int t = 0; t < 120; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        IntMatrix m(r, c);
        for (auto& x : m.a) x = (long long)(rng() % 9) - 4;
        check_snf(m);
    }
}

TEST_CASE("rank over Q: SNF agrees with fraction-free elimination") {
    randgen::Rng rng(29);
    for (int t = 0; t < 150; ++t) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        IntMatrix m(r, c);
        for (auto& x : m.a) x = (long long)(rng() % 9) - 4;
        SmithForm s = smith_normal_form(m);
        std::size_t snf_rank = 0;
        for (const Int& d : s.diagonal)
            if (d != 0) ++snf_rank;
        CHECK(snf_rank == rank_bareiss(m));
        QRank q = rank_q(m);
        CHECK(q.certified);
        CHECK(q.rank == snf_rank);
    }
}

TEST_CASE("rank mod 2 matches rank over Q when all invariant factors are odd") {
    randgen::Rng rng(31);
    int seen = 0;
    for (int t = 0; t < 400 && seen < 60; ++t) {
        std::size_t n = 1 + rng() % 6;
        IntMatrix m(n, n);
        for (auto& x : m.a) x = (long long)(rng() % 9) - 4;
        SmithForm s = smith_normal_form(m);
        bool all_odd_or_zero = true;
        for (const Int& d : s.diagonal)
            if (d != 0 && d % 2 == 0) all_odd_or_zero = false;
        if (!all_odd_or_zero) continue;
        ++seen;
        F2Matrix f(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (((m.at(i, j) % 2) + 2) % 2 == 1) f.set(i, j, true);
        CHECK(rank_f2(f) == rank_bareiss(m));
    }
    CHECK(seen >= 40);
}

TEST_CASE("homology_ranks over Q") {
    CHECK(homology_ranks_q(IntMatrix(5, 0), IntMatrix(0, 5)) == 5);
    CHECK(homology_ranks_q(IntMatrix(5, 0), IntMatrix::identity(5)) == 0);
    CHECK_THROWS_AS(homology_ranks_q(IntMatrix::identity(3), IntMatrix::identity(3)),
                    SemanticError);
}

TEST_CASE("miller-rabin on 64-bit inputs") {
    CHECK(miller_rabin_is_prime(2305843009213693951ULL)); // 2^61 - 1
    CHECK(miller_rabin_is_prime(4611686018427387847ULL)); // largest prime < 2^62
    CHECK_FALSE(miller_rabin_is_prime((1ULL << 62) - 1));
    CHECK_FALSE(miller_rabin_is_prime(4611686018427388297ULL));
    CHECK(miller_rabin_is_prime(2));
    CHECK_FALSE(miller_rabin_is_prime(1));
    CHECK_FALSE(miller_rabin_is_prime(3215031751ULL)); // strong pseudoprime to 2,3,5,7
}

TEST_CASE("unimodular inverse") {
    IntMatrix u = from_ints({{1, 2}, {0, 1}});
    IntMatrix v = inverse_unimodular(u);
    CHECK(mul(u, v).a == IntMatrix::identity(2).a);
    CHECK_THROWS_AS(inverse_unimodular(from_ints({{2, 0}, {0, 1}})), SemanticError);
}
