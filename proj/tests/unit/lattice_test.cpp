#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "grval/lattice.hpp"

using namespace grval;
using fixtures::expect_error;

namespace {

const RationalField QQ;
using L = Lattice<PAdicRationals>;
using Vec = Vector<RationalField>;

// determinant by cofactor expansion, only for tiny matrices
mpq_class det(const std::vector<std::vector<mpq_class>>& m)
{
    const std::size_t n = m.size();
    if (n == 0) return 1;
    mpq_class total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<mpq_class>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpq_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        total += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
    }
    return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Sum of the first k elementary divisors of the module generated by the rows
// of G inside O_v^d: least valuation of a k x k minor.
std::vector<std::int64_t> determinantal_divisors(const PAdicRationals& V, const std::vector<Vec>& G, std::size_t d)
{
    std::vector<std::int64_t> out;
    for (std::size_t k = 1; k <= d; ++k) {
        std::vector<std::vector<std::size_t>> rows, cols;
        std::vector<std::size_t> cur;
        subsets(G.size(), k, 0, cur, rows);
        subsets(d, k, 0, cur, cols);
        Value best = Value::infinity();
        for (const auto& rs : rows)
            for (const auto& cs : cols) {
                std::vector<std::vector<mpq_class>> m;
                for (auto r : rs) {
                    std::vector<mpq_class> row;
                    for (auto c : cs) row.push_back(G[r][c]);
                    m.push_back(row);
                }
                best = min(best, V.valuation(det(m)));
            }
        out.push_back(best.get());
    }
    return out;
}

Vec random_vec(std::mt19937_64& rng, std::size_t d, std::int64_t h)
{
    Vec v(d);
    for (auto& x : v) x = QQ.random(rng, h);
    return v;
}

} // namespace

TEST(LatticeBasis, Examples)
{
    const PAdicRationals V(2);
    const L M(V, 2, {{1, 0}, {0, 1}, {Rational(1, 2), Rational(1, 2)}});
    EXPECT_EQ(M.rank(), 2u);
    EXPECT_EQ(elementary_divisors(M, L::standard(V, 2)), (std::vector<std::int64_t>{-1, 0}));
    EXPECT_EQ(elementary_divisors(L::standard(V, 2), M), (std::vector<std::int64_t>{0, 1}));

    const L one(V, 2, {{0, 3}});
    EXPECT_EQ(one.rank(), 1u);
    EXPECT_TRUE(one.contains({0, 3}));
    EXPECT_TRUE(one.contains({0, 1}));  // 3 is a unit at 2
    EXPECT_FALSE(one.contains({0, Rational(1, 2)}));
    EXPECT_EQ(L(V, 3, {}).rank(), 0u);
    expect_error(Errc::DimensionMismatch, [&] { L(V, 2, {{1, 2, 3}}); });
}

TEST(LatticeBasis, MinorsOracle)
{
    std::mt19937_64 rng(1);
    for (long p : {2, 3}) {
        const PAdicRationals V(p);
        for (int i = 0; i < 80; ++i) {
            const std::size_t d = 1 + i % 3;
            std::vector<Vec> G;
            for (std::size_t k = 0; k < d + 1; ++k) G.push_back(random_vec(rng, d, 12));
            const L N(V, d, G);
            if (N.rank() != d) continue;
            const auto e = elementary_divisors(N, L::standard(V, d));
            std::vector<std::int64_t> partial(d);
            std::partial_sum(e.begin(), e.end(), partial.begin());
            EXPECT_EQ(partial, determinantal_divisors(V, G, d));
        }
    }
}

TEST(LatticeBasis, SpanPreserved)
{
    std::mt19937_64 rng(2);
    const PAdicRationals V(3);
    for (int i = 0; i < 60; ++i) {
        std::vector<Vec> G;
        for (int k = 0; k < 4; ++k) G.push_back(random_vec(rng, 3, 20));
        const L M(V, 3, G);
        for (const auto& g : G) EXPECT_TRUE(M.contains(g));
        const L again(V, 3, M.basis());
        EXPECT_EQ(elementary_divisors(again, M), std::vector<std::int64_t>(M.rank(), 0));
        for (std::size_t t = 0; t < M.rank(); ++t)
            EXPECT_EQ(V.residue(QQ.div(M.basis()[t][M.pivot_columns()[t]],
                                       V.uniformizer_power(V.valuation(M.basis()[t][M.pivot_columns()[t]]).get()))),
                      1u);
    }
}

TEST(IsLatticeIn, Examples)
{
    const PAdicRationals V(2);
    EXPECT_TRUE(is_lattice_in(L::standard(V, 2), {{1, 0}, {0, 1}}));
    EXPECT_FALSE(is_lattice_in(L(V, 2, {{1, 0}}), {{1, 0}, {0, 1}}));
    EXPECT_TRUE(is_lattice_in(L(V, 2, {{1, 1}}), {{1, 1}}));
    EXPECT_FALSE(is_lattice_in(L(V, 2, {{1, 0}}), {{1, 1}}));
}

TEST(Intersect, Examples)
{
    const PAdicRationals V(2);
    const Vec half{Rational(1, 2), Rational(1, 2)}, quarter{Rational(1, 4), Rational(1, 4)};
    const auto I = intersect_with_subspace(L::standard(V, 2), {{1, 1}});
    ASSERT_EQ(I.rank(), 1u);
    EXPECT_EQ(elementary_divisors(I, L(V, 2, {{1, 1}})), (std::vector<std::int64_t>{0}));
    EXPECT_FALSE(L::standard(V, 2).contains(half));

    const L M(V, 2, {half, {0, 1}});
    const auto J = intersect_with_subspace(M, {{1, 1}});
    EXPECT_TRUE(M.contains(half));
    EXPECT_FALSE(M.contains(quarter));
    EXPECT_EQ(elementary_divisors(J, L(V, 2, {half})), (std::vector<std::int64_t>{0}));

    EXPECT_EQ(intersect_with_subspace(M, {}).rank(), 0u);
}

TEST(Quotient, Examples)
{
    const PAdicRationals V(2);
    const auto Q = quotient_lattice(L::standard(V, 2), {{1, 1}});
    EXPECT_EQ(Q.ambient(), 1u);
    EXPECT_EQ(elementary_divisors(Q, L::standard(V, 1)), (std::vector<std::int64_t>{0}));
    EXPECT_EQ(complement_coordinates(QQ, std::vector<Vec>{{1, 1}}, 2), (std::vector<std::size_t>{0}));
    EXPECT_EQ(complement_coordinates(QQ, std::vector<Vec>{{1, 0}}, 2), (std::vector<std::size_t>{1}));

    const L M(V, 2, {{Rational(1, 2), 0}, {0, 4}});
    const auto same = quotient_lattice(M, {});
    EXPECT_EQ(elementary_divisors(same, M), (std::vector<std::int64_t>{0, 0}));
    EXPECT_EQ(quotient_lattice(M, {{1, 0}, {0, 1}}).rank(), 0u);
}

TEST(ElementaryDivisors, Examples)
{
    const PAdicRationals V(2);
    const auto M = L::standard(V, 2);
    EXPECT_EQ(elementary_divisors(L(V, 2, {{2, 0}, {0, 2}}), M), (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(elementary_divisors(M, M), (std::vector<std::int64_t>{0, 0}));
    EXPECT_EQ(elementary_divisors(L(V, 2, {{2, 0}, {0, 8}}), M), (std::vector<std::int64_t>{1, 3}));
    expect_error(Errc::SpanMismatch, [&] { elementary_divisors(L(V, 2, {{1, 0}}), M); });
    expect_error(Errc::SpanMismatch, [&] { elementary_divisors(L(V, 2, {{1, 0}}), L(V, 2, {{0, 1}})); });
    expect_error(Errc::DimensionMismatch, [&] { elementary_divisors(L::standard(V, 3), M); });
}

TEST(ElementaryDivisors, NonNegativeIffContained)
{
    std::mt19937_64 rng(3);
    const PAdicRationals V(2);
    const auto M = L(V, 2, {{1, Rational(1, 2)}, {0, 2}});
    for (int i = 0; i < 200; ++i) {
        std::vector<Vec> G{random_vec(rng, 2, 8), random_vec(rng, 2, 8)};
        const L N(V, 2, G);
        if (N.rank() != 2) continue;
        const auto e = elementary_divisors(N, M);
        const bool nonneg = std::all_of(e.begin(), e.end(), [](auto x) { return x >= 0; });
        const bool inside = std::all_of(G.begin(), G.end(), [&](const Vec& g) { return M.contains(g); });
        EXPECT_EQ(nonneg, inside);
    }
}

TEST(ReductionDim, Examples)
{
    const PAdicRationals V(2);
    const auto a = reduction_dim(L::standard(V, 2));
    EXPECT_EQ(a.dim, 2u);
    EXPECT_TRUE(a.unramified);
    const auto b = reduction_dim(L(V, 2, {{1, 0}}));
    EXPECT_EQ(b.dim, 1u);
    EXPECT_FALSE(b.unramified);
    const auto c = reduction_dim(L(V, 2, {{1, 0}, {0, 1}, {Rational(1, 2), Rational(1, 2)}}));
    EXPECT_EQ(c.dim, 2u);
    EXPECT_TRUE(c.unramified);
}

TEST(Lattice, RoundTripProperties)
{
    std::mt19937_64 rng(4);
    for (long p : {2, 3, 5}) {
        const PAdicRationals V(p);
        for (int i = 0; i < 60; ++i) {
            const std::size_t d = 2 + i % 3;
            std::vector<Vec> G;
            for (std::size_t k = 0; k < d; ++k) G.push_back(random_vec(rng, d, 30));
            const L M(V, d, G);
            if (M.rank() != d) continue;
            std::vector<Vec> sub;
            const std::size_t k = std::uniform_int_distribution<std::size_t>(0, d)(rng);
            for (std::size_t j = 0; j < k; ++j) sub.push_back(random_vec(rng, d, 6));
            const auto I = intersect_with_subspace(M, sub);
            const auto Q = quotient_lattice(M, sub);
            EXPECT_TRUE(is_lattice_in(I, sub));
            EXPECT_EQ(Q.ambient(), d - detail::rank(QQ, sub, d));
            EXPECT_EQ(Q.rank(), Q.ambient());
            EXPECT_EQ(M.rank(), I.rank() + Q.rank());
            EXPECT_LE(reduction_dim(M).dim, d);
            for (const auto& w : I.basis()) {
                EXPECT_TRUE(M.contains(w));
                Vec w_over_pi(w);
                for (auto& x : w_over_pi) x /= p;
                // saturation: no index gap between I and M intersected with V'
                if (M.contains(w_over_pi)) {
                    EXPECT_TRUE(I.contains(w_over_pi));
                }
            }
            // every O_v-combination of M's basis that lands in V' lies in I
            for (int trial = 0; trial < 5 && !I.basis().empty(); ++trial) {
                Vec w(d, 0);
                for (const auto& b : I.basis()) {
                    const Rational c = std::uniform_int_distribution<int>(-9, 9)(rng);
                    for (std::size_t j = 0; j < d; ++j) w[j] += c * b[j];
                }
                EXPECT_TRUE(I.contains(w));
            }
        }
    }
}

TEST(Lattice, IntersectionIsSaturatedByBruteForce)
{
    // the sums a*b_1 + b*b_2 with bounded a, b in p^-2 Z_(p): each lies in M
    // exactly when a, b lie in O_v; those inside V' must lie in I
    const PAdicRationals V(2);
    const L M(V, 2, {{1, 3}, {Rational(1, 2), Rational(5, 2)}});
    const std::vector<Vec> sub{{1, 2}};
    const auto I = intersect_with_subspace(M, sub);
    std::size_t hits = 0;
    for (int a = -16; a <= 16; ++a)
        for (int b = -16; b <= 16; ++b) {
            const Rational ca(a, 4), cb(b, 4);
            Vec w{ca * 1 + cb * Rational(1, 2), ca * 3 + cb * Rational(5, 2)};
            if (!M.contains(w) || !is_lattice_in(L(V, 2, {w}), sub)) continue;
            if (QQ.is_zero(w[0]) && QQ.is_zero(w[1])) continue;
            ++hits;
            EXPECT_TRUE(I.contains(w));
        }
    EXPECT_GT(hits, 0u);
}

TEST(Lattice, TAdic)
{
    const TAdicRationalFunctions<RationalField> V(QQ);
    const RationalFunctionField<RationalField> F(QQ);
    using LT = Lattice<TAdicRationalFunctions<RationalField>>;
    const LT N(V, 2, {{F.t_power(1), F.zero()}, {F.zero(), F.t_power(3)}});
    EXPECT_EQ(elementary_divisors(N, LT::standard(V, 2)), (std::vector<std::int64_t>{1, 3}));
    const auto I = intersect_with_subspace(LT::standard(V, 2), {{F.one(), F.t_power(-1)}});
    EXPECT_TRUE(I.contains({F.t_power(1), F.one()}));
    EXPECT_FALSE(I.contains({F.one(), F.t_power(-1)}));
}
