#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "grval/pbw.hpp"
#include "oracle.hpp"

using namespace grval;
using fixtures::expect_error;

namespace {

const RationalField QQ;

// --- representation oracles -------------------------------------------------

// A_1 acting on Q[x]: x multiplies, D differentiates. The action is faithful.
using UPoly = std::map<int, mpq_class>;

UPoly act_weyl(const PbwElement<RationalField>& a, const UPoly& p)
{
    UPoly out;
    for (const auto& [e, c] : a.terms()) {
        UPoly q = p;
        for (std::uint32_t k = 0; k < e[1]; ++k) {
            UPoly d;
            for (const auto& [n, v] : q)
                if (n > 0) d[n - 1] += v * n;
            q = d;
        }
        for (const auto& [n, v] : q) out[n + static_cast<int>(e[0])] += c * v;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

// Irreducible sl2-module V_n, basis v_0..v_n.
using Matrix = std::vector<std::vector<mpq_class>>;

Matrix mat_mul(const Matrix& a, const Matrix& b)
{
    const std::size_t n = a.size();
    Matrix c(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::array<Matrix, 3> sl2_rep(int n)
{
    const std::size_t d = static_cast<std::size_t>(n) + 1;
    std::array<Matrix, 3> m;
    for (auto& x : m) x.assign(d, std::vector<mpq_class>(d, 0));
    for (int k = 0; k <= n; ++k) {
        m[0][k][k] = n - 2 * k;
        if (k < n) m[2][k + 1][k] = k + 1;
        if (k > 0) m[1][k - 1][k] = n - k + 1;
    }
    return m;
}

Matrix act_sl2(const PbwElement<RationalField>& a, const std::array<Matrix, 3>& gens)
{
    const std::size_t d = gens[0].size();
    Matrix total(d, std::vector<mpq_class>(d, 0));
    for (const auto& [e, c] : a.terms()) {
        Matrix m(d, std::vector<mpq_class>(d, 0));
        for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
        for (auto letter : standard_word(e)) m = mat_mul(m, gens[letter]);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) total[i][j] += c * m[i][j];
    }
    return total;
}

PbwElement<RationalField> E(const PbwSpec<RationalField>& s, const std::string& src) { return parse_element(s, src); }

} // namespace

TEST(Spec, Validation)
{
    using Spec = PbwSpec<RationalField>;
    Spec::RuleMap bad_order;
    bad_order.emplace(std::pair{0u, 1u}, CommutationRule<RationalField>{QQ.one(), PbwElement<RationalField>(QQ, 2)});
    expect_error(Errc::InvalidSpec, [&] { Spec(QQ, {"x", "y"}, bad_order); });

    // y x = x y + y^2 is not decreasing
    expect_error(Errc::InvalidSpec, [&] { parse_pbw_spec(QQ, {"x", "y"}, {"y*x = x*y + y^2"}); });
    expect_error(Errc::InvalidSpec, [&] { parse_pbw_spec(QQ, {"x", "y"}, {"y*x = x^3"}); });
    expect_error(Errc::InvalidSpec, [&] { parse_pbw_spec(QQ, {"x", "y"}, {"y*x = 0"}); });
    expect_error(Errc::InvalidSpec, [&] { parse_pbw_spec(QQ, {"x", "y"}, {"x*y = y*x"}); });
    expect_error(Errc::InvalidSpec, [&] { parse_pbw_spec(QQ, {"x", "y"}, {"y*x = y*x"}); });
    expect_error(Errc::InvalidArity, [&] { make_weyl(0, QQ); });
    auto lambda = fixtures::sl2_constants(QQ);
    lambda[1][0][1] = QQ.from_integer(5);
    expect_error(Errc::NotAntisymmetric, [&] { make_enveloping(QQ, {"h", "e", "f"}, lambda); });
}

TEST(Spec, Builders)
{
    EXPECT_EQ(make_weyl(2, QQ).names(), (std::vector<std::string>{"x1", "x2", "D1", "D2"}));
    EXPECT_TRUE(make_jordan_plane(QQ).rule(1, 0).tail == PbwElement<RationalField>::monomial(QQ, {2, 0}, QQ.one()));
    const auto parsed = parse_pbw_spec(QQ, {"h", "e", "f"}, {"e*h = h*e - 2*e", "f*h = h*f + 2*f", "f*e = e*f - h"});
    EXPECT_TRUE(parsed == fixtures::sl2(QQ));
    const auto round = parse_pbw_spec(QQ, parsed.names(), parsed.rule_strings());
    EXPECT_TRUE(round == parsed);

    StructureConstants<RationalField> zero(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, 0)));
    const auto comm = make_enveloping(QQ, {"a", "b"}, zero);
    EXPECT_TRUE(comm.nontrivial_rules().empty());
}

TEST(NormalForm, Weyl)
{
    const auto A1 = make_weyl(1, QQ);
    EXPECT_EQ(E(A1, "D*x").to_string(A1.names()), "x*D + 1");
    EXPECT_EQ(E(A1, "D^2*x").to_string(A1.names()), "x*D^2 + 2*D");
    EXPECT_TRUE(E(A1, "D^2*x") == E(A1, "x*D^2 + 2*D"));
}

TEST(NormalForm, WeylClosedFormOracle)
{
    // D^a x^b = sum_k C(a,k) C(b,k) k! x^(b-k) D^(a-k)
    const auto A1 = make_weyl(1, QQ);
    Rewriter<RationalField> rw(A1);
    for (std::uint32_t a = 0; a <= 5; ++a)
        for (std::uint32_t b = 0; b <= 5; ++b) {
            Word w(a, 1);
            w.insert(w.end(), b, 0);
            PbwElement<RationalField> expected(QQ, 2);
            std::uint64_t fact = 1;
            for (std::uint32_t k = 0; k <= std::min(a, b); ++k) {
                if (k > 0) fact *= k;
                expected.add_term({b - k, a - k}, Rational(static_cast<long>(oracle::binomial(a, k) * oracle::binomial(b, k) * fact)));
            }
            EXPECT_TRUE(rw.word_normal_form(w) == expected) << a << "," << b;
        }
}

TEST(NormalForm, QuantumPlane)
{
    const auto Q = make_quantum_plane(QQ, Rational(3));
    EXPECT_TRUE(E(Q, "y*x") == E(Q, "3*x*y"));
    // y^a x^b = q^(ab) x^b y^a
    for (std::uint32_t a = 0; a <= 4; ++a)
        for (std::uint32_t b = 0; b <= 4; ++b) {
            FreePoly<RationalField> f(QQ, 2);
            Word w(a, 1);
            w.insert(w.end(), b, 0);
            f.add_term(w, QQ.one());
            mpz_class q;
            mpz_ui_pow_ui(q.get_mpz_t(), 3, a * b);
            EXPECT_TRUE(normal_form(Q, f) == PbwElement<RationalField>::monomial(QQ, {b, a}, Rational(q)));
        }
}

TEST(NormalForm, Idempotent)
{
    std::mt19937_64 rng(3);
    for (const auto& spec : {make_weyl(1, QQ), fixtures::sl2(QQ), make_jordan_plane(QQ), make_quantum_plane(QQ, Rational(-2, 5))}) {
        Rewriter<RationalField> rw(spec);
        for (int i = 0; i < 50; ++i) {
            FreePoly<RationalField> f(QQ, spec.generators());
            for (int t = 0; t < 3; ++t) {
                Word w(std::uniform_int_distribution<std::size_t>(0, 4)(rng));
                for (auto& l : w) l = std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(spec.generators() - 1))(rng);
                f.add_term(w, QQ.random(rng, 9));
            }
            const auto nf = rw.normal_form(f);
            EXPECT_TRUE(rw.normal_form(nf.to_free_poly()) == nf);
        }
    }
}

TEST(Multiply, Examples)
{
    const auto A1 = make_weyl(1, QQ);
    EXPECT_TRUE(pbw_multiply(A1, E(A1, "x*D"), E(A1, "x*D")) == E(A1, "x^2*D^2 + x*D"));
    const auto a = E(A1, "3*x^2*D - 1/2");
    EXPECT_TRUE(pbw_multiply(A1, a, A1.one()) == a);
    StructureConstants<RationalField> zero(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, 0)));
    const auto comm = make_enveloping(QQ, {"a", "b"}, zero);
    EXPECT_TRUE(pbw_multiply(comm, E(comm, "a^2*b"), E(comm, "a*b^3")) == E(comm, "a^3*b^4"));
    expect_error(Errc::SpecMismatch, [&] { (void)pbw_multiply(A1, a, fixtures::sl2(QQ).one()); });
}

TEST(Multiply, WeylRepresentationOracle)
{
    const auto A1 = make_weyl(1, QQ);
    Rewriter<RationalField> rw(A1);
    std::mt19937_64 rng(21);
    const UPoly probe{{0, 1}, {1, -2}, {3, mpq_class(1, 3)}, {6, 5}};
    for (int i = 0; i < 60; ++i) {
        const auto a = random_element(A1, rng, 9, 4), b = random_element(A1, rng, 9, 4);
        EXPECT_EQ(act_weyl(rw.multiply(a, b), probe), act_weyl(a, act_weyl(b, probe)));
    }
}

TEST(Multiply, Sl2RepresentationOracle)
{
    const auto U = fixtures::sl2(QQ);
    Rewriter<RationalField> rw(U);
    std::mt19937_64 rng(22);
    const auto rep = sl2_rep(4);
    for (int i = 0; i < 40; ++i) {
        const auto a = random_element(U, rng, 9, 3), b = random_element(U, rng, 9, 3);
        EXPECT_EQ(act_sl2(rw.multiply(a, b), rep), mat_mul(act_sl2(a, rep), act_sl2(b, rep)));
    }
}

TEST(Multiply, AssociativeAndWellDefined)
{
    std::mt19937_64 rng(9);
    for (const auto& spec : {make_weyl(1, QQ), make_weyl(2, QQ), fixtures::sl2(QQ), make_quantum_plane(QQ, Rational(7, 2)), make_jordan_plane(QQ)}) {
        Rewriter<RationalField> rw(spec);
        for (int i = 0; i < 30; ++i) {
            const auto a = random_element(spec, rng, 9, 3), b = random_element(spec, rng, 9, 3), c = random_element(spec, rng, 9, 3);
            EXPECT_TRUE(rw.multiply(rw.multiply(a, b), c) == rw.multiply(a, rw.multiply(b, c)));
            EXPECT_TRUE(rw.normal_form(a.to_free_poly() * b.to_free_poly()) == rw.multiply(a, b));
        }
    }
}

TEST(Confluence, Pass)
{
    const auto r2 = confluence_check(make_weyl(2, QQ));
    EXPECT_TRUE(r2.pass());
    EXPECT_EQ(r2.triples_checked, 4u);
    EXPECT_TRUE(confluence_check(fixtures::sl2(QQ)).pass());
    EXPECT_TRUE(confluence_check(make_weyl(3, QQ)).pass());
}

TEST(Confluence, SignFlippedSl2)
{
    const auto U = fixtures::sl2(QQ, true);
    const auto r = confluence_check(U);
    ASSERT_FALSE(r.pass());
    ASSERT_EQ(r.failures.size(), 1u);
    const auto& w = r.failures[0];
    EXPECT_EQ(U.names()[w.i] + U.names()[w.j] + U.names()[w.k], "hef");

    // oracle: the Jacobi defect [[h,e],f] + [e,[h,f]] - [h,[e,f]] from the constants
    const auto lambda = fixtures::sl2_constants(QQ, true);
    auto bracket = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> out(3, 0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) out[k] += a[i] * b[j] * lambda[i][j][k];
        return out;
    };
    const std::vector<Rational> h{1, 0, 0}, e{0, 1, 0}, f{0, 0, 1};
    std::vector<Rational> defect(3);
    const auto t1 = bracket(bracket(h, e), f), t2 = bracket(e, bracket(h, f)), t3 = bracket(h, bracket(e, f));
    for (int k = 0; k < 3; ++k) defect[k] = t1[k] + t2[k] - t3[k];
    EXPECT_EQ(defect, (std::vector<Rational>{4, 0, 0}));

    const auto diff = w.left - w.right;
    const auto h4 = PbwElement<RationalField>::monomial(QQ, {1, 0, 0}, Rational(4));
    EXPECT_TRUE(diff == h4 || diff == h4.scaled(Rational(-1))) << diff.to_string(U.names());
}

TEST(FilteredDims, Counts)
{
    EXPECT_EQ(filtered_dims(make_weyl(1, QQ), 2)[2], 6u);
    EXPECT_EQ(filtered_dims(make_quantum_plane(QQ, Rational(2)), 0), (std::vector<std::uint64_t>{1}));
    EXPECT_EQ(filtered_dims(fixtures::sl2(QQ), 1)[1], 4u);
    const auto d = filtered_dims(make_weyl(2, QQ), 6);
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(d[n], oracle::binomial(n + 4, 4));
}

TEST(Relations, PresentationOfSpec)
{
    const auto rels = pbw_relations(make_weyl(1, QQ));
    ASSERT_EQ(rels.relations().size(), 1u);
    EXPECT_EQ(rels.relations()[0], parse_poly("D*x - x*D - 1", {"x", "D"}, QQ));
}
