#include <gtest/gtest.h>

#include <random>

#include <hyperlog/chen.hpp>
#include <hyperlog/errors.hpp>
#include <hyperlog/ncalg.hpp>

#include "support/oracles.hpp"

using namespace hyperlog;

namespace
{

const Alphabet X2 = Alphabet::indexed(2);

GaussianRational q(long p, long d = 1)
{
    return GaussianRational(Rational(p, d));
}

Word w(const char *text)
{
    return parse_word(text, X2);
}

using QPoly = Polynomial<GaussianRational>;
using RPoly = Polynomial<PoleRational>;

QPoly qp(std::initializer_list<std::pair<const char *, long>> terms)
{
    QPoly p;
    for (const auto &[word, c] : terms) {
        p.add_term(w(word), q(c));
    }
    return p;
}

const pole_set_ptr P01 = make_pole_set({q(0), q(1)});

Multiplier polylog()
{
    return Multiplier::fuchsian(X2, P01, {{0, q(1)}, {1, q(-1)}});
}

Multiplier counterexample()
{
    return Multiplier(X2, P01, {PoleRational::pole_term(P01, 0, 2, q(1)), PoleRational::pole_term(P01, 1, 2, q(1))});
}

Polynomial<PoleRational> random_poly(std::mt19937_64 &rng, std::size_t max_len)
{
    RPoly p;
    std::uniform_int_distribution<int> coin(0, 2);
    for (const auto &word : X2.words_up_to(max_len)) {
        if (coin(rng) == 0) {
            PoleRational c = oracle::random_gaussian(rng);
            if (coin(rng) == 0) {
                c = c + PoleRational::pole_term(P01, coin(rng) % 2, 1 + coin(rng), oracle::random_gaussian(rng));
            }
            p.add_term(word, c);
        }
    }
    return p;
}

} // namespace

TEST(Pair, SpecExamples)
{
    std::map<Word, GaussianRational> s{{Word{}, q(1)}, {w("x0"), q(2)}, {w("x1"), q(3)}};
    EXPECT_EQ(pair(s, QPoly(q(1))), q(1));
    EXPECT_EQ(pair(s, QPoly()), q(0));
    EXPECT_EQ(pair(s, qp({{"x0", 1}, {"x1", -1}})), q(-1));
    EXPECT_THROW(pair(s, qp({{"x0.x1", 1}})), unresolvable_word);
}

TEST(Pair, NumericTable)
{
    std::map<Word, std::complex<double>> s{{Word{}, 1.0}, {w("x0"), {0.0, 2.0}}};
    Polynomial<std::complex<double>> p;
    p.add_term(Word{}, 3.0);
    p.add_term(w("x0"), {0.0, 1.0});
    EXPECT_EQ(pair(s, p), std::complex<double>(1.0, 0.0));
}

TEST(Leading, SpecExamples)
{
    EXPECT_EQ(leading_monomial(qp({{"x0.x1", 1}, {"x1.x0", 1}})), w("x1.x0"));
    EXPECT_EQ(leading_monomial(qp({{"x0", 5}, {"1", 1}})), w("x0"));
    RPoly p;
    p.add_term(w("x1.x1"), PoleRational::pole_term(P01, 0, 1, q(1)));
    p.add_term(w("x0"), PoleRational::monomial(q(1), 2));
    EXPECT_EQ(leading_monomial(p, X2), w("x1.x1"));
    EXPECT_THROW(leading_monomial(QPoly()), std::invalid_argument);
}

TEST(Leading, MonicNormalize)
{
    const auto p = qp({{"x0.x1", 3}, {"x1.x0", 4}, {"x0", 2}});
    const auto m = monic_normalize(p);
    EXPECT_EQ(leading_coefficient(m), q(1));
    EXPECT_EQ(m.coefficient(w("x0.x1")), q(3, 4));
    RPoly r;
    r.add_term(w("x0"), PoleRational::pole_term(P01, 0, 1, q(1)));
    EXPECT_THROW(monic_normalize(r), std::domain_error);
}

TEST(Leading, ScalarInvariance)
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
        QPoly p;
        for (const auto &word : X2.words_up_to(3)) {
            p.add_term(word, oracle::random_gaussian(rng, 2));
        }
        if (p.is_zero()) {
            continue;
        }
        const auto s = oracle::random_nonzero_gaussian(rng);
        EXPECT_EQ(leading_monomial(p.scaled(s)), leading_monomial(p));
    }
}

TEST(Residuals, SpecExamples)
{
    EXPECT_EQ(left_residual(qp({{"x0.x1", 1}}), 0), qp({{"x1", 1}}));
    EXPECT_TRUE(left_residual(qp({{"x0.x1", 1}}), 1).is_zero());
    EXPECT_EQ(left_residual(qp({{"x0", 1}, {"x0.x0.x1", 1}}), 0), qp({{"1", 1}, {"x0.x1", 1}}));
    EXPECT_EQ(right_residual(qp({{"x0.x1", 1}}), 1), qp({{"x0", 1}}));
    EXPECT_EQ(right_residual(qp({{"x1", 1}}), 1), qp({{"1", 1}}));
    EXPECT_TRUE(right_residual(qp({{"x0", 1}}), 1).is_zero());
}

TEST(Residuals, LeftResidualInvertsPrepend)
{
    std::mt19937_64 rng(32);
    for (int t = 0; t < 50; ++t) {
        const auto u = oracle::random_word(rng, 2, 4);
        for (letter_index x = 0; x < 2; ++x) {
            EXPECT_EQ(left_residual(QPoly::monomial(u.prepend(x), q(3)), x), QPoly::monomial(u, q(3)));
            EXPECT_EQ(right_residual(QPoly::monomial(u.append(x), q(3)), x), QPoly::monomial(u, q(3)));
        }
    }
}

TEST(Reconstruction, Holds)
{
    EXPECT_TRUE(reconstruction_check(qp({{"1", 1}, {"x0", 1}, {"x0.x1", 1}})));
    EXPECT_TRUE(reconstruction_check(QPoly()));
    std::mt19937_64 rng(33);
    for (int t = 0; t < 20; ++t) {
        EXPECT_TRUE(reconstruction_check(random_poly(rng, 3)));
    }
}

TEST(Reduce, SpecExamples)
{
    const auto m = polylog();
    EXPECT_TRUE(reduce(RPoly(PoleRational(1L)), m).is_zero());
    for (letter_index x = 0; x < 2; ++x) {
        const auto r = reduce(RPoly::monomial(Word::letter(x), PoleRational(1L)), m);
        EXPECT_EQ(r.size(), 1U);
        EXPECT_EQ(r.coefficient(Word{}), m.u(x));
    }
    EXPECT_EQ(reduce(RPoly::monomial(w("x0"), PoleRational(1L)), m).coefficient(Word{}), PoleRational::pole_term(P01, 0, 1, q(1)));

    const auto c = counterexample();
    const GaussianRational c1 = q(2), c0 = q(-1, 2);
    RPoly rel;
    rel.add_term(w("x1.x0"), PoleRational(1L));
    rel.add_term(w("x0.x1"), PoleRational(1L));
    rel.add_term(w("x1"), PoleRational(c1));
    rel.add_term(w("x0"), PoleRational(c0));
    const auto d = reduce(rel, c);
    RPoly expected;
    expected.add_term(w("x0"), c.u(1));
    expected.add_term(w("x1"), c.u(0));
    expected.add_term(Word{}, scale(c.u(1), c1) + scale(c.u(0), c0));
    EXPECT_EQ(d, expected);
}

TEST(Reduce, DerivativeOfCoefficients)
{
    RPoly q1;
    q1.add_term(Word{}, PoleRational::pole_term(P01, 0, 1, q(-1)));
    const auto r = reduce(q1, counterexample());
    EXPECT_EQ(r.coefficient(Word{}), PoleRational::pole_term(P01, 0, 2, q(1)));
}

TEST(Reduce, PoleSetMismatch)
{
    const auto other = make_pole_set({q(5)});
    RPoly p;
    p.add_term(w("x0"), PoleRational::pole_term(other, 0, 1, q(1)));
    EXPECT_THROW(reduce(p, polylog()), pole_set_mismatch);
}

TEST(MultiplierType, FuchsianDetection)
{
    EXPECT_TRUE(polylog().fuchsian_form().has_value());
    EXPECT_FALSE(counterexample().fuchsian_form().has_value());
    const Multiplier general(X2, P01, {PoleRational::pole_term(P01, 0, 1, q(2)), PoleRational::pole_term(P01, 1, 1, q(-1))});
    ASSERT_TRUE(general.fuchsian_form().has_value());
    EXPECT_EQ((*general.fuchsian_form())[0].weight, q(2));
    EXPECT_EQ((*general.fuchsian_form())[1].pole, 1U);
    EXPECT_THROW(Multiplier(X2, P01, {PoleRational(1L)}), std::invalid_argument);
}

// d/dz ⟨S|Q⟩ = ⟨S|reduce(Q, M)⟩ on a numerically evaluated solution.
TEST(Reduce, AdjointIdentityNumeric)
{
    std::mt19937_64 rng(34);
    const auto m = polylog();
    const complex z0(0.5, 0.0);
    const double h = 1e-3;
    EvalOptions opts;
    opts.truncation = 3;
    for (int t = 0; t < 5; ++t) {
        const auto qpoly = random_poly(rng, 2);
        const complex z(0.3 + 0.05 * t, 0.2 - 0.03 * t);
        const auto poles = m.poles()->numeric();
        auto at = [&](complex p) {
            const auto table = eval_coeffs(m, build_path(z0, p, poles, 0.1), opts);
            return pair([&](const Word &word) { return table.find(word); }, evaluate_coefficients(qpoly, p));
        };
        const complex fd = (at(z - 2 * h) - 8.0 * at(z - h) + 8.0 * at(z + h) - at(z + 2 * h)) / (12 * h);
        const auto table = eval_coeffs(m, build_path(z0, z, poles, 0.1), opts);
        const complex rhs = pair([&](const Word &word) { return table.find(word); }, evaluate_coefficients(reduce(qpoly, m), z));
        EXPECT_LE(std::abs(fd - rhs), 1e-6 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(Text, FormatAndParse)
{
    RPoly rel;
    rel.add_term(w("x1.x0"), PoleRational(1L));
    rel.add_term(w("x0.x1"), PoleRational(1L));
    rel.add_term(w("x1"), PoleRational(2L));
    rel.add_term(w("x0"), PoleRational(q(-1, 2)));
    EXPECT_EQ(format_polynomial(rel, X2), "x1.x0 + x0.x1 + 2*x1 - 1/2*x0");
    EXPECT_EQ(parse_polynomial("x1.x0 + x0.x1 + 2*x1 - 1/2*x0", X2, P01), rel);
    EXPECT_EQ(parse_polynomial("1 * x1.x0 + 1 * x0.x1 + 2 * x1 + -0.5 * x0", X2, P01), rel);

    RPoly wit;
    wit.add_term(w("x0"), PoleRational(1L));
    wit.add_term(Word{}, PoleRational(1L) + PoleRational::pole_term(P01, 0, 1, q(1)));
    EXPECT_EQ(format_polynomial(wit, X2), "x0 + (1 + 1/z)");
    EXPECT_EQ(parse_polynomial("x0 + (poly: [1]; pp: {(0,1): 1})", X2, P01), wit);
    EXPECT_EQ(format_polynomial(RPoly(), X2), "0");
    EXPECT_THROW(parse_polynomial("x0 + (1", X2, P01), parse_error);
    EXPECT_THROW(parse_polynomial("", X2, P01), parse_error);
}
