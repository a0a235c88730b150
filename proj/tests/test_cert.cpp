#include <gtest/gtest.h>

#include <random>

#include <hyperlog/cert.hpp>
#include <hyperlog/errors.hpp>

#include "support/oracles.hpp"

using namespace hyperlog;

namespace
{

const Alphabet X2 = Alphabet::indexed(2);

GaussianRational q(long p, long d = 1)
{
    return GaussianRational(Rational(p, d));
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

Word w(const char *text)
{
    return parse_word(text, X2);
}

// x1x0 + x0x1 + c1 x1 + c0 x0 with c1 = 1 - 1/z0, c0 = z0/(1 - z0).
Polynomial<PoleRational> remark_relation(const GaussianRational &z0)
{
    Polynomial<PoleRational> p;
    p.add_term(w("x1.x0"), PoleRational(1L));
    p.add_term(w("x0.x1"), PoleRational(1L));
    p.add_term(w("x1"), PoleRational(q(1) - z0.inverse()));
    p.add_term(w("x0"), PoleRational(z0 * (q(1) - z0).inverse()));
    return p;
}

} // namespace

TEST(ResidueMatrix, SpecExamples)
{
    const auto a = residue_matrix(polylog());
    ASSERT_EQ(a.size(), 2U);
    EXPECT_EQ(a[0], (std::vector<GaussianRational>{q(1), q(0)}));
    EXPECT_EQ(a[1], (std::vector<GaussianRational>{q(0), q(-1)}));

    const auto b = residue_matrix(counterexample());
    for (const auto &row : b) {
        for (const auto &c : row) {
            EXPECT_TRUE(c.is_zero());
        }
    }

    const Multiplier zm(Alphabet::indexed(1), P01, {PoleRational::monomial(q(1), 1)});
    const auto c = residue_matrix(zm);
    for (const auto &row : c) {
        EXPECT_TRUE(row.at(0).is_zero());
    }
}

TEST(Nullspace, Exact)
{
    ExactMatrix a{{q(1), q(2), q(3)}, {q(2), q(4), q(6)}};
    const auto ns = exact_nullspace(a, 3);
    EXPECT_EQ(ns.pivots, std::vector<std::size_t>{0});
    ASSERT_EQ(ns.basis.size(), 2U);
    for (const auto &v : ns.basis) {
        for (const auto &row : a) {
            GaussianRational s;
            for (std::size_t j = 0; j < 3; ++j) {
                s += row[j] * v[j];
            }
            EXPECT_TRUE(s.is_zero());
        }
    }
    EXPECT_EQ(exact_nullspace({}, 2).basis.size(), 2U);
    const ExactMatrix full{{q(1), GaussianRational::i()}, {q(0), q(1)}};
    EXPECT_TRUE(exact_nullspace(full, 2).basis.empty());
}

TEST(Certify, SpecExamples)
{
    EXPECT_TRUE(std::holds_alternative<Independent>(certify(polylog())));

    const auto v = certify(counterexample());
    ASSERT_TRUE(std::holds_alternative<Dependent>(v));
    const auto &dep = std::get<Dependent>(v);
    EXPECT_EQ(dep.alpha, (std::vector<GaussianRational>{q(1), q(0)}));
    EXPECT_EQ(dep.f, PoleRational::pole_term(P01, 0, 1, q(-1)));
    EXPECT_EQ(derivative(dep.f), counterexample().u(0));

    const auto zero = Multiplier::fuchsian(Alphabet::indexed(1), make_pole_set({q(0)}), {{0, q(0)}});
    const auto vz = certify(zero);
    ASSERT_TRUE(std::holds_alternative<Dependent>(vz));
    EXPECT_EQ(std::get<Dependent>(vz).alpha, std::vector<GaussianRational>{q(1)});
    EXPECT_TRUE(std::get<Dependent>(vz).f.is_zero());

    const Multiplier single(Alphabet::indexed(1), make_pole_set({q(0)}), {PoleRational::pole_term(make_pole_set({q(0)}), 0, 1, q(1))});
    EXPECT_TRUE(std::holds_alternative<Independent>(certify(single)));
}

TEST(Certify, RandomFuchsianIndependent)
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + t % 5;
        const auto poles = oracle::random_pole_set(rng, n);
        std::vector<FuchsianTerm> terms;
        for (std::size_t i = 0; i < n; ++i) {
            terms.push_back({i, oracle::random_nonzero_gaussian(rng)});
        }
        EXPECT_TRUE(std::holds_alternative<Independent>(certify(Multiplier::fuchsian(Alphabet::indexed(n), poles, terms))));
    }
}

TEST(Certify, DependentWitnessIsSound)
{
    std::mt19937_64 rng(42);
    for (int t = 0; t < 30; ++t) {
        const auto poles = oracle::random_pole_set(rng, 2);
        std::vector<PoleRational> us;
        for (int i = 0; i < 3; ++i) {
            us.push_back(oracle::random_pole_rational(rng, poles));
        }
        const Multiplier m(Alphabet::indexed(3), poles, us);
        const auto v = certify(m);
        if (const auto *dep = std::get_if<Dependent>(&v)) {
            PoleRational s(poles);
            for (std::size_t x = 0; x < 3; ++x) {
                s += scale(m.u(static_cast<letter_index>(x)), dep->alpha[x]);
            }
            EXPECT_EQ(derivative(dep->f), s);
        }
    }
}

TEST(RationalTable, CounterexampleEntries)
{
    const auto t = rational_coefficient_table(counterexample(), q(-1), 2);
    ASSERT_NE(t.find(w("x0")), nullptr);
    EXPECT_EQ(*t.find(w("x0")), PoleRational(-1L) + PoleRational::pole_term(P01, 0, 1, q(-1)));
    ASSERT_NE(t.find(w("x1")), nullptr);
    // 1/(1-z) - 1/2
    EXPECT_EQ(*t.find(w("x1")), PoleRational(q(-1, 2)) + PoleRational::pole_term(P01, 1, 1, q(-1)));
    for (const auto &[word, f] : t.entries) {
        EXPECT_TRUE(evaluate(f, q(-1)).is_zero() || word.empty());
        if (!word.empty()) {
            EXPECT_EQ(derivative(f), counterexample().u(word.front()) * *t.find(word.drop_front()));
        }
    }
    EXPECT_FALSE(t.blocked.empty());
    EXPECT_THROW(rational_coefficient_table(counterexample(), q(0), 1), geometry_error);
}

TEST(Witness, Degree1Relations)
{
    const auto m = counterexample();
    const auto dep = std::get<Dependent>(certify(m));
    const auto rel = witness_to_degree1_relation(dep, m, q(-1));
    EXPECT_EQ(rel.status, RelationStatus::ExactlyVerified);
    EXPECT_EQ(format_polynomial(rel.poly, X2), "x0 + (1 + 1/z)");
    EXPECT_LT(rel.numeric_defect, 1e-9);

    const Dependent dep1{{q(0), q(1)}, rational_primitive(m.u(1))};
    const auto rel1 = witness_to_degree1_relation(dep1, m, q(-1));
    EXPECT_EQ(rel1.status, RelationStatus::ExactlyVerified);
    // ⟨S|x1⟩ = 1/(1-z) - 1/(1-z0)
    EXPECT_EQ(rel1.poly.coefficient(Word{}), PoleRational(q(1, 2)) + PoleRational::pole_term(P01, 1, 1, q(1)));

    const Dependent bogus{{q(1), q(0)}, PoleRational(P01)};
    EXPECT_THROW(witness_to_degree1_relation(bogus, polylog(), q(-1)), std::invalid_argument);
}

TEST(Verify, SpecExamples)
{
    const auto m = counterexample();
    const auto table = rational_coefficient_table(m, q(-1), 3);

    const auto good = verify_relation(remark_relation(q(-1)), m, q(-1), table);
    EXPECT_EQ(good.status, RelationStatus::ExactlyVerified);
    EXPECT_LT(good.numeric_defect, 1e-9);

    const auto lone = verify_relation(Polynomial<PoleRational>::monomial(w("x0"), PoleRational(1L)), m, q(-1), table);
    EXPECT_EQ(lone.status, RelationStatus::Refuted);
    EXPECT_GT(lone.numeric_defect, 1e-3);

    const auto constant = verify_relation(Polynomial<PoleRational>(PoleRational(3L)), m, q(-1), table);
    EXPECT_EQ(constant.status, RelationStatus::Refuted);

    // Perturbed coefficients are not a relation.
    auto off = remark_relation(q(-1));
    off.add_term(w("x0"), PoleRational(q(1, 64)));
    EXPECT_EQ(verify_relation(off, m, q(-1), table).status, RelationStatus::Refuted);
}

TEST(Verify, NumericFallback)
{
    // Polylog words of length 2 have no rational closed form.
    const auto m = polylog();
    const auto table = rational_coefficient_table(m, q(1, 2), 2);
    EXPECT_TRUE(table.find(w("x0")) == nullptr);
    auto shuffle_rel = Polynomial<PoleRational>::monomial(w("x0.x1"), PoleRational(1L));
    shuffle_rel.add_term(w("x1.x0"), PoleRational(1L));
    const auto r = verify_relation(shuffle_rel, m, q(1, 2), table);
    EXPECT_EQ(r.status, RelationStatus::Inconclusive);
}

TEST(Verify, ParametricFamily)
{
    const auto m = counterexample();
    for (const auto &z0 : {q(-1), q(-3), q(2), GaussianRational(Rational(1, 2), Rational(1)), q(-1000)}) {
        const auto table = rational_coefficient_table(m, z0, 3);
        EXPECT_EQ(verify_relation(remark_relation(z0), m, z0, table).status, RelationStatus::ExactlyVerified);
    }
}

TEST(Snap, ContinuedFractions)
{
    EXPECT_EQ(snap_rational(0.5), Rational(1, 2));
    EXPECT_EQ(snap_rational(-0.75 + 3e-9), Rational(-3, 4));
    EXPECT_EQ(snap_rational(2.0), Rational(2));
    EXPECT_EQ(snap_rational(1.0 / 63.0), Rational(1, 63));
    EXPECT_FALSE(snap_rational(M_PI).has_value());
    EXPECT_FALSE(snap_rational(1.0 / 97.0 + 1e-4).has_value());
}

TEST(Discover, Counterexample)
{
    DiscoveryOptions opts;
    const auto found = discover_relations(counterexample(), q(-1), opts);
    ASSERT_EQ(found.size(), 1U);
    EXPECT_EQ(found[0].status, RelationStatus::ExactlyVerified);
    EXPECT_EQ(found[0].poly, remark_relation(q(-1)));
    EXPECT_EQ(format_polynomial(found[0].poly, X2), "x1.x0 + x0.x1 + 2*x1 - 1/2*x0");
    EXPECT_LT(found[0].numeric_defect, 1e-9);
}

TEST(Discover, OtherBasepoint)
{
    const auto found = discover_relations(counterexample(), q(-3), DiscoveryOptions{});
    ASSERT_EQ(found.size(), 1U);
    EXPECT_EQ(found[0].poly.coefficient(w("x1")), PoleRational(q(4, 3)));
    EXPECT_EQ(found[0].poly.coefficient(w("x0")), PoleRational(q(-3, 4)));
    EXPECT_EQ(found[0].status, RelationStatus::ExactlyVerified);
}

TEST(Discover, PolylogHasNone)
{
    DiscoveryOptions opts;
    EXPECT_TRUE(discover_relations(polylog(), q(-1), opts).empty());
    opts.truncation = 3;
    EXPECT_TRUE(discover_relations(polylog(), q(-1), opts).empty());
    opts.truncation = 0;
    EXPECT_TRUE(discover_relations(polylog(), q(-1), opts).empty());
}

TEST(Discover, NeedsEnoughSamples)
{
    DiscoveryOptions opts;
    opts.truncation = 3;
    opts.sample_count = 10;
    EXPECT_THROW(discover_relations(polylog(), q(-1), opts), std::invalid_argument);
    EXPECT_THROW(discover_relations(polylog(), q(0), DiscoveryOptions{}), geometry_error);
}

TEST(Sampling, DeterministicAndClear)
{
    const auto m = counterexample();
    SamplingOptions so{5, 0.1};
    const auto a = sample_points(m, -1.0, 20, so);
    const auto b = sample_points(m, -1.0, 20, so);
    EXPECT_EQ(a, b);
    ASSERT_EQ(a.size(), 20U);
    std::size_t near_pole = 0;
    for (const auto &p : a) {
        const double d = std::min(std::abs(p), std::abs(p - 1.0));
        EXPECT_GE(d, 1.0 / 256);
        EXPECT_GE(std::abs(p + 1.0), 0.25);
        EXPECT_LE(std::abs(p + 1.0), 12.0);
        near_pole += d <= 0.5 ? 1 : 0;
        const auto path = sample_path({0.0, 1.0}, -1.0, p, so.margin);
        EXPECT_GE(clearance(path, {0.0, 1.0}), std::min(0.1, d) * (1 - 1e-9));
        EXPECT_EQ(path.end(), p);
    }
    EXPECT_GE(near_pole, 10U);
    EXPECT_THROW(sample_points(m, 0.05, 4, so), geometry_error);
    so.seed = 6;
    EXPECT_NE(sample_points(m, -1.0, 20, so), a);
}
