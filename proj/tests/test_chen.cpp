#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include <hyperlog/chen.hpp>
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
const std::vector<complex> poles01{0.0, 1.0};

Multiplier polylog()
{
    return Multiplier::fuchsian(X2, P01, {{0, q(1)}, {1, q(-1)}});
}

Word w(const char *text)
{
    return parse_word(text, X2);
}

CoefficientTable eval(complex z0, complex z, std::size_t n, double margin = 0.1, double tol = 1e-12)
{
    EvalOptions opts;
    opts.truncation = n;
    opts.tol = tol;
    return eval_coeffs(polylog(), build_path(z0, z, poles01, margin), opts);
}

} // namespace

TEST(Path, StraightWhenClear)
{
    const auto p = build_path(-1.0, -2.0, poles01, 0.1);
    ASSERT_EQ(p.waypoints.size(), 2U);
    EXPECT_EQ(p.start(), complex(-1.0));
    EXPECT_EQ(p.end(), complex(-2.0));
    EXPECT_DOUBLE_EQ(p.length(), 1.0);
}

TEST(Path, DetoursAroundPoles)
{
    const auto p = build_path(-1.0, 2.0, poles01, 0.1);
    EXPECT_GT(p.waypoints.size(), 2U);
    EXPECT_GE(clearance(p, poles01), 0.1);
    EXPECT_EQ(p.end(), complex(2.0));
    bool off_axis = false;
    for (std::size_t k = 1; k < p.waypoints.size(); ++k) {
        off_axis = off_axis || p.waypoints[k].imag() != 0.0;
        EXPECT_NE(p.waypoints[k], p.waypoints[k - 1]);
    }
    EXPECT_TRUE(off_axis);
}

TEST(Path, Errors)
{
    EXPECT_THROW(build_path(-1.0, 1.05, poles01, 0.1), geometry_error);
    EXPECT_THROW(build_path(0.0, 0.5, poles01, 0.1), geometry_error);
    EXPECT_THROW(build_path(-1.0, 0.5, poles01, 0.0), std::invalid_argument);
}

TEST(Path, SegmentDistance)
{
    EXPECT_DOUBLE_EQ(segment_distance(0.0, 2.0, complex(1.0, 1.0)), 1.0);
    EXPECT_DOUBLE_EQ(segment_distance(0.0, 2.0, complex(3.0, 0.0)), 1.0);
    EXPECT_DOUBLE_EQ(segment_distance(0.0, 0.0, complex(0.0, 2.0)), 2.0);
}

TEST(Eval, DegeneratePathIsIdentity)
{
    const auto t = eval(0.5, 0.5, 3);
    EXPECT_EQ(t.at(Word{}), complex(1.0));
    for (const auto &[word, v] : t.values) {
        if (!word.empty()) {
            EXPECT_EQ(v, complex(0.0));
        }
    }
    EXPECT_EQ(t.values.size(), X2.words_up_to(3).size());
}

TEST(Eval, ClosedFormLogs)
{
    const auto t = eval(0.5, 0.25, 2);
    EXPECT_NEAR(t.at(w("x0")).real(), std::log(0.5), 1e-11);
    EXPECT_NEAR(t.at(w("x1")).real(), std::log(2.0 / 3.0), 1e-11);
    EXPECT_NEAR(t.at(w("x0.x0")).real(), std::pow(std::log(0.5), 2) / 2, 1e-11);
    EXPECT_NEAR(std::abs(t.at(w("x0")).imag()), 0.0, 1e-12);
    EXPECT_EQ(t.at(Word{}), complex(1.0));
}

TEST(Eval, ComplexEndpoint)
{
    const complex z(0.5, 0.5);
    const auto t = eval(0.5, z, 2);
    EXPECT_LE(std::abs(t.at(w("x0")) - std::log(z / 0.5)), 1e-11);
    EXPECT_LE(std::abs(t.at(w("x1")) - std::log(0.5 / (1.0 - z))), 1e-11);
}

TEST(Eval, NestedQuadratureOracle)
{
    const complex z0 = 0.5;
    const auto u0 = [](complex s) { return 1.0 / s; };
    const auto u1 = [](complex s) { return 1.0 / (1.0 - s); };
    for (const complex z : {complex(0.25, 0.0), complex(0.5, 0.4), complex(0.7, -0.2)}) {
        const auto t = eval(z0, z, 2);
        EXPECT_LE(std::abs(t.at(w("x0.x1")) - oracle::nested_integral(u0, u1, z0, z)), 1e-7);
        EXPECT_LE(std::abs(t.at(w("x1.x0")) - oracle::nested_integral(u1, u0, z0, z)), 1e-7);
    }
}

TEST(Eval, TriangularConsistency)
{
    const auto m = polylog();
    const complex z0 = 0.5;
    const double h = 1e-4;
    for (const complex z : {complex(0.3, 0.1), complex(0.6, -0.3)}) {
        const auto plus = eval(z0, z + h, 3);
        const auto minus = eval(z0, z - h, 3);
        const auto mid = eval(z0, z, 3);
        for (const auto &word : X2.words_up_to(3)) {
            if (word.empty()) {
                continue;
            }
            const complex fd = (plus.at(word) - minus.at(word)) / (2 * h);
            const complex rhs = evaluate(m.u(word.front()), z) * mid.at(word.drop_front());
            EXPECT_LE(std::abs(fd - rhs), 1e-5 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST(Eval, DegreeCap)
{
    EvalOptions opts;
    opts.truncation = 4;
    MultiDegree cap;
    cap.add(0, 1);
    cap.add(1, 3);
    opts.degree_cap = cap;
    const auto t = eval_coeffs(polylog(), build_path(0.5, 0.25, poles01, 0.1), opts);
    EXPECT_TRUE(t.find(w("x1.x1.x1")) != nullptr);
    EXPECT_TRUE(t.find(w("x0.x0")) == nullptr);
    const auto full = eval(0.5, 0.25, 4);
    for (const auto &[word, v] : t.values) {
        EXPECT_LE(std::abs(v - full.at(word)), 1e-11);
    }
}

TEST(Eval, RejectsBadInputs)
{
    EvalOptions opts;
    opts.truncation = 30;
    EXPECT_THROW(eval_coeffs(polylog(), build_path(0.5, 0.25, poles01, 0.1), opts), std::invalid_argument);
    PathSpec bad{{-1.0, 2.0}, 0.1};
    EXPECT_THROW(eval_coeffs(polylog(), bad, EvalOptions{}), geometry_error);
}

TEST(Eval, PathRobustness)
{
    const double tol = 1e-12;
    const auto a = eval(-1.0, complex(2.0, 0.0), 4, 0.05, tol);
    const auto b = eval(-1.0, complex(2.0, 0.0), 4, 0.2, tol);
    for (const auto &[word, v] : a.values) {
        EXPECT_LE(std::abs(v - b.at(word)), 10 * tol) << format_word(word, X2);
    }
}

TEST(Eval, RoundTripIsIdentity)
{
    const double tol = 1e-12;
    const auto out = build_path(-1.0, complex(2.0, 0.5), poles01, 0.1);
    EvalOptions opts;
    opts.truncation = 4;
    opts.tol = tol;
    const auto t = eval_coeffs(polylog(), out.then(out.reversed()), opts);
    for (const auto &[word, v] : t.values) {
        EXPECT_LE(std::abs(v - (word.empty() ? 1.0 : 0.0)), 10 * tol) << format_word(word, X2);
    }
}

TEST(Grouplike, SmallDefect)
{
    for (const complex z : {complex(0.25, 0.0), complex(0.5, 0.5)}) {
        const auto r = grouplike_defect(eval(0.5, z, 4));
        EXPECT_LT(r.defect, 1e-9);
    }
}

TEST(Grouplike, CorruptionDetected)
{
    auto t = eval(0.5, 0.25, 4);
    t.values[w("x0.x0")] += 0.1;
    const auto r = grouplike_defect(t);
    EXPECT_GE(r.defect, 0.19);
    ASSERT_TRUE(r.worst.has_value());
    EXPECT_EQ(r.worst->first, w("x0"));
    EXPECT_EQ(r.worst->second, w("x0"));
}

TEST(Grouplike, VacuousAtN1)
{
    const auto r = grouplike_defect(eval(0.5, 0.25, 1));
    EXPECT_EQ(r.defect, 0.0);
    EXPECT_FALSE(r.worst.has_value());
}

TEST(Tsv, Format)
{
    const auto table = eval(0.5, 0.25, 1);
    std::ostringstream os;
    write_table_tsv(os, table, X2);
    std::istringstream is(os.str());
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(is, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, '\t')) {
            fields.push_back(f);
        }
        rows.push_back(fields);
    }
    ASSERT_EQ(rows.size(), 3U);
    const std::vector<std::string> names{"1", "x0", "x1"};
    const double exact[] = {1.0, std::log(0.5), std::log(2.0 / 3.0)};
    for (std::size_t r = 0; r < 3; ++r) {
        ASSERT_EQ(rows[r].size(), 4U);
        EXPECT_EQ(rows[r][0], names[r]);
        const complex v = table.at(parse_word(names[r], X2));
        char re[32];
        std::snprintf(re, sizeof re, "%.15g", v.real());
        EXPECT_EQ(rows[r][1], re);
        EXPECT_NEAR(std::stod(rows[r][1]), exact[r], 1e-13);
        EXPECT_NEAR(std::stod(rows[r][2]), 0.0, 1e-13);
    }
    EXPECT_EQ(rows[1][1].substr(0, 14), "-0.69314718055");
    EXPECT_EQ(rows[2][1].substr(0, 14), "-0.40546510810");

    std::ostringstream id;
    write_table_tsv(id, identity_table(X2, 0.5, EvalOptions{0}), X2);
    EXPECT_EQ(id.str(), "1\t1\t0\t0\n");
}
