#ifndef HYPERLOG_CERT_HPP
#define HYPERLOG_CERT_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include <hyperlog/chen.hpp>
#include <hyperlog/gaussian.hpp>
#include <hyperlog/ncalg.hpp>
#include <hyperlog/ratfun.hpp>

namespace hyperlog
{

using ExactMatrix = std::vector<std::vector<GaussianRational>>;

// Entry (i, x) is the residue of u_x at pole i.
ExactMatrix residue_matrix(const Multiplier &m);

struct Nullspace {
    std::vector<std::size_t> pivots;
    // One vector per free column, with 1 at that column (reduced echelon basis).
    std::vector<std::vector<GaussianRational>> basis;
};

// Exact Gauss–Jordan elimination over Q(i). `columns` fixes the width when the
// matrix has no rows.
Nullspace exact_nullspace(const ExactMatrix &a, std::size_t columns);

struct Independent {
    ExactMatrix residues;
    std::vector<std::size_t> pivots;
};

// d(f) = sum_x alpha_x u_x with alpha != 0.
struct Dependent {
    std::vector<GaussianRational> alpha;
    PoleRational f;
};

using IndependenceVerdict = std::variant<Independent, Dependent>;

// The coefficients ⟨S|w⟩ are linearly independent over the pole-localized
// rational functions iff no nonzero constant combination of the u_x has a
// rational primitive, i.e. iff the residue matrix has full column rank.
IndependenceVerdict certify(const Multiplier &m);

enum class RelationStatus {
    ExactlyVerified,
    NumericallySupported,
    Inconclusive,
    // The exact reduction pairs to a nonzero function.
    Refuted,
};

std::string to_string(RelationStatus s);

// A claimed kernel element Q with ⟨S|Q⟩ = 0.
struct Relation {
    Polynomial<PoleRational> poly;
    RelationStatus status = RelationStatus::Inconclusive;
    double numeric_defect = 0.0;
};

// Exact closed forms of ⟨S|w⟩ that stay inside the pole-localized field,
// normalized to vanish at the basepoint.
struct RationalCoefficientTable {
    std::map<Word, PoleRational> entries;
    std::set<Word> blocked;
    GaussianRational basepoint;

    const PoleRational *find(const Word &w) const
    {
        auto it = entries.find(w);
        return it == entries.end() ? nullptr : &it->second;
    }
};

// Breadth-first: entries[x_i v] = F - F(z0) with F = rational_primitive(u_i ·
// entries[v]); residue obstructions go to `blocked` and are not extended.
RationalCoefficientTable rational_coefficient_table(const Multiplier &m, const GaussianRational &z0, std::size_t max_length);

// Q = (f(z0) - f)·1 + sum_x alpha_x x, verified exactly.
Relation witness_to_degree1_relation(const Dependent &witness, const Multiplier &m, const GaussianRational &z0);

struct SamplingOptions {
    std::uint64_t seed = 0;
    double margin = 0.1;
};

// Path used for a sample endpoint: routed around the poles with clearance
// c = min(margin, d(z0)/2, pole separation/4); an endpoint within 2c of a
// pole is reached by a final radial segment.
PathSpec sample_path(const std::vector<complex> &poles, complex z0, complex z, double margin);

// Deterministic sample points: half in a disk of radius six times the
// farthest pole distance around z0, half at log-uniform distances around the
// poles, down to 1/256 of each pole's separation from z0 and the other poles.
// Throws geometry_error when z0 lies within margin of a pole.
std::vector<complex> sample_points(const Multiplier &m, complex z0, std::size_t count, const SamplingOptions &options);

// Numeric tables along sample_path(z0, z_j).
std::vector<CoefficientTable> sample_tables(const Multiplier &m, complex z0, const std::vector<complex> &points, const EvalOptions &options, double margin = 0.1);

// Rows: sample points; columns: words.
Eigen::MatrixXcd evaluation_matrix(const std::vector<CoefficientTable> &tables, const std::vector<Word> &words);

// Singular values of the evaluation matrix with unit-norm columns.
Eigen::VectorXd normalized_singular_values(const Eigen::MatrixXcd &a);

// max_j |⟨S|Q⟩(z_j)|.
double numeric_relation_defect(const Polynomial<PoleRational> &q, const std::vector<CoefficientTable> &tables);

struct VerifyOptions {
    double numeric_tolerance = 1e-8;
    std::size_t sample_count = 8;
    double eval_tol = 1e-12;
    SamplingOptions sampling{};
};

struct VerifyResult {
    RelationStatus status = RelationStatus::Inconclusive;
    double numeric_defect = 0.0;
};

// Exact when every word of supp(reduce(Q, M)) has a closed form in the table:
// ⟨S|Q⟩ vanishes identically iff ⟨S|reduce(Q, M)⟩ = 0 and ⟨S|Q⟩(z0) = 0.
// Otherwise falls back to a numeric check at sampled points.
VerifyResult verify_relation(const Polynomial<PoleRational> &q, const Multiplier &m, const GaussianRational &z0, const RationalCoefficientTable &table, const VerifyOptions &options = {});

// Nearest p/q with q <= max_denominator from the continued-fraction
// convergents, if within max_distance.
std::optional<Rational> snap_rational(double x, long max_denominator = 64, double max_distance = 1e-6);

struct DiscoveryOptions {
    std::size_t truncation = 2;
    std::size_t sample_count = 40;
    // Relative singular-value threshold for the numerical nullspace.
    double tol = 1e-8;
    double eval_tol = 1e-12;
    SamplingOptions sampling{};
};

// Constant-coefficient relations among ⟨S|w⟩, |w| <= N: numerical nullspace
// of the sampled evaluation matrix, reduced so the ≺-greatest pivot word has
// coefficient 1, rationalized and then verified.
std::vector<Relation> discover_relations(const Multiplier &m, const GaussianRational &z0, const DiscoveryOptions &options);

} // namespace hyperlog

#endif
