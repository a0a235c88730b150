#ifndef HYPERLOG_CHEN_HPP
#define HYPERLOG_CHEN_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include <hyperlog/ncalg.hpp>
#include <hyperlog/words.hpp>

namespace hyperlog
{

using complex = std::complex<double>;

// Polyline from the basepoint to the endpoint. Every segment keeps at least
// `margin` away from every pole.
struct PathSpec {
    std::vector<complex> waypoints;
    double margin = 0.0;

    complex start() const
    {
        return waypoints.front();
    }
    complex end() const
    {
        return waypoints.back();
    }
    double length() const;
    // This path followed by `next` (which must start where this one ends).
    PathSpec then(const PathSpec &next) const;
    PathSpec reversed() const;
};

// Distance from p to the segment [a, b].
double segment_distance(complex a, complex b, complex p);

// Smallest distance from any segment of the path to any of the poles.
double clearance(const PathSpec &path, const std::vector<complex> &poles);

// Straight segment when it clears every pole by `margin`; otherwise poles are
// bypassed in order of encounter on the left of the direction of travel,
// through two waypoints offset by 2·margin. Throws geometry_error when an
// endpoint lies within the margin of a pole or no route is found.
PathSpec build_path(complex z0, complex z, const std::vector<complex> &poles, double margin);

struct EvalOptions {
    std::size_t truncation = 4;
    double tol = 1e-12;
    // Keep only words whose multidegree is within the cap.
    std::optional<MultiDegree> degree_cap;
};

// Values ⟨S|w⟩ at the path endpoint for the solution of d(S) = M S that is
// regular at the basepoint (⟨S|1⟩ = 1, ⟨S|w⟩ = 0 there for |w| >= 1).
struct CoefficientTable {
    std::map<Word, complex> values;
    complex basepoint;
    complex endpoint;
    std::size_t truncation = 0;
    // Accumulated local error estimate, indexed by word length.
    std::vector<double> stratum_error;

    const complex *find(const Word &w) const
    {
        auto it = values.find(w);
        return it == values.end() ? nullptr : &it->second;
    }
    const complex &at(const Word &w) const;
    double error_estimate(const Word &w) const;
};

CoefficientTable identity_table(const Alphabet &alphabet, complex point, const EvalOptions &options);

// Integrates d⟨S|x w⟩/dz = u_x(z) ⟨S|w⟩ for every |xw| <= N along the path
// with a Dormand–Prince 5(4) pair. Steps restart at each waypoint; the local
// error per step is held below tol·h/L (L the path length), so the global
// absolute error per coefficient stays near tol.
CoefficientTable eval_coeffs(const Multiplier &m, const PathSpec &path, const EvalOptions &options);

struct GrouplikeReport {
    double defect = 0.0;
    std::optional<std::pair<Word, Word>> worst;
};

// max |⟨S|u⟩⟨S|v⟩ - ⟨S|u ⧢ v⟩| over 1 <= |u|,|v|, |u|+|v| <= N.
GrouplikeReport grouplike_defect(const CoefficientTable &table);

// TSV rows "word<TAB>re<TAB>im<TAB>err_estimate", 15 significant digits,
// graded lexicographic order, no header.
void write_table_tsv(std::ostream &os, const CoefficientTable &table, const Alphabet &alphabet);

} // namespace hyperlog

#endif
