#include <hyperlog/chen.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <unordered_map>

#include <hyperlog/errors.hpp>
#include <hyperlog/shuffle.hpp>

namespace hyperlog
{

double PathSpec::length() const
{
    double l = 0.0;
    for (std::size_t k = 1; k < waypoints.size(); ++k) {
        l += std::abs(waypoints[k] - waypoints[k - 1]);
    }
    return l;
}

PathSpec PathSpec::then(const PathSpec &next) const
{
    if (waypoints.empty() || next.waypoints.empty() || std::abs(end() - next.start()) > 1e-14 * std::max(1.0, std::abs(end()))) {
        throw std::invalid_argument("paths do not join");
    }
    PathSpec out = *this;
    out.waypoints.insert(out.waypoints.end(), next.waypoints.begin() + 1, next.waypoints.end());
    out.margin = std::min(margin, next.margin);
    return out;
}

PathSpec PathSpec::reversed() const
{
    PathSpec out = *this;
    std::reverse(out.waypoints.begin(), out.waypoints.end());
    return out;
}

double segment_distance(complex a, complex b, complex p)
{
    const complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) {
        return std::abs(p - a);
    }
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double clearance(const PathSpec &path, const std::vector<complex> &poles)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &p : poles) {
        if (path.waypoints.size() == 1) {
            best = std::min(best, std::abs(p - path.waypoints.front()));
        }
        for (std::size_t k = 1; k < path.waypoints.size(); ++k) {
            best = std::min(best, segment_distance(path.waypoints[k - 1], path.waypoints[k], p));
        }
    }
    return best;
}

namespace
{

void route(complex a, complex b, const std::vector<complex> &poles, double margin, int depth, std::vector<complex> &out)
{
    if (depth > 12) {
        throw geometry_error("could not route the path around the poles");
    }
    const complex d = b - a;
    const double len = std::abs(d);
    if (len == 0.0) {
        return;
    }
    const complex dir = d / len;
    std::optional<std::pair<double, complex>> first;
    for (const auto &p : poles) {
        if (segment_distance(a, b, p) < margin) {
            const double t = ((p - a) * std::conj(dir)).real();
            if (!first || t < first->first) {
                first = {t, p};
            }
        }
    }
    if (!first) {
        out.push_back(b);
        return;
    }
    const complex left = complex(0.0, 1.0) * dir;
    const complex p = first->second;
    const complex w1 = p + 2.0 * margin * (left - dir);
    const complex w2 = p + 2.0 * margin * (left + dir);
    route(a, w1, poles, margin, depth + 1, out);
    route(w1, w2, poles, margin, depth + 1, out);
    route(w2, b, poles, margin, depth + 1, out);
}

} // namespace

PathSpec build_path(complex z0, complex z, const std::vector<complex> &poles, double margin)
{
    if (!(margin > 0.0)) {
        throw std::invalid_argument("margin must be positive");
    }
    for (const auto &p : poles) {
        if (std::abs(z0 - p) <= margin || std::abs(z - p) <= margin) {
            throw geometry_error("path endpoint within the margin of a pole");
        }
    }
    PathSpec path;
    path.margin = margin;
    path.waypoints.push_back(z0);
    route(z0, z, poles, margin, 0, path.waypoints);
    if (clearance(path, poles) < margin) {
        throw geometry_error("could not route the path around the poles");
    }
    return path;
}

const complex &CoefficientTable::at(const Word &w) const
{
    auto it = values.find(w);
    if (it == values.end()) {
        throw unresolvable_word("word missing from the coefficient table");
    }
    return it->second;
}

double CoefficientTable::error_estimate(const Word &w) const
{
    return w.size() < stratum_error.size() ? stratum_error[w.size()] : 0.0;
}

namespace
{

std::vector<Word> table_words(const Alphabet &alphabet, const EvalOptions &options)
{
    auto words = alphabet.words_up_to(options.truncation);
    if (options.degree_cap) {
        std::erase_if(words, [&](const Word &w) { return !multi_degree(w).within(*options.degree_cap); });
    }
    return words;
}

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

class TriangularSystem
{
public:
    TriangularSystem(const Multiplier &m, const std::vector<Word> &words) : m_words(words)
    {
        std::unordered_map<Word, std::size_t> index;
        for (std::size_t k = 0; k < words.size(); ++k) {
            index.emplace(words[k], k);
        }
        m_letter.resize(words.size());
        m_tail.resize(words.size());
        for (std::size_t k = 1; k < words.size(); ++k) {
            m_letter[k] = words[k].front();
            m_tail[k] = index.at(words[k].drop_front());
        }
        for (const auto &u : m.terms()) {
            m_u.emplace_back(u);
        }
        m_uval.resize(m_u.size());
    }

    std::size_t size() const
    {
        return m_words.size();
    }
    const Word &word(std::size_t k) const
    {
        return m_words[k];
    }

    // dy/ds at z, the path moving with unit velocity `dir`.
    void rhs(complex z, complex dir, const std::vector<complex> &y, std::vector<complex> &dy)
    {
        for (std::size_t x = 0; x < m_u.size(); ++x) {
            m_uval[x] = m_u[x](z) * dir;
        }
        dy[0] = 0.0;
        for (std::size_t k = 1; k < y.size(); ++k) {
            dy[k] = m_uval[m_letter[k]] * y[m_tail[k]];
        }
    }

private:
    const std::vector<Word> &m_words;
    std::vector<letter_index> m_letter;
    std::vector<std::size_t> m_tail;
    std::vector<CompiledRational> m_u;
    std::vector<complex> m_uval;
};

} // namespace

CoefficientTable identity_table(const Alphabet &alphabet, complex point, const EvalOptions &options)
{
    CoefficientTable t;
    t.basepoint = t.endpoint = point;
    t.truncation = options.truncation;
    t.stratum_error.assign(options.truncation + 1, 0.0);
    for (const auto &w : table_words(alphabet, options)) {
        t.values.emplace(w, w.empty() ? 1.0 : 0.0);
    }
    return t;
}

CoefficientTable eval_coeffs(const Multiplier &m, const PathSpec &path, const EvalOptions &options)
{
    if (!(options.tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (path.waypoints.empty()) {
        throw std::invalid_argument("empty path");
    }
    if (options.truncation > 24) {
        throw std::invalid_argument("truncation too large");
    }
    const auto poles = m.poles()->numeric();
    if (path.waypoints.size() > 1 && clearance(path, poles) < path.margin) {
        throw geometry_error("path violates its pole margin");
    }

    const auto words = table_words(m.alphabet(), options);
    TriangularSystem sys(m, words);
    const std::size_t n = sys.size();
    double max_order = 1.0;
    for (const auto &u : m.terms()) {
        for (const auto &[key, c] : u.principal()) {
            max_order = std::max(max_order, static_cast<double>(key.second));
        }
    }

    std::vector<complex> y(n, 0.0);
    y[0] = 1.0;
    std::vector<double> stratum(options.truncation + 1, 0.0);

    const double total = path.length();
    std::array<std::vector<complex>, 7> k;
    for (auto &v : k) {
        v.resize(n);
    }
    std::vector<complex> tmp(n), y5(n), err(n);
    std::vector<double> step_max(stratum.size(), 0.0);
    double h_prev = 0.0;

    for (std::size_t seg = 1; seg < path.waypoints.size(); ++seg) {
        const complex a = path.waypoints[seg - 1];
        const complex b = path.waypoints[seg];
        const double len = std::abs(b - a);
        if (len == 0.0) {
            continue;
        }
        const complex dir = (b - a) / len;
        double s = 0.0;
        double h = h_prev > 0.0 ? std::min(h_prev, len) : len / 32.0;
        const double h_min = 1e-13 * std::max(1.0, len);

        sys.rhs(a + s * dir, dir, y, k[0]);
        while (s < len) {
            const bool last = s + h >= len;
            const double step = last ? len - s : h;
            auto stage = [&](std::size_t out, double c, std::initializer_list<std::pair<std::size_t, double>> coeffs) {
                for (std::size_t j = 0; j < n; ++j) {
                    complex acc = y[j];
                    for (const auto &[idx, w] : coeffs) {
                        acc += step * w * k[idx][j];
                    }
                    tmp[j] = acc;
                }
                sys.rhs(a + (s + c * step) * dir, dir, tmp, k[out]);
            };
            stage(1, c2, {{0, a21}});
            stage(2, c3, {{0, a31}, {1, a32}});
            stage(3, c4, {{0, a41}, {1, a42}, {2, a43}});
            stage(4, c5, {{0, a51}, {1, a52}, {2, a53}, {3, a54}});
            stage(5, 1.0, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
            for (std::size_t j = 0; j < n; ++j) {
                y5[j] = y[j] + step * (b1 * k[0][j] + b3 * k[2][j] + b4 * k[3][j] + b5 * k[4][j] + b6 * k[5][j]);
            }
            sys.rhs(a + (s + step) * dir, dir, y5, k[6]);

            double err_max = 0.0;
            double y_max = 0.0;
            double k_max = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                err[j] = step * (e1 * k[0][j] + e3 * k[2][j] + e4 * k[3][j] + e5 * k[4][j] + e6 * k[5][j] + e7 * k[6][j]);
                err_max = std::max(err_max, std::abs(err[j]));
                y_max = std::max(y_max, std::abs(y5[j]));
                for (const auto &stage_k : k) {
                    k_max = std::max(k_max, std::abs(stage_k[j]));
                }
            }
            // Error per unit length, floored near the rounding level of the
            // values and of the error estimate. Close to a pole the rounding
            // of z = a + s·dir is amplified by the conditioning of u.
            constexpr double eps = std::numeric_limits<double>::epsilon();
            const complex here = a + s * dir;
            double conditioning = 1.0;
            for (const auto &p : poles) {
                conditioning = std::max(conditioning, 1.0 + max_order * (std::abs(a) + s + std::abs(p)) / std::abs(here - p));
            }
            const double per_length = std::max({options.tol, 4.0 * eps * y_max, 2.0 * eps * k_max * total * conditioning});
            const double ratio = err_max / (per_length * step / total);

            if (ratio <= 1.0) {
                std::fill(step_max.begin(), step_max.end(), 0.0);
                for (std::size_t j = 0; j < n; ++j) {
                    auto &slot = step_max[sys.word(j).size()];
                    slot = std::max(slot, std::abs(err[j]));
                }
                for (std::size_t l = 0; l < stratum.size(); ++l) {
                    stratum[l] += step_max[l];
                }
                y.swap(y5);
                k[0].swap(k[6]);
                s = last ? len : s + step;
            }
            const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
            if (ratio <= 1.0 && last) {
                // Clipped final step: keep the unclipped proposal.
                h = std::max(h, step * factor);
            } else {
                h = step * factor;
            }
            if (s < len && h < h_min) {
                throw step_size_underflow("step size underflow while integrating the coefficient system");
            }
        }
        h_prev = h;
    }

    CoefficientTable t;
    t.basepoint = path.start();
    t.endpoint = path.end();
    t.truncation = options.truncation;
    t.stratum_error = std::move(stratum);
    for (std::size_t j = 0; j < n; ++j) {
        t.values.emplace(sys.word(j), y[j]);
    }
    return t;
}

GrouplikeReport grouplike_defect(const CoefficientTable &table)
{
    GrouplikeReport report;
    for (const auto &[u, su] : table.values) {
        if (u.empty() || u.size() >= table.truncation) {
            continue;
        }
        for (const auto &[v, sv] : table.values) {
            if (v.empty() || u.size() + v.size() > table.truncation) {
                continue;
            }
            complex rhs = 0.0;
            bool complete = true;
            const auto uv = shuffle(u, v);
            for (const auto &[w, c] : uv.terms()) {
                const complex *sw = table.find(w);
                if (sw == nullptr) {
                    complete = false;
                    break;
                }
                rhs += static_cast<double>(c) * *sw;
            }
            if (!complete) {
                continue;
            }
            const double d = std::abs(su * sv - rhs);
            if (!report.worst || d > report.defect) {
                report.defect = d;
                report.worst = std::pair{u, v};
            }
        }
    }
    return report;
}

void write_table_tsv(std::ostream &os, const CoefficientTable &table, const Alphabet &alphabet)
{
    auto clean = [](double x) { return x == 0.0 ? 0.0 : x; };
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << std::setprecision(15);
    for (const auto &[w, v] : table.values) {
        os << format_word(w, alphabet) << '\t' << clean(v.real()) << '\t' << clean(v.imag()) << '\t' << clean(table.error_estimate(w)) << '\n';
    }
    os.flags(flags);
    os.precision(precision);
}

} // namespace hyperlog
