#include <hyperlog/cert.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/SVD>

#include <hyperlog/errors.hpp>

namespace hyperlog
{

ExactMatrix residue_matrix(const Multiplier &m)
{
    const std::size_t rows = m.poles()->size();
    ExactMatrix r(rows, std::vector<GaussianRational>(m.size()));
    for (std::size_t i = 0; i < rows; ++i) {
        for (letter_index x = 0; x < m.size(); ++x) {
            r[i][x] = residue(m.u(x), i);
        }
    }
    return r;
}

Nullspace exact_nullspace(const ExactMatrix &a, std::size_t columns)
{
    ExactMatrix r = a;
    Nullspace out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < columns && row < r.size(); ++col) {
        std::size_t p = row;
        while (p < r.size() && r[p][col].is_zero()) {
            ++p;
        }
        if (p == r.size()) {
            continue;
        }
        std::swap(r[p], r[row]);
        const GaussianRational inv = r[row][col].inverse();
        for (auto &e : r[row]) {
            e *= inv;
        }
        for (std::size_t other = 0; other < r.size(); ++other) {
            if (other == row || r[other][col].is_zero()) {
                continue;
            }
            const GaussianRational factor = r[other][col];
            for (std::size_t c = col; c < columns; ++c) {
                r[other][c] -= factor * r[row][c];
            }
        }
        out.pivots.push_back(col);
        ++row;
    }
    for (std::size_t free = 0; free < columns; ++free) {
        if (std::find(out.pivots.begin(), out.pivots.end(), free) != out.pivots.end()) {
            continue;
        }
        std::vector<GaussianRational> v(columns);
        v[free] = 1;
        for (std::size_t k = 0; k < out.pivots.size(); ++k) {
            v[out.pivots[k]] = -r[k][free];
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

IndependenceVerdict certify(const Multiplier &m)
{
    auto residues = residue_matrix(m);
    auto ns = exact_nullspace(residues, m.size());
    if (ns.basis.empty()) {
        return Independent{std::move(residues), std::move(ns.pivots)};
    }
    Dependent d;
    d.alpha = ns.basis.front();
    PoleRational combo(m.poles());
    for (letter_index x = 0; x < m.size(); ++x) {
        combo += scale(m.u(x), d.alpha[x]);
    }
    // Residues of the combination vanish by construction.
    d.f = rational_primitive(combo);
    if (!(derivative(d.f) == combo)) {
        throw std::logic_error("dependence witness failed its exact check");
    }
    return d;
}

std::string to_string(RelationStatus s)
{
    switch (s) {
    case RelationStatus::ExactlyVerified:
        return "EXACT";
    case RelationStatus::NumericallySupported:
        return "NUMERIC";
    case RelationStatus::Inconclusive:
        return "INCONCLUSIVE";
    case RelationStatus::Refuted:
        return "REFUTED";
    }
    return "?";
}

namespace
{

void require_regular_basepoint(const Multiplier &m, const GaussianRational &z0)
{
    if (m.poles()->index_of(z0)) {
        throw geometry_error("basepoint coincides with a pole");
    }
}

} // namespace

RationalCoefficientTable rational_coefficient_table(const Multiplier &m, const GaussianRational &z0, std::size_t max_length)
{
    require_regular_basepoint(m, z0);
    RationalCoefficientTable t;
    t.basepoint = z0;
    t.entries.emplace(Word{}, PoleRational(m.poles()) + PoleRational(1L));
    for (std::size_t len = 1; len <= max_length; ++len) {
        for (const auto &w : m.alphabet().words_of_length(len)) {
            const PoleRational *tail = t.find(w.drop_front());
            if (tail == nullptr) {
                continue;
            }
            try {
                PoleRational f = rational_primitive(m.u(w.front()) * *tail);
                f -= PoleRational(evaluate(f, z0));
                t.entries.emplace(w, std::move(f));
            } catch (const residue_obstruction &) {
                t.blocked.insert(w);
            }
        }
    }
    return t;
}

namespace
{

double distance_to_poles(complex z, const std::vector<complex> &poles)
{
    double d = std::numeric_limits<double>::infinity();
    for (const auto &p : poles) {
        d = std::min(d, std::abs(z - p));
    }
    return d;
}

} // namespace

PathSpec sample_path(const std::vector<complex> &poles, complex z0, complex z, double margin)
{
    double clearance = std::min(margin, distance_to_poles(z0, poles) / 2);
    for (std::size_t i = 0; i < poles.size(); ++i) {
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            clearance = std::min(clearance, std::abs(poles[i] - poles[j]) / 4);
        }
    }
    // An endpoint close to a pole is approached radially from 2·clearance
    // out, so the rest of the path keeps the full clearance.
    for (const auto &p : poles) {
        const double r = std::abs(z - p);
        if (r < 2 * clearance) {
            const complex w = p + (z - p) * (2 * clearance / r);
            PathSpec tail;
            tail.waypoints = {w, z};
            tail.margin = r / 2;
            return build_path(z0, w, poles, clearance).then(tail);
        }
    }
    return build_path(z0, z, poles, clearance);
}

std::vector<complex> sample_points(const Multiplier &m, complex z0, std::size_t count, const SamplingOptions &options)
{
    const auto poles = m.poles()->numeric();
    const double nearest = poles.empty() ? 1.0 : distance_to_poles(z0, poles);
    if (nearest <= options.margin) {
        throw geometry_error("basepoint too close to a pole for sampling");
    }
    double farthest = nearest;
    std::vector<double> scale;
    for (const auto &p : poles) {
        farthest = std::max(farthest, std::abs(p - z0));
        double sep = std::abs(p - z0);
        for (const auto &q : poles) {
            if (q != p) {
                sep = std::min(sep, std::abs(q - p));
            }
        }
        scale.push_back(sep);
    }
    const double radius = 6.0 * farthest;

    std::mt19937_64 rng(options.seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<complex> out;
    for (std::size_t attempt = 0; out.size() < count; ++attempt) {
        if (attempt > 1000 * (count + 1)) {
            throw geometry_error("could not place sample points around the basepoint");
        }
        // Alternate between a wide disk around z0 and log-uniform distances
        // from sep/256 to sep/2 around each pole in turn.
        complex z;
        const std::size_t k = out.size();
        if (k % 2 == 0 || poles.empty()) {
            z = z0 + std::polar(radius * std::sqrt(uniform()), 2 * std::numbers::pi * uniform());
        } else {
            const std::size_t i = (k / 2) % poles.size();
            z = poles[i] + std::polar(scale[i] / 256 * std::pow(128.0, uniform()), 2 * std::numbers::pi * uniform());
        }
        if (std::abs(z - z0) < nearest / 4) {
            continue;
        }
        bool clear = true;
        for (std::size_t i = 0; i < poles.size(); ++i) {
            clear = clear && std::abs(z - poles[i]) >= scale[i] / 256;
        }
        if (!clear) {
            continue;
        }
        try {
            sample_path(poles, z0, z, options.margin);
        } catch (const geometry_error &) {
            continue;
        }
        out.push_back(z);
    }
    return out;
}

std::vector<CoefficientTable> sample_tables(const Multiplier &m, complex z0, const std::vector<complex> &points, const EvalOptions &options, double margin)
{
    const auto poles = m.poles()->numeric();
    std::vector<CoefficientTable> tables(points.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            tables[j] = eval_coeffs(m, sample_path(poles, z0, points[j], margin), options);
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), points.size()));
    if (workers <= 1) {
        work(0, points.size());
        return tables;
    }
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (points.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < points.size(); begin += chunk) {
        jobs.push_back(std::async(std::launch::async, work, begin, std::min(points.size(), begin + chunk)));
    }
    for (auto &j : jobs) {
        j.get();
    }
    return tables;
}

Eigen::MatrixXcd evaluation_matrix(const std::vector<CoefficientTable> &tables, const std::vector<Word> &words)
{
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(tables.size()), static_cast<Eigen::Index>(words.size()));
    for (std::size_t j = 0; j < tables.size(); ++j) {
        for (std::size_t k = 0; k < words.size(); ++k) {
            a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = tables[j].at(words[k]);
        }
    }
    return a;
}

namespace
{

Eigen::VectorXd column_norms(const Eigen::MatrixXcd &a)
{
    Eigen::VectorXd norms = a.colwise().norm().transpose();
    for (Eigen::Index k = 0; k < norms.size(); ++k) {
        if (norms(k) == 0.0) {
            norms(k) = 1.0;
        }
    }
    return norms;
}

} // namespace

Eigen::VectorXd normalized_singular_values(const Eigen::MatrixXcd &a)
{
    const Eigen::VectorXd norms = column_norms(a);
    const Eigen::MatrixXcd b = a * norms.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    return svd.singularValues();
}

double numeric_relation_defect(const Polynomial<PoleRational> &q, const std::vector<CoefficientTable> &tables)
{
    double defect = 0.0;
    for (const auto &t : tables) {
        const auto values = evaluate_coefficients(q, t.endpoint);
        const complex s = pair([&](const Word &w) { return t.find(w); }, values);
        defect = std::max(defect, std::abs(s));
    }
    return defect;
}

Relation witness_to_degree1_relation(const Dependent &witness, const Multiplier &m, const GaussianRational &z0)
{
    require_regular_basepoint(m, z0);
    if (witness.alpha.size() != m.size()) {
        throw std::invalid_argument("witness has the wrong number of weights");
    }
    PoleRational combination(m.poles());
    for (letter_index x = 0; x < m.size(); ++x) {
        combination += scale(m.u(x), witness.alpha[x]);
    }
    if (!(derivative(witness.f) == combination)) {
        throw std::invalid_argument("not a dependence witness: d(f) differs from the weighted sum of the u_x");
    }
    Relation r;
    r.poly.add_term(Word{}, PoleRational(m.poles()) + PoleRational(evaluate(witness.f, z0)) - witness.f);
    for (letter_index x = 0; x < m.size(); ++x) {
        r.poly.add_term(Word::letter(x), PoleRational(witness.alpha.at(x)));
    }
    const auto table = rational_coefficient_table(m, z0, 1);
    const auto v = verify_relation(r.poly, m, z0, table);
    r.status = v.status;
    r.numeric_defect = v.numeric_defect;
    return r;
}

VerifyResult verify_relation(const Polynomial<PoleRational> &q, const Multiplier &m, const GaussianRational &z0, const RationalCoefficientTable &table, const VerifyOptions &options)
{
    require_regular_basepoint(m, z0);
    VerifyResult out;

    const auto points = sample_points(m, z0.to_complex(), options.sample_count, options.sampling);
    EvalOptions eval;
    eval.truncation = q.degree();
    eval.tol = options.eval_tol;
    out.numeric_defect = numeric_relation_defect(q, sample_tables(m, z0.to_complex(), points, eval, options.sampling.margin));

    const auto d = reduce(q, m);
    const bool resolvable = std::all_of(d.terms().begin(), d.terms().end(), [&](const auto &kv) { return table.find(kv.first) != nullptr; });
    if (resolvable) {
        const PoleRational derivative_of_pairing = pair([&](const Word &w) { return table.find(w); }, d);
        const GaussianRational at_basepoint = evaluate(q.coefficient(Word{}), z0);
        out.status = derivative_of_pairing.is_zero() && at_basepoint.is_zero() ? RelationStatus::ExactlyVerified : RelationStatus::Refuted;
        return out;
    }
    out.status = out.numeric_defect <= options.numeric_tolerance ? RelationStatus::NumericallySupported : RelationStatus::Inconclusive;
    return out;
}

std::optional<Rational> snap_rational(double x, long max_denominator, double max_distance)
{
    if (!std::isfinite(x)) {
        return std::nullopt;
    }
    mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(r);
        const mpz_class ai(a);
        const mpz_class h = ai * h1 + h2;
        const mpz_class k = ai * k1 + k2;
        if (k > max_denominator) {
            break;
        }
        Rational q(h, k);
        q.canonicalize();
        if (std::abs(x - q.get_d()) <= max_distance) {
            return q;
        }
        const double frac = r - a;
        if (frac < 1e-15) {
            break;
        }
        r = 1.0 / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    return std::nullopt;
}

std::vector<Relation> discover_relations(const Multiplier &m, const GaussianRational &z0, const DiscoveryOptions &options)
{
    require_regular_basepoint(m, z0);
    const auto words = m.alphabet().words_up_to(options.truncation);
    if (options.sample_count < words.size()) {
        throw std::invalid_argument("need at least as many sample points as ansatz words (" + std::to_string(words.size()) + ")");
    }
    const complex base = z0.to_complex();
    const auto points = sample_points(m, base, options.sample_count, options.sampling);
    EvalOptions eval;
    eval.truncation = options.truncation;
    eval.tol = options.eval_tol;
    const auto tables = sample_tables(m, base, points, eval, options.sampling.margin);
    const Eigen::MatrixXcd a = evaluation_matrix(tables, words);

    const Eigen::VectorXd norms = column_norms(a);
    const Eigen::MatrixXcd b = a * norms.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeFullV);
    const auto &sigma = svd.singularValues();
    const double threshold = options.tol * sigma(0);

    // Null directions, rescaled back to coefficients of the unnormalized words.
    const Eigen::Index n = static_cast<Eigen::Index>(words.size());
    std::vector<Eigen::VectorXcd> null_rows;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (sigma(i) < threshold) {
            null_rows.push_back(svd.matrixV().col(i).cwiseQuotient(norms.cast<std::complex<double>>()));
        }
    }
    if (null_rows.empty()) {
        return {};
    }

    // Reduced echelon form scanning words from the ≺-greatest down, so each
    // candidate's leading word is a pivot with coefficient 1.
    Eigen::MatrixXcd basis(static_cast<Eigen::Index>(null_rows.size()), n);
    for (std::size_t r = 0; r < null_rows.size(); ++r) {
        basis.row(static_cast<Eigen::Index>(r)) = null_rows[r].transpose();
    }
    const double scale = basis.cwiseAbs().maxCoeff();
    Eigen::Index pivot_row = 0;
    for (Eigen::Index col = n - 1; col >= 0 && pivot_row < basis.rows(); --col) {
        Eigen::Index best = pivot_row;
        for (Eigen::Index r = pivot_row; r < basis.rows(); ++r) {
            if (std::abs(basis(r, col)) > std::abs(basis(best, col))) {
                best = r;
            }
        }
        if (std::abs(basis(best, col)) <= 1e-8 * scale) {
            continue;
        }
        basis.row(best).swap(basis.row(pivot_row));
        basis.row(pivot_row) /= basis(pivot_row, col);
        for (Eigen::Index r = 0; r < basis.rows(); ++r) {
            if (r != pivot_row) {
                basis.row(r) -= basis(r, col) * basis.row(pivot_row);
            }
        }
        ++pivot_row;
    }

    VerifyOptions verify;
    verify.eval_tol = options.eval_tol;
    verify.sampling = options.sampling;
    verify.sampling.seed = options.sampling.seed + 1;
    const auto table = rational_coefficient_table(m, z0, options.truncation + 1);

    std::vector<Relation> out;
    for (Eigen::Index r = 0; r < pivot_row; ++r) {
        Polynomial<GaussianRational> exact;
        Polynomial<GaussianRational> approx;
        bool snapped = true;
        for (Eigen::Index k = 0; k < n; ++k) {
            const complex c = basis(r, k);
            const double re = std::abs(c.real()) < 1e-9 ? 0.0 : c.real();
            const double im = std::abs(c.imag()) < 1e-9 ? 0.0 : c.imag();
            auto sr = snap_rational(re);
            auto si = snap_rational(im);
            if (sr && si) {
                exact.add_term(words[static_cast<std::size_t>(k)], GaussianRational(*sr, *si));
            } else {
                snapped = false;
            }
            approx.add_term(words[static_cast<std::size_t>(k)], GaussianRational(Rational(re), Rational(im)));
        }
        Relation rel;
        if (snapped) {
            rel.poly = lift(exact, m.poles());
            const auto v = verify_relation(rel.poly, m, z0, table, verify);
            if (v.status == RelationStatus::Refuted) {
                continue;
            }
            rel.status = v.status;
            rel.numeric_defect = v.numeric_defect;
        } else {
            rel.poly = lift(approx, m.poles());
            rel.numeric_defect = numeric_relation_defect(rel.poly, tables);
            rel.status = rel.numeric_defect <= verify.numeric_tolerance ? RelationStatus::NumericallySupported : RelationStatus::Inconclusive;
        }
        out.push_back(std::move(rel));
    }
    return out;
}

} // namespace hyperlog
