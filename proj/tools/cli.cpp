#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <hyperlog/cert.hpp>
#include <hyperlog/chen.hpp>
#include <hyperlog/errors.hpp>
#include <hyperlog/shuffle.hpp>

#include "config.hpp"

namespace hyperlog::cli
{

namespace
{

struct GlobalOptions {
    std::string config_path;
    std::string z;
    std::string z0;
    std::optional<std::size_t> truncation;
    std::optional<double> tol;
    std::optional<double> margin;
    std::optional<std::uint64_t> seed;
    std::string output;
};

ProblemConfig resolve_config(const GlobalOptions &g)
{
    if (g.config_path.empty()) {
        throw parse_error("this command needs --config PATH");
    }
    ProblemConfig cfg = load_config(g.config_path);
    if (!g.z0.empty()) {
        cfg.basepoint = parse_complex_pair(g.z0);
    }
    if (!g.z.empty()) {
        cfg.endpoint = parse_complex_pair(g.z);
    }
    if (g.truncation) {
        cfg.truncation = *g.truncation;
    }
    if (g.tol) {
        cfg.tol = *g.tol;
    }
    if (g.margin) {
        cfg.margin = *g.margin;
    }
    if (g.seed) {
        cfg.seed = *g.seed;
    }
    return cfg;
}

complex endpoint_of(const ProblemConfig &cfg)
{
    if (!cfg.endpoint) {
        throw parse_error("this command needs an endpoint (--z RE,IM or 'endpoint' in the config)");
    }
    return cfg.endpoint->to_complex();
}

Alphabet word_alphabet(const GlobalOptions &g, const std::vector<std::string> &words)
{
    if (!g.config_path.empty()) {
        return resolve_config(g).multiplier().alphabet();
    }
    return infer_indexed_alphabet(words);
}

std::string format_alpha(const std::vector<GaussianRational> &alpha)
{
    std::string s = "(";
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        s += (k ? "," : "") + format_gaussian(alpha[k]);
    }
    return s + ")";
}

std::string format_matrix(const ExactMatrix &m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            s += (j ? ", " : "") + format_gaussian(m[i][j]);
        }
        s += "]";
    }
    return s + "]";
}

std::string format_double(double x)
{
    std::ostringstream os;
    os << std::setprecision(15) << (x == 0.0 ? 0.0 : x);
    return os.str();
}

CoefficientTable evaluate_config(const ProblemConfig &cfg, const Multiplier &m)
{
    const complex z0 = cfg.basepoint.to_complex();
    const complex z = endpoint_of(cfg);
    const auto path = build_path(z0, z, m.poles()->numeric(), cfg.margin);
    EvalOptions opts;
    opts.truncation = cfg.truncation;
    opts.tol = cfg.tol;
    return eval_coeffs(m, path, opts);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Hyperlogarithm coefficients of Chen series: shuffle algebra, evaluation, independence certificates"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "Problem configuration (YAML)");
    app.add_option("--z", g.z, "Endpoint RE,IM");
    app.add_option("--z0", g.z0, "Basepoint RE,IM (exact decimal)");
    app.add_option("--N", g.truncation, "Truncation order");
    app.add_option("--tol", g.tol, "Absolute tolerance per coefficient");
    app.add_option("--margin", g.margin, "Minimum path distance to any pole");
    app.add_option("--seed", g.seed, "Sampling seed");
    app.add_option("--output", g.output, "Write results to PATH instead of stdout");

    std::vector<std::string> shuffle_words;
    auto *shuffle_cmd = app.add_subcommand("shuffle", "Shuffle product of two words");
    shuffle_cmd->add_option("words", shuffle_words, "Two words in dot syntax")->required()->expected(2);

    std::vector<std::string> order_words;
    auto *order_cmd = app.add_subcommand("order", "Graded lexicographic comparison of two words");
    order_cmd->add_option("words", order_words, "Two words in dot syntax")->required()->expected(2);

    auto *eval_cmd = app.add_subcommand("eval", "Coefficient table at the endpoint (TSV)");

    std::string corrupt;
    auto *grouplike_cmd = app.add_subcommand("grouplike", "Shuffle-identity defect of the evaluated table");
    grouplike_cmd->add_option("--corrupt", corrupt, "Debug: add 0.1 to the coefficient of WORD before checking");

    auto *certify_cmd = app.add_subcommand("certify", "Certify linear independence or produce a dependence witness");

    std::optional<std::size_t> samples;
    std::string check;
    auto *relations_cmd = app.add_subcommand("relations", "Search for and verify constant-coefficient relations");
    relations_cmd->add_option("--samples", samples, "Number of sample endpoints");
    relations_cmd->add_option("--check", check, "Verify the given polynomial instead of searching");

    for (auto *sub : {shuffle_cmd, order_cmd, eval_cmd, grouplike_cmd, certify_cmd, relations_cmd}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    }

    std::ofstream file;
    if (!g.output.empty()) {
        file.open(g.output);
        if (!file) {
            err << "error: cannot open output '" << g.output << "'\n";
            return failure;
        }
    }
    std::ostream &os = g.output.empty() ? out : file;

    try {
        if (*shuffle_cmd) {
            const auto alphabet = word_alphabet(g, shuffle_words);
            const auto p = shuffle(parse_word(shuffle_words[0], alphabet), parse_word(shuffle_words[1], alphabet));
            for (const auto &[w, c] : p.terms()) {
                os << c << " * " << format_word(w, alphabet) << '\n';
            }
            return ok;
        }
        if (*order_cmd) {
            const auto alphabet = word_alphabet(g, order_words);
            const auto c = graded_lex_compare(parse_word(order_words[0], alphabet), parse_word(order_words[1], alphabet), alphabet);
            os << (c < 0 ? "less" : c > 0 ? "greater" : "equal") << '\n';
            return ok;
        }

        const ProblemConfig cfg = resolve_config(g);
        const Multiplier m = cfg.multiplier();

        if (*eval_cmd) {
            write_table_tsv(os, evaluate_config(cfg, m), m.alphabet());
            return ok;
        }
        if (*grouplike_cmd) {
            auto table = evaluate_config(cfg, m);
            if (!corrupt.empty()) {
                auto w = parse_word(corrupt, m.alphabet());
                auto it = table.values.find(w);
                if (it == table.values.end()) {
                    throw parse_error("--corrupt names a word outside the table");
                }
                it->second += 0.1;
            }
            const auto report = grouplike_defect(table);
            os << "max_defect\t" << format_double(report.defect) << '\n';
            if (report.worst) {
                os << "worst_pair\t" << format_word(report.worst->first, m.alphabet()) << '\t' << format_word(report.worst->second, m.alphabet()) << '\n';
            } else {
                os << "worst_pair\tnone\n";
            }
            return report.defect < 10 * cfg.tol ? ok : grouplike_failure;
        }
        if (*certify_cmd) {
            const auto verdict = certify(m);
            if (const auto *ind = std::get_if<Independent>(&verdict)) {
                os << "INDEPENDENT\n";
                os << "residue_matrix: " << format_matrix(ind->residues) << '\n';
                os << "pivots: [";
                for (std::size_t k = 0; k < ind->pivots.size(); ++k) {
                    os << (k ? ", " : "") << m.alphabet().name(static_cast<letter_index>(ind->pivots[k]));
                }
                os << "]\n";
                return ok;
            }
            const auto &dep = std::get<Dependent>(verdict);
            os << "DEPENDENT alpha=" << format_alpha(dep.alpha) << " f=" << to_pretty(dep.f) << '\n';
            os << "f: " << to_text(dep.f) << '\n';
            const auto rel = witness_to_degree1_relation(dep, m, cfg.basepoint);
            os << "relation: " << format_polynomial(rel.poly, m.alphabet()) << '\t' << to_string(rel.status) << '\t' << format_double(rel.numeric_defect) << '\n';
            return dependent;
        }
        if (*relations_cmd) {
            VerifyOptions vopts;
            vopts.eval_tol = cfg.tol;
            vopts.sampling = {cfg.seed + 1, cfg.margin};
            if (!check.empty()) {
                const auto q = parse_polynomial(check, m.alphabet(), m.poles());
                const auto table = rational_coefficient_table(m, cfg.basepoint, q.degree() + 1);
                const auto v = verify_relation(q, m, cfg.basepoint, table, vopts);
                os << format_polynomial(q, m.alphabet()) << '\t' << to_string(v.status) << '\t' << format_double(v.numeric_defect) << '\n';
                return v.status == RelationStatus::ExactlyVerified || v.status == RelationStatus::NumericallySupported ? ok : failure;
            }
            DiscoveryOptions dopts;
            dopts.truncation = cfg.truncation;
            dopts.sample_count = samples.value_or(cfg.samples);
            dopts.eval_tol = cfg.tol;
            dopts.sampling = {cfg.seed, cfg.margin};
            const auto found = discover_relations(m, cfg.basepoint, dopts);
            if (found.empty()) {
                os << "no relations found\n";
            }
            for (const auto &r : found) {
                os << format_polynomial(r.poly, m.alphabet()) << '\t' << to_string(r.status) << '\t' << format_double(r.numeric_defect) << '\n';
            }
            return ok;
        }
    } catch (const parse_error &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const geometry_error &e) {
        err << "geometry error: " << e.what() << '\n';
        return geometry_failure;
    } catch (const step_size_underflow &e) {
        err << "geometry error: " << e.what() << '\n';
        return geometry_failure;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return parse_failure;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}

} // namespace hyperlog::cli
