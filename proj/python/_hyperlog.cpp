#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <hyperlog/cert.hpp>
#include <hyperlog/chen.hpp>
#include <hyperlog/errors.hpp>
#include <hyperlog/ncalg.hpp>
#include <hyperlog/shuffle.hpp>

namespace py = pybind11;
using namespace hyperlog;

namespace
{

Alphabet alphabet_for(const std::optional<std::vector<std::string>> &letters, const std::vector<std::string> &words)
{
    return letters ? Alphabet(*letters) : infer_indexed_alphabet(words);
}

pole_set_ptr pole_set(const std::vector<std::string> &poles)
{
    std::vector<GaussianRational> points;
    for (const auto &p : poles) {
        points.push_back(parse_gaussian(p));
    }
    return make_pole_set(std::move(points));
}

std::vector<std::string> default_names(std::size_t n, const std::optional<std::vector<std::string>> &names)
{
    if (names) {
        return *names;
    }
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back("x" + std::to_string(k));
    }
    return out;
}

CoefficientTable evaluate_table(const Multiplier &m, complex z0, complex z, std::size_t n, double tol, double margin)
{
    EvalOptions opts;
    opts.truncation = n;
    opts.tol = tol;
    return eval_coeffs(m, build_path(z0, z, m.poles()->numeric(), margin), opts);
}

} // namespace

PYBIND11_MODULE(_hyperlog, mod)
{
    mod.doc() = "Hyperlogarithms as coefficients of noncommutative Chen series";

    py::register_exception<parse_error>(mod, "ParseError", PyExc_ValueError);
    py::register_exception<geometry_error>(mod, "GeometryError", PyExc_ValueError);
    py::register_exception<pole_set_mismatch>(mod, "PoleSetMismatch", PyExc_ValueError);
    py::register_exception<step_size_underflow>(mod, "StepSizeUnderflow", PyExc_ArithmeticError);

    mod.def(
        "shuffle",
        [](const std::string &u, const std::string &v, std::optional<std::vector<std::string>> letters) {
            const auto a = alphabet_for(letters, {u, v});
            std::map<std::string, std::int64_t> out;
            const auto p = shuffle(parse_word(u, a), parse_word(v, a));
            for (const auto &[w, c] : p.terms()) {
                out[format_word(w, a)] = c;
            }
            return out;
        },
        py::arg("u"), py::arg("v"), py::arg("letters") = py::none(),
        "Shuffle product of two words in dot syntax, as {word: multiplicity}.");

    mod.def(
        "coshuffle",
        [](const std::string &w, std::optional<std::vector<std::string>> letters) {
            const auto a = alphabet_for(letters, {w});
            std::map<std::pair<std::string, std::string>, std::int64_t> out;
            for (const auto &[uv, c] : coshuffle(parse_word(w, a))) {
                out[{format_word(uv.first, a), format_word(uv.second, a)}] = c;
            }
            return out;
        },
        py::arg("w"), py::arg("letters") = py::none());

    mod.def(
        "graded_lex_compare",
        [](const std::string &u, const std::string &v, std::optional<std::vector<std::string>> letters) {
            const auto a = alphabet_for(letters, {u, v});
            const auto c = graded_lex_compare(parse_word(u, a), parse_word(v, a), a);
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        },
        py::arg("u"), py::arg("v"), py::arg("letters") = py::none(), "-1, 0 or 1.");

    mod.def(
        "words_up_to",
        [](std::size_t n, std::size_t letters) {
            const auto a = Alphabet::indexed(letters);
            std::vector<std::string> out;
            for (const auto &w : a.words_up_to(n)) {
                out.push_back(format_word(w, a));
            }
            return out;
        },
        py::arg("n"), py::arg("letters"));

    py::class_<Multiplier>(mod, "Multiplier")
        .def(py::init([](const std::vector<std::string> &poles, const std::vector<std::string> &u, std::optional<std::vector<std::string>> names) {
                 const auto ps = pole_set(poles);
                 std::vector<PoleRational> terms;
                 for (const auto &t : u) {
                     terms.push_back(parse_pole_rational(t, ps));
                 }
                 return Multiplier(Alphabet(default_names(u.size(), names)), ps, std::move(terms));
             }),
             py::arg("poles"), py::arg("u"), py::arg("names") = py::none(),
             "u[k] in canonical text, e.g. \"pp: {(0,2): 1}\".")
        .def_static(
            "fuchsian",
            [](const std::vector<std::string> &poles, const std::vector<std::string> &weights, std::optional<std::vector<std::string>> names) {
                std::vector<FuchsianTerm> terms;
                for (std::size_t k = 0; k < weights.size(); ++k) {
                    terms.push_back({k, parse_gaussian(weights[k])});
                }
                return Multiplier::fuchsian(Alphabet(default_names(weights.size(), names)), pole_set(poles), terms);
            },
            py::arg("poles"), py::arg("weights"), py::arg("names") = py::none(),
            "u_k = weights[k] / (z - poles[k]).")
        .def_property_readonly("letters", [](const Multiplier &m) { return m.alphabet().names(); })
        .def_property_readonly("poles", [](const Multiplier &m) { return m.poles()->numeric(); })
        .def_property_readonly("u", [](const Multiplier &m) {
            std::vector<std::string> out;
            for (const auto &t : m.terms()) {
                out.push_back(to_pretty(t));
            }
            return out;
        })
        .def_property_readonly("is_fuchsian", [](const Multiplier &m) { return m.fuchsian_form().has_value(); })
        .def("__len__", &Multiplier::size);

    mod.def(
        "eval_coeffs",
        [](const Multiplier &m, complex z0, complex z, std::size_t n, double tol, double margin) {
            const auto t = evaluate_table(m, z0, z, n, tol, margin);
            std::map<std::string, complex> out;
            for (const auto &[w, v] : t.values) {
                out[format_word(w, m.alphabet())] = v;
            }
            return out;
        },
        py::arg("m"), py::arg("z0"), py::arg("z"), py::arg("N") = 4, py::arg("tol") = 1e-12, py::arg("margin") = 0.1,
        "Values <S|w> at z for |w| <= N, regular at z0.");

    mod.def(
        "eval_tsv",
        [](const Multiplier &m, complex z0, complex z, std::size_t n, double tol, double margin) {
            std::ostringstream os;
            write_table_tsv(os, evaluate_table(m, z0, z, n, tol, margin), m.alphabet());
            return os.str();
        },
        py::arg("m"), py::arg("z0"), py::arg("z"), py::arg("N") = 4, py::arg("tol") = 1e-12, py::arg("margin") = 0.1);

    mod.def(
        "grouplike_defect",
        [](const Multiplier &m, complex z0, complex z, std::size_t n, double tol, double margin) {
            const auto r = grouplike_defect(evaluate_table(m, z0, z, n, tol, margin));
            std::optional<std::pair<std::string, std::string>> worst;
            if (r.worst) {
                worst = std::make_pair(format_word(r.worst->first, m.alphabet()), format_word(r.worst->second, m.alphabet()));
            }
            return std::make_pair(r.defect, worst);
        },
        py::arg("m"), py::arg("z0"), py::arg("z"), py::arg("N") = 4, py::arg("tol") = 1e-12, py::arg("margin") = 0.1,
        "(max defect, worst pair or None).");

    mod.def(
        "certify",
        [](const Multiplier &m) {
            py::dict out;
            const auto verdict = certify(m);
            if (const auto *dep = std::get_if<Dependent>(&verdict)) {
                std::vector<std::string> alpha;
                for (const auto &a : dep->alpha) {
                    alpha.push_back(format_gaussian(a));
                }
                out["independent"] = false;
                out["alpha"] = alpha;
                out["f"] = to_pretty(dep->f);
            } else {
                out["independent"] = true;
                out["pivots"] = std::get<Independent>(verdict).pivots;
            }
            return out;
        },
        py::arg("m"));

    mod.def(
        "verify_relation",
        [](const Multiplier &m, const std::string &relation, const std::string &z0, std::size_t max_length) {
            const auto base = parse_gaussian(z0);
            const auto q = parse_polynomial(relation, m.alphabet(), m.poles());
            const auto table = rational_coefficient_table(m, base, std::max(max_length, q.degree()));
            const auto v = verify_relation(q, m, base, table);
            return std::make_pair(to_string(v.status), v.numeric_defect);
        },
        py::arg("m"), py::arg("relation"), py::arg("z0"), py::arg("max_length") = 0,
        "(status, numeric defect) for a relation in the CLI text syntax.");

    mod.def(
        "discover_relations",
        [](const Multiplier &m, const std::string &z0, std::size_t n, std::size_t samples, double tol, std::uint64_t seed) {
            DiscoveryOptions opts;
            opts.truncation = n;
            opts.sample_count = samples;
            opts.tol = tol;
            opts.sampling.seed = seed;
            std::vector<std::tuple<std::string, std::string, double>> out;
            for (const auto &r : discover_relations(m, parse_gaussian(z0), opts)) {
                out.emplace_back(format_polynomial(r.poly, m.alphabet()), to_string(r.status), r.numeric_defect);
            }
            return out;
        },
        py::arg("m"), py::arg("z0"), py::arg("N") = 2, py::arg("samples") = 40, py::arg("tol") = 1e-8, py::arg("seed") = 0,
        "[(relation, status, numeric defect)].");
}
