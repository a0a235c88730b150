#include "config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include <hyperlog/errors.hpp>

namespace hyperlog::cli
{

namespace
{

GaussianRational exact_value(const YAML::Node &node, const std::string &key)
{
    const auto text = node.as<std::string>();
    try {
        if (text.find(',') != std::string::npos) {
            return parse_complex_pair(text);
        }
        return parse_gaussian(text);
    } catch (const parse_error &e) {
        throw parse_error("config key '" + key + "': " + e.what());
    }
}

} // namespace

Multiplier ProblemConfig::multiplier() const
{
    if (letters.empty()) {
        throw parse_error("config has no letters");
    }
    std::vector<GaussianRational> all = poles;
    for (const auto &l : letters) {
        if (l.pole && std::none_of(all.begin(), all.end(), [&](const auto &p) { return p == *l.pole; })) {
            all.push_back(*l.pole);
        }
    }
    auto pole_set = make_pole_set(all);

    std::vector<std::string> names;
    for (const auto &l : letters) {
        names.push_back(l.name);
    }
    Alphabet alphabet(std::move(names));

    const bool fuchsian = std::all_of(letters.begin(), letters.end(), [](const auto &l) { return l.pole && !l.u; });
    if (fuchsian) {
        std::vector<FuchsianTerm> terms;
        for (const auto &l : letters) {
            terms.push_back({*pole_set->index_of(*l.pole), l.weight});
        }
        return Multiplier::fuchsian(std::move(alphabet), pole_set, terms);
    }
    std::vector<PoleRational> terms;
    for (const auto &l : letters) {
        if (l.u) {
            terms.push_back(scale(parse_pole_rational(*l.u, pole_set), l.weight));
        } else if (l.pole) {
            terms.push_back(PoleRational::pole_term(pole_set, *pole_set->index_of(*l.pole), 1, l.weight));
        } else {
            throw parse_error("letter '" + l.name + "' needs a pole or a u");
        }
    }
    return Multiplier(std::move(alphabet), pole_set, std::move(terms));
}

ProblemConfig parse_config(const std::string &yaml_text)
{
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception &e) {
        throw parse_error(std::string("config: ") + e.what());
    }
    ProblemConfig cfg;
    try {
        if (!root["letters"] || !root["letters"].IsSequence()) {
            throw parse_error("config needs a 'letters' list");
        }
        for (const auto &node : root["letters"]) {
            LetterSpec l;
            if (!node["name"]) {
                throw parse_error("every letter needs a name");
            }
            l.name = node["name"].as<std::string>();
            if (node["pole"]) {
                l.pole = exact_value(node["pole"], "pole");
            }
            if (node["u"]) {
                l.u = node["u"].as<std::string>();
            }
            if (node["weight"]) {
                l.weight = exact_value(node["weight"], "weight");
            }
            cfg.letters.push_back(std::move(l));
        }
        if (root["poles"]) {
            for (const auto &p : root["poles"]) {
                cfg.poles.push_back(exact_value(p, "poles"));
            }
        }
        if (root["basepoint"]) {
            cfg.basepoint = exact_value(root["basepoint"], "basepoint");
        }
        if (root["endpoint"]) {
            cfg.endpoint = exact_value(root["endpoint"], "endpoint");
        }
        if (root["N"]) {
            cfg.truncation = root["N"].as<std::size_t>();
        }
        if (root["tol"]) {
            cfg.tol = root["tol"].as<double>();
        }
        if (root["margin"]) {
            cfg.margin = root["margin"].as<double>();
        }
        if (root["seed"]) {
            cfg.seed = root["seed"].as<std::uint64_t>();
        }
        if (root["samples"]) {
            cfg.samples = root["samples"].as<std::size_t>();
        }
    } catch (const YAML::Exception &e) {
        throw parse_error(std::string("config: ") + e.what());
    }
    return cfg;
}

ProblemConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open config '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace hyperlog::cli
