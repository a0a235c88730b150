#ifndef HYPERLOG_TOOLS_CONFIG_HPP
#define HYPERLOG_TOOLS_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <hyperlog/gaussian.hpp>
#include <hyperlog/ncalg.hpp>

namespace hyperlog::cli
{

// One letter of the multiplier: either Fuchsian (pole + weight) or a full
// u_x in ratfun text, scaled by weight.
struct LetterSpec {
    std::string name;
    std::optional<GaussianRational> pole;
    std::optional<std::string> u;
    GaussianRational weight{1};
};

struct ProblemConfig {
    std::vector<LetterSpec> letters;
    std::vector<GaussianRational> poles;
    GaussianRational basepoint{-1};
    std::optional<GaussianRational> endpoint;
    std::size_t truncation = 2;
    double tol = 1e-12;
    double margin = 0.1;
    std::uint64_t seed = 0;
    std::size_t samples = 40;

    Multiplier multiplier() const;
};

// YAML document:
//
//   letters:
//     - {name: x0, pole: "0", weight: "1"}
//     - {name: x1, u: "poly: []; pp: {(1,2): 1}"}
//   poles: ["0", "1"]        # optional; letter poles are appended
//   basepoint: "-1"          # Gaussian rational or "RE,IM"
//   N: 2
//   tol: 1e-12
//   margin: 0.1
//   seed: 0
//   samples: 40
ProblemConfig parse_config(const std::string &yaml_text);
ProblemConfig load_config(const std::string &path);

} // namespace hyperlog::cli

#endif
