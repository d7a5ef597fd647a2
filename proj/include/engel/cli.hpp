#pragma once

// Surface files, run configuration and the command dispatcher behind the
// engel executable.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "engel/chart.hpp"
#include "engel/density.hpp"
#include "engel/measures.hpp"

namespace engel {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

struct SurfaceFile {
  std::string name;
  std::array<RationalPolynomial, 4> components;
  std::array<std::array<Rational, 2>, 2> domain;  // {{lo1, hi1}, {lo2, hi2}}
  StructureCoefficients<Rational> xi = StructureCoefficients<Rational>::standard();
  std::vector<Param> points;

  SurfaceChart chart() const;
};

// JSON object with "name", "components" (four expression strings),
// "domain" ([[lo1, hi1], [lo2, hi2]]), optional "xi" ([xi12, xi13, xi23])
// and optional "points". Scalars may be strings ("1/3", "0.25") or numbers.
SurfaceFile parse_surface(const std::string& json_text, const std::string& source = "<surface>");
SurfaceFile load_surface(const std::string& path);

struct RunConfig {
  QuasiNorm norm{};
  double zero_tolerance = kDefaultZeroTolerance;
  QuadratureSpec quadrature{32, 3};
  SearchSpec search{};
  std::uint64_t seed = 1;
  std::string output;

  void validate() const;
};

// Defaults, then the ENGEL_SEED environment variable, then the JSON file.
RunConfig load_config(const std::string& path);
RunConfig default_config();
void apply_config_json(RunConfig& config, const std::string& json_text);

// Module operation -> the command that exposes it.
const std::vector<std::pair<std::string, std::string>>& operation_table();
const std::vector<std::string>& command_names();

// Runs one command line (args excludes the program name). CSV goes to out
// unless --out is given; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace engel
