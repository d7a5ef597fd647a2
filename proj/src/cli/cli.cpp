#include "engel/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "engel/errors.hpp"
#include "engel/expression.hpp"
#include "engel/surfaces.hpp"

namespace engel {

using json = nlohmann::json;

namespace {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational json_rational(const json& v, const std::string& what) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(what + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(mpz_class(std::to_string(v.get<long long>()), 10));
  if (v.is_number_float()) {
    // Shortest round-trip decimal, so 0.25 becomes exactly 1/4.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  throw ValidationError(what + ": expected a number or a rational string");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fmt(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string join(const std::vector<std::string>& xs, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    try {
      out.push_back(parse_rational(item).get_d());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(what + ": " + e.what());
    }
  }
  return out;
}

Param parse_param(const std::string& text, const std::string& what) {
  const auto v = parse_list(text, what);
  if (v.size() != 2) throw ValidationError(what + ": expected two comma-separated values");
  return {v[0], v[1]};
}

Plane parse_plane(const std::string& text) {
  const auto parts = split(text, ',');
  auto index = [&](const std::string& p) {
    if (p.size() != 2 || p[0] != 'e' || p[1] < '1' || p[1] > '4') {
      throw ValidationError("--plane: expected two of e1..e4, got '" + text + "'");
    }
    return p[1] - '0';
  };
  if (parts.size() != 2) throw ValidationError("--plane: expected two of e1..e4, got '" + text + "'");
  const int a = index(parts[0]);
  const int b = index(parts[1]);
  if (a >= b) throw ValidationError("--plane: directions must be distinct and increasing");
  return Plane::coordinate(a, b);
}

// CSV writer with a header row and trailing "# summary" lines.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw std::logic_error("csv row width mismatch");
    rows_.push_back(join(cells));
  }
  void summary(const std::string& key, const std::string& value) { summary_.emplace_back(key, value); }
  std::string str() const {
    std::string out = join(header_) + "\n";
    for (const auto& r : rows_) out += r + "\n";
    for (const auto& [k, v] : summary_) out += "# summary " + k + "=" + v + "\n";
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
  std::vector<std::pair<std::string, std::string>> summary_;
};

DegreePolicy policy_of(const RunConfig& c) { return DegreePolicy{c.zero_tolerance}; }

Param default_point(const SurfaceFile& f) {
  if (!f.points.empty()) return f.points.front();
  const Rational a = (f.domain[0][0] + f.domain[0][1]) / 2;
  const Rational b = (f.domain[1][0] + f.domain[1][1]) / 2;
  return {a.get_d(), b.get_d()};
}

std::string fmt_point(const Point& p) { return fmt(p[0]) + "," + fmt(p[1]) + "," + fmt(p[2]) + "," + fmt(p[3]); }

// Options shared by every command.
struct Common {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  double kappa3 = 0.0;
  double kappa4 = 0.0;
  double zero_tol = 0.0;
  int resolution = 0;
  int levels = 0;
  long mc_samples = -1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON run configuration");
  sub->add_option("--out", c.out, "write CSV here instead of stdout");
  sub->add_option("--seed", c.seed, "seed (default: config, then ENGEL_SEED, then 1)");
  sub->add_option("--kappa3", c.kappa3, "distance scale of the third coordinate");
  sub->add_option("--kappa4", c.kappa4, "distance scale of the fourth coordinate");
  sub->add_option("--zero-tol", c.zero_tol, "relative zero threshold for degree decisions");
  sub->add_option("--resolution", c.resolution, "quadrature cells per axis at the first level");
  sub->add_option("--levels", c.levels, "quadrature refinement levels");
  sub->add_option("--mc-samples", c.mc_samples, "Monte Carlo fallback samples (0 disables)");
}

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? default_config() : load_config(c.config_path);
  if (c.seed) cfg.seed = c.seed;
  if (c.kappa3 != 0.0) cfg.norm.kappa3 = c.kappa3;
  if (c.kappa4 != 0.0) cfg.norm.kappa4 = c.kappa4;
  if (c.zero_tol != 0.0) cfg.zero_tolerance = c.zero_tol;
  if (c.resolution) cfg.quadrature.resolution = c.resolution;
  if (c.levels) cfg.quadrature.levels = c.levels;
  if (c.mc_samples >= 0) cfg.quadrature.mc_samples = c.mc_samples;
  if (!c.out.empty()) cfg.output = c.out;
  cfg.quadrature.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

HomogeneousDistance distance_for(const RunConfig& cfg, const SurfaceChart* s) {
  return HomogeneousDistance(cfg.norm, s ? s->xi() : StructureCoefficients<double>::standard());
}

}  // namespace

SurfaceChart SurfaceFile::chart() const {
  const ParamBox box{{domain[0][0].get_d(), domain[1][0].get_d()}, {domain[0][1].get_d(), domain[1][1].get_d()}};
  return SurfaceChart::from_polynomials(components, box, xi, name);
}

SurfaceFile parse_surface(const std::string& json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(source + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError(source + ": expected a JSON object");
  SurfaceFile f;
  f.name = j.value("name", std::string("surface"));
  if (!j.contains("components") || !j["components"].is_array() || j["components"].size() != 4) {
    throw ValidationError(source + ": 'components' must be an array of four expressions");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& c = j["components"][k];
    try {
      f.components[k] = c.is_string() ? parse_expression(c.get<std::string>())
                                      : RationalPolynomial(json_rational(c, "component"));
    } catch (const ParseError& e) {
      throw ValidationError(source + ": component " + std::to_string(k + 1) + ": " + e.what());
    }
    const auto& terms = f.components[k].terms();
    for (const auto& [e, coeff] : terms) {
      if (e[2] != 0 || e[3] != 0) throw ValidationError(source + ": components may only use u1 and u2");
    }
  }
  if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].size() != 2) {
    throw ValidationError(source + ": 'domain' must be [[lo1, hi1], [lo2, hi2]]");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& d = j["domain"][i];
    if (!d.is_array() || d.size() != 2) throw ValidationError(source + ": 'domain' must be [[lo1, hi1], [lo2, hi2]]");
    f.domain[i] = {json_rational(d[0], source + ": domain"), json_rational(d[1], source + ": domain")};
    if (!(f.domain[i][0] < f.domain[i][1])) throw ValidationError(source + ": empty domain interval");
  }
  if (j.contains("xi")) {
    const auto& x = j["xi"];
    if (!x.is_array() || x.size() != 3) throw ValidationError(source + ": 'xi' must be [xi12, xi13, xi23]");
    f.xi = {json_rational(x[0], "xi"), json_rational(x[1], "xi"), json_rational(x[2], "xi")};
    try {
      f.xi.validate();
    } catch (const std::invalid_argument& e) {
      throw ValidationError(source + ": " + e.what());
    }
  }
  if (j.contains("points")) {
    for (const auto& p : j["points"]) {
      if (!p.is_array() || p.size() != 2) throw ValidationError(source + ": each point must be [u1, u2]");
      f.points.push_back({json_rational(p[0], "point").get_d(), json_rational(p[1], "point").get_d()});
    }
  }
  return f;
}

SurfaceFile load_surface(const std::string& path) { return parse_surface(read_file(path), path); }

void RunConfig::validate() const {
  try {
    norm.validate();
    quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (!(zero_tolerance > 0.0)) throw ValidationError("zero tolerance must be positive");
  if (search.grid < 2 || search.coarse_resolution < 1 || search.polish_resolution < 1 || search.starts < 1 ||
      search.max_evaluations < 1) {
    throw ValidationError("search settings must be positive (grid >= 2)");
  }
  if (seed == 0) throw ValidationError("seed must be positive");
}

RunConfig default_config() {
  RunConfig cfg;
  if (const char* env = std::getenv("ENGEL_SEED"); env && *env) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string("ENGEL_SEED is not an unsigned integer: ") + env);
    }
  }
  cfg.quadrature.seed = cfg.seed;
  return cfg;
}

void apply_config_json(RunConfig& cfg, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    if (!j.is_object()) throw ValidationError("config: expected a JSON object");
    if (j.contains("kappa3")) cfg.norm.kappa3 = j["kappa3"].get<double>();
    if (j.contains("kappa4")) cfg.norm.kappa4 = j["kappa4"].get<double>();
    if (j.contains("zero_tolerance")) cfg.zero_tolerance = j["zero_tolerance"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("quadrature")) {
      const auto& q = j["quadrature"];
      cfg.quadrature.resolution = q.value("resolution", cfg.quadrature.resolution);
      cfg.quadrature.levels = q.value("levels", cfg.quadrature.levels);
      cfg.quadrature.mc_samples = q.value("mc_samples", cfg.quadrature.mc_samples);
      cfg.quadrature.abs_tol = q.value("abs_tol", cfg.quadrature.abs_tol);
      cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
    }
    if (j.contains("search")) {
      const auto& s = j["search"];
      cfg.search.grid = s.value("grid", cfg.search.grid);
      cfg.search.coarse_resolution = s.value("coarse_resolution", cfg.search.coarse_resolution);
      cfg.search.polish_resolution = s.value("polish_resolution", cfg.search.polish_resolution);
      cfg.search.starts = s.value("starts", cfg.search.starts);
      cfg.search.max_evaluations = s.value("max_evaluations", cfg.search.max_evaluations);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  cfg.quadrature.seed = cfg.seed;
  cfg.validate();
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg = default_config();
  apply_config_json(cfg, read_file(path));
  return cfg;
}

const std::vector<std::pair<std::string, std::string>>& operation_table() {
  static const std::vector<std::pair<std::string, std::string>> table{
      {"surface_degree", "degree"},
      {"pointwise_degree", "degree"},
      {"chart_minors", "degree"},
      {"tangent_two_vector", "degree"},
      {"boundary_degree", "degree"},
      {"spherical_factor", "beta"},
      {"slice_area", "beta"},
      {"federer_density", "density"},
      {"intrinsic_measure", "density"},
      {"homogeneous_tangent_space", "density"},
      {"stokes_check", "stokes"},
      {"line_integral", "stokes"},
      {"surface_integral", "stokes"},
      {"gamma_expansion", "blowup"},
      {"adapted_frame", "blowup"},
      {"eta_map", "blowup"},
      {"divergence_probe", "diverge"},
      {"riemannian_area", "diverge"},
      {"degree_constraint_residuals", "residuals"},
      {"horizontality_residual", "residuals"},
      {"triangle_defect_sampler", "check-distance"},
      {"box_ball_lambda", "check-distance"},
      {"quasi_norm", "check-distance"},
  };
  return table;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"degree",  "beta",     "density",   "stokes",
                                              "blowup",  "diverge",  "residuals", "check-distance"};
  return names;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric measure theory on the Engel group"};
  app.require_subcommand(1);
  app.footer(
      "Output is CSV with one header row followed by '# summary key=value' lines.\n"
      "Columns:\n"
      "  degree          u1,u2,degree[,tau12,tau13,tau14,tau23,tau24,tau34]\n"
      "  beta            plane,beta,c1,c2,c3,c4,refinement_delta,converged\n"
      "  density         radius,maximized,centered,error,c1,c2,c3,c4\n"
      "  stokes          radius,line,surface,defect,error,normalized_ratio,pointwise_limit,predicted_limit\n"
      "  blowup          component,required_degree,graph,exact_zero,slope,residual,graph_deviation\n"
      "  diverge         radius,area,error\n"
      "  residuals       quantity,value\n"
      "  check-distance  quantity,value\n"
      "Exit codes: 0 success, 2 invalid input, 3 nonconvergence.\n"
      "ENGEL_SEED overrides the default seed.");

  Common common;
  std::string surface_path;
  auto add_surface = [&](CLI::App* sub) { sub->add_option("--surface", surface_path, "surface JSON file")->required(); };

  auto* degree = app.add_subcommand("degree", "pointwise and surface degree on a grid");
  int grid = 65;
  bool vectors = false;
  double boundary_radius = 0.0;
  std::string boundary_center;
  int boundary_samples = 256;
  add_surface(degree);
  degree->add_option("--grid", grid, "grid points per axis")->check(CLI::Range(1, 4097));
  degree->add_flag("--vectors", vectors, "append the tangent 2-vector coefficients");
  degree->add_option("--boundary-radius", boundary_radius, "also report the degree of a boundary circle");
  degree->add_option("--boundary-center", boundary_center, "circle centre u1,u2 (default: first marked point)");
  degree->add_option("--boundary-samples", boundary_samples)->check(CLI::Range(8, 1 << 20));
  add_common(degree, common);

  auto* beta = app.add_subcommand("beta", "spherical factor of a homogeneous plane");
  std::string plane_text = "e2,e3";
  int refine = 0;
  beta->add_option("--plane", plane_text, "two graded directions, e.g. e2,e3");
  beta->add_option("--refine", refine, "refinement levels (alias of --levels)");
  add_common(beta, common);

  auto* density = app.add_subcommand("density", "Federer density at a surface point");
  std::string point_text;
  int degree_n = 0;
  std::string radii_text = "1/4,1/8,1/16";
  add_surface(density);
  density->add_option("--point", point_text, "parameter point u1,u2 (default: first marked point)");
  density->add_option("--degree", degree_n, "degree N (default: pointwise degree)");
  density->add_option("--radii", radii_text, "comma-separated radius schedule");
  add_common(density, common);

  auto* stokes = app.add_subcommand("stokes", "line integral of theta_4 against the surface integral of its differential");
  double radius = 0.25;
  int halvings = 1;
  add_surface(stokes);
  stokes->add_option("--center", point_text, "disk centre u1,u2 (default: first marked point)");
  stokes->add_option("--radius", radius, "disk radius");
  stokes->add_option("--halvings", halvings, "number of radii r, r/2, ...")->check(CLI::Range(1, 30));
  add_common(stokes, common);

  auto* blowup = app.add_subcommand("blowup", "adapted frame and blow-up exponents at a surface point");
  GammaSpec gamma;
  add_surface(blowup);
  blowup->add_option("--point", point_text, "parameter point u1,u2 (default: first marked point)");
  blowup->add_option("--directions", gamma.directions)->check(CLI::Range(1, 1024));
  blowup->add_option("--lambdas", gamma.lambdas)->check(CLI::Range(6, 60));
  add_common(blowup, common);

  auto* diverge = app.add_subcommand("diverge", "area growth of small balls at a surface point");
  double beta_exponent = 5.0;
  int first = 3;
  int last = 9;
  add_surface(diverge);
  diverge->add_option("--point", point_text, "parameter point u1,u2 (default: first marked point)");
  diverge->add_option("--beta", beta_exponent, "comparison exponent");
  diverge->add_option("--first", first, "largest radius 2^-first");
  diverge->add_option("--last", last, "smallest radius 2^-last");
  add_common(diverge, common);

  auto* residuals = app.add_subcommand("residuals", "degree-constraint and horizontality residuals");
  int res_grid = 33;
  add_surface(residuals);
  residuals->add_option("--grid", res_grid)->check(CLI::Range(1, 4097));
  add_common(residuals, common);

  auto* check = app.add_subcommand("check-distance", "triangle inequality and Box/ball comparison of the distance");
  long samples = 1000000;
  long ball_samples = 100000;
  check->add_option("--samples", samples, "triangle-inequality sample pairs")->check(CLI::Range(1L, 100000000L));
  check->add_option("--ball-samples", ball_samples, "Box/ball comparison samples")->check(CLI::Range(1L, 100000000L));
  add_common(check, common);

  std::vector<std::string> argv_store{"engel"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (beta->parsed() && refine) common.levels = refine;
    const RunConfig cfg = resolve(common);
    std::unique_ptr<SurfaceFile> file;
    std::unique_ptr<SurfaceChart> chart;
    if (!surface_path.empty()) {
      file = std::make_unique<SurfaceFile>(load_surface(surface_path));
      chart = std::make_unique<SurfaceChart>(file->chart());
    }
    auto point = [&]() { return point_text.empty() ? default_point(*file) : parse_param(point_text, "--point"); };

    std::string csv;
    std::string unconverged;  // names the first estimate that missed its tolerance
    auto note = [&](bool ok, const std::string& what) {
      if (!ok && unconverged.empty()) unconverged = what;
    };
    if (degree->parsed()) {
      const auto report = surface_degree(*chart, grid, policy_of(cfg));
      std::vector<std::string> header{"u1", "u2", "degree"};
      if (vectors) {
        for (std::size_t k = 0; k < kPairs.size(); ++k) {
          header.push_back("tau" + std::to_string(kPairs[k][0]) + std::to_string(kPairs[k][1]));
        }
      }
      Csv t(header);
      for (const auto& s : report.samples) {
        std::vector<std::string> cells{fmt(s.u[0]), fmt(s.u[1]), std::to_string(s.degree)};
        if (vectors) {
          const auto v = tangent_two_vector(*chart, s.u);
          for (double c : v.c) cells.push_back(fmt(c));
        }
        t.row(cells);
      }
      t.summary("degree", std::to_string(report.degree));
      t.summary("singular", std::to_string(report.singular.size()));
      if (boundary_radius > 0.0) {
        const Param c = boundary_center.empty() ? default_point(*file) : parse_param(boundary_center, "--boundary-center");
        t.summary("boundary_degree",
                  std::to_string(boundary_degree(*chart, c, boundary_radius, boundary_samples, policy_of(cfg))));
      }
      csv = t.str();
    } else if (beta->parsed()) {
      const Plane v = parse_plane(plane_text);
      const auto d = distance_for(cfg, nullptr);
      const auto sf = spherical_factor(d, v, cfg.quadrature, cfg.search);
      Csv t({"plane", "beta", "c1", "c2", "c3", "c4", "refinement_delta", "converged"});
      t.row({"\"" + plane_text + "\"", fmt(sf.value.value), fmt(sf.center[0]), fmt(sf.center[1]), fmt(sf.center[2]),
             fmt(sf.center[3]), fmt(sf.value.error), sf.value.converged ? "1" : "0"});
      t.summary("slice_at_origin", fmt(slice_area(d, v, Point{}, 1.0, cfg.quadrature.resolution_at(cfg.quadrature.levels - 1))));
      t.summary("homogeneous_dimension", std::to_string(v.homogeneous_dimension()));
      csv = t.str();
      note(sf.value.converged, "spherical factor");
    } else if (density->parsed()) {
      const Param u0 = point();
      const int n = degree_n ? degree_n : pointwise_degree(*chart, u0, policy_of(cfg));
      if (n < 2 || n > 5) throw ValidationError("--degree must be in 2..5");
      const auto d = distance_for(cfg, chart.get());
      const auto de = federer_density(*chart, d, u0, n, parse_list(radii_text, "--radii"), cfg.quadrature, cfg.search);
      const auto ts = homogeneous_tangent_space(*chart, u0, policy_of(cfg));
      Csv t({"radius", "maximized", "centered", "error", "c1", "c2", "c3", "c4"});
      for (std::size_t i = 0; i < de.radii.size(); ++i) {
        t.row({fmt(de.radii[i]), fmt(de.maximized[i]), fmt(de.centered[i]), fmt(de.errors[i]), fmt(de.centers[i][0]),
               fmt(de.centers[i][1]), fmt(de.centers[i][2]), fmt(de.centers[i][3])});
      }
      t.summary("degree", std::to_string(n));
      t.summary("tangent_space", "\"e" + std::to_string(ts.coordinate_indices[0]) + ",e" +
                                     std::to_string(ts.coordinate_indices[1]) + "\"");
      t.summary("limit", fmt(de.limit));
      t.summary("error", fmt(de.error));
      t.summary("extrapolation", de.extrapolation);
      csv = t.str();
      note(de.converged, "intrinsic measure");
    } else if (stokes->parsed()) {
      const Param c = point();
      Csv t({"radius", "line", "surface", "defect", "error", "normalized_ratio", "pointwise_limit", "predicted_limit"});
      double r = radius;
      for (int k = 0; k < halvings; ++k, r *= 0.5) {
        const auto s = stokes_check(*chart, c, r, cfg.quadrature);
        note(s.line.converged, "line integral at radius " + fmt(r));
        note(s.surface.converged, "surface integral at radius " + fmt(r));
        t.row({fmt(s.radius), fmt(s.line.value), fmt(s.surface.value), fmt(s.defect), fmt(s.error),
               fmt(s.normalized_ratio), fmt(s.pointwise_limit), fmt(s.predicted_limit)});
      }
      csv = t.str();
    } else if (blowup->parsed()) {
      const Param u0 = point();
      AdaptedFrameOptions opt;
      opt.zero_tolerance = cfg.zero_tolerance;
      const auto fit = gamma_expansion(*chart, u0, gamma, opt);
      const auto& f = fit.frame;
      Csv t({"component", "required_degree", "graph", "exact_zero", "slope", "residual", "graph_deviation"});
      for (const auto& c : fit.components) {
        t.row({std::to_string(c.component), std::to_string(c.required_degree), c.graph ? "1" : "0",
               c.exact_zero ? "1" : "0", c.graph || c.exact_zero ? "" : fmt(c.slope), fmt(c.residual),
               fmt(c.graph_deviation)});
      }
      t.summary("degree", std::to_string(f.degree));
      t.summary("strata_ranks", "\"" + std::to_string(f.strata_ranks[0]) + "," + std::to_string(f.strata_ranks[1]) +
                                    "," + std::to_string(f.strata_ranks[2]) + "\"");
      t.summary("graph_indices",
                "\"" + std::to_string(f.graph_indices[0]) + "," + std::to_string(f.graph_indices[1]) + "\"");
      t.summary("induced_degrees",
                "\"" + std::to_string(f.induced_degrees[0]) + "," + std::to_string(f.induced_degrees[1]) + "\"");
      t.summary("angle", fmt(f.angle));
      t.summary("xi12", fmt(f.xi.xi12));
      t.summary("xi13", fmt(f.xi.xi13));
      t.summary("xi23", fmt(f.xi.xi23));
      t.summary("base_point", "\"" + fmt_point(f.base_point) + "\"");
      t.summary("block_form_defect", fmt(block_form_defect(f)));
      t.summary("half_width", fmt(f.half_width));
      csv = t.str();
    } else if (diverge->parsed()) {
      const Param u0 = point();
      if (first > last || first < 0) throw ValidationError("--first must not exceed --last");
      const auto pr = divergence_probe(*chart, distance_for(cfg, chart.get()), u0, beta_exponent,
                                       dyadic_radii(first, last), cfg.quadrature);
      Csv t({"radius", "area", "error"});
      for (std::size_t i = 0; i < pr.radii.size(); ++i) t.row({fmt(pr.radii[i]), fmt(pr.areas[i]), fmt(pr.errors[i])});
      t.summary("beta", fmt(pr.beta));
      t.summary("area_slope", fmt(pr.area_slope));
      t.summary("ratio_slope", fmt(pr.ratio_slope));
      csv = t.str();
      note(pr.converged, "ball area");
    } else if (residuals->parsed()) {
      const auto cr = degree_constraint_residuals(*chart, chart->domain(), res_grid);
      Csv t({"quantity", "value"});
      t.row({"y14", fmt(cr.y14)});
      t.row({"y24", fmt(cr.y24)});
      t.row({"y34", fmt(cr.y34)});
      t.row({"y13", fmt(cr.y13)});
      t.row({"y23", fmt(cr.y23)});
      t.row({"horizontality", fmt(horizontality_residual(*chart, chart->domain(), res_grid))});
      t.summary("degree_at_most_3", cr.degree_at_most_3(cfg.zero_tolerance) ? "1" : "0");
      csv = t.str();
    } else if (check->parsed()) {
      const HomogeneousDistance d = distance_for(cfg, nullptr);
      const auto tri = triangle_defect_sampler(d, samples, cfg.seed);
      const auto bb = box_ball_lambda(cfg.norm, ball_samples, cfg.seed);
      Csv t({"quantity", "value"});
      t.row({"triangle_defect", fmt(tri.max_defect)});
      t.row({"triangle_samples", std::to_string(tri.samples)});
      t.row({"box_ball_lambda", fmt(bb.lambda)});
      t.row({"inner_violations", std::to_string(bb.inner_violations)});
      t.row({"outer_violations", std::to_string(bb.outer_violations)});
      t.row({"sampled_diameter", fmt(sampled_ball_diameter(d, 1.0, ball_samples, cfg.seed))});
      t.row({"norm_of_kappa3_e3", fmt(cfg.norm(Point(0.0, 0.0, cfg.norm.kappa3, 0.0)))});
      t.summary("kappa3", fmt(cfg.norm.kappa3));
      t.summary("kappa4", fmt(cfg.norm.kappa4));
      t.summary("distance", tri.max_defect <= 0.0 ? "certified" : "violated");
      csv = t.str();
    }

    if (cfg.output.empty()) {
      out << csv;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw ValidationError("cannot write '" + cfg.output + "'");
      f << csv;
    }
    if (!unconverged.empty()) {
      err << "error: refinement did not converge (" << unconverged
          << "); raise --resolution or --levels, or loosen the tolerances in --config\n";
      return kExitNonConvergence;
    }
    return kExitOk;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace engel
