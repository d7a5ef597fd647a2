#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <sstream>

#include "engel/adapted.hpp"
#include "engel/cli.hpp"
#include "engel/density.hpp"
#include "engel/errors.hpp"
#include "engel/measures.hpp"
#include "engel/surfaces.hpp"

namespace py = pybind11;
using namespace engel;

namespace {

// Fractions, ints, decimal strings and floats all go through their string
// form so "0.1" stays 1/10.
Rational to_rational(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

py::object to_fraction(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(to_string(q)); }

AlgebraElement<Rational> to_element(const py::sequence& s) {
  if (py::len(s) != 4) throw std::invalid_argument("group elements have four coordinates");
  AlgebraElement<Rational> e;
  for (std::size_t i = 0; i < 4; ++i) e[i] = to_rational(s[i]);
  return e;
}

StructureCoefficients<Rational> to_xi(const py::object& o) {
  if (o.is_none()) return StructureCoefficients<Rational>::standard();
  const auto s = o.cast<py::sequence>();
  if (py::len(s) != 3) throw std::invalid_argument("xi has three entries (xi12, xi13, xi23)");
  StructureCoefficients<Rational> xi{to_rational(s[0]), to_rational(s[1]), to_rational(s[2])};
  xi.validate();
  return xi;
}

py::list to_list(const AlgebraElement<Rational>& e) {
  py::list out;
  for (std::size_t i = 0; i < 4; ++i) out.append(to_fraction(e[i]));
  return out;
}

template <class T>
py::dict two_vector_dict(const TwoVector<T>& v) {
  py::dict out;
  for (const auto& [i, j] : kPairs) {
    const std::string key = std::to_string(i) + std::to_string(j);
    if constexpr (std::is_same_v<T, Rational>) {
      out[key.c_str()] = to_fraction(v.at(i, j));
    } else {
      out[key.c_str()] = v.at(i, j);
    }
  }
  return out;
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["error"] = e.error;
  d["converged"] = e.converged;
  d["levels"] = e.levels;
  return d;
}

QuadratureSpec quadrature(int resolution, int levels) {
  QuadratureSpec q;
  q.resolution = resolution;
  q.levels = levels;
  q.validate();
  return q;
}

HomogeneousDistance distance(double kappa3, double kappa4) {
  const QuasiNorm n{kappa3, kappa4};
  n.validate();
  return HomogeneousDistance(n, StructureCoefficients<double>::standard());
}

struct Surface {
  SurfaceChart chart;
};

Surface surface_from_parts(const std::vector<std::string>& components, const py::sequence& domain,
                           const py::object& xi, const std::string& name) {
  nlohmann::json j;
  j["name"] = name;
  j["components"] = components;
  j["domain"] = nlohmann::json::array();
  for (const auto& side : domain) {
    const auto s = side.cast<py::sequence>();
    if (py::len(s) != 2) throw std::invalid_argument("domain sides are [lo, hi] pairs");
    j["domain"].push_back({to_string(to_rational(s[0])), to_string(to_rational(s[1]))});
  }
  if (!xi.is_none()) {
    const auto x = to_xi(xi);
    j["xi"] = {to_string(x.xi12), to_string(x.xi13), to_string(x.xi23)};
  }
  return {parse_surface(j.dump(), name).chart()};
}

}  // namespace

PYBIND11_MODULE(_engel, m) {
  m.doc() = "Geometric measure theory on the Engel group";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RankDeficientError>(m, "RankDeficientError", PyExc_ArithmeticError);
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);

  m.def(
      "bch_product",
      [](const py::sequence& x, const py::sequence& y, const py::object& xi) {
        return to_list(bch_product(to_element(x), to_element(y), to_xi(xi)));
      },
      py::arg("x"), py::arg("y"), py::arg("xi") = py::none(), "Exact group product in exponential coordinates.");
  m.def(
      "group_inverse", [](const py::sequence& x) { return to_list(group_inverse(to_element(x))); }, py::arg("x"));
  m.def(
      "dilate", [](const py::object& r, const py::sequence& x) { return to_list(dilate(to_rational(r), to_element(x))); },
      py::arg("r"), py::arg("x"));

  py::class_<Surface>(m, "Surface")
      .def(py::init(&surface_from_parts), py::arg("components"), py::arg("domain"), py::arg("xi") = py::none(),
           py::arg("name") = "surface")
      .def_static("from_json", [](const std::string& text) { return Surface{parse_surface(text).chart()}; })
      .def_static("from_file", [](const std::string& path) { return Surface{load_surface(path).chart()}; })
      .def_property_readonly("name", [](const Surface& s) { return s.chart.name(); })
      .def("point",
           [](const Surface& s, double u1, double u2) {
             const auto p = s.chart.point({u1, u2});
             return std::array<double, 4>{p[0], p[1], p[2], p[3]};
           })
      .def("translated", [](const Surface& s, const py::sequence& q) {
        return Surface{s.chart.left_translated(to_element(q))};
      });

  m.def(
      "pointwise_degree",
      [](const Surface& s, const py::object& u1, const py::object& u2) {
        return pointwise_degree(s.chart, ExactParam{to_rational(u1), to_rational(u2)});
      },
      py::arg("surface"), py::arg("u1"), py::arg("u2"), "Exact degree at a rational parameter.");
  m.def(
      "surface_degree",
      [](const Surface& s, int grid) {
        const auto r = surface_degree(s.chart, grid);
        py::dict d;
        d["degree"] = r.degree;
        py::list singular;
        for (const auto& u : r.singular) singular.append(py::make_tuple(u[0], u[1]));
        d["singular"] = singular;
        return d;
      },
      py::arg("surface"), py::arg("grid") = 9);
  m.def(
      "tangent_two_vector",
      [](const Surface& s, const py::object& u1, const py::object& u2) {
        return two_vector_dict(tangent_two_vector(s.chart, ExactParam{to_rational(u1), to_rational(u2)}));
      },
      py::arg("surface"), py::arg("u1"), py::arg("u2"));
  m.def(
      "horizontality_residual",
      [](const Surface& s, int resolution) { return horizontality_residual(s.chart, s.chart.domain(), resolution); },
      py::arg("surface"), py::arg("resolution") = 9);
  m.def(
      "adapted_frame",
      [](const Surface& s, double u1, double u2) {
        const auto r = adapted_frame(s.chart, {u1, u2});
        py::dict d;
        d["degree"] = r.degree;
        d["angle"] = r.angle;
        d["xi"] = py::make_tuple(r.xi.xi12, r.xi.xi13, r.xi.xi23);
        d["graph_indices"] = r.graph_indices;
        d["block_defect"] = block_form_defect(r);
        return d;
      },
      py::arg("surface"), py::arg("u1"), py::arg("u2"));

  m.def(
      "stokes_check",
      [](const Surface& s, std::array<double, 2> center, double radius, int resolution, int levels) {
        const auto r = stokes_check(s.chart, center, radius, quadrature(resolution, levels));
        py::dict d;
        d["line"] = estimate_dict(r.line);
        d["surface"] = estimate_dict(r.surface);
        d["defect"] = r.defect;
        d["error"] = r.error;
        d["normalized_ratio"] = r.normalized_ratio;
        d["pointwise_limit"] = r.pointwise_limit;
        d["predicted_limit"] = r.predicted_limit;
        return d;
      },
      py::arg("surface"), py::arg("center"), py::arg("radius"), py::arg("resolution") = 32, py::arg("levels") = 3);

  m.def(
      "spherical_factor",
      [](int a, int b, int resolution, int levels, double kappa3, double kappa4) {
        const auto r = spherical_factor(distance(kappa3, kappa4), Plane::coordinate(a, b), quadrature(resolution, levels));
        py::dict d;
        d["beta"] = estimate_dict(r.value);
        d["center"] = std::array<double, 4>{r.center[0], r.center[1], r.center[2], r.center[3]};
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("resolution") = 32, py::arg("levels") = 3, py::arg("kappa3") = 0.5,
      py::arg("kappa4") = 1.0 / 6.0, "Spherical factor of span{e_a, e_b}.");
  m.def(
      "federer_density",
      [](const Surface& s, std::array<double, 2> u0, std::vector<double> radii, int resolution, int levels) {
        const int n = homogeneous_tangent_space(s.chart, u0).degree;
        const auto r = federer_density(s.chart, HomogeneousDistance{}, u0, n, radii, quadrature(resolution, levels));
        py::dict d;
        d["degree"] = n;
        d["radii"] = r.radii;
        d["maximized"] = r.maximized;
        d["centered"] = r.centered;
        d["limit"] = r.limit;
        d["error"] = r.error;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("surface"), py::arg("u0"), py::arg("radii") = std::vector<double>{0.25, 0.125, 0.0625},
      py::arg("resolution") = 32, py::arg("levels") = 3);
  m.def(
      "gamma_expansion",
      [](const Surface& s, std::array<double, 2> u0) {
        const auto f = gamma_expansion(s.chart, u0);
        py::list comps;
        for (const auto& c : f.components) {
          py::dict d;
          d["component"] = c.component;
          d["required_degree"] = c.required_degree;
          d["graph"] = c.graph;
          d["exact_zero"] = c.exact_zero;
          d["slope"] = c.slope;
          d["graph_deviation"] = c.graph_deviation;
          comps.append(d);
        }
        py::dict out;
        out["degree"] = f.frame.degree;
        out["graph_indices"] = f.frame.graph_indices;
        out["components"] = comps;
        return out;
      },
      py::arg("surface"), py::arg("u0"));
  m.def(
      "divergence_probe",
      [](const Surface& s, std::array<double, 2> u0, double beta, int first, int last, int resolution, int levels) {
        const auto p = divergence_probe(s.chart, HomogeneousDistance{}, u0, beta, dyadic_radii(first, last),
                                        quadrature(resolution, levels));
        py::dict d;
        d["radii"] = p.radii;
        d["areas"] = p.areas;
        d["area_slope"] = p.area_slope;
        d["ratio_slope"] = p.ratio_slope;
        return d;
      },
      py::arg("surface"), py::arg("u0"), py::arg("beta"), py::arg("first") = 3, py::arg("last") = 9,
      py::arg("resolution") = 16, py::arg("levels") = 2);

  m.def(
      "triangle_defect",
      [](long samples, std::uint64_t seed, double kappa3, double kappa4) {
        return triangle_defect_sampler(distance(kappa3, kappa4), samples, seed).max_defect;
      },
      py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("kappa3") = 0.5, py::arg("kappa4") = 1.0 / 6.0);
  m.def(
      "box_ball_lambda",
      [](long samples, std::uint64_t seed, double kappa3, double kappa4) {
        const QuasiNorm n{kappa3, kappa4};
        n.validate();
        const auto r = box_ball_lambda(n, samples, seed);
        py::dict d;
        d["lambda"] = r.lambda;
        d["violations"] = r.inner_violations + r.outer_violations;
        return d;
      },
      py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("kappa3") = 0.5, py::arg("kappa4") = 1.0 / 6.0);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one engel command; returns (exit code, stdout, stderr).");
}
