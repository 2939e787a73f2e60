#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blowup/config.hpp"
#include "blowup/report.hpp"

namespace py = pybind11;
using namespace blowup;

namespace {

PhysParams make_params(int dim, double alpha, double lambda_re, double lambda_im, double k) {
  return PhysParams{dim, alpha, {lambda_re, lambda_im}, k};
}

// JSON crosses the boundary as text; the Python side decodes it.
std::string text(const json& j) { return j.dump(); }

Grid make_grid(const std::string& mode, int dim, std::size_t points, double radius) {
  if (mode == "cartesian") return Grid::cartesian(points, radius);
  if (mode == "radial") return Grid::radial(dim, points, radius);
  throw std::invalid_argument("grid mode must be cartesian or radial");
}

py::array_t<cplx> to_array(const Field& f) {
  py::array_t<cplx> out(static_cast<py::ssize_t>(f.size()));
  auto view = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < f.size(); ++i) view(static_cast<py::ssize_t>(i)) = f[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_blowup, m) {
  m.doc() = "Core routines of the blow-up laboratory";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);

  m.def("validate_assumptions", [](int dim, double alpha, double re, double im) {
    return text(to_json(validate_assumptions(make_params(dim, alpha, re, im, INFINITY))));
  }, py::arg("dim"), py::arg("alpha"), py::arg("lambda_re"), py::arg("lambda_im"));

  m.def("exponent_table", [](int dim, double alpha, double k) {
    return text(to_json(exponent_table(make_params(dim, alpha, 0.0, 1.0, k))));
  }, py::arg("dim"), py::arg("alpha"), py::arg("k"));

  m.def("min_admissible_k", [](int dim, double alpha, std::vector<double> p_list) {
    return min_admissible_k(dim, alpha, std::span<const double>(p_list));
  }, py::arg("dim"), py::arg("alpha"), py::arg("p_list"));

  m.def("condition_A2", [](int dim, double alpha) {
    return condition_A2(make_params(dim, alpha, 0.0, 1.0, INFINITY));
  }, py::arg("dim"), py::arg("alpha"));

  m.def("power_case", [](double alpha, int dim) { return std::string(to_string(power_case(alpha, dim))); },
        py::arg("alpha"), py::arg("dim"));

  m.def("profile_value", [](int dim, double alpha, double re, double im, double k, double t, double r) {
    return profile_value(make_params(dim, alpha, re, im, k), t, r);
  }, py::arg("dim"), py::arg("alpha"), py::arg("lambda_re"), py::arg("lambda_im"), py::arg("k"),
     py::arg("t"), py::arg("r"));

  m.def("verify_scaling", [](int dim, double alpha, double re, double im, double k,
                             const std::string& quantity, std::vector<double> times, double p) {
    ProfileQuantity q = ProfileQuantity::Lp;
    if (quantity == "grad") q = ProfileQuantity::GradLp;
    else if (quantity == "lap") q = ProfileQuantity::LapL2;
    else if (quantity != "lp") throw std::invalid_argument("quantity must be lp, grad or lap");
    return text(to_json(verify_scaling(make_params(dim, alpha, re, im, k), q, times, p)));
  }, py::arg("dim"), py::arg("alpha"), py::arg("lambda_re"), py::arg("lambda_im"), py::arg("k"),
     py::arg("quantity"), py::arg("times"), py::arg("p") = 2.0);

  m.def("power_diff_bound", [](cplx z, cplx w, double p, int n) {
    const PowerDiffBound b = power_diff_bound_check(z, w, p, n);
    py::dict d;
    d["lhs"] = b.lhs;
    d["lipschitz"] = b.lipschitz ? py::cast(*b.lipschitz) : py::none();
    d["holder"] = b.holder ? py::cast(*b.holder) : py::none();
    return d;
  });

  m.def("gaussian_norms", [](const std::string& mode, int dim, std::size_t points, double radius,
                             double alpha) {
    const Grid g = make_grid(mode, dim, points, radius);
    const Field f = Field::sample(g, [](double x) { return cplx{std::exp(-x * x), 0.0}; });
    return text(to_json(norm_report(f, alpha)));
  });

  m.def("evolve_gaussian", [](int dim, double alpha, double re, double im, const std::string& mode,
                              std::size_t points, double radius, double amplitude, double dt,
                              double t_end, bool validation_mode) {
    const PhysParams p = make_params(dim, alpha, re, im, INFINITY);
    const Grid g = make_grid(mode, dim, points, radius);
    const Field f0 = Field::sample(g, [amplitude](double x) { return cplx{amplitude * std::exp(-x * x), 0.0}; });
    SolveConfig c;
    c.dt = dt;
    c.t_start = 0.0;
    c.t_end = t_end;
    c.validation_mode = validation_mode;
    TrajectoryRecord traj;
    {
      py::gil_scoped_release release;
      traj = evolve(f0, p, c);
    }
    py::dict d;
    d["times"] = traj.times;
    std::vector<double> l2;
    for (const auto& r : traj.norms) l2.push_back(r.l2);
    d["l2"] = l2;
    d["final"] = to_array(traj.final_field);
    d["report"] = text(conservation_report(traj, f0));
    return d;
  }, py::arg("dim"), py::arg("alpha"), py::arg("lambda_re"), py::arg("lambda_im"), py::arg("mode"),
     py::arg("points"), py::arg("radius"), py::arg("amplitude"), py::arg("dt"), py::arg("t_end"),
     py::arg("validation_mode") = false);

  m.def("normalize_config_text", [](const std::string& s) { return normalize_config_text(s); });
  m.def("serialize_config", [](const std::string& s) { return FlatConfig::parse(s).serialize(); });
  m.def("read_params", [](const std::string& s) {
    return text(to_json(read_params(FlatConfig::parse(s))));
  });
}
