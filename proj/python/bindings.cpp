#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multibrot/lamination.hpp"
#include "multibrot/numerics.hpp"
#include "multibrot/queries.hpp"
#include "multibrot/render.hpp"
#include "multibrot/symbolic.hpp"

namespace py = pybind11;
namespace mb = multibrot;

namespace {

mb::Angle to_angle(const std::string& s) { return mb::Angle::parse(s); }

std::vector<std::string> angle_strs(const std::vector<mb::Angle>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& a : v) out.push_back(a.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "rational-ray combinatorics of Multibrot sets";

  py::class_<mb::Angle>(m, "Angle")
      .def(py::init(&to_angle))
      .def_static("zero", &mb::Angle::zero)
      .def_static("one", &mb::Angle::one)
      .def("__str__", &mb::Angle::str)
      .def("__repr__", [](const mb::Angle& a) { return "Angle('" + a.str() + "')"; })
      .def("__eq__", [](const mb::Angle& a, const mb::Angle& b) { return a == b; })
      .def("__lt__", [](const mb::Angle& a, const mb::Angle& b) { return a < b; })
      .def("__hash__", [](const mb::Angle& a) { return std::hash<mb::Angle>{}(a); })
      .def("__float__", &mb::Angle::to_double)
      .def_property_readonly("numerator",
                             [](const mb::Angle& a) { return a.numerator().str(); })
      .def_property_readonly("denominator",
                             [](const mb::Angle& a) { return a.denominator().str(); });

  m.def("map_d", [](const std::string& a, int d) {
    return mb::map_d(to_angle(a), d).str();
  });
  m.def("classify", [](const std::string& a, int d) {
    auto c = mb::classify(to_angle(a), d);
    return std::make_pair(c.preperiod, c.period);
  });
  m.def("periodic_angles", [](int d, int n) {
    return angle_strs(mb::periodic_angles(d, n));
  });
  m.def("preperiodic_angles", [](int d, int l, int n) {
    return angle_strs(mb::preperiodic_angles(d, l, n));
  });
  m.def("kneading_sequence", [](const std::string& a, int d) {
    return mb::kneading_sequence(to_angle(a), d).str();
  });

  py::class_<mb::Lamination>(m, "Lamination")
      .def_static("build", [](int degree, int max_period, int max_preperiod) {
        auto lam = mb::Lamination::build_periodic(degree, max_period);
        if (max_preperiod > 0) lam.add_preperiodic(max_preperiod, max_period);
        return lam;
      }, py::arg("degree") = 2, py::arg("max_period") = 8,
         py::arg("max_preperiod") = 0)
      .def_static("loads", &mb::Lamination::deserialize)
      .def("dumps", &mb::Lamination::serialize)
      .def_property_readonly("degree", &mb::Lamination::degree)
      .def_property_readonly("max_period", &mb::Lamination::max_period)
      .def_property_readonly("max_preperiod", &mb::Lamination::max_preperiod)
      .def("leaves", [](const mb::Lamination& lam) {
        std::vector<std::tuple<std::string, std::string, int>> out;
        for (const auto& l : lam.leaves())
          out.emplace_back(l.lower.str(), l.upper.str(), l.period);
        return out;
      })
      .def("misiurewicz_groups", [](const mb::Lamination& lam) {
        std::vector<std::tuple<int, int, std::vector<std::string>>> out;
        for (const auto& g : lam.misiurewicz_nodes())
          out.emplace_back(g.preperiod, g.period, angle_strs(g.angles));
        return out;
      })
      .def("group_of", [](const mb::Lamination& lam, const std::string& a) -> py::object {
        auto ref = lam.node_of(to_angle(a));
        if (!ref) return py::none();
        return py::cast(angle_strs(lam.node_angles(*ref)));
      })
      .def("internal_address", [](const mb::Lamination& lam, const std::string& a) {
        auto addr = mb::internal_address(to_angle(a), lam);
        return std::make_pair(addr.entries, addr.complete);
      })
      .def("angled_internal_address", [](const mb::Lamination& lam, const std::string& a) {
        return mb::angled_internal_address(to_angle(a), lam).str();
      })
      .def("branch", [](const mb::Lamination& lam, const std::string& a, const std::string& b) {
        return mb::branch_point(lam, to_angle(a), to_angle(b)).str(lam);
      })
      .def("separate", [](const mb::Lamination& lam, const std::string& a, const std::string& b) {
        return mb::separate(lam, to_angle(a), to_angle(b)).str(lam);
      })
      .def("same_class", [](const mb::Lamination& lam, const std::string& a,
                            const std::string& b) -> py::object {
        switch (mb::same_comb_class(lam, to_angle(a), to_angle(b))) {
          case mb::Ternary::kTrue: return py::bool_(true);
          case mb::Ternary::kFalse: return py::bool_(false);
          default: return py::none();
        }
      })
      .def("characteristic_pairs", [](const mb::Lamination& lam, const std::string& a) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& p : mb::characteristic_ray_pairs(lam, to_angle(a)))
          out.emplace_back(p.lower.str(), p.upper.str());
        return out;
      })
      .def("approximating_pairs", [](const mb::Lamination& lam, const std::string& lo,
                                     const std::string& hi, int count) {
        std::vector<std::pair<std::string, std::string>> out;
        mb::Leaf root{to_angle(lo), to_angle(hi), 1};
        for (const auto& p : mb::approximating_pairs(lam, root, count))
          out.emplace_back(p.lower.str(), p.upper.str());
        return out;
      }, py::arg("lower"), py::arg("upper"), py::arg("count") = 3)
      .def("fiber_partition", [](const mb::Lamination& lam,
                                 const std::vector<std::string>& angles) {
        std::vector<mb::Angle> in;
        for (const auto& s : angles) in.push_back(to_angle(s));
        auto part = mb::fiber_partition(lam, std::move(in));
        std::vector<std::vector<std::string>> out;
        for (const auto& cls : part.classes) out.push_back(angle_strs(cls));
        return out;
      })
      .def("svg", [](const mb::Lamination& lam) {
        return mb::lamination_svg(lam);
      });

  m.def("trace_ray", [](int degree, const std::string& theta, double t_min, int depth) {
    mb::TraceOptions opts;
    if (t_min > 0) opts.t_min = t_min;
    if (depth > 0) opts.depth = depth;
    auto ray = mb::trace_parameter_ray(degree, to_angle(theta), opts);
    py::dict out;
    out["angle"] = ray.angle.str();
    out["landing"] = ray.landing;
    out["residual"] = ray.residual;
    out["stalled"] = ray.stalled;
    out["potentials"] = ray.potentials;
    out["points"] = ray.points;
    return out;
  }, py::arg("degree"), py::arg("theta"), py::arg("t_min") = 0.0,
     py::arg("depth") = 0);

  m.def("validate_group", [](const std::vector<std::string>& group, int degree,
                             double tol) {
    std::vector<mb::Angle> in;
    for (const auto& s : group) in.push_back(to_angle(s));
    auto v = mb::validate_leaf(in, degree, tol);
    py::dict out;
    out["ok"] = v.ok;
    out["inconclusive"] = v.inconclusive;
    out["max_pairwise"] = v.max_pairwise;
    out["max_residual"] = v.max_residual;
    return out;
  }, py::arg("group"), py::arg("degree") = 2, py::arg("tol") = 1e-2);

  m.def("escape_iterations", [](std::complex<double> c, int degree, int max_iter) -> py::object {
    auto it = mb::escape_iterations(c, degree, max_iter,
                                    mb::default_escape_radius(degree, c));
    if (!it) return py::none();
    return py::int_(*it);
  }, py::arg("c"), py::arg("degree") = 2, py::arg("max_iter") = 256);

  m.def("set_png", [](int degree, int size, int max_iter) {
    mb::RenderOptions opts;
    opts.size = size;
    opts.max_iter = max_iter;
    if (degree > 2) opts.viewport = mb::Viewport{-1.6, 1.6, -1.6, 1.6};
    auto img = mb::set_image(degree, opts);
    return py::bytes(mb::encode_png(img));
  }, py::arg("degree") = 2, py::arg("size") = 400, py::arg("max_iter") = 128);
}
