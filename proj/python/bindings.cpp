#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anisonet/analytic.hpp"
#include "anisonet/boundary.hpp"
#include "anisonet/errors.hpp"
#include "anisonet/io.hpp"
#include "anisonet/mcsim.hpp"
#include "anisonet/thomson.hpp"

namespace py = pybind11;
using namespace anisonet;
using Triple = std::array<double, 3>;

namespace {

Vec3 vec(const Triple& t) { return {t[0], t[1], t[2]}; }
Triple triple(const Vec3& v) { return {v.x, v.y, v.z}; }

gain::OrientationSet directions(const std::vector<Triple>& v) {
  std::vector<Vec3> out;
  for (const auto& t : v) out.push_back(vec(t));
  return gain::OrientationSet::from_unnormalized(std::move(out));
}

std::vector<Triple> triples(const gain::OrientationSet& s) {
  std::vector<Triple> out;
  for (const Vec3& v : s.vectors()) out.push_back(triple(v));
  return out;
}

io::json to_json(const py::object& obj) {
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return io::json::parse(text);
}

py::object to_python(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

analytic::PathLossModel model(double eta, double beta) {
  analytic::PathLossModel m{eta, beta};
  m.validate();
  return m;
}

py::dict ensemble_dict(const mcsim::EnsembleReport& r) {
  py::dict d;
  d["trials"] = r.trials;
  d["nodes"] = r.nodes;
  d["density"] = r.density;
  d["mean_degree"] = r.mean_degree;
  d["mean_degree_stderr"] = r.mean_degree_stderr;
  d["isolated_fraction"] = r.isolated_fraction;
  d["isolated_fraction_stderr"] = r.isolated_fraction_stderr;
  d["pfc"] = r.pfc;
  d["pfc_stderr"] = r.pfc_stderr;
  d["pair_link_frequency"] = r.pair_link_frequency;
  d["degree_histogram"] = r.degree_histogram;
  return d;
}

}  // namespace

PYBIND11_MODULE(_anisonet, m) {
  m.doc() = "Connectivity of 3D ad hoc networks with anisotropic antennas";
  m.attr("__version__") = io::library_version();

  static py::exception<std::runtime_error> numerical(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const QuadratureError& e) {
      py::set_error(numerical, e.what());
    } catch (const ConvergenceError& e) {
      py::set_error(numerical, e.what());
    }
  });

  m.def("gamma_fn", &specfn::gamma_fn, py::arg("x"));
  m.def("lower_incomplete_gamma", &specfn::lower_incomplete_gamma, py::arg("s"), py::arg("x"));

  py::class_<gain::GainPattern>(m, "GainPattern")
      .def_static("isotropic", &gain::GainPattern::isotropic)
      .def_static("cardioid", &gain::GainPattern::cardioid, py::arg("epsilon"))
      .def_static("donut", &gain::GainPattern::donut, py::arg("m"))
      .def_static("narrow", &gain::GainPattern::narrow, py::arg("lam"))
      .def_static("sector", &gain::GainPattern::sector, py::arg("nu"))
      .def_static(
          "multilobe",
          [](double lam, const std::vector<Triple>& dirs, const std::string& profile) {
            if (profile != "cosine" && profile != "sectorized")
              throw DomainError("profile must be 'cosine' or 'sectorized'");
            return gain::GainPattern::multilobe(
                lam, directions(dirs), profile == "cosine" ? gain::LobeProfile::cosine : gain::LobeProfile::sectorized);
          },
          py::arg("lam"), py::arg("directions"), py::arg("profile") = "cosine")
      .def_static("from_dict", [](const py::object& d) { return io::pattern_from_json(to_json(d)); })
      .def("to_dict", [](const gain::GainPattern& p) { return to_python(io::pattern_to_json(p)); })
      .def("gain_at", [](const gain::GainPattern& p, const Triple& d) { return gain::gain_at(p, normalized(vec(d))); },
           py::arg("direction"))
      .def("max_gain", &gain::max_gain)
      .def("normalization", [](const gain::GainPattern& p) { return gain::verify_normalization(p); })
      .def("half_max_solid_angle", &gain::half_max_solid_angle)
      .def("s_closed", &gain::s_functional_closed, py::arg("eta"))
      .def("s_quadrature", [](const gain::GainPattern& p, double eta) { return gain::s_functional_quadrature(p, eta); },
           py::arg("eta"))
      .def("__repr__", [](const gain::GainPattern& p) { return "GainPattern(" + gain::describe(p) + ")"; });

  m.def(
      "s_functional",
      [](const gain::GainPattern& p, double eta) {
        const auto s = analytic::s_functional(p, eta);
        return py::make_tuple(s.value, s.method == analytic::Method::closed ? "closed" : "quadrature");
      },
      py::arg("pattern"), py::arg("eta"));
  m.def(
      "homogeneous_mass",
      [](const gain::GainPattern& tx, const gain::GainPattern& rx, double eta, double beta) {
        return analytic::homogeneous_mass(tx, rx, model(eta, beta)).mass;
      },
      py::arg("pattern_tx"), py::arg("pattern_rx"), py::arg("eta") = 2.0, py::arg("beta") = 1.0);
  m.def(
      "pfc_homogeneous", [](int n, double rho, double mass) { return analytic::pfc_homogeneous(n, rho, mass).clamped; },
      py::arg("nodes"), py::arg("rho"), py::arg("mass"));

  m.def(
      "ray_exit_distance",
      [](const Triple& lengths, const Triple& origin, const Triple& direction) {
        return boundary::ray_exit_distance(boundary::Domain::cuboid(lengths[0], lengths[1], lengths[2]), vec(origin),
                                           normalized(vec(direction)));
      },
      py::arg("lengths"), py::arg("origin"), py::arg("direction"));
  m.def(
      "corner_gain_integral",
      [](const gain::GainPattern& p, const Triple& orientation, double eta) {
        return boundary::corner_gain_integral(p, vec(orientation), eta);
      },
      py::arg("pattern"), py::arg("orientation"), py::arg("eta"));
  m.def(
      "corner_mass",
      [](const gain::GainPattern& pi, const Triple& orientation, const gain::GainPattern& pj, double eta, double beta,
         std::optional<double> cube_side) {
        return boundary::corner_mass(pi, vec(orientation), pj, model(eta, beta), cube_side);
      },
      py::arg("pattern_i"), py::arg("orientation"), py::arg("pattern_j"), py::arg("eta") = 2.0, py::arg("beta") = 1.0,
      py::arg("cube_side") = py::none());
  m.def(
      "multisector_corner_mass_3d",
      [](int n, double lam, const std::vector<Triple>& dirs, double eta, double beta, double side) {
        return boundary::multisector_corner_mass_3d(n, lam, directions(dirs), model(eta, beta), side);
      },
      py::arg("n"), py::arg("lam"), py::arg("directions"), py::arg("eta") = 2.0, py::arg("beta") = 1.0,
      py::arg("cube_side") = 1.0);
  m.def(
      "min_multisector_corner_mass",
      [](int n, double lam, const std::vector<Triple>& dirs, double eta, double beta, double side, double step_deg) {
        const auto r = boundary::min_multisector_corner_mass(n, lam, model(eta, beta), side,
                                                             step_deg * specfn::pi / 180.0, directions(dirs));
        py::dict d;
        d["value"] = r.value;
        d["blind_spot"] = r.blind_spot;
        d["avoidance_margin"] = r.avoidance_margin;
        d["rotations"] = r.rotations;
        return d;
      },
      py::arg("n"), py::arg("lam"), py::arg("directions"), py::arg("eta") = 2.0, py::arg("beta") = 1.0,
      py::arg("cube_side") = 1.0, py::arg("euler_step_deg") = 2.0);

  m.def(
      "thomson_points",
      [](int n, int restarts, std::uint64_t seed) {
        thomson::ThomsonOptions o;
        o.restarts = restarts;
        o.seed = seed;
        py::gil_scoped_release release;
        return triples(thomson::thomson_points(n, o));
      },
      py::arg("n"), py::arg("restarts") = 20, py::arg("seed") = 1);
  m.def(
      "coulomb_energy", [](const std::vector<Triple>& pts) { return thomson::coulomb_energy(directions(pts)); },
      py::arg("points"));

  m.def(
      "run_ensemble",
      [](const py::object& config) {
        const mcsim::SimConfig c = io::sim_config_from_json(to_json(config));
        mcsim::EnsembleReport r;
        {
          py::gil_scoped_release release;
          r = mcsim::run_ensemble(c);
        }
        return ensemble_dict(r);
      },
      py::arg("config"));
  m.def(
      "sweep_eta",
      [](const py::object& config, const std::vector<double>& etas, const std::vector<gain::GainPattern>& patterns) {
        const mcsim::SimConfig c = io::sim_config_from_json(to_json(config));
        std::vector<mcsim::SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = mcsim::sweep_eta(c, etas, patterns);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["eta"] = r.eta;
          d["pattern"] = r.pattern;
          d["mean_degree_over_rho"] = r.mean_degree_over_rho;
          d["stderr"] = r.standard_error;
          d["analytic_M"] = r.analytic_mass;
          out.append(d);
        }
        return out;
      },
      py::arg("config"), py::arg("eta_values"), py::arg("patterns"));
}
