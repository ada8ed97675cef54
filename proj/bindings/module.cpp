#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tps/chart.hpp"
#include "tps/dynamics.hpp"
#include "tps/gauge.hpp"
#include "tps/legendre.hpp"
#include "tps/metric.hpp"
#include "tps/models.hpp"
#include "tps/process.hpp"

namespace py = pybind11;
using namespace tps;

namespace {

ContactHamiltonian named_hamiltonian(const std::string& name, int n) {
  if (name == "reeb")
    return ScalarField::from_dual(n, [](const DualPoint& x) {
      return Dual2::constant(1.0, 2 * x.n() + 1);
    });
  if (name == "neg-w") return thermo_hamiltonian_field(n);
  if (name == "lt") return lt_generator(n);
  throw DomainError("unknown hamiltonian: " + name);
}

}  // namespace

PYBIND11_MODULE(_tpsgeom, m) {
  m.doc() = "contact-metric geometry of the thermodynamic phase space";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<LegendreBreakdown>(m, "LegendreBreakdown");

  py::class_<TpsPoint>(m, "TpsPoint")
      .def(py::init<double, Vec, Vec>(), py::arg("w"), py::arg("q"), py::arg("p"))
      .def_static("from_coords", &TpsPoint::from_coords)
      .def_property_readonly("n", &TpsPoint::n)
      .def_property_readonly("w", &TpsPoint::w)
      .def_property_readonly("q", [](const TpsPoint& p) { return Vec(p.q()); })
      .def_property_readonly("p", [](const TpsPoint& p) { return Vec(p.p()); })
      .def("coords", &TpsPoint::coords)
      .def("__repr__", [](const TpsPoint& p) {
        return "TpsPoint(n=" + std::to_string(p.n()) + ")";
      });

  m.def("eta", [](const TpsPoint& pt) { return eta(pt).components; },
        "components of the Gibbs 1-form at a point");
  m.def("eta_eval", [](const TpsPoint& pt, const Vec& X) {
    return eta_eval(pt, VectorAt(pt, X));
  });
  m.def("deta_eval", [](const TpsPoint& pt, const Vec& X, const Vec& Y) {
    return deta_eval(pt, VectorAt(pt, X), VectorAt(pt, Y));
  });
  m.def("reeb", [](const TpsPoint& pt) { return reeb(pt).components; });
  m.def("heisenberg_basis", [](const TpsPoint& pt) {
    std::vector<Vec> out;
    for (const auto& v : heisenberg_basis(pt)) out.push_back(v.components);
    return out;
  });
  m.def("volume_nondegeneracy", &volume_nondegeneracy);

  m.def("gfr", [](const TpsPoint& pt) { return gfr(pt).matrix; },
        "phase-space fluctuation metric in coordinate components");
  m.def("signature", [](const TpsPoint& pt) { return signature(pt); });
  m.def("phi", [](const TpsPoint& pt) { return phi(pt).matrix; });
  m.def("phi_closed_form",
        [](const TpsPoint& pt) { return phi_closed_form(pt).matrix; });
  m.def("check_structure", [](int n, const std::vector<TpsPoint>& pts, double tol) {
    const auto rep = check_structure(standard_bundle(n), pts, tol);
    py::dict out;
    for (const auto& ident : rep.identities) {
      py::dict d;
      d["max_residual"] = ident.max_residual;
      d["pass"] = ident.pass;
      out[ident.name.c_str()] = d;
    }
    out["all_pass"] = rep.all_pass();
    return out;
  }, py::arg("n"), py::arg("points"), py::arg("tol") = 1e-8);

  m.def("legendre_point", [](const TpsPoint& pt, const std::vector<int>& I) {
    return legendre_point(pt, I);
  });
  m.def("legendre_point_inverse",
        [](const TpsPoint& pt, const std::vector<int>& I) {
          return legendre_point_inverse(pt, I);
        });
  m.def("plt_metric", [](const TpsPoint& pt, const std::vector<int>& I) {
    return plt_metric(pt, I).matrix;
  });

  m.def("ham_vf", [](const std::string& name, const TpsPoint& pt) {
    return ham_vf(named_hamiltonian(name, pt.n()), pt).components;
  });
  m.def("integrate",
        [](const std::string& name, const TpsPoint& x0, double tf, double dt) {
          const Trajectory traj = integrate(named_hamiltonian(name, x0.n()), x0, tf, dt);
          Mat xs(traj.size(), x0.dim());
          Vec ts(traj.size()), hs(traj.size());
          for (size_t k = 0; k < traj.size(); ++k) {
            xs.row(static_cast<Eigen::Index>(k)) = traj.x[k].coords();
            ts(static_cast<Eigen::Index>(k)) = traj.t[k];
            hs(static_cast<Eigen::Index>(k)) = traj.h[k];
          }
          return py::make_tuple(ts, xs, hs);
        },
        py::arg("hamiltonian"), py::arg("x0"), py::arg("tf"), py::arg("dt") = 1e-3);

  m.def("analytic_flow", &analytic_flow);
  m.def("classify", [](const TpsPoint& x0, double tol) {
    return to_string(classify(x0, tol));
  }, py::arg("x0"), py::arg("tol") = 1e-10);
  m.def("entropy_production", &entropy_production, py::arg("x0"), py::arg("t_f"),
        py::arg("panels") = 10000);
  m.def("norm_identity_residual", &norm_identity_residual);

  py::class_<IdealGasModel>(m, "IdealGasModel")
      .def(py::init<>())
      .def_readwrite("c_v", &IdealGasModel::c_v)
      .def_readwrite("R", &IdealGasModel::R)
      .def("molar_entropy_value", [](const IdealGasModel& g, const Vec& x) {
        return g.molar_entropy().value(x);
      })
      .def("molar_entropy_hessian", [](const IdealGasModel& g, const Vec& x) {
        return g.molar_entropy().hessian(x);
      });

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def_readonly("v_c", &CriticalPoint::v_c)
      .def_readonly("p_c", &CriticalPoint::p_c)
      .def_readonly("T_c", &CriticalPoint::T_c);

  py::class_<CoexistenceResult>(m, "CoexistenceResult")
      .def_readonly("T", &CoexistenceResult::T)
      .def_readonly("p_coex", &CoexistenceResult::p_coex)
      .def_readonly("v_liquid", &CoexistenceResult::v_liquid)
      .def_readonly("v_gas", &CoexistenceResult::v_gas)
      .def_readonly("equal_area_residual", &CoexistenceResult::equal_area_residual)
      .def_readonly("mu_residual", &CoexistenceResult::mu_residual);

  py::class_<VdwModel>(m, "VdwModel")
      .def(py::init<>())
      .def_readwrite("a", &VdwModel::a)
      .def_readwrite("b", &VdwModel::b)
      .def_readwrite("R", &VdwModel::R)
      .def("pressure", &VdwModel::pressure);

  m.def("critical_point", &critical_point);
  m.def("spinodal", &spinodal);
  m.def("maxwell_construction", &maxwell_construction);
  m.def("gibbs_phase_rule", &gibbs_phase_rule);

  m.def("legendre_isometry_residual",
        [](const std::string& model, const std::vector<int>& I, const Vec& q) {
          if (model != "ideal-gas") throw DomainError("unknown model " + model);
          return legendre_isometry_residual(IdealGasModel{}.molar_entropy(), I, q);
        });

  m.def("representation_change_residuals",
        [](const std::string& model, const std::vector<Vec>& grid) {
          Potential u = model == "vdw" ? VdwModel{}.energy_fundamental()
                                       : IdealGasModel{}.energy_fundamental();
          const auto rep = representation_change_demo(u, grid);
          py::dict out;
          out["xi"] = rep.max_xi_residual;
          out["metric"] = rep.max_metric_residual;
          out["conformal"] = rep.max_conformal_residual;
          out["structure_pass"] = rep.structure.all_pass();
          return out;
        });
}
