// tps — command-line front end: structure verification suites, gauge and
// Legendre demos, contact flows, process classification, coexistence sweeps.
// Outputs are deterministic for a fixed seed (stable column order, 17-digit
// CSV floats, canonical JSON with sorted keys).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "tps/chart.hpp"
#include "tps/dynamics.hpp"
#include "tps/errors.hpp"
#include "tps/gauge.hpp"
#include "tps/io.hpp"
#include "tps/legendre.hpp"
#include "tps/metric.hpp"
#include "tps/models.hpp"
#include "tps/process.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssert = 2;

struct GlobalOpts {
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::string format;  // empty: the subcommand's natural format
  std::string out;
};

struct GridSpec {
  double lo, hi;
  int count;
};

GridSpec parse_grid_axis(const std::string& s) {
  GridSpec g{};
  const auto c1 = s.find(':'), c2 = s.find(':', s.find(':') + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw tps::DomainError("grid spec must be lo:hi:count");
  g.lo = std::stod(s.substr(0, c1));
  g.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  g.count = std::stoi(s.substr(c2 + 1));
  if (g.count < 1) throw tps::DomainError("grid count must be >= 1");
  return g;
}

std::vector<GridSpec> parse_grid(const std::string& s) {
  std::vector<GridSpec> axes;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t comma = s.find(',', start);
    const std::string tok =
        s.substr(start, comma == std::string::npos ? std::string::npos
                                                   : comma - start);
    if (!tok.empty()) axes.push_back(parse_grid_axis(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (axes.empty()) throw tps::DomainError("empty grid spec");
  return axes;
}

std::vector<double> axis_values(const GridSpec& g) {
  std::vector<double> v;
  v.reserve(g.count);
  for (int i = 0; i < g.count; ++i)
    v.push_back(g.count == 1 ? g.lo
                             : g.lo + (g.hi - g.lo) * i / (g.count - 1));
  return v;
}

tps::Vec parse_vector(const std::string& s) {
  std::vector<double> vals;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t colon = s.find(':', start);
    vals.push_back(std::stod(
        s.substr(start, colon == std::string::npos ? std::string::npos
                                                   : colon - start)));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  tps::Vec v(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v(static_cast<int>(i)) = vals[i];
  return v;
}

// "w=-1,q=1:2,p=1:1" -> TpsPoint
tps::TpsPoint parse_x0(const std::string& s) {
  double w = 0.0;
  tps::Vec q, p;
  size_t start = 0;
  while (start < s.size()) {
    const size_t comma = s.find(',', start);
    const std::string tok =
        s.substr(start, comma == std::string::npos ? std::string::npos
                                                   : comma - start);
    const size_t eq = tok.find('=');
    if (eq == std::string::npos) throw tps::DomainError("x0: expected key=value");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "w")
      w = std::stod(val);
    else if (key == "q")
      q = parse_vector(val);
    else if (key == "p")
      p = parse_vector(val);
    else
      throw tps::DomainError("x0: unknown key " + key);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (q.size() == 0 || q.size() != p.size())
    throw tps::DomainError("x0: q and p must be given with equal lengths");
  return tps::TpsPoint(w, q, p);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json table_to_json(const tps::CsvTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj;
    for (size_t c = 0; c < t.columns.size(); ++c) {
      const auto& cell = row[c];
      if (const double* d = std::get_if<double>(&cell))
        obj[t.columns[c]] = *d;
      else if (const long long* i = std::get_if<long long>(&cell))
        obj[t.columns[c]] = *i;
      else
        obj[t.columns[c]] = std::get<std::string>(cell);
    }
    rows.push_back(obj);
  }
  return rows;
}

// Tables are CSV by default; reports are JSON by default.
void emit_table(const tps::CsvTable& t, const GlobalOpts& g) {
  if (g.format == "json")
    tps::emit(dump_json(table_to_json(t)), g.out);
  else
    tps::emit(tps::to_csv(t), g.out);
}

void emit_json(const json& j, const GlobalOpts& g) {
  if (g.format == "csv") {
    // Flatten to key,value rows for the CSV rendering of report objects.
    tps::CsvTable t;
    t.columns = {"key", "value"};
    const json flat = j.flatten();
    for (auto it = flat.begin(); it != flat.end(); ++it) {
      tps::Cell value;
      if (it->is_number_float())
        value = it->get<double>();
      else if (it->is_number_integer())
        value = static_cast<long long>(it->get<long long>());
      else if (it->is_boolean())
        value = std::string(it->get<bool>() ? "true" : "false");
      else
        value = it->dump();
      t.rows.push_back({std::string(it.key()), value});
    }
    tps::emit(tps::to_csv(t), g.out);
  } else {
    tps::emit(dump_json(j), g.out);
  }
}

// ----- subcommand implementations -------------------------------------------

int run_check_structure(const GlobalOpts& g, int n, int points) {
  tps::Rng rng(g.seed);
  std::vector<tps::TpsPoint> pts;
  pts.reserve(points);
  for (int i = 0; i < points; ++i) pts.push_back(rng.point(n));

  const tps::StructureBundle bundle = tps::standard_bundle(n);
  const tps::StructureReport rep = tps::check_structure(bundle, pts, g.tol);

  // Chart-level suite on the same points.
  double eta_xi = 0.0, deta_xi = 0.0, heisenberg = 0.0, volume_dev = 0.0;
  bool signature_ok = true;
  for (const auto& pt : pts) {
    const tps::VectorAt xi = tps::reeb(pt);
    eta_xi = std::max(eta_xi, std::abs(tps::eta_eval(pt, xi) - 1.0));
    tps::VectorAt y(pt, rng.uniform_vec(pt.dim(), -1.0, 1.0));
    deta_xi = std::max(deta_xi, std::abs(tps::deta_eval(pt, xi, y)));

    const auto basis = tps::heisenberg_basis(pt);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        tps::VectorFieldDef P = tps::VectorFieldDef::constant(
            basis[1 + i].components);
        tps::VectorFieldDef Q = tps::VectorFieldDef([j, n](const tps::TpsPoint& x) {
          tps::Vec c = tps::Vec::Zero(x.dim());
          c(0) = x.p(j);
          c(tps::TpsPoint::q_index(j)) = -1.0;
          return tps::VectorAt(x, c);
        });
        const tps::Vec br = tps::lie_bracket(P, Q, pt).components;
        tps::Vec expect = tps::Vec::Zero(pt.dim());
        if (i == j) expect(0) = 1.0;
        heisenberg = std::max(heisenberg, (br - expect).cwiseAbs().maxCoeff());
      }

    double factorial = 1.0;
    for (int k = 2; k <= n; ++k) factorial *= k;
    if (n <= 3)
      volume_dev = std::max(
          volume_dev, std::abs(std::abs(tps::volume_nondegeneracy(pt)) - factorial));
    const auto sig = tps::signature(pt);
    signature_ok = signature_ok && sig.first == n + 1 && sig.second == n;
  }

  json out;
  out["n"] = n;
  out["points"] = points;
  out["seed"] = g.seed;
  out["tol"] = g.tol;
  for (const auto& ident : rep.identities) {
    out["identities"][ident.name]["max_residual"] = ident.max_residual;
    out["identities"][ident.name]["pass"] = ident.pass;
  }
  out["chart"]["eta_of_xi"]["max_residual"] = eta_xi;
  out["chart"]["eta_of_xi"]["pass"] = eta_xi < g.tol;
  out["chart"]["deta_of_xi"]["max_residual"] = deta_xi;
  out["chart"]["deta_of_xi"]["pass"] = deta_xi < g.tol;
  out["chart"]["heisenberg_commutators"]["max_residual"] = heisenberg;
  out["chart"]["heisenberg_commutators"]["pass"] = heisenberg < g.tol;
  out["chart"]["volume_form"]["max_deviation"] = volume_dev;
  out["chart"]["volume_form"]["pass"] = volume_dev == 0.0;
  out["chart"]["signature"]["pass"] = signature_ok;

  const bool all = rep.all_pass() && eta_xi < g.tol && deta_xi < g.tol &&
                   heisenberg < g.tol && volume_dev == 0.0 && signature_ok;
  out["all_pass"] = all;
  emit_json(out, g);
  return all ? kExitOk : kExitAssert;
}

int run_gauge(const GlobalOpts& g, const std::string& model,
              const std::string& grid_spec) {
  const auto axes = parse_grid(grid_spec);
  if (axes.size() != 2) throw tps::DomainError("gauge: grid must be 2-d (S,V)");

  tps::Potential energy = [&]() {
    if (model == "ideal-gas") return tps::IdealGasModel{}.energy_fundamental();
    if (model == "vdw") return tps::VdwModel{}.energy_fundamental();
    throw tps::DomainError("gauge: unknown model " + model);
  }();

  tps::CsvTable t;
  t.columns = {"S", "V", "T", "conformal_dev", "structure_pass"};
  double worst = 0.0;
  bool all_pass = true;
  for (double S : axis_values(axes[0]))
    for (double V : axis_values(axes[1])) {
      tps::Vec sv(2);
      sv << S, V;
      const auto rep = tps::representation_change_demo(energy, {sv}, 1e-3, g.tol);
      const double T = energy.gradient(sv)(0);
      const bool pass = rep.structure.all_pass() &&
                        rep.max_conformal_residual < g.tol &&
                        rep.max_xi_residual < g.tol;
      worst = std::max(worst, rep.max_conformal_residual);
      all_pass = all_pass && pass;
      t.rows.push_back({S, V, T, rep.max_conformal_residual,
                        std::string(pass ? "true" : "false")});
    }
  emit_table(t, g);
  return all_pass ? kExitOk : kExitAssert;
}

int run_legendre(const GlobalOpts& g, const std::string& potential,
                 const std::string& indices, const std::string& grid_spec,
                 double Tr, bool expect_convex) {
  std::vector<int> I;
  if (!indices.empty()) {
    size_t start = 0;
    while (start <= indices.size()) {
      const size_t comma = indices.find(',', start);
      I.push_back(std::stoi(indices.substr(
                      start, comma == std::string::npos ? std::string::npos
                                                        : comma - start)) -
                  1);  // 1-based on the command line
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }

  tps::Potential w = [&]() {
    if (potential == "ideal-gas") return tps::IdealGasModel{}.molar_entropy();
    if (potential == "quadratic")
      return tps::Potential::from_dual(2, [](const std::vector<tps::Dual2>& x) {
        return -0.5 * (x[0] * x[0] + x[1] * x[1]);
      });
    if (potential == "vdw") {
      tps::VdwModel m;
      return m.helmholtz_isotherm(Tr * tps::critical_point(m).T_c);
    }
    throw tps::DomainError("legendre: unknown potential " + potential);
  }();
  if (I.empty()) I = tps::full_index_set(w.arity());

  const auto axes = parse_grid(grid_spec);
  if (static_cast<int>(axes.size()) != w.arity())
    throw tps::DomainError("legendre: grid arity mismatch");

  std::vector<tps::Vec> grid;
  std::vector<std::vector<double>> vals;
  for (const auto& a : axes) vals.push_back(axis_values(a));
  std::vector<size_t> idx(axes.size(), 0);
  while (true) {
    tps::Vec x(static_cast<int>(axes.size()));
    for (size_t k = 0; k < axes.size(); ++k)
      x(static_cast<int>(k)) = vals[k][idx[k]];
    grid.push_back(x);
    size_t k = 0;
    for (; k < axes.size(); ++k) {
      if (++idx[k] < vals[k].size()) break;
      idx[k] = 0;
    }
    if (k == axes.size()) break;
  }

  tps::CsvTable t;
  t.columns.reserve(w.arity() + 5);
  for (int a = 0; a < w.arity(); ++a) t.columns.push_back("x" + std::to_string(a + 1));
  t.columns.push_back("eta_pullback_residual");
  t.columns.push_back("isometry_residual");
  t.columns.push_back("hess_pos");
  t.columns.push_back("hess_neg");
  t.columns.push_back("breakdown");

  // Convexity on a region means one fixed Hessian signature over the whole
  // grid and no degenerate points; a signature change is the Legendre
  // symmetry breaking even when no grid point sits on the degeneracy locus.
  bool any_breakdown = false;
  long long sig_pos0 = -1, sig_neg0 = -1;
  for (const auto& x : grid) {
    // eta-preservation of the point map at a phase-space point over x.
    const tps::LegendreSpec graph(w.arity(), {}, w);
    const tps::TpsPoint pt = tps::embed(graph, x);
    const tps::Mat J = tps::legendre_point_jacobian(pt, I);
    const tps::TpsPoint image = tps::legendre_point(pt, I);
    const tps::Vec pulled = J.transpose() * tps::eta(image).components;
    const double eta_resid =
        (pulled - tps::eta(pt).components).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<tps::Mat> es(w.hessian(x));
    long long pos = 0, neg = 0;
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (int a = 0; a < w.arity(); ++a) {
      if (es.eigenvalues()(a) > 1e-10 * scale) ++pos;
      if (es.eigenvalues()(a) < -1e-10 * scale) ++neg;
    }
    if (sig_pos0 < 0) {
      sig_pos0 = pos;
      sig_neg0 = neg;
    }
    const bool degenerate = pos + neg < w.arity();
    if (degenerate || pos != sig_pos0 || neg != sig_neg0) any_breakdown = true;

    std::vector<tps::Cell> row;
    for (int a = 0; a < w.arity(); ++a) row.push_back(x(a));
    row.push_back(eta_resid);
    try {
      row.push_back(tps::legendre_isometry_residual(w, I, x));
      row.push_back(pos);
      row.push_back(neg);
      row.push_back(std::string(degenerate ? "1" : "0"));
    } catch (const tps::LegendreBreakdown&) {
      any_breakdown = true;
      row.push_back(std::numeric_limits<double>::quiet_NaN());
      row.push_back(pos);
      row.push_back(neg);
      row.push_back(std::string("1"));
    }
    t.rows.push_back(std::move(row));
  }
  emit_table(t, g);
  return (expect_convex && any_breakdown) ? kExitAssert : kExitOk;
}

int run_flow(const GlobalOpts& g, const std::string& hamiltonian,
             const std::string& x0_spec, double tf, double dt) {
  const tps::TpsPoint x0 = parse_x0(x0_spec);
  const int n = x0.n();

  tps::ContactHamiltonian h = [&]() -> tps::ContactHamiltonian {
    if (hamiltonian == "reeb")
      return tps::ScalarField::from_dual(n, [](const tps::DualPoint& x) {
        return tps::Dual2::constant(1.0, 2 * x.n() + 1);
      });
    if (hamiltonian == "neg-w") return tps::thermo_hamiltonian_field(n);
    if (hamiltonian == "lt") return tps::lt_generator(n);
    if (hamiltonian == "mrugala:ideal-gas") {
      if (n != 2) throw tps::DomainError("mrugala:ideal-gas needs n = 2");
      const tps::LegendreSpec spec(2, {}, tps::IdealGasModel{}.molar_entropy());
      return tps::mrugala_hamiltonians(spec).back();  // h^0 = w - f(q)
    }
    throw tps::DomainError("flow: unknown hamiltonian " + hamiltonian);
  }();

  const tps::Trajectory traj = tps::integrate(h, x0, tf, dt);
  tps::CsvTable t;
  t.columns.push_back("t");
  t.columns.push_back("w");
  for (int a = 0; a < n; ++a) t.columns.push_back("q" + std::to_string(a + 1));
  for (int a = 0; a < n; ++a) t.columns.push_back("p" + std::to_string(a + 1));
  t.columns.push_back("h");
  for (size_t k = 0; k < traj.size(); ++k) {
    std::vector<tps::Cell> row;
    row.push_back(traj.t[k]);
    row.push_back(traj.x[k].w());
    for (int a = 0; a < n; ++a) row.push_back(traj.x[k].q(a));
    for (int a = 0; a < n; ++a) row.push_back(traj.x[k].p(a));
    row.push_back(traj.h[k]);
    t.rows.push_back(std::move(row));
  }
  emit_table(t, g);
  return kExitOk;
}

int run_process(const GlobalOpts& g, const std::string& x0_spec, double tf,
                double tol) {
  const tps::TpsPoint x0 = parse_x0(x0_spec);
  const tps::ProcessResult res = tps::run_process(x0, tf, 1e-3, tol);

  json out;
  out["class"] = tps::to_string(res.orbit_class);
  out["H0"] = res.h0;
  out["entropy_production"] = res.entropy;
  out["q_drift_max"] = res.q_drift_max;
  out["flow_residual"] = res.flow_residual;
  emit_json(out, g);
  const bool ok = res.q_drift_max < 1e-10 && res.flow_residual < 1e-6;
  return ok ? kExitOk : kExitAssert;
}

int run_entropy_production(const GlobalOpts& g, const std::string& h0_grid,
                           double tf) {
  const GridSpec axis = parse_grid_axis(h0_grid);
  tps::CsvTable t;
  t.columns = {"H0", "t_f", "S_num", "S_closed", "residual"};
  bool ok = true;
  for (double h0 : axis_values(axis)) {
    tps::Vec q = tps::Vec::Ones(1), p = tps::Vec::Ones(1);
    const tps::TpsPoint x0(-h0, q, p);
    const double s_num = tps::entropy_production(x0, tf);
    const double s_closed = std::abs(h0) * (1.0 - std::exp(-tf));
    const double resid = std::abs(s_num - s_closed);
    ok = ok && resid < 1e-8;
    t.rows.push_back({h0, tf, s_num, s_closed, resid});
  }
  emit_table(t, g);
  return ok ? kExitOk : kExitAssert;
}

int run_maxwell(const GlobalOpts& g, double a, double b, double R, double T,
                double Tr, const std::string& tr_grid) {
  tps::VdwModel m;
  m.a = a;
  m.b = b;
  m.R = R;
  const tps::CriticalPoint cp = tps::critical_point(m);

  std::vector<double> temps;
  if (!tr_grid.empty()) {
    for (double t : axis_values(parse_grid_axis(tr_grid)))
      temps.push_back(t * cp.T_c);
  } else if (Tr > 0.0) {
    temps.push_back(Tr * cp.T_c);
  } else if (T > 0.0) {
    temps.push_back(T);
  } else {
    throw tps::DomainError("maxwell: give --T, --Tr or --tr-grid");
  }

  tps::CsvTable t;
  t.columns = {"T",   "T_r", "p_coex", "p_r",           "v_l",
               "v_g", "v_lr", "v_gr",  "area_residual", "mu_residual"};
  bool ok = true;
  for (double temp : temps) {
    const tps::CoexistenceResult r = tps::maxwell_construction(m, temp);
    ok = ok && r.equal_area_residual < 1e-8 && r.mu_residual < 1e-8;
    t.rows.push_back({r.T, r.T / cp.T_c, r.p_coex, r.p_coex / cp.p_c, r.v_liquid,
                      r.v_gas, r.v_liquid / cp.v_c, r.v_gas / cp.v_c,
                      r.equal_area_residual, r.mu_residual});
  }
  emit_table(t, g);
  return ok ? kExitOk : kExitAssert;
}

int run_phase_rule(const GlobalOpts& g, int C, int r) {
  const int N = tps::gibbs_phase_rule(C, r);
  if (g.out.empty()) {
    std::cout << N << "\n";
  } else {
    tps::emit(std::to_string(N) + "\n", g.out);
  }
  return kExitOk;
}

// Inject config-file values before user flags; user flags override because
// every option takes the last occurrence.
std::vector<std::string> splice_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") config_path = args[i + 1];
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw tps::DomainError("config: cannot open " + config_path);
  json cfg = json::parse(in);

  std::vector<std::string> merged;
  merged.push_back(args[0]);
  size_t rest = 1;
  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-') {
    merged.push_back(args[1]);  // subcommand first
    rest = 2;
  }
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    if (it->is_boolean()) {  // flags: present when true
      if (it->get<bool>()) merged.push_back("--" + it.key());
      continue;
    }
    merged.push_back("--" + it.key());
    merged.push_back(it->is_string() ? it->get<std::string>() : it->dump());
  }
  for (size_t i = rest; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;  // already consumed
      continue;
    }
    merged.push_back(args[i]);
  }
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermodynamic phase-space geometry toolkit"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand

  GlobalOpts g;
  std::string config_file;
  app.add_option("--seed", g.seed, "seed for random-point suites");
  app.add_option("--tol", g.tol, "residual tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--config", config_file, "JSON config mirroring flags");

  auto* cs = app.add_subcommand("check-structure", "para-contact identity suite");
  int cs_n = 1, cs_points = 100;
  cs->add_option("--n", cs_n, "degrees of freedom")->check(CLI::Range(1, 3));
  cs->add_option("--points", cs_points, "random points")
      ->check(CLI::PositiveNumber);

  auto* gauge_cmd = app.add_subcommand("gauge", "energy<->entropy gauge demo");
  std::string gauge_model = "ideal-gas", gauge_grid = "0.5:1.5:5,0.8:1.6:5";
  gauge_cmd->add_option("--model", gauge_model)->check(CLI::IsMember({"ideal-gas", "vdw"}));
  gauge_cmd->add_option("--grid", gauge_grid, "S-lo:S-hi:N,V-lo:V-hi:N");

  auto* leg = app.add_subcommand("legendre", "Legendre transform residual sweep");
  std::string leg_potential = "ideal-gas", leg_indices, leg_grid = "0.5:2:5,0.5:2:5";
  double leg_tr = 0.9;
  bool leg_expect_convex = false;
  leg->add_option("--potential", leg_potential)
      ->check(CLI::IsMember({"ideal-gas", "vdw", "quadratic"}));
  leg->add_option("--indices", leg_indices, "1-based, comma separated; default all");
  leg->add_option("--grid", leg_grid);
  leg->add_option("--Tr", leg_tr, "reduced temperature for the vdw isotherm");
  leg->add_flag("--expect-convex", leg_expect_convex,
                "exit 2 if a breakdown occurs");

  auto* flow = app.add_subcommand("flow", "integrate a contact Hamiltonian flow");
  std::string flow_h = "neg-w", flow_x0 = "w=-1,q=1,p=1";
  double flow_tf = 5.0, flow_dt = 1e-3;
  flow->add_option("--hamiltonian", flow_h,
                   "reeb | neg-w | lt | mrugala:ideal-gas");
  flow->add_option("--x0", flow_x0, "w=..,q=..:..,p=..:..");
  flow->add_option("--tf", flow_tf);
  flow->add_option("--dt", flow_dt);

  auto* proc = app.add_subcommand("process", "classify a thermodynamic process");
  std::string proc_x0 = "w=-1,q=1,p=1";
  double proc_tf = 50.0, proc_tol = 1e-10;
  proc->add_option("--x0", proc_x0);
  proc->add_option("--tf", proc_tf)->check(CLI::PositiveNumber);
  proc->add_option("--tol", proc_tol, "equilibrium tolerance on H0")
      ->check(CLI::PositiveNumber);

  auto* ep = app.add_subcommand("entropy-production", "arc-length sweep over H0");
  std::string ep_grid = "-1:1:5";
  double ep_tf = 50.0;
  ep->add_option("--h0-grid", ep_grid, "lo:hi:count");
  ep->add_option("--tf", ep_tf);

  auto* mx = app.add_subcommand("maxwell", "Van der Waals coexistence");
  double mx_a = 1.0, mx_b = 1.0, mx_R = 1.0, mx_T = 0.0, mx_Tr = 0.0;
  std::string mx_grid;
  mx->add_option("--a", mx_a);
  mx->add_option("--b", mx_b);
  mx->add_option("--R", mx_R);
  mx->add_option("--T", mx_T);
  mx->add_option("--Tr", mx_Tr);
  mx->add_option("--tr-grid", mx_grid, "reduced-T sweep lo:hi:count");

  auto* pr = app.add_subcommand("phase-rule", "Gibbs phase rule N = C - r + 2");
  int pr_C = 1, pr_r = 2;
  pr->add_option("--C", pr_C, "species");
  pr->add_option("--r", pr_r, "coexisting phases");

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = splice_config(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<char*> cargs;
  cargs.reserve(args.size());
  for (auto& a : args) cargs.push_back(a.data());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cs->parsed()) return run_check_structure(g, cs_n, cs_points);
    if (gauge_cmd->parsed()) return run_gauge(g, gauge_model, gauge_grid);
    if (leg->parsed())
      return run_legendre(g, leg_potential, leg_indices, leg_grid, leg_tr,
                          leg_expect_convex);
    if (flow->parsed()) return run_flow(g, flow_h, flow_x0, flow_tf, flow_dt);
    if (proc->parsed()) return run_process(g, proc_x0, proc_tf, proc_tol);
    if (ep->parsed()) return run_entropy_production(g, ep_grid, ep_tf);
    if (mx->parsed()) return run_maxwell(g, mx_a, mx_b, mx_R, mx_T, mx_Tr, mx_grid);
    if (pr->parsed()) return run_phase_rule(g, pr_C, pr_r);
  } catch (const tps::FlowDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
