#include "scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <thread>

#include "tiqs/adiabatic.hpp"
#include "tiqs/couplings.hpp"
#include "tiqs/evolution.hpp"
#include "tiqs/fidelity.hpp"
#include "tiqs/field_theory.hpp"
#include "tiqs/ion_crystal.hpp"
#include "tiqs/linalg.hpp"
#include "tiqs/spectra_entropy.hpp"

namespace tiqs::cli {

namespace {

std::string f(double v) { return format_double(v); }

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void regime(ArtifactSet& out, const RegimeReport& rep, const RunOptions& opts) {
  std::vector<std::string> lines;
  for (const auto& c : rep.checks)
    lines.push_back(c.name + " " + (c.pass ? "pass" : "FAIL") + " value=" + f(c.value) + " limit=" + f(c.limit));
  int flagged = 0;
  for (const auto& c : rep.comb) flagged += c.flagged;
  lines.push_back("comb_resonances_flagged " + std::to_string(flagged));
  out.provenance().regime = lines;
  if (!rep.all_pass()) {
    if (opts.strict) throw StrictViolation("regime validation failed: " + rep.summary());
    std::cerr << "warning: regime validation: " << rep.summary() << "\n";
  }
}

void no_regime(ArtifactSet& out) { out.provenance().regime = {"not evaluated, no drive"}; }

struct Setup {
  CrystalConfig crystal;
  NormalModeData modes;
  DriveSpec drive;
};

Setup read_setup(const Node& root) {
  Setup s;
  s.crystal = read_crystal(root.child("crystal"));
  s.modes = transverse_modes(s.crystal);
  s.drive = read_drive(root.child("drive"), s.crystal.omega_x);
  return s;
}

// ---- crystal

void crystal(const Node& root, const RunOptions&, ArtifactSet& out) {
  root.allow({"scenario", "crystal"});
  CrystalConfig c = read_crystal(root.child("crystal"));
  NormalModeData m = transverse_modes(c);
  no_regime(out);
  auto& os = out.csv("crystal.csv", {"index", "u_j", "omega_n_2pi_Hz"});
  for (int j = 0; j < c.N; ++j) os << j << "," << f(m.positions(j)) << "," << f(m.frequencies(j) / two_pi) << "\n";
  json rep;
  rep["length_unit_m"] = length_unit(c);
  rep["a0_m"] = m.a0;
  rep["beta_x"] = m.beta_x;
  out.report("crystal.json", rep);
}

// ---- couplings

void couplings(const Node& root, const RunOptions& opts, ArtifactSet& out) {
  root.allow({"scenario", "crystal", "drive", "couplings"});
  Setup s = read_setup(root);
  Node cn = root.child_or_empty("couplings");
  cn.allow({"reference_ion", "r_max", "detunings_from_omega_x_2pi_Hz", "detunings_from_omega_x_rad_s"});
  const int N = s.crystal.N;
  const int ref = cn.integer("reference_ion", N / 2 - 1);
  const int r_max = cn.integer("r_max", std::min(10, N - 1 - ref));
  if (ref < 0 || ref >= N) throw SchemaError(cn.path() + ".reference_ion", "outside the chain");
  if (r_max < 1 || ref + r_max >= N) throw SchemaError(cn.path() + ".r_max", "reference_ion + r_max must stay in the chain");
  std::vector<double> detunings = cn.has_frequency("detunings_from_omega_x")
                                      ? cn.frequencies("detunings_from_omega_x")
                                      : std::vector<double>{s.drive.mu - s.crystal.omega_x};
  MatR J0 = coupling_matrix_numeric(s.modes, s.drive);
  regime(out, validate_regime(s.drive, s.modes, J0), opts);

  const double lz = length_unit(s.crystal);
  auto& os = out.csv("couplings.csv", {"detuning_2pi_Hz", "r", "distance_a0", "J_r_over_J_1_numeric",
                                       "J_r_over_J_1_analytic", "dipolar_reference"});
  json fits = json::array();
  for (double det : detunings) {
    DriveSpec d = s.drive;
    d.mu = s.crystal.omega_x + det;
    MatR J = coupling_matrix_numeric(s.modes, d);
    CouplingParams p = coupling_params(d, s.modes);
    const double j1 = J(ref, ref + 1), a1 = coupling_analytic(1, N, p);
    for (int r = 1; r <= r_max; ++r) {
      const double dist = (s.modes.positions(ref + r) - s.modes.positions(ref)) * lz / s.modes.a0;
      os << f(det / two_pi) << "," << r << "," << f(dist) << "," << f(J(ref, ref + r) / j1) << ","
         << f(coupling_analytic(r, N, p) / a1) << "," << f(1.0 / (double(r) * r * r)) << "\n";
    }
    json e;
    e["detuning_2pi_Hz"] = det / two_pi;
    e["J0_2pi_Hz"] = p.J0 / two_pi;
    e["lambda"] = p.lambda;
    e["xi0_over_a0"] = p.xi0 / p.a0;
    e["J12_numeric_2pi_Hz"] = j1 / two_pi;
    fits.push_back(e);
  }
  json rep;
  rep["a0_m"] = s.modes.a0;
  rep["reference_ion"] = ref;
  rep["fits"] = fits;
  out.report("couplings.json", rep);
}

// ---- evolve

void evolve(const Node& root, const RunOptions& opts, ArtifactSet& out) {
  root.allow({"scenario", "crystal", "drive", "evolve"});
  Setup s = read_setup(root);
  Node en = root.child_or_empty("evolve");
  en.allow({"n_max", "nbar", "points", "include_qim", "tol"});
  EchoSetup e;
  e.modes = s.modes;
  e.drive = s.drive;
  e.n_max = en.integers("n_max", std::vector<int>(s.modes.n_modes(), 6));
  e.nbar = en.numbers("nbar", std::vector<double>(s.modes.n_modes(), 0.05));
  if (int(e.n_max.size()) != s.modes.n_modes()) throw SchemaError(en.path() + ".n_max", "one cutoff per mode");
  if (int(e.nbar.size()) != s.modes.n_modes()) throw SchemaError(en.path() + ".nbar", "one occupation per mode");
  e.periods = en.integer("points", -1);
  e.include_qim = en.boolean("include_qim", true);
  e.prop.tol = en.number("tol", e.prop.tol);
  regime(out, validate_regime(s.drive, s.modes, coupling_matrix_numeric(s.modes, s.drive), e.nbar), opts);

  EchoSeries r = magnetisation_echo(e);
  std::vector<std::string> cols = {"t_s"};
  for (const auto& tag : r.tags)
    for (int i = 0; i < s.crystal.N; ++i) cols.push_back("sy_" + tag + "_" + std::to_string(i + 1));
  auto& os = out.csv("echo.csv", cols);
  for (size_t k = 0; k < r.t.size(); ++k) {
    os << f(r.t[k]);
    for (size_t a = 0; a < r.tags.size(); ++a)
      for (int i = 0; i < s.crystal.N; ++i) os << "," << f(r.values[a][i][k]);
    os << "\n";
  }
  json rep;
  rep["exchange_period_s"] = r.exchange_period;
  rep["propagator_change"] = r.propagator_change;
  rep["tags"] = r.tags;
  out.report("echo.json", rep);
}

// ---- fidelity-scan

void fidelity_scan(const Node& root, const RunOptions& opts, ArtifactSet& out) {
  root.allow({"scenario", "crystal", "drive", "scan"});
  Setup s = read_setup(root);
  Node sn = root.child_or_empty("scan");
  sn.allow({"h0_2pi_Hz", "h0_rad_s", "phi_s_rad", "nbar", "Delta_over_h0", "n_points", "n_max", "tail_tol",
            "target"});
  const std::vector<double> h0s = sn.has_frequency("h0") ? sn.frequencies("h0") : std::vector<double>{s.drive.h0};
  const std::vector<double> phis = sn.numbers("phi_s_rad", {s.drive.phi_s()});
  const std::vector<double> nbars = sn.numbers("nbar", {0.05});
  const double ratio = sn.number("Delta_over_h0", 0.0);
  const int n_points = sn.integer("n_points", 300);
  const int n_max = sn.integer("n_max", 0);
  const double tail = sn.number("tail_tol", 1e-6);
  const std::string target = sn.string("target", "xyz");
  if (target != "xyz" && target != "qim") throw SchemaError(sn.path() + ".target", "expected \"xyz\" or \"qim\"");

  struct Point {
    double h0, phi, nbar, eps = 0.0, J12 = 0.0, t_final = 0.0;
  };
  std::vector<Point> grid;
  for (double h : h0s)
    for (double p : phis)
      for (double nb : nbars) grid.push_back({h, p, nb});

  auto make = [&](const Point& pt) {
    ChannelScanSetup c;
    c.modes = s.modes;
    c.drive = s.drive;
    c.drive.h0 = pt.h0;
    if (ratio > 0.0) c.drive.Delta = ratio * pt.h0;
    c.drive.set_phases(pt.phi, s.drive.phi_m());
    const int cut = n_max > 0 ? n_max : std::max(4, required_cutoff(pt.nbar, tail));
    c.n_max.assign(s.modes.n_modes(), cut);
    c.nbar.assign(s.modes.n_modes(), pt.nbar);
    c.n_points = n_points;
    c.target = target == "xyz" ? EffectiveTarget::XYZ : EffectiveTarget::QIM;
    return c;
  };
  {
    ChannelScanSetup c0 = make(grid.front());
    regime(out, validate_regime(c0.drive, s.modes, coupling_matrix_numeric(s.modes, c0.drive), c0.nbar), opts);
  }
  parallel_for(int(grid.size()), opts.threads, [&](int i) {
    ChannelScan r = channel_error_scan(make(grid[i]));
    grid[i].eps = r.eps_bar;
    grid[i].J12 = r.J12;
    grid[i].t_final = r.t_final;
  });

  auto& os = out.csv("fidelity_scan.csv", {"h0_2pi_Hz", "phi_s_rad", "nbar", "J12_2pi_Hz", "t_final_s", "eps_bar"});
  for (const auto& p : grid)
    os << f(p.h0 / two_pi) << "," << f(p.phi) << "," << f(p.nbar) << "," << f(p.J12 / two_pi) << ","
       << f(p.t_final) << "," << f(p.eps) << "\n";

  json trends = json::array();
  if (h0s.size() >= 2)
    for (double p : phis)
      for (double nb : nbars) {
        std::vector<double> x, y;
        for (const auto& g : grid)
          if (g.phi == p && g.nbar == nb) {
            x.push_back(g.h0);
            y.push_back(g.eps);
          }
        json t;
        t["versus"] = "h0";
        t["phi_s_rad"] = p;
        t["nbar"] = nb;
        t["spearman"] = spearman(x, y);
        trends.push_back(t);
      }
  if (nbars.size() >= 2)
    for (double h : h0s)
      for (double p : phis) {
        std::vector<double> x, y;
        for (const auto& g : grid)
          if (g.h0 == h && g.phi == p) {
            x.push_back(g.nbar);
            y.push_back(g.eps);
          }
        json t;
        t["versus"] = "nbar";
        t["h0_2pi_Hz"] = h / two_pi;
        t["phi_s_rad"] = p;
        t["spearman"] = spearman(x, y);
        trends.push_back(t);
      }
  double worst = 0.0;
  for (const auto& g : grid) worst = std::max(worst, g.eps);
  json rep;
  rep["max_eps_bar"] = worst;
  rep["trends"] = trends;
  out.report("fidelity_scan.json", rep);
}

// ---- ramp

void ramp(const Node& root, const RunOptions& opts, ArtifactSet& out) {
  root.allow({"scenario", "crystal", "drive", "ramp"});
  Setup s = read_setup(root);
  Node rn = root.child("ramp");
  rn.allow({"h0_over_J12", "h0_2pi_Hz", "h0_rad_s", "n_periods", "phi_f_over_pi", "step", "couplings"});
  const std::string kind = rn.string("couplings", "sideband");
  if (kind != "sideband" && kind != "numeric")
    throw SchemaError(rn.path() + ".couplings", "expected \"sideband\" or \"numeric\"");
  MatR J = kind == "sideband" ? coupling_matrix_sideband(s.modes, s.drive) : coupling_matrix_numeric(s.modes, s.drive);
  if (rn.has("h0_over_J12") == rn.has_frequency("h0"))
    throw SchemaError(rn.path() + ".h0_over_J12", "give exactly one of h0_over_J12 or h0_*");
  const double h0 = rn.has("h0_over_J12") ? rn.number("h0_over_J12") * J(0, 1) : rn.frequency("h0");
  const std::vector<int> nper = rn.integers("n_periods");
  std::vector<double> phis = rn.numbers("phi_f_over_pi");
  for (double& p : phis) p *= pi;
  const double step = rn.number("step", 0.05);
  DriveSpec d = s.drive;
  d.h0 = h0;
  regime(out, validate_regime(d, s.modes, J), opts);

  auto g = ramp_grid(s.crystal.N, J, h0, nper, phis, opts.threads, step);
  auto& os = out.csv("ramp.csv", {"tf_h0_over_2pi", "phi_f_over_pi", "F_ad", "F_other_sector", "parity_drift"});
  for (const auto& p : g)
    os << p.n_periods << "," << f(p.phi_f / pi) << "," << f(p.fidelity) << "," << f(p.fidelity_other) << ","
       << f(p.parity_drift) << "\n";
  json rep;
  rep["J12_2pi_Hz"] = J(0, 1) / two_pi;
  rep["h0_2pi_Hz"] = h0 / two_pi;
  out.report("ramp.json", rep);
}

// ---- nlsm

void nlsm(const Node& root, const RunOptions& opts, ArtifactSet& out) {
  root.allow({"scenario", "nlsm"});
  Node nn = root.child_or_empty("nlsm");
  nn.allow({"power_law", "trapped_ion"});
  no_regime(out);
  std::vector<double> ss = opts.power_law;
  double J1 = 1.0, a = 1.0, S = 0.5;
  if (nn.has("power_law")) {
    Node p = nn.child("power_law");
    p.allow({"s", "J1", "a", "S"});
    for (double v : p.numbers("s")) ss.push_back(v);
    J1 = p.number("J1", J1);
    a = p.number("a", a);
    S = p.number("S", S);
  }
  if (!ss.empty()) {
    auto& os = out.csv("nlsm_power_law.csv", {"s", "v", "g", "theta", "stable"});
    for (double s : ss) {
      NlsmParams r = power_law_nlsm(s, J1, a, S);
      os << f(s) << "," << f(r.v) << "," << f(r.g) << "," << f(r.theta) << "," << (r.stable ? 1 : 0) << "\n";
    }
  }
  if (nn.has("trapped_ion")) {
    Node t = nn.child("trapped_ion");
    t.allow({"lambda"});
    auto& os = out.csv("nlsm_trapped_ion.csv", {"lambda", "g", "stable"});
    for (double l : t.numbers("lambda")) {
      CouplingG g = trapped_ion_g(l);
      os << f(l) << "," << f(g.g) << "," << (g.stable ? 1 : 0) << "\n";
    }
  }
  if (ss.empty() && !nn.has("trapped_ion"))
    throw SchemaError("$.nlsm", "nothing to compute, give power_law, trapped_ion or --power-law");
}

// ---- entropy

double unit_coupling(int r, double) { return r == 1 ? 1.0 : 0.0; }
double power_coupling(int r, double alpha) { return 1.0 / std::pow(double(r), alpha); }
double eq13_coupling(int r, double lambda) { return jtilde_eq13(r, lambda); }

void entropy(const Node& root, const RunOptions& opts, ArtifactSet& out) {
  root.allow({"scenario", "entropy"});
  Node en = root.child("entropy");
  en.allow({"N", "models", "window"});
  const int N = en.integer("N");
  if (N < 4 || N > 20 || N % 2) throw SchemaError(en.path() + ".N", "expected an even chain length in [4, 20]");
  const std::vector<int> w = en.integers("window", {4, N - 4});
  if (w.size() != 2) throw SchemaError(en.path() + ".window", "expected [lo, hi]");
  no_regime(out);

  auto& os = out.csv("entropy.csv", {"model", "l", "y_l", "S_l"});
  json fits = json::array();
  for (const Node& m : en.objects("models")) {
    m.allow({"name", "kind", "lambda", "alpha", "r_cut"});
    const std::string name = m.string("name", "");
    const std::string kind = m.string("kind", "");
    if (name.empty()) throw SchemaError(m.path() + ".name", "required string missing");
    const int r_cut = m.integer("r_cut", -1);
    MatR J;
    if (kind == "nearest_neighbor")
      J = distance_couplings(N, unit_coupling, 0.0, r_cut);
    else if (kind == "power_law")
      J = distance_couplings(N, power_coupling, m.number("alpha"), r_cut);
    else if (kind == "trapped_ion")
      J = distance_couplings(N, eq13_coupling, m.number("lambda"), r_cut);
    else
      throw SchemaError(m.path() + ".kind", "expected nearest_neighbor, power_law or trapped_ion");
    GroundStateOptions go;
    go.lanczos.seed = static_cast<unsigned>(opts.seed);
    GroundState g = ground_state(heisenberg_pauli_sum(J), go);
    EntropyProfile p = entropy_profile(g.state, N);
    fit_central_charge(p, even_window(w[0], w[1]));
    for (size_t k = 0; k < p.l.size(); ++k) os << name << "," << p.l[k] << "," << f(p.y[k]) << "," << f(p.S[k]) << "\n";
    json e;
    e["model"] = name;
    e["c_eff"] = p.c_eff;
    e["a"] = p.intercept;
    e["window"] = p.window;
    e["residual"] = p.residual;
    e["energy"] = g.energy;
    e["lanczos_residual"] = g.residual;
    fits.push_back(e);
  }
  json rep;
  rep["N"] = N;
  rep["fits"] = fits;
  out.report("entropy_fit.json", rep);
}

using Runner = void (*)(const Node&, const RunOptions&, ArtifactSet&);

struct Entry {
  const char* name;
  Runner run;
};

const Entry kScenarios[] = {{"crystal", crystal},   {"couplings", couplings}, {"evolve", evolve},
                            {"fidelity-scan", fidelity_scan}, {"ramp", ramp}, {"nlsm", nlsm},
                            {"entropy", entropy}};

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kScenarios) v.push_back(e.name);
    return v;
  }();
  return names;
}

void run_scenario(const std::string& name, const json& config, const RunOptions& opts, ArtifactSet& out) {
  Node root(config, "$");
  if (root.has("scenario") && root.string("scenario", "") != name)
    throw SchemaError("$.scenario", "config is for \"" + root.string("scenario", "") + "\", not \"" + name + "\"");
  for (const auto& e : kScenarios)
    if (name == e.name) return e.run(root, opts, out);
  throw SchemaError("$", "unknown scenario " + name);
}

}  // namespace tiqs::cli
