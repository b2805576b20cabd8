// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// error and wall time. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "qdisc/discord.hpp"
#include "qdisc/families.hpp"
#include "qdisc/pair_measures.hpp"
#include "qdisc/random_states.hpp"
#include "qdisc/sweep.hpp"
#include "qdisc/verify.hpp"

using namespace qdisc;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // <= 0: none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome pure_state_collapse() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = make_rng(1000, static_cast<std::uint64_t>(i));
    const PureState psi = random_pure_state(rng, i % 2 ? Dims{4, 2} : Dims{2, 2});
    const double e = entropy_entanglement(psi);
    const CorrelationReport r = discord(DensityMatrix::from_pure(psi), 0);
    if (!r.eof_ab) return {false, "EoF unavailable for sample " + std::to_string(i)};
    worst = std::max({worst, std::abs(r.discord_projective - e), std::abs(r.discord_povm - e), std::abs(*r.eof_ab - e)});
  }
  return {worst <= 1e-6, fmt("max |Q-E_ent| = %.3e (tol 1e-6)", worst)};
}

Outcome povm_duality() {
  double worst = 0.0;
  SearchConfig cfg;
  cfg.seed = 2;
  for (int i = 0; i < 50; ++i) {
    Rng rng = make_rng(2000, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_density_matrix(rng, {2, 2}, 2);
    worst = std::max(worst, std::abs(povm_search(rho, 0, cfg).value - duality_conditional_entropy(rho, 0)));
  }
  return {worst <= 2e-3, fmt("max |S_povm - E(BC)| = %.3e (tol 2e-3)", worst)};
}

Outcome trilateral() {
  double worst = 0.0;
  SearchConfig cfg;
  cfg.seed = 3;
  for (int i = 0; i < 20; ++i) {
    Rng rng = make_rng(3000, static_cast<std::uint64_t>(i));
    worst = std::max(worst, duality_residual(random_density_matrix(rng, {2, 2}, 2), cfg).residual);
  }
  return {worst <= 5e-3, fmt("max residual = %.3e (tol 5e-3)", worst)};
}

Outcome fig1() {
  const SweepSpec spec = fig1_preset(400);
  const SweepTable t = run_sweep(spec);
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    const double d0 = t.rows[i][2] - t.rows[i][1];
    const double d1 = t.rows[i + 1][2] - t.rows[i + 1][1];
    // Both curves touch zero at sin^2 phi = 1; that contact is not a crossing.
    if (std::abs(d0) < 1e-12 || std::abs(d1) < 1e-12) continue;
    if ((d0 < 0) != (d1 < 0)) crossings.push_back(t.rows[i][0] - d0 * (t.rows[i + 1][0] - t.rows[i][0]) / (d1 - d0));
  }
  // EoF branch: which |chi_i| is largest, on the same grid.
  std::vector<double> switches;
  int prev = 0;
  double prev_x = 0.0;
  for (const auto& row : t.rows) {
    Rank2Params p;
    p.phi = std::asin(std::sqrt(row[0]));
    p.theta2 = std::numbers::pi / 3.0;
    const Rank2Report r = rank2_report(p);
    if (prev != 0 && r.chi_branch != prev && row[0] < 1.0) switches.push_back(0.5 * (prev_x + row[0]));
    prev = r.chi_branch;
    prev_x = row[0];
  }
  auto near = [](const std::vector<double>& xs, double target, double tol) {
    for (double x : xs)
      if (std::abs(x - target) <= tol) return true;
    return false;
  };
  std::string detail = "E-Q sign changes at";
  for (double c : crossings) detail += fmt(" %.4f", c);
  detail += "; EoF branch switch at";
  for (double s : switches) detail += fmt(" %.4f", s);
  const bool ok = crossings.size() == 2 && near(crossings, 0.070, 0.01) && near(crossings, 0.711, 0.01) &&
                  switches.size() == 1 && near(switches, 0.2, 0.005);
  return {ok, detail};
}

Outcome eof_closed_form_vs_oracle() {
  double worst = 0.0;
  SearchConfig cfg;
  cfg.seed = 5;
  for (int i = 0; i < 50; ++i) {
    Rank2Params p;
    p.phi = 0.5 * std::numbers::pi * i / 49.0;
    p.theta2 = std::numbers::pi / 3.0;
    const double analytic = rank2_report(p).eof_ab;
    const double oracle = ensemble_eof_search(rank2_state(p), 4, cfg).value;
    worst = std::max(worst, std::abs(analytic - oracle));
  }
  return {worst <= 1e-4, fmt("max |E_closed - E_oracle| = %.3e (tol 1e-4)", worst)};
}

Outcome fig2() {
  const SweepTable t = run_sweep(fig2_preset(101));
  if (t.rows.size() != 101u * 101u) return {false, "wrong grid size"};
  double q_err = 0.0;
  double e_err = 0.0;
  int positive = 0;
  int zero = 0;
  std::vector<std::string> counter;
  DiscordOptions analytic;
  analytic.method = Method::analytic;
  std::ofstream signs("fig2_eta_sign.csv");
  signs << "alpha_sq,p,sign\n";
  for (const auto& row : t.rows) {
    const double a = row[0];
    const double p = row[1];
    // Spectral closed form of the damped state.
    const double ab = a * (1.0 - a);
    const double decay = 1.0 - p;
    const double root = std::sqrt(std::max(0.0, 0.25 - ab * (1.0 - decay * decay)));
    RealVector spec(2);
    spec << 0.5 + root, 0.5 - root;
    const double q_closed = binary_entropy(a) - shannon_bits(spec);
    const double e_closed = eof_from_concurrence(std::min(1.0, 2.0 * std::sqrt(ab) * decay));
    // Same quantities from the general engine on the explicit matrix.
    const CorrelationReport r = discord(phase_damping_state({a, p}), 0, analytic);
    q_err = std::max({q_err, std::abs(row[2] - q_closed), std::abs(r.discord_povm - q_closed)});
    e_err = std::max({e_err, std::abs(row[3] - e_closed), std::abs(*r.eof_ab - e_closed)});
    const double eta = row[4];
    int sign = 0;
    if (eta < -1e-12) {
      sign = -1;
      counter.push_back(fmt("(%.2f,", a) + fmt("%.2f)", p));
    } else if (eta > 1e-12) {
      sign = 1;
      ++positive;
    } else {
      ++zero;
    }
    signs << format_csv_value(a) << ',' << format_csv_value(p) << ',' << sign << '\n';
  }
  std::string detail = fmt("Q err %.2e, ", q_err) + fmt("E err %.2e; ", e_err) + "eta>0 in " + std::to_string(positive) +
                       " cells, eta=0 in " + std::to_string(zero) + ", eta<0 in " + std::to_string(counter.size());
  if (counter.empty()) {
    detail += "; E >= Q confirmed on every cell (signs in fig2_eta_sign.csv)";
  } else {
    detail += "; counterexample cells:";
    for (std::size_t i = 0; i < counter.size() && i < 10; ++i) detail += " " + counter[i];
  }
  return {q_err <= 1e-9 && e_err <= 1e-9, detail};
}

Outcome delta_arbitration() {
  SearchConfig cfg;
  cfg.seed = 7;
  bool literal_all = true;
  bool composed_all = true;
  double composed_worst = 0.0;
  double literal_worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    Rng rng = make_rng(7000, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> u(0.05, 1.0);
    const double l23 = u(rng);
    const auto params = ThreeQubitParams::normalized({u(rng), u(rng), l23, l23, u(rng)}, 2.0 * std::numbers::pi * u(rng));
    const DensityMatrix rho = partial_trace(three_qubit_state(params), {0, 1});
    // Q_AB from the projective oracle; it coincides with E(AB) here.
    const double s_a = entropy_bits(partial_trace(rho.matrix(), rho.dims(), {0}));
    const double q = s_a + projective_search(rho, 0, cfg).value - entropy_bits(rho.matrix());
    const ThreeQubitReport rep = three_qubit_report(params, QubitPair::AB, 0);
    literal_worst = std::max(literal_worst, std::abs(q - rep.eof_literal));
    composed_worst = std::max(composed_worst, std::abs(q - rep.eof_composed));
    literal_all = literal_all && std::abs(q - rep.eof_literal) <= 1e-6;
    composed_all = composed_all && std::abs(q - rep.eof_composed) <= 1e-6;
  }
  std::string detail = fmt("sqrt(1-4 l0^2 l2^2): max err %.2e", composed_worst) +
                       (composed_all ? " (matches)" : " (no match)") +
                       fmt("; sqrt(1-l0^2 l2^2): max err %.2e", literal_worst) + (literal_all ? " (matches)" : " (no match)");
  return {composed_all != literal_all, detail};
}

Outcome d_component() {
  double worst = 0.0;
  SearchConfig cfg;
  cfg.seed = 8;
  for (int i = 0; i < 20; ++i) {
    Rng rng = make_rng(8000, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_density_matrix(rng, {4, 2}, 2);
    const double proj = projective_search(rho, 0, cfg).value;
    const Purification pur = purify(rho);
    const DensityMatrix bc(Dims{2, pur.source_rank}, reduced_density(pur.state, {1, 2}));
    const double brute = ensemble_eof_search(bc, 4, cfg).value;
    worst = std::max(worst, std::abs(proj - brute));
  }
  return {worst <= 2e-3, fmt("max |S_proj - E^[4](BC)| = %.3e (tol 2e-3)", worst)};
}

Outcome determinism() {
  VerifyOptions v;
  v.dump_dir = "acceptance_dumps";
  const std::string v1 = format_verify_report(run_verification(v));
  const std::string v2 = format_verify_report(run_verification(v));
  const std::string f1a = to_csv(run_sweep(fig1_preset(400)));
  const std::string f1b = to_csv(run_sweep(fig1_preset(400), 1));
  const std::string f2a = to_csv(run_sweep(fig2_preset(101)));
  const std::string f2b = to_csv(run_sweep(fig2_preset(101), 1));
  const bool ok = v1 == v2 && f1a == f1b && f2a == f2b;
  std::string detail = std::string("verify ") + (v1 == v2 ? "identical" : "DIFFERS") + ", fig1 " +
                       (f1a == f1b ? "identical" : "DIFFERS") + ", fig2 " + (f2a == f2b ? "identical" : "DIFFERS");
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "pure-state collapse", 10.0, pure_state_collapse},
      {2, "POVM duality", 120.0, povm_duality},
      {3, "trilateral identity", 300.0, trilateral},
      {4, "fig1 crossings and branch switch", 60.0, fig1},
      {5, "rank-2 EoF closed form vs ensemble oracle", 0.0, eof_closed_form_vs_oracle},
      {6, "fig2 closed forms and eta sign", 30.0, fig2},
      {7, "symmetric three-qubit Delta arbitration", 0.0, delta_arbitration},
      {8, "d-component EoF equivalence", 0.0, d_component},
      {9, "determinism", 0.0, determinism},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.passed;
    std::string timing = fmt("%.1fs", secs);
    if (c.time_limit_s > 0.0) {
      timing += fmt(" (limit %.0fs)", c.time_limit_s);
      if (secs >= c.time_limit_s) ok = false;
    }
    std::printf("[%s] %d. %s: %s [%s]\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    all = all && ok;
  }
  return all ? 0 : 1;
}
