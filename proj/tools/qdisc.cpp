#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qdisc/discord.hpp"
#include "qdisc/sweep.hpp"
#include "qdisc/verify.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitVerification = 2;

// Plain numbers or products/quotients involving pi: "1.2", "pi/3", "-2*pi/3".
double parse_value(const std::string& text) {
  std::string s = text;
  double sign = 1.0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    if (s[0] == '-') sign = -1.0;
    s.erase(0, 1);
  }
  if (s.empty()) throw qdisc::ContractViolation("empty numeric value");
  double acc = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find_first_of("*/", pos);
    const std::string token = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    double v = 0.0;
    if (token == "pi") {
      v = std::numbers::pi;
    } else {
      std::size_t used = 0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (token.empty() || used != token.size()) throw qdisc::ContractViolation("cannot parse number '" + text + "'");
    }
    acc = op == '*' ? acc * v : acc / v;
    if (next == std::string::npos) break;
    op = s[next];
    pos = next + 1;
  }
  if (!std::isfinite(acc)) throw qdisc::ContractViolation("non-finite value '" + text + "'");
  return sign * acc;
}

qdisc::Dims parse_split(const std::string& text) {
  qdisc::Dims dims;
  std::string token;
  std::stringstream in(text);
  const char delim = text.find('x') != std::string::npos ? 'x' : ',';
  while (std::getline(in, token, delim)) {
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (token.empty() || used != token.size() || d < 1) throw qdisc::ContractViolation("--split: bad dimension '" + token + "'");
    dims.push_back(d);
  }
  if (dims.size() != 2) throw qdisc::ContractViolation("--split: expected two dimensions such as 4x2");
  return dims;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v == 0.0 ? 0.0 : v);
  return buf;
}

void print_report(const qdisc::CorrelationReport& r) {
  using qdisc::to_string;
  std::cout << "measured: " << (r.measured == 0 ? "A" : "B") << '\n'
            << "S_A: " << fmt(r.s_a) << '\n'
            << "S_B: " << fmt(r.s_b) << '\n'
            << "S_AB: " << fmt(r.s_ab) << '\n'
            << "mutual_information: " << fmt(r.mutual_information) << '\n'
            << "cond_entropy_projective: " << fmt(r.cond_entropy_projective) << " (" << to_string(r.cond_projective_provenance)
            << ")\n"
            << "cond_entropy_povm: " << fmt(r.cond_entropy_povm) << " (" << to_string(r.cond_povm_provenance) << ")\n"
            << "classical_J_projective: " << fmt(r.classical_j_projective) << '\n'
            << "classical_J_povm: " << fmt(r.classical_j_povm) << '\n'
            << "discord_Q_I: " << fmt(r.discord_projective) << " (" << to_string(r.cond_projective_provenance) << ")\n"
            << "discord_Q_II: " << fmt(r.discord_povm) << " (" << to_string(r.cond_povm_provenance) << ")\n";
  if (r.eof_ab)
    std::cout << "eof_AB: " << fmt(*r.eof_ab) << " (" << to_string(*r.eof_provenance) << ")\n";
  else
    std::cout << "eof_AB: unavailable\n";
  std::cout << "eof_d_component: " << fmt(r.eof_d_component) << '\n'
            << "eof_complement: " << fmt(r.eof_complement) << '\n';
  if (r.duality_residual) std::cout << "duality_residual: " << fmt(*r.duality_residual) << '\n';
  std::cout << "provenance: " << to_string(r.method) << '\n' << "converged: " << (r.converged ? "yes" : "no") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum discord and entanglement of formation toolkit"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "Correlation report for a state file");
  std::string state_path;
  std::string split;
  std::string measured = "A";
  std::string method = "auto";
  std::uint64_t seed = 0;
  int restarts = 64;
  compute->add_option("--state", state_path, "State file (JSON)")->required();
  compute->add_option("--split", split, "Bipartition dimensions, e.g. 4x2 (default: file dims)");
  compute->add_option("--measured", measured, "Measured side")->check(CLI::IsMember({"A", "B"}));
  compute->add_option("--method", method, "Route selection")->check(CLI::IsMember({"auto", "analytic", "oracle"}));
  compute->add_option("--seed", seed, "Search seed");
  compute->add_option("--restarts", restarts, "Search restarts");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  std::string preset;
  std::string family;
  std::vector<std::string> fixed;
  std::vector<std::string> axes;
  std::string out;
  int points = 0;
  sweep->add_option("--preset", preset, "Paper figure preset")->check(CLI::IsMember({"fig1", "fig2"}));
  sweep->add_option("--family", family, "three-qubit | rank2 | phase-damping");
  sweep->add_option("--fixed", fixed, "Fixed parameter name=value (repeatable)");
  sweep->add_option("--axis", axes, "Swept axis name:start:end:points (repeatable)");
  sweep->add_option("--points", points, "Points per axis (overrides preset/axis counts)");
  sweep->add_option("--seed", seed, "Accepted for uniformity; sweeps are closed-form");
  sweep->add_option("--out", out, "Output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "Run the invariant suites on seeded random states");
  qdisc::VerifyOptions vopts;
  verify->add_option("--seed", vopts.seed, "Base seed");
  verify->add_option("--samples", vopts.samples, "Samples per invariant");
  verify->add_option("--restarts", vopts.restarts, "Search restarts");
  verify->add_option("--out", vopts.dump_dir, "Directory for failing-state dumps");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) {
      const qdisc::DensityMatrix loaded = qdisc::load_state_file(state_path);
      qdisc::Dims dims = loaded.dims();
      if (!split.empty()) {
        dims = parse_split(split);
        if (qdisc::total_dim(dims) != loaded.dim())
          throw qdisc::ContractViolation("--split: dimensions do not multiply to the state dimension");
      } else if (dims.size() != 2) {
        throw qdisc::ContractViolation("state has " + std::to_string(dims.size()) + " subsystems; give --split");
      }
      const qdisc::DensityMatrix rho(dims, loaded.matrix());
      qdisc::DiscordOptions opts;
      opts.method = method == "analytic" ? qdisc::Method::analytic
                    : method == "oracle"  ? qdisc::Method::oracle
                                          : qdisc::Method::automatic;
      opts.search.seed = seed;
      opts.search.restarts = restarts;
      opts.search.validate();
      qdisc::CorrelationReport r;
      try {
        r = qdisc::discord(rho, measured == "A" ? 0 : 1, opts);
      } catch (const qdisc::UnsupportedShape& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return kExitValidation;
      }
      print_report(r);
      const auto violations = r.invariant_violations(2e-3);
      for (const auto& v : violations) std::cerr << "warning: report invariant: " << v << '\n';
      return 0;
    }

    if (*sweep) {
      qdisc::SweepSpec spec;
      if (preset == "fig1") {
        spec = qdisc::fig1_preset(points > 0 ? points : 400);
      } else if (preset == "fig2") {
        spec = qdisc::fig2_preset(points > 0 ? points : 101);
      } else {
        if (family.empty()) throw qdisc::ContractViolation("sweep needs --preset or --family");
        spec.family = qdisc::parse_family(family);
      }
      if (!preset.empty() && !family.empty() && qdisc::parse_family(family) != spec.family)
        throw qdisc::ContractViolation("--family conflicts with --preset");
      for (const auto& f : fixed) {
        const auto eq = f.find('=');
        if (eq == std::string::npos || eq == 0) throw qdisc::ContractViolation("--fixed expects name=value, got '" + f + "'");
        spec.fixed[f.substr(0, eq)] = parse_value(f.substr(eq + 1));
      }
      if (!axes.empty()) {
        spec.axes.clear();
        for (const auto& a : axes) {
          std::vector<std::string> parts;
          std::stringstream in(a);
          std::string part;
          while (std::getline(in, part, ':')) parts.push_back(part);
          if (parts.size() != 4) throw qdisc::ContractViolation("--axis expects name:start:end:points, got '" + a + "'");
          qdisc::SweepAxis axis;
          axis.name = parts[0];
          axis.start = parse_value(parts[1]);
          axis.end = parse_value(parts[2]);
          axis.points = points > 0 ? points : std::stoi(parts[3]);
          spec.axes.push_back(axis);
        }
      }
      // Parameters named by an explicit axis override preset fixed values.
      for (const auto& axis : spec.axes) spec.fixed.erase(axis.name);
      spec.output_path = out;
      spec.validate();
      qdisc::write_csv(qdisc::run_sweep(spec), out);
      std::cout << "wrote " << out << '\n';
      return 0;
    }

    if (*verify) {
      const qdisc::VerifyReport report = qdisc::run_verification(vopts);
      std::cout << qdisc::format_verify_report(report);
      return report.passed() ? 0 : kExitVerification;
    }
  } catch (const qdisc::StateFileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qdisc::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
