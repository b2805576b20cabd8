#include "qdisc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <numbers>
#include <set>
#include <thread>

#include "qdisc/families.hpp"

namespace qdisc {

namespace {

const std::set<std::string>& family_parameters(Family f) {
  static const std::set<std::string> three{"lambda0", "lambda1", "lambda2", "lambda3", "lambda4", "phi"};
  static const std::set<std::string> rank2{"p1", "phi", "sin2_phi", "theta1", "theta2"};
  static const std::set<std::string> damping{"alpha_sq", "p", "gamma_t"};
  switch (f) {
    case Family::three_qubit: return three;
    case Family::rank2: return rank2;
    case Family::phase_damping: return damping;
  }
  return rank2;
}

void check_range(const std::string& name, double lo, double hi, double min_allowed, double max_allowed) {
  if (lo < min_allowed || hi > max_allowed)
    throw ContractViolation("sweep: parameter " + name + " outside its domain");
}

void check_domain(const std::string& name, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ContractViolation("sweep: parameter " + name + " is not finite");
  if (name == "p1" || name == "sin2_phi" || name == "alpha_sq" || name == "p") check_range(name, lo, hi, 0.0, 1.0);
  if (name == "gamma_t" || name.rfind("lambda", 0) == 0)
    check_range(name, lo, hi, 0.0, std::numeric_limits<double>::infinity());
}

double param(const std::map<std::string, double>& values, const std::string& name, double fallback) {
  const auto it = values.find(name);
  return it == values.end() ? fallback : it->second;
}

std::vector<double> evaluate(Family family, const std::map<std::string, double>& v) {
  switch (family) {
    case Family::three_qubit: {
      const auto p = ThreeQubitParams::normalized(
          {param(v, "lambda0", 1.0), param(v, "lambda1", 0.0), param(v, "lambda2", 0.0), param(v, "lambda3", 0.0),
           param(v, "lambda4", 0.0)},
          param(v, "phi", 0.0));
      const auto r = three_qubit_report(p, QubitPair::AB, 0).report;
      return {r.discord_povm, *r.eof_ab};
    }
    case Family::rank2: {
      Rank2Params p;
      p.p1 = param(v, "p1", 0.5);
      p.p2 = 1.0 - p.p1;
      p.phi = v.count("sin2_phi") ? std::asin(std::sqrt(v.at("sin2_phi"))) : param(v, "phi", 0.0);
      p.theta1 = param(v, "theta1", 0.0);
      p.theta2 = param(v, "theta2", 0.0);
      const Rank2Report r = rank2_report(p);
      return {r.discord, r.eof_ab};
    }
    case Family::phase_damping: {
      const double alpha_sq = param(v, "alpha_sq", 0.5);
      const auto p = v.count("gamma_t") ? PhaseDampingParams::from_gamma_t(alpha_sq, v.at("gamma_t"))
                                        : PhaseDampingParams{alpha_sq, param(v, "p", 0.0)};
      const auto r = phase_damping_report(p);
      return {r.report.discord_povm, *r.report.eof_ab, r.eta};
    }
  }
  return {};
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "three-qubit") return Family::three_qubit;
  if (name == "rank2") return Family::rank2;
  if (name == "phase-damping") return Family::phase_damping;
  throw ContractViolation("sweep: unknown family '" + name + "' (expected three-qubit, rank2 or phase-damping)");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::three_qubit: return "three-qubit";
    case Family::rank2: return "rank2";
    case Family::phase_damping: return "phase-damping";
  }
  return "unknown";
}

double SweepAxis::value(int i) const {
  if (i == points - 1) return end;
  return start + (end - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

void SweepSpec::validate() const {
  const auto& allowed = family_parameters(family);
  std::set<std::string> seen;
  for (const auto& [name, value] : fixed) {
    if (!allowed.count(name)) throw ContractViolation("sweep: unknown parameter '" + name + "' for family " + to_string(family));
    check_domain(name, value, value);
    seen.insert(name);
  }
  if (axes.empty()) throw ContractViolation("sweep: at least one axis is required");
  for (const auto& axis : axes) {
    if (!allowed.count(axis.name))
      throw ContractViolation("sweep: unknown axis '" + axis.name + "' for family " + to_string(family));
    if (seen.count(axis.name)) throw ContractViolation("sweep: parameter '" + axis.name + "' is both fixed and swept");
    if (axis.points < 2) throw ContractViolation("sweep: axis '" + axis.name + "' needs at least 2 points");
    check_domain(axis.name, std::min(axis.start, axis.end), std::max(axis.start, axis.end));
    seen.insert(axis.name);
  }
  if (seen.count("phi") && seen.count("sin2_phi")) throw ContractViolation("sweep: give either phi or sin2_phi, not both");
  if (seen.count("p") && seen.count("gamma_t")) throw ContractViolation("sweep: give either p or gamma_t, not both");
}

SweepSpec fig1_preset(int points) {
  SweepSpec s;
  s.family = Family::rank2;
  s.fixed = {{"p1", 0.5}, {"theta1", 0.0}, {"theta2", std::numbers::pi / 3.0}};
  s.axes = {SweepAxis{"sin2_phi", 0.0, 1.0, points}};
  return s;
}

SweepSpec fig2_preset(int points) {
  SweepSpec s;
  s.family = Family::phase_damping;
  s.axes = {SweepAxis{"alpha_sq", 0.0, 1.0, points}, SweepAxis{"p", 0.0, 1.0, points}};
  return s;
}

SweepTable run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  SweepTable table;
  for (const auto& axis : spec.axes) table.header.push_back(axis.name);
  table.header.insert(table.header.end(), {"Q_AB", "E_AB"});
  if (spec.family == Family::phase_damping) table.header.push_back("eta");

  std::size_t total = 1;
  for (const auto& axis : spec.axes) total *= static_cast<std::size_t>(axis.points);
  table.rows.resize(total);

  auto run_point = [&](std::size_t flat) {
    std::map<std::string, double> values = spec.fixed;
    std::vector<double> row;
    std::size_t rem = flat;
    std::vector<int> idx(spec.axes.size());
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
      const auto n = static_cast<std::size_t>(spec.axes[k].points);
      idx[k] = static_cast<int>(rem % n);
      rem /= n;
    }
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
      const double v = spec.axes[k].value(idx[k]);
      values[spec.axes[k].name] = v;
      row.push_back(v);
    }
    const auto measures = evaluate(spec.family, values);
    row.insert(row.end(), measures.begin(), measures.end());
    table.rows[flat] = std::move(row);
  };

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, static_cast<int>(std::min<std::size_t>(total, 64)));
  if (n_threads == 1) {
    for (std::size_t i = 0; i < total; ++i) run_point(i);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < total; i += static_cast<std::size_t>(n_threads)) run_point(i);
      });
  }
  return table;
}

std::string format_csv_value(double v) {
  if (v == 0.0) v = 0.0;  // no negative zero in the output
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_csv_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const SweepTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_csv(table);
}

}  // namespace qdisc
