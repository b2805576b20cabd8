#include "qdisc/discord.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdisc/pair_measures.hpp"

namespace qdisc {

namespace {

void check_bipartite(const DensityMatrix& rho, int measured) {
  if (rho.dims().size() != 2) throw ContractViolation("discord: state must be bipartite");
  if (measured != 0 && measured != 1) throw ContractViolation("discord: measured subsystem must be 0 or 1");
}

Provenance weakest(Provenance a, Provenance b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

// Marginal of (unmeasured, ancilla) in the purification, padded so the
// ancilla is a qubit.
DensityMatrix complement_pair(const DensityMatrix& rho_ab, int measured) {
  const Purification pur = purify(rho_ab);
  const int unmeasured = 1 - measured;
  ComplexMatrix pair = reduced_density(pur.state, {unmeasured, 2});
  const int du = rho_ab.dims()[static_cast<std::size_t>(unmeasured)];
  if (pur.source_rank == 1) {
    ComplexMatrix padded = ComplexMatrix::Zero(2 * du, 2 * du);
    for (int i = 0; i < du; ++i)
      for (int j = 0; j < du; ++j) padded(2 * i, 2 * j) = pair(i, j);
    pair = padded;
  }
  return DensityMatrix({du, 2}, pair);
}

// Sub-cutoff eigenvalues count as zero, matching purify().
bool is_pure(const DensityMatrix& rho) { return numerical_rank(rho) == 1; }

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::duality: return "duality";
    case Provenance::oracle: return "oracle";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::analytic: return "analytic";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

bool duality_applicable(const DensityMatrix& rho_ab, int measured) {
  check_bipartite(rho_ab, measured);
  return rho_ab.dims()[static_cast<std::size_t>(1 - measured)] == 2 && numerical_rank(rho_ab) <= 2;
}

double duality_conditional_entropy(const DensityMatrix& rho_ab, int measured) {
  if (!duality_applicable(rho_ab, measured))
    throw UnsupportedShape("duality route needs a qubit unmeasured party and rank <= 2");
  return eof_from_concurrence(concurrence_two_qubit(complement_pair(rho_ab, measured)));
}

ConditionalEntropy conditional_entropy_projective(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg) {
  check_bipartite(rho_ab, measured);
  const SearchResult r = projective_search(rho_ab, measured, cfg);
  const auto& basis = std::get<ProjectiveMeasurement>(std::get<MeasurementSet>(r.argmin));
  return ConditionalEntropy{std::max(0.0, r.value), Provenance::oracle, r.converged, basis};
}

ConditionalEntropy conditional_entropy_povm(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg) {
  check_bipartite(rho_ab, measured);
  if (duality_applicable(rho_ab, measured))
    return ConditionalEntropy{duality_conditional_entropy(rho_ab, measured), Provenance::duality, true, std::nullopt};
  const SearchResult r = povm_search(rho_ab, measured, cfg);
  return ConditionalEntropy{std::max(0.0, r.value), Provenance::oracle, r.converged, std::nullopt};
}

double eof_via_conditional_entropy(const DensityMatrix& rho_ab, const SearchConfig& cfg) {
  if (rho_ab.dims().size() != 2) throw ContractViolation("eof_via_conditional_entropy: state must be bipartite");
  const int rank = numerical_rank(rho_ab);
  int qubit_side = -1;
  if (rho_ab.dims()[1] == 2)
    qubit_side = 1;
  else if (rho_ab.dims()[0] == 2)
    qubit_side = 0;
  if (qubit_side < 0 || rank > 2)
    throw UnsupportedShape("eof_via_conditional_entropy: needs a qubit party and rank <= 2");

  const Purification pur = purify(rho_ab);
  const DensityMatrix pair = partial_trace(pur.state, {qubit_side, 2});
  if (pur.source_rank == 1) return von_neumann_entropy(partial_trace(pair, {0}));
  // Qubit measured party: projective measurements reach the POVM optimum.
  return std::max(0.0, projective_search(pair, 1, cfg).value);
}

std::vector<std::string> CorrelationReport::invariant_violations(double search_tol) const {
  std::vector<std::string> out;
  auto check = [&](bool ok, const std::string& what, double amount) {
    if (!ok) {
      std::ostringstream msg;
      msg << what << " (by " << amount << ")";
      out.push_back(msg.str());
    }
  };
  const double d1 = std::abs(mutual_information - classical_j_projective - discord_projective);
  check(d1 <= 1e-9, "I != J + Q^I", d1);
  const double d2 = std::abs(mutual_information - classical_j_povm - discord_povm);
  check(d2 <= 1e-9, "I != J + Q^II", d2);
  check(discord_povm <= discord_projective + search_tol, "Q^II > Q^I", discord_povm - discord_projective);
  check(eof_d_component >= eof_complement - search_tol, "E^[d] < E of the complementary pair",
        eof_complement - eof_d_component);
  check(discord_projective >= -search_tol, "Q^I < 0", -discord_projective);
  check(discord_povm >= -search_tol, "Q^II < 0", -discord_povm);
  return out;
}

CorrelationReport discord(const DensityMatrix& rho_ab, int measured, const DiscordOptions& opts) {
  check_bipartite(rho_ab, measured);
  const Method method = opts.method;
  const int dm = rho_ab.dims()[static_cast<std::size_t>(measured)];
  const bool pure = is_pure(rho_ab);
  const bool dual = duality_applicable(rho_ab, measured);

  CorrelationReport r;
  r.measured = measured;
  r.s_a = entropy_bits(partial_trace(rho_ab.matrix(), rho_ab.dims(), {0}));
  r.s_b = entropy_bits(partial_trace(rho_ab.matrix(), rho_ab.dims(), {1}));
  r.s_ab = pure ? 0.0 : entropy_bits(rho_ab.matrix());
  r.mutual_information = r.s_a + r.s_b - r.s_ab;

  // POVM conditional entropy.
  if (pure) {
    r.cond_entropy_povm = 0.0;
    r.cond_povm_provenance = Provenance::analytic;
  } else if (method != Method::oracle && dual) {
    r.cond_entropy_povm = duality_conditional_entropy(rho_ab, measured);
    r.cond_povm_provenance = Provenance::duality;
  } else if (method == Method::analytic) {
    throw UnsupportedShape("analytic route needs a qubit unmeasured party and rank <= 2");
  } else {
    const SearchResult s = povm_search(rho_ab, measured, opts.search);
    r.cond_entropy_povm = std::max(0.0, s.value);
    r.cond_povm_provenance = Provenance::oracle;
    r.converged = r.converged && s.converged;
  }

  // Projective conditional entropy. A qubit measured party reaches the POVM
  // optimum projectively; a measured party of dimension >= 4 realizes every
  // optimal two-qubit decomposition (at most four members).
  if (pure) {
    r.cond_entropy_projective = 0.0;
    r.cond_projective_provenance = Provenance::analytic;
  } else if (method == Method::analytic) {
    if (dm == 3) throw UnsupportedShape("analytic route has no projective closed form for a qutrit measured party");
    r.cond_entropy_projective = r.cond_entropy_povm;
    r.cond_projective_provenance = Provenance::duality;
  } else if (method == Method::automatic && dual && dm >= 4) {
    r.cond_entropy_projective = r.cond_entropy_povm;
    r.cond_projective_provenance = Provenance::duality;
  } else {
    const SearchResult s = projective_search(rho_ab, measured, opts.search);
    r.cond_entropy_projective = std::max(0.0, s.value);
    r.cond_projective_provenance = Provenance::oracle;
    r.converged = r.converged && s.converged;
  }

  const double s_measured = measured == 0 ? r.s_a : r.s_b;
  const double s_other = measured == 0 ? r.s_b : r.s_a;
  r.classical_j_projective = s_other - r.cond_entropy_projective;
  r.classical_j_povm = s_other - r.cond_entropy_povm;
  r.discord_projective = s_measured + r.cond_entropy_projective - r.s_ab;
  r.discord_povm = s_measured + r.cond_entropy_povm - r.s_ab;
  r.eof_d_component = r.cond_entropy_projective;
  r.eof_complement = r.cond_entropy_povm;

  // Entanglement of formation of the pair itself.
  const bool two_qubit = rho_ab.dims() == Dims{2, 2};
  const bool has_qubit_side = rho_ab.dims()[0] == 2 || rho_ab.dims()[1] == 2;
  if (pure) {
    r.eof_ab = r.s_a;
    r.eof_provenance = Provenance::analytic;
  } else if (method == Method::oracle) {
    const int rank = numerical_rank(rho_ab);
    const SearchResult s = ensemble_eof_search(rho_ab, std::max(rank, 4), opts.search);
    r.eof_ab = std::max(0.0, s.value);
    r.eof_provenance = Provenance::oracle;
    r.converged = r.converged && s.converged;
  } else if (two_qubit) {
    r.eof_ab = eof_from_concurrence(concurrence_two_qubit(rho_ab));
    r.eof_provenance = Provenance::analytic;
  } else if (has_qubit_side && numerical_rank(rho_ab) <= 2) {
    r.eof_ab = eof_via_conditional_entropy(rho_ab, opts.search);
    r.eof_provenance = Provenance::duality;
  } else if (method == Method::analytic) {
    throw UnsupportedShape("analytic route has no EoF for this shape");
  }

  if (opts.with_duality_residual && two_qubit && method != Method::analytic)
    r.duality_residual = duality_residual(rho_ab, opts.search).residual;

  r.method = weakest(r.cond_projective_provenance, r.cond_povm_provenance);
  if (r.eof_provenance) r.method = weakest(r.method, *r.eof_provenance);
  return r;
}

DComponentEof d_component_eof(const DensityMatrix& rho, int d, const SearchConfig& cfg) {
  if (rho.dims() != Dims{2, 2}) throw ContractViolation("d_component_eof: state must have dims {2, 2}");
  const int rank = numerical_rank(rho);
  if (d < rank) throw ContractViolation("d_component_eof: d must be >= rank");
  const double wootters = eof_from_concurrence(concurrence_two_qubit(rho));
  if (rank == 1) {
    const double e = entropy_entanglement(purify(rho).state, Bipartition{{0}});
    return DComponentEof{e, true, wootters, e};
  }
  const SearchResult s = ensemble_eof_search(rho, d, cfg);
  // Optimal two-qubit decompositions need at most four members.
  if (d >= 4) return DComponentEof{wootters, true, wootters, s.value};
  return DComponentEof{std::max(s.value, wootters), false, wootters, s.value};
}

DualityResidual duality_residual(const DensityMatrix& rho_ab, const SearchConfig& cfg) {
  if (rho_ab.dims() != Dims{2, 2}) throw ContractViolation("duality_residual: state must have dims {2, 2}");
  const Purification pur = purify(rho_ab);
  const DensityMatrix rho_ac = partial_trace(pur.state, {0, 2});
  const double s_a = entropy_bits(reduced_density(pur.state, {0}));
  const double s_c = entropy_bits(reduced_density(pur.state, {2}));
  const double s_ab = entropy_bits(rho_ab.matrix());
  const double s_ac = entropy_bits(rho_ac.matrix());

  DualityResidual out{};
  out.q_ab = s_a + povm_search(rho_ab, 0, cfg).value - s_ab;
  out.e_ab = eof_from_concurrence(concurrence_two_qubit(rho_ab));
  out.q_ac = s_a + povm_search(rho_ac, 0, cfg).value - s_ac;
  out.q_ca = s_c + povm_search(rho_ac, 1, cfg).value - s_ac;
  out.residual = std::abs(out.q_ab - out.e_ab - out.q_ac + out.q_ca);
  return out;
}

}  // namespace qdisc
