#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdisc/oracle.hpp"

namespace qdisc {

/// How a reported value was obtained. `oracle` values are numerical upper
/// bounds; the other two are exact up to floating point.
enum class Provenance { analytic, duality, oracle };
std::string_view to_string(Provenance p);

/// Route selection for report computations.
///  automatic: closed forms and the purification duality where they apply,
///             numerical search elsewhere.
///  analytic:  closed forms and duality only; UnsupportedShape otherwise.
///  oracle:    numerical search for every minimization.
enum class Method { automatic, analytic, oracle };
std::string_view to_string(Method m);

/// I: projective measurements; II: POVMs.
enum class DiscordVariant { projective, povm };

struct DiscordOptions {
  Method method = Method::automatic;
  SearchConfig search;
  bool with_duality_residual = true;  // two-qubit inputs only
};

struct ConditionalEntropy {
  double value;
  Provenance provenance;
  bool converged;
  std::optional<ProjectiveMeasurement> basis;  // projective argmin when searched
};

/// True when the unmeasured party is a qubit and rank(rho) <= 2, so the
/// unmeasured party and the purifying ancilla form a pair of qubits.
bool duality_applicable(const DensityMatrix& rho_ab, int measured);

/// Wootters EoF of (unmeasured party, purifying ancilla). Equals the POVM
/// conditional entropy. Throws UnsupportedShape outside duality_applicable.
double duality_conditional_entropy(const DensityMatrix& rho_ab, int measured);

/// min over orthonormal bases of the measured party of sum_k p_k S(rho_k).
/// Equals the d-component EoF of (unmeasured party, ancilla).
ConditionalEntropy conditional_entropy_projective(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg = {});

/// POVM conditional entropy: exact through the duality when applicable,
/// otherwise the POVM search bound (provenance oracle).
ConditionalEntropy conditional_entropy_povm(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg = {});

struct CorrelationReport {
  int measured = 0;
  double s_a = 0.0;  // entropy of subsystem 0
  double s_b = 0.0;  // entropy of subsystem 1
  double s_ab = 0.0;
  double mutual_information = 0.0;
  double cond_entropy_projective = 0.0;
  double cond_entropy_povm = 0.0;
  double classical_j_projective = 0.0;
  double classical_j_povm = 0.0;
  double discord_projective = 0.0;  // Q^I
  double discord_povm = 0.0;        // Q^II
  std::optional<double> eof_ab;     // E of the reported pair
  double eof_d_component = 0.0;     // E^[d] of (unmeasured, ancilla), d = measured dim
  double eof_complement = 0.0;      // E of (unmeasured, ancilla)
  std::optional<double> duality_residual;
  Provenance cond_projective_provenance = Provenance::analytic;
  Provenance cond_povm_provenance = Provenance::analytic;
  std::optional<Provenance> eof_provenance;
  Provenance method = Provenance::analytic;  // weakest provenance among the above
  bool converged = true;

  double discord(DiscordVariant v) const { return v == DiscordVariant::projective ? discord_projective : discord_povm; }
  double classical_j(DiscordVariant v) const {
    return v == DiscordVariant::projective ? classical_j_projective : classical_j_povm;
  }

  /// Descriptions of violated report invariants; `search_tol` bounds how far
  /// numerically searched quantities may undercut exact ones.
  std::vector<std::string> invariant_violations(double search_tol = 1e-9) const;
};

/// Both discord variants, EoF and the supporting entropies of a bipartite
/// state with `measured` as the measured party.
CorrelationReport discord(const DensityMatrix& rho_ab, int measured, const DiscordOptions& opts = {});

struct DComponentEof {
  double value;
  bool certified;  // value equals the Wootters EoF exactly
  double wootters;
  double search_value;
};

/// EoF restricted to decompositions with at most d members.
DComponentEof d_component_eof(const DensityMatrix& rho, int d, const SearchConfig& cfg = {});

struct DualityResidual {
  double q_ab;
  double e_ab;
  double q_ac;
  double q_ca;
  double residual;  // |q_ab - e_ab - q_ac + q_ca|
};

/// Trilateral identity Q^II_AB - E(AB) = Q^II_AC - Q^II_CA on the
/// purification of a two-qubit state. Conditional entropies come from the
/// POVM search and E(AB) from Wootters, so the identity is tested rather
/// than assumed.
DualityResidual duality_residual(const DensityMatrix& rho_ab, const SearchConfig& cfg = {});

/// EoF of rho_AB as the C-measured conditional entropy of (qubit side, C) in
/// the purification. Needs a qubit side and rank <= 2; UnsupportedShape
/// otherwise.
double eof_via_conditional_entropy(const DensityMatrix& rho_ab, const SearchConfig& cfg = {});

}  // namespace qdisc
