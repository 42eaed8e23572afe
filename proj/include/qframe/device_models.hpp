#pragma once

// Qubit-cavity device Hamiltonians. Energies are in units of hbar*omega_c and
// rates in units of omega_c; omega_c itself is 1 unless a caller overrides it.

#include <optional>
#include <variant>

#include "qframe/fock_algebra.hpp"

namespace qframe {

struct TlsParams {
  double omega_q = 0.75;
  double g = 3.0e-2;
  void validate() const;
};

struct TransmonParams {
  double e_c = 5.0e-2;
  double e_j = 1.6;
  double g = 3.0e-2;
  double n_g = 0.0;
  int charge_cutoff = 10;
  /// Nominal qubit frequency for the perturbative formulas. When unset the
  /// computed g-e gap of the charge-basis Hamiltonian is used.
  std::optional<double> omega_q_ref;
  void validate() const;
};

/// H_g = a_q (x) (u c^dag + u^* c).
struct QubitLinearCoupling {
  Matrix a_q;
  cplx u;
};

struct SystemModel {
  std::variant<TlsParams, TransmonParams> params;
  Matrix h_q;
  QubitLinearCoupling coupling;
  double omega_c = 1.0;
  double kappa = 0.0;
  TruncationSpec trunc;

  bool is_transmon() const { return std::holds_alternative<TransmonParams>(params); }
  void validate() const;
};

SystemModel build_tls(const TlsParams& params, const TruncationSpec& trunc, double kappa);

/// Charge-basis transmon on 2 * charge_cutoff + 1 states |-N>..|N>. The
/// truncation's q_dim is overwritten to match.
SystemModel build_transmon(const TransmonParams& params, TruncationSpec trunc, double kappa);

/// Charge-basis matrix 4 E_C (n - N_g)^2 - (E_J / 2)(|n><n+1| + h.c.).
Matrix transmon_hamiltonian(const TransmonParams& params);

/// Rewrite the model in the eigenbasis of h_q keeping the lowest `levels`
/// eigenstates. h_q becomes diagonal and a_q is projected. Used to shrink the
/// qubit factor for long dynamics runs.
SystemModel project_qubit(const SystemModel& model, int levels);

/// Same model at a different cavity truncation.
SystemModel with_truncation(const SystemModel& model, int n_max);

CompositeOperator coupling_operator(const SystemModel& model);

/// H_qc = H_q + H_g + omega_c c^dag c.
CompositeOperator joint_hamiltonian(const SystemModel& model);

/// D^dag(alpha) H_g D(alpha) = H_g + 2 Re(u^* alpha) (a_q (x) I), exact.
CompositeOperator displaced_coupling(const SystemModel& model, cplx alpha);

/// Qubit Hamiltonian eigen-decomposition, ascending.
struct QubitEigenbasis {
  RealVector energies;
  Matrix vectors;  ///< columns are |l>_q in the model's qubit basis
};
QubitEigenbasis qubit_eigenbasis(const SystemModel& model);

/// N_t = sum_l l |l><l| in the model's qubit basis.
Matrix transmon_occupation_operator(const SystemModel& model);

}  // namespace qframe
