#pragma once

// Joint spectrum of H_qc, branch labeling (p~, n~) by recursive largest
// overlap, and the dispersive quantities derived from the labeled energies.

#include <optional>
#include <string>
#include <vector>

#include "qframe/device_models.hpp"

namespace qframe {

inline constexpr int kDefaultDenseCeiling = 6000;

/// Full eigendecomposition of H_qc, ascending energies.
///
/// When H_qc is real up to a diagonal phase gauge on the cavity Fock index
/// (true for both built-in devices) the vectors are stored real together with
/// the gauge, which halves memory and lets LAPACK use the real solver.
class Eigenpairs {
 public:
  Eigenpairs(RealVector energies, RealMatrix real_vectors, Vector gauge);
  Eigenpairs(RealVector energies, Matrix complex_vectors);

  int size() const { return static_cast<int>(energies_.size()); }
  int dim() const;
  const RealVector& energies() const { return energies_; }
  bool is_real() const { return real_; }

  Vector vector(int k) const;
  /// Amplitudes <v_k|s> for every eigenvector.
  Vector project(const Vector& s) const;

 private:
  RealVector energies_;
  bool real_;
  RealMatrix real_vectors_;
  Vector gauge_;
  Matrix complex_vectors_;
};

Eigenpairs diagonalize_joint(const SystemModel& model, int max_dim = kDefaultDenseCeiling);

struct Branch {
  int p = 0;
  std::vector<int> eig_index;
  std::vector<double> energy;               ///< epsilon_{p,n}
  std::vector<double> overlap;              ///< squared normalized overlap used for label n
  std::vector<double> photon_number;        ///< <c^dag c> in the labeled state
  std::vector<double> transmon_occupation;  ///< <N_t> in the labeled state
  std::vector<Vector> states;               ///< labeled vectors, first `states.size()` n values
  int n_reliable = -1;                      ///< labels 0..n_reliable all have overlap > threshold

  int size() const { return static_cast<int>(energy.size()); }
};

struct LabelOptions {
  int branches = 2;
  double threshold = 0.5;
  double seed_tie = 1e-6;
  /// Labeled vectors kept per branch (n = 0 .. keep_states-1); -1 keeps all.
  int keep_states = 2;
};

struct LabeledSpectrum {
  TruncationSpec trunc;
  bool transmon = false;
  std::vector<Branch> branches;

  /// Throws InvalidArgument when branch p was not labeled.
  const Branch& branch(int p) const;
};

LabeledSpectrum label_branches(const Eigenpairs& eig, const SystemModel& model,
                               const LabelOptions& options = {});

/// Convenience: diagonalize and label in one go.
LabeledSpectrum labeled_spectrum(const SystemModel& model, const LabelOptions& options = {},
                                 int max_dim = kDefaultDenseCeiling);

/// epsilon_{p,n+1} - epsilon_{p,n} for n < n_reliable.
std::vector<double> cavity_frequency_curve(const LabeledSpectrum& spec, int p);

struct DispersiveQuantities {
  double omega_c_ren = 0.0;
  double chi = 0.0;
};
DispersiveQuantities dispersive_quantities(const LabeledSpectrum& spec);

struct PerturbativeEstimates {
  double omega_q = 0.0;           ///< qubit frequency fed into the formulas
  double omega_c_ren_pert = 0.0;  ///< omega'_{c,p}
  double chi_pert = 0.0;          ///< chi_p
  double n_crit = 0.0;            ///< +inf when g == 0
  bool n_crit_unbounded() const;
};
PerturbativeEstimates perturbative_estimates(const SystemModel& model);

struct DispersiveSummary {
  DispersiveQuantities numeric;
  PerturbativeEstimates perturbative;
};

}  // namespace qframe
