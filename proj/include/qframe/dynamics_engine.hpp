#pragma once

// Coupled evolution of the transformed-frame density matrix rho_U and the
// displacement alpha(t):
//
//   d rho_U/dt = -i [H_q + D^dag(alpha) H_g D(alpha) + omega_c c^dag c, rho_U]
//                + kappa (c rho_U c^dag - {c^dag c, rho_U} / 2)
//                + i mu [rho_U, c^dag] + i mu^* [rho_U, c]
//
// where mu(t) is the residual c^dag coefficient left by the chosen frame.
// The density-matrix form carries the same information as the table of
// expectation values <|m,i><n,j|>_U (it is its transpose).

#include <optional>
#include <string>
#include <vector>

#include "qframe/dormand_prince.hpp"
#include "qframe/drive_frames.hpp"
#include "qframe/spectrum_lab.hpp"

namespace qframe {

struct FrameState {
  Matrix rho_u;
  cplx alpha;
  double t = 0.0;
};

struct IntegratorConfig {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_init = 1e-3;
  double h_min = 1e-10;
  double h_max = 1.0;
  double t_end = 0.0;
  double sample_dt = 1.0;
  long max_steps = 200'000'000;
  /// Integrate in variables co-rotating with the free evolution (exact change
  /// of variables, outputs are mapped back).
  bool rotating_frame = true;
  /// Smallest eigenvalue of rho_U is checked every this many samples (0: only
  /// at the end). Reported, never enforced.
  int positivity_stride = 1;

  void validate() const;
  std::vector<double> sample_times(double t0 = 0.0) const;
};

struct SampleRow {
  double t = 0.0;
  double kappa_t = 0.0;
  cplx alpha;
  double photon_number = 0.0;
  double real_quadrature = 0.0;
  double abs_c_u = 0.0;
  std::optional<double> transmon_occupation;
  double trace_error = 0.0;
};

struct TrajectoryDiagnostics {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
  double max_abs_c_u = 0.0;
  double max_trace_drift = 0.0;         ///< pre-guard |Tr rho - 1| after any accepted step
  double max_hermiticity_defect = 0.0;  ///< pre-guard max |rho - rho^dag|
  double min_eigenvalue_final = 0.0;
  double min_eigenvalue_sampled = 0.0;  ///< over the checked samples and the final state
  double final_time = 0.0;
  bool aborted = false;
  std::string message;
};

struct Trajectory {
  std::vector<SampleRow> samples;
  TrajectoryDiagnostics diagnostics;
  FrameState final_state;
};

struct Derivative {
  Matrix drho;
  cplx dalpha;
};

/// Initial state from the labeled |p~, 0~>. In q_frame alpha(0) = <c> of that
/// state and rho_U = D^dag rho D so that <c>_U(0) = 0.
FrameState prepare_initial(const LabeledSpectrum& spec, int branch, const SystemModel& model,
                           FrameMode mode);

/// Residual drive coefficient mu(t) for the given frame.
cplx frame_mu(const FrameState& state, const SystemModel& model, const DriveSpec& drive,
              FrameMode mode);

Derivative rhs(const FrameState& state, const SystemModel& model, const DriveSpec& drive,
               FrameMode mode);

Trajectory integrate(const FrameState& initial, const SystemModel& model, const DriveSpec& drive,
                     FrameMode mode, const IntegratorConfig& config);

SampleRow observables_at(const FrameState& state, const SystemModel& model,
                         const DriveSpec& drive);

/// Evaluates the generator on a flat state [vec(rho_U); alpha] without
/// allocating. One instance per integration; not thread-safe.
///
/// With `rotating` set the state is rho~ = U rho_U U^dag, U = exp(i t H_0),
/// where H_0 rotates the cavity at omega_d and, when h_q is diagonal, each
/// qubit level at its own energy. This removes the free phase winding that
/// otherwise caps the explicit step size; rotate() maps states across.
class LiouvilleKernel {
 public:
  LiouvilleKernel(const SystemModel& model, const DriveSpec& drive, FrameMode mode,
                  bool rotating = false);

  void operator()(double t, const Vector& y, Vector& dydt);
  Derivative evaluate(double t, const Matrix& rho, cplx alpha);

  int dim() const { return d_; }
  /// In place: into = true maps rho_U(t) to rho~(t), false maps back.
  void rotate(double t, cplx* rho, bool into) const;

 private:
  struct Entry {
    int row;
    int col;
    cplx value;
    cplx current;  ///< value at the current time in the rotating variables
  };

  void apply(double t, const cplx* rho, cplx alpha, cplx* drho, cplx& dalpha);

  SystemModel model_;
  DriveSpec drive_;
  FrameMode mode_;
  int q_, n_, d_;
  double omega_r_ = 0.0;
  bool qubit_ip_ = false;
  RealVector energies_;
  std::vector<cplx> qubit_phase_;
  std::vector<Entry> h_entries_, a_entries_;
  std::vector<double> sqrt_up_;  ///< sqrt(i + 1)
  Matrix w_;
  Vector y_;
  std::vector<cplx> band_, coupling_band_;
  RealVector jump_scale_;
};

}  // namespace qframe
