#pragma once

// Explicit Dormand-Prince 5(4) integrator with FSAL, the standard fourth-order
// continuous extension for dense output, and a PI step-size controller.

#include <functional>
#include <span>
#include <string>

#include "qframe/types.hpp"

namespace qframe {

struct StepControl {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_init = 1e-3;
  double h_min = 1e-12;
  double h_max = 1.0;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double beta = 0.04;  ///< PI memory exponent; 0 gives the plain I controller
  long max_steps = 200'000'000;

  void validate() const;
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
  double last_h = 0.0;
};

enum class StepOutcome { finished, step_underflow, max_steps };

class DormandPrince54 {
 public:
  using Rhs = std::function<void(double t, const Vector& y, Vector& dydt)>;
  /// Receives the state at each requested output time.
  using Observer = std::function<void(double t, const Vector& y)>;
  /// Runs after every accepted step and may project y in place.
  using StepHook = std::function<void(double t, Vector& y)>;

  DormandPrince54(Rhs rhs, StepControl control);

  /// Advance y from t0 to t1. `sample_times` must be ascending and lie in
  /// [t0, t1]; each is reported once through `observer`.
  StepOutcome integrate(Vector& y, double t0, double t1, std::span<const double> sample_times,
                        const Observer& observer, const StepHook& hook = {});

  const StepStats& stats() const { return stats_; }
  double time() const { return t_; }

  /// Weighted RMS norm over real and imaginary parts.
  static double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double rtol,
                           double atol);

 private:
  void dense_output(double theta, Vector& out) const;

  Rhs rhs_;
  StepControl control_;
  StepStats stats_;
  double t_ = 0.0;
  double h_ = 0.0;
  Vector k1_, k2_, k3_, k4_, k5_, k6_, k7_, y_stage_, y_new_, err_;
  Vector y_old_, dense_diff_, dense_bspl_, dense_5_;
};

}  // namespace qframe
