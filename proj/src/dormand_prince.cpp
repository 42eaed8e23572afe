#include "qframe/dormand_prince.hpp"

#include <algorithm>
#include <cmath>

namespace qframe {
namespace {

// Butcher tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Fifth-order minus embedded fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// All tableau weights are real, so stage combinations run on the
// interleaved real view of the complex state.
Eigen::Map<Eigen::VectorXd> re(Vector& v) {
  return {reinterpret_cast<double*>(v.data()), 2 * v.size()};
}
Eigen::Map<const Eigen::VectorXd> re(const Vector& v) {
  return {reinterpret_cast<const double*>(v.data()), 2 * v.size()};
}

}  // namespace

void StepControl::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw InvalidArgument("StepControl: tolerances must be > 0");
  if (!(h_min > 0.0) || !(h_min <= h_init) || !(h_init <= h_max))
    throw InvalidArgument("StepControl: need 0 < h_min <= h_init <= h_max");
  if (!(safety > 0.0 && safety < 1.0)) throw InvalidArgument("StepControl: safety in (0, 1)");
  if (!(min_factor > 0.0 && min_factor < 1.0 && max_factor > 1.0))
    throw InvalidArgument("StepControl: growth clamp must straddle 1");
  if (max_steps <= 0) throw InvalidArgument("StepControl: max_steps must be > 0");
}

DormandPrince54::DormandPrince54(Rhs rhs, StepControl control)
    : rhs_(std::move(rhs)), control_(control) {
  control_.validate();
}

double DormandPrince54::error_norm(const Vector& err, const Vector& y0, const Vector& y1,
                                   double rtol, double atol) {
  const Eigen::Index n = err.size();
  if (n == 0) return 0.0;
  const auto e = re(err).array();
  const auto scale = atol + rtol * re(y0).array().abs().max(re(y1).array().abs());
  return std::sqrt((e / scale).square().sum() / (2.0 * static_cast<double>(n)));
}

void DormandPrince54::dense_output(double theta, Vector& out) const {
  const double theta1 = 1.0 - theta;
  // y_old + theta (diff + theta1 (bspl + theta ((diff - h k7 - bspl) + theta1 dense5)))
  out.resize(y_old_.size());
  re(out) = re(y_old_) +
            theta * (re(dense_diff_) +
                     theta1 * (re(dense_bspl_) +
                               theta * ((re(dense_diff_) - h_ * re(k7_) - re(dense_bspl_)) +
                                        theta1 * re(dense_5_))));
}

StepOutcome DormandPrince54::integrate(Vector& y, double t0, double t1,
                                       std::span<const double> sample_times,
                                       const Observer& observer, const StepHook& hook) {
  const Eigen::Index n = y.size();
  for (Vector* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &y_stage_, &y_new_, &err_})
    v->resize(n);

  t_ = t0;
  std::size_t next_sample = 0;
  auto emit_exact = [&](double t, const Vector& state) {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
      if (observer) observer(sample_times[next_sample], state);
      ++next_sample;
    }
  };
  emit_exact(t_, y);
  if (t1 <= t0) return StepOutcome::finished;

  rhs_(t_, y, k1_);
  ++stats_.rhs_evals;
  double h = std::min(control_.h_init, t1 - t0);
  double err_old = 1e-4;
  bool last_rejected = false;
  const double expo = 0.2 - 0.75 * control_.beta;

  while (t_ < t1) {
    if (stats_.accepted + stats_.rejected >= control_.max_steps) return StepOutcome::max_steps;
    if (h < control_.h_min) return StepOutcome::step_underflow;
    const bool final_step = t_ + h >= t1;
    if (final_step) h = t1 - t_;

    const auto Y = re(y);
    const auto K1 = re(k1_), K2 = re(k2_), K3 = re(k3_), K4 = re(k4_), K5 = re(k5_),
               K6 = re(k6_), K7 = re(k7_);
    auto S = re(y_stage_);
    S = Y + (h * a21) * K1;
    rhs_(t_ + c2 * h, y_stage_, k2_);
    S = Y + h * (a31 * K1 + a32 * K2);
    rhs_(t_ + c3 * h, y_stage_, k3_);
    S = Y + h * (a41 * K1 + a42 * K2 + a43 * K3);
    rhs_(t_ + c4 * h, y_stage_, k4_);
    S = Y + h * (a51 * K1 + a52 * K2 + a53 * K3 + a54 * K4);
    rhs_(t_ + c5 * h, y_stage_, k5_);
    S = Y + h * (a61 * K1 + a62 * K2 + a63 * K3 + a64 * K4 + a65 * K5);
    rhs_(t_ + h, y_stage_, k6_);
    re(y_new_) = Y + h * (a71 * K1 + a73 * K3 + a74 * K4 + a75 * K5 + a76 * K6);
    rhs_(t_ + h, y_new_, k7_);
    stats_.rhs_evals += 6;

    re(err_) = h * (e1 * K1 + e3 * K3 + e4 * K4 + e5 * K5 + e6 * K6 + e7 * K7);
    double err = error_norm(err_, y, y_new_, control_.rtol, control_.atol);
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      const double t_new = final_step ? t1 : t_ + h;
      if (next_sample < sample_times.size() && sample_times[next_sample] < t_new) {
        h_ = h;
        y_old_ = y;
        dense_diff_.resize(n);
        dense_bspl_.resize(n);
        dense_5_.resize(n);
        re(dense_diff_) = re(y_new_) - re(y);
        re(dense_bspl_) = h * re(k1_) - re(dense_diff_);
        re(dense_5_) = h * (d1 * re(k1_) + d3 * re(k3_) + d4 * re(k4_) + d5 * re(k5_) +
                            d6 * re(k6_) + d7 * re(k7_));
        Vector interp;
        while (next_sample < sample_times.size() && sample_times[next_sample] < t_new) {
          const double ts = sample_times[next_sample];
          dense_output((ts - t_) / h, interp);
          if (observer) observer(ts, interp);
          ++next_sample;
        }
      }
      y.swap(y_new_);
      k1_.swap(k7_);
      t_ = t_new;
      ++stats_.accepted;
      stats_.last_h = h;
      if (hook) hook(t_, y);
      emit_exact(t_, y);

      double factor = control_.safety * std::pow(std::max(err, 1e-10), -expo) *
                      std::pow(err_old, control_.beta);
      factor = std::clamp(factor, control_.min_factor, control_.max_factor);
      if (last_rejected) factor = std::min(factor, 1.0);
      err_old = std::max(err, 1e-4);
      h = std::min(h * factor, control_.h_max);
      last_rejected = false;
    } else {
      ++stats_.rejected;
      const double factor =
          std::max(control_.min_factor, control_.safety * std::pow(err, -0.2));
      h *= factor;
      last_rejected = true;
    }
  }
  return StepOutcome::finished;
}

}  // namespace qframe
