#include "qframe/dynamics_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <lapacke.h>

namespace qframe {

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0))
    throw InvalidArgument("IntegratorConfig: rtol and atol must be > 0");
  if (!(h_min > 0.0) || !(h_min <= h_init) || !(h_init <= h_max))
    throw InvalidArgument("IntegratorConfig: need 0 < h_min <= h_init <= h_max");
  if (!(sample_dt > 0.0)) throw InvalidArgument("IntegratorConfig: sample_dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw InvalidArgument("IntegratorConfig: t_end must be finite and >= 0");
  if (max_steps <= 0) throw InvalidArgument("IntegratorConfig: max_steps must be > 0");
  if (positivity_stride < 0) throw InvalidArgument("IntegratorConfig: positivity_stride must be >= 0");
}

std::vector<double> IntegratorConfig::sample_times(double t0) const {
  std::vector<double> times;
  const double span = t_end - t0;
  const long count = static_cast<long>(std::floor(span / sample_dt + 1e-9));
  times.reserve(count + 2);
  for (long k = 0; k <= count; ++k) times.push_back(t0 + k * sample_dt);
  if (t_end - times.back() > 1e-9 * std::max(1.0, sample_dt)) times.push_back(t_end);
  return times;
}

namespace {

// Complex kernels on raw doubles; the compiler vectorizes these, while
// Eigen's path for a runtime complex scalar times a block does not.
inline void caxpy(cplx s, const cplx* x, cplx* y, int len) {
  const double a = s.real(), b = s.imag();
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (int i = 0; i < len; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    yd[2 * i] += a * xr - b * xi;
    yd[2 * i + 1] += a * xi + b * xr;
  }
}

// y = (diag + lower shift + upper shift) x, lower[0] and upper[len-1] unused
inline void tridiag_apply(const cplx* dg, const cplx* lo, const cplx* up, const cplx* x, cplx* y,
                          int len, bool accumulate) {
  const double* d = reinterpret_cast<const double*>(dg);
  const double* l = reinterpret_cast<const double*>(lo);
  const double* u = reinterpret_cast<const double*>(up);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (int i = 0; i < len; ++i) {
    double re = d[2 * i] * xd[2 * i] - d[2 * i + 1] * xd[2 * i + 1];
    double im = d[2 * i] * xd[2 * i + 1] + d[2 * i + 1] * xd[2 * i];
    if (i > 0) {
      re += l[2 * i] * xd[2 * i - 2] - l[2 * i + 1] * xd[2 * i - 1];
      im += l[2 * i] * xd[2 * i - 1] + l[2 * i + 1] * xd[2 * i - 2];
    }
    if (i + 1 < len) {
      re += u[2 * i] * xd[2 * i + 2] - u[2 * i + 1] * xd[2 * i + 3];
      im += u[2 * i] * xd[2 * i + 3] + u[2 * i + 1] * xd[2 * i + 2];
    }
    if (accumulate) {
      yd[2 * i] += re;
      yd[2 * i + 1] += im;
    } else {
      yd[2 * i] = re;
      yd[2 * i + 1] = im;
    }
  }
}

double reduced_qubit_expectation(const Eigen::Ref<const Matrix>& rho, const Matrix& op, int q,
                                 int n) {
  cplx acc{};
  for (int m = 0; m < q; ++m)
    for (int k = 0; k < q; ++k) {
      const cplx w = op(m, k);
      if (w == cplx{}) continue;
      acc += w * rho.block(k * n, m * n, n, n).trace();
    }
  return acc.real();
}

SampleRow make_row(const Eigen::Ref<const Matrix>& rho, cplx alpha, double t,
                   const SystemModel& model, const DriveSpec& drive, const Matrix* occupation) {
  const CavityMoments mom = cavity_moments(rho, model.trunc);
  const LabValues lab = to_lab(mom, alpha, t, drive.omega_d);
  SampleRow row;
  row.t = t;
  row.kappa_t = model.kappa * t;
  row.alpha = alpha;
  row.photon_number = lab.photon_number;
  row.real_quadrature = lab.real_quadrature;
  row.abs_c_u = std::abs(mom.c_u);
  if (occupation)
    row.transmon_occupation =
        reduced_qubit_expectation(rho, *occupation, model.trunc.q_dim, model.trunc.cavity_dim());
  row.trace_error = std::abs(rho.trace() - 1.0);
  return row;
}

double min_eigenvalue(Matrix rho) {
  const int n = static_cast<int>(rho.rows());
  if (n == 0) return 0.0;
  RealVector w(n);
  const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n,
                                  reinterpret_cast<lapack_complex_double*>(rho.data()), n, w.data());
  if (info != 0) return std::numeric_limits<double>::quiet_NaN();
  return w.minCoeff();
}

}  // namespace

LiouvilleKernel::LiouvilleKernel(const SystemModel& model, const DriveSpec& drive, FrameMode mode,
                                 bool rotating)
    : model_(model),
      drive_(drive),
      mode_(mode),
      q_(model.trunc.q_dim),
      n_(model.trunc.cavity_dim()),
      d_(model.trunc.dim()) {
  model_.validate();
  drive_.validate();
  bool h_diagonal = true;
  for (int k = 0; k < q_; ++k)
    for (int m = 0; m < q_; ++m)
      if (m != k && model_.h_q(m, k) != cplx{}) h_diagonal = false;
  omega_r_ = rotating ? drive_.omega_d : 0.0;
  qubit_ip_ = rotating && h_diagonal;
  energies_ = RealVector::Zero(q_);
  if (qubit_ip_) energies_ = model_.h_q.diagonal().real();

  // column-major order so a_entries_ sharing a source block are adjacent
  for (int k = 0; k < q_; ++k)
    for (int m = 0; m < q_; ++m) {
      if (m == k) continue;
      if (model_.h_q(m, k) != cplx{}) h_entries_.push_back({m, k, model_.h_q(m, k), model_.h_q(m, k)});
      if (model_.coupling.a_q(m, k) != cplx{})
        a_entries_.push_back({m, k, model_.coupling.a_q(m, k), model_.coupling.a_q(m, k)});
    }
  sqrt_up_.resize(n_);
  for (int i = 0; i < n_; ++i) sqrt_up_[i] = std::sqrt(double(i + 1));
  w_.resize(d_, d_);
  y_.resize(n_);
  band_.resize(3 * q_ * n_);
  coupling_band_.assign(3 * n_, cplx{});
  qubit_phase_.resize(q_);
  jump_scale_.resize(d_);
  for (int r = 0; r < d_; ++r) jump_scale_(r) = (r % n_) + 1 < n_ ? sqrt_up_[r % n_] : 0.0;
}

// rho~ = U rho U^dag with U = exp(i t H_0), H_0 = diag(h_q) (x) I + omega_r I (x) n
void LiouvilleKernel::rotate(double t, cplx* rho, bool into) const {
  if (omega_r_ == 0.0 && !qubit_ip_) return;
  const int n = n_, d = d_;
  Vector f(d);
  for (int m = 0; m < q_; ++m)
    for (int i = 0; i < n; ++i) {
      const double phase = (energies_(m) + omega_r_ * i) * t;
      f(m * n + i) = into ? std::polar(1.0, phase) : std::polar(1.0, -phase);
    }
  Eigen::Map<Matrix> r(rho, d, d);
  r = f.asDiagonal() * r * f.conjugate().asDiagonal();
}

void LiouvilleKernel::apply(double t, const cplx* rho_ptr, cplx alpha, cplx* drho_ptr,
                            cplx& dalpha) {
  const int q = q_, n = n_, d = d_;
  Eigen::Map<const Matrix> rho(rho_ptr, d, d);
  Eigen::Map<Matrix> drho(drho_ptr, d, d);
  const double wc = model_.omega_c;
  const double kappa = model_.kappa;
  const cplx u = model_.coupling.u;

  // In the rotating variables c -> c e^{-i omega_r t} and
  // a_mk -> a_mk e^{i (E_m - E_k) t}; both phases are 1 when not rotating.
  const cplx cav_phase = std::polar(1.0, omega_r_ * t);
  for (int m = 0; m < q; ++m) qubit_phase_[m] = std::polar(1.0, energies_(m) * t);
  auto a_at = [&](int m, int k, cplx value) {
    return value * qubit_phase_[m] * std::conj(qubit_phase_[k]);
  };

  cplx c_u{};
  for (int m = 0; m < q; ++m)
    for (int i = 0; i + 1 < n; ++i) c_u += sqrt_up_[i] * rho(m * n + i + 1, m * n + i);
  c_u *= std::conj(cav_phase);
  cplx a_u{};
  for (int m = 0; m < q; ++m)
    for (int k = 0; k < q; ++k) {
      const cplx a = model_.coupling.a_q(m, k);
      if (a != cplx{}) a_u += a_at(m, k, a) * rho.block(k * n, m * n, n, n).trace();
    }

  cplx alpha_eff{};
  cplx mu{};
  switch (mode_) {
    case FrameMode::lab:
      mu = drive_.field_at(t);
      dalpha = 0.0;
      break;
    case FrameMode::p_frame:
      alpha_eff = alpha;
      dalpha = p_alpha_rhs(alpha, drive_, wc, kappa, t);
      mu = -kI * dalpha + wc * alpha + drive_.field_at(t) - kI * (0.5 * kappa) * alpha;
      break;
    case FrameMode::q_frame:
      alpha_eff = alpha;
      dalpha = q_alpha_rhs(alpha, FrameMoments{c_u, a_u}, model_, drive_, t);
      mu = -u * a_u - cplx{wc, -0.5 * kappa} * c_u;
      break;
  }
  const double shift = 2.0 * (std::conj(u) * alpha_eff).real();
  const cplx mu_r = mu * cav_phase;
  const cplx u_r = u * cav_phase;

  // W = -i (H_eff rho) - (kappa/2) n rho with
  // H_eff = (h_q + shift a_q) (x) I + a_q (x) (u c^dag + u^* c)
  //         + I (x) ((omega_c - omega_r) n + mu c^dag + mu^* c),
  // the diagonal of h_q dropped when the qubit is rotated too.
  // Then d rho/dt = W + W^dag + kappa c rho c^dag.
  //
  // Every term is tridiagonal in the cavity index. Diagonal qubit entries are
  // folded into one tridiagonal band per block; off-diagonal ones are axpys.
  for (int m = 0; m < q; ++m) {
    cplx* dg = band_.data() + 3 * m * n;
    cplx* lo = dg + n;
    cplx* up = lo + n;
    const cplx h_mm = qubit_ip_ ? cplx{} : model_.h_q(m, m);
    const cplx a_mm = model_.coupling.a_q(m, m);
    for (int i = 0; i < n; ++i) {
      dg[i] = cplx{-0.5 * kappa * i, -(wc - omega_r_) * i} - kI * (h_mm + shift * a_mm);
      lo[i] = i > 0 ? -kI * (mu_r + u_r * a_mm) * sqrt_up_[i - 1] : cplx{};
      up[i] = i + 1 < n ? -kI * (std::conj(mu_r) + std::conj(u_r) * a_mm) * sqrt_up_[i] : cplx{};
    }
  }
  // u c^dag + u^* c as a band with zero diagonal
  for (int i = 0; i < n; ++i) {
    if (i > 0) coupling_band_[n + i] = u_r * sqrt_up_[i - 1];
    if (i + 1 < n) coupling_band_[2 * n + i] = std::conj(u_r) * sqrt_up_[i];
  }
  for (auto& e : a_entries_) e.current = a_at(e.row, e.col, e.value);
  cplx* ybuf = y_.data();
  for (int col = 0; col < d; ++col) {
    const cplx* x = rho_ptr + static_cast<std::ptrdiff_t>(col) * d;
    cplx* w = w_.data() + static_cast<std::ptrdiff_t>(col) * d;
    for (int m = 0; m < q; ++m) {
      const cplx* b = band_.data() + 3 * m * n;
      tridiag_apply(b, b + n, b + 2 * n, x + m * n, w + m * n, n, false);
    }
    for (const auto& e : h_entries_) caxpy(-kI * e.value, x + e.col * n, w + e.row * n, n);
    int cached = -1;
    for (const auto& e : a_entries_) {
      if (e.col != cached) {
        tridiag_apply(coupling_band_.data(), coupling_band_.data() + n,
                      coupling_band_.data() + 2 * n, x + e.col * n, ybuf, n, false);
        for (int i = 0; i < n; ++i) ybuf[i] += shift * x[e.col * n + i];
        cached = e.col;
      }
      caxpy(-kI * e.current, ybuf, w + e.row * n, n);
    }
  }

  drho = w_ + w_.adjoint();
  // c rho c^dag: row r picks up row r + 1 within the same qubit block, and
  // the top Fock row of each block gets nothing.
  if (d > 1) {
    const auto sc = jump_scale_.head(d - 1).asDiagonal();
    drho.topLeftCorner(d - 1, d - 1).noalias() +=
        kappa * (sc * rho.bottomRightCorner(d - 1, d - 1) * sc);
  }
}

void LiouvilleKernel::operator()(double t, const Vector& y, Vector& dydt) {
  const std::ptrdiff_t dd = static_cast<std::ptrdiff_t>(d_) * d_;
  dydt.resize(dd + 1);
  cplx dalpha;
  apply(t, y.data(), y(dd), dydt.data(), dalpha);
  dydt(dd) = dalpha;
}

Derivative LiouvilleKernel::evaluate(double t, const Matrix& rho, cplx alpha) {
  if (rho.rows() != d_ || rho.cols() != d_)
    throw InvalidArgument("LiouvilleKernel: state does not match the model truncation");
  Derivative out;
  out.drho.resize(d_, d_);
  apply(t, rho.data(), alpha, out.drho.data(), out.dalpha);
  return out;
}

FrameState prepare_initial(const LabeledSpectrum& spec, int branch, const SystemModel& model,
                           FrameMode mode) {
  if (spec.trunc.dim() != model.trunc.dim() || spec.trunc.n_max != model.trunc.n_max)
    throw InvalidArgument("prepare_initial: spectrum truncation differs from the model");
  const Branch& b = spec.branch(branch);
  if (b.states.empty()) throw InvalidArgument("prepare_initial: labeled state was not stored");
  const Vector& psi = b.states.front();
  FrameState state;
  state.t = 0.0;
  state.rho_u = psi * psi.adjoint();
  state.alpha = 0.0;
  if (mode != FrameMode::q_frame) return state;

  const int q = model.trunc.q_dim;
  const int n = model.trunc.cavity_dim();
  cplx amp{};
  for (int m = 0; m < q; ++m)
    for (int i = 0; i + 1 < n; ++i)
      amp += std::conj(psi(m * n + i)) * std::sqrt(double(i + 1)) * psi(m * n + i + 1);
  state.alpha = amp;
  if (amp != cplx{}) {
    const Matrix disp = displacement_matrix(amp, model.trunc).matrix();
    Matrix rho = disp.adjoint() * state.rho_u * disp;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    state.rho_u = std::move(rho);
  }
  const double residual = std::abs(cavity_moments(state.rho_u, model.trunc).c_u);
  if (residual > 1e-10) {
    std::ostringstream os;
    os << "prepare_initial: <c>_U(0) = " << residual << " after displacement; raise n_max";
    warn(os.str());
  }
  return state;
}

cplx frame_mu(const FrameState& state, const SystemModel& model, const DriveSpec& drive,
              FrameMode mode) {
  switch (mode) {
    case FrameMode::lab:
      return drive.field_at(state.t);
    case FrameMode::p_frame: {
      const double wc = model.omega_c;
      const cplx dalpha = p_alpha_rhs(state.alpha, drive, wc, model.kappa, state.t);
      return -kI * dalpha + wc * state.alpha + drive.field_at(state.t) -
             kI * (0.5 * model.kappa) * state.alpha;
    }
    case FrameMode::q_frame: {
      const FrameMoments mom = frame_moments(state.rho_u, model);
      return -model.coupling.u * mom.a_q - cplx{model.omega_c, -0.5 * model.kappa} * mom.c_u;
    }
  }
  return {};
}

Derivative rhs(const FrameState& state, const SystemModel& model, const DriveSpec& drive,
               FrameMode mode) {
  LiouvilleKernel kernel(model, drive, mode);
  return kernel.evaluate(state.t, state.rho_u, state.alpha);
}

SampleRow observables_at(const FrameState& state, const SystemModel& model,
                         const DriveSpec& drive) {
  if (state.rho_u.rows() != model.trunc.dim() || state.rho_u.cols() != model.trunc.dim())
    throw InvalidArgument("observables_at: state does not match the model truncation");
  std::optional<Matrix> occupation;
  if (model.is_transmon()) occupation = transmon_occupation_operator(model);
  return make_row(state.rho_u, state.alpha, state.t, model, drive,
                  occupation ? &*occupation : nullptr);
}

Trajectory integrate(const FrameState& initial, const SystemModel& model, const DriveSpec& drive,
                     FrameMode mode, const IntegratorConfig& config) {
  model.validate();
  drive.validate();
  config.validate();
  const int d = model.trunc.dim();
  if (initial.rho_u.rows() != d || initial.rho_u.cols() != d)
    throw InvalidArgument("integrate: initial state does not match the model truncation");
  if (config.t_end < initial.t) throw InvalidArgument("integrate: t_end precedes the initial time");

  const std::ptrdiff_t dd = static_cast<std::ptrdiff_t>(d) * d;
  Vector y(dd + 1);
  Eigen::Map<Matrix>(y.data(), d, d) = initial.rho_u;
  y(dd) = mode == FrameMode::lab ? cplx{} : initial.alpha;

  std::optional<Matrix> occupation;
  if (model.is_transmon()) occupation = transmon_occupation_operator(model);
  const Matrix* occ = occupation ? &*occupation : nullptr;

  Trajectory traj;
  auto& diag = traj.diagnostics;
  LiouvilleKernel kernel(model, drive, mode, config.rotating_frame);
  kernel.rotate(initial.t, y.data(), true);
  StepControl control;
  control.rtol = config.rtol;
  control.atol = config.atol;
  control.h_init = config.h_init;
  control.h_min = config.h_min;
  control.h_max = config.h_max;
  control.max_steps = config.max_steps;
  DormandPrince54 stepper(std::ref(kernel), control);

  const auto times = config.sample_times(initial.t);
  traj.samples.reserve(times.size());
  Matrix lab_rho(d, d);
  auto observer = [&](double t, const Vector& state) {
    lab_rho = Eigen::Map<const Matrix>(state.data(), d, d);
    kernel.rotate(t, lab_rho.data(), false);
    SampleRow row = make_row(lab_rho, state(dd), t, model, drive, occ);
    diag.max_abs_c_u = std::max(diag.max_abs_c_u, row.abs_c_u);
    if (config.positivity_stride > 0 && traj.samples.size() % config.positivity_stride == 0)
      diag.min_eigenvalue_sampled = std::min(diag.min_eigenvalue_sampled, min_eigenvalue(lab_rho));
    traj.samples.push_back(row);
  };
  auto guard = [&](double, Vector& state) {
    cplx* p = state.data();
    double defect2 = 0.0;
    constexpr int tile = 32;
    for (int s0 = 0; s0 < d; s0 += tile)
      for (int r0 = 0; r0 <= s0; r0 += tile)
        for (int s = s0; s < std::min(s0 + tile, d); ++s)
          for (int r = r0; r < std::min({r0 + tile, d, s}); ++r) {
            cplx& a = p[r + static_cast<std::ptrdiff_t>(s) * d];
            cplx& b = p[s + static_cast<std::ptrdiff_t>(r) * d];
            const cplx bc = std::conj(b);
            defect2 = std::max(defect2, std::norm(a - bc));
            a = 0.5 * (a + bc);
            b = std::conj(a);
          }
    double tr = 0.0;
    for (int s = 0; s < d; ++s) {
      cplx& x = p[s + static_cast<std::ptrdiff_t>(s) * d];
      defect2 = std::max(defect2, x.imag() * x.imag());
      x = x.real();
      tr += x.real();
    }
    diag.max_hermiticity_defect = std::max(diag.max_hermiticity_defect, std::sqrt(defect2));
    diag.max_trace_drift = std::max(diag.max_trace_drift, std::abs(tr - 1.0));
    Eigen::Map<Eigen::VectorXd>(reinterpret_cast<double*>(p), 2 * dd) /= tr;
  };

  const StepOutcome outcome = stepper.integrate(y, initial.t, config.t_end, times, observer, guard);
  const auto& stats = stepper.stats();
  diag.accepted = stats.accepted;
  diag.rejected = stats.rejected;
  diag.rhs_evals = stats.rhs_evals;
  diag.final_time = stepper.time();
  if (outcome != StepOutcome::finished) {
    diag.aborted = true;
    std::ostringstream os;
    os << (outcome == StepOutcome::step_underflow ? "step size fell below h_min"
                                                  : "step budget exhausted")
       << " at t = " << stepper.time() << " (kappa t = " << model.kappa * stepper.time() << ")";
    diag.message = os.str();
  }

  traj.final_state.rho_u = Eigen::Map<const Matrix>(y.data(), d, d);
  kernel.rotate(stepper.time(), traj.final_state.rho_u.data(), false);
  traj.final_state.alpha = y(dd);
  traj.final_state.t = stepper.time();
  diag.min_eigenvalue_final = min_eigenvalue(traj.final_state.rho_u);
  diag.min_eigenvalue_sampled = std::min(diag.min_eigenvalue_sampled, diag.min_eigenvalue_final);
  return traj;
}

}  // namespace qframe
