#include "qframe/drive_frames.hpp"

#include <cmath>
#include <string>

namespace qframe {

void DriveSpec::validate() const {
  if (!(amplitude >= 0.0)) throw InvalidArgument("DriveSpec: amplitude must be >= 0");
  if (!(omega_d > 0.0)) throw InvalidArgument("DriveSpec: omega_d must be > 0");
  if (!std::isfinite(phase)) throw InvalidArgument("DriveSpec: phase must be finite");
}

cplx DriveSpec::field_at(double t) const {
  switch (kind) {
    case DriveKind::monochromatic:
      return amplitude * std::polar(1.0, phase - omega_d * t);
  }
  return {};
}

cplx field_at(const DriveSpec& drive, double t) { return drive.field_at(t); }

std::string_view to_string(FrameMode mode) {
  switch (mode) {
    case FrameMode::lab: return "lab";
    case FrameMode::p_frame: return "p_frame";
    case FrameMode::q_frame: return "q_frame";
  }
  return "unknown";
}

FrameMode frame_mode_from_string(std::string_view name) {
  if (name == "lab") return FrameMode::lab;
  if (name == "p_frame" || name == "p") return FrameMode::p_frame;
  if (name == "q_frame" || name == "q") return FrameMode::q_frame;
  throw InvalidArgument("unknown frame mode '" + std::string(name) + "'");
}

cplx p_displacement(const DriveSpec& drive, double omega_c, double kappa, double t) {
  const double detuning = drive.omega_d - omega_c;
  const cplx num = kI * drive.amplitude * std::polar(1.0, drive.phase) *
                   cplx{0.5 * kappa, detuning};
  const double den = 0.25 * kappa * kappa + detuning * detuning;
  const cplx transient = std::exp(cplx{-0.5 * kappa * t, -omega_c * t});
  const cplx steady = std::polar(1.0, -drive.omega_d * t);
  return num / den * (transient - steady);
}

cplx p_alpha_rhs(cplx alpha, const DriveSpec& drive, double omega_c, double kappa, double t) {
  return -cplx{0.5 * kappa, omega_c} * alpha - kI * drive.field_at(t);
}

FrameMoments frame_moments(const Eigen::Ref<const Matrix>& rho_u, const SystemModel& model) {
  const int q = model.trunc.q_dim;
  const int n = model.trunc.cavity_dim();
  if (rho_u.rows() != q * n || rho_u.cols() != q * n)
    throw InvalidArgument("frame_moments: state does not match the model truncation");
  FrameMoments out{};
  // Tr(rho c) = sum_r sqrt(i_r + 1) rho(r + 1, r) within each qubit block.
  for (int m = 0; m < q; ++m)
    for (int i = 0; i + 1 < n; ++i)
      out.c_u += std::sqrt(double(i + 1)) * rho_u(m * n + i + 1, m * n + i);
  // Reduced qubit state rho_q(k, m) = sum_i rho(k n + i, m n + i).
  Matrix rho_q(q, q);
  for (int k = 0; k < q; ++k)
    for (int m = 0; m < q; ++m) rho_q(k, m) = rho_u.block(k * n, m * n, n, n).trace();
  out.a_q = (model.coupling.a_q * rho_q).trace();
  return out;
}

cplx q_alpha_rhs(cplx alpha, const FrameMoments& moments, const SystemModel& model,
                 const DriveSpec& drive, double t) {
  const cplx commutator = -model.coupling.u * moments.a_q;
  return kI * commutator - cplx{0.5 * model.kappa, model.omega_c} * (moments.c_u + alpha) -
         kI * drive.field_at(t);
}

cplx q_alpha_rhs(cplx alpha, const Matrix& rho_u, const SystemModel& model,
                 const DriveSpec& drive, double t) {
  return q_alpha_rhs(alpha, frame_moments(rho_u, model), model, drive, t);
}

CavityMoments cavity_moments(const Eigen::Ref<const Matrix>& rho_u, const TruncationSpec& trunc) {
  const int q = trunc.q_dim;
  const int n = trunc.cavity_dim();
  if (rho_u.rows() != q * n || rho_u.cols() != q * n)
    throw InvalidArgument("cavity_moments: state does not match the truncation");
  CavityMoments out{};
  for (int m = 0; m < q; ++m) {
    for (int i = 0; i < n; ++i) {
      out.n_u += i * rho_u(m * n + i, m * n + i).real();
      if (i + 1 < n) out.c_u += std::sqrt(double(i + 1)) * rho_u(m * n + i + 1, m * n + i);
    }
  }
  return out;
}

LabValues to_lab(const CavityMoments& moments, cplx alpha, double t, double omega_d) {
  LabValues out;
  out.amplitude = moments.c_u + alpha;
  out.photon_number =
      moments.n_u + 2.0 * (std::conj(alpha) * moments.c_u).real() + std::norm(alpha);
  out.real_quadrature = 2.0 * (out.amplitude * std::polar(1.0, omega_d * t)).real();
  return out;
}

LabValues to_lab(const Matrix& rho_u, const TruncationSpec& trunc, cplx alpha, double t,
                 double omega_d) {
  return to_lab(cavity_moments(rho_u, trunc), alpha, t, omega_d);
}

cplx to_lab(std::string_view kind, const Matrix& rho_u, const TruncationSpec& trunc, cplx alpha,
            double t, double omega_d) {
  const LabValues v = to_lab(rho_u, trunc, alpha, t, omega_d);
  if (kind == "amplitude") return v.amplitude;
  if (kind == "photon_number") return v.photon_number;
  if (kind == "real_quadrature") return v.real_quadrature;
  throw InvalidArgument("to_lab: unknown observable '" + std::string(kind) + "'");
}

}  // namespace qframe
