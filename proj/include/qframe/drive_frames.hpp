#pragma once

// Classical cavity drive, the closed-form P-frame displacement, the Q-frame
// condition for d(alpha)/dt, and mapping of transformed-frame expectation
// values back to the lab frame.

#include <string_view>

#include "qframe/device_models.hpp"

namespace qframe {

enum class DriveKind { monochromatic };

struct DriveSpec {
  DriveKind kind = DriveKind::monochromatic;
  double amplitude = 0.0;  ///< E, units of omega_c
  double omega_d = 1.0;    ///< drive frequency, units of omega_c
  double phase = 0.0;      ///< radians

  void validate() const;
  /// Field E(t) felt by the cavity.
  cplx field_at(double t) const;
};

/// Which displacement alpha(t) the transformed frame uses.
///   lab     : alpha = 0
///   p_frame : alpha solves the drive-only linear equation (closed form P(t))
///   q_frame : alpha keeps <c>_U pinned at its initial value
enum class FrameMode { lab, p_frame, q_frame };

std::string_view to_string(FrameMode mode);
FrameMode frame_mode_from_string(std::string_view name);

cplx field_at(const DriveSpec& drive, double t);

/// Closed-form P(t) for a monochromatic drive with alpha(0) = 0.
cplx p_displacement(const DriveSpec& drive, double omega_c, double kappa, double t);

/// Right-hand side of the drive-only equation -i omega_c alpha - i E(t) - kappa/2 alpha.
cplx p_alpha_rhs(cplx alpha, const DriveSpec& drive, double omega_c, double kappa, double t);

/// Sufficient statistics of rho_U needed by the Q-frame condition.
struct FrameMoments {
  cplx c_u;       ///< Tr(rho_U c)
  cplx a_q;       ///< Tr(rho_U (a_q (x) I))
};

FrameMoments frame_moments(const Eigen::Ref<const Matrix>& rho_u, const SystemModel& model);

/// d(alpha)/dt that keeps <c>_U constant:
///   (i/hbar) <[D^dag H_g D, c]>_U - (i omega_c + kappa/2)(<c>_U + alpha) - i E(t)
/// with <[D^dag H_g D, c]>_U = -u <a_q (x) I>_U from the displaced coupling.
cplx q_alpha_rhs(cplx alpha, const Matrix& rho_u, const SystemModel& model,
                 const DriveSpec& drive, double t);
cplx q_alpha_rhs(cplx alpha, const FrameMoments& moments, const SystemModel& model,
                 const DriveSpec& drive, double t);

struct LabValues {
  cplx amplitude;          ///< <c> = <c>_U + alpha
  double photon_number;    ///< <c^dag c>_U + 2 Re(alpha^* <c>_U) + |alpha|^2
  double real_quadrature;  ///< 2 Re(<c> e^{i omega_d t})
};

/// Transformed-frame moments that the lab-frame values are built from.
struct CavityMoments {
  cplx c_u;          ///< Tr(rho_U c)
  double n_u = 0.0;  ///< Tr(rho_U c^dag c)
};
CavityMoments cavity_moments(const Eigen::Ref<const Matrix>& rho_u, const TruncationSpec& trunc);

LabValues to_lab(const CavityMoments& moments, cplx alpha, double t, double omega_d);
LabValues to_lab(const Matrix& rho_u, const TruncationSpec& trunc, cplx alpha, double t,
                 double omega_d);
/// Single-observable form; `kind` is one of amplitude, photon_number,
/// real_quadrature. Real-valued observables come back with zero imaginary part.
cplx to_lab(std::string_view kind, const Matrix& rho_u, const TruncationSpec& trunc, cplx alpha,
            double t, double omega_d);

}  // namespace qframe
