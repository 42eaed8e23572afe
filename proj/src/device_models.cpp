#include "qframe/device_models.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace qframe {

void TlsParams::validate() const {
  if (!(omega_q > 0.0)) throw InvalidArgument("TlsParams: omega_q must be > 0");
  if (!(g >= 0.0)) throw InvalidArgument("TlsParams: g must be >= 0");
}

void TransmonParams::validate() const {
  if (!(e_c > 0.0)) throw InvalidArgument("TransmonParams: e_c must be > 0");
  if (!(e_j >= 0.0)) throw InvalidArgument("TransmonParams: e_j must be >= 0");
  if (!(g >= 0.0)) throw InvalidArgument("TransmonParams: g must be >= 0");
  if (!std::isfinite(n_g)) throw InvalidArgument("TransmonParams: n_g must be finite");
  if (charge_cutoff < 1) throw InvalidArgument("TransmonParams: charge_cutoff must be >= 1");
  if (omega_q_ref && !(*omega_q_ref > 0.0))
    throw InvalidArgument("TransmonParams: omega_q_ref must be > 0");
}

void SystemModel::validate() const {
  trunc.validate();
  if (h_q.rows() != trunc.q_dim || h_q.cols() != trunc.q_dim)
    throw InvalidArgument("SystemModel: h_q does not match q_dim");
  if (coupling.a_q.rows() != trunc.q_dim || coupling.a_q.cols() != trunc.q_dim)
    throw InvalidArgument("SystemModel: a_q does not match q_dim");
  const double tol = 1e-12 * std::max(1.0, h_q.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h_q) > tol) throw InvalidArgument("SystemModel: h_q is not Hermitian");
  if (hermiticity_defect(coupling.a_q) > 1e-12 * std::max(1.0, coupling.a_q.cwiseAbs().maxCoeff()))
    throw InvalidArgument("SystemModel: a_q is not Hermitian");
  if (!(kappa > 0.0)) throw InvalidArgument("SystemModel: kappa must be > 0");
  if (!(omega_c > 0.0)) throw InvalidArgument("SystemModel: omega_c must be > 0");
}

SystemModel build_tls(const TlsParams& params, const TruncationSpec& trunc, double kappa) {
  params.validate();
  SystemModel model;
  model.params = params;
  model.trunc = trunc;
  model.trunc.q_dim = 2;
  model.kappa = kappa;
  // Basis order |g>, |e>: Z = diag(-1, +1) so |g> is the lower level.
  model.h_q = Matrix::Zero(2, 2);
  model.h_q(0, 0) = -0.5 * params.omega_q;
  model.h_q(1, 1) = 0.5 * params.omega_q;
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  model.coupling = {x, cplx{params.g, 0.0}};
  model.validate();
  return model;
}

Matrix transmon_hamiltonian(const TransmonParams& params) {
  params.validate();
  const int dim = 2 * params.charge_cutoff + 1;
  Matrix h = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double n = k - params.charge_cutoff - params.n_g;
    h(k, k) = 4.0 * params.e_c * n * n;
    if (k + 1 < dim) h(k, k + 1) = h(k + 1, k) = -0.5 * params.e_j;
  }
  return h;
}

SystemModel build_transmon(const TransmonParams& params, TruncationSpec trunc, double kappa) {
  params.validate();
  SystemModel model;
  model.params = params;
  const int dim = 2 * params.charge_cutoff + 1;
  trunc.q_dim = dim;
  model.trunc = trunc;
  model.kappa = kappa;
  model.h_q = transmon_hamiltonian(params);
  Matrix charge = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) charge(k, k) = k - params.charge_cutoff - params.n_g;
  // i hbar g (c^dag - c) = u c^dag + u^* c with u = i g.
  model.coupling = {charge, cplx{0.0, params.g}};
  model.validate();
  return model;
}

QubitEigenbasis qubit_eigenbasis(const SystemModel& model) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(model.h_q);
  if (solver.info() != Eigen::Success) throw NumericalError("qubit_eigenbasis: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix transmon_occupation_operator(const SystemModel& model) {
  const auto basis = qubit_eigenbasis(model);
  const int q = static_cast<int>(basis.energies.size());
  RealVector levels(q);
  for (int l = 0; l < q; ++l) levels(l) = l;
  return basis.vectors * levels.cast<cplx>().asDiagonal() * basis.vectors.adjoint();
}

SystemModel project_qubit(const SystemModel& model, int levels) {
  if (levels < 2 || levels > model.trunc.q_dim)
    throw InvalidArgument("project_qubit: levels must be in [2, q_dim]");
  const auto basis = qubit_eigenbasis(model);
  const Matrix p = basis.vectors.leftCols(levels);
  SystemModel out = model;
  out.trunc.q_dim = levels;
  out.h_q = basis.energies.head(levels).cast<cplx>().asDiagonal();
  Matrix a = p.adjoint() * model.coupling.a_q * p;
  a = 0.5 * (a + a.adjoint());
  // Parity-forbidden elements come back as rounding noise; zero them so the
  // kernel skips them.
  const double floor = 1e-10 * a.cwiseAbs().maxCoeff();
  a = a.unaryExpr([floor](cplx z) { return std::abs(z) < floor ? cplx{0.0, 0.0} : z; });
  out.coupling.a_q = a;
  out.validate();
  return out;
}

SystemModel with_truncation(const SystemModel& model, int n_max) {
  SystemModel out = model;
  out.trunc.n_max = n_max;
  out.validate();
  return out;
}

CompositeOperator coupling_operator(const SystemModel& model) {
  const Matrix c = cavity_lowering(model.trunc.n_max);
  const cplx u = model.coupling.u;
  const Matrix cav = u * c.adjoint() + std::conj(u) * c;
  return embed(model.coupling.a_q, cav, model.trunc);
}

CompositeOperator joint_hamiltonian(const SystemModel& model) {
  const int q = model.trunc.q_dim;
  const int n = model.trunc.cavity_dim();
  Matrix h = Eigen::kroneckerProduct(model.h_q, Matrix::Identity(n, n));
  h += coupling_operator(model).matrix();
  h += Eigen::kroneckerProduct(Matrix::Identity(q, q), model.omega_c * cavity_number(model.trunc.n_max));
  // Symmetrize away rounding so the Hermitian flag holds exactly.
  Matrix sym = 0.5 * (h + h.adjoint());
  return CompositeOperator(std::move(sym), model.trunc, true);
}

CompositeOperator displaced_coupling(const SystemModel& model, cplx alpha) {
  const double shift = 2.0 * (std::conj(model.coupling.u) * alpha).real();
  Matrix m = coupling_operator(model).matrix();
  if (shift != 0.0) {
    const int n = model.trunc.cavity_dim();
    m += shift * Eigen::kroneckerProduct(model.coupling.a_q, Matrix::Identity(n, n));
  }
  return CompositeOperator(std::move(m), model.trunc, true);
}

}  // namespace qframe
