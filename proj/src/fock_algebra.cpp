#include "qframe/fock_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qframe {

int TruncationSpec::pad_for(cplx amp) const {
  if (pad) return *pad;
  const int need = 4 * static_cast<int>(std::ceil(std::norm(amp)));
  return std::max(20, need);
}

void TruncationSpec::validate() const {
  // q_dim = 1 is accepted so the cavity can be studied on its own.
  if (n_max < 1) throw InvalidArgument("TruncationSpec: n_max must be >= 1");
  if (q_dim < 1) throw InvalidArgument("TruncationSpec: q_dim must be >= 1");
  if (pad && *pad < 0) throw InvalidArgument("TruncationSpec: pad must be >= 0");
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

CompositeOperator::CompositeOperator(Matrix matrix, TruncationSpec trunc, bool hermitian)
    : matrix_(std::move(matrix)), trunc_(trunc), hermitian_(hermitian) {
  trunc_.validate();
  if (matrix_.rows() != trunc_.dim() || matrix_.cols() != trunc_.dim()) {
    std::ostringstream os;
    os << "CompositeOperator: matrix is " << matrix_.rows() << "x" << matrix_.cols()
       << ", truncation requires " << trunc_.dim();
    throw InvalidArgument(os.str());
  }
  if (hermitian_) {
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    if (hermiticity_defect(matrix_) > 1e-12 * scale)
      throw InvalidArgument("CompositeOperator: flagged Hermitian but is not");
  }
}

CompositeOperator CompositeOperator::adjoint() const {
  return CompositeOperator(matrix_.adjoint(), trunc_, hermitian_);
}

Matrix cavity_lowering(int n_max) {
  const int n = n_max + 1;
  Matrix c = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
  return c;
}

Matrix cavity_number(int n_max) {
  const int n = n_max + 1;
  Matrix num = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) num(i, i) = static_cast<double>(i);
  return num;
}

CompositeOperator annihilation(const TruncationSpec& trunc) {
  trunc.validate();
  return embed(Matrix::Identity(trunc.q_dim, trunc.q_dim), cavity_lowering(trunc.n_max), trunc);
}

CompositeOperator creation(const TruncationSpec& trunc) { return annihilation(trunc).adjoint(); }

CompositeOperator number(const TruncationSpec& trunc) {
  trunc.validate();
  return embed(Matrix::Identity(trunc.q_dim, trunc.q_dim), cavity_number(trunc.n_max), trunc);
}

CompositeOperator embed(const Matrix& qubit_op, const Matrix& cavity_op,
                        const TruncationSpec& trunc) {
  trunc.validate();
  if (qubit_op.rows() != trunc.q_dim || qubit_op.cols() != trunc.q_dim ||
      cavity_op.rows() != trunc.cavity_dim() || cavity_op.cols() != trunc.cavity_dim()) {
    std::ostringstream os;
    os << "embed: factors " << qubit_op.rows() << "x" << qubit_op.cols() << " and "
       << cavity_op.rows() << "x" << cavity_op.cols() << " do not match q_dim=" << trunc.q_dim
       << ", n_max=" << trunc.n_max;
    throw InvalidArgument(os.str());
  }
  Matrix m = Eigen::kroneckerProduct(qubit_op, cavity_op);
  const bool herm = hermiticity_defect(qubit_op) == 0.0 && hermiticity_defect(cavity_op) == 0.0;
  return CompositeOperator(std::move(m), trunc, herm);
}

Matrix cavity_displacement(cplx amp, int n_max, int pad) {
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
    throw InvalidArgument("displacement: amplitude must be finite");
  if (pad < 0) throw InvalidArgument("displacement: pad must be >= 0");
  if (std::norm(amp) > pad) {
    std::ostringstream os;
    os << "displacement: |amp|^2 = " << std::norm(amp) << " exceeds guard band pad = " << pad;
    warn(os.str());
  }
  const int n = n_max + 1;
  if (amp == cplx{}) return Matrix::Identity(n, n);
  const Matrix c = cavity_lowering(n_max + pad);
  const Matrix generator = amp * c.adjoint() - std::conj(amp) * c;
  // MatrixExponential uses Pade approximants with scaling and squaring.
  const Matrix full = generator.exp();
  return full.topLeftCorner(n, n);
}

CompositeOperator displacement_matrix(cplx amp, const TruncationSpec& trunc) {
  trunc.validate();
  const Matrix d = cavity_displacement(amp, trunc.n_max, trunc.pad_for(amp));
  Matrix m = Eigen::kroneckerProduct(Matrix::Identity(trunc.q_dim, trunc.q_dim), d);
  return CompositeOperator(std::move(m), trunc, false);
}

cplx expect(const CompositeOperator& op, const Matrix& rho) {
  const auto& a = op.matrix();
  if (rho.rows() != a.rows() || rho.cols() != a.cols()) {
    std::ostringstream os;
    os << "expect: state is " << rho.rows() << "x" << rho.cols() << ", operator is "
       << a.rows() << "x" << a.cols();
    throw InvalidArgument(os.str());
  }
  return rho.transpose().cwiseProduct(a).sum();
}

}  // namespace qframe
