#pragma once

// Dense operator algebra on the truncated qubit (x) cavity space.
//
// Basis ordering is qubit-major everywhere in the library: the composite
// index of |m>_q |i>_c is m * (n_max + 1) + i.

#include <optional>

#include "qframe/types.hpp"

namespace qframe {

struct TruncationSpec {
  int n_max = 5;  ///< highest cavity Fock index
  int q_dim = 2;  ///< qubit-component dimension
  /// Guard band for truncated exponentials. Unset means
  /// max(20, 4 * ceil(|amp|^2)) chosen per displacement.
  std::optional<int> pad;

  int cavity_dim() const { return n_max + 1; }
  int dim() const { return q_dim * (n_max + 1); }
  int pad_for(cplx amp) const;
  void validate() const;

  friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

/// A D x D matrix tied to the truncation it was built for.
class CompositeOperator {
 public:
  CompositeOperator(Matrix matrix, TruncationSpec trunc, bool hermitian = false);

  const Matrix& matrix() const { return matrix_; }
  const TruncationSpec& truncation() const { return trunc_; }
  bool is_hermitian() const { return hermitian_; }

  CompositeOperator adjoint() const;

 private:
  Matrix matrix_;
  TruncationSpec trunc_;
  bool hermitian_;
};

/// Cavity-only lowering operator on n_max + 1 Fock states.
Matrix cavity_lowering(int n_max);
/// Cavity-only number operator diag(0, 1, ..., n_max).
Matrix cavity_number(int n_max);

CompositeOperator annihilation(const TruncationSpec& trunc);
CompositeOperator creation(const TruncationSpec& trunc);
CompositeOperator number(const TruncationSpec& trunc);

/// Kronecker product qubit_op (x) cavity_op in qubit-major order.
CompositeOperator embed(const Matrix& qubit_op, const Matrix& cavity_op,
                        const TruncationSpec& trunc);

/// exp(amp c^dag - amp^* c) on the cavity factor, computed on n_max + 1 + pad
/// Fock states by scaling and squaring and then cut back to n_max + 1.
/// Warns when |amp|^2 exceeds the guard band.
Matrix cavity_displacement(cplx amp, int n_max, int pad);

/// Identity on the qubit factor tensored with cavity_displacement.
CompositeOperator displacement_matrix(cplx amp, const TruncationSpec& trunc);

/// Tr(rho * op).
cplx expect(const CompositeOperator& op, const Matrix& rho);

/// max |A - A^dag| over entries.
double hermiticity_defect(const Matrix& m);

}  // namespace qframe
