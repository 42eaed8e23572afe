#include "qframe/spectrum_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <lapacke.h>
#include <unsupported/Eigen/KroneckerProduct>

namespace qframe {

Eigenpairs::Eigenpairs(RealVector energies, RealMatrix real_vectors, Vector gauge)
    : energies_(std::move(energies)),
      real_(true),
      real_vectors_(std::move(real_vectors)),
      gauge_(std::move(gauge)) {}

Eigenpairs::Eigenpairs(RealVector energies, Matrix complex_vectors)
    : energies_(std::move(energies)), real_(false), complex_vectors_(std::move(complex_vectors)) {}

int Eigenpairs::dim() const {
  return static_cast<int>(real_ ? real_vectors_.rows() : complex_vectors_.rows());
}

Vector Eigenpairs::vector(int k) const {
  if (real_) return gauge_.cwiseProduct(real_vectors_.col(k).cast<cplx>());
  return complex_vectors_.col(k);
}

Vector Eigenpairs::project(const Vector& s) const {
  if (!real_) return complex_vectors_.adjoint() * s;
  const Vector t = gauge_.conjugate().cwiseProduct(s);
  const RealVector re = real_vectors_.transpose() * t.real();
  const RealVector im = real_vectors_.transpose() * t.imag();
  Vector out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

namespace {

bool is_real(const Matrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

RealVector solve_real(RealMatrix& h) {
  const int n = static_cast<int>(h.rows());
  RealVector w(n);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, h.data(), n, w.data());
  if (info != 0) {
    std::ostringstream os;
    os << "diagonalize_joint: dsyevd failed with info=" << info;
    throw NumericalError(os.str());
  }
  return w;
}

RealVector solve_complex(Matrix& h) {
  const int n = static_cast<int>(h.rows());
  RealVector w(n);
  const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n,
                                  reinterpret_cast<lapack_complex_double*>(h.data()), n, w.data());
  if (info != 0) {
    std::ostringstream os;
    os << "diagonalize_joint: zheevd failed with info=" << info;
    throw NumericalError(os.str());
  }
  return w;
}

}  // namespace

Eigenpairs diagonalize_joint(const SystemModel& model, int max_dim) {
  model.validate();
  const int d = model.trunc.dim();
  if (d > max_dim) {
    std::ostringstream os;
    os << "diagonalize_joint: dimension " << d << " exceeds dense-solver ceiling " << max_dim;
    throw InvalidArgument(os.str());
  }
  const int q = model.trunc.q_dim;
  const int n = model.trunc.cavity_dim();
  const cplx u = model.coupling.u;

  if (is_real(model.h_q) && is_real(model.coupling.a_q)) {
    // Rotating Fock state |i> by exp(i * i * arg u) turns u c^dag + u^* c into
    // |u| (c^dag + c), so H_qc = G H_real G^dag with G diagonal.
    const double phi = std::arg(u);
    const RealMatrix c = cavity_lowering(model.trunc.n_max).real();
    const RealMatrix cav = std::abs(u) * (c + c.transpose());
    RealMatrix h = Eigen::kroneckerProduct(model.h_q.real(), RealMatrix::Identity(n, n));
    h += Eigen::kroneckerProduct(model.coupling.a_q.real(), cav);
    for (int m = 0; m < q; ++m)
      for (int i = 0; i < n; ++i) h(m * n + i, m * n + i) += model.omega_c * i;
    Vector gauge(d);
    for (int m = 0; m < q; ++m)
      for (int i = 0; i < n; ++i) gauge(m * n + i) = std::polar(1.0, i * phi);
    RealVector w = solve_real(h);
    return Eigenpairs(std::move(w), std::move(h), std::move(gauge));
  }

  Matrix h = joint_hamiltonian(model).matrix();
  RealVector w = solve_complex(h);
  return Eigenpairs(std::move(w), std::move(h));
}

const Branch& LabeledSpectrum::branch(int p) const {
  for (const auto& b : branches)
    if (b.p == p) return b;
  std::ostringstream os;
  os << "LabeledSpectrum: branch " << p << " is not labeled";
  throw InvalidArgument(os.str());
}

namespace {

// (I (x) c^dag) psi in qubit-major order.
Vector raise_cavity(const Vector& psi, int q, int n) {
  Vector out = Vector::Zero(psi.size());
  for (int m = 0; m < q; ++m)
    for (int i = 0; i + 1 < n; ++i) out(m * n + i + 1) = std::sqrt(double(i + 1)) * psi(m * n + i);
  return out;
}

double photon_number_of(const Vector& psi, int q, int n) {
  double acc = 0.0;
  for (int m = 0; m < q; ++m)
    for (int i = 0; i < n; ++i) acc += i * std::norm(psi(m * n + i));
  return acc;
}

double qubit_expectation(const Vector& psi, const Matrix& op, int q, int n) {
  // psi viewed as an n x q matrix Psi(i, m).
  Eigen::Map<const Matrix> big(psi.data(), n, q);
  const Matrix applied = big * op.transpose();
  return (big.conjugate().cwiseProduct(applied)).sum().real();
}

struct Pick {
  int index = -1;
  double overlap = -1.0;
  int runner_up = -1;
  double runner_overlap = -1.0;
};

Pick best_unconsumed(const Vector& amplitudes, double norm2, const std::vector<bool>& used) {
  Pick pick;
  // Ascending energy order, strict improvement: ties resolve to lower energy.
  for (int k = 0; k < amplitudes.size(); ++k) {
    if (used[k]) continue;
    const double ov = std::norm(amplitudes(k)) / norm2;
    if (ov > pick.overlap + 1e-12) {
      pick.runner_up = pick.index;
      pick.runner_overlap = pick.overlap;
      pick.index = k;
      pick.overlap = ov;
    } else if (ov > pick.runner_overlap) {
      pick.runner_up = k;
      pick.runner_overlap = ov;
    }
  }
  return pick;
}

}  // namespace

LabeledSpectrum label_branches(const Eigenpairs& eig, const SystemModel& model,
                               const LabelOptions& options) {
  const int q = model.trunc.q_dim;
  const int n = model.trunc.cavity_dim();
  const int d = model.trunc.dim();
  if (eig.dim() != d) throw InvalidArgument("label_branches: eigenpairs do not match the model");
  if (options.branches < 1 || options.branches > q)
    throw InvalidArgument("label_branches: branch count must be in [1, q_dim]");

  const auto qubit = qubit_eigenbasis(model);
  {
    const double detuning = model.omega_c - (qubit.energies(1) - qubit.energies(0));
    const double g = model.is_transmon() ? std::get<TransmonParams>(model.params).g
                                         : std::get<TlsParams>(model.params).g;
    if (std::abs(g / detuning) >= 0.5) {
      std::ostringstream os;
      os << "label_branches: |g / (omega_c - omega_q)| = " << std::abs(g / detuning)
         << " is outside the dispersive regime; labels may be unreliable";
      warn(os.str());
    }
  }
  const Matrix occupation = transmon_occupation_operator(model);

  LabeledSpectrum out;
  out.trunc = model.trunc;
  out.transmon = model.is_transmon();
  std::vector<bool> used(eig.size(), false);

  // Seeds: argmax overlap with |p>_q |0>_c, in order of qubit energy.
  for (int p = 0; p < options.branches; ++p) {
    Vector product = Vector::Zero(d);
    for (int m = 0; m < q; ++m) product(m * n) = qubit.vectors(m, p);
    const Pick pick = best_unconsumed(eig.project(product), 1.0, used);
    if (pick.index < 0) throw NumericalError("label_branches: no eigenvector left for seed");
    if (pick.runner_up >= 0 && pick.overlap - pick.runner_overlap < options.seed_tie) {
      std::ostringstream os;
      os << "label_branches: ambiguous seed for branch " << p << ": eigenvectors " << pick.index
         << " (overlap " << pick.overlap << ") and " << pick.runner_up << " (overlap "
         << pick.runner_overlap << ")";
      throw NumericalError(os.str());
    }
    used[pick.index] = true;
    Branch b;
    b.p = p;
    b.eig_index.push_back(pick.index);
    b.overlap.push_back(pick.overlap);
    out.branches.push_back(std::move(b));
  }

  for (auto& b : out.branches) {
    auto record = [&](int k) {
      const Vector psi = eig.vector(k);
      b.energy.push_back(eig.energies()(k));
      b.photon_number.push_back(photon_number_of(psi, q, n));
      b.transmon_occupation.push_back(qubit_expectation(psi, occupation, q, n));
      if (options.keep_states < 0 || static_cast<int>(b.states.size()) < options.keep_states)
        b.states.push_back(psi);
      return psi;
    };
    Vector psi = record(b.eig_index.front());
    for (int step = 1; step < n; ++step) {
      const Vector s = raise_cavity(psi, q, n);
      const double norm2 = s.squaredNorm();
      if (norm2 == 0.0) break;
      const Pick pick = best_unconsumed(eig.project(s), norm2, used);
      if (pick.index < 0) break;
      used[pick.index] = true;
      b.eig_index.push_back(pick.index);
      b.overlap.push_back(pick.overlap);
      psi = record(pick.index);
    }
    b.n_reliable = -1;
    for (int k = 0; k < b.size() && b.overlap[k] > options.threshold; ++k) b.n_reliable = k;
  }
  return out;
}

LabeledSpectrum labeled_spectrum(const SystemModel& model, const LabelOptions& options,
                                 int max_dim) {
  return label_branches(diagonalize_joint(model, max_dim), model, options);
}

std::vector<double> cavity_frequency_curve(const LabeledSpectrum& spec, int p) {
  const Branch& b = spec.branch(p);
  if (b.n_reliable < 2) {
    std::ostringstream os;
    os << "cavity_frequency_curve: branch " << p << " is reliable only up to n = " << b.n_reliable;
    throw InvalidArgument(os.str());
  }
  std::vector<double> gaps;
  gaps.reserve(b.n_reliable);
  for (int k = 0; k < b.n_reliable; ++k) gaps.push_back(b.energy[k + 1] - b.energy[k]);
  return gaps;
}

DispersiveQuantities dispersive_quantities(const LabeledSpectrum& spec) {
  const Branch& g = spec.branch(0);
  const Branch& e = spec.branch(1);
  if (g.size() < 2 || e.size() < 2)
    throw InvalidArgument("dispersive_quantities: g and e branches need labels up to n = 1");
  const double gap_g = g.energy[1] - g.energy[0];
  const double gap_e = e.energy[1] - e.energy[0];
  return {0.5 * (gap_g + gap_e), 0.5 * (gap_g - gap_e)};
}

bool PerturbativeEstimates::n_crit_unbounded() const { return std::isinf(n_crit); }

PerturbativeEstimates perturbative_estimates(const SystemModel& model) {
  const double wc = model.omega_c;
  PerturbativeEstimates est;
  if (const auto* tls = std::get_if<TlsParams>(&model.params)) {
    const double delta = wc - tls->omega_q;
    if (std::abs(delta) <= 1e-12 * wc)
      throw InvalidArgument("perturbative_estimates: qubit resonant with cavity");
    const double g2 = tls->g * tls->g;
    est.omega_q = tls->omega_q;
    est.omega_c_ren_pert = wc;
    est.chi_pert = g2 / delta;
    est.n_crit = g2 == 0.0 ? std::numeric_limits<double>::infinity() : delta * delta / (4.0 * g2);
    return est;
  }
  const auto& tr = std::get<TransmonParams>(model.params);
  double wq;
  if (tr.omega_q_ref) {
    wq = *tr.omega_q_ref;
  } else {
    const auto basis = qubit_eigenbasis(model);
    wq = basis.energies(1) - basis.energies(0);
  }
  const double delta = wc - wq;
  const double shifted = delta + tr.e_c;
  if (std::abs(delta) <= 1e-12 * wc || std::abs(shifted) <= 1e-12 * wc)
    throw InvalidArgument("perturbative_estimates: resonant denominator");
  const double g2 = tr.g * tr.g;
  est.omega_q = wq;
  est.omega_c_ren_pert = wc + g2 / shifted;
  est.chi_pert = g2 * tr.e_c / (delta * shifted);
  est.n_crit = g2 == 0.0 ? std::numeric_limits<double>::infinity()
                         : (shifted * shifted / (4.0 * g2) - 1.0) / 3.0;
  return est;
}

}  // namespace qframe
