#include "doctest.h"

#include <cmath>
#include <cstring>

#include "qframe/dynamics_engine.hpp"

using namespace qframe;

namespace {

Matrix random_state(int dim, int salt, int empty_top_every = 0) {
  Matrix x(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      x(i, j) = cplx{std::sin(0.7 * i + 1.3 * j + salt), std::cos(2.1 * i - 0.4 * j + salt)};
  if (empty_top_every > 0)
    for (int r = empty_top_every - 1; r < dim; r += empty_top_every) x.row(r).setZero();
  Matrix rho = x * x.adjoint();
  return rho / rho.trace().real();
}

// -i[H, rho] + kappa D[c] rho + i mu [rho, c^dag] + i mu^* [rho, c] with dense matrices
Matrix dense_generator(const SystemModel& m, const Matrix& rho, cplx alpha, cplx mu) {
  const Matrix c = annihilation(m.trunc).matrix();
  const Matrix cd = c.adjoint();
  const Matrix nn = cd * c;
  const Matrix h = embed(m.h_q, Matrix::Identity(m.trunc.cavity_dim(), m.trunc.cavity_dim()),
                         m.trunc)
                       .matrix() +
                   displaced_coupling(m, alpha).matrix() + m.omega_c * nn;
  return -kI * (h * rho - rho * h) + m.kappa * (c * rho * cd - 0.5 * (nn * rho + rho * nn)) +
         kI * mu * (rho * cd - cd * rho) + kI * std::conj(mu) * (rho * c - c * rho);
}

}  // namespace

TEST_CASE("generator matches the dense form in every frame") {
  const auto tls = build_tls({0.75, 0.03}, {6, 2, {}}, 7.2e-3);
  TransmonParams tp;
  tp.charge_cutoff = 2;
  tp.n_g = 0.1;
  const auto tr = build_transmon(tp, {4, 2, {}}, 1.6e-3);
  const DriveSpec drive{DriveKind::monochromatic, 1e-2, 1.0015, 0.2};
  for (const auto* m : {&tls, &tr}) {
    const Matrix rho = random_state(m->trunc.dim(), 3);
    for (FrameMode mode : {FrameMode::lab, FrameMode::p_frame, FrameMode::q_frame}) {
      FrameState s{rho, mode == FrameMode::lab ? cplx{} : cplx{0.8, -0.3}, 2.0};
      const Derivative d = rhs(s, *m, drive, mode);
      const cplx mu = frame_mu(s, *m, drive, mode);
      const Matrix ref = dense_generator(*m, rho, s.alpha, mu);
      CHECK((d.drho - ref).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(std::abs(d.drho.trace()) < 1e-12);
      if (mode == FrameMode::p_frame)
        CHECK(std::abs(d.dalpha - p_alpha_rhs(s.alpha, drive, 1.0, m->kappa, 2.0)) < 1e-15);
      if (mode == FrameMode::q_frame)
        CHECK(std::abs(d.dalpha - q_alpha_rhs(s.alpha, rho, *m, drive, 2.0)) < 1e-15);
    }
  }
}

TEST_CASE("p frame carries no residual drive") {
  const auto tls = build_tls({0.75, 0.03}, {4, 2, {}}, 7.2e-3);
  const DriveSpec drive{DriveKind::monochromatic, 1e-2, 1.0, 0.0};
  const double t = 40.0;
  FrameState s{random_state(10, 1), p_displacement(drive, 1.0, 7.2e-3, t), t};
  CHECK(std::abs(frame_mu(s, tls, drive, FrameMode::p_frame)) < 1e-15);
}

TEST_CASE("undriven labeled eigenstate is stationary") {
  const auto tls = build_tls({0.75, 0.03}, {10, 2, {}}, 1e-14);
  const auto spec = labeled_spectrum(tls);
  const DriveSpec off{};
  const FrameState s = prepare_initial(spec, 1, tls, FrameMode::lab);
  CHECK(rhs(s, tls, off, FrameMode::lab).drho.cwiseAbs().maxCoeff() < 1e-12);

  IntegratorConfig cfg;
  cfg.t_end = 50.0;
  cfg.sample_dt = 5.0;
  const auto traj = integrate(s, tls, off, FrameMode::lab, cfg);
  for (const auto& row : traj.samples) {
    CHECK(std::abs(row.photon_number - traj.samples.front().photon_number) < 1e-9);
    CHECK(row.trace_error < 1e-12);
  }
}

TEST_CASE("prepare_initial") {
  const auto tls = build_tls({0.75, 0.03}, {8, 2, {}}, 7.2e-3);
  const auto spec = labeled_spectrum(tls);
  const FrameState q = prepare_initial(spec, 0, tls, FrameMode::q_frame);
  CHECK(std::abs(q.alpha) < 0.1);
  CHECK(std::abs(q.alpha) > 0.0);
  CHECK(std::abs(cavity_moments(q.rho_u, tls.trunc).c_u) < 1e-10);
  CHECK(std::abs(q.rho_u.trace() - 1.0) < 1e-14);
  const FrameState p = prepare_initial(spec, 0, tls, FrameMode::p_frame);
  CHECK(p.alpha == cplx{});

  const auto free = build_tls({0.75, 0.0}, {8, 2, {}}, 7.2e-3);
  const auto free_spec = labeled_spectrum(free);
  const FrameState f = prepare_initial(free_spec, 1, free, FrameMode::q_frame);
  CHECK(f.alpha == cplx{});
  CHECK(std::abs(f.rho_u(9, 9) - 1.0) < 1e-15);

  CHECK_THROWS_AS(prepare_initial(spec, 2, tls, FrameMode::lab), InvalidArgument);
  CHECK_THROWS_AS(prepare_initial(spec, 0, with_truncation(tls, 5), FrameMode::lab),
                  InvalidArgument);
}

TEST_CASE("damped cavity without coupling") {
  const double kappa = 0.1;
  const auto m = build_tls({0.75, 0.0}, {30, 2, {}}, kappa);
  const cplx a0 = 1.0;
  const Vector coh = displacement_matrix(a0, m.trunc).matrix().col(0);
  FrameState s{coh * coh.adjoint(), 0.0, 0.0};
  IntegratorConfig cfg;
  cfg.t_end = 20.0;
  cfg.sample_dt = 0.5;
  const auto traj = integrate(s, m, DriveSpec{}, FrameMode::lab, cfg);
  double worst = 0.0;
  for (const auto& row : traj.samples) {
    const cplx expected = a0 * std::exp(-cplx{0.5 * kappa, 1.0} * row.t);
    worst = std::max(worst, std::abs(row.abs_c_u - std::abs(expected)));
    worst = std::max(worst, std::abs(row.real_quadrature - 2.0 * (expected * std::exp(kI * row.t)).real()));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("q frame without coupling follows the closed-form displacement") {
  const double kappa = 7.2e-3;
  const auto m = build_tls({0.75, 0.0}, {5, 2, {}}, kappa);
  const auto spec = labeled_spectrum(m);
  const DriveSpec drive{DriveKind::monochromatic, 1e-2, 1.0, 0.0};
  const FrameState s = prepare_initial(spec, 0, m, FrameMode::q_frame);
  // global error over ~220 periods is about 1e3 * rtol
  IntegratorConfig cfg;
  cfg.rtol = 1e-11;
  cfg.atol = 1e-13;
  cfg.t_end = 10.0 / kappa;
  cfg.sample_dt = 10.0;
  const auto traj = integrate(s, m, drive, FrameMode::q_frame, cfg);
  double worst = 0.0;
  for (const auto& row : traj.samples)
    worst = std::max(worst, std::abs(row.alpha - p_displacement(drive, 1.0, kappa, row.t)));
  CHECK(worst <= 1e-8);
  CHECK((traj.final_state.rho_u - s.rho_u).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_FALSE(traj.diagnostics.aborted);
}

TEST_CASE("frames agree on lab observables for a weak drive") {
  const double kappa = 7.2e-3;
  const DriveSpec drive{DriveKind::monochromatic, 1e-3, 1.0, 0.0};
  IntegratorConfig cfg;
  cfg.t_end = 3.0 / kappa;
  cfg.sample_dt = 5.0;
  const auto lab_model = build_tls({0.75, 0.03}, {30, 2, {}}, kappa);
  const auto q_model = with_truncation(lab_model, 10);
  const auto lab_spec = labeled_spectrum(lab_model);
  const auto q_spec = labeled_spectrum(q_model);
  const auto lab = integrate(prepare_initial(lab_spec, 0, lab_model, FrameMode::lab), lab_model,
                             drive, FrameMode::lab, cfg);
  const auto q = integrate(prepare_initial(q_spec, 0, q_model, FrameMode::q_frame), q_model, drive,
                           FrameMode::q_frame, cfg);
  const auto p = integrate(prepare_initial(q_spec, 0, q_model, FrameMode::p_frame), q_model, drive,
                           FrameMode::p_frame, cfg);
  REQUIRE(lab.samples.size() == q.samples.size());
  double peak = 0.0, dn = 0.0, dx = 0.0;
  for (size_t k = 0; k < lab.samples.size(); ++k) {
    peak = std::max(peak, lab.samples[k].photon_number);
    for (const auto* other : {&q, &p}) {
      dn = std::max(dn, std::abs(lab.samples[k].photon_number - other->samples[k].photon_number));
      dx = std::max(dx,
                    std::abs(lab.samples[k].real_quadrature - other->samples[k].real_quadrature));
    }
  }
  CHECK(dn <= std::max(1e-3, 0.01 * peak));
  CHECK(dx <= 1e-3);
  CHECK(lab.diagnostics.max_trace_drift <= 1e-7);
  CHECK(q.diagnostics.max_trace_drift <= 1e-7);
  CHECK(q.diagnostics.max_hermiticity_defect <= 10 * cfg.rtol);
  CHECK(q.diagnostics.min_eigenvalue_final > -1e-8);
}

TEST_CASE("identical inputs give identical trajectories") {
  const auto m = build_tls({0.75, 0.03}, {5, 2, {}}, 7.2e-3);
  const auto spec = labeled_spectrum(m);
  const DriveSpec drive{DriveKind::monochromatic, 1e-2, 1.0, 0.0};
  IntegratorConfig cfg;
  cfg.t_end = 100.0;
  const FrameState s = prepare_initial(spec, 0, m, FrameMode::q_frame);
  const auto a = integrate(s, m, drive, FrameMode::q_frame, cfg);
  const auto b = integrate(s, m, drive, FrameMode::q_frame, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t k = 0; k < a.samples.size(); ++k) {
    CHECK(std::memcmp(&a.samples[k].alpha, &b.samples[k].alpha, sizeof(cplx)) == 0);
    CHECK(std::memcmp(&a.samples[k].photon_number, &b.samples[k].photon_number,
                      sizeof(double)) == 0);
  }
}

TEST_CASE("observables") {
  const auto m = build_tls({0.75, 0.03}, {3, 2, {}}, 7.2e-3);
  Matrix vac = Matrix::Zero(8, 8);
  vac(0, 0) = 1.0;
  const auto row = observables_at({vac, 0.0, 0.0}, m, DriveSpec{});
  CHECK(row.photon_number == 0.0);
  CHECK(row.real_quadrature == 0.0);
  CHECK(row.abs_c_u == 0.0);
  CHECK_FALSE(row.transmon_occupation.has_value());

  TransmonParams tp;
  tp.charge_cutoff = 3;
  const auto tr = build_transmon(tp, {2, 2, {}}, 1e-3);
  const auto eb = qubit_eigenbasis(tr);
  const Vector excited = eb.vectors.col(1);
  Vector psi = Vector::Zero(tr.trunc.dim());
  for (int k = 0; k < tr.trunc.q_dim; ++k) psi(k * 3 + 2) = excited(k);
  const auto trow = observables_at({psi * psi.adjoint(), 0.0, 0.0}, tr, DriveSpec{});
  REQUIRE(trow.transmon_occupation.has_value());
  CHECK(std::abs(*trow.transmon_occupation - 1.0) < 1e-12);
  CHECK(std::abs(trow.photon_number - 2.0) < 1e-12);
}

TEST_CASE("step underflow returns a partial trajectory") {
  const auto m = build_tls({0.75, 0.03}, {5, 2, {}}, 7.2e-3);
  const auto spec = labeled_spectrum(m);
  const DriveSpec drive{DriveKind::monochromatic, 1e-2, 1.0, 0.0};
  IntegratorConfig cfg;
  cfg.t_end = 100.0;
  cfg.rtol = 1e-14;
  cfg.atol = 1e-16;
  cfg.h_min = 0.5;
  cfg.h_init = 0.5;
  const auto traj = integrate(prepare_initial(spec, 0, m, FrameMode::lab), m, drive,
                              FrameMode::lab, cfg);
  CHECK(traj.diagnostics.aborted);
  CHECK(!traj.diagnostics.message.empty());
  CHECK(traj.diagnostics.final_time < 100.0);
  CHECK(!traj.samples.empty());
}

TEST_CASE("sample times") {
  IntegratorConfig cfg;
  cfg.t_end = 2.5;
  cfg.sample_dt = 1.0;
  const auto t = cfg.sample_times();
  REQUIRE(t.size() == 4);
  CHECK(t.back() == 2.5);
  cfg.sample_dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("rotating variables do not change the trajectory") {
  const DriveSpec drive{DriveKind::monochromatic, 1e-2, 1.0015, 0.4};
  TransmonParams tp;
  tp.charge_cutoff = 3;
  const auto charge = build_transmon(tp, {6, 2, {}}, 1.6e-3);
  const auto eigen = project_qubit(charge, 4);
  const auto tls = build_tls({0.75, 0.03}, {6, 2, {}}, 7.2e-3);
  for (const auto* m : {&tls, &charge, &eigen}) {
    const auto spec = labeled_spectrum(*m);
    for (FrameMode mode : {FrameMode::lab, FrameMode::q_frame}) {
      IntegratorConfig cfg;
      cfg.rtol = 1e-10;
      cfg.atol = 1e-12;
      cfg.t_end = 60.0;
      cfg.sample_dt = 7.5;
      const FrameState s = prepare_initial(spec, 0, *m, mode);
      const auto rot = integrate(s, *m, drive, mode, cfg);
      cfg.rotating_frame = false;
      const auto fixed = integrate(s, *m, drive, mode, cfg);
      REQUIRE(rot.samples.size() == fixed.samples.size());
      for (size_t k = 0; k < rot.samples.size(); ++k) {
        CHECK(std::abs(rot.samples[k].photon_number - fixed.samples[k].photon_number) < 1e-7);
        CHECK(std::abs(rot.samples[k].real_quadrature - fixed.samples[k].real_quadrature) < 1e-7);
        CHECK(std::abs(rot.samples[k].abs_c_u - fixed.samples[k].abs_c_u) < 1e-8);
        CHECK(std::abs(rot.samples[k].transmon_occupation.value_or(0.0) -
                       fixed.samples[k].transmon_occupation.value_or(0.0)) < 1e-8);
      }
      CHECK((rot.final_state.rho_u - fixed.final_state.rho_u).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}
