#include "doctest.h"

#include <cmath>
#include <vector>

#include "qframe/dormand_prince.hpp"

using namespace qframe;

TEST_CASE("harmonic oscillator to tolerance") {
  // y' = -i w y, y(0) = 1
  const double w = 1.3;
  DormandPrince54::Rhs f = [&](double, const Vector& y, Vector& dy) { dy = -kI * w * y; };
  StepControl ctl;
  ctl.rtol = 1e-10;
  ctl.atol = 1e-12;
  DormandPrince54 dp(f, ctl);
  Vector y(1);
  y(0) = 1.0;
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.25 * k);
  std::vector<double> seen;
  double worst = 0.0;
  auto obs = [&](double t, const Vector& v) {
    seen.push_back(t);
    worst = std::max(worst, std::abs(v(0) - std::exp(-kI * w * t)));
  };
  CHECK(dp.integrate(y, 0.0, 10.0, times, obs) == StepOutcome::finished);
  CHECK(seen.size() == times.size());
  for (size_t k = 0; k < seen.size(); ++k) CHECK(seen[k] == times[k]);
  CHECK(worst < 1e-8);
  CHECK(dp.stats().accepted > 0);
  CHECK(dp.stats().rhs_evals == 6 * (dp.stats().accepted + dp.stats().rejected) + 1);
}

TEST_CASE("dense output is fourth order") {
  DormandPrince54::Rhs f = [](double t, const Vector& y, Vector& dy) {
    dy.resize(y.size());
    dy(0) = cplx{std::cos(t), 0.0} * y(0);
  };
  StepControl ctl;
  ctl.rtol = 1e-11;
  ctl.atol = 1e-13;
  DormandPrince54 dp(f, ctl);
  Vector y(1);
  y(0) = 1.0;
  std::vector<double> times;
  for (int k = 0; k <= 97; ++k) times.push_back(0.0731 * k);
  double worst = 0.0;
  dp.integrate(y, 0.0, times.back(), times, [&](double t, const Vector& v) {
    worst = std::max(worst, std::abs(v(0) - std::exp(std::sin(t))));
  });
  CHECK(worst < 1e-9);
}

TEST_CASE("step hook sees every accepted step") {
  DormandPrince54::Rhs f = [](double, const Vector& y, Vector& dy) { dy = -y; };
  DormandPrince54 dp(f, StepControl{});
  Vector y = Vector::Ones(2);
  long hooks = 0;
  std::vector<double> none;
  dp.integrate(y, 0.0, 1.0, none, {}, [&](double, Vector&) { ++hooks; });
  CHECK(hooks == dp.stats().accepted);
  CHECK(std::abs(y(0) - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("stiff problem underflows") {
  DormandPrince54::Rhs f = [](double t, const Vector& y, Vector& dy) {
    dy = Vector::Constant(y.size(), cplx{1.0 / std::pow(std::max(1.0 - t, 1e-300), 2.0), 0.0});
  };
  StepControl ctl;
  ctl.h_min = 1e-6;
  DormandPrince54 dp(f, ctl);
  Vector y = Vector::Zero(1);
  std::vector<double> none;
  CHECK(dp.integrate(y, 0.0, 2.0, none, {}) == StepOutcome::step_underflow);
  CHECK(dp.time() < 1.0);
}

TEST_CASE("control validation") {
  StepControl ctl;
  ctl.h_min = 2.0;
  CHECK_THROWS_AS(ctl.validate(), InvalidArgument);
}
