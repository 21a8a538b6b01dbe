#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "eigengesture/dataset.hpp"
#include "eigengesture/decomposition.hpp"
#include "eigengesture/error.hpp"
#include "eigengesture/preprocess.hpp"
#include "eigengesture/visualize.hpp"

namespace eg = eigengesture;

namespace {

eg::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const eg::Error& e) {
    return e.code();
  }
  FAIL("expected an eigengesture::Error");
  return eg::ErrorCode::BadConfig;
}

double dispersion_of(const Eigen::VectorXd& v, double lo = 0.05, double hi = 0.95) {
  return eg::quantile_dispersion(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), lo, hi);
}

}  // namespace

TEST_SUITE("visualize") {

TEST_CASE("dispersion of a constant list is zero") {
  const std::vector<double> xs(17, 4.25);
  CHECK(eg::quantile_dispersion(xs) == 0.0);
}

TEST_CASE("dispersion on the uniform grid 0..100") {
  std::vector<double> xs;
  for (int i = 100; i >= 0; --i) xs.push_back(i);
  CHECK(eg::quantile_dispersion(xs) == doctest::Approx(90.0).epsilon(1e-14));
}

TEST_CASE("dispersion of two values") {
  const std::vector<double> xs = {10.0, 0.0};
  CHECK(eg::quantile_dispersion(xs) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("quantiles agree with linear-interpolation reference values") {
  // reference values from an independent implementation of the same rule
  std::vector<double> xs = {3.7, -1.25, 8.0, 0.5, 2.25, -4.0, 6.5, 1.0, 9.75, -2.5, 0.0};
  std::sort(xs.begin(), xs.end());
  CHECK(eg::quantile_sorted(xs, 0.05) == doctest::Approx(-3.25).epsilon(1e-14));
  CHECK(eg::quantile_sorted(xs, 0.3) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(eg::quantile_sorted(xs, 0.5) == 1.0);
  CHECK(eg::quantile_sorted(xs, 0.95) == doctest::Approx(8.875).epsilon(1e-14));
  CHECK(eg::quantile_sorted(xs, 0.0) == -4.0);
  CHECK(eg::quantile_sorted(xs, 1.0) == 9.75);
}

TEST_CASE("quantile contracts") {
  const std::vector<double> none;
  CHECK(code_of([&] { eg::quantile_dispersion(none); }) == eg::ErrorCode::EmptyInput);
  const std::vector<double> one = {2.0};
  CHECK(eg::quantile_dispersion(one) == 0.0);
  CHECK(code_of([&] { eg::quantile_sorted(one, 1.5); }) == eg::ErrorCode::BadConfig);
}

TEST_CASE("dispersion is affine equivariant") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd(0.0, 2.0);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::uniform_int_distribution<int> len(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd x(len(rng));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = nd(rng);
    const double a = coef(rng), b = coef(rng);
    const Eigen::VectorXd y = (a * x).array() + b;
    const double dx = dispersion_of(x), dy = dispersion_of(y);
    CHECK(std::abs(dy - std::abs(a) * dx) <= 1e-12 * std::max(1.0, std::abs(a) * dx) * 10.0);
  }
}

TEST_CASE("remap scale is the dispersion quotient") {
  eg::Eigengesture e;
  e.index = 1;
  e.shape = Eigen::MatrixXd::Zero(2, 10);
  for (int s = 0; s < 10; ++s) e.shape(1, s) = 0.5 / 0.9;  // two-point dispersion is 0.9 of the gap
  eg::SensorStats st;
  st.q_lo = Eigen::VectorXd::Zero(10);
  st.q_hi = Eigen::VectorXd::Ones(10);
  st.dispersion = Eigen::VectorXd::Ones(10);
  const auto r = eg::remap(e, st, Eigen::VectorXd::Zero(10));
  for (int s = 0; s < 10; ++s) CHECK(r.scale(s) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.flat_channels.empty());
}

TEST_CASE("remap first frame and dispersion on synthetic eigengestures") {
  eg::SynthConfig c;
  c.gestures = 4;
  c.realisations = 5;
  c.true_rank = 6;
  c.noise_sigma = 0.05;
  const auto pre = eg::preprocess_corpus(eg::synthesize_corpus(c));
  const auto r = eg::svd(pre.matrix);
  const auto st = eg::sensor_stats(pre.tensor);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (const auto& e : eg::eigengestures(r, 5)) {
    Eigen::VectorXd neutral(10);
    for (int s = 0; s < 10; ++s) neutral(s) = nd(rng);
    const auto m = eg::remap(e, st, neutral);
    for (int s = 0; s < 10; ++s) {
      CHECK(std::abs(m.values(0, s) - neutral(s)) <= 1e-10);
      CHECK(std::abs(dispersion_of(m.values.col(s)) - st.dispersion(s)) <= 1e-8);
      CHECK(m.offset(s) == doctest::Approx(neutral(s) - e.shape(0, s) * m.scale(s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("flat eigengesture channel renders at neutral") {
  eg::Eigengesture e;
  e.index = 3;
  e.shape = Eigen::MatrixXd::Random(6, 10);
  e.shape.col(4).setConstant(0.25);
  eg::SensorStats st;
  st.q_lo = Eigen::VectorXd::Zero(10);
  st.q_hi = Eigen::VectorXd::Ones(10);
  st.dispersion = Eigen::VectorXd::Ones(10);
  Eigen::VectorXd neutral = Eigen::VectorXd::LinSpaced(10, -1.0, 1.0);
  const auto r = eg::remap(e, st, neutral);
  CHECK(r.flat_channels == std::vector<int>{4});
  CHECK(r.scale(4) == 0.0);
  for (int t = 0; t < 6; ++t) CHECK(r.values(t, 4) == neutral(4));
  CHECK(code_of([&] { eg::remap(e, st, Eigen::VectorXd::Zero(9)); }) == eg::ErrorCode::BadShape);
}

TEST_CASE("sensor statistics per channel") {
  eg::GestureTensor t(1, 1, 101, 10);
  for (int n = 0; n <= 100; ++n)
    for (int s = 0; s < 10; ++s) t.at(0, 0, n, s) = (s + 1) * n;
  const auto st = eg::sensor_stats(t);
  for (int s = 0; s < 10; ++s) {
    CHECK(st.q_lo(s) == doctest::Approx(5.0 * (s + 1)).epsilon(1e-13));
    CHECK(st.q_hi(s) == doctest::Approx(95.0 * (s + 1)).epsilon(1e-13));
    CHECK(st.dispersion(s) == doctest::Approx(90.0 * (s + 1)).epsilon(1e-13));
  }
  CHECK(code_of([&] { eg::sensor_stats(t, 0.9, 0.1); }) == eg::ErrorCode::BadConfig);
}

TEST_CASE("remapped export names channels") {
  eg::Eigengesture e;
  e.index = 1;
  e.shape = Eigen::MatrixXd::Random(3, 10);
  eg::SensorStats st;
  st.q_lo = Eigen::VectorXd::Zero(10);
  st.q_hi = Eigen::VectorXd::Ones(10);
  st.dispersion = Eigen::VectorXd::Ones(10);
  const auto text = eg::format_remapped_csv(eg::remap(e, st, Eigen::VectorXd::Zero(10)));
  CHECK(text.find("thumb,index,middle,ring,little,accel_x,accel_y,accel_z,roll,pitch") != std::string::npos);
  CHECK(code_of([] { eg::format_gesture_csv(Eigen::MatrixXd::Zero(2, 9)); }) == eg::ErrorCode::BadShape);
}

}  // TEST_SUITE
