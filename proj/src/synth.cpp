#include <cmath>
#include <numbers>
#include <random>

#include "eigengesture/dataset.hpp"
#include "eigengesture/error.hpp"

namespace eigengesture {

void SynthConfig::validate() const {
  const auto bad = [](const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); };
  if (gestures < 1 || gestures > GestureManifest::kEntryCount) bad("K must be in 1..22");
  if (realisations < 1) bad("L must be >= 1");
  if (resample_n < 2) bad("resample length must be >= 2");
  if (true_rank < 1) bad("true_rank must be >= 1");
  if (true_rank > std::min(gestures * realisations, resample_n * kSensorCount))
    bad("true_rank exceeds min(K*L, N*S)");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) bad("noise_sigma must be finite and >= 0");
  if (min_length < 2 || max_length < min_length) bad("length range must satisfy 2 <= min <= max");
  if (admissible_lengths().empty())
    bad("no recording length in [" + std::to_string(min_length) + ", " + std::to_string(max_length) +
        "] of the form 1 + m*(N-1)");
}

std::vector<int> SynthConfig::admissible_lengths() const {
  std::vector<int> out;
  if (resample_n < 2) return out;
  for (int m = 1; 1 + m * (resample_n - 1) <= max_length; ++m) {
    const int len = 1 + m * (resample_n - 1);
    if (len >= min_length) out.push_back(len);
  }
  return out;
}

namespace {

// Smooth zero-mean curve on the resampling knots: a few random sinusoids.
Eigen::VectorXd smooth_curve(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> amp(0.0, 1.0);
  std::uniform_real_distribution<double> freq(0.5, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int h = 0; h < 3; ++h) {
    const double a = amp(rng), f = freq(rng), p = phase(rng);
    for (int t = 0; t < n; ++t) {
      const double tau = static_cast<double>(t) / (n - 1);
      v(t) += a * std::sin(2.0 * std::numbers::pi * f * tau + p);
    }
  }
  v.array() -= v.mean();
  return v;
}

// Inverse of the unit-step rectangle-rule double integration.
Eigen::VectorXd second_difference(const Eigen::VectorXd& position) {
  const auto n = position.size();
  Eigen::VectorXd velocity(n), accel(n);
  double prev_p = 0.0, prev_v = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    velocity(t) = position(t) - prev_p;
    accel(t) = velocity(t) - prev_v;
    prev_p = position(t);
    prev_v = velocity(t);
  }
  return accel;
}

}  // namespace

std::vector<RawRecording> synthesize_corpus(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const int n = config.resample_n;
  const int cols = config.gestures * config.realisations;
  const int rank = config.true_rank;

  // basis[j] is an n x S knot-value matrix (positions for the accel channels)
  std::vector<Eigen::MatrixXd> basis(rank, Eigen::MatrixXd(n, kSensorCount));
  for (auto& b : basis)
    for (int s = 0; s < kSensorCount; ++s) b.col(s) = smooth_curve(n, rng);

  Eigen::MatrixXd coeff(cols, rank);
  for (int c = 0; c < cols; ++c)
    for (int j = 0; j < rank; ++j) coeff(c, j) = normal(rng);

  // target[c] is the post-pipeline slice of column c before per-sensor scaling
  std::vector<Eigen::MatrixXd> target(cols, Eigen::MatrixXd::Zero(n, kSensorCount));
  for (int c = 0; c < cols; ++c)
    for (int j = 0; j < rank; ++j) target[c] += coeff(c, j) * basis[j];

  // unit per-sensor signal variance
  for (int s = 0; s < kSensorCount; ++s) {
    double ss = 0.0;
    for (const auto& t : target) ss += t.col(s).squaredNorm();
    const double sd = std::sqrt(ss / (static_cast<double>(cols) * n));
    if (sd > 0.0)
      for (auto& t : target) t.col(s) /= sd;
  }

  if (config.noise_sigma > 0.0) {
    std::vector<Eigen::MatrixXd> noise(cols, Eigen::MatrixXd(n, kSensorCount));
    for (auto& e : noise)
      for (int t = 0; t < n; ++t)
        for (int s = 0; s < kSensorCount; ++s) e(t, s) = config.noise_sigma * normal(rng);
    for (int s = 0; s < kSensorCount; ++s) {
      double sum = 0.0;
      for (const auto& e : noise) sum += e.col(s).sum();
      const double mean = sum / (static_cast<double>(cols) * n);
      for (auto& e : noise) e.col(s).array() -= mean;
    }
    for (int c = 0; c < cols; ++c) target[c] += noise[c];
  }

  // Sensor gain and baseline; studentisation removes both.
  std::uniform_real_distribution<double> gain_dist(0.5, 3.0);
  std::uniform_real_distribution<double> offset_dist(-2.0, 2.0);
  Eigen::VectorXd gain(kSensorCount), offset(kSensorCount);
  for (int s = 0; s < kSensorCount; ++s) {
    gain(s) = gain_dist(rng);
    offset(s) = (s >= kFirstAccelChannel && s < kFirstAccelChannel + kAccelChannelCount) ? 0.0 : offset_dist(rng);
  }

  const auto lengths = config.admissible_lengths();
  std::uniform_int_distribution<std::size_t> pick_length(0, lengths.size() - 1);

  std::vector<RawRecording> corpus;
  corpus.reserve(cols);
  for (int k = 0; k < config.gestures; ++k) {
    for (int l = 0; l < config.realisations; ++l) {
      const int c = k * config.realisations + l;
      Eigen::MatrixXd knots = target[c];
      for (int s = kFirstAccelChannel; s < kFirstAccelChannel + kAccelChannelCount; ++s)
        knots.col(s) = second_difference(knots.col(s));
      for (int s = 0; s < kSensorCount; ++s) knots.col(s) = knots.col(s) * gain(s) + Eigen::VectorXd::Constant(n, offset(s));

      // Raw grid of length 1 + m(n-1) holds knot j at index j*m; linear in between.
      const int len = lengths[pick_length(rng)];
      const int m = (len - 1) / (n - 1);
      Eigen::MatrixXd samples(len, kSensorCount);
      for (int i = 0; i < len; ++i) {
        const int j = i / m;
        const int r = i % m;
        if (r == 0) {
          samples.row(i) = knots.row(j);
        } else {
          const double gamma = static_cast<double>(r) / m;
          samples.row(i) = knots.row(j) + gamma * (knots.row(j + 1) - knots.row(j));
        }
      }
      auto meta = meta_for_slot(k + 1, l + 1);
      corpus.emplace_back(meta, std::move(samples));
    }
  }
  return corpus;
}

Eigen::MatrixXd synthesize_spectral_matrix(int rows, int cols, std::span<const double> spectrum,
                                           std::uint64_t seed) {
  const int q = std::min(rows, cols);
  if (rows < 1 || cols < 1 || static_cast<int>(spectrum.size()) > q)
    throw Error(ErrorCode::BadConfig, "spectrum longer than min(rows, cols)");
  const int k = static_cast<int>(spectrum.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto orthonormal = [&](int dim) {
    Eigen::MatrixXd g(dim, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < dim; ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, k);
    return q;
  };
  const Eigen::MatrixXd left = orthonormal(rows);
  const Eigen::MatrixXd right = orthonormal(cols);
  Eigen::VectorXd s(k);
  for (int i = 0; i < k; ++i) s(i) = spectrum[i];
  return left * s.asDiagonal() * right.transpose();
}

}  // namespace eigengesture
