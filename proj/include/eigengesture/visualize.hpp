#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eigengesture/decomposition.hpp"
#include "eigengesture/preprocess.hpp"

namespace eigengesture {

inline constexpr double kDefaultLowQuantile = 0.05;
inline constexpr double kDefaultHighQuantile = 0.95;
inline constexpr double kFlatChannelThreshold = 1e-12;

// Linear-interpolation quantile of already sorted values:
// h = (m - 1) p + 1, j = floor(h), q = x[j] + (h - j)(x[j+1] - x[j]) with 1-based x.
double quantile_sorted(std::span<const double> sorted, double p);

// q(hi) - q(lo); throws Error(EmptyInput) on an empty list.
double quantile_dispersion(std::span<const double> values, double lo = kDefaultLowQuantile,
                           double hi = kDefaultHighQuantile);

// Per-sensor quantile spread over every (k, l, t) of a studentised tensor.
struct SensorStats {
  double lo = kDefaultLowQuantile;
  double hi = kDefaultHighQuantile;
  Eigen::VectorXd q_lo;
  Eigen::VectorXd q_hi;
  Eigen::VectorXd dispersion;
};

SensorStats sensor_stats(const GestureTensor& tensor, double lo = kDefaultLowQuantile,
                         double hi = kDefaultHighQuantile);

// values[t, s] = shape[t, s] * scale[s] + offset[s]
struct RemappedEigengesture {
  Eigengesture source;
  Eigen::VectorXd scale;
  Eigen::VectorXd offset;
  Eigen::MatrixXd values;
  Eigen::VectorXd neutral_pose;
  std::vector<int> flat_channels;  // channels whose eigengesture spread is below threshold; scale 0
};

// Scales each channel to the data's quantile spread and shifts it so the first
// frame sits on the neutral pose.
RemappedEigengesture remap(const Eigengesture& eig, const SensorStats& stats, const Eigen::VectorXd& neutral);

std::string format_remapped_csv(const RemappedEigengesture& remapped);

// Generic N x S matrix export with channel-name header.
std::string format_gesture_csv(const Eigen::MatrixXd& values, std::span<const std::string> comments = {});

}  // namespace eigengesture
