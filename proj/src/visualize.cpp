#include "eigengesture/visualize.hpp"

#include <algorithm>
#include <cmath>

#include "eigengesture/error.hpp"
#include "eigengesture/text_io.hpp"

namespace eigengesture {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::EmptyInput, "quantile of an empty list");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadConfig, "quantile level must be in [0, 1]");
  const auto m = sorted.size();
  const double h = static_cast<double>(m - 1) * p + 1.0;
  const auto j = static_cast<std::size_t>(std::floor(h));  // 1-based
  const double gamma = h - static_cast<double>(j);
  if (j >= m) return sorted[m - 1];
  return sorted[j - 1] + gamma * (sorted[j] - sorted[j - 1]);
}

double quantile_dispersion(std::span<const double> values, double lo, double hi) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "dispersion of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, hi) - quantile_sorted(sorted, lo);
}

SensorStats sensor_stats(const GestureTensor& tensor, double lo, double hi) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) throw Error(ErrorCode::BadConfig, "quantiles must satisfy 0 <= lo < hi <= 1");
  SensorStats st;
  st.lo = lo;
  st.hi = hi;
  const int sensors = tensor.sensors();
  st.q_lo.resize(sensors);
  st.q_hi.resize(sensors);
  st.dispersion.resize(sensors);
  for (int s = 0; s < sensors; ++s) {
    auto values = tensor.sensor_values(s);
    std::sort(values.begin(), values.end());
    st.q_lo(s) = quantile_sorted(values, lo);
    st.q_hi(s) = quantile_sorted(values, hi);
    st.dispersion(s) = st.q_hi(s) - st.q_lo(s);
  }
  return st;
}

RemappedEigengesture remap(const Eigengesture& eig, const SensorStats& stats, const Eigen::VectorXd& neutral) {
  const auto sensors = eig.shape.cols();
  if (neutral.size() != sensors || stats.dispersion.size() != sensors)
    throw Error(ErrorCode::BadShape, "neutral pose and sensor stats must have one entry per sensor");
  if (eig.shape.rows() < 1) throw Error(ErrorCode::EmptyInput, "eigengesture has no samples");

  RemappedEigengesture out;
  out.source = eig;
  out.neutral_pose = neutral;
  out.scale.resize(sensors);
  out.offset.resize(sensors);
  out.values.resize(eig.shape.rows(), sensors);
  for (Eigen::Index s = 0; s < sensors; ++s) {
    const Eigen::VectorXd channel = eig.shape.col(s);
    const double spread = quantile_dispersion(std::span<const double>(channel.data(), channel.size()), stats.lo, stats.hi);
    if (spread < kFlatChannelThreshold) {
      out.scale(s) = 0.0;
      out.flat_channels.push_back(static_cast<int>(s));
    } else {
      out.scale(s) = stats.dispersion(s) / spread;
    }
    out.offset(s) = neutral(s) - eig.shape(0, s) * out.scale(s);
    // anchored at the first frame so values(0, s) is the neutral value exactly
    out.values.col(s) = ((channel.array() - eig.shape(0, s)) * out.scale(s)) + neutral(s);
  }
  return out;
}

std::string format_gesture_csv(const Eigen::MatrixXd& values, std::span<const std::string> comments) {
  if (values.cols() != kSensorCount) throw Error(ErrorCode::BadShape, "gesture matrices have 10 channels");
  std::vector<std::string> columns(kChannelNames.begin(), kChannelNames.end());
  return format_matrix_csv(values, columns, comments);
}

std::string format_remapped_csv(const RemappedEigengesture& remapped) {
  std::string scale = "scale:", offset = "offset:";
  for (Eigen::Index s = 0; s < remapped.scale.size(); ++s) {
    scale += (s ? "," : " ") + format_number(remapped.scale(s));
    offset += (s ? "," : " ") + format_number(remapped.offset(s));
  }
  const std::vector<std::string> comments = {
      "remapped eigengesture " + std::to_string(remapped.source.index) +
          ", sigma=" + format_number(remapped.source.singular_value) +
          ", energy_fraction=" + format_number(remapped.source.energy_fraction),
      scale,
      offset,
  };
  return format_gesture_csv(remapped.values, comments);
}

}  // namespace eigengesture
