#include "eigengesture/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "eigengesture/error.hpp"
#include "eigengesture/text_io.hpp"

namespace eigengesture {

Eigen::MatrixXd resample_channels(const Eigen::MatrixXd& samples, int n) {
  if (n < 2) throw Error(ErrorCode::BadTarget, "resample length must be >= 2, got " + std::to_string(n));
  const auto src = samples.rows();
  if (src < 2) throw Error(ErrorCode::TooShort, "need at least 2 samples to resample");
  if (src == n) return samples;

  Eigen::MatrixXd out(n, samples.cols());
  for (int t = 0; t < n; ++t) {
    // Position on the source grid. The numerator is an exact integer, so knots
    // shared by both grids land exactly on a source index.
    const double pos = static_cast<double>(static_cast<long long>(t) * (src - 1)) / (n - 1);
    const auto j = static_cast<Eigen::Index>(std::floor(pos));
    if (j >= src - 1) {
      out.row(t) = samples.row(src - 1);
      continue;
    }
    const double gamma = pos - static_cast<double>(j);
    if (gamma == 0.0) {
      out.row(t) = samples.row(j);
    } else {
      out.row(t) = samples.row(j) + gamma * (samples.row(j + 1) - samples.row(j));
    }
  }
  return out;
}

ResampledGesture resample(const RawRecording& recording, int n) {
  return {recording.meta(), resample_channels(recording.samples(), n)};
}

Eigen::MatrixXd integrate_acceleration(const Eigen::MatrixXd& samples, double dt) {
  if (samples.cols() != kSensorCount)
    throw Error(ErrorCode::BadShape, "integration expects 10 channels in canonical order");
  if (!(dt > 0.0)) throw Error(ErrorCode::BadConfig, "integration step must be positive");
  Eigen::MatrixXd out = samples;
  for (int s = kFirstAccelChannel; s < kFirstAccelChannel + kAccelChannelCount; ++s) {
    double velocity = 0.0, position = 0.0;
    for (Eigen::Index t = 0; t < samples.rows(); ++t) {
      velocity += samples(t, s) * dt;
      position += velocity * dt;
      out(t, s) = position;
    }
  }
  return out;
}

ResampledGesture integrate_acceleration(const ResampledGesture& gesture, double dt) {
  return {gesture.meta, integrate_acceleration(gesture.values, dt)};
}

GestureTensor::GestureTensor(int gestures, int realisations, int samples, int sensors)
    : gestures_(gestures), realisations_(realisations), samples_(samples), sensors_(sensors) {
  if (gestures < 1 || realisations < 1 || samples < 1 || sensors < 1)
    throw Error(ErrorCode::BadShape, "tensor dimensions must be positive");
  data_.assign(static_cast<std::size_t>(gestures) * realisations * samples * sensors, 0.0);
}

Eigen::MatrixXd GestureTensor::slice(int k, int l) const {
  Eigen::MatrixXd out(samples_, sensors_);
  for (int t = 0; t < samples_; ++t)
    for (int s = 0; s < sensors_; ++s) out(t, s) = at(k, l, t, s);
  return out;
}

void GestureTensor::set_slice(int k, int l, const Eigen::MatrixXd& values) {
  if (values.rows() != samples_ || values.cols() != sensors_)
    throw Error(ErrorCode::BadShape, "slice shape does not match tensor");
  for (int t = 0; t < samples_; ++t)
    for (int s = 0; s < sensors_; ++s) at(k, l, t, s) = values(t, s);
}

std::vector<double> GestureTensor::sensor_values(int s) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(gestures_) * realisations_ * samples_);
  for (int k = 0; k < gestures_; ++k)
    for (int l = 0; l < realisations_; ++l)
      for (int t = 0; t < samples_; ++t) out.push_back(at(k, l, t, s));
  return out;
}

GestureTensor assemble_tensor(std::span<const ResampledGesture> gestures, int gestures_k, int realisations_l) {
  if (gestures.empty()) throw Error(ErrorCode::EmptyInput, "no gestures to assemble");
  const auto n = static_cast<int>(gestures.front().values.rows());
  const auto sensors = static_cast<int>(gestures.front().values.cols());
  GestureTensor tensor(gestures_k, realisations_l, n, sensors);
  std::vector<char> seen(static_cast<std::size_t>(gestures_k) * realisations_l, 0);
  for (const auto& g : gestures) {
    if (g.values.rows() != n || g.values.cols() != sensors)
      throw Error(ErrorCode::BadShape, "resampled gestures must share one shape");
    const int k = g.meta.gesture_id - 1;
    const int l = g.meta.realisation() - 1;
    if (k < 0 || k >= gestures_k || l < 0 || l >= realisations_l)
      throw Error(ErrorCode::SlotOutOfRange, "gesture " + std::to_string(k + 1) + " realisation " +
                                                 std::to_string(l + 1) + " outside K x L");
    auto& flag = seen[static_cast<std::size_t>(k) * realisations_l + l];
    if (flag)
      throw Error(ErrorCode::DuplicateRealisation,
                  "gesture " + std::to_string(k + 1) + " realisation " + std::to_string(l + 1));
    flag = 1;
    tensor.set_slice(k, l, g.values);
  }
  for (int k = 0; k < gestures_k; ++k)
    for (int l = 0; l < realisations_l; ++l)
      if (!seen[static_cast<std::size_t>(k) * realisations_l + l])
        throw Error(ErrorCode::MissingRealisation,
                    "gesture " + std::to_string(k + 1) + " realisation " + std::to_string(l + 1));
  return tensor;
}

GestureTensor integrate_tensor(const GestureTensor& tensor, double dt) {
  GestureTensor out = tensor;
  for (int k = 0; k < tensor.gestures(); ++k)
    for (int l = 0; l < tensor.realisations(); ++l)
      out.set_slice(k, l, integrate_acceleration(tensor.slice(k, l), dt));
  out.integrated = true;
  return out;
}

namespace {

// Neumaier-compensated sum in a fixed order.
double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

GestureTensor studentise(const GestureTensor& tensor) {
  GestureTensor out = tensor;
  const int sensors = tensor.sensors();
  out.sensor_means.resize(sensors);
  out.sensor_stds.resize(sensors);
  for (int s = 0; s < sensors; ++s) {
    auto values = tensor.sensor_values(s);
    const double count = static_cast<double>(values.size());
    const double mean = compensated_sum(values) / count;
    for (auto& v : values) v = (v - mean) * (v - mean);
    const double sd = std::sqrt(compensated_sum(values) / count);
    if (!(sd >= kDegenerateSensorThreshold))
      throw Error(ErrorCode::DegenerateSensor, "sensor " + std::string(s < kSensorCount ? kChannelNames[s] : "?") +
                                                   " has standard deviation " + format_number(sd));
    out.sensor_means(s) = mean;
    out.sensor_stds(s) = sd;
    for (int k = 0; k < tensor.gestures(); ++k)
      for (int l = 0; l < tensor.realisations(); ++l)
        for (int t = 0; t < tensor.samples(); ++t) out.at(k, l, t, s) = (tensor.at(k, l, t, s) - mean) / sd;
  }
  out.studentised = true;
  return out;
}

Eigen::VectorXd vectorise(const Eigen::MatrixXd& values) {
  // Eigen storage is column-major, so the sensor-major vectorisation is a reshape.
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

Eigen::MatrixXd unvectorise(const Eigen::VectorXd& column, int samples, int sensors) {
  if (column.size() != static_cast<Eigen::Index>(samples) * sensors)
    throw Error(ErrorCode::BadShape, "column length does not match N*S");
  return Eigen::Map<const Eigen::MatrixXd>(column.data(), samples, sensors);
}

Eigen::MatrixXd DataMatrix::unflatten_column(int col) const {
  return unvectorise(X.col(col), layout.samples, layout.sensors);
}

DataMatrix flatten(const GestureTensor& tensor) {
  if (!tensor.studentised) throw Error(ErrorCode::NotStudentised, "flatten requires a studentised tensor");
  DataMatrix m;
  m.layout = tensor.layout();
  m.X.resize(m.layout.rows(), m.layout.cols());
  for (int k = 0; k < tensor.gestures(); ++k)
    for (int l = 0; l < tensor.realisations(); ++l) m.X.col(m.layout.column_of(k, l)) = vectorise(tensor.slice(k, l));
  return m;
}

GestureTensor unflatten(const DataMatrix& matrix) {
  const auto& lay = matrix.layout;
  if (matrix.X.rows() != lay.rows() || matrix.X.cols() != lay.cols())
    throw Error(ErrorCode::BadShape, "data matrix does not match its layout");
  GestureTensor tensor(lay.gestures, lay.realisations, lay.samples, lay.sensors);
  for (int c = 0; c < lay.cols(); ++c) {
    const auto [k, l] = lay.slot_of_column(c);
    tensor.set_slice(k, l, matrix.unflatten_column(c));
  }
  tensor.studentised = true;
  return tensor;
}

PreprocessResult preprocess_corpus(std::span<const RawRecording> recordings, const PreprocessOptions& options) {
  if (recordings.empty()) throw Error(ErrorCode::EmptyInput, "corpus is empty");
  if (options.resample_n < 2) throw Error(ErrorCode::BadTarget, "resample length must be >= 2");

  std::vector<ResampledGesture> resampled;
  int max_k = 0, max_l = 0;
  for (const auto& rec : recordings) {
    const int k = rec.meta().gesture_id;
    const int l = rec.meta().realisation();
    if (options.gestures && k > *options.gestures) continue;
    if (options.realisations && l > *options.realisations) continue;
    max_k = std::max(max_k, k);
    max_l = std::max(max_l, l);
    if (options.order == PipelineOrder::Physical) {
      const auto integrated = integrate_acceleration(rec.samples(), rec.meta().dt_seconds);
      resampled.push_back({rec.meta(), resample_channels(integrated, options.resample_n)});
    } else {
      resampled.push_back(resample(rec, options.resample_n));
    }
  }
  if (resampled.empty()) throw Error(ErrorCode::EmptyInput, "no recordings within the requested K x L");

  const int k_dim = options.gestures.value_or(max_k);
  const int l_dim = options.realisations.value_or(max_l);
  auto tensor = assemble_tensor(resampled, k_dim, l_dim);
  if (options.order == PipelineOrder::Resampled) {
    tensor = integrate_tensor(tensor, options.integration_dt);
  } else {
    tensor.integrated = true;
  }
  tensor = studentise(tensor);
  auto matrix = flatten(tensor);
  return {std::move(tensor), std::move(matrix)};
}

std::string format_data_matrix_csv(const DataMatrix& matrix) {
  const auto& lay = matrix.layout;
  std::vector<std::string> columns;
  columns.reserve(lay.cols());
  for (int c = 0; c < lay.cols(); ++c) {
    const auto [k, l] = lay.slot_of_column(c);
    columns.push_back("k" + std::to_string(k + 1) + "_l" + std::to_string(l + 1));
  }
  std::string rows = "row_index:";
  for (int r = 0; r < lay.rows(); ++r) {
    const int s = r / lay.samples;
    const int t = r % lay.samples;
    rows += (r ? ";" : " ");
    rows += std::to_string(r + 1) + "=(t" + std::to_string(t + 1) + ",";
    rows += s < kSensorCount ? std::string(kChannelNames[s]) : "s" + std::to_string(s + 1);
    rows += ")";
  }
  const std::vector<std::string> comments = {
      "data matrix X: rows = time x sensor (sensor-major, row = s*N + t), columns = realisations (k,l)",
      "layout: K=" + std::to_string(lay.gestures) + " L=" + std::to_string(lay.realisations) +
          " N=" + std::to_string(lay.samples) + " S=" + std::to_string(lay.sensors),
      "column_index: column c (1-based) = (k-1)*L + l",
      rows,
  };
  return format_matrix_csv(matrix.X, columns, comments);
}

std::string format_sensor_stats_csv(const GestureTensor& tensor) {
  if (!tensor.studentised || tensor.sensor_means.size() != tensor.sensors())
    throw Error(ErrorCode::NotStudentised, "sensor statistics are set by studentise");
  std::string out = "sensor,mean,std\n";
  for (int s = 0; s < tensor.sensors(); ++s) {
    out += s < kSensorCount ? std::string(kChannelNames[s]) : "s" + std::to_string(s + 1);
    out += ',' + format_number(tensor.sensor_means(s)) + ',' + format_number(tensor.sensor_stds(s)) + '\n';
  }
  return out;
}

}  // namespace eigengesture
