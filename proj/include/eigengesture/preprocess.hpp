#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eigengesture/dataset.hpp"

namespace eigengesture {

inline constexpr int kDefaultResampleLength = 20;

// Shape of the analysis: K gesture types x L realisations x N samples x S sensors.
struct MatrixLayout {
  int gestures = 0;
  int realisations = 0;
  int samples = 0;
  int sensors = kSensorCount;

  int rows() const { return samples * sensors; }
  int cols() const { return gestures * realisations; }
  // Sensor-major, time-minor row order.
  int row_of(int t, int s) const { return s * samples + t; }
  int column_of(int k, int l) const { return k * realisations + l; }
  std::pair<int, int> slot_of_column(int col) const { return {col / realisations, col % realisations}; }

  bool operator==(const MatrixLayout&) const = default;
};

struct ResampledGesture {
  RecordingMeta meta;
  Eigen::MatrixXd values;  // N x S
};

// Piecewise-linear resampling of every column from a uniform grid over [0,1]
// with samples.rows() points onto a uniform grid with n points.
Eigen::MatrixXd resample_channels(const Eigen::MatrixXd& samples, int n);
ResampledGesture resample(const RawRecording& recording, int n);

// Rectangle-rule double integration of the three accel channels with zero
// initial velocity and position; other channels are copied unchanged.
Eigen::MatrixXd integrate_acceleration(const Eigen::MatrixXd& samples, double dt);
ResampledGesture integrate_acceleration(const ResampledGesture& gesture, double dt);

class GestureTensor {
 public:
  GestureTensor() = default;
  GestureTensor(int gestures, int realisations, int samples, int sensors = kSensorCount);

  int gestures() const { return gestures_; }
  int realisations() const { return realisations_; }
  int samples() const { return samples_; }
  int sensors() const { return sensors_; }
  MatrixLayout layout() const { return {gestures_, realisations_, samples_, sensors_}; }

  double& at(int k, int l, int t, int s) { return data_[index(k, l, t, s)]; }
  double at(int k, int l, int t, int s) const { return data_[index(k, l, t, s)]; }

  Eigen::MatrixXd slice(int k, int l) const;  // samples x sensors
  void set_slice(int k, int l, const Eigen::MatrixXd& values);

  // All values of one sensor over (k, l, t), in storage order.
  std::vector<double> sensor_values(int s) const;

  bool integrated = false;
  bool studentised = false;
  Eigen::VectorXd sensor_means;  // set by studentise
  Eigen::VectorXd sensor_stds;

 private:
  std::size_t index(int k, int l, int t, int s) const {
    return ((static_cast<std::size_t>(k) * realisations_ + l) * samples_ + t) * sensors_ + s;
  }

  int gestures_ = 0;
  int realisations_ = 0;
  int samples_ = 0;
  int sensors_ = 0;
  std::vector<double> data_;
};

// Slot (k, l) is taken from each gesture's metadata: k = gesture_id - 1,
// l = realisation() - 1.
GestureTensor assemble_tensor(std::span<const ResampledGesture> gestures, int gestures_k, int realisations_l);

// Applies integrate_acceleration to every (k, l) slice.
GestureTensor integrate_tensor(const GestureTensor& tensor, double dt);

inline constexpr double kDegenerateSensorThreshold = 1e-12;

// Per-sensor centring and scaling over all (k, l, t), population convention.
GestureTensor studentise(const GestureTensor& tensor);

struct DataMatrix {
  Eigen::MatrixXd X;  // (N*S) x (K*L)
  MatrixLayout layout;

  Eigen::MatrixXd unflatten_column(int col) const;  // N x S
};

DataMatrix flatten(const GestureTensor& tensor);
GestureTensor unflatten(const DataMatrix& matrix);

// Packs an N x S matrix into a column of the sensor-major row order, and back.
Eigen::VectorXd vectorise(const Eigen::MatrixXd& values);
Eigen::MatrixXd unvectorise(const Eigen::VectorXd& column, int samples, int sensors);

enum class PipelineOrder {
  Resampled,  // resample, tensorise, integrate, studentise
  Physical,   // integrate on the raw grid, resample, tensorise, studentise
};

struct PreprocessOptions {
  int resample_n = kDefaultResampleLength;
  PipelineOrder order = PipelineOrder::Resampled;
  double integration_dt = 1.0;  // resampled order; physical order uses each recording's dt_seconds
  std::optional<int> gestures;  // K override; recordings beyond it are dropped
  std::optional<int> realisations;
};

struct PreprocessResult {
  GestureTensor tensor;  // studentised
  DataMatrix matrix;
};

PreprocessResult preprocess_corpus(std::span<const RawRecording> recordings, const PreprocessOptions& options = {});

// Delimited-text dump of X with row/column index maps as header comments.
std::string format_data_matrix_csv(const DataMatrix& matrix);
std::string format_sensor_stats_csv(const GestureTensor& tensor);

}  // namespace eigengesture
