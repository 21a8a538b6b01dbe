#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace eigengesture {

inline constexpr int kSensorCount = 10;
inline constexpr int kRepetitionsPerPerformer = 5;
inline constexpr double kDefaultSampleInterval = 0.030;

// Canonical glove channel order.
enum class Channel : int {
  ThumbBend = 0,
  IndexBend,
  MiddleBend,
  RingBend,
  LittleBend,
  AccelX,
  AccelY,
  AccelZ,
  Roll,
  Pitch,
};

inline constexpr std::array<std::string_view, kSensorCount> kChannelNames = {
    "thumb", "index", "middle", "ring", "little",
    "accel_x", "accel_y", "accel_z", "roll", "pitch"};

constexpr int channel_index(Channel c) { return static_cast<int>(c); }

inline constexpr int kFirstBendChannel = channel_index(Channel::ThumbBend);
inline constexpr int kFirstAccelChannel = channel_index(Channel::AccelX);
inline constexpr int kBendChannelCount = 5;
inline constexpr int kAccelChannelCount = 3;

enum class Tempo { Normal, Fast, Slow };

std::string_view to_string(Tempo tempo);
Tempo parse_tempo(std::string_view text);

struct RecordingMeta {
  int gesture_id = 1;    // 1..K, resolves in the gesture manifest
  int performer_id = 1;  // >= 1
  int repetition = 1;    // 1..5
  Tempo tempo = Tempo::Normal;
  double dt_seconds = kDefaultSampleInterval;

  // 1-based realisation slot: performers are laid out in blocks of five repetitions.
  int realisation() const { return (performer_id - 1) * kRepetitionsPerPerformer + repetition; }

  bool operator==(const RecordingMeta&) const = default;
};

// Metadata for the given 1-based realisation slot; inverse of RecordingMeta::realisation().
RecordingMeta meta_for_slot(int gesture_id, int realisation);

// One performance of one gesture: N_i x 10 samples in canonical channel order.
class RawRecording {
 public:
  RawRecording(RecordingMeta meta, Eigen::MatrixXd samples);

  const RecordingMeta& meta() const { return meta_; }
  const Eigen::MatrixXd& samples() const { return samples_; }
  int length() const { return static_cast<int>(samples_.rows()); }

 private:
  RecordingMeta meta_;
  Eigen::MatrixXd samples_;
};

enum class GestureClass { Symbolic, Deictic, Iconic, Manipulative };

std::string_view to_string(GestureClass cls);
GestureClass parse_gesture_class(std::string_view text);

// Significant motion components: hand translation, hand rotation, finger movement.
struct MotionSet {
  bool translation = false;
  bool rotation = false;
  bool fingers = false;

  std::string to_string() const;  // subset of "TRF", in that order
  static MotionSet parse(std::string_view text);
  bool operator==(const MotionSet&) const = default;
};

struct GestureEntry {
  int index = 0;
  std::string name;
  GestureClass gesture_class = GestureClass::Symbolic;
  MotionSet motion;
  bool periodic = false;
  std::string comment;
};

class GestureManifest {
 public:
  static constexpr int kEntryCount = 22;

  // Validates: 22 entries with indices 1..22 in order and unique names.
  explicit GestureManifest(std::vector<GestureEntry> entries);

  const std::vector<GestureEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const GestureEntry* find(int index) const;
  const GestureEntry& at(int index) const;

 private:
  std::vector<GestureEntry> entries_;
};

const GestureManifest& builtin_manifest();

struct SynthConfig {
  int gestures = GestureManifest::kEntryCount;  // K
  int realisations = 20;                        // L
  int true_rank = 15;
  double noise_sigma = 0.0;
  int min_length = 39;
  int max_length = 134;
  int resample_n = 20;
  std::uint64_t seed = 1;

  // Throws Error(BadConfig).
  void validate() const;

  // Recording lengths that keep every resampling knot on the raw grid: 1 + m (N - 1).
  std::vector<int> admissible_lengths() const;
};

// K*L recordings, ordered by gesture then realisation. After the resampled-order
// pipeline (resample to resample_n, unit-step integration, studentisation) the
// data matrix is a rank-true_rank matrix plus per-sensor-centred Gaussian noise
// of scale noise_sigma (relative to unit per-sensor signal variance), up to the
// per-sensor rescaling applied by studentisation.
std::vector<RawRecording> synthesize_corpus(const SynthConfig& config);

// rows x cols matrix Q1 diag(spectrum) Q2^T with Haar-random orthonormal factors.
Eigen::MatrixXd synthesize_spectral_matrix(int rows, int cols, std::span<const double> spectrum,
                                           std::uint64_t seed);

// Recording text format: optional '#' header lines, then one sample per line
// with exactly 10 comma-separated numbers.
RawRecording parse_recording(std::string_view text, const RecordingMeta& meta);
std::string format_recording(const RawRecording& recording);

RawRecording load_recording(const std::filesystem::path& path, const RecordingMeta& meta);
void save_recording(const std::filesystem::path& path, const RawRecording& recording);

struct CorpusEntry {
  std::string path;  // relative to the manifest's directory unless absolute
  RecordingMeta meta;
};

struct CorpusManifest {
  GestureManifest taxonomy = builtin_manifest();
  std::vector<CorpusEntry> recordings;
};

std::string format_corpus_manifest(const CorpusManifest& manifest);
CorpusManifest parse_corpus_manifest(std::string_view text);

// Loads every recording listed in the manifest; checks manifest closure.
std::vector<RawRecording> load_corpus(const std::filesystem::path& manifest_path,
                                      CorpusManifest* manifest_out = nullptr);

// Throws Error(UnknownGesture) if any recording's gesture id is not in the taxonomy.
void check_manifest_closure(std::span<const RawRecording> recordings, const GestureManifest& taxonomy);

// File name used when a corpus is written out, e.g. "g03_r02_p1_normal.csv".
std::string recording_file_name(const RecordingMeta& meta);

}  // namespace eigengesture
