#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "eigengesture/dataset.hpp"
#include "eigengesture/preprocess.hpp"

namespace eigengesture {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Emit {
  Corpus,
  DataMatrix,
  Spectrum,
  ErrorCurve,
  ColumnError,
  Eigengestures,
  Reconstruction,
  Plots,
};

std::string_view to_string(Emit e);
Emit parse_emit(std::string_view text);

struct RunConfig {
  std::optional<std::filesystem::path> input;  // corpus manifest
  std::optional<SynthConfig> synth;            // used when no input is given
  int resample_n = kDefaultResampleLength;
  std::optional<int> gestures;      // K override
  std::optional<int> realisations;  // L override
  PipelineOrder order = PipelineOrder::Resampled;
  double quantile_lo = 0.05;
  double quantile_hi = 0.95;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;
  std::set<Emit> emit = {Emit::Spectrum, Emit::ErrorCurve, Emit::Eigengestures, Emit::Reconstruction, Emit::Plots};

  int eigengesture_count = 2;
  std::optional<std::vector<int>> frames;         // 1-based; default spreads five frames
  std::optional<Eigen::VectorXd> neutral_pose;    // default all zeros
  std::optional<std::pair<int, int>> gesture;     // 1-based (k, l); default (3, 2) when present
  int rank = 20;

  // Throws Error(BadConfig).
  void validate() const;
};

// Relative path -> file content; ordered so writes are deterministic.
using OutputFiles = std::map<std::string, std::string>;

struct RunResult {
  nlohmann::ordered_json report;
  OutputFiles files;  // includes report.json
  std::vector<std::string> warnings;
};

// Loads or synthesises the corpus, preprocesses, decomposes and renders the
// requested outputs entirely in memory.
RunResult run_pipeline(const RunConfig& config);

// Writes every file under dir with temp-file rename. Nothing is created when
// files is empty.
void commit_outputs(const std::filesystem::path& dir, const OutputFiles& files);

// Corpus files for a synthetic config: recordings/*.csv plus corpus.json.
OutputFiles synth_outputs(const SynthConfig& config);

// Parses "K=22,L=20,rank=15,noise=0.05,min_len=39,max_len=134"; "default" or
// an empty string keeps the defaults.
SynthConfig parse_synth_spec(std::string_view spec);

}  // namespace eigengesture
