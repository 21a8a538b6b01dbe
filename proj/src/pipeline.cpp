#include "eigengesture/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include "eigengesture/decomposition.hpp"
#include "eigengesture/error.hpp"
#include "eigengesture/plot.hpp"
#include "eigengesture/text_io.hpp"
#include "eigengesture/visualize.hpp"

namespace eigengesture {

std::string_view to_string(Emit e) {
  switch (e) {
    case Emit::Corpus: return "corpus";
    case Emit::DataMatrix: return "data_matrix";
    case Emit::Spectrum: return "spectrum";
    case Emit::ErrorCurve: return "error_curve";
    case Emit::ColumnError: return "column_error";
    case Emit::Eigengestures: return "eigengestures";
    case Emit::Reconstruction: return "reconstruction";
    case Emit::Plots: return "plots";
  }
  return "";
}

Emit parse_emit(std::string_view text) {
  for (auto e : {Emit::Corpus, Emit::DataMatrix, Emit::Spectrum, Emit::ErrorCurve, Emit::ColumnError,
                 Emit::Eigengestures, Emit::Reconstruction, Emit::Plots})
    if (to_string(e) == text) return e;
  throw Error(ErrorCode::BadConfig, "unknown emit target '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  const auto bad = [](const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); };
  if (input && synth) bad("give either an input corpus or a synthetic config, not both");
  if (!input && !synth) bad("no input corpus or synthetic config given");
  if (resample_n < 2) bad("resample length must be >= 2");
  if (!(quantile_lo >= 0.0 && quantile_lo < quantile_hi && quantile_hi <= 1.0))
    bad("quantiles must satisfy 0 <= lo < hi <= 1");
  if (gestures && *gestures < 1) bad("K override must be >= 1");
  if (realisations && *realisations < 1) bad("L override must be >= 1");
  if (eigengesture_count < 1) bad("eigengesture count must be >= 1");
  if (rank < 1) bad("rank must be >= 1");
  if (neutral_pose && neutral_pose->size() != kSensorCount) bad("neutral pose needs 10 values");
  if (gesture && (gesture->first < 1 || gesture->second < 1)) bad("gesture indices are 1-based");
  if (synth) {
    auto s = *synth;
    s.resample_n = resample_n;
    s.seed = seed;
    s.validate();
  }
}

namespace {

std::string two_digit(int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", v);
  return buf;
}

nlohmann::ordered_json config_echo(const RunConfig& c) {
  nlohmann::ordered_json j;
  if (c.input) j["input"] = c.input->generic_string();
  if (c.synth) {
    j["synth"] = {{"K", c.synth->gestures},         {"L", c.synth->realisations},
                  {"true_rank", c.synth->true_rank}, {"noise_sigma", c.synth->noise_sigma},
                  {"min_length", c.synth->min_length}, {"max_length", c.synth->max_length}};
  }
  j["resample_n"] = c.resample_n;
  if (c.gestures) j["K"] = *c.gestures;
  if (c.realisations) j["L"] = *c.realisations;
  j["order"] = c.order == PipelineOrder::Resampled ? "resampled" : "physical";
  j["quantiles"] = {c.quantile_lo, c.quantile_hi};
  j["seed"] = c.seed;
  auto emit = nlohmann::ordered_json::array();
  for (auto e : c.emit) emit.push_back(to_string(e));
  j["emit"] = emit;
  j["eigengesture_count"] = c.eigengesture_count;
  j["rank"] = c.rank;
  if (c.gesture) j["gesture"] = {c.gesture->first, c.gesture->second};
  return j;
}

void add_corpus_files(OutputFiles& files, const std::vector<RawRecording>& recordings) {
  CorpusManifest manifest;
  for (const auto& rec : recordings) {
    const std::string rel = "recordings/" + recording_file_name(rec.meta());
    files[rel] = format_recording(rec);
    manifest.recordings.push_back({rel, rec.meta()});
  }
  files["corpus.json"] = format_corpus_manifest(manifest);
}

}  // namespace

OutputFiles synth_outputs(const SynthConfig& config) {
  OutputFiles files;
  add_corpus_files(files, synthesize_corpus(config));
  return files;
}

SynthConfig parse_synth_spec(std::string_view spec) {
  SynthConfig cfg;
  spec = trim(spec);
  if (spec.empty() || spec == "default") return cfg;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const auto item = trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::BadConfig, "synth spec item '" + std::string(item) + "' lacks '='");
    const auto key = trim(item.substr(0, eq));
    const auto value = parse_number(item.substr(eq + 1));
    if (!value) throw Error(ErrorCode::BadConfig, "synth spec value for '" + std::string(key) + "' is not a number");
    const auto as_int = [&] {
      if (*value != std::floor(*value)) throw Error(ErrorCode::BadConfig, "synth spec '" + std::string(key) + "' must be an integer");
      return static_cast<int>(*value);
    };
    if (key == "K") cfg.gestures = as_int();
    else if (key == "L") cfg.realisations = as_int();
    else if (key == "rank") cfg.true_rank = as_int();
    else if (key == "noise") cfg.noise_sigma = *value;
    else if (key == "min_len") cfg.min_length = as_int();
    else if (key == "max_len") cfg.max_length = as_int();
    else throw Error(ErrorCode::BadConfig, "unknown synth spec key '" + std::string(key) + "'");
  }
  return cfg;
}

RunResult run_pipeline(const RunConfig& config) {
  config.validate();
  RunResult result;
  auto& files = result.files;

  std::vector<RawRecording> recordings;
  if (config.input) {
    recordings = load_corpus(*config.input);
  } else {
    auto synth = *config.synth;
    synth.resample_n = config.resample_n;
    synth.seed = config.seed;
    recordings = synthesize_corpus(synth);
    check_manifest_closure(recordings, builtin_manifest());
  }
  if (config.emit.count(Emit::Corpus)) add_corpus_files(files, recordings);

  PreprocessOptions pre;
  pre.resample_n = config.resample_n;
  pre.order = config.order;
  pre.gestures = config.gestures;
  pre.realisations = config.realisations;
  const auto prepared = preprocess_corpus(recordings, pre);
  const auto& matrix = prepared.matrix;
  const auto& lay = matrix.layout;

  const auto decomposition = svd(matrix);
  const int q = decomposition.q();
  const auto curve = error_curve(matrix, decomposition, q);
  if (curve.degenerate) result.warnings.push_back("DegenerateSpectrum: sigma_2..sigma_q are zero");
  const bool plots = config.emit.count(Emit::Plots) > 0;

  if (config.emit.count(Emit::DataMatrix)) {
    files["data_matrix.csv"] = format_data_matrix_csv(matrix);
    files["sensor_stats.csv"] = format_sensor_stats_csv(prepared.tensor);
  }
  if (config.emit.count(Emit::Spectrum)) {
    files["spectrum.csv"] = format_spectrum_csv(decomposition);
    if (plots) {
      std::vector<double> s(decomposition.sigma.data(), decomposition.sigma.data() + q);
      files["spectrum.svg"] = render_curve_svg(s, "Singular values", "index", "sigma");
    }
  }
  if (config.emit.count(Emit::ErrorCurve)) {
    files["error_curve.csv"] = format_error_curve_csv(curve);
    if (plots)
      files["error_curve.svg"] =
          render_curve_svg(curve.d, "Relative distance to rank-n approximation", "n", "d(n)");
  }
  if (config.emit.count(Emit::ColumnError))
    files["error_curve_columns.csv"] = format_column_error_csv(column_error_curve(decomposition, q));

  if (config.emit.count(Emit::Eigengestures)) {
    const int count = config.eigengesture_count;
    if (count > q)
      throw Error(ErrorCode::CountOutOfRange, "eigengesture count " + std::to_string(count) + " exceeds q = " +
                                                  std::to_string(q));
    const auto stats = sensor_stats(prepared.tensor, config.quantile_lo, config.quantile_hi);
    const Eigen::VectorXd neutral = config.neutral_pose.value_or(Eigen::VectorXd::Zero(kSensorCount));
    const auto frames = config.frames.value_or(default_frame_indices(lay.samples));
    if (frames.empty()) throw Error(ErrorCode::FrameOutOfRange, "no frames selected");
    for (int t : frames)
      if (t < 1 || t > lay.samples)
        throw Error(ErrorCode::FrameOutOfRange,
                    "frame " + std::to_string(t) + " outside 1.." + std::to_string(lay.samples));
    for (const auto& eig : eigengestures(decomposition, count)) {
      const auto remapped = remap(eig, stats, neutral);
      for (int s : remapped.flat_channels)
        result.warnings.push_back("FlatEigengestureChannel: eigengesture " + std::to_string(eig.index) + " channel " +
                                  std::string(kChannelNames[s]));
      const std::string stem = "eigengestures/eigengesture_" + two_digit(eig.index);
      files[stem + ".csv"] = format_remapped_csv(remapped);
      if (plots) {
        files[stem + ".svg"] = render_timeseries_svg(remapped.values, "Eigengesture " + std::to_string(eig.index));
        files[stem + "_poses.svg"] = render_pose_frames_svg(remapped, frames);
      }
    }
  }

  if (config.emit.count(Emit::Reconstruction)) {
    auto [k, l] = config.gesture.value_or(std::pair{3, 2});
    if (!config.gesture && (k > lay.gestures || l > lay.realisations)) k = l = 1;
    if (k > lay.gestures || l > lay.realisations)
      throw Error(ErrorCode::UnknownRealisation,
                  "(" + std::to_string(k) + "," + std::to_string(l) + ") not in the data matrix");
    const int rank = config.rank;
    const auto approx = reconstruct_gesture(decomposition, k - 1, l - 1, rank);
    const auto original = matrix.unflatten_column(lay.column_of(k - 1, l - 1));
    const std::string tag = "k" + std::to_string(k) + "_l" + std::to_string(l);
    const std::string rtag = "rank" + std::to_string(rank);
    const std::vector<std::string> ocomment = {"preprocessed realisation " + tag};
    const std::vector<std::string> rcomment = {"rank-" + std::to_string(rank) + " reconstruction of " + tag};
    files["reconstruction/original_" + tag + ".csv"] = format_gesture_csv(original, ocomment);
    files["reconstruction/" + rtag + "_" + tag + ".csv"] = format_gesture_csv(approx, rcomment);
    if (plots) {
      const std::string name = std::string(builtin_manifest().find(k) ? builtin_manifest().at(k).name : "gesture");
      files["reconstruction/original_" + tag + ".svg"] =
          render_timeseries_svg(original, name + " " + tag + ": original");
      files["reconstruction/" + rtag + "_" + tag + ".svg"] =
          render_timeseries_svg(approx, name + " " + tag + ": first " + std::to_string(rank) + " components");
      files["reconstruction/comparison_" + rtag + "_" + tag + ".svg"] =
          render_comparison_svg(original, "a) original data", approx,
                                "b) approximation, " + std::to_string(rank) + " components");
    }
  }

  auto& report = result.report;
  report["tool"] = "eigengesture";
  report["version"] = kVersion;
  report["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION);
  report["config"] = config_echo(config);
  report["layout"] = {{"K", lay.gestures}, {"L", lay.realisations}, {"N", lay.samples}, {"S", lay.sensors}};
  report["recordings"] = recordings.size();
  const double total = decomposition.sigma.squaredNorm();
  auto head = nlohmann::ordered_json::array();
  for (int i = 0; i < std::min(q, 10); ++i) head.push_back(decomposition.sigma(i));
  report["spectrum"] = {{"q", q},
                        {"sweeps", decomposition.sweeps},
                        {"frobenius_norm", std::sqrt(total)},
                        {"sigma_head", head},
                        {"numerical_rank", (decomposition.sigma.array() > 1e-8 * decomposition.sigma(0)).count()}};
  nlohmann::ordered_json d;
  for (int n : {1, 20, 50, 100}) {
    if (n <= q)
      d[std::to_string(n)] = curve.d[n - 1];
    else
      d[std::to_string(n)] = nullptr;
  }
  report["error_curve"] = d;
  report["degenerate_spectrum"] = curve.degenerate;
  report["warnings"] = result.warnings;
  files["report.json"] = report.dump(2) + "\n";
  return result;
}

void commit_outputs(const std::filesystem::path& dir, const OutputFiles& files) {
  for (const auto& [rel, content] : files) write_text_file_atomic(dir / rel, content);
}

}  // namespace eigengesture
