// eigengesture: command-line driver for the gesture PCA pipeline.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eigengesture/error.hpp"
#include "eigengesture/pipeline.hpp"
#include "eigengesture/plot.hpp"
#include "eigengesture/text_io.hpp"
#include "eigengesture/visualize.hpp"

namespace eg = eigengesture;

namespace {

struct Flags {
  std::string input;
  std::string synth;
  bool synth_given = false;
  int rank = 20;
  std::string gesture;
  std::string out = "out";
  std::uint64_t seed = 1;
  std::string order = "resampled";
  std::vector<std::string> emit;
  std::vector<double> quantiles;
  int resample_n = eg::kDefaultResampleLength;
  int gestures = 0;
  int realisations = 0;
  int count = 2;
  std::vector<int> frames;
  std::vector<double> neutral;
  // render
  std::string matrix;
  std::string title;
};

void add_pipeline_flags(CLI::App* app, Flags& f) {
  app->add_option("--input", f.input, "Corpus manifest (corpus.json)");
  app->add_option("--synth", f.synth, "Synthetic corpus spec, e.g. K=22,L=20,rank=15,noise=0.05 (or 'default')");
  app->add_option("--out", f.out, "Output directory")->capture_default_str();
  app->add_option("--seed", f.seed, "Random seed for synthetic corpora")->capture_default_str();
  app->add_option("--order", f.order, "Pipeline order")->check(CLI::IsMember({"resampled", "physical"}))->capture_default_str();
  app->add_option("--quantiles", f.quantiles, "Quantile pair lo,hi for the remap")->delimiter(',')->expected(2);
  app->add_option("--resample-n", f.resample_n, "Samples per resampled gesture")->capture_default_str();
  app->add_option("--gestures", f.gestures, "Override K (number of gesture types)");
  app->add_option("--realisations", f.realisations, "Override L (realisations per type)");
}

eg::RunConfig make_config(const Flags& f) {
  eg::RunConfig c;
  if (!f.input.empty()) c.input = f.input;
  if (!f.synth.empty() || f.synth_given) c.synth = eg::parse_synth_spec(f.synth);
  c.output_dir = f.out;
  c.seed = f.seed;
  c.order = f.order == "physical" ? eg::PipelineOrder::Physical : eg::PipelineOrder::Resampled;
  if (f.quantiles.size() == 2) {
    c.quantile_lo = f.quantiles[0];
    c.quantile_hi = f.quantiles[1];
  }
  c.resample_n = f.resample_n;
  if (f.gestures > 0) c.gestures = f.gestures;
  if (f.realisations > 0) c.realisations = f.realisations;
  c.rank = f.rank;
  c.eigengesture_count = f.count;
  if (!f.frames.empty()) c.frames = f.frames;
  if (!f.neutral.empty()) {
    c.neutral_pose = Eigen::VectorXd(static_cast<Eigen::Index>(f.neutral.size()));
    for (std::size_t i = 0; i < f.neutral.size(); ++i) (*c.neutral_pose)(static_cast<Eigen::Index>(i)) = f.neutral[i];
  }
  if (!f.gesture.empty()) {
    const auto colon = f.gesture.find(':');
    const auto k = eg::parse_number(std::string_view(f.gesture).substr(0, colon));
    const auto l = colon == std::string::npos ? std::nullopt
                                              : eg::parse_number(std::string_view(f.gesture).substr(colon + 1));
    if (!k || !l) throw eg::Error(eg::ErrorCode::BadConfig, "--gesture expects K:L");
    c.gesture = {static_cast<int>(*k), static_cast<int>(*l)};
  }
  if (!f.emit.empty()) {
    c.emit.clear();
    for (const auto& e : f.emit) c.emit.insert(eg::parse_emit(e));
  }
  return c;
}

int run(const eg::RunConfig& config) {
  auto result = eg::run_pipeline(config);
  eg::commit_outputs(config.output_dir, result.files);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << result.files.size() << " files to " << config.output_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigengesture analysis of glove motion-capture recordings"};
  app.require_subcommand(1);
  Flags f;

  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus (recordings + corpus.json)");
  synth->add_option("--synth", f.synth, "Synthetic corpus spec");
  synth->add_option("--out", f.out, "Output directory")->capture_default_str();
  synth->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  synth->add_option("--resample-n", f.resample_n, "Resampling length the corpus is built for")->capture_default_str();

  auto* preprocess = app.add_subcommand("preprocess", "Dump the studentised data matrix and sensor statistics");
  auto* decompose = app.add_subcommand("decompose", "Singular value spectrum");
  auto* curve = app.add_subcommand("error-curve", "Normalised low-rank approximation error d(n)");
  auto* eigen = app.add_subcommand("eigengestures", "Remapped eigengestures, time plots and hand poses");
  auto* recon = app.add_subcommand("reconstruct", "Original vs rank-n reconstruction of one realisation");
  auto* runall = app.add_subcommand("run", "Full pipeline with a run report");
  auto* render = app.add_subcommand("render", "Render an N x 10 gesture CSV as a time-series SVG");

  for (auto* sub : {preprocess, decompose, curve, eigen, recon, runall}) {
    add_pipeline_flags(sub, f);
    sub->add_flag("--plots", "Also write SVG plots");
  }
  for (auto* sub : {eigen, runall}) {
    sub->add_option("--count", f.count, "Number of eigengestures")->capture_default_str();
    sub->add_option("--frames", f.frames, "1-based frames for hand poses")->delimiter(',');
    sub->add_option("--neutral", f.neutral, "Neutral pose, 10 values")->delimiter(',')->expected(10);
  }
  for (auto* sub : {recon, runall}) {
    sub->add_option("--rank", f.rank, "Reconstruction rank n")->capture_default_str();
    sub->add_option("--gesture", f.gesture, "Realisation K:L (1-based)");
  }
  runall->add_option("--emit", f.emit,
                     "Comma list: corpus,data_matrix,spectrum,error_curve,column_error,eigengestures,"
                     "reconstruction,plots")
      ->delimiter(',');
  render->add_option("--matrix", f.matrix, "Gesture CSV (N rows x 10 channels)")->required();
  render->add_option("--out", f.out, "Output SVG path")->required();
  render->add_option("--title", f.title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(eg::ErrorFamily::Config);
  }

  try {
    if (*synth) {
      auto cfg = eg::parse_synth_spec(f.synth);
      cfg.seed = f.seed;
      cfg.resample_n = f.resample_n;
      const auto files = eg::synth_outputs(cfg);
      eg::commit_outputs(f.out, files);
      std::cout << "wrote " << files.size() << " files to " << f.out << "\n";
      return 0;
    }
    if (*render) {
      const auto table = eg::parse_matrix_csv(eg::read_text_file(f.matrix));
      const auto title = f.title.empty() ? std::filesystem::path(f.matrix).stem().string() : f.title;
      eg::emit_timeseries_plot(table.values, f.out, title);
      std::cout << "wrote " << f.out << "\n";
      return 0;
    }

    f.synth_given = false;
    for (auto* sub : {preprocess, decompose, curve, eigen, recon, runall})
      if (*sub && sub->count("--synth") > 0) f.synth_given = true;
    auto config = make_config(f);
    const auto* active = app.get_subcommands().front();
    const bool plots = active->count("--plots") > 0;
    if (active != runall) {
      config.emit.clear();
      if (active == preprocess) config.emit.insert(eg::Emit::DataMatrix);
      if (active == decompose) config.emit.insert(eg::Emit::Spectrum);
      if (active == curve) {
        config.emit.insert(eg::Emit::ErrorCurve);
        config.emit.insert(eg::Emit::ColumnError);
      }
      if (active == eigen) config.emit.insert(eg::Emit::Eigengestures);
      if (active == recon) config.emit.insert(eg::Emit::Reconstruction);
    }
    if (plots) config.emit.insert(eg::Emit::Plots);
    return run(config);
  } catch (const eg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
