#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>
#include <set>

#include "eigengesture/dataset.hpp"
#include "eigengesture/decomposition.hpp"
#include "eigengesture/error.hpp"
#include "eigengesture/preprocess.hpp"
#include "eigengesture/text_io.hpp"
#include "oracles.hpp"

namespace eg = eigengesture;
namespace fs = std::filesystem;

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

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("eigengesture_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("manifest rows transcribed from the gesture table") {
  const auto& m = eg::builtin_manifest();
  REQUIRE(m.size() == 22);

  const auto& ok = m.at(1);
  CHECK(ok.name == "A-OK");
  CHECK(ok.gesture_class == eg::GestureClass::Symbolic);
  CHECK(ok.motion.to_string() == "F");

  const auto& rot = m.at(18);
  CHECK(rot.name == "Rotating");
  CHECK(rot.gesture_class == eg::GestureClass::Manipulative);
  CHECK(rot.motion.to_string() == "R");

  const auto& rel = m.at(22);
  CHECK(rel.name == "Relocate");
  CHECK(rel.gesture_class == eg::GestureClass::Deictic);
  CHECK(rel.motion.to_string() == "TF");
}

TEST_CASE("manifest indices, names and periodic flags") {
  const auto& m = eg::builtin_manifest();
  std::set<std::string> names;
  std::set<int> periodic;
  for (int i = 0; i < m.size(); ++i) {
    const auto& e = m.entries()[static_cast<std::size_t>(i)];
    CHECK(e.index == i + 1);
    names.insert(e.name);
    if (e.periodic) periodic.insert(e.index);
  }
  CHECK(names.size() == 22);
  CHECK(periodic == std::set<int>{2, 3, 7, 8, 10, 12, 13, 14, 15, 17, 18, 19});
  CHECK(code_of([&] { (void)m.at(23); }) == eg::ErrorCode::UnknownGesture);
}

TEST_CASE("manifest rejects duplicates and gaps") {
  auto entries = eg::builtin_manifest().entries();
  auto dup = entries;
  dup[4].name = dup[3].name;
  CHECK_THROWS_AS((void)eg::GestureManifest(dup), eg::Error);
  auto shortened = entries;
  shortened.pop_back();
  CHECK_THROWS_AS((void)eg::GestureManifest(shortened), eg::Error);
}

TEST_CASE("motion set parsing") {
  CHECK(eg::MotionSet::parse("TRF").to_string() == "TRF");
  CHECK(eg::MotionSet::parse("RT").to_string() == "TR");
  CHECK_THROWS_AS(eg::MotionSet::parse("X"), eg::Error);
}

TEST_CASE("three-row zero file loads as zeros") {
  const std::string text = "0,0,0,0,0,0,0,0,0,0\n0,0,0,0,0,0,0,0,0,0\n0,0,0,0,0,0,0,0,0,0\n";
  const auto rec = eg::parse_recording(text, {});
  CHECK(rec.length() == 3);
  CHECK(rec.samples().cols() == 10);
  CHECK(rec.samples().isZero(0.0));
}

TEST_CASE("header line and trailing blank lines are accepted") {
  const std::string text = "# thumb,index,middle,ring,little,accel_x,accel_y,accel_z,roll,pitch\n"
                           "1,2,3,4,5,6,7,8,9,10\n-1,-2,-3,-4,-5,-6,-7,-8,-9,-10\n\n";
  const auto rec = eg::parse_recording(text, {});
  CHECK(rec.length() == 2);
  CHECK(rec.samples()(0, 9) == 10.0);
  CHECK(rec.samples()(1, 0) == -1.0);
}

TEST_CASE("malformed recordings") {
  CHECK(code_of([] { eg::parse_recording("0,0,0,0,0,0,0,0,0\n0,0,0,0,0,0,0,0,0\n", {}); }) ==
        eg::ErrorCode::MalformedFile);
  CHECK(code_of([] { eg::parse_recording("0,0,0,0,0,0,0,0,0,0,0\n", {}); }) == eg::ErrorCode::MalformedFile);
  CHECK(code_of([] { eg::parse_recording("0,0,0,0,x,0,0,0,0,0\n0,0,0,0,0,0,0,0,0,0\n", {}); }) ==
        eg::ErrorCode::MalformedFile);
  CHECK(code_of([] { eg::parse_recording("0,0,0,0,nan,0,0,0,0,0\n0,0,0,0,0,0,0,0,0,0\n", {}); }) ==
        eg::ErrorCode::MalformedFile);
  CHECK(code_of([] { eg::parse_recording("0,0,0,0,0,0,0,0,0,0\n", {}); }) == eg::ErrorCode::TooShort);
  CHECK(code_of([] { (void)eg::load_recording("/nonexistent/eigengesture.csv", {}); }) == eg::ErrorCode::IoFailure);
}

TEST_CASE("recording metadata is validated") {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 10);
  eg::RecordingMeta bad;
  bad.repetition = 6;
  CHECK_THROWS_AS((void)eg::RawRecording(bad, z), eg::Error);
  bad = {};
  bad.dt_seconds = 0.0;
  CHECK_THROWS_AS((void)eg::RawRecording(bad, z), eg::Error);
  CHECK(eg::RecordingMeta{}.dt_seconds == 0.030);
}

TEST_CASE("slot metadata round trip") {
  for (int l = 1; l <= 20; ++l) {
    const auto meta = eg::meta_for_slot(4, l);
    CHECK(meta.realisation() == l);
    CHECK(meta.gesture_id == 4);
    CHECK(meta.repetition >= 1);
    CHECK(meta.repetition <= 5);
  }
  CHECK(eg::meta_for_slot(1, 4).tempo == eg::Tempo::Fast);
  CHECK(eg::meta_for_slot(1, 5).tempo == eg::Tempo::Slow);
  CHECK(eg::recording_file_name(eg::meta_for_slot(3, 2)) == "g03_p1_r2_normal.csv");
}

TEST_CASE("save then load reproduces random recordings bit-exactly") {
  const auto dir = scratch_dir("roundtrip");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(2, 40);
  std::uniform_real_distribution<double> mag(-300.0, 300.0);
  std::uniform_int_distribution<int> expo(-200, 200);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd s(len(rng), 10);
    for (Eigen::Index i = 0; i < s.size(); ++i) s.data()[i] = std::ldexp(mag(rng), expo(rng) / 4);
    if (trial == 0) s(0, 0) = 5e-324;  // smallest subnormal
    if (trial == 1) s(0, 0) = -0.0;
    const auto meta = eg::meta_for_slot(1 + trial % 22, 1 + trial % 20);
    const eg::RawRecording rec(meta, s);
    const auto path = dir / eg::recording_file_name(meta);
    eg::save_recording(path, rec);
    const auto back = eg::load_recording(path, meta);
    REQUIRE(back.samples().rows() == s.rows());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      // negative zero is folded to zero on output; compare as values
      CHECK(back.samples().data()[i] == s.data()[i]);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("corpus manifest round trip") {
  eg::CorpusManifest m;
  m.recordings.push_back({"recordings/a.csv", eg::meta_for_slot(2, 7)});
  m.recordings.push_back({"/abs/b.csv", eg::meta_for_slot(22, 20)});
  m.recordings[1].meta.dt_seconds = 0.025;
  const auto text = eg::format_corpus_manifest(m);
  const auto back = eg::parse_corpus_manifest(text);
  REQUIRE(back.recordings.size() == 2);
  CHECK(back.recordings[0].path == "recordings/a.csv");
  CHECK(back.recordings[0].meta == m.recordings[0].meta);
  CHECK(back.recordings[1].meta == m.recordings[1].meta);
  CHECK(back.taxonomy.at(18).name == "Rotating");
  CHECK(back.taxonomy.at(3).periodic);
  CHECK(eg::format_corpus_manifest(back) == text);
  CHECK(code_of([] { eg::parse_corpus_manifest("{not json"); }) == eg::ErrorCode::MalformedFile);
  CHECK(code_of([] { eg::parse_corpus_manifest(R"({"format":"other"})"); }) == eg::ErrorCode::MalformedFile);
}

TEST_CASE("manifest closure") {
  eg::SynthConfig c;
  c.gestures = 2;
  c.realisations = 2;
  c.true_rank = 2;
  auto recs = eg::synthesize_corpus(c);
  CHECK_NOTHROW(eg::check_manifest_closure(recs, eg::builtin_manifest()));
  eg::RecordingMeta meta;
  meta.gesture_id = 23;
  std::vector<eg::RawRecording> outside = {eg::RawRecording(meta, Eigen::MatrixXd::Zero(2, 10))};
  CHECK(code_of([&] { eg::check_manifest_closure(outside, eg::builtin_manifest()); }) ==
        eg::ErrorCode::UnknownGesture);
}

TEST_CASE("synthetic corpus shape and lengths") {
  eg::SynthConfig c;
  c.gestures = 3;
  c.realisations = 4;
  c.true_rank = 5;
  const auto recs = eg::synthesize_corpus(c);
  REQUIRE(recs.size() == 12);
  const auto lengths = c.admissible_lengths();
  std::set<std::pair<int, int>> slots;
  for (const auto& r : recs) {
    CHECK(r.samples().cols() == 10);
    CHECK(std::find(lengths.begin(), lengths.end(), r.length()) != lengths.end());
    CHECK(r.length() >= c.min_length);
    CHECK(r.length() <= c.max_length);
    slots.insert({r.meta().gesture_id, r.meta().realisation()});
  }
  CHECK(slots.size() == 12);
}

TEST_CASE("synthetic corpus is deterministic for a fixed seed") {
  eg::SynthConfig c;
  c.gestures = 4;
  c.realisations = 5;
  c.true_rank = 3;
  c.noise_sigma = 0.1;
  const auto a = eg::synthesize_corpus(c);
  const auto b = eg::synthesize_corpus(c);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].meta() == b[i].meta());
    CHECK(a[i].samples() == b[i].samples());
  }
  c.seed = 2;
  const auto d = eg::synthesize_corpus(c);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    differs = differs || a[i].samples().rows() != d[i].samples().rows() || a[i].samples() != d[i].samples();
  CHECK(differs);
}

TEST_CASE("noiseless synthetic rank is bounded by the configured rank") {
  eg::SynthConfig c;
  c.gestures = 4;
  c.realisations = 5;
  c.true_rank = 3;
  const auto recs = eg::synthesize_corpus(c);
  const auto pre = eg::preprocess_corpus(recs);
  const auto sv = oracle::jacobi_singular_values(pre.matrix.X);
  int above = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++above;
  CHECK(above <= 3);
  CHECK(above >= 1);
}

TEST_CASE("rank-one synthetic realisations are proportional") {
  eg::SynthConfig c;
  c.gestures = 3;
  c.realisations = 4;
  c.true_rank = 1;
  const auto pre = eg::preprocess_corpus(eg::synthesize_corpus(c));
  const auto& X = pre.matrix.X;
  // |<a,b>| = |a||b| for every pair of columns
  for (Eigen::Index i = 0; i < X.cols(); ++i)
    for (Eigen::Index j = i + 1; j < X.cols(); ++j) {
      const double dot = X.col(i).dot(X.col(j));
      const double nn = X.col(i).norm() * X.col(j).norm();
      CHECK(std::abs(std::abs(dot) - nn) <= 1e-9 * nn);
    }
}

TEST_CASE("synthetic config validation") {
  eg::SynthConfig c;
  CHECK_NOTHROW(c.validate());
  c.true_rank = 0;
  CHECK(code_of([&] { c.validate(); }) == eg::ErrorCode::BadConfig);
  c = {};
  c.gestures = 2;
  c.realisations = 2;
  c.true_rank = 5;
  CHECK(code_of([&] { c.validate(); }) == eg::ErrorCode::BadConfig);
  c = {};
  c.min_length = 1;
  CHECK(code_of([&] { c.validate(); }) == eg::ErrorCode::BadConfig);
  c = {};
  c.min_length = 40;
  c.max_length = 50;  // no length of the form 1 + m(N-1) in range
  CHECK(code_of([&] { c.validate(); }) == eg::ErrorCode::BadConfig);
  c = {};
  c.noise_sigma = -1.0;
  CHECK(code_of([&] { c.validate(); }) == eg::ErrorCode::BadConfig);
}

TEST_CASE("spectral matrix has the requested singular values") {
  const std::vector<double> spectrum = {5.0, 3.0, 1.0, 0.5};
  const auto m = eg::synthesize_spectral_matrix(7, 5, spectrum, 3);
  const auto sv = oracle::gram_singular_values(m);
  for (std::size_t i = 0; i < spectrum.size(); ++i) CHECK(sv(static_cast<Eigen::Index>(i)) == doctest::Approx(spectrum[i]).epsilon(1e-12));
  CHECK(std::abs(sv(4)) < 1e-6);
}

}  // TEST_SUITE
