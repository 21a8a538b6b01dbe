#include "eigengesture/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "eigengesture/error.hpp"
#include "eigengesture/text_io.hpp"

namespace eigengesture {

std::string_view to_string(Tempo tempo) {
  switch (tempo) {
    case Tempo::Normal: return "normal";
    case Tempo::Fast: return "fast";
    case Tempo::Slow: return "slow";
  }
  return "normal";
}

Tempo parse_tempo(std::string_view text) {
  if (text == "normal") return Tempo::Normal;
  if (text == "fast") return Tempo::Fast;
  if (text == "slow") return Tempo::Slow;
  throw Error(ErrorCode::MalformedFile, "unknown tempo '" + std::string(text) + "'");
}

RecordingMeta meta_for_slot(int gesture_id, int realisation) {
  RecordingMeta meta;
  meta.gesture_id = gesture_id;
  meta.performer_id = (realisation - 1) / kRepetitionsPerPerformer + 1;
  meta.repetition = (realisation - 1) % kRepetitionsPerPerformer + 1;
  // three natural-pace performances, then one fast and one slow
  meta.tempo = meta.repetition <= 3 ? Tempo::Normal : (meta.repetition == 4 ? Tempo::Fast : Tempo::Slow);
  return meta;
}

RawRecording::RawRecording(RecordingMeta meta, Eigen::MatrixXd samples)
    : meta_(meta), samples_(std::move(samples)) {
  if (samples_.cols() != kSensorCount)
    throw Error(ErrorCode::MalformedFile, "recording must have 10 channels, got " + std::to_string(samples_.cols()));
  if (samples_.rows() < 2)
    throw Error(ErrorCode::TooShort, "recording has " + std::to_string(samples_.rows()) + " samples, need >= 2");
  if (!samples_.allFinite()) throw Error(ErrorCode::MalformedFile, "recording contains non-finite samples");
  if (meta_.gesture_id < 1) throw Error(ErrorCode::MalformedFile, "gesture_id must be >= 1");
  if (meta_.performer_id < 1) throw Error(ErrorCode::MalformedFile, "performer_id must be >= 1");
  if (meta_.repetition < 1 || meta_.repetition > kRepetitionsPerPerformer)
    throw Error(ErrorCode::MalformedFile, "repetition must be in 1..5");
  if (!(meta_.dt_seconds > 0.0) || !std::isfinite(meta_.dt_seconds))
    throw Error(ErrorCode::MalformedFile, "dt_seconds must be positive");
}

std::string_view to_string(GestureClass cls) {
  switch (cls) {
    case GestureClass::Symbolic: return "symbolic";
    case GestureClass::Deictic: return "deictic";
    case GestureClass::Iconic: return "iconic";
    case GestureClass::Manipulative: return "manipulative";
  }
  return "symbolic";
}

GestureClass parse_gesture_class(std::string_view text) {
  if (text == "symbolic") return GestureClass::Symbolic;
  if (text == "deictic") return GestureClass::Deictic;
  if (text == "iconic") return GestureClass::Iconic;
  if (text == "manipulative") return GestureClass::Manipulative;
  throw Error(ErrorCode::MalformedFile, "unknown gesture class '" + std::string(text) + "'");
}

std::string MotionSet::to_string() const {
  std::string out;
  if (translation) out += 'T';
  if (rotation) out += 'R';
  if (fingers) out += 'F';
  return out;
}

MotionSet MotionSet::parse(std::string_view text) {
  MotionSet m;
  for (char c : text) {
    switch (c) {
      case 'T': m.translation = true; break;
      case 'R': m.rotation = true; break;
      case 'F': m.fingers = true; break;
      default: throw Error(ErrorCode::MalformedFile, "bad motion flags '" + std::string(text) + "'");
    }
  }
  return m;
}

GestureManifest::GestureManifest(std::vector<GestureEntry> entries) : entries_(std::move(entries)) {
  if (static_cast<int>(entries_.size()) != kEntryCount)
    throw Error(ErrorCode::MalformedFile, "gesture manifest must have 22 entries");
  std::set<std::string> names;
  for (int i = 0; i < kEntryCount; ++i) {
    if (entries_[i].index != i + 1) throw Error(ErrorCode::MalformedFile, "gesture indices must run 1..22");
    if (!names.insert(entries_[i].name).second)
      throw Error(ErrorCode::MalformedFile, "duplicate gesture name '" + entries_[i].name + "'");
  }
}

const GestureEntry* GestureManifest::find(int index) const {
  if (index < 1 || index > size()) return nullptr;
  return &entries_[index - 1];
}

const GestureEntry& GestureManifest::at(int index) const {
  const auto* e = find(index);
  if (!e) throw Error(ErrorCode::UnknownGesture, "gesture " + std::to_string(index));
  return *e;
}

const GestureManifest& builtin_manifest() {
  static const GestureManifest manifest = [] {
    using C = GestureClass;
    const auto m = [](std::string_view s) { return MotionSet::parse(s); };
    const std::set<int> periodic = {2, 3, 7, 8, 10, 12, 13, 14, 15, 17, 18, 19};
    std::vector<GestureEntry> e = {
        {1, "A-OK", C::Symbolic, m("F"), false, "common 'okay' gesture"},
        {2, "Walking", C::Iconic, m("TF"), false, "fingers depict a walking person"},
        {3, "Cutting", C::Iconic, m("F"), false, "fingers portrait cutting a sheet of paper"},
        {4, "Shove away", C::Iconic, m("T"), false, "hand shoves away imaginary object"},
        {5, "Point at self", C::Deictic, m("RF"), false, "finger points at the user"},
        {6, "Thumbs up", C::Symbolic, m("RF"), false, "classic 'thumbs up' gesture"},
        {7, "Crazy", C::Symbolic, m("TRF"), false, "symbolizes 'a crazy person'"},
        {8, "Knocking", C::Iconic, m("RF"), false, "finger in knocking motion"},
        {9, "Cutthroat", C::Symbolic, m("TR"), false, "common taunting gesture"},
        {10, "Money", C::Symbolic, m("F"), false, "popular 'money' sign"},
        {11, "Thumbs down", C::Symbolic, m("RF"), false, "classic 'thumbs down' gesture"},
        {12, "Doubting", C::Symbolic, m("F"), false, "popular (Polish?) flippant 'I doubt'"},
        {13, "Continue", C::Iconic, m("R"), false, "circular hand motion 'continue', 'go on'"},
        {14, "Speaking", C::Iconic, m("F"), false, "hand portraits a speaking mouth"},
        {15, "Hello", C::Symbolic, m("R"), false, "greeting gesture, waving hand motion"},
        {16, "Grasping", C::Manipulative, m("TF"), false, "grasping an object"},
        {17, "Scaling", C::Manipulative, m("F"), false, "finger movement depicts size change"},
        {18, "Rotating", C::Manipulative, m("R"), false, "hand rotation depicts object rotation"},
        {19, "Come here", C::Symbolic, m("F"), false, "fingers waving; 'come here'"},
        {20, "Telephone", C::Symbolic, m("TRF"), false, "popular 'phone' depiction"},
        {21, "Go away", C::Symbolic, m("F"), false, "fingers waving; 'go away'"},
        {22, "Relocate", C::Deictic, m("TF"), false, "'put that there'"},
    };
    for (auto& entry : e) entry.periodic = periodic.count(entry.index) > 0;
    return GestureManifest(std::move(e));
  }();
  return manifest;
}

RawRecording parse_recording(std::string_view text, const RecordingMeta& meta) {
  std::vector<std::array<double, kSensorCount>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::array<double, kSensorCount> row{};
    std::size_t start = 0;
    int field = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto cell = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      if (field >= kSensorCount)
        throw Error(ErrorCode::MalformedFile, "line " + std::to_string(line_no) + ": more than 10 fields");
      const auto v = parse_number(cell);
      if (!v)
        throw Error(ErrorCode::MalformedFile,
                    "line " + std::to_string(line_no) + ": non-numeric cell '" + std::string(trim(cell)) + "'");
      row[field++] = *v;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (field != kSensorCount)
      throw Error(ErrorCode::MalformedFile,
                  "line " + std::to_string(line_no) + ": expected 10 fields, got " + std::to_string(field));
    rows.push_back(row);
  }
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(rows.size()), kSensorCount);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int s = 0; s < kSensorCount; ++s) samples(static_cast<Eigen::Index>(i), s) = rows[i][s];
  return RawRecording(meta, std::move(samples));
}

std::string format_recording(const RawRecording& recording) {
  std::string out = "#";
  for (int s = 0; s < kSensorCount; ++s) {
    out += s ? "," : " ";
    out += kChannelNames[s];
  }
  out += '\n';
  const auto& x = recording.samples();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (int s = 0; s < kSensorCount; ++s) {
      if (s) out += ',';
      out += format_number(x(i, s));
    }
    out += '\n';
  }
  return out;
}

RawRecording load_recording(const std::filesystem::path& path, const RecordingMeta& meta) {
  return parse_recording(read_text_file(path), meta);
}

void save_recording(const std::filesystem::path& path, const RawRecording& recording) {
  write_text_file_atomic(path, format_recording(recording));
}

std::string recording_file_name(const RecordingMeta& meta) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "g%02d_p%d_r%d_%s.csv", meta.gesture_id, meta.performer_id, meta.repetition,
                std::string(to_string(meta.tempo)).c_str());
  return buf;
}

namespace {

constexpr std::string_view kCorpusFormat = "eigengesture-corpus";
constexpr int kCorpusVersion = 1;

template <typename T>
T require(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorCode::MalformedFile, std::string("corpus manifest: missing '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::MalformedFile, std::string("corpus manifest: bad value for '") + key + "'");
  }
}

}  // namespace

std::string format_corpus_manifest(const CorpusManifest& manifest) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["format"] = kCorpusFormat;
  doc["version"] = kCorpusVersion;
  auto gestures = ordered_json::array();
  for (const auto& e : manifest.taxonomy.entries()) {
    ordered_json g;
    g["index"] = e.index;
    g["name"] = e.name;
    g["class"] = to_string(e.gesture_class);
    g["motion"] = e.motion.to_string();
    g["periodic"] = e.periodic;
    g["comment"] = e.comment;
    gestures.push_back(std::move(g));
  }
  doc["gestures"] = std::move(gestures);
  auto recordings = ordered_json::array();
  for (const auto& r : manifest.recordings) {
    ordered_json j;
    j["path"] = r.path;
    j["gesture_id"] = r.meta.gesture_id;
    j["performer_id"] = r.meta.performer_id;
    j["repetition"] = r.meta.repetition;
    j["tempo"] = to_string(r.meta.tempo);
    j["dt_seconds"] = r.meta.dt_seconds;
    recordings.push_back(std::move(j));
  }
  doc["recordings"] = std::move(recordings);
  return doc.dump(2) + "\n";
}

CorpusManifest parse_corpus_manifest(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("corpus manifest: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedFile, "corpus manifest must be a JSON object");
  if (require<std::string>(doc, "format") != kCorpusFormat)
    throw Error(ErrorCode::MalformedFile, "corpus manifest: unexpected format tag");
  if (require<int>(doc, "version") != kCorpusVersion)
    throw Error(ErrorCode::MalformedFile, "corpus manifest: unsupported version");

  CorpusManifest manifest;
  if (doc.contains("gestures")) {
    std::vector<GestureEntry> entries;
    for (const auto& g : doc.at("gestures")) {
      GestureEntry e;
      e.index = require<int>(g, "index");
      e.name = require<std::string>(g, "name");
      e.gesture_class = parse_gesture_class(require<std::string>(g, "class"));
      e.motion = MotionSet::parse(require<std::string>(g, "motion"));
      e.periodic = require<bool>(g, "periodic");
      e.comment = g.value("comment", std::string{});
      entries.push_back(std::move(e));
    }
    manifest.taxonomy = GestureManifest(std::move(entries));
  }
  if (!doc.contains("recordings") || !doc.at("recordings").is_array())
    throw Error(ErrorCode::MalformedFile, "corpus manifest: missing 'recordings' array");
  for (const auto& r : doc.at("recordings")) {
    CorpusEntry entry;
    entry.path = require<std::string>(r, "path");
    entry.meta.gesture_id = require<int>(r, "gesture_id");
    entry.meta.performer_id = require<int>(r, "performer_id");
    entry.meta.repetition = require<int>(r, "repetition");
    entry.meta.tempo = parse_tempo(require<std::string>(r, "tempo"));
    entry.meta.dt_seconds = r.value("dt_seconds", kDefaultSampleInterval);
    manifest.recordings.push_back(std::move(entry));
  }
  return manifest;
}

void check_manifest_closure(std::span<const RawRecording> recordings, const GestureManifest& taxonomy) {
  for (const auto& rec : recordings)
    if (!taxonomy.find(rec.meta().gesture_id))
      throw Error(ErrorCode::UnknownGesture,
                  "gesture id " + std::to_string(rec.meta().gesture_id) + " not in manifest");
}

std::vector<RawRecording> load_corpus(const std::filesystem::path& manifest_path, CorpusManifest* manifest_out) {
  auto manifest = parse_corpus_manifest(read_text_file(manifest_path));
  const auto base = manifest_path.parent_path();
  std::vector<RawRecording> recordings;
  recordings.reserve(manifest.recordings.size());
  for (const auto& entry : manifest.recordings) {
    std::filesystem::path p(entry.path);
    if (p.is_relative()) p = base / p;
    recordings.push_back(load_recording(p, entry.meta));
  }
  check_manifest_closure(recordings, manifest.taxonomy);
  if (manifest_out) *manifest_out = std::move(manifest);
  return recordings;
}

}  // namespace eigengesture
