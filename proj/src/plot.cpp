#include "eigengesture/plot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eigengesture/error.hpp"
#include "eigengesture/svg.hpp"
#include "eigengesture/text_io.hpp"

namespace eigengesture {

namespace {

using svg::Point;
using svg::Stroke;

struct Series {
  int channel;
  std::string label;
  Stroke stroke;
};

struct Frame {
  double x, y, w, h;
};

double tick_step(double span) {
  const double raw = span / 4.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

// Draws axes and series for one panel of a time-series figure.
void draw_panel(svg::Document& doc, const Frame& f, const Eigen::MatrixXd& values, const std::vector<Series>& series,
                std::string_view y_label, const PlotStyle& style) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& s : series) {
    const double mn = values.col(s.channel).minCoeff();
    const double mx = values.col(s.channel).maxCoeff();
    lo = first ? mn : std::min(lo, mn);
    hi = first ? mx : std::max(hi, mx);
    first = false;
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const auto n = values.rows();
  const auto x_of = [&](Eigen::Index t) {
    return n > 1 ? f.x + f.w * static_cast<double>(t) / static_cast<double>(n - 1) : f.x + f.w / 2.0;
  };
  const auto y_of = [&](double v) { return f.y + f.h * (hi - v) / (hi - lo); };

  const Stroke axis{"#444444", 1.0, ""};
  const Stroke grid{"#dddddd", 0.8, "3,3"};
  doc.rect(f.x, f.y, f.w, f.h, axis);

  const double step = tick_step(hi - lo);
  const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
  for (double v = std::ceil(lo / step) * step; v <= hi; v += step) {
    const double y = y_of(v);
    doc.line({f.x, y}, {f.x + f.w, y}, std::abs(v) < step * 1e-9 ? Stroke{"#999999", 0.8, ""} : grid);
    doc.text({f.x - 5.0, y + 4.0}, format_fixed(v, decimals), style.font_size - 1.0, "end");
  }
  // integer sample ticks at 1 and multiples of a 1-2-5 step; the last sample only if it has room
  const auto x_step = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(tick_step(static_cast<double>(n) / 2.0)));
  Eigen::Index last_labelled = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    bool labelled = t == 0 || (t + 1) % x_step == 0;
    if (t == n - 1 && !labelled) labelled = 2 * (t - last_labelled) >= x_step;
    if (!labelled) continue;
    last_labelled = t;
    const double x = x_of(t);
    doc.line({x, f.y + f.h}, {x, f.y + f.h + 4.0}, axis);
    doc.text({x, f.y + f.h + 15.0}, std::to_string(t + 1), style.font_size - 1.0, "middle");
  }
  doc.text({f.x - 40.0, f.y + f.h / 2.0}, y_label, style.font_size, "middle");

  std::vector<std::pair<double, std::size_t>> label_y;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index t = 0; t < n; ++t) pts.push_back({x_of(t), y_of(values(t, s.channel))});
    doc.polyline(pts, s.stroke);
    if (!s.label.empty()) label_y.push_back({pts.back().y + 4.0, i});
  }

  // end-of-line labels, pushed apart so they never overlap
  std::stable_sort(label_y.begin(), label_y.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const double gap = style.font_size + 1.0;
  for (std::size_t i = 1; i < label_y.size(); ++i)
    label_y[i].first = std::max(label_y[i].first, label_y[i - 1].first + gap);
  if (!label_y.empty()) {
    const double overflow = label_y.back().first - (f.y + f.h + 4.0);
    for (std::size_t i = label_y.size(); overflow > 0.0 && i-- > 0;) {
      const double limit = i + 1 < label_y.size() ? label_y[i + 1].first - gap : f.y + f.h + 4.0;
      label_y[i].first = std::min(label_y[i].first, limit);
    }
  }
  for (const auto& [y, i] : label_y)
    doc.text({f.x + f.w + 5.0, y}, series[i].label, style.font_size, "start", series[i].stroke.color);
}

double timeseries_height(const PlotStyle& style) {
  return style.margin_top + 2.0 * style.panel_height + style.panel_gap + style.margin_bottom;
}

void draw_timeseries(svg::Document& doc, const Eigen::MatrixXd& values, std::string_view title, double x0,
                     const PlotStyle& style) {
  if (values.cols() != kSensorCount)
    throw Error(ErrorCode::BadShape, "time-series plot expects 10 channels, got " + std::to_string(values.cols()));
  if (values.rows() < 1) throw Error(ErrorCode::BadShape, "time-series plot needs at least one sample");
  if (!values.allFinite()) throw Error(ErrorCode::BadShape, "time-series plot input contains non-finite values");

  const double w = style.width - style.margin_left - style.margin_right;
  doc.text({x0 + style.width / 2.0, style.margin_top - 18.0}, title, style.title_size, "middle");

  std::vector<Series> bends;
  static constexpr std::array<std::string_view, 5> kFingerLabels = {"T", "I", "M", "R", "L"};
  for (int i = 0; i < kBendChannelCount; ++i)
    bends.push_back({kFirstBendChannel + i, std::string(kFingerLabels[i]),
                     Stroke{std::string(style.finger_colors[i]), style.line_width, ""}});
  draw_panel(doc, {x0 + style.margin_left, style.margin_top, w, style.panel_height}, values, bends, "bend", style);

  std::vector<Series> palm = {
      {channel_index(Channel::Roll), "roll", Stroke{"black", style.line_width, "6,3"}},
      {channel_index(Channel::Pitch), "pitch", Stroke{"black", style.line_width, "1.5,3"}},
  };
  static constexpr std::array<std::string_view, 3> kAxisLabels = {"X", "Y", "Z"};
  for (int i = 0; i < kAccelChannelCount; ++i)
    palm.push_back({kFirstAccelChannel + i, std::string(kAxisLabels[i]),
                    Stroke{std::string(style.position_colors[i]), style.line_width, ""}});
  const double y2 = style.margin_top + style.panel_height + style.panel_gap;
  draw_panel(doc, {x0 + style.margin_left, y2, w, style.panel_height}, values, palm, "palm", style);
  doc.text({x0 + style.margin_left + w / 2.0, y2 + style.panel_height + 28.0}, "time sample", style.font_size,
           "middle");
}

}  // namespace

std::string render_timeseries_svg(const Eigen::MatrixXd& values, std::string_view title, const PlotStyle& style) {
  svg::Document doc(style.width, timeseries_height(style) + 10.0);
  draw_timeseries(doc, values, title, 0.0, style);
  return doc.str();
}

void emit_timeseries_plot(const Eigen::MatrixXd& values, const std::filesystem::path& path, std::string_view title) {
  write_text_file_atomic(path, render_timeseries_svg(values, title));
}

std::string render_comparison_svg(const Eigen::MatrixXd& left, std::string_view left_title,
                                  const Eigen::MatrixXd& right, std::string_view right_title,
                                  const PlotStyle& style) {
  svg::Document doc(2.0 * style.width, timeseries_height(style) + 10.0);
  draw_timeseries(doc, left, left_title, 0.0, style);
  draw_timeseries(doc, right, right_title, style.width, style);
  return doc.str();
}

std::string render_curve_svg(std::span<const double> values, std::string_view title, std::string_view x_label,
                             std::string_view y_label, const PlotStyle& style) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "curve has no points");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  if (!m.allFinite()) throw Error(ErrorCode::BadShape, "curve contains non-finite values");

  const double height = style.margin_top + 1.6 * style.panel_height + style.margin_bottom + 10.0;
  svg::Document doc(style.width, height);
  doc.text({style.width / 2.0, style.margin_top - 18.0}, title, style.title_size, "middle");
  const Frame f{style.margin_left, style.margin_top, style.width - style.margin_left - style.margin_right,
                1.6 * style.panel_height};
  draw_panel(doc, f, m, {{0, "", Stroke{std::string(style.finger_colors[0]), style.line_width, ""}}}, y_label, style);
  doc.text({f.x + f.w / 2.0, f.y + f.h + 28.0}, x_label, style.font_size, "middle");
  return doc.str();
}

namespace glyph {

double finger_curl(double bend_value) {
  return std::clamp(kCurlPerUnit * bend_value, -kMaxHyperextension, kMaxCurl);
}

double tilt(double value) { return std::clamp(kTiltPerUnit * value, -kMaxTilt, kMaxTilt); }

}  // namespace glyph

namespace {

constexpr double kGlyphSpacing = 150.0;
constexpr double kGlyphTop = 70.0;
constexpr double kPalmWidth = 56.0;
constexpr double kPalmHeight = 64.0;

struct FingerGeometry {
  Point base;
  std::array<double, 3> phalanges;
  double curl_sign;  // curl turns toward the palm midline
};

constexpr std::array<FingerGeometry, 5> kFingers = {{
    {{-28.0, 8.0}, {14.0, 11.0, 9.0}, 1.0},
    {{-21.0, -32.0}, {20.0, 13.0, 10.0}, 1.0},
    {{-7.0, -32.0}, {22.0, 14.0, 10.0}, 1.0},
    {{7.0, -32.0}, {20.0, 13.0, 10.0}, -1.0},
    {{21.0, -32.0}, {15.0, 10.0, 8.0}, -1.0},
}};

Point direction(double degrees) {
  const double r = degrees * std::numbers::pi / 180.0;
  return {std::sin(r), -std::cos(r)};
}

void draw_glyph(svg::Document& doc, const Eigen::VectorXd& pose, double cx, double cy, const std::string& label) {
  const double roll = glyph::tilt(pose(channel_index(Channel::Roll)));
  const double pitch = glyph::tilt(pose(channel_index(Channel::Pitch)));
  const Stroke outline{"#333333", 1.5, ""};

  doc.begin_group("translate(" + svg::num(cx) + "," + svg::num(cy + 80.0) + ") rotate(" + svg::num(roll) + ")");
  doc.rect(-kPalmWidth / 2.0, -kPalmHeight / 2.0, kPalmWidth, kPalmHeight, outline, "#f3e0c8");
  for (int f = 0; f < kBendChannelCount; ++f) {
    const auto& geo = kFingers[f];
    const double curl = glyph::finger_curl(pose(kFirstBendChannel + f));
    std::vector<Point> pts{geo.base};
    double angle = glyph::kNeutralFingerAngles[f];
    for (int seg = 0; seg < 3; ++seg) {
      if (seg > 0) angle += geo.curl_sign * curl;
      const auto d = direction(angle);
      const auto& p = pts.back();
      pts.push_back({p.x + geo.phalanges[seg] * d.x, p.y + geo.phalanges[seg] * d.y});
    }
    doc.polyline(pts, Stroke{"#333333", 5.0, ""});
  }
  doc.end_group();

  // side view of the palm for pitch
  const double iy = cy + 175.0;
  doc.circle({cx, iy}, 24.0, Stroke{"#bbbbbb", 1.0, ""});
  const auto d = direction(90.0 + pitch);
  doc.line({cx - 20.0 * d.x, iy - 20.0 * d.y}, {cx + 20.0 * d.x, iy + 20.0 * d.y}, Stroke{"#333333", 4.0, ""});
  doc.circle({cx + 20.0 * d.x, iy + 20.0 * d.y}, 3.0, Stroke{"#333333", 1.0, ""}, "#333333");
  doc.text({cx, iy + 40.0}, "pitch", 10.0, "middle", "#666666");
  doc.text({cx, cy + 240.0}, label, 12.0, "middle");
}

}  // namespace

std::string render_poses_svg(std::span<const Eigen::VectorXd> poses, std::span<const std::string> labels,
                             std::string_view title) {
  if (poses.empty()) throw Error(ErrorCode::EmptyInput, "no poses to render");
  if (labels.size() != poses.size()) throw Error(ErrorCode::BadShape, "one label per pose required");
  const double width = kGlyphSpacing * static_cast<double>(poses.size());
  svg::Document doc(width, 300.0);
  doc.text({width / 2.0, 22.0}, title, 13.0, "middle");
  for (std::size_t i = 0; i < poses.size(); ++i) {
    if (poses[i].size() != kSensorCount) throw Error(ErrorCode::BadShape, "pose vectors have 10 channels");
    if (!poses[i].allFinite()) throw Error(ErrorCode::BadShape, "pose contains non-finite values");
    draw_glyph(doc, poses[i], kGlyphSpacing * (static_cast<double>(i) + 0.5), kGlyphTop - 30.0, labels[i]);
  }
  return doc.str();
}

std::string render_pose_frames_svg(const RemappedEigengesture& remapped, std::span<const int> frame_indices) {
  const auto n = static_cast<int>(remapped.values.rows());
  if (frame_indices.empty()) throw Error(ErrorCode::FrameOutOfRange, "no frames selected");
  std::vector<Eigen::VectorXd> poses;
  std::vector<std::string> labels;
  for (int t : frame_indices) {
    if (t < 1 || t > n)
      throw Error(ErrorCode::FrameOutOfRange, "frame " + std::to_string(t) + " outside 1.." + std::to_string(n));
    poses.emplace_back(remapped.values.row(t - 1).transpose());
    labels.push_back("t = " + std::to_string(t));
  }
  return render_poses_svg(poses, labels, "eigengesture " + std::to_string(remapped.source.index));
}

void emit_pose_frames(const RemappedEigengesture& remapped, std::span<const int> frame_indices,
                      const std::filesystem::path& path) {
  write_text_file_atomic(path, render_pose_frames_svg(remapped, frame_indices));
}

std::vector<int> default_frame_indices(int samples, int count) {
  std::vector<int> out;
  if (samples < 1 || count < 1) return out;
  count = std::min(count, samples);
  for (int i = 0; i < count; ++i) {
    const int t = count == 1 ? 1 : 1 + static_cast<int>(std::lround(static_cast<double>(i) * (samples - 1) / (count - 1)));
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  return out;
}

}  // namespace eigengesture
