#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "eigengesture/visualize.hpp"

namespace eigengesture {

// Fixed layout and fonts; changing any field changes golden output.
struct PlotStyle {
  double width = 720.0;
  double panel_height = 170.0;
  double margin_left = 58.0;
  double margin_right = 44.0;
  double margin_top = 40.0;
  double panel_gap = 34.0;
  double margin_bottom = 34.0;
  double font_size = 11.0;
  double title_size = 13.0;
  double line_width = 1.6;
  std::array<std::string_view, 5> finger_colors = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
  std::array<std::string_view, 3> position_colors = {"#8c564b", "#e377c2", "#17becf"};
};

// Two stacked panels: finger bends (T, I, M, R, L), then palm roll (dashed),
// pitch (dotted) and X, Y, Z position. values must be N x 10.
std::string render_timeseries_svg(const Eigen::MatrixXd& values, std::string_view title, const PlotStyle& style = {});
void emit_timeseries_plot(const Eigen::MatrixXd& values, const std::filesystem::path& path, std::string_view title);

// Two time-series figures side by side, e.g. original and reconstruction.
std::string render_comparison_svg(const Eigen::MatrixXd& left, std::string_view left_title,
                                  const Eigen::MatrixXd& right, std::string_view right_title,
                                  const PlotStyle& style = {});

// Single-series line chart over n = 1..size (error curves, spectra).
std::string render_curve_svg(std::span<const double> values, std::string_view title, std::string_view x_label,
                             std::string_view y_label, const PlotStyle& style = {});

// Schematic hand glyph mapping. Angles in degrees; 0 points straight up and
// positive turns clockwise as drawn.
namespace glyph {
// Neutral (straight-finger) directions for thumb, index, middle, ring, little.
inline constexpr std::array<double, 5> kNeutralFingerAngles = {-55.0, -12.0, 0.0, 12.0, 24.0};
// Per-joint curl = kCurlPerUnit * bend value, clamped to [-kMaxHyperextension, kMaxCurl].
// Negative bends render as hyperextension beyond straight.
inline constexpr double kCurlPerUnit = 25.0;
inline constexpr double kMaxCurl = 90.0;
inline constexpr double kMaxHyperextension = 20.0;
// Palm roll and the pitch inset tilt, clamped to +-kMaxTilt.
inline constexpr double kTiltPerUnit = 30.0;
inline constexpr double kMaxTilt = 90.0;

double finger_curl(double bend_value);
double tilt(double value);
}  // namespace glyph

// One glyph per pose (length-10 vectors); translation channels are ignored.
std::string render_poses_svg(std::span<const Eigen::VectorXd> poses, std::span<const std::string> labels,
                             std::string_view title);

// Glyphs for the given 1-based frames of a remapped eigengesture.
std::string render_pose_frames_svg(const RemappedEigengesture& remapped, std::span<const int> frame_indices);
void emit_pose_frames(const RemappedEigengesture& remapped, std::span<const int> frame_indices,
                      const std::filesystem::path& path);

// Evenly spread 1-based frame indices including the first and last frame.
std::vector<int> default_frame_indices(int samples, int count = 5);

}  // namespace eigengesture
