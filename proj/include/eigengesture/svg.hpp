#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eigengesture::svg {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Stroke {
  std::string color = "black";
  double width = 1.0;
  std::string dash;  // stroke-dasharray, empty for solid
};

// Minimal SVG writer. Coordinates are printed with two decimals so output is
// byte-stable for identical input.
class Document {
 public:
  Document(double width, double height);

  void polyline(const std::vector<Point>& points, const Stroke& stroke);
  void line(Point a, Point b, const Stroke& stroke);
  void rect(double x, double y, double w, double h, const Stroke& stroke, std::string_view fill = "none",
            std::string_view transform = {});
  void circle(Point c, double r, const Stroke& stroke, std::string_view fill = "none");
  void text(Point at, std::string_view content, double size, std::string_view anchor = "start",
            std::string_view fill = "black");
  void begin_group(std::string_view transform);
  void end_group();
  void comment(std::string_view content);

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
  int depth_ = 0;
};

std::string num(double v);
std::string escape(std::string_view text);

}  // namespace eigengesture::svg
