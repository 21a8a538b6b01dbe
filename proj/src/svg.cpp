#include "eigengesture/svg.hpp"

#include "eigengesture/text_io.hpp"

namespace eigengesture::svg {

namespace {

constexpr std::string_view kFontFamily = "DejaVu Sans, Arial, sans-serif";

std::string stroke_attrs(const Stroke& s) {
  std::string out = " stroke=\"" + s.color + "\" stroke-width=\"" + num(s.width) + "\"";
  if (!s.dash.empty()) out += " stroke-dasharray=\"" + s.dash + "\"";
  return out;
}

}  // namespace

std::string num(double v) { return format_fixed(v, 2); }

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::polyline(const std::vector<Point>& points, const Stroke& stroke) {
  body_ += "<polyline fill=\"none\"" + stroke_attrs(stroke) + " stroke-linejoin=\"round\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) body_ += ' ';
    body_ += num(points[i].x) + ',' + num(points[i].y);
  }
  body_ += "\"/>\n";
}

void Document::line(Point a, Point b, const Stroke& stroke) {
  body_ += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) + "\"" +
           stroke_attrs(stroke) + "/>\n";
}

void Document::rect(double x, double y, double w, double h, const Stroke& stroke, std::string_view fill,
                    std::string_view transform) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"" + std::string(fill) + "\"" + stroke_attrs(stroke);
  if (!transform.empty()) body_ += " transform=\"" + std::string(transform) + "\"";
  body_ += "/>\n";
}

void Document::circle(Point c, double r, const Stroke& stroke, std::string_view fill) {
  body_ += "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(r) + "\" fill=\"" +
           std::string(fill) + "\"" + stroke_attrs(stroke) + "/>\n";
}

void Document::text(Point at, std::string_view content, double size, std::string_view anchor,
                    std::string_view fill) {
  body_ += "<text x=\"" + num(at.x) + "\" y=\"" + num(at.y) + "\" font-size=\"" + num(size) +
           "\" text-anchor=\"" + std::string(anchor) + "\" fill=\"" + std::string(fill) + "\">" + escape(content) +
           "</text>\n";
}

void Document::begin_group(std::string_view transform) {
  body_ += "<g transform=\"" + std::string(transform) + "\">\n";
  ++depth_;
}

void Document::end_group() {
  if (depth_ == 0) return;
  body_ += "</g>\n";
  --depth_;
}

void Document::comment(std::string_view content) { body_ += "<!-- " + escape(content) + " -->\n"; }

std::string Document::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
         "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\" font-family=\"" + std::string(kFontFamily) +
         "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(width_) + "\" height=\"" + num(height_) + "\" fill=\"white\"/>\n";
  out += body_;
  for (int i = 0; i < depth_; ++i) out += "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace eigengesture::svg
