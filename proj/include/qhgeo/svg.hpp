#pragma once

#include <cstdio>
#include <fstream>

#include "qhgeo/polyline.hpp"

namespace qhgeo {

// Deterministic SVG rendering: fixed-precision coordinates, stable element
// order, no timestamps. Identical inputs produce byte-identical files.
class SvgWriter {
 public:
  explicit SvgWriter(const Domain& domain, double canvas = 800.0, double margin = 40.0)
      : domain_(domain), canvas_(canvas), margin_(margin) {
    const Box& b = domain.bbox();
    const double w = b.xmax - b.xmin, h = b.ymax - b.ymin;
    scale_ = (canvas_ - 2.0 * margin_) / std::max(w, h);
    width_ = w * scale_ + 2.0 * margin_;
    height_ = h * scale_ + 2.0 * margin_;
  }

  void add_curve(const Polyline& curve, const std::string& label = "") {
    curves_.push_back(curve);
    labels_.push_back(label);
  }

  void add_marker(Point p, const std::string& color = "#d62728") { markers_.push_back({p, color}); }

  void write(const std::string& path) const {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_) + "\" height=\"" +
           fmt(height_) + "\" viewBox=\"0 0 " + fmt(width_) + " " + fmt(height_) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Region fill: outer loop with holes via even-odd rule.
    std::string d = loop_path(domain_.outer());
    for (const auto& hole : domain_.holes()) d += " " + loop_path(hole);
    out += "<path d=\"" + d + "\" fill=\"#eef3f8\" stroke=\"#1f3552\" stroke-width=\"1.5\" fill-rule=\"evenodd\"/>\n";

    for (const auto& slit : domain_.slits())
      out += "<polyline points=\"" + chain_points(slit) +
             "\" fill=\"none\" stroke=\"#8c1515\" stroke-width=\"2\"/>\n";

    for (std::size_t i = 0; i < curves_.size(); ++i) {
      out += "<polyline points=\"" + chain_points(curves_[i].points()) + "\" fill=\"none\" stroke=\"" +
             palette(i) + "\" stroke-width=\"1.6\"/>\n";
    }
    for (const auto& [p, color] : markers_) {
      const Point t = map(p);
      out += "<circle cx=\"" + fmt(t.x) + "\" cy=\"" + fmt(t.y) + "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    // Legend for labeled curves.
    double ly = 18.0;
    for (std::size_t i = 0; i < curves_.size(); ++i) {
      if (labels_[i].empty()) continue;
      out += "<rect x=\"8\" y=\"" + fmt(ly - 9.0) + "\" width=\"14\" height=\"4\" fill=\"" + palette(i) +
             "\"/>\n";
      out += "<text x=\"26\" y=\"" + fmt(ly - 4.0) + "\" font-family=\"monospace\" font-size=\"11\">" +
             labels_[i] + "</text>\n";
      ly += 16.0;
    }
    out += "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    require(f.good(), errc::io_error, "cannot write " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    require(f.good(), errc::io_error, "short write to " + path);
  }

 private:
  static std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
  }
  Point map(Point p) const {
    const Box& b = domain_.bbox();
    return {margin_ + (p.x - b.xmin) * scale_, height_ - (margin_ + (p.y - b.ymin) * scale_)};
  }
  std::string chain_points(const std::vector<Point>& pts) const {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point t = map(pts[i]);
      if (i) s += " ";
      s += fmt(t.x) + "," + fmt(t.y);
    }
    return s;
  }
  std::string loop_path(const std::vector<Point>& loop) const {
    std::string s;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Point t = map(loop[i]);
      s += (i == 0 ? "M" : "L") + fmt(t.x) + " " + fmt(t.y);
    }
    s += "Z";
    return s;
  }
  static std::string palette(std::size_t i) {
    static const char* colors[] = {"#2a6fbb", "#e07b39", "#3b9e4d", "#9356a0",
                                   "#c23d4b", "#6b7a8f", "#b0892b", "#2b9b9b"};
    return colors[i % 8];
  }

  const Domain& domain_;
  double canvas_, margin_, scale_, width_, height_;
  std::vector<Polyline> curves_;
  std::vector<std::string> labels_;
  std::vector<std::pair<Point, std::string>> markers_;
};

// Boundary, holes, slits and overlay curves in distinct strokes.
inline void render_svg(const Domain& domain, const std::vector<Polyline>& curves,
                       const std::string& path) {
  SvgWriter w(domain);
  for (std::size_t i = 0; i < curves.size(); ++i)
    w.add_curve(curves[i], "curve " + std::to_string(i));
  w.write(path);
}

}  // namespace qhgeo
