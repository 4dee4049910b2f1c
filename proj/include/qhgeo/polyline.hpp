#pragma once

#include <algorithm>
#include <vector>

#include "qhgeo/domain.hpp"
#include "qhgeo/geometry.hpp"

namespace qhgeo {

// An ordered vertex chain. Consecutive duplicates are collapsed at
// construction so the nondegenerate-segment invariant holds; a single point is
// a valid degenerate curve.
class Polyline {
 public:
  Polyline() = default;

  explicit Polyline(std::vector<Point> pts) {
    require(!pts.empty(), errc::degenerate_curve, "empty polyline");
    for (const Point& p : pts) require(finite(p), errc::invalid_params, "non-finite polyline vertex");
    pts_.reserve(pts.size());
    for (const Point& p : pts)
      if (pts_.empty() || dist(pts_.back(), p) > 0.0) pts_.push_back(p);
    rebuild_cumulative();
  }

  const std::vector<Point>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  Point front() const { return pts_.front(); }
  Point back() const { return pts_.back(); }
  bool degenerate() const { return pts_.size() < 2; }

  double length() const { return cum_.back(); }
  const std::vector<double>& cumulative_length() const { return cum_; }

  // Arclength parametrization: the point at arclength s from the start.
  Point at_arclength(double s) const {
    if (degenerate()) return pts_.front();
    s = std::clamp(s, 0.0, length());
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - cum_.begin())) - 1;
    i = std::min(i, pts_.size() - 2);
    const double seg = cum_[i + 1] - cum_[i];
    const double t = seg > 0.0 ? (s - cum_[i]) / seg : 0.0;
    return lerp(pts_[i], pts_[i + 1], t);
  }

  // Subarc between arclengths [s0, s1] with interpolated end vertices.
  Polyline subarc(double s0, double s1) const {
    if (s1 < s0) std::swap(s0, s1);
    s0 = std::clamp(s0, 0.0, length());
    s1 = std::clamp(s1, 0.0, length());
    std::vector<Point> out;
    out.push_back(at_arclength(s0));
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (cum_[i] > s0 && cum_[i] < s1) out.push_back(pts_[i]);
    out.push_back(at_arclength(s1));
    return Polyline(std::move(out));
  }

  Polyline reversed() const {
    std::vector<Point> out(pts_.rbegin(), pts_.rend());
    return Polyline(std::move(out));
  }

  // The curve re-expressed with n >= 2 arclength-uniform vertices.
  Polyline resampled(std::size_t n) const {
    if (degenerate()) return *this;
    n = std::max<std::size_t>(n, 2);
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(at_arclength(length() * static_cast<double>(i) / static_cast<double>(n - 1)));
    return Polyline(std::move(out));
  }

  friend Polyline concatenate(const Polyline& a, const Polyline& b) {
    std::vector<Point> pts = a.pts_;
    pts.insert(pts.end(), b.pts_.begin(), b.pts_.end());
    return Polyline(std::move(pts));
  }

 private:
  void rebuild_cumulative() {
    cum_.assign(pts_.size(), 0.0);
    for (std::size_t i = 1; i < pts_.size(); ++i) cum_[i] = cum_[i - 1] + dist(pts_[i - 1], pts_[i]);
  }

  std::vector<Point> pts_;
  std::vector<double> cum_;
};

inline double curve_length(const Polyline& curve) { return curve.length(); }

// Checks that every vertex is interior and every segment stays inside.
inline void require_inside(const Domain& domain, const Polyline& curve) {
  for (const Point& p : curve.points())
    require(domain.contains(p), errc::containment_violation,
            "curve vertex outside domain " + domain.name());
  const auto& pts = curve.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    require(domain.segment_inside(pts[i], pts[i + 1]), errc::containment_violation,
            "curve segment leaves domain " + domain.name());
}

// Arclength positions stepping at most min(d_D/8, total/1000); the shared
// sampling rule for all sup-type constant measurements.
inline std::vector<double> boundary_aware_arclengths(const Domain& domain, const Polyline& curve,
                                                     std::size_t hard_cap = 200000) {
  std::vector<double> out;
  out.push_back(0.0);
  if (curve.degenerate()) return out;
  const double total = curve.length();
  const double coarse = total / 1000.0;
  double s = 0.0;
  while (s < total && out.size() < hard_cap) {
    const double d = domain.boundary_distance(curve.at_arclength(s));
    const double step = std::max(std::min(d / 8.0, coarse), total * 1e-9);
    s += step;
    out.push_back(std::min(s, total));
  }
  if (out.back() < total) out.push_back(total);
  return out;
}

}  // namespace qhgeo
