#pragma once

#include <cmath>
#include <functional>

#include "qhgeo/domain.hpp"
#include "qhgeo/polyline.hpp"

namespace qhgeo {

using Density = std::function<double(Point)>;

inline constexpr double kQuadratureRelTol = 1e-8;

namespace detail {

template <class F>
double checked_eval(const F& rho, Point p) {
  const double v = rho(p);
  require(std::isfinite(v) && v >= 0.0, errc::non_finite_density,
          "density not finite/nonnegative at (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
  return v;
}

// Adaptive Simpson on f over [t0, t1] along the segment a->b (t in [0,1]).
template <class F>
double adaptive_simpson(const F& rho, Point a, Point b, double t0, double t1, double f0, double fm,
                        double f1, double whole, double tol, int depth) {
  const double tm = 0.5 * (t0 + t1);
  const double tl = 0.5 * (t0 + tm), tr = 0.5 * (tm + t1);
  const double fl = checked_eval(rho, lerp(a, b, tl));
  const double fr = checked_eval(rho, lerp(a, b, tr));
  const double h = t1 - t0;
  const double left = (h / 12.0) * (f0 + 4.0 * fl + fm);
  const double right = (h / 12.0) * (fm + 4.0 * fr + f1);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(rho, a, b, t0, tm, f0, fl, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(rho, a, b, tm, t1, fm, fr, f1, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate_straight(const F& rho, Point a, Point b, double tol_abs, double f0, double f1) {
  const double len = dist(a, b);
  if (len <= 0.0) return 0.0;
  const double fm = checked_eval(rho, lerp(a, b, 0.5));
  const double whole = (1.0 / 6.0) * (f0 + 4.0 * fm + f1);
  return len * adaptive_simpson(rho, a, b, 0.0, 1.0, f0, fm, f1, whole, tol_abs / std::max(len, 1e-300), 28);
}

template <class F>
double integrate_straight(const F& rho, Point a, Point b, double tol_abs) {
  return integrate_straight(rho, a, b, tol_abs, checked_eval(rho, a), checked_eval(rho, b));
}

// Split while a piece is longer than a quarter of the endpoint boundary
// distances; 1/d_D varies on the scale of d_D, so Simpson alone would
// under-resolve pieces that approach the boundary.
template <class F>
double integrate_segment(const Domain& domain, const F& rho, Point a, Point b, double tol_abs,
                         int depth = 48) {
  const double len = dist(a, b);
  if (len <= 0.0) return 0.0;
  const double da = domain.boundary_distance(a);
  const double db = domain.boundary_distance(b);
  if (depth > 0 && len > 0.25 * std::min(da, db)) {
    const Point m = lerp(a, b, 0.5);
    return integrate_segment(domain, rho, a, m, 0.5 * tol_abs, depth - 1) +
           integrate_segment(domain, rho, m, b, 0.5 * tol_abs, depth - 1);
  }
  return integrate_straight(rho, a, b, tol_abs);
}

}  // namespace detail

// Line integral of a nonnegative density along a curve, by per-segment
// adaptive Simpson with relative tolerance kQuadratureRelTol. Deterministic
// for fixed inputs.
inline double line_integral(const Domain& domain, const Polyline& curve, const Density& rho,
                            double rel_tol = kQuadratureRelTol) {
  require_inside(domain, curve);
  if (curve.degenerate()) return 0.0;
  const auto& pts = curve.points();
  // First pass to fix the absolute tolerance budget from a cheap estimate.
  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    rough += dist(pts[i], pts[i + 1]) * detail::checked_eval(rho, lerp(pts[i], pts[i + 1], 0.5));
  const double tol_abs = rel_tol * std::max(rough, 1e-12);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += detail::integrate_segment(domain, rho, pts[i], pts[i + 1],
                                       tol_abs / static_cast<double>(pts.size() - 1));
  return total;
}

namespace detail {

// Exact boundary distance restricted to one straight segment: only boundary
// pieces that can be nearest somewhere along [a, b] are kept, so evaluations
// cost a short scan instead of a tree descent. Used for the 1/d_D weights
// that dominate graph construction.
class LocalDistanceField {
 public:
  LocalDistanceField(const Domain& domain, Point a, Point b) : domain_(&domain) {
    const double da = domain.boundary_distance_unchecked(a);
    const double db = domain.boundary_distance_unchecked(b);
    const double bound = 0.5 * (da + db + dist(a, b));  // max of d_D along [a,b]
    Box q;
    q.grow(a);
    q.grow(b);
    segs_.reserve(24);
    // Long candidate lists: the tree query wins over a linear scan.
    use_tree_ = !domain.boundary_tree().collect(q, bound * 1.0000001, segs_, 24);
  }

  double operator()(Point p) const {
    if (use_tree_) return domain_->boundary_distance_unchecked(p);
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& s : segs_) best = std::min(best, point_segment_distance(p, s.a, s.b));
    return best;
  }

 private:
  const Domain* domain_;
  std::vector<Segment> segs_;
  bool use_tree_ = false;
};

inline double qh_piece(const LocalDistanceField& field, Point a, Point b, double da, double db,
                       double tol_abs, int depth) {
  const double len = dist(a, b);
  if (len <= 0.0) return 0.0;
  if (depth > 0 && len > 0.25 * std::min(da, db)) {
    const Point m = lerp(a, b, 0.5);
    const double dm = field(m);
    return qh_piece(field, a, m, da, dm, 0.5 * tol_abs, depth - 1) +
           qh_piece(field, m, b, dm, db, 0.5 * tol_abs, depth - 1);
  }
  const auto rho = [&field](Point p) { return 1.0 / field(p); };
  return integrate_straight(rho, a, b, tol_abs, 1.0 / da, 1.0 / db);
}

}  // namespace detail

// Quasihyperbolic length of a straight segment assumed inside the domain.
inline double qh_segment_length(const Domain& domain, Point a, Point b) {
  if (dist(a, b) <= 0.0) return 0.0;
  const detail::LocalDistanceField field(domain, a, b);
  const double da = field(a), db = field(b);
  const double rough = dist(a, b) / std::min(da, db);
  return detail::qh_piece(field, a, b, da, db, kQuadratureRelTol * std::max(rough, 1e-12), 48);
}

// Quasihyperbolic length: line integral of 1/d_D.
inline double qh_length(const Domain& domain, const Polyline& curve) {
  require_inside(domain, curve);
  if (curve.degenerate()) return 0.0;
  const auto& pts = curve.points();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += qh_segment_length(domain, pts[i], pts[i + 1]);
  return total;
}

}  // namespace qhgeo
