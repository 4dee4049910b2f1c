#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qhgeo/error.hpp"

namespace qhgeo {

// Tolerance for intersection predicates.
inline constexpr double kGeomEps = 1e-12;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Point a, Point b) { return !(a == b); }
};

inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point lerp(Point a, Point b, double t) { return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t}; }

// Lexicographic (x, y) order; used for canonical endpoint ordering.
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Segment {
  Point a, b;
};

inline double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return dist(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + ab * t);
}

inline double point_polyline_distance(Point p, const std::vector<Point>& pts) {
  if (pts.empty()) return std::numeric_limits<double>::infinity();
  if (pts.size() == 1) return dist(p, pts[0]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    best = std::min(best, point_segment_distance(p, pts[i], pts[i + 1]));
  return best;
}

// Signed area of the triangle (a, b, c), positive for counterclockwise.
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

// Segment intersection including touching, with absolute tolerance eps on the
// orientation tests (scaled by segment extents).
inline bool segments_intersect(Point p1, Point p2, Point q1, Point q2, double eps = kGeomEps) {
  const double scale = std::max({std::abs(p1.x), std::abs(p1.y), std::abs(p2.x), std::abs(p2.y),
                                 std::abs(q1.x), std::abs(q1.y), std::abs(q2.x), std::abs(q2.y), 1.0});
  const double tol = eps * scale * scale;
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);

  if (((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
      ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)))
    return true;

  auto on_segment = [&](Point a, Point b, Point c, double d) {
    if (std::abs(d) > tol) return false;
    return std::min(a.x, b.x) - eps <= c.x && c.x <= std::max(a.x, b.x) + eps &&
           std::min(a.y, b.y) - eps <= c.y && c.y <= std::max(a.y, b.y) + eps;
  };
  return on_segment(q1, q2, p1, d1) || on_segment(q1, q2, p2, d2) ||
         on_segment(p1, p2, q1, d3) || on_segment(p1, p2, q2, d4);
}

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void grow(Point p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
  void grow(const Box& o) {
    xmin = std::min(xmin, o.xmin);
    ymin = std::min(ymin, o.ymin);
    xmax = std::max(xmax, o.xmax);
    ymax = std::max(ymax, o.ymax);
  }
  double distance(Point p) const {
    const double dx = std::max({xmin - p.x, 0.0, p.x - xmax});
    const double dy = std::max({ymin - p.y, 0.0, p.y - ymax});
    return std::sqrt(dx * dx + dy * dy);
  }
  bool overlaps(const Box& o, double pad) const {
    return xmin - pad <= o.xmax && o.xmin - pad <= xmax && ymin - pad <= o.ymax && o.ymin - pad <= ymax;
  }
};

// Bounding-volume tree over line segments. Supports nearest-distance queries,
// segment intersection queries, and horizontal-ray crossing counts; these are
// the only boundary primitives the rest of the library needs.
class SegmentTree {
 public:
  SegmentTree() = default;

  explicit SegmentTree(std::vector<Segment> segments) : segs_(std::move(segments)) {
    if (segs_.empty()) return;
    order_.resize(segs_.size());
    for (std::size_t i = 0; i < segs_.size(); ++i) order_[i] = static_cast<int>(i);
    nodes_.reserve(2 * segs_.size());
    build(0, static_cast<int>(segs_.size()));
  }

  bool empty() const { return segs_.empty(); }
  std::size_t size() const { return segs_.size(); }

  double distance(Point p) const {
    if (segs_.empty()) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    distance_rec(0, p, best);
    return best;
  }

  bool intersects(Point a, Point b, double eps = kGeomEps) const {
    if (segs_.empty()) return false;
    Box q;
    q.grow(a);
    q.grow(b);
    return intersects_rec(0, a, b, q, eps);
  }

  // Number of boundary segments crossed by the ray from p in +x direction,
  // with the half-open rule (robust against vertices on the ray).
  int ray_crossings(Point p) const {
    if (segs_.empty()) return 0;
    return crossings_rec(0, p);
  }

  // All segments whose bounding box comes within `pad` of `q` — a superset of
  // the segments that can be nearest to any point of q expanded by pad.
  // Returns false (leaving `out` partially filled) once more than `cap`
  // segments match.
  bool collect(const Box& q, double pad, std::vector<Segment>& out, std::size_t cap) const {
    if (segs_.empty()) return true;
    return collect_rec(0, q, pad, out, cap);
  }

 private:
  struct Node {
    Box box;
    int left = -1, right = -1;
    int first = 0, count = 0;  // leaf payload into order_
  };

  static constexpr int kLeafSize = 4;

  int build(int first, int count) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    Box box;
    for (int i = first; i < first + count; ++i) {
      box.grow(segs_[order_[i]].a);
      box.grow(segs_[order_[i]].b);
    }
    nodes_[idx].box = box;
    if (count <= kLeafSize) {
      nodes_[idx].first = first;
      nodes_[idx].count = count;
      return idx;
    }
    const bool split_x = (box.xmax - box.xmin) >= (box.ymax - box.ymin);
    auto mid = order_.begin() + first + count / 2;
    std::nth_element(order_.begin() + first, mid, order_.begin() + first + count, [&](int i, int j) {
      const Segment &s = segs_[i], &t = segs_[j];
      const double ci = split_x ? s.a.x + s.b.x : s.a.y + s.b.y;
      const double cj = split_x ? t.a.x + t.b.x : t.a.y + t.b.y;
      return ci < cj;
    });
    const int l = build(first, count / 2);
    const int r = build(first + count / 2, count - count / 2);
    nodes_[idx].left = l;
    nodes_[idx].right = r;
    return idx;
  }

  void distance_rec(int n, Point p, double& best) const {
    const Node& node = nodes_[n];
    if (node.box.distance(p) >= best) return;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const Segment& s = segs_[order_[i]];
        best = std::min(best, point_segment_distance(p, s.a, s.b));
      }
      return;
    }
    const double dl = nodes_[node.left].box.distance(p);
    const double dr = nodes_[node.right].box.distance(p);
    if (dl <= dr) {
      distance_rec(node.left, p, best);
      distance_rec(node.right, p, best);
    } else {
      distance_rec(node.right, p, best);
      distance_rec(node.left, p, best);
    }
  }

  bool intersects_rec(int n, Point a, Point b, const Box& q, double eps) const {
    const Node& node = nodes_[n];
    if (!node.box.overlaps(q, eps)) return false;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const Segment& s = segs_[order_[i]];
        if (segments_intersect(a, b, s.a, s.b, eps)) return true;
      }
      return false;
    }
    return intersects_rec(node.left, a, b, q, eps) || intersects_rec(node.right, a, b, q, eps);
  }

  bool collect_rec(int n, const Box& q, double pad, std::vector<Segment>& out, std::size_t cap) const {
    const Node& node = nodes_[n];
    if (!node.box.overlaps(q, pad)) return true;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const Segment& s = segs_[order_[i]];
        Box sb;
        sb.grow(s.a);
        sb.grow(s.b);
        if (sb.overlaps(q, pad)) {
          if (out.size() >= cap) return false;
          out.push_back(s);
        }
      }
      return true;
    }
    return collect_rec(node.left, q, pad, out, cap) && collect_rec(node.right, q, pad, out, cap);
  }

  int crossings_rec(int n, Point p) const {
    const Node& node = nodes_[n];
    if (p.y < node.box.ymin || p.y >= node.box.ymax || p.x >= node.box.xmax) return 0;
    if (node.left < 0) {
      int c = 0;
      for (int i = node.first; i < node.first + node.count; ++i) {
        const Segment& s = segs_[order_[i]];
        const bool up = s.a.y > p.y, vp = s.b.y > p.y;
        if (up == vp) continue;
        const double t = (p.y - s.a.y) / (s.b.y - s.a.y);
        if (s.a.x + t * (s.b.x - s.a.x) > p.x) ++c;
      }
      return c;
    }
    return crossings_rec(node.left, p) + crossings_rec(node.right, p);
  }

  std::vector<Segment> segs_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace qhgeo
