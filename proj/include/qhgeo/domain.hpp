#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qhgeo/geometry.hpp"

namespace qhgeo {

// A bounded planar region: one simple outer loop (counterclockwise), disjoint
// polygonal holes (clockwise) strictly inside it, and zero-thickness polygonal
// slits inside the closure. Interior points are those strictly inside the
// outer loop, outside every hole, and off every boundary segment.
class Domain {
 public:
  Domain(std::string name, std::vector<Point> outer, std::vector<std::vector<Point>> holes = {},
         std::vector<std::vector<Point>> slits = {})
      : name_(std::move(name)), outer_(std::move(outer)), holes_(std::move(holes)), slits_(std::move(slits)) {
    validate_and_build();
  }

  const std::string& name() const { return name_; }
  const std::vector<Point>& outer() const { return outer_; }
  const std::vector<std::vector<Point>>& holes() const { return holes_; }
  const std::vector<std::vector<Point>>& slits() const { return slits_; }
  const Box& bbox() const { return bbox_; }
  double diameter() const { return diameter_; }

  // Distance from an interior point to the full boundary (outer, holes, slits).
  double boundary_distance(Point p) const {
    auto d = interior_distance(p);
    require(d.has_value(), errc::point_outside_domain,
            "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is not interior to " + name_);
    return *d;
  }

  // Boundary distance if p is interior, nullopt otherwise. One tree query.
  // Points within a relative epsilon of the boundary (on a side, a vertex, or
  // a slit up to floating noise) count as non-interior.
  std::optional<double> interior_distance(Point p) const {
    if (!finite(p)) return std::nullopt;
    const double d = all_tree_.distance(p);
    if (!(d > 1e-13 * diameter_)) return std::nullopt;
    if (area_tree_.ray_crossings(p) % 2 == 0) return std::nullopt;
    return d;
  }

  bool contains(Point p) const { return interior_distance(p).has_value(); }

  // Distance to the boundary without the interiority check; valid for points
  // already known to be inside (e.g. on a verified curve).
  double boundary_distance_unchecked(Point p) const { return all_tree_.distance(p); }

  // A straight segment lies in the domain iff it crosses no boundary segment
  // and its midpoint is interior. Endpoints must be interior themselves.
  bool segment_inside(Point a, Point b) const {
    if (!contains(a) || !contains(b)) return false;
    if (a == b) return true;
    if (all_tree_.intersects(a, b, kGeomEps)) return false;
    return contains(lerp(a, b, 0.5));
  }

  const SegmentTree& boundary_tree() const { return all_tree_; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    auto loop_to_json = [](const std::vector<Point>& loop) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const Point& p : loop) arr.push_back({p.x, p.y});
      return arr;
    };
    j["outer"] = loop_to_json(outer_);
    j["holes"] = nlohmann::ordered_json::array();
    for (const auto& h : holes_) j["holes"].push_back(loop_to_json(h));
    j["slits"] = nlohmann::ordered_json::array();
    for (const auto& s : slits_) j["slits"].push_back(loop_to_json(s));
    return j;
  }

  static Domain from_json(const nlohmann::json& j) {
    try {
      auto loop_from = [](const nlohmann::json& arr) {
        std::vector<Point> pts;
        for (const auto& v : arr) pts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        return pts;
      };
      std::vector<std::vector<Point>> holes, slits;
      if (j.contains("holes"))
        for (const auto& h : j.at("holes")) holes.push_back(loop_from(h));
      if (j.contains("slits"))
        for (const auto& s : j.at("slits")) slits.push_back(loop_from(s));
      return Domain(j.value("name", "unnamed"), loop_from(j.at("outer")), std::move(holes), std::move(slits));
    } catch (const nlohmann::json::exception& e) {
      fail(errc::config_parse, std::string("bad domain json: ") + e.what());
    }
  }

  static Domain load(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open domain file " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(errc::config_parse, std::string("bad domain json in ") + path + ": " + e.what());
    }
    return from_json(j);
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    require(out.good(), errc::io_error, "cannot write domain file " + path);
    out << to_json().dump(2) << "\n";
  }

  // FNV-1a over the canonical serialization; identifies the domain in caches
  // and reports.
  std::string hash() const {
    const std::string bytes = to_json().dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
  }

 private:
  static double loop_signed_area(const std::vector<Point>& loop) {
    double a = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Point p = loop[i], q = loop[(i + 1) % loop.size()];
      a += cross(p, q);
    }
    return 0.5 * a;
  }

  static void check_simple(const std::vector<Point>& loop, const std::string& what) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = loop[i], b = loop[(i + 1) % n];
      require(dist(a, b) > 0.0, errc::invalid_params, what + " has a zero-length edge");
      for (std::size_t j = i + 1; j < n; ++j) {
        // Skip adjacent edges (shared endpoint).
        if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
        const Point c = loop[j], d = loop[(j + 1) % n];
        require(!segments_intersect(a, b, c, d), errc::invalid_params, what + " is self-intersecting");
      }
    }
  }

  void validate_and_build() {
    require(outer_.size() >= 3, errc::invalid_params, "outer loop needs at least 3 vertices");
    for (const Point& p : outer_) require(finite(p), errc::invalid_params, "non-finite outer vertex");
    check_simple(outer_, "outer loop");
    if (loop_signed_area(outer_) < 0.0) std::reverse(outer_.begin(), outer_.end());

    for (auto& h : holes_) {
      require(h.size() >= 3, errc::invalid_params, "hole needs at least 3 vertices");
      for (const Point& p : h) require(finite(p), errc::invalid_params, "non-finite hole vertex");
      check_simple(h, "hole");
      if (loop_signed_area(h) > 0.0) std::reverse(h.begin(), h.end());
    }
    for (const auto& s : slits_) {
      require(s.size() >= 2, errc::invalid_params, "slit needs at least 2 vertices");
      for (const Point& p : s) require(finite(p), errc::invalid_params, "non-finite slit vertex");
    }

    std::vector<Segment> area_segs, all_segs;
    auto add_loop = [&](const std::vector<Point>& loop) {
      for (std::size_t i = 0; i < loop.size(); ++i) {
        Segment s{loop[i], loop[(i + 1) % loop.size()]};
        area_segs.push_back(s);
        all_segs.push_back(s);
      }
    };
    add_loop(outer_);
    for (const auto& h : holes_) add_loop(h);
    for (const auto& s : slits_)
      for (std::size_t i = 0; i + 1 < s.size(); ++i) all_segs.push_back({s[i], s[i + 1]});

    area_tree_ = SegmentTree(area_segs);
    all_tree_ = SegmentTree(all_segs);

    for (const Point& p : outer_) bbox_.grow(p);
    diameter_ = 0.0;
    for (std::size_t i = 0; i < outer_.size(); ++i)
      for (std::size_t j = i + 1; j < outer_.size(); ++j)
        diameter_ = std::max(diameter_, dist(outer_[i], outer_[j]));
    require(diameter_ > 0.0 && std::isfinite(diameter_), errc::invalid_params, "degenerate outer loop");

    // Holes strictly inside the outer loop and pairwise disjoint.
    for (std::size_t hi = 0; hi < holes_.size(); ++hi) {
      for (const Point& p : holes_[hi]) {
        require(point_in_loop(outer_, p), errc::invalid_params, "hole vertex outside outer loop");
        for (std::size_t hj = 0; hj < holes_.size(); ++hj)
          if (hj != hi)
            require(!point_in_loop(holes_[hj], p), errc::invalid_params, "holes overlap");
      }
    }
    // Slits inside the closure of the region.
    for (const auto& s : slits_)
      for (const Point& p : s)
        require(point_in_loop(outer_, p) || all_tree_.distance(p) <= kGeomEps * diameter_, errc::invalid_params,
                "slit vertex outside the closure");
  }

  static bool point_in_loop(const std::vector<Point>& loop, Point p) {
    bool in = false;
    const std::size_t n = loop.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point a = loop[i], b = loop[j];
      if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
    }
    return in;
  }

  std::string name_;
  std::vector<Point> outer_;
  std::vector<std::vector<Point>> holes_;
  std::vector<std::vector<Point>> slits_;
  SegmentTree area_tree_;  // outer + holes: parity queries
  SegmentTree all_tree_;   // everything incl. slits: distance/intersection
  Box bbox_;
  double diameter_ = 0.0;
};

}  // namespace qhgeo
