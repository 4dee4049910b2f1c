#pragma once

#include "qhgeo/graph.hpp"

namespace qhgeo {

// A geodesic (or inner-geodesic) query result. `path` runs from the first
// query point to the second, `w_prefix` accumulates the active edge weight
// along the vertices, `node_path` holds graph node indices (-1 for the exact
// query endpoints when they are off-lattice).
struct Geodesic {
  Polyline path;
  std::vector<std::int32_t> node_path;
  std::vector<double> w_prefix;
  std::vector<double> d_boundary;
  double length_w = 0.0;  // == w_prefix.back()
  double snap_from = 0.0, snap_to = 0.0;  // distance from query points to nearest node
  bool snap_flagged = false;              // true when a snap exceeds the local cell

  double k_length() const { return length_w; }
  Point from() const { return path.front(); }
  Point to() const { return path.back(); }
};

namespace detail {

struct Attachment {
  Point p;
  std::int32_t exact_node = -1;
  std::vector<std::int32_t> link_nodes;
  std::vector<double> link_w_qh, link_w_euclid;
  std::int32_t nearest = -1;
  double nearest_dist = 0.0;
  double local_cell = 0.0;
};

// Connect a query point to the graph: either it coincides with a node, or it
// gets quadrature-weighted links to all contained neighbors within the local
// edge radius (widening until at least one link lands).
inline Attachment attach(const QhGraph& g, Point p) {
  const Domain& dom = g.domain();
  Attachment at;
  at.p = p;
  const double d = dom.boundary_distance(p);
  at.local_cell = g.cell_size(g.level_for_distance(d));
  at.nearest = g.nearest_node(p);
  require(at.nearest >= 0, errc::empty_graph, "graph has no nodes");
  at.nearest_dist = dist(p, g.nodes()[at.nearest].p);
  if (at.nearest_dist <= 1e-12 * dom.diameter()) {
    at.exact_node = at.nearest;
    return at;
  }
  double radius = g.params().edge_radius_factor * at.local_cell;
  for (int attempt = 0; attempt < 6 && at.link_nodes.empty(); ++attempt, radius *= 2.0) {
    for (std::int32_t v : g.nodes_within(p, radius)) {
      const Point q = g.nodes()[v].p;
      if (!dom.segment_inside(p, q)) continue;
      at.link_nodes.push_back(v);
      at.link_w_qh.push_back(qh_segment_length(dom, p, q));
      at.link_w_euclid.push_back(dist(p, q));
    }
  }
  require(!at.link_nodes.empty(), errc::disconnected_pair,
          "query point cannot be linked into the graph of " + dom.name());
  return at;
}

inline const std::vector<double>& link_weights(const Attachment& a, EdgeWeight wsel) {
  return wsel == EdgeWeight::QuasiHyperbolic ? a.link_w_qh : a.link_w_euclid;
}

struct QueryOutcome {
  double value = std::numeric_limits<double>::infinity();
  // Winning route: seed ordinal on the source side, winning target link (or
  // exact node), or the direct source->target segment.
  std::int32_t target_node = -1;  // node where the path enters the target attachment
  bool direct = false;
  SsspResult sp;
};

inline QueryOutcome run_query(const QhGraph& g, const Attachment& ax, const Attachment& ay, EdgeWeight wsel) {
  QueryOutcome out;
  const Domain& dom = g.domain();

  // Direct segment between two off-lattice query points.
  double direct_w = std::numeric_limits<double>::infinity();
  if (ax.exact_node < 0 && ay.exact_node < 0) {
    const double reach = g.params().edge_radius_factor * std::max(ax.local_cell, ay.local_cell);
    if (dist(ax.p, ay.p) <= reach && dom.segment_inside(ax.p, ay.p))
      direct_w = wsel == EdgeWeight::QuasiHyperbolic ? qh_segment_length(dom, ax.p, ay.p) : dist(ax.p, ay.p);
  }

  std::vector<std::pair<std::int32_t, double>> seeds;
  if (ax.exact_node >= 0) {
    seeds.push_back({ax.exact_node, 0.0});
  } else {
    const auto& lw = link_weights(ax, wsel);
    for (std::size_t i = 0; i < ax.link_nodes.size(); ++i) seeds.push_back({ax.link_nodes[i], lw[i]});
  }

  if (ay.exact_node >= 0) {
    out.sp = shortest_paths(g, seeds, g.weights(wsel), ay.exact_node, direct_w);
    if (out.sp.dist[ay.exact_node] < direct_w) {
      out.value = out.sp.dist[ay.exact_node];
      out.target_node = ay.exact_node;
      return out;
    }
  } else {
    out.sp = shortest_paths(g, seeds, g.weights(wsel), -1, direct_w);
    const auto& lw = link_weights(ay, wsel);
    double best = std::numeric_limits<double>::infinity();
    std::int32_t best_node = -1;
    for (std::size_t i = 0; i < ay.link_nodes.size(); ++i) {
      const double cand = out.sp.dist[ay.link_nodes[i]] + lw[i];
      if (cand < best || (cand == best && ay.link_nodes[i] < best_node)) {
        best = cand;
        best_node = ay.link_nodes[i];
      }
    }
    if (best < direct_w) {
      out.value = best;
      out.target_node = best_node;
      return out;
    }
  }
  require(std::isfinite(direct_w), errc::disconnected_pair,
          "query points lie in different components of " + dom.name());
  out.value = direct_w;
  out.direct = true;
  return out;
}

inline Geodesic assemble_geodesic(const QhGraph& g, const Attachment& ax, const Attachment& ay,
                                  const QueryOutcome& q, EdgeWeight wsel) {
  Geodesic geo;
  std::vector<Point> pts;
  std::vector<double> prefix;
  std::vector<std::int32_t> node_ids;

  auto push = [&](Point p, double cum, std::int32_t node) {
    pts.push_back(p);
    prefix.push_back(cum);
    node_ids.push_back(node);
  };

  if (q.direct) {
    push(ax.p, 0.0, ax.exact_node);
    push(ay.p, q.value, ay.exact_node);
  } else {
    push(ax.p, 0.0, ax.exact_node);
    const auto chain = trace_path(q.sp, q.target_node);
    double cum = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const std::int32_t v = chain[i];
      if (i == 0) {
        if (ax.exact_node == v) {
          // Seed is the query node itself; already pushed.
          continue;
        }
        const std::int32_t ord = -q.sp.parent[v] - 2;
        cum = link_weights(ax, wsel)[ord];
      } else {
        const GraphEdge& e = g.edges()[q.sp.parent_edge[v]];
        cum += wsel == EdgeWeight::QuasiHyperbolic ? e.w_qh : e.w_euclid;
      }
      push(g.nodes()[v].p, cum, v);
    }
    if (ay.exact_node < 0) {
      const auto& lw = link_weights(ay, wsel);
      double tail = 0.0;
      for (std::size_t i = 0; i < ay.link_nodes.size(); ++i)
        if (ay.link_nodes[i] == q.target_node) tail = lw[i];
      push(ay.p, cum + tail, -1);
    }
  }

  geo.path = Polyline(pts);
  geo.node_path = std::move(node_ids);
  geo.w_prefix = std::move(prefix);
  geo.length_w = geo.w_prefix.back();
  geo.d_boundary.reserve(geo.node_path.size());
  for (std::size_t i = 0; i < geo.node_path.size(); ++i)
    geo.d_boundary.push_back(geo.node_path[i] >= 0 ? g.nodes()[geo.node_path[i]].d_boundary
                                                   : g.domain().boundary_distance(pts[i]));
  return geo;
}

inline void reverse_geodesic(Geodesic& geo) {
  std::vector<Point> pts(geo.path.points().rbegin(), geo.path.points().rend());
  std::reverse(geo.node_path.begin(), geo.node_path.end());
  std::reverse(geo.d_boundary.begin(), geo.d_boundary.end());
  std::vector<double> prefix(geo.w_prefix.size());
  for (std::size_t i = 0; i < geo.w_prefix.size(); ++i)
    prefix[i] = geo.length_w - geo.w_prefix[geo.w_prefix.size() - 1 - i];
  geo.w_prefix = std::move(prefix);
  geo.path = Polyline(pts);
}

inline Geodesic query_geodesic(const QhGraph& g, Point x, Point y, EdgeWeight wsel) {
  if (x == y) {
    Geodesic geo;
    const Attachment ax = attach(g, x);
    geo.path = Polyline({x});
    geo.node_path = {ax.exact_node};
    geo.w_prefix = {0.0};
    geo.d_boundary = {g.domain().boundary_distance(x)};
    geo.length_w = 0.0;
    geo.snap_from = geo.snap_to = ax.nearest_dist;
    geo.snap_flagged = ax.nearest_dist > ax.local_cell;
    return geo;
  }
  const bool flip = !lex_less(x, y);
  const Point a = flip ? y : x, b = flip ? x : y;
  const Attachment aa = attach(g, a), ab = attach(g, b);
  const QueryOutcome q = run_query(g, aa, ab, wsel);
  Geodesic geo = assemble_geodesic(g, aa, ab, q, wsel);
  if (flip) reverse_geodesic(geo);
  geo.snap_from = flip ? ab.nearest_dist : aa.nearest_dist;
  geo.snap_to = flip ? aa.nearest_dist : ab.nearest_dist;
  geo.snap_flagged = aa.nearest_dist > aa.local_cell || ab.nearest_dist > ab.local_cell;
  return geo;
}

}  // namespace detail

// Graph approximation of the quasihyperbolic distance k(x, y); an upper bound
// of the continuum value up to quadrature tolerance. Canonical endpoint
// ordering makes it exactly symmetric.
inline double qh_distance(const QhGraph& g, Point x, Point y) {
  if (x == y) {
    require(g.domain().contains(x), errc::point_outside_domain, "query point outside domain");
    return 0.0;
  }
  const bool flip = !lex_less(x, y);
  const Point a = flip ? y : x, b = flip ? x : y;
  const detail::Attachment aa = detail::attach(g, a), ab = detail::attach(g, b);
  return detail::run_query(g, aa, ab, EdgeWeight::QuasiHyperbolic).value;
}

// Shortest-path realization of qh_distance, oriented x -> y.
inline Geodesic qh_geodesic(const QhGraph& g, Point x, Point y) {
  return detail::query_geodesic(g, x, y, EdgeWeight::QuasiHyperbolic);
}

// Inner (length) distance through the graph with Euclidean edge weights.
inline double inner_distance(const QhGraph& g, Point x, Point y) {
  if (x == y) {
    require(g.domain().contains(x), errc::point_outside_domain, "query point outside domain");
    return 0.0;
  }
  const bool flip = !lex_less(x, y);
  const Point a = flip ? y : x, b = flip ? x : y;
  const detail::Attachment aa = detail::attach(g, a), ab = detail::attach(g, b);
  return detail::run_query(g, aa, ab, EdgeWeight::Euclid).value;
}

inline Geodesic inner_geodesic(const QhGraph& g, Point x, Point y) {
  return detail::query_geodesic(g, x, y, EdgeWeight::Euclid);
}

}  // namespace qhgeo
