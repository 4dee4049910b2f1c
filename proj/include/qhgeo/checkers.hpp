#pragma once

#include "qhgeo/query.hpp"
#include "qhgeo/rng.hpp"

namespace qhgeo {

enum class Certificate { upper_bound, lower_bound, two_sided };

inline const char* certificate_name(Certificate c) {
  switch (c) {
    case Certificate::upper_bound: return "upper_bound";
    case Certificate::lower_bound: return "lower_bound";
    case Certificate::two_sided: return "two_sided";
  }
  return "unknown";
}

struct ConstantReport {
  double value = 0.0;
  Certificate direction = Certificate::two_sided;
  std::vector<Point> witness;       // op-specific witness points
  double witness_arclength = 0.0;   // position on the curve for sup-type witnesses
  long samples = 0;
  std::string resolution;           // sampling params of the graph involved, if any
};

// ---------------------------------------------------------------------------
// Per-curve constants
// ---------------------------------------------------------------------------

// Cone constant of a curve: sup over arclength samples z of
// min(len to either end) / d_D(z), with the shared sampling rule.
inline ConstantReport cone_constant(const Domain& domain, const Polyline& curve) {
  require(!curve.degenerate() && dist(curve.front(), curve.back()) > 0.0, errc::degenerate_curve,
          "cone constant needs distinct endpoints");
  require_inside(domain, curve);
  ConstantReport rep;
  const double total = curve.length();
  for (double s : boundary_aware_arclengths(domain, curve)) {
    const Point z = curve.at_arclength(s);
    const double ratio = std::min(s, total - s) / domain.boundary_distance_unchecked(z);
    ++rep.samples;
    if (ratio > rep.value) {
      rep.value = ratio;
      rep.witness = {curve.front(), z, curve.back()};
      rep.witness_arclength = s;
    }
  }
  return rep;
}

enum class DistanceMode { euclidean, inner };

// Length over endpoint distance; inner mode measures the endpoint distance
// through the Euclidean-weighted graph.
inline double quasiconvexity(const Domain& domain, const Polyline& curve, DistanceMode mode,
                             const QhGraph* graph = nullptr) {
  require(!curve.degenerate() && dist(curve.front(), curve.back()) > 0.0, errc::degenerate_curve,
          "quasiconvexity needs distinct endpoints");
  require_inside(domain, curve);
  double denom = 0.0;
  if (mode == DistanceMode::euclidean) {
    denom = dist(curve.front(), curve.back());
  } else {
    require(graph != nullptr, errc::invalid_params, "inner mode needs a graph");
    denom = inner_distance(*graph, curve.front(), curve.back());
  }
  return curve.length() / denom;
}

inline double uniform_constant(const Domain& domain, const Polyline& curve) {
  return std::max(cone_constant(domain, curve).value,
                  quasiconvexity(domain, curve, DistanceMode::euclidean));
}

// Empirical shape constant: with x0 the deepest curve point, sup over u
// between either endpoint and x0 of diam(curve[endpoint, u]) / d_D(u).
inline ConstantReport solid_arc_shape(const Domain& domain, const Polyline& curve) {
  require_inside(domain, curve);
  ConstantReport rep;
  if (curve.degenerate()) return rep;  // single point: 0 by convention
  auto arcs = boundary_aware_arclengths(domain, curve, 4000);
  std::vector<Point> pts;
  std::vector<double> depth;
  pts.reserve(arcs.size());
  for (double s : arcs) {
    pts.push_back(curve.at_arclength(s));
    depth.push_back(domain.boundary_distance_unchecked(pts.back()));
  }
  std::size_t deepest = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (depth[i] > depth[deepest]) deepest = i;

  auto sweep = [&](bool from_start) {
    // Incremental prefix diameter with a thinned reference set.
    std::vector<Point> seen;
    double diam = 0.0;
    const std::size_t count = from_start ? deepest + 1 : pts.size() - deepest;
    const std::size_t thin = std::max<std::size_t>(1, count / 768);
    for (std::size_t step = 0; step < count; ++step) {
      const std::size_t i = from_start ? step : pts.size() - 1 - step;
      for (const Point& q : seen) diam = std::max(diam, dist(pts[i], q));
      if (step % thin == 0) seen.push_back(pts[i]);
      const double ratio = diam / depth[i];
      ++rep.samples;
      if (ratio > rep.value) {
        rep.value = ratio;
        rep.witness = {from_start ? curve.front() : curve.back(), pts[i]};
        rep.witness_arclength = arcs[i];
      }
    }
  };
  sweep(true);
  sweep(false);
  return rep;
}

// ---------------------------------------------------------------------------
// Seeded node-pair suites
// ---------------------------------------------------------------------------

inline std::vector<std::pair<std::int32_t, std::int32_t>> sample_node_pairs(const QhGraph& g, int n,
                                                                            std::uint64_t seed,
                                                                            std::string_view tag) {
  Rng rng(derive_seed(seed, tag));
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  const std::size_t size = g.nodes().size();
  int guard = 0;
  while (static_cast<int>(pairs.size()) < n && guard < 100 * n) {
    ++guard;
    const auto a = static_cast<std::int32_t>(rng.next_below(size));
    const auto b = static_cast<std::int32_t>(rng.next_below(size));
    if (a != b) pairs.push_back({std::min(a, b), std::max(a, b)});
  }
  return pairs;
}

inline Polyline node_chain_polyline(const QhGraph& g, const std::vector<std::int32_t>& chain) {
  std::vector<Point> pts;
  pts.reserve(chain.size());
  for (std::int32_t v : chain) pts.push_back(g.nodes()[v].p);
  return Polyline(pts);
}

// Upper-bound certificate for the John constant: for each pair the best cone
// constant over a three-arc candidate family (quasihyperbolic geodesic, inner
// geodesic, route through the deepest node), maximized over pairs. The true
// constant infimizes over all arcs, so this only ever overestimates.
inline ConstantReport john_estimate(const Domain& domain, const QhGraph& g, int n_pairs,
                                    std::uint64_t seed) {
  require(n_pairs >= 1, errc::invalid_params, "need at least one pair");
  ConstantReport rep;
  rep.direction = Certificate::upper_bound;
  rep.resolution = g.params().key_string();
  const std::int32_t center = max_depth_node(g);
  const auto sp_center = sssp_from_node(g, center, EdgeWeight::QuasiHyperbolic);
  for (const auto& [a, b] : sample_node_pairs(g, n_pairs, seed, "john-pairs")) {
    const Point pa = g.nodes()[a].p, pb = g.nodes()[b].p;
    double best = std::numeric_limits<double>::infinity();
    Polyline best_arc;

    auto consider = [&](const Polyline& arc) {
      if (arc.degenerate()) return;
      const double c = cone_constant(domain, arc).value;
      if (c < best) {
        best = c;
        best_arc = arc;
      }
    };
    consider(qh_geodesic(g, pa, pb).path);
    consider(inner_geodesic(g, pa, pb).path);
    {
      auto to_a = trace_path(sp_center, a);
      const auto to_b = trace_path(sp_center, b);
      std::reverse(to_a.begin(), to_a.end());  // a -> center
      std::vector<std::int32_t> chain = to_a;
      chain.insert(chain.end(), to_b.begin() + 1, to_b.end());
      consider(node_chain_polyline(g, chain));
    }
    ++rep.samples;
    if (std::isfinite(best) && best > rep.value) {
      rep.value = best;
      rep.witness = {pa, pb};
    }
  }
  return rep;
}

// Max over pairs of geodesic length / inner distance; sampled lower bound of
// the Gehring-Hayman constant.
inline ConstantReport gehring_hayman(const Domain& domain, const QhGraph& g, int n_pairs,
                                     std::uint64_t seed) {
  require(n_pairs >= 1, errc::invalid_params, "need at least one pair");
  (void)domain;
  ConstantReport rep;
  rep.direction = Certificate::lower_bound;
  rep.resolution = g.params().key_string();
  for (const auto& [a, b] : sample_node_pairs(g, n_pairs, seed, "gh-pairs")) {
    const Point pa = g.nodes()[a].p, pb = g.nodes()[b].p;
    const Geodesic geo = qh_geodesic(g, pa, pb);
    const double inner = inner_distance(g, pa, pb);
    if (inner <= 0.0) continue;
    const double ratio = geo.path.length() / inner;
    ++rep.samples;
    if (ratio > rep.value) {
      rep.value = ratio;
      rep.witness = {pa, pb};
    }
  }
  return rep;
}

// Lower-bound certificate for the ball-separation constant with the inner
// geodesic as the fixed competitor curve.
inline ConstantReport ball_separation(const Domain& domain, const QhGraph& g, int n_pairs,
                                      std::uint64_t seed) {
  require(n_pairs >= 1, errc::invalid_params, "need at least one pair");
  (void)domain;
  ConstantReport rep;
  rep.direction = Certificate::lower_bound;
  rep.resolution = g.params().key_string();
  for (const auto& [a, b] : sample_node_pairs(g, n_pairs, seed, "bs-pairs")) {
    const Point pa = g.nodes()[a].p, pb = g.nodes()[b].p;
    const Geodesic geo = qh_geodesic(g, pa, pb);
    const Geodesic beta = inner_geodesic(g, pa, pb);
    ++rep.samples;
    for (std::size_t i = 0; i < geo.path.size(); ++i) {
      const Point z = geo.path.points()[i];
      const double ratio = point_polyline_distance(z, beta.path.points()) / geo.d_boundary[i];
      if (ratio > rep.value) {
        rep.value = ratio;
        rep.witness = {pa, pb, z};
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ball-based connectivity constants (bottleneck shortest paths)
// ---------------------------------------------------------------------------

namespace detail {

// Minimize, over graph paths s -> t, the maximum of node_cost along the path
// (classic bottleneck Dijkstra). Deterministic tie-breaks as elsewhere.
inline double minimax_node_cost(const QhGraph& g, std::int32_t s, std::int32_t t,
                                const std::vector<double>& node_cost) {
  const std::size_t n = g.nodes().size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  best[s] = node_cost[s];
  pq.push({best[s], s});
  while (!pq.empty()) {
    const auto [c, u] = pq.top();
    pq.pop();
    if (c != best[u]) continue;
    if (u == t) return c;
    for (const auto& [v, ei] : g.neighbors(u)) {
      (void)ei;
      const double nc = std::max(c, node_cost[v]);
      if (nc < best[v]) {
        best[v] = nc;
        pq.push({nc, v});
      }
    }
  }
  return best[t];
}

// Maximize, over graph paths s -> t, the minimum of node_cost along the path.
inline double maximin_node_cost(const QhGraph& g, std::int32_t s, std::int32_t t,
                                const std::vector<double>& node_cost) {
  const std::size_t n = g.nodes().size();
  std::vector<double> best(n, -std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::int32_t>;
  std::priority_queue<Item> pq;
  best[s] = node_cost[s];
  pq.push({best[s], s});
  while (!pq.empty()) {
    const auto [c, u] = pq.top();
    pq.pop();
    if (c != best[u]) continue;
    if (u == t) return c;
    for (const auto& [v, ei] : g.neighbors(u)) {
      (void)ei;
      const double nc = std::min(c, node_cost[v]);
      if (nc > best[v]) {
        best[v] = nc;
        pq.push({nc, v});
      }
    }
  }
  return best[t];
}

}  // namespace detail

// Smallest inflation c such that p and q join inside B(x, c r): a single
// bottleneck shortest-path query.
inline double llc1_pair(const QhGraph& g, Point x, double r, Point p, Point q) {
  require(r > 0.0, errc::invalid_params, "radius must be positive");
  const std::size_t n = g.nodes().size();
  std::vector<double> cost(n);
  for (std::size_t i = 0; i < n; ++i) cost[i] = dist(x, g.nodes()[i].p);
  const double bottleneck = detail::minimax_node_cost(g, g.nearest_node(p), g.nearest_node(q), cost);
  return std::max(1.0, bottleneck / r);
}

struct LlcReport {
  double c1 = 1.0;
  double c2 = 1.0;
  Point witness1_center, witness2_center;
  double witness1_r = 0.0, witness2_r = 0.0;
  long samples = 0;
};

// Linear local connectivity constants, sampled over seeded centers and
// log-spaced radii. For points inside B(x,r) the smallest inflation c with a
// connecting path in B(x,cr) is a bottleneck shortest-path value; dually for
// the complement. Both are lower-bound certificates.
inline LlcReport llc_check(const Domain& domain, const QhGraph& g, int n_centers, int radii_per_center,
                           std::uint64_t seed) {
  require(n_centers >= 1 && radii_per_center >= 1, errc::invalid_params, "need positive sample counts");
  (void)domain;
  Rng rng(derive_seed(seed, "llc"));
  LlcReport rep;
  const std::size_t n = g.nodes().size();
  std::vector<double> dist_from_x(n);
  for (int ci = 0; ci < n_centers; ++ci) {
    const auto xi = static_cast<std::int32_t>(rng.next_below(n));
    const Point x = g.nodes()[xi].p;
    for (std::size_t i = 0; i < n; ++i) dist_from_x[i] = dist(x, g.nodes()[i].p);
    const double r_min = 4.0 * g.cell_size(g.level_for_distance(g.nodes()[xi].d_boundary));
    const double r_max = g.domain().diameter() / 2.0;
    for (int ri = 0; ri < radii_per_center; ++ri) {
      const double t = radii_per_center == 1 ? 0.0 : static_cast<double>(ri) / (radii_per_center - 1);
      const double r = r_min * std::pow(std::max(r_max / r_min, 1.0), t);

      std::vector<std::int32_t> inside, outside;
      for (std::size_t i = 0; i < n; ++i)
        (dist_from_x[i] < r ? inside : outside).push_back(static_cast<std::int32_t>(i));

      auto pick = [&](const std::vector<std::int32_t>& pool) -> std::int32_t {
        return pool.empty() ? -1 : pool[rng.next_below(pool.size())];
      };
      for (int pi = 0; pi < 6; ++pi) {
        const std::int32_t p = pick(inside), q = pick(inside);
        if (p < 0 || q < 0 || p == q) continue;
        ++rep.samples;
        const double bottleneck = detail::minimax_node_cost(g, p, q, dist_from_x);
        const double c = std::max(1.0, bottleneck / r);
        if (c > rep.c1) {
          rep.c1 = c;
          rep.witness1_center = x;
          rep.witness1_r = r;
        }
      }
      for (int pi = 0; pi < 6; ++pi) {
        const std::int32_t p = pick(outside), q = pick(outside);
        if (p < 0 || q < 0 || p == q) continue;
        ++rep.samples;
        const double clearance = detail::maximin_node_cost(g, p, q, dist_from_x);
        if (clearance <= 0.0) continue;
        const double c = std::max(1.0, r / clearance);
        if (c > rep.c2) {
          rep.c2 = c;
          rep.witness2_center = x;
          rep.witness2_r = r;
        }
      }
    }
  }
  return rep;
}

// Annular quasiconvexity: smallest lambda joining sampled annulus pairs
// inside B(x, lambda r) \ B(x, r'/lambda) with length <= lambda |y-z|,
// maximized over samples; bisection over lambda with restricted Dijkstra.
// interior_only keeps the annuli clear of the boundary (the ambient-space
// protocol); without it the annuli probe the boundary features too.
inline double annular_quasiconvexity(const Domain& domain, const QhGraph& g, int samples,
                                     std::uint64_t seed, double lambda_cap = 64.0,
                                     bool interior_only = false) {
  require(samples >= 1, errc::invalid_params, "need positive samples");
  (void)domain;
  Rng rng(derive_seed(seed, "annular"));
  const std::size_t n = g.nodes().size();
  double worst = 1.0;
  for (int si = 0; si < samples; ++si) {
    const auto xi = static_cast<std::int32_t>(rng.next_below(n));
    const Point x = g.nodes()[xi].p;
    const double r_min = 6.0 * g.cell_size(g.max_level());
    double r_max = g.domain().diameter() / 3.0;
    if (interior_only) r_max = std::min(r_max, g.nodes()[xi].d_boundary / 2.0);
    if (r_max <= r_min) continue;
    const double r = r_min * std::pow(r_max / r_min, rng.next_double());
    const double r_in = 0.5 * r;

    std::vector<std::int32_t> ring;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = dist(x, g.nodes()[i].p);
      if (d >= r_in && d < r) ring.push_back(static_cast<std::int32_t>(i));
    }
    if (ring.size() < 2) continue;
    const std::int32_t p = ring[rng.next_below(ring.size())];
    const std::int32_t q = ring[rng.next_below(ring.size())];
    if (p == q) continue;

    const auto feasible = [&](double lam) {
      const double lo = r_in / lam, hi = lam * r;
      std::vector<double> w(g.edges().size());
      const auto base = g.weights(EdgeWeight::Euclid);
      for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
        const GraphEdge& e = g.edges()[ei];
        const double du = dist(x, g.nodes()[e.u].p), dv = dist(x, g.nodes()[e.v].p);
        const bool ok = du >= lo && du <= hi && dv >= lo && dv <= hi;
        w[ei] = ok ? base[ei] : std::numeric_limits<double>::infinity();
      }
      const std::pair<std::int32_t, double> seed_node{std::min(p, q), 0.0};
      const auto sp = shortest_paths(g, std::span(&seed_node, 1), w, std::max(p, q));
      return sp.dist[std::max(p, q)] <= lam * dist(g.nodes()[p].p, g.nodes()[q].p);
    };

    double lo = 1.0, hi = lambda_cap;
    if (!feasible(hi)) {
      worst = std::max(worst, lambda_cap);
      continue;
    }
    for (int it = 0; it < 24; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? hi : lo) = mid;
    }
    worst = std::max(worst, hi);
  }
  return worst;
}

}  // namespace qhgeo
