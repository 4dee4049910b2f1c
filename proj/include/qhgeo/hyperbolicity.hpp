#pragma once

#include <array>

#include "qhgeo/query.hpp"
#include "qhgeo/rng.hpp"

namespace qhgeo {

struct DeltaEstimate {
  double delta_thin = 0.0;
  double delta_four_point = 0.0;
  int samples = 0;
  std::array<Point, 3> witness_triple{};
};

// Thin-triangle slack of one node triple: max over the side [x,y] of the
// graph distance to the union of the other two sides.
inline double triple_thinness(const QhGraph& g, std::int32_t x, std::int32_t y, std::int32_t z) {
  const auto n = static_cast<std::int32_t>(g.nodes().size());
  require(x >= 0 && x < n && y >= 0 && y < n && z >= 0 && z < n, errc::invalid_params,
          "triple indices out of range");
  const auto spx = sssp_from_node(g, x, EdgeWeight::QuasiHyperbolic);
  const auto spy = sssp_from_node(g, y, EdgeWeight::QuasiHyperbolic);
  const auto side_xy = trace_path(spx, y);
  const auto side_xz = trace_path(spx, z);
  const auto side_yz = trace_path(spy, z);

  std::vector<std::int32_t> others = side_xz;
  others.insert(others.end(), side_yz.begin(), side_yz.end());
  std::sort(others.begin(), others.end());
  others.erase(std::unique(others.begin(), others.end()), others.end());
  const auto sp = sssp_from_nodes(g, others, EdgeWeight::QuasiHyperbolic);
  double worst = 0.0;
  for (std::int32_t v : side_xy) worst = std::max(worst, sp.dist[v]);
  return worst;
}

// delta estimate over seeded random node triples; a sampled lower bound of
// the exhaustive thin-triangle constant, reported with its witness.
inline DeltaEstimate thin_triangle_delta(const QhGraph& g, int n_triples, std::uint64_t seed) {
  require(n_triples >= 1, errc::invalid_params, "need at least one triple");
  Rng rng(derive_seed(seed, "thin-triangles"));
  const std::size_t n = g.nodes().size();
  DeltaEstimate est;
  est.samples = n_triples;
  for (int t = 0; t < n_triples; ++t) {
    const auto x = static_cast<std::int32_t>(rng.next_below(n));
    const auto y = static_cast<std::int32_t>(rng.next_below(n));
    const auto z = static_cast<std::int32_t>(rng.next_below(n));
    if (x == y && y == z) continue;
    const double d = triple_thinness(g, x, y, z);
    if (d > est.delta_thin) {
      est.delta_thin = d;
      est.witness_triple = {g.nodes()[x].p, g.nodes()[y].p, g.nodes()[z].p};
    }
  }
  return est;
}

// Four-point hyperbolicity constant of a distance matrix: max excess between
// the two largest of the three pair sums. Exhaustive for up to 40 points,
// seeded sampling of 1e5 quadruples beyond that.
inline double four_point_delta(const std::vector<std::vector<double>>& m, std::uint64_t seed = 1) {
  const std::size_t n = m.size();
  require(n >= 1, errc::invalid_matrix, "empty matrix");
  for (const auto& row : m)
    require(row.size() == n, errc::invalid_matrix, "matrix not square");
  for (std::size_t i = 0; i < n; ++i) {
    require(m[i][i] == 0.0, errc::invalid_matrix, "nonzero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      require(std::isfinite(m[i][j]) && m[i][j] >= 0.0, errc::invalid_matrix, "bad entry");
      require(std::abs(m[i][j] - m[j][i]) <= 1e-12 * (1.0 + m[i][j]), errc::invalid_matrix,
              "matrix not symmetric");
    }
  }
  // Triangle inequality: exhaustive when small, seeded spot-checks otherwise.
  auto check_triangle = [&](std::size_t i, std::size_t j, std::size_t k) {
    require(m[i][k] <= m[i][j] + m[j][k] + 1e-9 * (1.0 + m[i][k]), errc::invalid_matrix,
            "triangle inequality fails");
  };
  if (n <= 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check_triangle(i, j, k);
  } else {
    Rng trng(derive_seed(seed, "triangle-spotcheck"));
    for (int t = 0; t < 100000; ++t)
      check_triangle(trng.next_below(n), trng.next_below(n), trng.next_below(n));
  }

  auto quad_delta = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    double s1 = m[a][b] + m[c][d];
    double s2 = m[a][c] + m[b][d];
    double s3 = m[a][d] + m[b][c];
    if (s1 < s2) std::swap(s1, s2);
    if (s1 < s3) std::swap(s1, s3);
    if (s2 < s3) std::swap(s2, s3);
    return 0.5 * (s1 - s2);
  };

  double best = 0.0;
  if (n < 4) return 0.0;
  if (n <= 40) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          for (std::size_t d = c + 1; d < n; ++d) best = std::max(best, quad_delta(a, b, c, d));
  } else {
    Rng rng(derive_seed(seed, "four-point"));
    for (int t = 0; t < 100000; ++t)
      best = std::max(best, quad_delta(rng.next_below(n), rng.next_below(n), rng.next_below(n),
                                       rng.next_below(n)));
  }
  return best;
}

struct StarlikenessEstimate {
  double K = 0.0;
  Point base;
  Point worst_point;
};

// Nodes that stand in for the boundary: everything below the proxy_level
// refinement scale (widened to the shallowest shell if that catches nothing).
inline std::vector<std::int32_t> boundary_proxies(const QhGraph& g, int proxy_level = 2) {
  const double thr = g.cell_size(std::min(proxy_level, g.max_level()));
  std::vector<std::int32_t> out;
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    if (g.nodes()[i].d_boundary < thr) out.push_back(static_cast<std::int32_t>(i));
  if (out.empty()) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& nd : g.nodes()) dmin = std::min(dmin, nd.d_boundary);
    for (std::size_t i = 0; i < g.nodes().size(); ++i)
      if (g.nodes()[i].d_boundary <= 2.0 * dmin) out.push_back(static_cast<std::int32_t>(i));
  }
  return out;
}

struct StarlikenessData {
  StarlikenessEstimate estimate;
  std::vector<double> K_at_node;  // distance from each node to the ray tree
  std::vector<std::int32_t> proxies;
};

// K such that every node lies within graph distance K of some geodesic from
// the base point to a boundary proxy. Rays to the ideal boundary are
// approximated by geodesics to deep proxy nodes.
inline StarlikenessData rough_starlikeness_data(const QhGraph& g, Point w, int proxy_level = 2) {
  StarlikenessData data;
  require(g.domain().contains(w), errc::point_outside_domain, "base point not interior");
  const std::int32_t wn = g.nearest_node(w);
  data.proxies = boundary_proxies(g, proxy_level);
  const auto spw = sssp_from_node(g, wn, EdgeWeight::QuasiHyperbolic);
  std::vector<char> on_ray(g.nodes().size(), 0);
  for (std::int32_t b : data.proxies) {
    for (std::int32_t v = b; v >= 0; v = spw.parent[v]) {
      if (on_ray[v]) break;
      on_ray[v] = 1;
      if (spw.parent[v] < 0) break;
    }
  }
  std::vector<std::int32_t> ray_nodes;
  for (std::size_t i = 0; i < on_ray.size(); ++i)
    if (on_ray[i]) ray_nodes.push_back(static_cast<std::int32_t>(i));
  const auto sp = sssp_from_nodes(g, ray_nodes, EdgeWeight::QuasiHyperbolic);
  data.K_at_node = sp.dist;
  data.estimate.base = g.nodes()[wn].p;
  std::int32_t worst = 0;
  for (std::size_t i = 1; i < sp.dist.size(); ++i)
    if (sp.dist[i] > sp.dist[worst]) worst = static_cast<std::int32_t>(i);
  data.estimate.K = sp.dist[worst];
  data.estimate.worst_point = g.nodes()[worst].p;
  return data;
}

inline StarlikenessEstimate rough_starlikeness(const QhGraph& g, Point w, int proxy_level = 2) {
  return rough_starlikeness_data(g, w, proxy_level).estimate;
}

}  // namespace qhgeo
