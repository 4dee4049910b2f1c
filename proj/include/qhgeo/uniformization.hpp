#pragma once

#include "qhgeo/coarse.hpp"
#include "qhgeo/hyperbolicity.hpp"

namespace qhgeo {

// Conformal deformation of the discrete (D, k) by the density
// rho_eps(x) = exp(-eps * k(x, w)). Edge weights average the endpoint
// densities; the deformed boundary distance runs through the shared boundary
// proxies, each carrying its own tail mass rho_eps(b)/eps (the deformed
// length of the remaining drop to the boundary, which keeps the distance
// positive at the proxies themselves and independent of proxy depth).
class DeformedSpace {
 public:
  DeformedSpace(const QhGraph& base, Point w, double epsilon, int proxy_level = 2) : base_(base), w_(w) {
    require(epsilon > 0.0 && epsilon <= 1.0, errc::epsilon_out_of_range, "need 0 < epsilon <= 1");
    require(base.domain().contains(w), errc::point_outside_domain, "base point not interior");
    epsilon_ = epsilon;
    w_node_ = base.nearest_node(w);

    const auto spw = sssp_from_node(base, w_node_, EdgeWeight::QuasiHyperbolic);
    k_from_w_ = spw.dist;
    rho_.reserve(k_from_w_.size());
    for (double k : k_from_w_) rho_.push_back(std::exp(-epsilon_ * k));

    const auto& edges = base.edges();
    w_eps_.reserve(edges.size());
    for (const GraphEdge& e : edges) w_eps_.push_back(e.w_qh * 0.5 * (rho_[e.u] + rho_[e.v]));

    proxies_ = boundary_proxies(base, proxy_level);
    std::vector<std::pair<std::int32_t, double>> seeds;
    seeds.reserve(proxies_.size());
    for (std::int32_t b : proxies_) seeds.push_back({b, rho_[b] / epsilon_});
    const auto spb = shortest_paths(base, seeds, w_eps_);
    boundary_distance_eps_ = spb.dist;

    w_keps_.reserve(edges.size());
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
      const GraphEdge& e = edges[ei];
      const double inv_harmonic =
          0.5 * (1.0 / boundary_distance_eps_[e.u] + 1.0 / boundary_distance_eps_[e.v]);
      w_keps_.push_back(w_eps_[ei] * inv_harmonic);
    }
  }

  const QhGraph& base() const { return base_; }
  Point w() const { return w_; }
  std::int32_t w_node() const { return w_node_; }
  double epsilon() const { return epsilon_; }
  const std::vector<double>& k_from_w() const { return k_from_w_; }
  const std::vector<double>& rho() const { return rho_; }
  std::span<const double> edge_weights_eps() const { return w_eps_; }
  std::span<const double> edge_weights_qh_eps() const { return w_keps_; }
  const std::vector<double>& boundary_distance_eps() const { return boundary_distance_eps_; }
  const std::vector<std::int32_t>& proxies() const { return proxies_; }

  double rho_at(std::int32_t node) const { return rho_[node]; }

  double node_distance_eps(std::int32_t u, std::int32_t v) const { return node_metric(u, v, w_eps_); }
  double node_qh_eps(std::int32_t u, std::int32_t v) const { return node_metric(u, v, w_keps_); }

 private:
  double node_metric(std::int32_t u, std::int32_t v, const std::vector<double>& w) const {
    if (u == v) return 0.0;
    const std::int32_t s = std::min(u, v), t = std::max(u, v);
    const std::pair<std::int32_t, double> seed{s, 0.0};
    const auto sp = shortest_paths(base_, std::span(&seed, 1), w, t);
    require(std::isfinite(sp.dist[t]), errc::disconnected_pair, "nodes in different components");
    return sp.dist[t];
  }

  const QhGraph& base_;
  Point w_;
  double epsilon_ = 0.0;
  std::int32_t w_node_ = 0;
  std::vector<double> k_from_w_, rho_;
  std::vector<double> w_eps_, w_keps_;
  std::vector<double> boundary_distance_eps_;
  std::vector<std::int32_t> proxies_;
};

inline DeformedSpace deform(const QhGraph& graph, Point w, double epsilon, int proxy_level = 2) {
  return DeformedSpace(graph, w, epsilon, proxy_level);
}

// Deformed distance between query points (snapped to nodes).
inline double deformed_distance(const DeformedSpace& ds, Point x, Point y) {
  return ds.node_distance_eps(ds.base().nearest_node(x), ds.base().nearest_node(y));
}

// Quasihyperbolic distance of the deformed space between query points.
inline double deformed_qh(const DeformedSpace& ds, Point x, Point y) {
  return ds.node_qh_eps(ds.base().nearest_node(x), ds.base().nearest_node(y));
}

struct BandReport {
  double epsilon = 0.0;
  int pairs_tested = 0;
  int upper_violations = 0;     // pairs with k_eps > e * eps * k beyond slack
  double c0_empirical = 0.0;    // min over pairs of k_eps / (eps k)
  double max_band_ratio = 0.0;  // max over pairs of k_eps / (eps k)
  double M_empirical = 1.0;     // max distortion of the identity map
  double diam_eps = 0.0;        // max sampled deformed distance
};

inline constexpr double kBandUpperSlack = 0.05;

// Samples node pairs and records how k_eps sits inside the band
// [c0 * eps * k, e * eps * k], plus the observed deformed diameter and the
// distortion of the identity map.
inline BandReport band_report(const DeformedSpace& ds, int pairs, std::uint64_t seed) {
  require(pairs >= 1, errc::invalid_params, "need at least one pair");
  const QhGraph& g = ds.base();
  Rng rng(derive_seed(seed, "band-report"));
  BandReport rep;
  rep.epsilon = ds.epsilon();
  rep.c0_empirical = std::numeric_limits<double>::infinity();

  // Group pairs by source so one Dijkstra per metric serves several targets.
  const int group = 4;
  const std::size_t n = g.nodes().size();
  for (int done = 0; done < pairs;) {
    const auto s = static_cast<std::int32_t>(rng.next_below(n));
    std::vector<std::int32_t> targets;
    for (int j = 0; j < group && done + static_cast<int>(targets.size()) < pairs; ++j) {
      const auto t = static_cast<std::int32_t>(rng.next_below(n));
      if (t != s) targets.push_back(t);
    }
    if (targets.empty()) continue;
    const std::pair<std::int32_t, double> seed_node{s, 0.0};
    const auto sp_k = shortest_paths(g, std::span(&seed_node, 1), g.weights(EdgeWeight::QuasiHyperbolic));
    const auto sp_eps = shortest_paths(g, std::span(&seed_node, 1), ds.edge_weights_eps());
    const auto sp_keps = shortest_paths(g, std::span(&seed_node, 1), ds.edge_weights_qh_eps());
    for (std::int32_t t : targets) {
      const double k = sp_k.dist[t];
      const double d_eps = sp_eps.dist[t];
      const double k_eps = sp_keps.dist[t];
      require(std::isfinite(k) && std::isfinite(d_eps) && std::isfinite(k_eps), errc::disconnected_pair,
              "sampled pair disconnected");
      ++done;
      ++rep.pairs_tested;
      rep.diam_eps = std::max(rep.diam_eps, d_eps);
      if (k <= 0.0) continue;
      const double ratio = k_eps / (rep.epsilon * k);
      rep.c0_empirical = std::min(rep.c0_empirical, ratio);
      rep.max_band_ratio = std::max(rep.max_band_ratio, ratio);
      if (k_eps > std::exp(1.0) * rep.epsilon * k * (1.0 + kBandUpperSlack)) ++rep.upper_violations;
      const double q = k_eps / k;
      rep.M_empirical = std::max({rep.M_empirical, q, 1.0 / q});
    }
  }
  if (!std::isfinite(rep.c0_empirical)) rep.c0_empirical = 0.0;
  return rep;
}

// Uniform constant of the deformed space measured on deformed geodesics:
// cone constant against the deformed boundary distance (the quasiconvexity
// part is 1 by construction on shortest paths).
inline double uniformity_of_deformation(const DeformedSpace& ds, int pairs, std::uint64_t seed) {
  require(pairs >= 1, errc::invalid_params, "need at least one pair");
  const QhGraph& g = ds.base();
  Rng rng(derive_seed(seed, "uniform-eps"));
  const std::size_t n = g.nodes().size();
  double worst = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const auto a = static_cast<std::int32_t>(rng.next_below(n));
    const auto b = static_cast<std::int32_t>(rng.next_below(n));
    if (a == b) continue;
    const std::int32_t s = std::min(a, b), e = std::max(a, b);
    const std::pair<std::int32_t, double> seed_node{s, 0.0};
    const auto sp = shortest_paths(g, std::span(&seed_node, 1), ds.edge_weights_eps(), e);
    require(std::isfinite(sp.dist[e]), errc::disconnected_pair, "sampled pair disconnected");
    const auto chain = trace_path(sp, e);
    const double total = sp.dist[e];
    for (std::int32_t v : chain) {
      const double along = sp.dist[v];
      const double cone = std::min(along, total - along) / ds.boundary_distance_eps()[v];
      worst = std::max(worst, cone);
    }
    worst = std::max(worst, 1.0);  // quasiconvexity of the geodesic itself
  }
  return worst;
}

// Solidness of a curve measured in the deformed quasihyperbolic metric.
inline SolidnessReport solidness_deformed(const DeformedSpace& ds, const Polyline& curve, double h,
                                          std::size_t grid = 20) {
  return solidness(ds.base(), curve, h, grid, ds.edge_weights_qh_eps());
}

}  // namespace qhgeo
