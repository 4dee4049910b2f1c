#pragma once

#include "qhgeo/query.hpp"

namespace qhgeo {

// Caches pairwise metric distances between ~n arclength-uniform curve
// positions. In the base quasihyperbolic metric the samples enter the graph
// as query points (attachment links plus direct chords between neighboring
// samples), so sums along geodesics telescope to the endpoint distance; in
// other metrics (the deformed weights) samples snap to nodes.
class CurveSampler {
 public:
  CurveSampler(const QhGraph& g, const Polyline& curve, std::size_t n_samples,
               std::span<const double> edge_weights)
      : graph_(g), curve_(curve) {
    n_samples = std::max<std::size_t>(n_samples, 2);
    const double total = curve.length();
    if (curve.degenerate()) {
      arclengths_ = {0.0};
    } else {
      for (std::size_t i = 0; i < n_samples; ++i)
        arclengths_.push_back(total * static_cast<double>(i) / static_cast<double>(n_samples - 1));
    }
    const bool base_metric =
        edge_weights.data() == g.weights(EdgeWeight::QuasiHyperbolic).data();
    const std::size_t m = arclengths_.size();

    std::vector<std::vector<std::pair<std::int32_t, double>>> seeds(m);
    std::vector<Point> pts(m);
    for (std::size_t i = 0; i < m; ++i) {
      pts[i] = curve.at_arclength(arclengths_[i]);
      if (base_metric) {
        const auto at = detail::attach(g, pts[i]);
        if (at.exact_node >= 0) {
          seeds[i].push_back({at.exact_node, 0.0});
        } else {
          for (std::size_t l = 0; l < at.link_nodes.size(); ++l)
            seeds[i].push_back({at.link_nodes[l], at.link_w_qh[l]});
        }
      } else {
        seeds[i].push_back({g.nearest_node(pts[i]), 0.0});
      }
    }

    dist_.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      const auto sp = shortest_paths(g, seeds[i], edge_weights);
      for (std::size_t j = i + 1; j < m; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [node, off] : seeds[j]) best = std::min(best, sp.dist[node] + off);
        require(std::isfinite(best), errc::disconnected_pair, "curve samples disconnected");
        dist_[i][j] = dist_[j][i] = best;
      }
    }
    // Direct chords between neighboring samples keep short steps exact.
    if (base_metric) {
      for (std::size_t i = 0; i + 1 < m; ++i) {
        if (pts[i] == pts[i + 1]) continue;
        if (!g.domain().segment_inside(pts[i], pts[i + 1])) continue;
        const double w = qh_segment_length(g.domain(), pts[i], pts[i + 1]);
        if (w < dist_[i][i + 1]) dist_[i][i + 1] = dist_[i + 1][i] = w;
      }
      // Re-close the matrix under the triangle inequality, shortest intervals
      // first so chains of direct chords propagate.
      for (std::size_t len = 2; len < m; ++len)
        for (std::size_t a = 0; a + len < m; ++a) {
          const std::size_t b = a + len;
          double via = dist_[a][b];
          for (std::size_t c = a + 1; c < b; ++c) via = std::min(via, dist_[a][c] + dist_[c][b]);
          dist_[a][b] = dist_[b][a] = via;
        }
    }
  }

  std::size_t size() const { return arclengths_.size(); }
  double arclength(std::size_t i) const { return arclengths_[i]; }
  Point point(std::size_t i) const { return curve_.at_arclength(arclengths_[i]); }

  // Metric distance between sample i and sample j.
  double k(std::size_t i, std::size_t j) const { return dist_[i][j]; }

  // Greedy-forward coarse length over the sample subrange [lo, hi]: walk
  // forward emitting a point once its distance from the last emitted point
  // reaches h, then maximize over the starting offset. 0 if no h-step exists.
  double coarse_length(std::size_t lo, std::size_t hi, double h) const {
    double best = 0.0;
    for (std::size_t start = lo; start < hi; ++start) {
      double total = 0.0;
      bool any = false;
      std::size_t last = start;
      for (std::size_t j = start + 1; j <= hi; ++j) {
        const double step = k(last, j);
        if (step >= h) {
          total += step;
          last = j;
          any = true;
        }
      }
      if (any) best = std::max(best, total);
    }
    return best;
  }

 private:
  const QhGraph& graph_;
  const Polyline& curve_;
  std::vector<double> arclengths_;
  std::vector<std::vector<double>> dist_;
};

// h-coarse quasihyperbolic length of a curve, approximated greedily through
// the graph metric. The exact value is a sup over all h-coarse sequences; the
// greedy walk with best start is a documented approximation of it.
inline double coarse_qh_length(const QhGraph& g, const Polyline& curve, double h,
                               std::size_t n_samples = 64) {
  require(h >= 0.0, errc::negative_h, "h must be nonnegative");
  require_inside(g.domain(), curve);
  if (curve.degenerate()) return 0.0;
  const CurveSampler sampler(g, curve, n_samples, g.weights(EdgeWeight::QuasiHyperbolic));
  return sampler.coarse_length(0, sampler.size() - 1, h);
}

struct SolidnessReport {
  double nu = 1.0;
  double h = 0.0;
  Point witness_x, witness_y;   // subarc endpoints realizing nu
  std::size_t pairs_tested = 0;
};

// Smallest nu >= 1 with coarse-length(subarc, h) <= nu * k(endpoints) over a
// grid of sampled subarc endpoint pairs.
inline SolidnessReport solidness(const QhGraph& g, const Polyline& curve, double h,
                                 std::size_t grid = 20,
                                 std::span<const double> edge_weights = {}) {
  require(h >= 0.0, errc::negative_h, "h must be nonnegative");
  require(!curve.degenerate(), errc::degenerate_curve, "solidness needs distinct endpoints");
  require(dist(curve.front(), curve.back()) > 0.0, errc::degenerate_curve,
          "solidness needs distinct endpoints");
  require_inside(g.domain(), curve);
  const auto weights = edge_weights.empty() ? g.weights(EdgeWeight::QuasiHyperbolic) : edge_weights;
  const CurveSampler sampler(g, curve, grid, weights);
  SolidnessReport rep;
  rep.h = h;
  for (std::size_t i = 0; i < sampler.size(); ++i) {
    for (std::size_t j = i + 1; j < sampler.size(); ++j) {
      const double kij = sampler.k(i, j);
      if (kij <= 0.0) continue;
      const double ratio = sampler.coarse_length(i, j, h) / kij;
      ++rep.pairs_tested;
      if (ratio > rep.nu) {
        rep.nu = ratio;
        rep.witness_x = sampler.point(i);
        rep.witness_y = sampler.point(j);
      }
    }
  }
  return rep;
}

struct QuasigeodesicReport {
  bool ok = true;
  double worst_ratio = 0.0;  // max over pairs of l_k / (lambda k + mu)
  Point worst_x, worst_y;
};

// Checks l_k(subarc) <= lambda * k(endpoints) + mu over sampled subarc pairs.
inline QuasigeodesicReport quasigeodesic_check(const QhGraph& g, const Polyline& curve, double lambda,
                                               double mu, std::size_t grid = 20) {
  require(lambda >= 1.0 && mu >= 0.0, errc::invalid_params, "need lambda >= 1, mu >= 0");
  require_inside(g.domain(), curve);
  QuasigeodesicReport rep;
  if (curve.degenerate()) return rep;
  const CurveSampler sampler(g, curve, grid, g.weights(EdgeWeight::QuasiHyperbolic));
  // Quasihyperbolic length prefix at the sample positions.
  std::vector<double> lk_prefix(sampler.size(), 0.0);
  for (std::size_t i = 1; i < sampler.size(); ++i) {
    const Polyline piece = curve.subarc(sampler.arclength(i - 1), sampler.arclength(i));
    lk_prefix[i] = lk_prefix[i - 1] + (piece.degenerate() ? 0.0 : qh_length(g.domain(), piece));
  }
  for (std::size_t i = 0; i < sampler.size(); ++i) {
    for (std::size_t j = i + 1; j < sampler.size(); ++j) {
      const double lk = lk_prefix[j] - lk_prefix[i];
      const double bound = lambda * sampler.k(i, j) + mu;
      const double ratio = bound > 0.0 ? lk / bound : (lk > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_x = sampler.point(i);
        rep.worst_y = sampler.point(j);
      }
    }
  }
  rep.ok = rep.worst_ratio <= 1.0 + 1e-9;
  return rep;
}

}  // namespace qhgeo
