#pragma once

#include "qhgeo/query.hpp"

namespace qhgeo {

struct BoundInputs {
  double a = 1.0;   // John constant
  double c = 1.0;   // uniformity constant of the deformed space
  double M = 1.0;   // quasihyperbolic distortion of the identity map
  double a1 = 1.0;  // shape constant (solid arcs)
  double a3 = 1.0;  // shape constant (cone-arc images)

  void validate() const {
    for (double v : {a, c, M, a1, a3})
      require(std::isfinite(v) && v >= 1.0, errc::invalid_params, "bound inputs must be finite and >= 1");
  }
};

// The chained constants, carried in natural-log space throughout: a4 alone is
// on the order of exp(1000) for unit inputs and can never be materialized.
struct BoundChain {
  double ln_a6 = 0.0;
  double ln_a5 = 0.0;
  double ln_a4 = 0.0;
  double ln_ln_b = 0.0;  // b = 4 a4 exp(a4)
};

inline BoundChain cone_bound_chain(const BoundInputs& in) {
  in.validate();
  BoundChain ch;
  ch.ln_a6 = 16.0 * in.c * in.c * in.M * std::log(8.0 * in.a1 * in.a1 * in.a3) + 2.0 * std::log(in.a);
  ch.ln_a5 = 4.0 * in.a * in.a * in.M * ch.ln_a6;
  ch.ln_a4 = 8.0 * in.c * in.c * in.M * ch.ln_a5;
  // ln ln b = ln(a4 + ln a4 + ln 4) = ln a4 + log1p((ln a4 + ln 4) / a4),
  // with the correction term formed in log space so a4 never appears.
  ch.ln_ln_b = ch.ln_a4 + std::log1p(std::exp(std::log(ch.ln_a4 + std::log(4.0)) - ch.ln_a4));
  return ch;
}

struct DyadicDecomposition {
  std::vector<std::size_t> indices;      // vertex indices into the geodesic path
  std::vector<Point> points;             // y_1, ..., y_{m+2}
  std::vector<double> d_boundary;        // d_D at the points
  std::vector<double> gaps;              // graph k between consecutive points
  std::vector<double> subarc_lengths;    // Euclidean lengths of the subarcs
  int m = 0;
};

// Dyadic decomposition of a geodesic half: walking from the first endpoint
// toward the deepest point x0, emit the first vertex where d_D reaches each
// successive doubling of d_D(start), closing with x0 itself. Doubling holds
// within one graph cell of snapping error.
inline DyadicDecomposition dyadic_decompose(const Geodesic& geo) {
  require(geo.path.size() >= 2 && geo.length_w > 0.0, errc::degenerate_curve,
          "dyadic decomposition needs a nondegenerate geodesic");
  DyadicDecomposition out;
  const auto& depth = geo.d_boundary;
  std::size_t deepest = 0;
  for (std::size_t i = 1; i < depth.size(); ++i)
    if (depth[i] > depth[deepest]) deepest = i;

  const double d1 = depth[0];
  int m = 0;
  while (std::ldexp(d1, m + 1) <= depth[deepest] * (1.0 + 1e-12)) ++m;
  out.m = m;

  out.indices.push_back(0);
  std::size_t cursor = 0;
  for (int i = 2; i <= m + 1; ++i) {
    const double threshold = std::ldexp(d1, i - 1);
    while (cursor < deepest && depth[cursor] < threshold) ++cursor;
    out.indices.push_back(cursor);
  }
  if (out.indices.back() != deepest) out.indices.push_back(deepest);
  if (out.indices.size() == 1) out.indices.push_back(deepest);

  const auto& cum = geo.path.cumulative_length();
  for (std::size_t j = 0; j < out.indices.size(); ++j) {
    const std::size_t idx = out.indices[j];
    out.points.push_back(geo.path.points()[idx]);
    out.d_boundary.push_back(depth[idx]);
    if (j > 0) {
      out.gaps.push_back(geo.w_prefix[idx] - geo.w_prefix[out.indices[j - 1]]);
      out.subarc_lengths.push_back(cum[idx] - cum[out.indices[j - 1]]);
    }
  }
  return out;
}

struct ConeFromGaps {
  double gap_bound = 0.0;
  double implied_cone_constant = 0.0;  // 4 G exp(G)
  int subarc_violations = 0;           // subarcs with length > 2 G d_D(y_i) beyond slack
  double max_subarc_ratio = 0.0;       // max of length / (2 G d_D(y_i))
};

// The telescoping bound: with every decomposition gap at most G, each subarc
// has length at most 2 G d_D(y_i) and the half-geodesic is a 4 G exp(G)-cone
// arc from its start. Errors out when G is below an observed gap.
inline ConeFromGaps cone_from_gaps(const DyadicDecomposition& decomp, double gap_bound,
                                   double rel_tol = 0.05) {
  double max_gap = 0.0;
  for (double gap : decomp.gaps) max_gap = std::max(max_gap, gap);
  require(gap_bound >= max_gap - 1e-12 * std::max(1.0, max_gap), errc::gap_bound_too_small,
          "gap bound below an observed decomposition gap");
  ConeFromGaps out;
  out.gap_bound = gap_bound;
  out.implied_cone_constant =
      gap_bound < 500.0 ? 4.0 * gap_bound * std::exp(gap_bound) : std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < decomp.points.size(); ++j) {
    const double cap = 2.0 * gap_bound * decomp.d_boundary[j];
    if (cap <= 0.0) continue;
    const double ratio = decomp.subarc_lengths[j] / cap;
    out.max_subarc_ratio = std::max(out.max_subarc_ratio, ratio);
    if (ratio > 1.0 + rel_tol) ++out.subarc_violations;
  }
  return out;
}

}  // namespace qhgeo
