#pragma once

#include <cstdint>
#include <memory>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "qhgeo/integrate.hpp"

namespace qhgeo {

struct SamplingParams {
  double base_spacing = 1.0 / 64.0;     // fraction of the domain diameter
  int boundary_refinement_levels = 4;   // extra dyadic levels toward the boundary
  double edge_radius_factor = 2.5;      // link radius in local cell sizes
  std::uint64_t seed = 1;

  void validate() const {
    require(base_spacing > 0.0 && base_spacing < 1.0, errc::invalid_params, "base_spacing must be in (0,1)");
    require(boundary_refinement_levels >= 0 && boundary_refinement_levels <= 8, errc::invalid_params,
            "boundary_refinement_levels must be in [0,8]");
    require(edge_radius_factor >= 1.0, errc::invalid_params, "edge_radius_factor must be >= 1");
  }

  std::string key_string() const {
    std::ostringstream os;
    os.precision(17);
    os << base_spacing << "|" << boundary_refinement_levels << "|" << edge_radius_factor;
    return os.str();
  }
};

struct GraphNode {
  Point p;
  double d_boundary = 0.0;
  int level = 0;
};

struct GraphEdge {
  std::int32_t u = 0, v = 0;
  double w_qh = 0.0;      // quasihyperbolic length of the straight segment
  double w_euclid = 0.0;  // |u - v|
};

enum class EdgeWeight { QuasiHyperbolic, Euclid };

// Discrete model of (D, k): adaptively sampled nodes with cached boundary
// distances, edges weighted by the quasihyperbolic length of their segments.
// Immutable once built; all queries are const and deterministic.
class QhGraph {
 public:
  QhGraph(std::shared_ptr<const Domain> domain, SamplingParams params, std::vector<GraphNode> nodes,
          std::vector<GraphEdge> edges, bool dropped_components)
      : domain_(std::move(domain)),
        params_(params),
        nodes_(std::move(nodes)),
        edges_(std::move(edges)),
        dropped_components_(dropped_components) {
    base_cell_ = params_.base_spacing * domain_->diameter();
    build_csr();
    build_snap_grid();
    w_qh_.reserve(edges_.size());
    w_euclid_.reserve(edges_.size());
    for (const GraphEdge& e : edges_) {
      w_qh_.push_back(e.w_qh);
      w_euclid_.push_back(e.w_euclid);
    }
  }

  const Domain& domain() const { return *domain_; }
  std::shared_ptr<const Domain> domain_ptr() const { return domain_; }
  const SamplingParams& params() const { return params_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  bool dropped_components() const { return dropped_components_; }

  std::span<const double> weights(EdgeWeight w) const {
    return w == EdgeWeight::QuasiHyperbolic ? std::span<const double>(w_qh_) : std::span<const double>(w_euclid_);
  }

  double base_cell() const { return base_cell_; }
  int max_level() const { return params_.boundary_refinement_levels; }
  double cell_size(int level) const { return base_cell_ / static_cast<double>(1 << level); }

  // Coarsest refinement level whose cell is within the local target
  // min(base cell, d_D/4). The relative guard keeps exact lattice ties from
  // flipping under ulp noise, so similar domains classify identically.
  int level_for_distance(double d_boundary) const {
    const double target = std::min(base_cell_, d_boundary / 4.0) * (1.0 + 1e-9);
    int lvl = 0;
    while (lvl < max_level() && cell_size(lvl) > target) ++lvl;
    return lvl;
  }

  double local_cell(Point p) const { return cell_size(level_for_distance(domain_->boundary_distance(p))); }

  // Neighbors as (node index, edge index) pairs, sorted by node index.
  std::span<const std::pair<std::int32_t, std::int32_t>> neighbors(std::int32_t u) const {
    return {adj_.data() + adj_offset_[u], adj_.data() + adj_offset_[u + 1]};
  }

  std::int32_t nearest_node(Point p) const {
    std::int32_t best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    const auto [cx, cy] = grid_key(p);
    for (int ring = 0;; ++ring) {
      bool any_cell = false;
      for (int iy = cy - ring; iy <= cy + ring; ++iy) {
        for (int ix = cx - ring; ix <= cx + ring; ++ix) {
          if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring) continue;
          const auto it = snap_grid_.find(pack(ix, iy));
          if (it == snap_grid_.end()) continue;
          any_cell = true;
          for (std::int32_t v : it->second) {
            const double d = dist(p, nodes_[v].p);
            if (d < best_d || (d == best_d && v < best)) {
              best_d = d;
              best = v;
            }
          }
        }
      }
      // One extra ring after the first hit guards against diagonal misses.
      if (best >= 0 && static_cast<double>(ring) * snap_cell_ > best_d + snap_cell_) return best;
      if (!any_cell && ring > grid_span_) return best;
      (void)any_cell;
    }
  }

  std::vector<std::int32_t> nodes_within(Point p, double radius) const {
    std::vector<std::int32_t> out;
    const int r = static_cast<int>(radius / snap_cell_) + 1;
    const auto [cx, cy] = grid_key(p);
    for (int iy = cy - r; iy <= cy + r; ++iy)
      for (int ix = cx - r; ix <= cx + r; ++ix) {
        const auto it = snap_grid_.find(pack(ix, iy));
        if (it == snap_grid_.end()) continue;
        for (std::int32_t v : it->second)
          if (dist(p, nodes_[v].p) <= radius) out.push_back(v);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void build_csr() {
    const std::size_t n = nodes_.size();
    adj_offset_.assign(n + 1, 0);
    for (const GraphEdge& e : edges_) {
      ++adj_offset_[static_cast<std::size_t>(e.u) + 1];
      ++adj_offset_[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t i = 0; i < n; ++i) adj_offset_[i + 1] += adj_offset_[i];
    adj_.resize(adj_offset_[n]);
    std::vector<std::int32_t> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
      const GraphEdge& e = edges_[ei];
      adj_[cursor[e.u]++] = {e.v, static_cast<std::int32_t>(ei)};
      adj_[cursor[e.v]++] = {e.u, static_cast<std::int32_t>(ei)};
    }
    for (std::size_t u = 0; u < n; ++u)
      std::sort(adj_.begin() + adj_offset_[u], adj_.begin() + adj_offset_[u + 1]);
  }

  std::pair<int, int> grid_key(Point p) const {
    return {static_cast<int>(std::floor((p.x - grid_origin_.x) / snap_cell_)),
            static_cast<int>(std::floor((p.y - grid_origin_.y) / snap_cell_))};
  }
  static std::int64_t pack(int ix, int iy) {
    return (static_cast<std::int64_t>(ix) << 32) ^ (static_cast<std::int64_t>(iy) & 0xffffffffLL);
  }

  void build_snap_grid() {
    snap_cell_ = cell_size(max_level());
    grid_origin_ = {domain_->bbox().xmin, domain_->bbox().ymin};
    grid_span_ = static_cast<int>((domain_->bbox().xmax - domain_->bbox().xmin) / snap_cell_) + 2;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto [ix, iy] = grid_key(nodes_[i].p);
      snap_grid_[pack(ix, iy)].push_back(static_cast<std::int32_t>(i));
    }
  }

  std::shared_ptr<const Domain> domain_;
  SamplingParams params_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<std::int32_t> adj_offset_;
  std::vector<std::pair<std::int32_t, std::int32_t>> adj_;
  std::vector<double> w_qh_, w_euclid_;
  bool dropped_components_ = false;
  double base_cell_ = 0.0;
  double snap_cell_ = 0.0;
  Point grid_origin_;
  int grid_span_ = 0;
  std::unordered_map<std::int64_t, std::vector<std::int32_t>> snap_grid_;
};

// Hierarchical-grid sampling: a node of dyadic level i exists wherever the
// local target cell min(base, d_D/4) asks for level >= i. Edges link nodes of
// neighboring levels within edge_radius_factor local cells whose segments are
// contained. Keeps the largest component if sampling disconnects.
inline QhGraph build_graph(std::shared_ptr<const Domain> domain, SamplingParams params) {
  params.validate();
  const Domain& dom = *domain;
  const double h0 = params.base_spacing * dom.diameter();
  const int L = params.boundary_refinement_levels;
  const Box& bb = dom.bbox();

  auto cell_of = [&](int lvl) { return h0 / static_cast<double>(1 << lvl); };
  // Tie-guarded level classification; must mirror QhGraph::level_for_distance.
  auto level_of = [&](double d) {
    const double target = std::min(h0, d / 4.0) * (1.0 + 1e-9);
    int lvl = 0;
    while (lvl < L && cell_of(lvl) > target) ++lvl;
    return lvl;
  };

  std::vector<GraphNode> nodes;
  for (int i = 0; i <= L; ++i) {
    const double h = cell_of(i);
    const int nx = static_cast<int>(std::floor((bb.xmax - bb.xmin) / h)) + 1;
    const int ny = static_cast<int>(std::floor((bb.ymax - bb.ymin) / h)) + 1;
    for (int iy = 0; iy <= ny; ++iy) {
      for (int ix = 0; ix <= nx; ++ix) {
        if (i > 0 && ix % 2 == 0 && iy % 2 == 0) continue;  // seen at a coarser sweep
        const Point p{bb.xmin + ix * h, bb.ymin + iy * h};
        const double d = dom.boundary_tree().distance(p);
        if (!(d > 0.0)) continue;
        const int lvl = level_of(d);
        if (lvl < i) continue;
        if (!dom.contains(p)) continue;
        nodes.push_back({p, d, lvl});
      }
    }
  }
  require(!nodes.empty(), errc::empty_graph, "domain " + dom.name() + " too thin for base_spacing");

  std::sort(nodes.begin(), nodes.end(), [](const GraphNode& a, const GraphNode& b) {
    return a.p.y < b.p.y || (a.p.y == b.p.y && a.p.x < b.p.x);
  });

  // Per-level spatial hashes for neighbor search.
  struct LevelGrid {
    double cell = 1.0;
    std::unordered_map<std::int64_t, std::vector<std::int32_t>> buckets;
  };
  std::vector<LevelGrid> grids(static_cast<std::size_t>(L) + 1);
  auto key_of = [&](Point p, double cell) {
    return (static_cast<std::int64_t>(std::floor((p.x - bb.xmin) / cell)) << 32) ^
           (static_cast<std::int64_t>(std::floor((p.y - bb.ymin) / cell)) & 0xffffffffLL);
  };
  for (int lvl = 0; lvl <= L; ++lvl) grids[lvl].cell = cell_of(lvl);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    grids[nodes[i].level].buckets[key_of(nodes[i].p, grids[nodes[i].level].cell)].push_back(
        static_cast<std::int32_t>(i));

  std::vector<GraphEdge> edges;
  std::vector<std::int32_t> cand;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const GraphNode& nu = nodes[u];
    for (int lv = std::max(0, nu.level - 1); lv <= std::min(L, nu.level + 1); ++lv) {
      const double radius = params.edge_radius_factor * std::max(cell_of(nu.level), cell_of(lv));
      const LevelGrid& g = grids[lv];
      const int span = static_cast<int>(radius / g.cell) + 1;
      const int cx = static_cast<int>(std::floor((nu.p.x - bb.xmin) / g.cell));
      const int cy = static_cast<int>(std::floor((nu.p.y - bb.ymin) / g.cell));
      cand.clear();
      for (int iy = cy - span; iy <= cy + span; ++iy)
        for (int ix = cx - span; ix <= cx + span; ++ix) {
          const auto it = g.buckets.find((static_cast<std::int64_t>(ix) << 32) ^
                                         (static_cast<std::int64_t>(iy) & 0xffffffffLL));
          if (it == g.buckets.end()) continue;
          for (std::int32_t v : it->second)
            if (v > static_cast<std::int32_t>(u)) cand.push_back(v);
        }
      std::sort(cand.begin(), cand.end());
      for (std::int32_t v : cand) {
        const GraphNode& nv = nodes[v];
        const double d = dist(nu.p, nv.p);
        if (d > radius * (1.0 + 1e-9) || d <= 0.0) continue;
        if (!dom.segment_inside(nu.p, nv.p)) continue;
        edges.push_back({static_cast<std::int32_t>(u), v, qh_segment_length(dom, nu.p, nv.p), d});
      }
    }
  }

  // Largest connected component.
  std::vector<std::int32_t> comp(nodes.size(), -1);
  std::vector<std::vector<std::int32_t>> adj_tmp(nodes.size());
  for (const GraphEdge& e : edges) {
    adj_tmp[e.u].push_back(e.v);
    adj_tmp[e.v].push_back(e.u);
  }
  std::int32_t n_comp = 0;
  std::vector<std::int32_t> stack, comp_size;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (comp[s] >= 0) continue;
    stack.assign(1, static_cast<std::int32_t>(s));
    comp[s] = n_comp;
    std::int32_t size = 0;
    while (!stack.empty()) {
      const std::int32_t u = stack.back();
      stack.pop_back();
      ++size;
      for (std::int32_t v : adj_tmp[u])
        if (comp[v] < 0) {
          comp[v] = n_comp;
          stack.push_back(v);
        }
    }
    comp_size.push_back(size);
    ++n_comp;
  }
  std::int32_t keep = 0;
  for (std::int32_t c = 1; c < n_comp; ++c)
    if (comp_size[c] > comp_size[keep]) keep = c;
  const bool dropped = n_comp > 1;

  if (dropped) {
    std::vector<std::int32_t> remap(nodes.size(), -1);
    std::vector<GraphNode> kept;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (comp[i] == keep) {
        remap[i] = static_cast<std::int32_t>(kept.size());
        kept.push_back(nodes[i]);
      }
    std::vector<GraphEdge> kept_edges;
    for (const GraphEdge& e : edges)
      if (remap[e.u] >= 0 && remap[e.v] >= 0)
        kept_edges.push_back({remap[e.u], remap[e.v], e.w_qh, e.w_euclid});
    nodes.swap(kept);
    edges.swap(kept_edges);
  }
  require(!nodes.empty(), errc::empty_graph, "no connected sampling of " + dom.name());

  return QhGraph(std::move(domain), params, std::move(nodes), std::move(edges), dropped);
}

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

struct SsspResult {
  std::vector<double> dist;
  std::vector<std::int32_t> parent;       // >=0 node, -2-k for seed ordinal k, -1 unreachable
  std::vector<std::int32_t> parent_edge;  // edge index into graph edges, -1 at seeds
};

// Dijkstra over the graph topology with an arbitrary per-edge weight array.
// Seeds carry initial offsets (multi-source with biases). Deterministic: ties
// resolve toward the smaller node index and smaller parent.
inline SsspResult shortest_paths(const QhGraph& g, std::span<const std::pair<std::int32_t, double>> seeds,
                                 std::span<const double> w, std::int32_t stop_node = -1,
                                 double stop_bound = std::numeric_limits<double>::infinity()) {
  const std::size_t n = g.nodes().size();
  SsspResult res;
  res.dist.assign(n, std::numeric_limits<double>::infinity());
  res.parent.assign(n, -1);
  res.parent_edge.assign(n, -1);

  using Item = std::pair<double, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const auto [node, offset] = seeds[k];
    if (offset < res.dist[node]) {
      res.dist[node] = offset;
      res.parent[node] = -2 - static_cast<std::int32_t>(k);
      pq.push({offset, node});
    }
  }
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d != res.dist[u]) continue;
    if (d > stop_bound) break;
    if (u == stop_node) break;
    for (const auto& [v, ei] : g.neighbors(u)) {
      const double nd = d + w[ei];
      if (nd < res.dist[v]) {
        res.dist[v] = nd;
        res.parent[v] = u;
        res.parent_edge[v] = ei;
        pq.push({nd, v});
      } else if (nd == res.dist[v] && res.parent[v] >= 0 && u < res.parent[v]) {
        res.parent[v] = u;
        res.parent_edge[v] = ei;
      }
    }
  }
  return res;
}

inline SsspResult sssp_from_node(const QhGraph& g, std::int32_t source, EdgeWeight wsel,
                                 std::int32_t stop_node = -1) {
  const std::pair<std::int32_t, double> seed{source, 0.0};
  return shortest_paths(g, std::span(&seed, 1), g.weights(wsel), stop_node);
}

inline SsspResult sssp_from_nodes(const QhGraph& g, std::span<const std::int32_t> sources, EdgeWeight wsel) {
  std::vector<std::pair<std::int32_t, double>> seeds;
  seeds.reserve(sources.size());
  for (std::int32_t s : sources) seeds.push_back({s, 0.0});
  return shortest_paths(g, seeds, g.weights(wsel));
}

// Node chain from a seed to `target`, seed end first.
inline std::vector<std::int32_t> trace_path(const SsspResult& sp, std::int32_t target) {
  std::vector<std::int32_t> chain;
  for (std::int32_t v = target; v >= 0; v = sp.parent[v]) {
    chain.push_back(v);
    if (sp.parent[v] < 0) break;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Pure graph metric between nodes.
inline double node_distance(const QhGraph& g, std::int32_t u, std::int32_t v,
                            EdgeWeight wsel = EdgeWeight::QuasiHyperbolic) {
  if (u == v) return 0.0;
  const std::int32_t s = std::min(u, v), t = std::max(u, v);
  const auto sp = sssp_from_node(g, s, wsel, t);
  require(std::isfinite(sp.dist[t]), errc::disconnected_pair, "nodes in different components");
  return sp.dist[t];
}

// Node with the deepest interior position; the default base point.
inline std::int32_t max_depth_node(const QhGraph& g) {
  std::int32_t best = 0;
  for (std::size_t i = 1; i < g.nodes().size(); ++i)
    if (g.nodes()[i].d_boundary > g.nodes()[best].d_boundary) best = static_cast<std::int32_t>(i);
  return best;
}

// Dense distance matrix over a node subset.
inline std::vector<std::vector<double>> k_matrix(const QhGraph& g, std::span<const std::int32_t> ids,
                                                 EdgeWeight wsel = EdgeWeight::QuasiHyperbolic) {
  std::vector<std::vector<double>> m(ids.size(), std::vector<double>(ids.size(), 0.0));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto sp = sssp_from_node(g, ids[i], wsel);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      require(std::isfinite(sp.dist[ids[j]]), errc::disconnected_pair, "matrix nodes in different components");
      m[i][j] = sp.dist[ids[j]];
    }
  }
  // Exact symmetry for downstream validation.
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) m[j][i] = m[i][j];
  return m;
}

}  // namespace qhgeo
