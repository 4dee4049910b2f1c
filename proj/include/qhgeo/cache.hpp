#pragma once

#include <cstring>
#include <filesystem>

#include "qhgeo/graph.hpp"
#include "qhgeo/version.hpp"

namespace qhgeo {

// Binary graph cache keyed by (library version, domain hash, sampling-params
// key). Layout: magic, key string, counts, raw node and edge records.
namespace detail {

inline constexpr char kCacheMagic[8] = {'Q', 'H', 'G', 'R', 'P', 'H', '0', '1'};

inline std::string cache_key(const Domain& domain, const SamplingParams& params) {
  return std::string(kVersion) + "_" + domain.hash() + "_" + params.key_string();
}

}  // namespace detail

inline std::string graph_cache_path(const std::string& cache_dir, const Domain& domain,
                                    const SamplingParams& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : detail::cache_key(domain, params)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return (std::filesystem::path(cache_dir) / ("qhgraph_" + os.str() + ".bin")).string();
}

inline void save_graph_cache(const QhGraph& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), errc::io_error, "cannot write graph cache " + path);
  f.write(detail::kCacheMagic, sizeof detail::kCacheMagic);
  const std::string key = detail::cache_key(g.domain(), g.params());
  const std::uint64_t key_len = key.size();
  f.write(reinterpret_cast<const char*>(&key_len), sizeof key_len);
  f.write(key.data(), static_cast<std::streamsize>(key.size()));
  const std::uint64_t n_nodes = g.nodes().size(), n_edges = g.edges().size();
  const std::uint8_t dropped = g.dropped_components() ? 1 : 0;
  f.write(reinterpret_cast<const char*>(&n_nodes), sizeof n_nodes);
  f.write(reinterpret_cast<const char*>(&n_edges), sizeof n_edges);
  f.write(reinterpret_cast<const char*>(&dropped), sizeof dropped);
  for (const GraphNode& nd : g.nodes()) {
    f.write(reinterpret_cast<const char*>(&nd.p.x), sizeof nd.p.x);
    f.write(reinterpret_cast<const char*>(&nd.p.y), sizeof nd.p.y);
    f.write(reinterpret_cast<const char*>(&nd.d_boundary), sizeof nd.d_boundary);
    const std::int32_t lvl = nd.level;
    f.write(reinterpret_cast<const char*>(&lvl), sizeof lvl);
  }
  for (const GraphEdge& e : g.edges()) {
    f.write(reinterpret_cast<const char*>(&e.u), sizeof e.u);
    f.write(reinterpret_cast<const char*>(&e.v), sizeof e.v);
    f.write(reinterpret_cast<const char*>(&e.w_qh), sizeof e.w_qh);
    f.write(reinterpret_cast<const char*>(&e.w_euclid), sizeof e.w_euclid);
  }
  require(f.good(), errc::io_error, "short write to graph cache " + path);
}

inline std::optional<QhGraph> load_graph_cache(std::shared_ptr<const Domain> domain,
                                               const SamplingParams& params, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f.good()) return std::nullopt;
  char magic[sizeof detail::kCacheMagic];
  f.read(magic, sizeof magic);
  if (!f.good() || std::memcmp(magic, detail::kCacheMagic, sizeof magic) != 0) return std::nullopt;
  std::uint64_t key_len = 0;
  f.read(reinterpret_cast<char*>(&key_len), sizeof key_len);
  if (!f.good() || key_len > 4096) return std::nullopt;
  std::string key(key_len, '\0');
  f.read(key.data(), static_cast<std::streamsize>(key_len));
  if (!f.good() || key != detail::cache_key(*domain, params)) return std::nullopt;
  std::uint64_t n_nodes = 0, n_edges = 0;
  std::uint8_t dropped = 0;
  f.read(reinterpret_cast<char*>(&n_nodes), sizeof n_nodes);
  f.read(reinterpret_cast<char*>(&n_edges), sizeof n_edges);
  f.read(reinterpret_cast<char*>(&dropped), sizeof dropped);
  if (!f.good()) return std::nullopt;
  std::vector<GraphNode> nodes(n_nodes);
  for (GraphNode& nd : nodes) {
    std::int32_t lvl = 0;
    f.read(reinterpret_cast<char*>(&nd.p.x), sizeof nd.p.x);
    f.read(reinterpret_cast<char*>(&nd.p.y), sizeof nd.p.y);
    f.read(reinterpret_cast<char*>(&nd.d_boundary), sizeof nd.d_boundary);
    f.read(reinterpret_cast<char*>(&lvl), sizeof lvl);
    nd.level = lvl;
  }
  std::vector<GraphEdge> edges(n_edges);
  for (GraphEdge& e : edges) {
    f.read(reinterpret_cast<char*>(&e.u), sizeof e.u);
    f.read(reinterpret_cast<char*>(&e.v), sizeof e.v);
    f.read(reinterpret_cast<char*>(&e.w_qh), sizeof e.w_qh);
    f.read(reinterpret_cast<char*>(&e.w_euclid), sizeof e.w_euclid);
  }
  if (!f.good()) return std::nullopt;
  return QhGraph(std::move(domain), params, std::move(nodes), std::move(edges), dropped != 0);
}

// Build with an optional cache directory: loads a hit, writes back a miss.
inline QhGraph build_graph_cached(std::shared_ptr<const Domain> domain, const SamplingParams& params,
                                  const std::string& cache_dir) {
  if (cache_dir.empty()) return build_graph(std::move(domain), params);
  std::filesystem::create_directories(cache_dir);
  const std::string path = graph_cache_path(cache_dir, *domain, params);
  if (auto cached = load_graph_cache(domain, params, path)) return std::move(*cached);
  QhGraph g = build_graph(domain, params);
  save_graph_cache(g, path);
  return g;
}

}  // namespace qhgeo
