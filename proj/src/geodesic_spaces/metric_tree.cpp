#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "frechet/errors.hpp"
#include "frechet/space.hpp"

namespace frechet {

MetricTree::MetricTree(TreeStructure structure) : structure_(std::move(structure)) {
  const std::size_t nv = structure_.vertices.size();
  if (nv == 0) throw InvalidInput("tree must have at least one vertex");
  if (structure_.edges.size() != nv - 1)
    throw InvalidInput("tree with " + std::to_string(nv) + " vertices needs exactly " + std::to_string(nv - 1) +
                       " edges, got " + std::to_string(structure_.edges.size()));

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nv; ++i) {
    if (!index.emplace(structure_.vertices[i], i).second)
      throw InvalidInput("duplicate tree vertex id '" + structure_.vertices[i] + "'");
  }

  adjacency_.resize(nv);
  for (const auto& e : structure_.edges) {
    auto iu = index.find(e.u);
    auto iv = index.find(e.v);
    if (iu == index.end() || iv == index.end())
      throw InvalidInput("tree edge references unknown vertex '" + (iu == index.end() ? e.u : e.v) + "'");
    if (iu->second == iv->second) throw InvalidInput("tree edge is a self-loop at '" + e.u + "'");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw InvalidInput("tree edge " + e.u + "-" + e.v + " must have positive finite length");
    std::size_t lo = std::min(iu->second, iv->second);
    std::size_t hi = std::max(iu->second, iv->second);
    std::size_t id = edges_.size();
    edges_.push_back({lo, hi, e.length});
    adjacency_[lo].emplace_back(hi, id);
    adjacency_[hi].emplace_back(lo, id);
    total_length_ += e.length;
  }

  dist_.assign(nv * nv, -1.0);
  hop_.assign(nv * nv, npos);
  std::vector<std::size_t> stack;
  for (std::size_t src = 0; src < nv; ++src) {
    double* row = &dist_[src * nv];
    std::size_t* hops = &hop_[src * nv];
    row[src] = 0.0;
    hops[src] = src;
    stack.assign(1, src);
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (auto [w, e] : adjacency_[u]) {
        if (row[w] >= 0.0) continue;
        row[w] = row[u] + edges_[e].length;
        hops[w] = (u == src) ? w : hops[u];
        stack.push_back(w);
      }
    }
    for (std::size_t v = 0; v < nv; ++v) {
      if (row[v] < 0.0) throw InvalidInput("tree is not connected: '" + structure_.vertices[v] + "' is unreachable");
    }
  }
}

std::optional<std::size_t> MetricTree::find_vertex(std::string_view id) const {
  for (std::size_t i = 0; i < structure_.vertices.size(); ++i) {
    if (structure_.vertices[i] == id) return i;
  }
  return std::nullopt;
}

std::size_t MetricTree::edge_between(std::size_t a, std::size_t b) const {
  for (auto [w, e] : adjacency_.at(a)) {
    if (w == b) return e;
  }
  return npos;
}

}  // namespace frechet
