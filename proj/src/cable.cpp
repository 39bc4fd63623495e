#include "windfarm/cable.hpp"

#include <limits>
#include <tuple>

#include "windfarm/error.hpp"

namespace windfarm {

namespace {

using EdgeKey = std::tuple<double, std::size_t, std::size_t>;

EdgeKey edge_key(double length, std::size_t a, std::size_t b) {
  return {length, std::min(a, b), std::max(a, b)};
}

}  // namespace

CableTree minimum_spanning_tree(std::span<const Point> points,
                                std::optional<std::size_t> substation) {
  if (points.empty()) throw DomainError("minimum spanning tree needs at least one point");
  if (substation && *substation >= points.size()) throw DomainError("substation index out of range");

  const std::size_t n = points.size();
  CableTree tree;
  tree.nodes.assign(points.begin(), points.end());
  tree.substation = substation;

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, inf);
  std::vector<std::size_t> parent(n, 0);

  in_tree[0] = true;
  for (std::size_t v = 1; v < n; ++v) {
    best[v] = distance(points[0], points[v]);
    parent[v] = 0;
  }
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (pick == n || edge_key(best[v], parent[v], v) < edge_key(best[pick], parent[pick], pick))
        pick = v;
    }
    in_tree[pick] = true;
    tree.edges.emplace_back(std::min(parent[pick], pick), std::max(parent[pick], pick));
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const double d = distance(points[pick], points[v]);
      if (edge_key(d, pick, v) < edge_key(best[v], parent[v], v)) {
        best[v] = d;
        parent[v] = pick;
      }
    }
  }
  tree.total_length = tree_length(tree);
  return tree;
}

double tree_length(const CableTree& tree) {
  double total = 0.0;
  for (const auto& [a, b] : tree.edges) total += distance(tree.nodes[a], tree.nodes[b]);
  return total;
}

void to_json(nlohmann::json& j, const CableTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& p : tree.nodes) nodes.push_back({p.x, p.y});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : tree.edges) edges.push_back({a, b});
  j = nlohmann::json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)},
                     {"total_length_m", tree.total_length}};
  if (tree.substation) j["substation"] = *tree.substation;
}

}  // namespace windfarm
