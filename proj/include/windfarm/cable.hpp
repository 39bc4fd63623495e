#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "windfarm/geometry.hpp"

namespace windfarm {

/// Collector network: a spanning tree over turbines and the substation.
struct CableTree {
  std::vector<Point> nodes;
  std::optional<std::size_t> substation;  // index into nodes, if tagged
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (smaller, larger) index
  double total_length = 0.0;  // m
};

/// Euclidean minimum spanning tree over the complete graph (dense Prim).
/// Ties resolve by (length, smaller index, larger index). Coincident points
/// are joined by zero-length edges. Throws DomainError on empty input.
CableTree minimum_spanning_tree(std::span<const Point> points,
                                std::optional<std::size_t> substation = std::nullopt);

/// Sum of edge lengths recomputed from node coordinates.
double tree_length(const CableTree& tree);

void to_json(nlohmann::json& j, const CableTree& tree);

}  // namespace windfarm
