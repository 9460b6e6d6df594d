#pragma once

#include <cstddef>
#include <vector>

#include "berkline/point.hpp"

namespace berkline::spectral {

using line::BerkPoint;
using padic::PrimeContext;

struct Disk {
  Rational center;
  Rational radius_exp;
  bool irrational = false;
};

struct Edge {
  std::size_t u = 0;  // lower endpoint
  std::size_t w = 0;  // upper endpoint
  Rational length;
};

// A finite graph of discs. Vertex 0 is the Gauss point; vertices are sorted
// by radius exponent descending and then by insertion, so every edge joins a
// vertex to its parent toward the Gauss point.
class FiniteTree {
 public:
  FiniteTree(PrimeContext ctx, std::vector<BerkPoint> vertices, std::vector<Edge> edges);

  const PrimeContext& context() const noexcept { return ctx_; }
  const std::vector<BerkPoint>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  // Neighbors of v in increasing index order.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  // Length of the edge {u, w}; throws std::out_of_range if not adjacent.
  const Rational& edge_length(std::size_t u, std::size_t w) const;
  bool has_edge(std::size_t u, std::size_t w) const;
  // Index of a vertex equal to x as a disk, or size() when absent.
  std::size_t find(const BerkPoint& x) const;
  std::size_t size() const noexcept { return vertices_.size(); }

 private:
  PrimeContext ctx_;
  std::vector<BerkPoint> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::vector<std::size_t>> edge_of_;  // parallel to adj_
};

// Gamma_S: union of the segments [zeta_{a_i,r_i}, Gauss].
// Throws EmptyInput, DiskOutsideUnit (including D(0,1) itself).
FiniteTree build_graph_of_discs(const PrimeContext& ctx, const std::vector<Disk>& disks);

// First point of the tree met by the path from x toward the Gauss point.
BerkPoint retract(const FiniteTree& tree, const BerkPoint& x);

}  // namespace berkline::spectral
