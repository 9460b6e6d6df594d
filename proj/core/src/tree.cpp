#include "berkline/tree.hpp"

#include <algorithm>
#include <numeric>

#include "berkline/errors.hpp"

namespace berkline::spectral {

FiniteTree::FiniteTree(PrimeContext ctx, std::vector<BerkPoint> vertices, std::vector<Edge> edges)
    : ctx_(ctx), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  adj_.assign(vertices_.size(), {});
  edge_of_.assign(vertices_.size(), {});
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tmp(vertices_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    tmp[edges_[i].u].push_back({edges_[i].w, i});
    tmp[edges_[i].w].push_back({edges_[i].u, i});
  }
  for (std::size_t v = 0; v < tmp.size(); ++v) {
    std::sort(tmp[v].begin(), tmp[v].end());
    for (auto [n, e] : tmp[v]) {
      adj_[v].push_back(n);
      edge_of_[v].push_back(e);
    }
  }
}

const Rational& FiniteTree::edge_length(std::size_t u, std::size_t w) const {
  const auto& a = adj_.at(u);
  auto it = std::lower_bound(a.begin(), a.end(), w);
  if (it == a.end() || *it != w) throw std::out_of_range("not an edge");
  return edges_[edge_of_[u][static_cast<std::size_t>(it - a.begin())]].length;
}

bool FiniteTree::has_edge(std::size_t u, std::size_t w) const {
  if (u >= adj_.size()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), w);
}

std::size_t FiniteTree::find(const BerkPoint& x) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (line::same_point(ctx_, vertices_[i], x)) return i;
  return vertices_.size();
}

FiniteTree build_graph_of_discs(const PrimeContext& ctx, const std::vector<Disk>& disks) {
  if (disks.empty()) throw EmptyInput("graph of discs needs at least one disk");
  const BerkPoint gauss = BerkPoint::gauss();
  std::vector<BerkPoint> leaves;
  for (const auto& d : disks) {
    BerkPoint x(d.center, padic::ExtRational(d.radius_exp), d.irrational);
    if (!line::leq(ctx, x, gauss) || line::same_point(ctx, x, gauss))
      throw DiskOutsideUnit(x.str() + " is not a proper subdisk of D(0,1)");
    leaves.push_back(std::move(x));
  }

  std::vector<BerkPoint> verts{gauss};
  auto add = [&](const BerkPoint& x) {
    for (const auto& v : verts)
      if (line::same_point(ctx, v, x)) return;
    verts.push_back(x);
  };
  for (const auto& x : leaves) add(x);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j) add(line::join(ctx, leaves[i], leaves[j]));

  // Gauss first, then smaller disks later: parents precede children.
  std::stable_sort(verts.begin() + 1, verts.end(),
                   [](const BerkPoint& a, const BerkPoint& b) { return a.radius_exp() < b.radius_exp(); });

  // Parent of v = the smallest strictly larger vertex containing v.
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < verts.size(); ++v) {
    std::size_t parent = 0;
    for (std::size_t u = 0; u < v; ++u) {
      if (line::same_point(ctx, verts[u], verts[v]) || !line::leq(ctx, verts[v], verts[u])) continue;
      if (line::leq(ctx, verts[u], verts[parent])) parent = u;
    }
    edges.push_back({v, parent, line::big_metric(ctx, verts[v], verts[parent])});
  }
  return FiniteTree(ctx, std::move(verts), std::move(edges));
}

BerkPoint retract(const FiniteTree& tree, const BerkPoint& x) {
  const auto& ctx = tree.context();
  const BerkPoint gauss = BerkPoint::gauss();
  if (!line::leq(ctx, x, gauss)) return gauss;
  // Smallest radius s >= r_x with some vertex below zeta_{a,s}.
  const BerkPoint* best = nullptr;
  padic::Magnitude best_s = padic::Magnitude::one();
  for (const auto& v : tree.vertices()) {
    padic::Magnitude s = max(v.radius(), padic::abs_p(ctx, x.center() - v.center()));
    if (!best || s < best_s) {
      best = &v;
      best_s = s;
    }
  }
  if (x.radius() >= best_s) return x;
  bool flag = best->radius() == best_s && best->irrational();
  return BerkPoint(x.center(), best_s.exponent(), flag);
}

}  // namespace berkline::spectral
