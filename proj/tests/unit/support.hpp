#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "graphaug/graph.hpp"
#include "graphaug/random.hpp"

namespace graphaug::testing {

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph::from_edges(n, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId a = 0; a + 1 < n; ++a) e.emplace_back(a, a + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId a = 0; a < n; ++a) e.emplace_back(a, static_cast<NodeId>((a + 1) % n));
  return Graph::from_edges(n, e);
}

// Hub 0, leaves 1..leaves.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId a = 1; a <= leaves; ++a) e.emplace_back(0, a);
  return Graph::from_edges(leaves + 1, e);
}

// Hub 0 joined to the cycle 1..rim.
inline Graph wheel(std::size_t rim) {
  std::vector<Edge> e;
  for (NodeId a = 1; a <= rim; ++a) {
    e.emplace_back(0, a);
    e.emplace_back(a, static_cast<NodeId>(a % rim + 1));
  }
  return Graph::from_edges(rim + 1, e);
}

inline Graph petersen() {
  std::vector<Edge> e;
  for (NodeId i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph::from_edges(10, e);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e(a.edges().begin(), a.edges().end());
  const auto shift = static_cast<NodeId>(a.node_count());
  for (const Edge& x : b.edges()) e.emplace_back(x.u + shift, x.v + shift);
  return Graph::from_edges(a.node_count() + b.node_count(), e);
}

// G(n, p) by independent coins; used only to feed property tests.
inline Graph random_graph(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (coin(rng)) e.emplace_back(a, b);
  return Graph::from_edges(n, e);
}

// Dense adjacency oracle built straight from the edge list.
inline std::vector<std::vector<char>> adjacency_matrix(const Graph& g) {
  std::vector<std::vector<char>> m(g.node_count(), std::vector<char>(g.node_count(), 0));
  for (const Edge& e : g.edges()) m[e.u][e.v] = m[e.v][e.u] = 1;
  return m;
}

inline std::uint64_t brute_triangles(const Graph& g) {
  const auto m = adjacency_matrix(g);
  std::uint64_t t = 0;
  const std::size_t n = g.node_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) t += m[a][b] && m[b][c] && m[a][c];
  return t;
}

inline std::uint64_t brute_triangles_at(const Graph& g, NodeId v) {
  const auto m = adjacency_matrix(g);
  std::uint64_t t = 0;
  const std::size_t n = g.node_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) t += a != v && b != v && m[v][a] && m[v][b] && m[a][b];
  return t;
}

// Component label per node by repeated relaxation (no BFS, no union-find in the library).
inline std::vector<std::size_t> brute_components(const Graph& g) {
  std::vector<std::size_t> label(g.node_count());
  std::iota(label.begin(), label.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : g.edges()) {
      const std::size_t m = std::min(label[e.u], label[e.v]);
      if (label[e.u] != m || label[e.v] != m) {
        label[e.u] = label[e.v] = m;
        changed = true;
      }
    }
  }
  return label;
}

// Upper 0.1% point of chi-squared with `df` degrees of freedom (Wilson-Hilferty).
inline double chi2_critical_999(double df) {
  const double z = 3.090232;
  const double a = 2.0 / (9.0 * df);
  return df * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

inline double chi2_statistic(const std::vector<double>& observed, const std::vector<double>& expected) {
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    s += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  }
  return s;
}

}  // namespace graphaug::testing
