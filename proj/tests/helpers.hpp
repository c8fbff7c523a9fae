#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dynwl/graph.hpp"

namespace testutil {

using dynwl::AttrVec;
using dynwl::EdgeSpec;
using dynwl::NodeId;
using dynwl::NodeSpec;
using dynwl::Sauhg;

inline Sauhg uniformGraph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                          NodeId firstId = 1) {
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({firstId + i, {1.0}});
  std::vector<EdgeSpec> es;
  for (auto [u, v] : edges) es.push_back({u, v, {1.0}});
  return Sauhg(1, nodes, es);
}

inline Sauhg path(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return uniformGraph(n, e);
}

inline Sauhg cycle(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 1; i <= n; ++i) e.emplace_back(i, i % n + 1);
  return uniformGraph(n, e);
}

inline Sauhg triangle() { return cycle(3); }

inline Sauhg complete(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 1; i <= n; ++i) {
    for (NodeId j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  }
  return uniformGraph(n, e);
}

// Nested-structure unfolding tree with no hashing or interning: the string is
// built recursively with children sorted, so equal strings mean equal trees.
inline std::string naiveTree(const Sauhg& g, NodeId v, std::size_t depth) {
  std::string label = "(";
  for (double x : g.nodeAttr(v)) label += std::to_string(x) + ",";
  if (depth == 0) return label + ")";
  std::vector<std::string> kids;
  for (const auto& [u, w] : dynwl::neighborEdgeAttrs(g, v)) {
    std::string e = "<";
    for (double x : w) e += std::to_string(x) + ",";
    kids.push_back(e + ">" + naiveTree(g, u, depth - 1));
  }
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) label += k;
  return label + ")";
}

// Color refinement with colors represented by full signature strings ranked
// per round; independent of the library's interner.
inline std::vector<std::vector<int>> naiveRefinement(const Sauhg& g, std::size_t rounds, bool edgeLabels = true) {
  const auto& ids = g.nodes();
  std::vector<std::string> sig;
  for (NodeId v : ids) {
    std::string s;
    for (double x : g.nodeAttr(v)) s += std::to_string(x) + ",";
    sig.push_back(s);
  }
  auto rank = [](const std::vector<std::string>& s) {
    std::vector<std::string> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out;
    for (const auto& x : s) out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()));
    return out;
  };
  std::vector<std::vector<int>> history{rank(sig)};
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto& prev = history.back();
    std::vector<std::string> next;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::vector<std::string> parts;
      for (const auto& [u, w] : dynwl::neighborEdgeAttrs(g, ids[i])) {
        std::string p;
        if (edgeLabels) {
          for (double x : w) p += std::to_string(x) + ",";
        }
        auto j = std::lower_bound(ids.begin(), ids.end(), u) - ids.begin();
        parts.push_back(p + ":" + std::to_string(prev[static_cast<std::size_t>(j)]));
      }
      std::sort(parts.begin(), parts.end());
      std::string s = std::to_string(prev[i]) + "|";
      for (const auto& p : parts) s += p + ";";
      next.push_back(s);
    }
    history.push_back(rank(next));
  }
  return history;
}

}  // namespace testutil
