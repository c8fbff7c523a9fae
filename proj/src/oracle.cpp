#include "dynwl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dynwl/error.hpp"
#include "dynwl/unfolding.hpp"

namespace dynwl {

namespace {

bool sameAttr(const AttrVec& a, const AttrVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

// Partial attribute bijection with undo log, keyed by canonical bytes.
class RenamingMap {
 public:
  bool tryBind(const AttrVec& from, const AttrVec& to) {
    auto f = canonicalBytes(from);
    auto t = canonicalBytes(to);
    auto fit = forward_.find(f);
    auto bit = backward_.find(t);
    if (fit != forward_.end() || bit != backward_.end()) {
      bool ok = fit != forward_.end() && bit != backward_.end() && fit->second == t;
      if (ok) log_.push_back(std::nullopt);
      return ok;
    }
    forward_.emplace(f, t);
    backward_.emplace(t, f);
    log_.push_back(std::move(f));
    return true;
  }

  void undo() {
    auto f = std::move(log_.back());
    log_.pop_back();
    if (!f) return;
    auto it = forward_.find(*f);
    backward_.erase(it->second);
    forward_.erase(it);
  }

 private:
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> backward_;
  std::vector<std::optional<std::string>> log_;
};

class IsoSearch {
 public:
  IsoSearch(const Sauhg& g1, const Sauhg& g2, AttributeMode mode) : g1_(g1), g2_(g2), mode_(mode) {}

  std::optional<IsoWitness> run() {
    const std::size_t n = g1_.nodeCount();
    candidates_.assign(n, {});
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (compatible(u, v)) candidates_[u].push_back(v);
      }
      if (candidates_[u].empty()) return std::nullopt;
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return candidates_[a].size() < candidates_[b].size();
    });
    image_.assign(n, kNone);
    used_.assign(n, false);
    if (!extend(0)) return std::nullopt;
    IsoWitness w;
    w.mode = mode_;
    for (std::size_t u = 0; u < n; ++u) w.nodeBijection[g1_.idAt(u)] = g2_.idAt(image_[u]);
    return w;
  }

 private:
  static constexpr std::size_t kNone = ~std::size_t{0};

  bool compatible(std::size_t u, std::size_t v) const {
    if (g1_.denseNeighbors(u).size() != g2_.denseNeighbors(v).size()) return false;
    if (mode_ == AttributeMode::Strict && !sameAttr(g1_.attrAt(u), g2_.attrAt(v))) return false;
    return true;
  }

  std::optional<std::size_t> edgeBetween(const Sauhg& g, std::size_t a, std::size_t b) const {
    for (const auto& nb : g.denseNeighbors(a)) {
      if (nb.index == b) return nb.edge;
    }
    return std::nullopt;
  }

  // Checks u -> v against every already-mapped node (and u itself for loops),
  // binding renaming maps as it goes. Returns the number of bindings made, or
  // nullopt on conflict (bindings already undone).
  std::optional<std::size_t> bind(std::size_t u, std::size_t v) {
    std::size_t bound = 0;
    auto fail = [&]() -> std::optional<std::size_t> {
      unbind(bound);
      return std::nullopt;
    };
    if (mode_ == AttributeMode::Renaming) {
      if (!nodeMap_.tryBind(g1_.attrAt(u), g2_.attrAt(v))) return fail();
      kinds_.push_back(0);
      ++bound;
    }
    for (std::size_t w = 0; w < image_.size(); ++w) {
      std::size_t wImage = (w == u) ? v : image_[w];
      if (wImage == kNone) continue;
      auto e1 = edgeBetween(g1_, u, w);
      auto e2 = edgeBetween(g2_, v, wImage);
      if (e1.has_value() != e2.has_value()) return fail();
      if (!e1) continue;
      const auto& a1 = g1_.edgeAttrAt(*e1);
      const auto& a2 = g2_.edgeAttrAt(*e2);
      if (mode_ == AttributeMode::Strict) {
        if (!sameAttr(a1, a2)) return fail();
      } else {
        if (!edgeMap_.tryBind(a1, a2)) return fail();
        kinds_.push_back(1);
        ++bound;
      }
    }
    return bound;
  }

  void unbind(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      if (kinds_.back() == 0) {
        nodeMap_.undo();
      } else {
        edgeMap_.undo();
      }
      kinds_.pop_back();
    }
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    std::size_t u = order_[depth];
    for (std::size_t v : candidates_[u]) {
      if (used_[v]) continue;
      auto bound = bind(u, v);
      if (!bound) continue;
      image_[u] = v;
      used_[v] = true;
      if (extend(depth + 1)) return true;
      image_[u] = kNone;
      used_[v] = false;
      unbind(*bound);
    }
    return false;
  }

  const Sauhg& g1_;
  const Sauhg& g2_;
  AttributeMode mode_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> image_;
  std::vector<bool> used_;
  RenamingMap nodeMap_;
  RenamingMap edgeMap_;
  std::vector<int> kinds_;
};

}  // namespace

std::optional<IsoWitness> bruteForceIsomorphic(const Sauhg& g1, const Sauhg& g2, AttributeMode mode) {
  if (g1.nodeCount() > kIsoNodeLimit || g2.nodeCount() > kIsoNodeLimit) {
    throw Error(ErrorCode::TooLarge, "brute-force isomorphism is limited to " +
                                         std::to_string(kIsoNodeLimit) + " nodes");
  }
  if (g1.attrDim() != g2.attrDim()) {
    throw Error(ErrorCode::AttrDimMismatch, "graphs with different attribute dims");
  }
  if (g1.nodeCount() != g2.nodeCount() || g1.edgeCount() != g2.edgeCount()) return std::nullopt;
  return IsoSearch(g1, g2, mode).run();
}

bool isValidWitness(const Sauhg& g1, const Sauhg& g2, const IsoWitness& w) {
  if (w.nodeBijection.size() != g1.nodeCount() || g1.nodeCount() != g2.nodeCount()) return false;
  std::map<NodeId, NodeId> inverse;
  for (const auto& [a, b] : w.nodeBijection) {
    if (!g1.hasNode(a) || !g2.hasNode(b) || !inverse.emplace(b, a).second) return false;
  }
  std::map<std::string, std::string> nodeMap;
  std::map<std::string, std::string> nodeInv;
  std::map<std::string, std::string> edgeMap;
  std::map<std::string, std::string> edgeInv;
  auto related = [&](const AttrVec& x, const AttrVec& y, auto& fwd, auto& inv) {
    if (w.mode == AttributeMode::Strict) return sameAttr(x, y);
    auto bx = canonicalBytes(x);
    auto by = canonicalBytes(y);
    auto [fi, fnew] = fwd.emplace(bx, by);
    auto [ii, inew] = inv.emplace(by, bx);
    return fi->second == by && ii->second == bx;
  };
  for (const auto& [a, b] : w.nodeBijection) {
    if (!related(g1.nodeAttr(a), g2.nodeAttr(b), nodeMap, nodeInv)) return false;
  }
  if (g1.edgeCount() != g2.edgeCount()) return false;
  for (const auto& e : g1.edgeSpecs()) {
    NodeId a = w.nodeBijection.at(e.u);
    NodeId b = w.nodeBijection.at(e.v);
    if (!g2.hasEdge(a, b)) return false;
    if (!related(e.attr, g2.edgeAttr(a, b), edgeMap, edgeInv)) return false;
  }
  return true;
}

bool bruteTreeEqual(const UTree& a, const UTree& b) {
  const TreeArena& arenaA = *a.arena();
  const TreeArena& arenaB = *b.arena();
  std::map<std::pair<TreeId, TreeId>, bool> memo;

  std::function<bool(TreeId, TreeId)> equal = [&](TreeId x, TreeId y) -> bool {
    if (auto it = memo.find({x, y}); it != memo.end()) return it->second;
    const auto& nx = arenaA.node(x);
    const auto& ny = arenaB.node(y);
    bool result = nx.label.kind == ny.label.kind && sameAttr(nx.label.attr, ny.label.attr) &&
                  nx.children.size() == ny.children.size();
    if (result) {
      const std::size_t k = nx.children.size();
      std::vector<bool> taken(k, false);
      std::function<bool(std::size_t)> match = [&](std::size_t i) -> bool {
        if (i == k) return true;
        const auto& cx = nx.children[i];
        for (std::size_t j = 0; j < k; ++j) {
          if (taken[j]) continue;
          const auto& cy = ny.children[j];
          if (!sameAttr(arenaA.edgeAttr(cx.edgeLabel), arenaB.edgeAttr(cy.edgeLabel))) continue;
          if (!equal(cx.subtree, cy.subtree)) continue;
          taken[j] = true;
          if (match(i + 1)) return true;
          taken[j] = false;
        }
        return false;
      };
      result = match(0);
    }
    memo[{x, y}] = result;
    return result;
  };
  return equal(a.id(), b.id());
}

Partition exhaustivePartition(const Sauhg& g, Relation relation, std::optional<std::size_t> maxDepth) {
  const std::size_t n = g.nodeCount();
  const std::size_t limit = relation == Relation::Aut ? kAutPartitionLimit : kAwlPartitionLimit;
  if (n > limit) {
    throw Error(ErrorCode::TooLarge, "exhaustive partition is limited to " + std::to_string(limit) + " nodes");
  }
  if (n == 0) return {};

  std::function<bool(std::size_t, std::size_t)> same;
  std::vector<UTree> trees;
  std::vector<ColorId> colors;
  if (relation == Relation::Aut) {
    std::size_t depth = maxDepth.value_or(diameter(g) + 1);
    TreeBuilder builder(g);
    for (std::size_t i = 0; i < n; ++i) trees.push_back(builder.tree(g.idAt(i), depth));
    same = [&](std::size_t i, std::size_t j) { return bruteTreeEqual(trees[i], trees[j]); };
  } else {
    auto hist = runAWL(g, maxDepth);
    colors = maxDepth ? hist.colorsAt(*maxDepth) : hist.stableColors();
    same = [&](std::size_t i, std::size_t j) { return colors[i] == colors[j]; };
  }

  // Pairwise comparison against one representative per class.
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      if (same(cls.front(), i)) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  Partition out;
  for (const auto& cls : classes) {
    std::vector<NodeId> ids;
    for (std::size_t i : cls) ids.push_back(g.idAt(i));
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dynwl
