#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynwl/graph.hpp"

namespace dynwl {

// Root label of an unfolding tree: an attribute, the absence marker of a node
// that does not exist at a timestamp, or the void label produced by tree union.
enum class RootKind : std::uint8_t { Absent = 0, Void = 1, Attr = 2 };

struct RootLabel {
  RootKind kind = RootKind::Void;
  AttrVec attr;

  static RootLabel of(const MaybeAttr& a) {
    return a ? RootLabel{RootKind::Attr, *a} : RootLabel{RootKind::Absent, {}};
  }
  static RootLabel voidLabel() { return {RootKind::Void, {}}; }
  MaybeAttr toMaybe() const { return kind == RootKind::Attr ? MaybeAttr(attr) : std::nullopt; }
  bool operator==(const RootLabel&) const = default;
};

// Injective canonical encoding of an unfolding tree.
//
// Layout: "T1", varint(#definitions), then one definition per distinct subtree.
// Definitions are grouped by height (leaves first) and sorted by their bytes
// within a height; a definition is
//   label  := 0x00 | 0x01 | 0x02 varint(dim) attr-bytes
//   child  := varint(dim) edge-attr-bytes varint(definition index)
//   def    := label varint(#children) child*   (children sorted by bytes)
// The root is the last definition. Equal trees yield identical bytes.
struct TreeCode {
  std::string bytes;
  auto operator<=>(const TreeCode&) const = default;
  std::string hex() const;
};

// Injective encoding of a fixed-length sequence of trees:
// "S1", varint(length), then varint(|code|) code-bytes per element.
struct SeqCode {
  std::string bytes;
  auto operator<=>(const SeqCode&) const = default;
  std::string hex() const;
};

using TreeId = std::uint32_t;

// Hash-consing store for unfolding trees. Every structurally distinct
// canonical tree gets exactly one TreeId, so inside one arena tree equality is
// id equality. Not thread-safe; use one arena per thread.
class TreeArena {
 public:
  struct Child {
    std::uint32_t edgeLabel;
    TreeId subtree;
    auto operator<=>(const Child&) const = default;
  };
  struct Node {
    RootLabel label;
    std::vector<Child> children;  // sorted by (edgeLabel, subtree)
    std::size_t height = 0;
  };

  std::uint32_t edgeLabel(const AttrVec& attr);
  const AttrVec& edgeAttr(std::uint32_t label) const { return edgeAttrs_[label]; }

  // Throws InvalidTree when an absent root is given children.
  TreeId make(RootLabel label, std::vector<Child> children);
  TreeId make(RootLabel label, const std::vector<std::pair<AttrVec, TreeId>>& children);
  TreeId leaf(const MaybeAttr& attr) { return make(RootLabel::of(attr), std::vector<Child>{}); }

  const Node& node(TreeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  const TreeCode& code(TreeId id);
  // Rebuilds the tree in this arena. Throws InvalidTree on malformed input.
  TreeId decode(const TreeCode& code);
  // Copies a tree from another arena.
  TreeId import(const TreeArena& other, TreeId id);

 private:
  std::string keyOf(const RootLabel& label, const std::vector<Child>& children) const;

  std::vector<Node> nodes_;
  std::unordered_map<std::string, TreeId> index_;
  std::vector<AttrVec> edgeAttrs_;
  std::unordered_map<std::string, std::uint32_t> edgeIndex_;
  std::unordered_map<TreeId, TreeCode> codes_;
};

// Value handle on a tree stored in a shared arena.
class UTree {
 public:
  UTree(std::shared_ptr<TreeArena> arena, TreeId id) : arena_(std::move(arena)), id_(id) {}

  static UTree leaf(const MaybeAttr& attr,
                    std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>());
  static UTree make(RootLabel label, const std::vector<std::pair<AttrVec, UTree>>& children,
                    std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>());

  const RootLabel& root() const { return arena_->node(id_).label; }
  MaybeAttr rootAttr() const { return root().toMaybe(); }
  std::size_t height() const { return arena_->node(id_).height; }
  std::size_t childCount() const { return arena_->node(id_).children.size(); }
  // Children in canonical order: by (edge attribute bytes, child code).
  std::vector<std::pair<AttrVec, UTree>> children() const;

  TreeCode code() const { return arena_->code(id_); }
  TreeId id() const { return id_; }
  const std::shared_ptr<TreeArena>& arena() const { return arena_; }

  friend bool operator==(const UTree& a, const UTree& b);

 private:
  std::shared_ptr<TreeArena> arena_;
  TreeId id_;
};

using TreeSeq = std::vector<UTree>;

TreeCode treeCode(const UTree& t);
UTree decodeTree(const TreeCode& code,
                 std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>());

SeqCode seqCode(const TreeSeq& seq);
std::vector<TreeCode> splitSeqCode(const SeqCode& code);
TreeSeq decodeSeq(const SeqCode& code,
                  std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>());

// APPEND: concatenation; appendTree({}, t) == {t}.
TreeSeq appendTree(TreeSeq prefix, UTree t);

// Tree with a void root over the given (edge attribute, subtree) multiset.
UTree treeUnion(const std::vector<std::pair<AttrVec, UTree>>& subtrees,
                std::shared_ptr<TreeArena> arena = std::make_shared<TreeArena>());

// `body` with its root label replaced by the root label of `rootSource`.
UTree attach(const UTree& rootSource, const UTree& body);

}  // namespace dynwl
