#include "dynwl/tree.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <functional>
#include <map>

#include "dynwl/error.hpp"

namespace dynwl {

namespace {

void putVarint(std::string& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

void putU32(std::string& out, std::uint32_t x) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((x >> shift) & 0xffu));
}

std::string toHex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

void putAttr(std::string& out, const AttrVec& attr) {
  putVarint(out, attr.size());
  out += canonicalBytes(attr);
}

void putLabel(std::string& out, const RootLabel& label) {
  out.push_back(static_cast<char>(label.kind));
  if (label.kind == RootKind::Attr) putAttr(out, label.attr);
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  bool done() const { return pos_ == bytes_.size(); }

  std::uint8_t byte() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

  std::uint64_t varint() {
    std::uint64_t x = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      std::uint8_t b = byte();
      x |= static_cast<std::uint64_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return x;
    }
    throw Error(ErrorCode::InvalidTree, "varint overflow");
  }

  double real() {
    need(8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits = (bits << 8) | static_cast<std::uint8_t>(bytes_[pos_++]);
    return std::bit_cast<double>(bits);
  }

  AttrVec attr() {
    auto dim = varint();
    if (dim > bytes_.size()) throw Error(ErrorCode::InvalidTree, "attribute length out of range");
    AttrVec out;
    for (std::uint64_t i = 0; i < dim; ++i) out.push_back(real());
    return out;
  }

  std::string take(std::size_t n) {
    need(n);
    std::string out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::InvalidTree, "truncated code");
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string TreeCode::hex() const { return toHex(bytes); }
std::string SeqCode::hex() const { return toHex(bytes); }

std::uint32_t TreeArena::edgeLabel(const AttrVec& attr) {
  auto [it, inserted] =
      edgeIndex_.try_emplace(canonicalBytes(attr), static_cast<std::uint32_t>(edgeAttrs_.size()));
  if (inserted) edgeAttrs_.push_back(attr);
  return it->second;
}

std::string TreeArena::keyOf(const RootLabel& label, const std::vector<Child>& children) const {
  std::string key;
  putLabel(key, label);
  putVarint(key, children.size());
  for (const auto& c : children) {
    putU32(key, c.edgeLabel);
    putU32(key, c.subtree);
  }
  return key;
}

TreeId TreeArena::make(RootLabel label, std::vector<Child> children) {
  if (label.kind == RootKind::Absent && !children.empty()) {
    throw Error(ErrorCode::InvalidTree, "an absent root cannot have children");
  }
  if (label.kind != RootKind::Attr) label.attr.clear();
  std::sort(children.begin(), children.end());
  auto key = keyOf(label, children);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;

  std::size_t height = 0;
  for (const auto& c : children) height = std::max(height, nodes_[c.subtree].height + 1);
  auto id = static_cast<TreeId>(nodes_.size());
  nodes_.push_back({std::move(label), std::move(children), height});
  index_.emplace(std::move(key), id);
  return id;
}

TreeId TreeArena::make(RootLabel label, const std::vector<std::pair<AttrVec, TreeId>>& children) {
  std::vector<Child> kids;
  kids.reserve(children.size());
  for (const auto& [attr, id] : children) kids.push_back({edgeLabel(attr), id});
  return make(std::move(label), std::move(kids));
}

const TreeCode& TreeArena::code(TreeId root) {
  if (auto it = codes_.find(root); it != codes_.end()) return it->second;

  // Distinct subtrees reachable from root, grouped by height.
  std::map<std::size_t, std::vector<TreeId>> levels;
  std::unordered_map<TreeId, std::uint32_t> local;
  std::vector<TreeId> stack{root};
  std::vector<bool> seen(nodes_.size(), false);
  seen[root] = true;
  while (!stack.empty()) {
    TreeId id = stack.back();
    stack.pop_back();
    levels[nodes_[id].height].push_back(id);
    for (const auto& c : nodes_[id].children) {
      if (!seen[c.subtree]) {
        seen[c.subtree] = true;
        stack.push_back(c.subtree);
      }
    }
  }

  std::string body;
  std::uint32_t next = 0;
  std::vector<std::string> childBytes;
  for (auto& [height, ids] : levels) {
    std::vector<std::pair<std::string, TreeId>> defs;
    defs.reserve(ids.size());
    for (TreeId id : ids) {
      const auto& n = nodes_[id];
      childBytes.clear();
      for (const auto& c : n.children) {
        std::string cb;
        putAttr(cb, edgeAttrs_[c.edgeLabel]);
        putVarint(cb, local.at(c.subtree));
        childBytes.push_back(std::move(cb));
      }
      std::sort(childBytes.begin(), childBytes.end());
      std::string def;
      putLabel(def, n.label);
      putVarint(def, childBytes.size());
      for (const auto& cb : childBytes) def += cb;
      defs.emplace_back(std::move(def), id);
    }
    std::sort(defs.begin(), defs.end());
    for (auto& [def, id] : defs) {
      local[id] = next++;
      body += def;
    }
  }

  std::string bytes = "T1";
  putVarint(bytes, next);
  bytes += body;
  return codes_.emplace(root, TreeCode{std::move(bytes)}).first->second;
}

TreeId TreeArena::decode(const TreeCode& code) {
  Reader in(code.bytes);
  if (in.take(2) != "T1") throw Error(ErrorCode::InvalidTree, "not a tree code");
  auto count = in.varint();
  if (count == 0 || count > code.bytes.size()) {
    throw Error(ErrorCode::InvalidTree, "bad definition count");
  }
  std::vector<TreeId> ids;
  ids.reserve(count);
  for (std::uint64_t d = 0; d < count; ++d) {
    RootLabel label;
    auto tag = in.byte();
    if (tag > static_cast<std::uint8_t>(RootKind::Attr)) throw Error(ErrorCode::InvalidTree, "bad label tag");
    label.kind = static_cast<RootKind>(tag);
    if (label.kind == RootKind::Attr) label.attr = in.attr();
    auto childCount = in.varint();
    std::vector<std::pair<AttrVec, TreeId>> children;
    for (std::uint64_t c = 0; c < childCount; ++c) {
      AttrVec edge = in.attr();
      auto ref = in.varint();
      if (ref >= d) throw Error(ErrorCode::InvalidTree, "forward child reference");
      children.emplace_back(std::move(edge), ids[ref]);
    }
    ids.push_back(make(std::move(label), children));
  }
  if (!in.done()) throw Error(ErrorCode::InvalidTree, "trailing bytes after tree code");
  return ids.back();
}

TreeId TreeArena::import(const TreeArena& other, TreeId id) {
  if (&other == this) return id;
  std::unordered_map<TreeId, TreeId> memo;
  std::function<TreeId(TreeId)> copy = [&](TreeId src) -> TreeId {
    if (auto it = memo.find(src); it != memo.end()) return it->second;
    const auto& n = other.node(src);
    std::vector<Child> kids;
    for (const auto& c : n.children) {
      kids.push_back({edgeLabel(other.edgeAttr(c.edgeLabel)), copy(c.subtree)});
    }
    TreeId out = make(n.label, std::move(kids));
    memo.emplace(src, out);
    return out;
  };
  return copy(id);
}

UTree UTree::leaf(const MaybeAttr& attr, std::shared_ptr<TreeArena> arena) {
  TreeId id = arena->leaf(attr);
  return UTree(std::move(arena), id);
}

UTree UTree::make(RootLabel label, const std::vector<std::pair<AttrVec, UTree>>& children,
                  std::shared_ptr<TreeArena> arena) {
  std::vector<std::pair<AttrVec, TreeId>> kids;
  for (const auto& [attr, sub] : children) kids.emplace_back(attr, arena->import(*sub.arena(), sub.id()));
  TreeId id = arena->make(std::move(label), kids);
  return UTree(std::move(arena), id);
}

std::vector<std::pair<AttrVec, UTree>> UTree::children() const {
  std::vector<std::tuple<std::string, std::string, AttrVec, TreeId>> keyed;
  for (const auto& c : arena_->node(id_).children) {
    const auto& attr = arena_->edgeAttr(c.edgeLabel);
    keyed.emplace_back(canonicalBytes(attr), arena_->code(c.subtree).bytes, attr, c.subtree);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::vector<std::pair<AttrVec, UTree>> out;
  for (auto& [eb, cb, attr, id] : keyed) out.emplace_back(std::move(attr), UTree(arena_, id));
  return out;
}

bool operator==(const UTree& a, const UTree& b) {
  if (a.arena_ == b.arena_) return a.id_ == b.id_;
  return a.code() == b.code();
}

TreeCode treeCode(const UTree& t) { return t.code(); }

UTree decodeTree(const TreeCode& code, std::shared_ptr<TreeArena> arena) {
  TreeId id = arena->decode(code);
  return UTree(std::move(arena), id);
}

SeqCode seqCode(const TreeSeq& seq) {
  std::string bytes = "S1";
  putVarint(bytes, seq.size());
  for (const auto& t : seq) {
    const auto& c = t.arena()->code(t.id());
    putVarint(bytes, c.bytes.size());
    bytes += c.bytes;
  }
  return SeqCode{std::move(bytes)};
}

std::vector<TreeCode> splitSeqCode(const SeqCode& code) {
  Reader in(code.bytes);
  if (in.take(2) != "S1") throw Error(ErrorCode::InvalidTree, "not a sequence code");
  auto len = in.varint();
  std::vector<TreeCode> out;
  for (std::uint64_t i = 0; i < len; ++i) {
    auto n = in.varint();
    out.push_back(TreeCode{in.take(n)});
  }
  if (!in.done()) throw Error(ErrorCode::InvalidTree, "trailing bytes after sequence code");
  return out;
}

TreeSeq decodeSeq(const SeqCode& code, std::shared_ptr<TreeArena> arena) {
  TreeSeq out;
  for (const auto& c : splitSeqCode(code)) out.push_back(decodeTree(c, arena));
  return out;
}

TreeSeq appendTree(TreeSeq prefix, UTree t) {
  prefix.push_back(std::move(t));
  return prefix;
}

UTree treeUnion(const std::vector<std::pair<AttrVec, UTree>>& subtrees,
                std::shared_ptr<TreeArena> arena) {
  return UTree::make(RootLabel::voidLabel(), subtrees, std::move(arena));
}

UTree attach(const UTree& rootSource, const UTree& body) {
  const auto& arena = body.arena();
  TreeId id = arena->make(rootSource.root(), arena->node(body.id()).children);
  return UTree(arena, id);
}

}  // namespace dynwl
