#include "dynwl/graph_json.hpp"

#include <fstream>

#include "dynwl/error.hpp"

namespace dynwl {

namespace {

AttrVec attrFrom(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "attr must be an array of numbers");
  AttrVec out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorCode::ParseError, "attr entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

NodeId idFrom(const nlohmann::json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw Error(ErrorCode::ParseError, "node ids must be non-negative integers");
  }
  return j.get<NodeId>();
}

}  // namespace

nlohmann::json toJson(const Sauhg& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : g.nodeSpecs()) nodes.push_back({{"id", n.id}, {"attr", n.attr}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edgeSpecs()) {
    edges.push_back({{"u", e.u}, {"v", e.v}, {"attr", e.attr}});
  }
  return {{"attr_dim", g.attrDim()}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Sauhg sauhgFromJson(const nlohmann::json& j) try {
  const auto& dimField = field(j, "attr_dim");
  if (!dimField.is_number_integer() || dimField.get<std::int64_t>() < 0) {
    throw Error(ErrorCode::ParseError, "attr_dim must be a non-negative integer");
  }
  auto dim = dimField.get<std::size_t>();
  std::vector<NodeSpec> nodes;
  for (const auto& n : field(j, "nodes")) {
    nodes.push_back({idFrom(field(n, "id")), attrFrom(field(n, "attr"))});
  }
  std::vector<EdgeSpec> edges;
  for (const auto& e : field(j, "edges")) {
    edges.push_back({idFrom(field(e, "u")), idFrom(field(e, "v")), attrFrom(field(e, "attr"))});
  }
  return Sauhg(dim, std::move(nodes), std::move(edges));
} catch (const nlohmann::json::exception& e) {
  throw Error(ErrorCode::ParseError, e.what());
}

nlohmann::json toJson(const DynamicGraph& g) {
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& s : g.snapshots()) snaps.push_back(toJson(s));
  return {{"timeline_len", g.timelineLength()}, {"snapshots", std::move(snaps)}};
}

bool isDynamicJson(const nlohmann::json& j) { return j.is_object() && j.contains("snapshots"); }

DynamicGraph dynamicFromJson(const nlohmann::json& j) try {
  auto len = field(j, "timeline_len").get<std::size_t>();
  const auto& snapsJson = field(j, "snapshots");
  if (!snapsJson.is_array() || snapsJson.size() != len) {
    throw Error(ErrorCode::ParseError, "timeline_len does not match the number of snapshots");
  }
  std::vector<Sauhg> snaps;
  std::optional<std::size_t> dim;
  for (const auto& s : snapsJson) {
    snaps.push_back(sauhgFromJson(s));
    if (snaps.back().empty()) continue;
    if (!dim) {
      dim = snaps.back().attrDim();
    } else if (*dim != snaps.back().attrDim()) {
      throw Error(ErrorCode::AttrDimMismatch, "snapshots declare different attr_dim");
    }
  }
  if (!dim && !snapsJson.empty()) dim = field(snapsJson.front(), "attr_dim").get<std::size_t>();
  return DynamicGraph(dim.value_or(0), std::move(snaps));
} catch (const nlohmann::json::exception& e) {
  throw Error(ErrorCode::ParseError, e.what());
}

nlohmann::json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void writeJsonFile(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace dynwl
