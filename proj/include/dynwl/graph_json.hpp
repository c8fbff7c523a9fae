#pragma once

#include <filesystem>

#include <json.hpp>

#include "dynwl/graph.hpp"

namespace dynwl {

// {"attr_dim": k, "nodes": [{"id": n, "attr": [...]}], "edges": [{"u": a, "v": b, "attr": [...]}]}
nlohmann::json toJson(const Sauhg& g);
Sauhg sauhgFromJson(const nlohmann::json& j);

// {"timeline_len": l+1, "snapshots": [<graph>...]}
nlohmann::json toJson(const DynamicGraph& g);
DynamicGraph dynamicFromJson(const nlohmann::json& j);

bool isDynamicJson(const nlohmann::json& j);

nlohmann::json readJsonFile(const std::filesystem::path& path);
void writeJsonFile(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace dynwl
