#include "dynwl/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "dynwl/error.hpp"
#include "dynwl/graph_json.hpp"

namespace dynwl {

void CorpusSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::SpecError, msg); };
  if (minNodes == 0 || minNodes > maxNodes) fail("node range must satisfy 1 <= min <= max");
  if (!(edgeProbability >= 0.0 && edgeProbability <= 1.0)) fail("edge_probability outside [0,1]");
  if (!(nodeChurnProb >= 0.0 && nodeChurnProb <= 1.0)) fail("node_churn outside [0,1]");
  if (!(edgeChurnProb >= 0.0 && edgeChurnProb <= 1.0)) fail("edge_churn outside [0,1]");
  if (attrAlphabetSize == 0 || attrAlphabetSize > kAttrAlphabet.size()) {
    fail("attr_alphabet_size must be in 1.." + std::to_string(kAttrAlphabet.size()));
  }
}

nlohmann::json toJson(const CorpusSpec& s) {
  return {{"seed", s.seed},
          {"count", s.count},
          {"min_nodes", s.minNodes},
          {"max_nodes", s.maxNodes},
          {"edge_probability", s.edgeProbability},
          {"attr_dim", s.attrDim},
          {"attr_alphabet_size", s.attrAlphabetSize},
          {"timeline_len", s.timelineLen},
          {"node_churn", s.nodeChurnProb},
          {"edge_churn", s.edgeChurnProb}};
}

CorpusSpec corpusSpecFromJson(const nlohmann::json& j) try {
  CorpusSpec s;
  s.seed = j.value("seed", s.seed);
  s.count = j.value("count", s.count);
  s.minNodes = j.value("min_nodes", s.minNodes);
  s.maxNodes = j.value("max_nodes", s.maxNodes);
  s.edgeProbability = j.value("edge_probability", s.edgeProbability);
  s.attrDim = j.value("attr_dim", s.attrDim);
  s.attrAlphabetSize = j.value("attr_alphabet_size", s.attrAlphabetSize);
  s.timelineLen = j.value("timeline_len", s.timelineLen);
  s.nodeChurnProb = j.value("node_churn", s.nodeChurnProb);
  s.edgeChurnProb = j.value("edge_churn", s.edgeChurnProb);
  s.validate();
  return s;
} catch (const nlohmann::json::exception& e) {
  throw Error(ErrorCode::SpecError, e.what());
}

std::uint64_t CorpusRng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::SpecError, "empty sampling range");
  // Rejection sampling removes the modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

bool CorpusRng::bernoulli(double p) {
  std::uint64_t x = next();
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
  return x < threshold;
}

namespace {

AttrVec sampleAttr(CorpusRng& rng, const CorpusSpec& spec) {
  AttrVec a(spec.attrDim);
  for (double& x : a) x = kAttrAlphabet[rng.below(spec.attrAlphabetSize)];
  return a;
}

Sauhg sampleStatic(CorpusRng& rng, const CorpusSpec& spec) {
  std::size_t n = spec.minNodes + rng.below(spec.maxNodes - spec.minNodes + 1);
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({i, sampleAttr(rng, spec)});
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(spec.edgeProbability)) edges.push_back({i, j, sampleAttr(rng, spec)});
    }
  }
  return Sauhg(spec.attrDim, std::move(nodes), std::move(edges));
}

DynamicGraph sampleDynamic(CorpusRng& rng, const CorpusSpec& spec) {
  std::size_t n = spec.minNodes + rng.below(spec.maxNodes - spec.minNodes + 1);
  std::vector<bool> present(n, true);
  std::vector<AttrVec> attrs;
  for (std::size_t i = 0; i < n; ++i) attrs.push_back(sampleAttr(rng, spec));
  std::map<EdgeKey, AttrVec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(spec.edgeProbability)) edges[{i, j}] = sampleAttr(rng, spec);
    }
  }

  std::vector<Sauhg> snaps;
  for (std::size_t t = 0; t < spec.timelineLen; ++t) {
    if (t > 0) {
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(spec.nodeChurnProb)) present[i] = !present[i];
        if (rng.bernoulli(spec.nodeChurnProb)) attrs[i] = sampleAttr(rng, spec);
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!rng.bernoulli(spec.edgeChurnProb)) continue;
          EdgeKey key{i, j};
          if (edges.erase(key) == 0) edges[key] = sampleAttr(rng, spec);
        }
      }
    }
    std::vector<NodeSpec> nodeSpecs;
    for (std::size_t i = 0; i < n; ++i) {
      if (present[i]) nodeSpecs.push_back({i, attrs[i]});
    }
    std::vector<EdgeSpec> edgeSpecs;
    for (const auto& [key, attr] : edges) {
      if (present[key.lo] && present[key.hi]) edgeSpecs.push_back({key.lo, key.hi, attr});
    }
    snaps.emplace_back(spec.attrDim, std::move(nodeSpecs), std::move(edgeSpecs));
  }
  return DynamicGraph(spec.attrDim, std::move(snaps));
}

}  // namespace

std::vector<Sauhg> generateStatic(const CorpusSpec& spec) {
  spec.validate();
  if (spec.isDynamic()) throw Error(ErrorCode::SpecError, "spec describes a dynamic corpus");
  CorpusRng rng(spec.seed);
  std::vector<Sauhg> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(sampleStatic(rng, spec));
  return out;
}

std::vector<DynamicGraph> generateDynamic(const CorpusSpec& spec) {
  spec.validate();
  if (!spec.isDynamic()) throw Error(ErrorCode::SpecError, "spec describes a static corpus");
  CorpusRng rng(spec.seed);
  std::vector<DynamicGraph> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) out.push_back(sampleDynamic(rng, spec));
  return out;
}

namespace {

Sauhg cycleGraph(std::size_t n, const std::vector<double>& edgeValues) {
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({i, {1.0}});
    edges.push_back({i, (i + 1) % n, {edgeValues[i]}});
  }
  return Sauhg(1, std::move(nodes), std::move(edges));
}

// Two triangles {0,1,2} and {3,4,5}; edge i of the list is the i-th edge in
// the order 0-1, 1-2, 2-0, 3-4, 4-5, 5-3.
Sauhg twoTriangles(const std::vector<double>& edgeValues) {
  std::vector<NodeSpec> nodes;
  for (std::size_t i = 0; i < 6; ++i) nodes.push_back({i, {1.0}});
  std::vector<EdgeSpec> edges = {{0, 1, {edgeValues[0]}}, {1, 2, {edgeValues[1]}},
                                 {2, 0, {edgeValues[2]}}, {3, 4, {edgeValues[3]}},
                                 {4, 5, {edgeValues[4]}}, {5, 3, {edgeValues[5]}}};
  return Sauhg(1, std::move(nodes), std::move(edges));
}

}  // namespace

std::vector<CounterexamplePair> counterexamples() {
  std::vector<CounterexamplePair> out;

  out.push_back({"c6-vs-2c3-uniform", cycleGraph(6, std::vector<double>(6, 1.0)),
                 twoTriangles(std::vector<double>(6, 1.0)), {true, true, false}});

  // Every hexagon node sees edge values {0,1}; node 2 of the first triangle
  // sees {1,1} and node 4 of the second sees {0,0}. Both graphs carry three
  // 0-edges and three 1-edges.
  out.push_back({"c6-vs-2c3-edge-attributed", cycleGraph(6, {0, 1, 0, 1, 0, 1}),
                 twoTriangles({0, 1, 1, 0, 0, 1}), {true, false, false}});

  {
    // A small attributed graph and a relabeled copy.
    std::vector<NodeSpec> nodes = {{0, {1.0}}, {1, {2.0}}, {2, {1.0}}, {3, {0.5}}, {4, {2.0}}};
    std::vector<EdgeSpec> edges = {{0, 1, {1.0}}, {1, 2, {0.0}}, {2, 3, {1.0}}, {3, 4, {0.0}},
                                   {4, 0, {1.0}}, {1, 3, {0.5}}};
    const std::array<NodeId, 5> perm = {13, 7, 42, 3, 20};
    std::vector<NodeSpec> permNodes;
    for (const auto& n : nodes) permNodes.push_back({perm[n.id], n.attr});
    std::vector<EdgeSpec> permEdges;
    for (const auto& e : edges) permEdges.push_back({perm[e.v], perm[e.u], e.attr});
    out.push_back({"relabeled-isomorphic", Sauhg(1, nodes, edges),
                   Sauhg(1, std::move(permNodes), std::move(permEdges)), {true, true, true}});
  }

  {
    std::vector<NodeSpec> nodes = {{1, {1.0}}, {2, {1.0}}, {3, {1.0}}};
    Sauhg triangle(1, nodes, {{1, 2, {1.0}}, {2, 3, {1.0}}, {3, 1, {1.0}}});
    Sauhg path(1, nodes, {{1, 2, {1.0}}, {2, 3, {1.0}}});
    out.push_back({"triangle-vs-path3", std::move(triangle), std::move(path), {false, false, false}});
  }
  return out;
}

std::string contentHash(const nlohmann::json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

template <class Graph>
std::string hashAll(const std::vector<Graph>& graphs) {
  nlohmann::json hashes = nlohmann::json::array();
  for (const auto& g : graphs) hashes.push_back(contentHash(toJson(g)));
  return contentHash(hashes);
}

}  // namespace

std::string corpusHash(const std::vector<Sauhg>& graphs) { return hashAll(graphs); }
std::string corpusHash(const std::vector<DynamicGraph>& graphs) { return hashAll(graphs); }

std::string writeCorpus(const std::filesystem::path& dir, const CorpusSpec& spec) {
  std::filesystem::create_directories(dir);
  nlohmann::json files = nlohmann::json::array();
  nlohmann::json hashes = nlohmann::json::array();
  auto emit = [&](std::size_t i, const nlohmann::json& g) {
    char name[32];
    std::snprintf(name, sizeof name, "graph_%05zu.json", i);
    writeJsonFile(dir / name, g);
    auto h = contentHash(g);
    files.push_back({{"file", name}, {"hash", h}});
    hashes.push_back(h);
  };
  if (spec.isDynamic()) {
    auto graphs = generateDynamic(spec);
    for (std::size_t i = 0; i < graphs.size(); ++i) emit(i, toJson(graphs[i]));
  } else {
    auto graphs = generateStatic(spec);
    for (std::size_t i = 0; i < graphs.size(); ++i) emit(i, toJson(graphs[i]));
  }
  auto hash = contentHash(hashes);
  writeJsonFile(dir / "manifest.json",
                {{"spec", toJson(spec)}, {"files", files}, {"corpus_hash", hash}});
  return hash;
}

LoadedCorpus loadCorpus(const std::filesystem::path& dir) {
  auto manifest = readJsonFile(dir / "manifest.json");
  LoadedCorpus out;
  out.spec = corpusSpecFromJson(manifest.at("spec"));
  for (const auto& f : manifest.at("files")) {
    auto j = readJsonFile(dir / f.at("file").get<std::string>());
    if (contentHash(j) != f.at("hash").get<std::string>()) {
      throw Error(ErrorCode::ParseError, "content hash mismatch for " + f.at("file").get<std::string>());
    }
    if (isDynamicJson(j)) {
      out.dynamicGraphs.push_back(dynamicFromJson(j));
    } else {
      out.staticGraphs.push_back(sauhgFromJson(j));
    }
  }
  out.hash = out.spec.isDynamic() ? corpusHash(out.dynamicGraphs) : corpusHash(out.staticGraphs);
  return out;
}

}  // namespace dynwl
