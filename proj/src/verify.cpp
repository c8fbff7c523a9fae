#include "dynwl/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "dynwl/error.hpp"
#include "dynwl/gnn.hpp"
#include "dynwl/graph_json.hpp"
#include "dynwl/oracle.hpp"
#include "dynwl/shrink.hpp"
#include "dynwl/transform.hpp"
#include "dynwl/unfolding.hpp"
#include "dynwl/wl.hpp"

namespace dynwl {

nlohmann::json VerdictReport::toJson(bool includeWallTime) const {
  auto tally = [](const Tally& t) { return nlohmann::json{{"checked", t.checked}, {"violations", t.violations}}; };
  nlohmann::json j = {{"suite", suite},
                      {"corpus_hash", corpusHash},
                      {"seed", seed},
                      {"cases_checked", casesChecked},
                      {"forward", tally(forward)},
                      {"backward", tally(backward)},
                      {"identity", tally(identity)},
                      {"violation_count", violationCount()},
                      {"failures", failures},
                      {"pass", pass()}};
  if (includeWallTime) j["wall_time_s"] = wallTimeSeconds;
  return j;
}

nlohmann::json toJson(const std::vector<VerdictReport>& reports, bool includeWallTime) {
  nlohmann::json arr = nlohmann::json::array();
  bool pass = true;
  for (const auto& r : reports) {
    arr.push_back(r.toJson(includeWallTime));
    pass = pass && r.pass();
  }
  return {{"reports", arr}, {"pass", pass}};
}

StaticCorpus makeStaticCorpus(std::vector<Sauhg> graphs) {
  StaticCorpus c{std::move(graphs), {}};
  c.hash = corpusHash(c.graphs);
  return c;
}

DynamicCorpus makeDynamicCorpus(std::vector<DynamicGraph> graphs) {
  DynamicCorpus c{std::move(graphs), {}};
  c.hash = corpusHash(c.graphs);
  return c;
}

std::vector<CorpusSpec> defaultStaticSpecs(std::uint64_t seed) {
  CorpusSpec a;
  a.seed = seed;
  a.count = 600;
  a.minNodes = 1;
  a.maxNodes = 8;
  a.edgeProbability = 0.35;
  a.attrDim = 1;
  a.attrAlphabetSize = 3;

  CorpusSpec b = a;
  b.seed = seed + 1;
  b.count = 400;
  b.attrDim = 2;
  b.attrAlphabetSize = 2;
  return {a, b};
}

CorpusSpec defaultDynamicSpec(std::uint64_t seed) {
  CorpusSpec s;
  s.seed = seed + 2;
  s.count = 300;
  s.minNodes = 1;
  s.maxNodes = 6;
  s.edgeProbability = 0.4;
  s.attrDim = 1;
  s.attrAlphabetSize = 2;
  s.timelineLen = 3;
  s.nodeChurnProb = 0.3;
  s.edgeChurnProb = 0.3;
  return s;
}

StaticCorpus defaultStaticCorpus(std::uint64_t seed) {
  std::vector<Sauhg> all;
  for (const auto& spec : defaultStaticSpecs(seed)) {
    auto part = generateStatic(spec);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return makeStaticCorpus(std::move(all));
}

DynamicCorpus defaultDynamicCorpus(std::uint64_t seed) {
  return makeDynamicCorpus(generateDynamic(defaultDynamicSpec(seed)));
}

namespace {

using Witness = std::function<nlohmann::json()>;

// Counters for one case. Witness factories run only for the first few
// violations, after all cases are merged.
class CaseTally {
 public:
  explicit CaseTally(std::size_t cap = 0) : cap_(cap) {}

  template <class MakeWitness>
  void iff(bool left, bool right, MakeWitness&& make) {
    if (left) {
      ++forward.checked;
      if (!right) {
        ++forward.violations;
        keep("forward", make);
      }
    }
    if (right) {
      ++backward.checked;
      if (!left) {
        ++backward.violations;
        keep("backward", make);
      }
    }
  }

  template <class MakeWitness>
  void require(bool ok, MakeWitness&& make) {
    ++identity.checked;
    if (!ok) {
      ++identity.violations;
      keep("identity", make);
    }
  }

  VerdictReport::Tally forward, backward, identity;
  std::vector<std::pair<std::string, Witness>> pending;

 private:
  template <class MakeWitness>
  void keep(const char* direction, MakeWitness& make) {
    if (pending.size() < cap_) pending.emplace_back(direction, Witness(make()));
  }

  std::size_t cap_;
};

void parallelFor(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(errorMutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

VerdictReport runSuite(const std::string& name, const std::string& hash, std::size_t cases,
                       const VerifyOptions& opt, const std::function<void(std::size_t, CaseTally&)>& check) {
  auto start = std::chrono::steady_clock::now();
  std::vector<CaseTally> results(cases, CaseTally(opt.maxWitnesses));
  parallelFor(cases, opt.threads, [&](std::size_t i) { check(i, results[i]); });

  VerdictReport r;
  r.suite = name;
  r.corpusHash = hash;
  r.seed = opt.seed;
  r.casesChecked = cases;
  auto add = [](VerdictReport::Tally& into, const VerdictReport::Tally& from) {
    into.checked += from.checked;
    into.violations += from.violations;
  };
  for (std::size_t i = 0; i < cases; ++i) {
    add(r.forward, results[i].forward);
    add(r.backward, results[i].backward);
    add(r.identity, results[i].identity);
    for (auto& [direction, witness] : results[i].pending) {
      if (r.failures.size() >= opt.maxWitnesses) break;
      nlohmann::json w = witness();
      w["case"] = i;
      w["direction"] = direction;
      r.failures.push_back(std::move(w));
    }
  }
  r.wallTimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t diameterOrZero(const Sauhg& g) { return g.empty() ? 0 : diameter(g); }

// Node-pair witness: the graph shrunk while `disagree` still holds for (u, v).
template <class Disagree>
nlohmann::json staticPairWitness(const Sauhg& g, NodeId u, NodeId v, Disagree disagree,
                                 nlohmann::json extra = nlohmann::json::object()) {
  Sauhg small = shrinkStatic(g, [&](const Sauhg& h) { return h.hasNode(u) && h.hasNode(v) && disagree(h); });
  extra["nodes"] = {u, v};
  extra["graph"] = toJson(small);
  return extra;
}

template <class Disagree>
nlohmann::json dynamicPairWitness(const DynamicGraph& dg, NodeId u, NodeId v, Disagree disagree,
                                  nlohmann::json extra = nlohmann::json::object()) {
  DynamicGraph small =
      shrinkDynamic(dg, [&](const DynamicGraph& h) { return h.hasNode(u) && h.hasNode(v) && disagree(h); });
  extra["nodes"] = {u, v};
  extra["graph"] = toJson(small);
  return extra;
}

template <class Graph, class Disagree, class Shrink>
nlohmann::json graphPairWitness(const Graph& a, const Graph& b, Disagree disagree, Shrink shrink) {
  Graph first = shrink(a, [&](const Graph& h) { return disagree(h, b); });
  Graph second = shrink(b, [&](const Graph& h) { return disagree(first, h); });
  return {{"graph", toJson(first)}, {"graph2", toJson(second)}};
}

bool treesEqualAt(const Sauhg& g, NodeId u, NodeId v, std::size_t depth) {
  TreeBuilder b(g);
  return b.build(g.indexOf(u), depth) == b.build(g.indexOf(v), depth);
}

bool colorsEqualAt(const Sauhg& g, NodeId u, NodeId v, std::optional<std::size_t> iteration) {
  auto h = runAWL(g);
  return iteration ? h.color(u, *iteration) == h.color(v, *iteration) : h.stableColor(u) == h.stableColor(v);
}

}  // namespace

VerdictReport verifyAutAwl(const StaticCorpus& corpus, const VerifyOptions& opt) {
  const auto pairs = counterexamples();
  const std::size_t n = corpus.graphs.size();
  return runSuite("aut-awl", corpus.hash, n + pairs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    if (c >= n) {
      const auto& p = pairs[c - n];
      for (NodeId u : p.first.nodes()) {
        for (NodeId v : p.second.nodes()) {
          tally.iff(autEquivalent(p.first, u, p.second, v), awlNodeEquivalent(p.first, u, p.second, v), [&] {
            return [name = p.name, u, v] { return nlohmann::json{{"pair", name}, {"nodes", {u, v}}}; };
          });
        }
      }
      return;
    }
    const Sauhg& g = corpus.graphs[c];
    if (g.empty()) return;
    const std::size_t depth = diameter(g) + 1;
    TreeBuilder builder(g);
    std::vector<TreeId> trees;
    for (std::size_t i = 0; i < g.nodeCount(); ++i) trees.push_back(builder.build(i, depth));
    const auto colors = runAWL(g).stableColors();
    for (std::size_t i = 0; i < g.nodeCount(); ++i) {
      for (std::size_t j = i + 1; j < g.nodeCount(); ++j) {
        tally.iff(trees[i] == trees[j], colors[i] == colors[j], [&] {
          return [g, u = g.idAt(i), v = g.idAt(j)] {
            return staticPairWitness(g, u, v, [&](const Sauhg& h) {
              return treesEqualAt(h, u, v, diameter(h) + 1) != colorsEqualAt(h, u, v, std::nullopt);
            });
          };
        });
      }
    }
    if (g.nodeCount() <= kAutPartitionLimit) {
      tally.require(exhaustivePartition(g, Relation::Aut) == partitionByKey(g.nodes(), trees), [&] {
        return [g] { return nlohmann::json{{"check", "brute-force tree partition"}, {"graph", toJson(g)}}; };
      });
    }
  });
}

VerdictReport verifyTreeColorDepth(const StaticCorpus& corpus, std::size_t maxDepth, const VerifyOptions& opt) {
  return runSuite("tree-color-depth", corpus.hash, corpus.graphs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    const Sauhg& g = corpus.graphs[c];
    if (g.empty()) return;
    TreeBuilder builder(g);
    const auto hist = runAWL(g);
    for (std::size_t d = 0; d <= maxDepth; ++d) {
      const auto& colors = hist.colorsAt(d);
      std::vector<TreeId> trees;
      for (std::size_t i = 0; i < g.nodeCount(); ++i) trees.push_back(builder.build(i, d));
      for (std::size_t i = 0; i < g.nodeCount(); ++i) {
        for (std::size_t j = i + 1; j < g.nodeCount(); ++j) {
          tally.iff(trees[i] == trees[j], colors[i] == colors[j], [&] {
            return [g, d, u = g.idAt(i), v = g.idAt(j)] {
              return staticPairWitness(
                  g, u, v,
                  [&](const Sauhg& h) { return treesEqualAt(h, u, v, d) != colorsEqualAt(h, u, v, d); },
                  {{"depth", d}});
            };
          });
        }
      }
    }
  });
}

VerdictReport verifyDepthSufficiency(const StaticCorpus& corpus, const VerifyOptions& opt) {
  auto equalAtAllDeeper = [](const Sauhg& h, NodeId u, NodeId v) {
    std::size_t r = diameter(h);
    TreeBuilder b(h);
    for (std::size_t d = r + 2; d <= 2 * (r + 1); ++d) {
      if (b.build(h.indexOf(u), d) != b.build(h.indexOf(v), d)) return false;
    }
    return true;
  };
  return runSuite("depth-sufficiency", corpus.hash, corpus.graphs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    const Sauhg& g = corpus.graphs[c];
    if (g.empty()) return;
    const std::size_t r = diameter(g);
    TreeBuilder builder(g);
    for (std::size_t i = 0; i < g.nodeCount(); ++i) {
      for (std::size_t j = i + 1; j < g.nodeCount(); ++j) {
        bool atR = builder.build(i, r + 1) == builder.build(j, r + 1);
        bool deeper = true;
        for (std::size_t d = r + 2; d <= 2 * (r + 1) && deeper; ++d) {
          deeper = builder.build(i, d) == builder.build(j, d);
        }
        tally.iff(atR, deeper, [&] {
          return [g, u = g.idAt(i), v = g.idAt(j), equalAtAllDeeper] {
            return staticPairWitness(g, u, v, [&](const Sauhg& h) {
              return treesEqualAt(h, u, v, diameter(h) + 1) != equalAtAllDeeper(h, u, v);
            });
          };
        });
      }
    }
  });
}

namespace {

std::size_t dynamicDepthBound(const DynamicGraph& dg, const Sauhg& statified) {
  std::size_t r = diameterOrZero(statified);
  for (const auto& s : dg.snapshots()) r = std::max(r, diameterOrZero(s));
  return r + 1;
}

bool dynTreesEqualAt(const DynamicGraph& dg, NodeId u, NodeId v, std::size_t depth) {
  DynTreeBuilder b(dg);
  std::vector<std::size_t> depths(dg.timelineLength(), depth);
  return b.buildSeq(u, depths) == b.buildSeq(v, depths);
}

bool dynColorsEqualAt(const DynamicGraph& dg, NodeId u, NodeId v, std::optional<std::size_t> iteration) {
  auto h = runDWL(dg);
  return h.colorVector(u, iteration) == h.colorVector(v, iteration);
}

}  // namespace

VerdictReport verifyDynamicStatic(const DynamicCorpus& corpus, const VerifyOptions& opt) {
  const auto& graphs = corpus.graphs;
  std::vector<Sauhg> statified;
  for (const auto& dg : graphs) statified.push_back(makeStatic(dg));

  return runSuite("dynamic-static", corpus.hash, graphs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    const DynamicGraph& dg = graphs[c];
    const Sauhg& s = statified[c];
    tally.require(makeDynamic(s, dg.timelineLength(), dg.attrDim()) == dg, [&] {
      return [dg] { return nlohmann::json{{"check", "round trip"}, {"graph", toJson(dg)}}; };
    });

    const auto& nodes = dg.unionNodes();
    if (!nodes.empty()) {
      const std::size_t bound = dynamicDepthBound(dg, s);
      DynTreeBuilder dynTrees(dg);
      TreeBuilder staticTrees(s);
      const auto dynColors = runDWL(dg);
      const auto staticColors = runAWL(s);
      for (std::size_t d = 0; d <= bound; ++d) {
        std::vector<std::size_t> depths(dg.timelineLength(), d);
        std::vector<std::vector<TreeId>> seqs;
        for (NodeId v : nodes) seqs.push_back(dynTrees.buildSeq(v, depths));
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            NodeId u = nodes[i];
            NodeId v = nodes[j];
            tally.iff(seqs[i] == seqs[j], staticTrees.build(i, d) == staticTrees.build(j, d), [&] {
              return [dg, u, v, d] {
                return dynamicPairWitness(
                    dg, u, v,
                    [&](const DynamicGraph& h) {
                      return dynTreesEqualAt(h, u, v, d) != treesEqualAt(makeStatic(h), u, v, d);
                    },
                    {{"relation", "trees"}, {"depth", d}});
              };
            });
            tally.iff(dynColors.colorVector(u, d) == dynColors.colorVector(v, d),
                      staticColors.color(u, d) == staticColors.color(v, d), [&] {
                        return [dg, u, v, d] {
                          return dynamicPairWitness(
                              dg, u, v,
                              [&](const DynamicGraph& h) {
                                return dynColorsEqualAt(h, u, v, d) != colorsEqualAt(makeStatic(h), u, v, d);
                              },
                              {{"relation", "colors"}, {"iteration", d}});
                        };
                      });
          }
        }
      }
    }

    auto disagree = [](const DynamicGraph& a, const DynamicGraph& b) {
      return dwlEquivalent(a, b) != awlGraphEquivalent(makeStatic(a), makeStatic(b));
    };
    for (std::size_t j = c + 1; j < graphs.size(); ++j) {
      if (graphs[j].timelineLength() != dg.timelineLength()) continue;
      tally.iff(dwlEquivalent(dg, graphs[j]), awlGraphEquivalent(s, statified[j]), [&] {
        return [a = dg, b = graphs[j], j, disagree] {
          auto w = graphPairWitness(a, b, disagree, shrinkDynamic);
          w["relation"] = "graph-level colors";
          w["other_case"] = j;
          return w;
        };
      });
    }
  });
}

VerdictReport verifyDwlDut(const DynamicCorpus& corpus, const VerifyOptions& opt) {
  const auto& graphs = corpus.graphs;
  return runSuite("dwl-dut", corpus.hash, graphs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    auto arena = std::make_shared<TreeArena>();
    DynTreeBuilder left(graphs[c], arena);
    for (std::size_t j = c; j < graphs.size(); ++j) {
      if (graphs[j].timelineLength() != graphs[c].timelineLength()) continue;
      DynTreeBuilder right(graphs[j], arena);
      tally.iff(dwlEquivalent(graphs[c], graphs[j]), dutGraphEquivalent(left, right), [&] {
        return [a = graphs[c], b = graphs[j], j] {
          auto w = graphPairWitness(
              a, b,
              [](const DynamicGraph& x, const DynamicGraph& y) {
                return dwlEquivalent(x, y) != dutGraphEquivalent(x, y);
              },
              shrinkDynamic);
          w["other_case"] = j;
          return w;
        };
      });
    }
  });
}

VerdictReport verifyHierarchy(const VerifyOptions& opt) {
  const auto pairs = counterexamples();
  nlohmann::json names = nlohmann::json::array();
  for (const auto& p : pairs) names.push_back(p.name);
  return runSuite("wl-hierarchy", contentHash(names), pairs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    const auto& p = pairs[c];
    auto verdict = [&](const char* test, bool expected, bool actual) {
      tally.require(expected == actual, [&] {
        return [name = p.name, test, expected, actual] {
          return nlohmann::json{{"pair", name}, {"test", test}, {"expected", expected}, {"actual", actual}};
        };
      });
    };
    verdict("1wl", p.expected.wl1Equivalent, wl1GraphEquivalent(p.first, p.second));
    verdict("awl", p.expected.awlEquivalent, awlGraphEquivalent(p.first, p.second));
    auto iso = bruteForceIsomorphic(p.first, p.second);
    verdict("iso", p.expected.isomorphic, iso.has_value());
    if (iso) verdict("iso-witness", true, isValidWitness(p.first, p.second, *iso));
  });
}

VerdictReport verifySgnnAttainment(const StaticCorpus& corpus, const VerifyOptions& opt) {
  constexpr std::size_t kStateDim = 3;
  return runSuite("sgnn-attainment", corpus.hash, corpus.graphs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    const Sauhg& g = corpus.graphs[c];
    if (g.empty()) return;
    const std::size_t layers = diameter(g) + 1;
    const auto emb = runSgnnCodec(g, layers);
    TreeBuilder builder(g);
    for (std::size_t k = 0; k <= layers; ++k) {
      for (std::size_t i = 0; i < g.nodeCount(); ++i) {
        tally.require(emb.perIteration[k][i] == builder.arena()->code(builder.build(i, k)), [&] {
          return [g, k, v = g.idAt(i)] {
            return nlohmann::json{{"check", "codec state vs tree code"}, {"layer", k}, {"node", v},
                                  {"graph", toJson(g)}};
          };
        });
      }
    }

    const auto hist = runAWL(g);
    const auto& stable = hist.stableColors();
    const auto& last = emb.perIteration.back();
    for (std::size_t i = 0; i < g.nodeCount(); ++i) {
      for (std::size_t j = i + 1; j < g.nodeCount(); ++j) {
        tally.iff(last[i] == last[j], stable[i] == stable[j], [&] {
          return [g, u = g.idAt(i), v = g.idAt(j)] {
            return staticPairWitness(g, u, v, [&](const Sauhg& h) {
              const auto e = runSgnnCodec(h, diameter(h) + 1);
              return (e.at(u, e.perIteration.size() - 1) == e.at(v, e.perIteration.size() - 1)) !=
                     colorsEqualAt(h, u, v, std::nullopt);
            });
          };
        });
      }
    }

    // Numeric states never separate nodes with equal colors, bit for bit.
    const auto params = NumericParams::random(g.attrDim(), kStateDim, layers, mix(opt.seed, c));
    const auto num = runSgnnNumeric(g, layers, params);
    for (std::size_t k = 0; k <= layers; ++k) {
      const auto& colors = hist.colorsAt(k);
      for (std::size_t i = 0; i < g.nodeCount(); ++i) {
        for (std::size_t j = i + 1; j < g.nodeCount(); ++j) {
          if (colors[i] != colors[j]) continue;
          const auto& a = num.perIteration[k][i];
          const auto& b = num.perIteration[k][j];
          bool same = a.size() == b.size() &&
                      std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
          tally.require(same, [&] {
            return [g, k, u = g.idAt(i), v = g.idAt(j)] {
              return nlohmann::json{{"check", "numeric state split equal colors"}, {"layer", k},
                                    {"nodes", {u, v}}, {"graph", toJson(g)}};
            };
          });
        }
      }
    }
  });
}

namespace {

struct PatternSet {
  std::vector<std::string> codes;
  // Pattern index -> (graph index, node id, timestamp).
  std::vector<std::tuple<std::size_t, NodeId, std::size_t>> origin;
  std::vector<std::string> distinct;
};

void finish(PatternSet& p) {
  p.distinct = p.codes;
  std::sort(p.distinct.begin(), p.distinct.end());
  p.distinct.erase(std::unique(p.distinct.begin(), p.distinct.end()), p.distinct.end());
}

PatternSet staticPatterns(const StaticCorpus& corpus) {
  PatternSet p;
  for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
    const Sauhg& g = corpus.graphs[gi];
    if (g.empty()) continue;
    auto emb = runSgnnCodec(g, diameter(g) + 1);
    for (std::size_t i = 0; i < g.nodeCount(); ++i) {
      p.codes.push_back(emb.perIteration.back()[i].bytes);
      p.origin.emplace_back(gi, g.idAt(i), 0);
    }
  }
  finish(p);
  return p;
}

PatternSet dynamicPatterns(const DynamicCorpus& corpus) {
  PatternSet p;
  for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
    const auto& dg = corpus.graphs[gi];
    if (dg.timelineLength() == 0) continue;
    auto hist = runDgnnCodec(dg);
    for (std::size_t t = 0; t < dg.timelineLength(); ++t) {
      for (std::size_t i = 0; i < hist.nodes.size(); ++i) {
        p.codes.push_back(hist.q[t][i].bytes);
        p.origin.emplace_back(gi, hist.nodes[i], t);
      }
    }
  }
  finish(p);
  return p;
}

// Target 0 is constant; odd targets take 16 levels, even ones reals in [-1, 1).
TargetFunction randomTarget(const std::vector<std::string>& codes, std::uint64_t seed, std::size_t index) {
  CorpusRng rng(mix(seed, index));
  TargetFunction f;
  for (const auto& code : codes) {
    double value = index == 0         ? 1.0
                   : index % 2 == 1 ? static_cast<double>(rng.below(16))
                                    : 2.0 * rng.unit() - 1.0;
    f.table.emplace(code, value);
  }
  return f;
}

// First group of at least two patterns sharing a code, starting the search at `start`.
std::optional<std::pair<std::size_t, std::size_t>> sharedCodePair(const PatternSet& p, std::size_t start) {
  std::map<std::string, std::size_t> first;
  std::vector<std::pair<std::size_t, std::size_t>> found;
  for (std::size_t i = 0; i < p.codes.size(); ++i) {
    auto [it, inserted] = first.emplace(p.codes[i], i);
    if (!inserted) found.emplace_back(it->second, i);
  }
  if (found.empty()) return std::nullopt;
  return found[start % found.size()];
}

}  // namespace

VerdictReport verifyApprox(const StaticCorpus& corpus, const DynamicCorpus& dynCorpus, std::size_t nTargets,
                           const VerifyOptions& opt) {
  constexpr double kEpsilon = 1e-9;
  const PatternSet sets[2] = {staticPatterns(corpus), dynamicPatterns(dynCorpus)};
  const char* kinds[2] = {"static", "dynamic"};
  const std::string hash = contentHash(nlohmann::json::array({corpus.hash, dynCorpus.hash}));

  return runSuite("approximation", hash, nTargets, opt, [&](std::size_t t, CaseTally& tally) {
    for (int s = 0; s < 2; ++s) {
      const auto& p = sets[s];
      if (p.codes.empty()) continue;
      auto target = randomTarget(p.distinct, opt.seed + static_cast<std::uint64_t>(s), t);
      auto codec = fitReadout(p.codes, target, Backend::Codec);
      tally.require(codec.maxError == 0.0, [&] {
        return [kind = kinds[s], t, e = codec.maxError] {
          return nlohmann::json{{"patterns", kind}, {"target", t}, {"backend", "codec"}, {"max_error", e}};
        };
      });
      auto numeric = fitReadout(p.codes, target, Backend::Numeric);
      tally.require(numeric.maxError <= kEpsilon, [&] {
        return [kind = kinds[s], t, e = numeric.maxError] {
          return nlohmann::json{{"patterns", kind}, {"target", t}, {"backend", "numeric"}, {"max_error", e}};
        };
      });

      // A node-level target separating two patterns with one code is not a
      // function of the code.
      if (auto pair = sharedCodePair(p, t)) {
        std::vector<std::pair<std::string, double>> samples = {{p.codes[pair->first], 0.0},
                                                               {p.codes[pair->second], 1.0}};
        bool rejected = false;
        try {
          targetFromSamples(samples);
        } catch (const Error& e) {
          rejected = e.code() == ErrorCode::InfeasibleTarget;
        }
        tally.require(rejected, [&] {
          return [kind = kinds[s], t] {
            return nlohmann::json{{"patterns", kind}, {"target", t}, {"check", "splitting target accepted"}};
          };
        });
      }

      // Dropping one code from the domain must surface as TargetUndefined.
      auto partial = target;
      partial.table.erase(p.codes[t % p.codes.size()]);
      bool undefined = false;
      try {
        fitReadout(p.codes, partial, Backend::Codec);
      } catch (const Error& e) {
        undefined = e.code() == ErrorCode::TargetUndefined;
      }
      tally.require(undefined, [&] {
        return [kind = kinds[s], t] {
          return nlohmann::json{{"patterns", kind}, {"target", t}, {"check", "partial target accepted"}};
        };
      });
    }
  });
}

namespace {

// Invariant that isomorphic graphs share: sizes, attribute multisets and degree sequence.
std::string isoInvariant(const Sauhg& g) {
  std::vector<std::string> nodeAttrs;
  std::vector<std::size_t> degrees;
  for (std::size_t i = 0; i < g.nodeCount(); ++i) {
    nodeAttrs.push_back(canonicalBytes(g.attrAt(i)));
    degrees.push_back(g.denseNeighbors(i).size());
  }
  std::vector<std::string> edgeAttrs;
  for (std::size_t e = 0; e < g.edgeCount(); ++e) edgeAttrs.push_back(canonicalBytes(g.edgeAttrAt(e)));
  std::sort(nodeAttrs.begin(), nodeAttrs.end());
  std::sort(edgeAttrs.begin(), edgeAttrs.end());
  std::sort(degrees.begin(), degrees.end());
  nlohmann::json j = {{"n", g.nodeCount()}, {"m", g.edgeCount()}, {"k", g.attrDim()}, {"deg", degrees}};
  std::string out = j.dump();
  for (const auto& a : nodeAttrs) out += "|" + a;
  out += "#";
  for (const auto& a : edgeAttrs) out += "|" + a;
  return out;
}

Sauhg relabeled(const Sauhg& g, std::uint64_t seed) {
  std::vector<NodeId> targets;
  for (std::size_t i = 0; i < g.nodeCount(); ++i) targets.push_back(100 + 7 * i);
  CorpusRng rng(seed);
  for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[rng.below(i)]);
  std::map<NodeId, NodeId> to;
  for (std::size_t i = 0; i < g.nodeCount(); ++i) to[g.idAt(i)] = targets[i];
  std::vector<NodeSpec> nodes;
  for (auto& n : g.nodeSpecs()) nodes.push_back({to[n.id], n.attr});
  std::vector<EdgeSpec> edges;
  for (auto& e : g.edgeSpecs()) edges.push_back({to[e.v], to[e.u], e.attr});
  return Sauhg(g.attrDim(), std::move(nodes), std::move(edges));
}

}  // namespace

VerdictReport verifyOracleSoundness(const StaticCorpus& corpus, const VerifyOptions& opt) {
  const auto& graphs = corpus.graphs;
  std::vector<std::string> invariants;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    invariants.push_back(isoInvariant(graphs[i]));
    groups[invariants.back()].push_back(i);
  }

  return runSuite("oracle-soundness", corpus.hash, graphs.size(), opt, [&](std::size_t c, CaseTally& tally) {
    const Sauhg& g = graphs[c];
    auto check = [&](const Sauhg& other, std::optional<std::size_t> j) {
      auto iso = bruteForceIsomorphic(g, other);
      if (!iso) return;
      tally.require(isValidWitness(g, other, *iso), [&] {
        return [a = g, b = other] {
          return nlohmann::json{{"check", "invalid witness"}, {"graph", toJson(a)}, {"graph2", toJson(b)}};
        };
      });
      // Strict isomorphism => attributed WL equivalence; only this direction is claimed.
      ++tally.forward.checked;
      if (!awlGraphEquivalent(g, other)) {
        ++tally.forward.violations;
        if (tally.pending.size() < opt.maxWitnesses) {
          tally.pending.emplace_back("forward", [a = g, b = other, j] {
            auto w = graphPairWitness(
                a, b,
                [](const Sauhg& x, const Sauhg& y) {
                  return bruteForceIsomorphic(x, y).has_value() && !awlGraphEquivalent(x, y);
                },
                shrinkStatic);
            if (j) w["other_case"] = *j;
            return w;
          });
        }
      }
    };

    Sauhg copy = relabeled(g, mix(opt.seed, c));
    tally.require(bruteForceIsomorphic(g, copy).has_value(), [&] {
      return [g] { return nlohmann::json{{"check", "relabeled copy not isomorphic"}, {"graph", toJson(g)}}; };
    });
    check(copy, std::nullopt);
    for (std::size_t j : groups.at(invariants[c])) {
      if (j > c) check(graphs[j], j);
    }
  });
}

std::vector<VerdictReport> verifyAll(const StaticCorpus& corpus, const DynamicCorpus& dynCorpus,
                                     const VerifyOptions& opt) {
  std::vector<VerdictReport> out;
  out.push_back(verifyAutAwl(corpus, opt));
  out.push_back(verifyTreeColorDepth(corpus, 6, opt));
  out.push_back(verifyDepthSufficiency(corpus, opt));
  out.push_back(verifyDynamicStatic(dynCorpus, opt));
  out.push_back(verifyDwlDut(dynCorpus, opt));
  out.push_back(verifyHierarchy(opt));
  out.push_back(verifySgnnAttainment(corpus, opt));
  out.push_back(verifyApprox(corpus, dynCorpus, 50, opt));
  out.push_back(verifyOracleSoundness(corpus, opt));
  return out;
}

}  // namespace dynwl
