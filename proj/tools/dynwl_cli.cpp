// Command-line front end: graph transforms, WL runs, unfolding trees, the
// isomorphism oracle, reference GNNs, corpus generation and the verify suites.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynwl/corpus.hpp"
#include "dynwl/error.hpp"
#include "dynwl/gnn.hpp"
#include "dynwl/graph_json.hpp"
#include "dynwl/oracle.hpp"
#include "dynwl/transform.hpp"
#include "dynwl/unfolding.hpp"
#include "dynwl/verify.hpp"
#include "dynwl/wl.hpp"

using namespace dynwl;
using nlohmann::json;

namespace {

// Exit codes: 0 success / "yes", 1 a clean "no" verdict, 2 usage or input error.
int g_exit = 0;

void emit(const json& j, const std::string& outPath) {
  if (outPath.empty() || outPath == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    writeJsonFile(outPath, j);
  }
}

json historyJson(const ColorHistory& h) {
  json j = {{"nodes", h.nodes}, {"iterations", h.perIteration}};
  j["stable_at"] = h.stableAt ? json(*h.stableAt) : json(nullptr);
  j["stable_partition"] = h.stablePartition();
  return j;
}

std::string dotOf(const UTree& t) {
  std::ostringstream out;
  out << "digraph unfolding {\n";
  std::set<TreeId> seen;
  std::vector<TreeId> stack{t.id()};
  const auto& arena = *t.arena();
  auto labelOf = [](const RootLabel& l) {
    if (l.kind == RootKind::Absent) return std::string("⊥");
    if (l.kind == RootKind::Void) return std::string("void");
    return json(l.attr).dump();
  };
  while (!stack.empty()) {
    TreeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const auto& n = arena.node(id);
    out << "  t" << id << " [label=\"" << labelOf(n.label) << "\"];\n";
    for (const auto& c : n.children) {
      out << "  t" << id << " -> t" << c.subtree << " [label=\"" << json(arena.edgeAttr(c.edgeLabel)).dump()
          << "\"];\n";
      stack.push_back(c.subtree);
    }
  }
  out << "}\n";
  return out.str();
}

json vectorJson(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynwl: Weisfeiler-Lehman refinement, unfolding trees and reference GNNs for dynamic graphs"};
  app.require_subcommand(1);

  // statify / dynamify
  std::string in, in2, out;
  auto* statify = app.add_subcommand("statify", "Encode a dynamic graph as a static graph with time-series attributes");
  statify->add_option("input", in, "dynamic graph JSON")->required();
  statify->add_option("-o,--output", out, "output file (default stdout)");
  statify->callback([&] { emit(toJson(makeStatic(dynamicFromJson(readJsonFile(in)))), out); });

  std::size_t timeline = 0, attrDim = 0;
  auto* dynamify = app.add_subcommand("dynamify", "Decode a statified graph back into snapshots");
  dynamify->add_option("input", in, "static graph JSON")->required();
  dynamify->add_option("--timeline", timeline, "number of snapshots")->required();
  dynamify->add_option("--attr-dim", attrDim, "attribute dimension per snapshot")->required();
  dynamify->add_option("-o,--output", out, "output file (default stdout)");
  dynamify->callback([&] { emit(toJson(makeDynamic(sauhgFromJson(readJsonFile(in)), timeline, attrDim)), out); });

  // wl
  auto* wl = app.add_subcommand("wl", "Color refinement");
  wl->require_subcommand(1);
  std::string variant = "awl", report;
  std::optional<std::size_t> maxIter;
  bool pad = false;
  auto* wlRun = wl->add_subcommand("run", "Run a refinement and print the color history");
  wlRun->add_option("--variant", variant)->check(CLI::IsMember({"1wl", "awl", "dwl"}));
  wlRun->add_option("--max-iter", maxIter);
  wlRun->add_option("--report", report, "write the history here instead of stdout");
  wlRun->add_option("graph", in)->required();
  wlRun->callback([&] {
    auto j = readJsonFile(in);
    if (variant == "dwl") {
      auto h = runDWL(dynamicFromJson(j), maxIter);
      json per = json::array();
      for (const auto& t : h.perTimestamp) per.push_back(historyJson(t));
      emit({{"variant", variant}, {"nodes", h.nodes}, {"timestamps", per}}, report);
    } else {
      auto g = sauhgFromJson(j);
      auto h = variant == "1wl" ? run1WL(g, maxIter) : runAWL(g, maxIter);
      auto hj = historyJson(h);
      hj["variant"] = variant;
      emit(hj, report);
    }
  });
  auto* wlCompare = wl->add_subcommand("compare", "Graph-level equivalence; exit 0 iff equivalent");
  wlCompare->add_option("--variant", variant)->check(CLI::IsMember({"1wl", "awl", "dwl"}));
  wlCompare->add_flag("--pad", pad, "pad differing timelines with empty snapshots");
  wlCompare->add_option("first", in)->required();
  wlCompare->add_option("second", in2)->required();
  wlCompare->callback([&] {
    auto a = readJsonFile(in);
    auto b = readJsonFile(in2);
    bool eq = variant == "dwl"   ? dwlEquivalent(dynamicFromJson(a), dynamicFromJson(b), pad)
              : variant == "1wl" ? wl1GraphEquivalent(sauhgFromJson(a), sauhgFromJson(b))
                                 : awlGraphEquivalent(sauhgFromJson(a), sauhgFromJson(b));
    emit({{"variant", variant}, {"equivalent", eq}}, "");
    g_exit = eq ? 0 : 1;
  });

  // tree
  auto* tree = app.add_subcommand("tree", "Unfolding trees");
  tree->require_subcommand(1);
  NodeId node = 0, node2 = 0;
  std::size_t depth = 0;
  bool dot = false;
  auto* treeBuild = tree->add_subcommand("build", "Canonical code of T_v^d (per snapshot for dynamic graphs)");
  treeBuild->add_option("--node", node)->required();
  treeBuild->add_option("--depth", depth)->required();
  treeBuild->add_flag("--dot", dot, "print Graphviz DOT instead of codes");
  treeBuild->add_option("graph", in)->required();
  treeBuild->callback([&] {
    auto j = readJsonFile(in);
    if (isDynamicJson(j)) {
      auto seq = buildDynTrees(dynamicFromJson(j), node, depth);
      if (dot) {
        for (const auto& t : seq) std::cout << dotOf(t);
        return;
      }
      json codes = json::array();
      for (const auto& t : seq) codes.push_back(t.code().hex());
      emit({{"node", node}, {"depth", depth}, {"codes", codes}, {"sequence_code", seqCode(seq).hex()}}, "");
    } else {
      auto t = buildAttrTree(sauhgFromJson(j), node, depth);
      if (dot) {
        std::cout << dotOf(t);
        return;
      }
      emit({{"node", node}, {"depth", depth}, {"height", t.height()}, {"code", t.code().hex()}}, "");
    }
  });
  auto* treeCompare = tree->add_subcommand("compare", "Unfolding-tree equivalence of two nodes; exit 0 iff equal");
  treeCompare->add_option("first", in)->required();
  treeCompare->add_option("node", node)->required();
  treeCompare->add_option("second", in2)->required();
  treeCompare->add_option("other-node", node2)->required();
  treeCompare->callback([&] {
    auto a = readJsonFile(in);
    auto b = readJsonFile(in2);
    bool eq = isDynamicJson(a) ? dutEquivalent(dynamicFromJson(a), node, dynamicFromJson(b), node2)
                               : autEquivalent(sauhgFromJson(a), node, sauhgFromJson(b), node2);
    emit({{"equivalent", eq}}, "");
    g_exit = eq ? 0 : 1;
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Brute-force ground truth");
  oracle->require_subcommand(1);
  std::string mode = "strict";
  auto* iso = oracle->add_subcommand("iso", "Isomorphism test; exit 0 iff isomorphic");
  iso->add_option("--mode", mode)->check(CLI::IsMember({"strict", "renaming"}));
  iso->add_option("first", in)->required();
  iso->add_option("second", in2)->required();
  iso->callback([&] {
    auto w = bruteForceIsomorphic(sauhgFromJson(readJsonFile(in)), sauhgFromJson(readJsonFile(in2)),
                                  mode == "strict" ? AttributeMode::Strict : AttributeMode::Renaming);
    json j = {{"isomorphic", w.has_value()}, {"mode", mode}};
    if (w) {
      json pairs = json::array();
      for (const auto& [a, b] : w->nodeBijection) pairs.push_back({a, b});
      j["bijection"] = pairs;
    }
    emit(j, "");
    g_exit = w ? 0 : 1;
  });

  // gnn
  auto* gnn = app.add_subcommand("gnn", "Reference message-passing networks");
  gnn->require_subcommand(1);
  std::string backend = "codec", paramsPath, targetPath, patternsDir;
  std::size_t layers = 1, stateDim = 2;
  std::vector<std::size_t> layerList;
  std::uint64_t seed = 1;
  auto loadParams = [&](std::size_t k, std::size_t count) {
    return paramsPath.empty() ? NumericParams::random(k, stateDim, count, seed)
                              : numericParamsFromJson(readJsonFile(paramsPath));
  };
  auto* gnnRun = gnn->add_subcommand("run", "Static GNN embeddings per layer");
  gnnRun->add_option("--backend", backend)->check(CLI::IsMember({"codec", "numeric"}));
  gnnRun->add_option("--layers", layers)->required();
  gnnRun->add_option("--params", paramsPath, "numeric weights JSON (default: random from --seed)");
  gnnRun->add_option("--state-dim", stateDim);
  gnnRun->add_option("--seed", seed);
  gnnRun->add_option("graph", in)->required();
  gnnRun->callback([&] {
    auto g = sauhgFromJson(readJsonFile(in));
    json layersOut = json::array();
    if (backendFromString(backend) == Backend::Codec) {
      auto emb = runSgnnCodec(g, layers);
      for (const auto& row : emb.perIteration) {
        json r = json::array();
        for (const auto& c : row) r.push_back(c.hex());
        layersOut.push_back(r);
      }
      emit({{"backend", backend}, {"nodes", emb.nodes}, {"layers", layersOut}}, "");
    } else {
      auto emb = runSgnnNumeric(g, layers, loadParams(g.attrDim(), layers));
      for (const auto& row : emb.perIteration) {
        json r = json::array();
        for (const auto& v : row) r.push_back(vectorJson(v));
        layersOut.push_back(r);
      }
      emit({{"backend", backend}, {"nodes", emb.nodes}, {"layers", layersOut}}, "");
    }
  });
  auto* gnnDyn = gnn->add_subcommand("dyn-run", "Dynamic GNN recurrent states per timestamp");
  gnnDyn->add_option("--backend", backend)->check(CLI::IsMember({"codec", "numeric"}));
  gnnDyn->add_option("--layers", layerList, "layers per snapshot (default: diameter + 1)");
  gnnDyn->add_option("--params", paramsPath);
  gnnDyn->add_option("--state-dim", stateDim);
  gnnDyn->add_option("--seed", seed);
  gnnDyn->add_option("graph", in)->required();
  gnnDyn->callback([&] {
    auto dg = dynamicFromJson(readJsonFile(in));
    std::optional<std::vector<std::size_t>> per;
    if (!layerList.empty()) per = layerList;
    json q = json::array();
    if (backendFromString(backend) == Backend::Codec) {
      auto h = runDgnnCodec(dg, per);
      for (const auto& row : h.q) {
        json r = json::array();
        for (const auto& c : row) r.push_back(c.hex());
        q.push_back(r);
      }
      emit({{"backend", backend}, {"nodes", h.nodes}, {"q", q}}, "");
    } else {
      auto depths = per.value_or(defaultLayers(dg));
      std::size_t most = 0;
      for (auto d : depths) most = std::max(most, d);
      auto h = runDgnnNumeric(dg, loadParams(dg.attrDim(), most), per);
      for (const auto& row : h.q) {
        json r = json::array();
        for (const auto& v : row) r.push_back(vectorJson(v));
        q.push_back(r);
      }
      emit({{"backend", backend}, {"nodes", h.nodes}, {"q", q}}, "");
    }
  });
  auto* gnnFit = gnn->add_subcommand("fit", "Fit a readout to a code-level target on a corpus directory");
  gnnFit->add_option("--patterns", patternsDir, "corpus directory (corpus generate output)")->required();
  gnnFit->add_option("--target", targetPath, "target JSON {\"entries\": [{\"code\": hex, \"value\": x}]}")->required();
  gnnFit->add_option("--backend", backend)->check(CLI::IsMember({"codec", "numeric"}));
  gnnFit->callback([&] {
    auto corpus = loadCorpus(patternsDir);
    std::vector<std::string> codes;
    for (const auto& g : corpus.staticGraphs) {
      if (g.empty()) continue;
      auto emb = runSgnnCodec(g, diameter(g) + 1);
      for (const auto& c : emb.perIteration.back()) codes.push_back(c.bytes);
    }
    for (const auto& dg : corpus.dynamicGraphs) {
      auto h = runDgnnCodec(dg);
      for (const auto& row : h.q) {
        for (const auto& c : row) codes.push_back(c.bytes);
      }
    }
    auto fit = fitReadout(codes, targetFromJson(readJsonFile(targetPath)), backendFromString(backend));
    emit({{"backend", backend}, {"patterns", codes.size()}, {"max_error", fit.maxError}}, "");
  });

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Seeded test corpora");
  corpus->require_subcommand(1);
  std::string specPath;
  auto* generate = corpus->add_subcommand("generate", "Write one JSON graph per file plus manifest.json");
  generate->add_option("--spec", specPath)->required();
  generate->add_option("-o,--output", out)->required();
  generate->callback([&] {
    auto hash = writeCorpus(out, corpusSpecFromJson(readJsonFile(specPath)));
    emit({{"directory", out}, {"corpus_hash", hash}}, "");
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Property suites");
  verify->require_subcommand(1);
  std::vector<std::string> corpusDirs;
  std::size_t threads = 1;
  bool wallTime = false;
  auto* all = verify->add_subcommand("all", "Run every suite; nonzero exit on any violation");
  all->add_option("--corpus", corpusDirs, "corpus directories; missing kinds use the default corpora");
  all->add_option("--report", report, "report file (default stdout)");
  all->add_option("--seed", seed);
  all->add_option("--threads", threads);
  all->add_flag("--wall-time", wallTime, "include wall times (breaks byte-identical reports)");
  all->callback([&] {
    std::optional<StaticCorpus> sc;
    std::optional<DynamicCorpus> dc;
    for (const auto& dir : corpusDirs) {
      auto c = loadCorpus(dir);
      if (c.spec.isDynamic()) {
        dc = makeDynamicCorpus(std::move(c.dynamicGraphs));
      } else {
        sc = makeStaticCorpus(std::move(c.staticGraphs));
      }
    }
    if (!sc) sc = defaultStaticCorpus(seed);
    if (!dc) dc = defaultDynamicCorpus(seed);
    VerifyOptions opt;
    opt.seed = seed;
    opt.threads = threads;
    auto reports = verifyAll(*sc, *dc, opt);
    for (const auto& r : reports) {
      std::cerr << (r.pass() ? "PASS " : "FAIL ") << r.suite << "  cases=" << r.casesChecked
                << " fwd=" << r.forward.violations << "/" << r.forward.checked
                << " bwd=" << r.backward.violations << "/" << r.backward.checked
                << " id=" << r.identity.violations << "/" << r.identity.checked << "\n";
    }
    auto j = toJson(reports, wallTime);
    emit(j, report);
    g_exit = j["pass"].get<bool>() ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
