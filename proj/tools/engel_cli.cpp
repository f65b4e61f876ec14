// engel_cli: group and Engel graph queries, witnesses, Δ instances, the
// classification oracle and the verification suites. All reports are JSON.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "engel/cache.hpp"
#include "engel/classify.hpp"
#include "engel/construct.hpp"
#include "engel/delta.hpp"
#include "engel/engel_graph.hpp"
#include "engel/verify.hpp"
#include "engel/witness.hpp"
#include "json.hpp"

using namespace engel;
using json = nlohmann::json;

namespace {

struct Globals {
  std::string cache_dir;
  bool no_cache = false;
  int threads = 0;
  std::string out;
  bool compact = false;
};

std::unique_ptr<cache::Cache> open_cache(const Globals& g) {
  if (g.no_cache || cache::disabled()) return nullptr;
  return std::make_unique<cache::Cache>(g.cache_dir.empty() ? cache::default_dir() : std::filesystem::path(g.cache_dir));
}

void emit(const Globals& g, const json& j) {
  const std::string s = g.compact ? j.dump() : j.dump(2);
  if (g.out.empty()) {
    std::cout << s << "\n";
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << s << "\n";
}

json group_report(const std::string& descriptor) {
  auto I = analyse(build_group(descriptor));
  const Group& G = *I->G;
  auto pg = spectrum_prime_graph(G, I->cd);
  return {{"group", descriptor},
          {"order", G.order()},
          {"classes", I->cd.num_classes()},
          {"spectrum", element_orders(I->cd)},
          {"prime_graph", {{"primes", pg.primes}, {"components", pg.components}}},
          {"hypercenter_order", hypercenter(G).size()},
          {"center_order", center(G).size()}};
}

EngelGraph make_graph(const std::string& descriptor, const Word& w, cache::Cache* c, int materialize) {
  auto info = analyse(build_group(descriptor));
  GraphOptions opt;
  opt.materialize = materialize;
  std::vector<std::vector<Elem>> arcs;
  if (c) {
    arcs = c->representative_arcs(info, descriptor, w);
    opt.rep_arcs = &arcs;
  }
  return build_engel_graph(info, w, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engel graphs of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Globals g;
  app.add_option("--cache-dir", g.cache_dir, "cache directory (default $ENGEL_CACHE_DIR or ~/.cache/engel)");
  app.add_flag("--no-cache", g.no_cache, "do not read or write the cache (same as ENGEL_NO_CACHE=1)");
  app.add_option("--threads", g.threads, "worker threads (default $ENGEL_THREADS or all cores)")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", g.out, "write the JSON report to a file instead of stdout");
  app.add_flag("--compact", g.compact, "single-line JSON");

  std::string descriptor, word = "engel:*";

  auto* grp = app.add_subcommand("group", "order, classes, spectrum, prime graph and hypercenter");
  grp->add_option("descriptor", descriptor, "e.g. PSL2:7, PSU:4:2, Sz:8.fieldaut:3")->required();

  bool with_scc = false;
  std::string json_path, dot_path;
  int materialize = -1;
  auto* gr = app.add_subcommand("graph", "build Γ_n or Γ");
  gr->add_option("descriptor", descriptor)->required();
  gr->add_option("word", word, "engel:n, engel:* or commuting")->required();
  gr->add_flag("--scc", with_scc, "compute strongly connected components");
  gr->add_option("--graph-out", json_path, "write the graph as JSON");
  gr->add_option("--dot", dot_path, "write the graph as DOT");
  gr->add_option("--materialize", materialize, "-1 automatic, 0 implicit, 1 explicit arcs")->check(CLI::Range(-1, 1));

  auto* sc = app.add_subcommand("scc", "strongly connected components of Γ_n or Γ");
  sc->add_option("descriptor", descriptor)->required();
  sc->add_option("word", word)->required();

  std::string lemma, params_text = "{}", replay_path;
  auto* wit = app.add_subcommand("witness", "run or replay a constructive witness");
  wit->add_option("lemma", lemma, "paley, nr1, psl_companion, unitary, sp4_even, pgl2, psl2_coset_coverage, lemma3, field_aut");
  wit->add_option("--params", params_text, "JSON parameters, e.g. '{\"q\":13}'");
  wit->add_option("--replay", replay_path, "re-run and re-check a saved report");

  std::string instance, dgroup, dH, dC;
  auto* del = app.add_subcommand("delta", "Δ-graph instances (all shipped instances by default)");
  del->add_option("--instance", instance, "name of a shipped instance, e.g. PSL2:8/borel/torus:9");
  del->add_option("--group", dgroup, "custom instance: group descriptor");
  del->add_option("--H", dH, "custom instance: borel, sylow-normalizer:p or torus:k");
  del->add_option("--C", dC, "custom instance: torus:k");

  bool cross = false, suite = false;
  auto* cls = app.add_subcommand("classify", "predict strong connectivity; optionally compare with computation");
  cls->add_option("descriptor", descriptor);
  cls->add_option("word", word);
  cls->add_flag("--cross-validate", cross, "also build the graph and compare");
  cls->add_flag("--suite", suite, "cross-validate the built-in suite");

  std::string vsuite, filter;
  auto* ver = app.add_subcommand("verify", "run a reproduction or property suite");
  ver->add_option("--suite", vsuite, "reproduction, properties, witness, delta (default: all)");
  ver->add_option("--filter", filter, "substring filter on check names");

  CLI11_PARSE(app, argc, argv);
  if (g.threads > 0) setenv("ENGEL_THREADS", std::to_string(g.threads).c_str(), 1);

  try {
    auto cache = open_cache(g);
    if (*grp) {
      emit(g, group_report(descriptor));
      return 0;
    }
    if (*gr || *sc) {
      const Word w = Word::parse(word);
      const auto t0 = std::chrono::steady_clock::now();
      auto eg = make_graph(descriptor, w, cache.get(), materialize);
      json rep{{"group", descriptor},
               {"word", w.str()},
               {"vertices", eg.D.num_vertices()},
               {"arcs", eg.D.num_arcs()},
               {"implicit", eg.D.implicit()},
               {"empty", eg.empty()}};
      std::optional<SccResult> r;
      if (*sc || with_scc) {
        r = scc(eg.D);
        rep["scc"] = scc_json(*r);
      }
      if (!json_path.empty()) {
        std::ofstream f(json_path);
        f << export_json(eg.D, descriptor, w.str(), r ? &*r : nullptr).dump() << "\n";
        if (!f) throw std::runtime_error("cannot write " + json_path);
      }
      if (!dot_path.empty()) {
        std::ofstream f(dot_path);
        f << export_dot(eg.D, descriptor);
        if (!f) throw std::runtime_error("cannot write " + dot_path);
      }
      rep["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
      if (cache) rep["cache"] = {{"hits", cache->hits()}, {"misses", cache->misses()}};
      emit(g, rep);
      return 0;
    }
    if (*wit) {
      if (!replay_path.empty()) {
        std::ifstream f(replay_path);
        if (!f) throw std::runtime_error("cannot read " + replay_path);
        auto r = witness::WitnessReport::from_json(json::parse(f));
        const bool ok = witness::replay(r);
        emit(g, {{"lemma", r.lemma}, {"params", r.params}, {"replay", ok}});
        return ok ? 0 : 1;
      }
      if (lemma.empty()) throw std::invalid_argument("witness needs a lemma name or --replay");
      auto r = witness::run_witness(lemma, json::parse(params_text));
      emit(g, r.to_json());
      return r.all_ok() ? 0 : 1;
    }
    if (*del) {
      std::vector<delta::DeltaSpec> specs;
      if (!dgroup.empty()) {
        if (dH.empty() || dC.empty()) throw std::invalid_argument("--group needs --H and --C");
        specs.push_back({dgroup, dH, dC});
      } else {
        for (const auto& s : delta::shipped_instances())
          if (instance.empty() || s.name() == instance) specs.push_back(s);
        if (specs.empty()) throw std::invalid_argument("unknown instance '" + instance + "'");
      }
      json arr = json::array();
      bool ok = true;
      for (const auto& s : specs) {
        auto r = delta::run_delta(s);
        ok = ok && r.found;
        arr.push_back(r.to_json());
      }
      emit(g, {{"instances", arr}, {"passed", ok}});
      return ok ? 0 : 1;
    }
    if (*cls) {
      classify::CrossOptions opt;
      if (cache)
        opt.rep_arcs = [&](const GroupInfoPtr& info, const std::string& d, const Word& w) {
          return cache->representative_arcs(info, d, w);
        };
      if (suite) {
        json arr = json::array();
        bool ok = true;
        for (const auto& e : classify::default_suite()) {
          auto r = classify::cross_validate(e.group, e.word, opt);
          ok = ok && r.status != classify::Status::mismatch;
          arr.push_back(r.to_json());
        }
        emit(g, {{"suite", arr}, {"mismatches", !ok}});
        return ok ? 0 : 1;
      }
      if (descriptor.empty()) throw std::invalid_argument("classify needs a descriptor or --suite");
      if (cross) {
        auto r = classify::cross_validate(descriptor, word, opt);
        emit(g, r.to_json());
        return r.status == classify::Status::mismatch ? 1 : 0;
      }
      emit(g, classify::predict(descriptor, word).to_json());
      return 0;
    }
    if (*ver) {
      verify::Runner R(filter, cache.get());
      R.on_check = [](const verify::Check& c) {
        std::cerr << (c.pass ? "ok   " : "FAIL ") << c.name << " (" << c.seconds << " s)\n";
      };
      if (vsuite.empty())
        for (const auto& s : verify::suite_names()) verify::run_suite(R, s);
      else
        verify::run_suite(R, vsuite);
      emit(g, R.to_json());
      return R.all_passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
