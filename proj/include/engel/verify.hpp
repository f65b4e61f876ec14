// Reproduction and property suites. Every check records what was expected,
// what was observed and how long it took; the acceptance binary and the
// `verify` command are thin layers over these runners.

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "engel/cache.hpp"
#include "engel/classify.hpp"
#include "engel/construct.hpp"
#include "engel/delta.hpp"
#include "engel/engel_graph.hpp"
#include "engel/witness.hpp"
#include "json.hpp"

namespace engel::verify {

using json = nlohmann::json;

struct Check {
  std::string suite, name;
  int criterion = 0;
  json expected, observed;
  bool pass = false;
  double seconds = 0;
  double budget = 0;  // seconds; 0 = no limit
  std::string note;

  json to_json() const {
    json j{{"suite", suite}, {"check", name}, {"criterion", criterion}, {"expectation", expected},
           {"observed", observed}, {"pass", pass}, {"runtime_seconds", seconds}};
    if (budget > 0) j["budget_seconds"] = budget;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

struct Result {
  json expected, observed;
  bool pass = false;
  std::string note;
};

class Runner {
 public:
  Runner(std::string filter = "", cache::Cache* cache = nullptr) : filter_(std::move(filter)), cache_(cache) {}

  const std::vector<Check>& checks() const { return checks_; }
  bool all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }
  bool selected(const std::string& name) const { return filter_.empty() || name.find(filter_) != std::string::npos; }

  // Runs fn unless filtered out; exceptions become failures.
  void run(const std::string& suite, const std::string& name, int criterion, double budget, const std::function<Result()>& fn) {
    if (!selected(name)) return;
    Check c;
    c.suite = suite;
    c.name = name;
    c.criterion = criterion;
    c.budget = budget;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Result r = fn();
      c.expected = r.expected;
      c.observed = r.observed;
      c.pass = r.pass;
      c.note = r.note;
    } catch (const std::exception& e) {
      c.pass = false;
      c.note = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0 && c.seconds > budget) {
      c.pass = false;
      c.note += (c.note.empty() ? "" : "; ") + std::string("over the time budget");
    }
    if (on_check) on_check(c);
    checks_.push_back(std::move(c));
  }

  EngelGraph graph(const std::string& descriptor, const Word& w) {
    auto info = analyse(build_group(descriptor));
    GraphOptions opt;
    std::vector<std::vector<Elem>> arcs;
    if (cache_) {
      arcs = cache_->representative_arcs(info, descriptor, w);
      opt.rep_arcs = &arcs;
    }
    return build_engel_graph(info, w, opt);
  }

  classify::CrossOptions cross_options() {
    classify::CrossOptions o;
    if (cache_)
      o.rep_arcs = [this](const GroupInfoPtr& info, const std::string& d, const Word& w) {
        return cache_->representative_arcs(info, d, w);
      };
    return o;
  }

  json to_json() const {
    json arr = json::array();
    std::size_t failed = 0;
    for (const auto& c : checks_) {
      arr.push_back(c.to_json());
      failed += !c.pass;
    }
    return {{"checks", arr}, {"total", checks_.size()}, {"failed", failed}, {"passed", failed == 0}};
  }

  std::function<void(const Check&)> on_check;

 private:
  std::string filter_;
  cache::Cache* cache_;
  std::vector<Check> checks_;
};

inline Result expect_eq(const json& expected, const json& observed) { return {expected, observed, expected == observed, ""}; }

// ---------------------------------------------------------------- reproduction

namespace detail {

inline json scc_summary(const SccResult& r) { return {{"count", r.count}, {"strongly_connected", r.strongly_connected()}}; }

// Expected table for PSL_2(q), q odd: (Γ_2 sc, Γ_3 sc).
inline const std::map<std::uint64_t, std::pair<bool, bool>>& psl2_table() {
  static const std::map<std::uint64_t, std::pair<bool, bool>> t = {
      {5, {false, false}}, {7, {false, true}}, {9, {false, true}},   {11, {true, true}},
      {13, {false, false}}, {17, {true, true}}, {19, {true, true}},  {23, {false, true}},
      {25, {true, true}},   {27, {true, true}}, {29, {false, false}}};
  return t;
}

inline Elem element_of_order(const GroupInfo& I, std::uint64_t o) {
  for (std::size_t c = 0; c < I.cd.num_classes(); ++c)
    if (I.cd.rep_order[c] == o) return I.cd.reps[c];
  throw std::runtime_error("no element of order " + std::to_string(o));
}

inline void scc_counts(Runner& R, const std::string& tag, const std::string& group, int criterion, double budget,
                       const std::vector<std::pair<std::string, json>>& want) {
  double total = 0;
  for (const auto& [w, expected] : want) {
    const std::string name = tag + "/" + w;
    R.run("reproduction", name, criterion, budget, [&] {
      auto eg = R.graph(group, Word::parse(w));
      auto r = scc(eg.D);
      json obs = expected.is_number() ? json(r.count) : json(r.strongly_connected());
      return expect_eq(expected, obs);
    });
    if (!R.checks().empty() && R.checks().back().name == name) total += R.checks().back().seconds;
  }
  R.run("reproduction", tag + "/runtime", criterion, 0, [&] {
    return Result{json{{"max_seconds", budget}}, json{{"seconds", total}}, total <= budget, ""};
  });
}

}  // namespace detail

inline void reproduction_suite(Runner& R) {
  using detail::scc_counts;
  scc_counts(R, "psl27", "PSL2:7", 1, 5, {{"engel:1", 37}, {"engel:2", 9}, {"engel:3", true}});
  scc_counts(R, "psl34", "PSL:3:4", 2, 600, {{"engel:1", 3257}, {"engel:2", 961}, {"engel:3", true}});
  scc_counts(R, "psu42", "PSU:4:2", 3, 600, {{"engel:1", 1297}, {"engel:2", true}});

  // Criterion 4: the PSL_2(q) matrix, q = 13 up to n = 6, and the sink argument.
  for (const auto& [q, sc] : detail::psl2_table())
    for (std::uint32_t n : {2u, 3u}) {
      const bool want = n == 2 ? sc.first : sc.second;
      R.run("reproduction", "tired/PSL2:" + std::to_string(q) + "/engel:" + std::to_string(n), 4, 900, [&] {
        auto eg = R.graph("PSL2:" + std::to_string(q), Word::fixed(n));
        return expect_eq(want, scc(eg.D).strongly_connected());
      });
    }
  for (std::uint32_t n = 4; n <= 6; ++n)
    R.run("reproduction", "tired/PSL2:13/engel:" + std::to_string(n), 4, 900, [&] {
      auto eg = R.graph("PSL2:13", Word::fixed(n));
      return expect_eq(false, scc(eg.D).strongly_connected());
    });
  R.run("reproduction", "tired/PSL2:13/lemma3-sinks", 4, 900, [&] {
    auto r = witness::lemma3_check(13);
    bool none = true;
    for (const auto& eps : {"+", "-"})
      for (auto& [o, cnt] : r.payload["orders"][eps].items()) {
        const auto v = std::stoull(o);
        if (v > 1 && (v & (v - 1)) == 0) none = false;
      }
    return Result{json{{"two_element_commutators", 0}}, json{{"two_element_commutators", none ? 0 : 1}, {"transcript_ok", r.all_ok()}},
                  none && r.all_ok(), ""};
  });
  R.run("reproduction", "tired/runtime", 4, 0, [&] {
    double t = 0;
    for (const auto& c : R.checks())
      if (c.name.rfind("tired/", 0) == 0) t += c.seconds;
    return Result{json{{"max_seconds", 900}}, json{{"seconds", t}}, t <= 900, ""};
  });

  // Criterion 5: even q.
  for (std::uint64_t q : {4, 8, 16}) {
    R.run("reproduction", "even/PSL2:" + std::to_string(q), 5, 0, [&] {
      auto eg = R.graph("PSL2:" + std::to_string(q), Word::any());
      auto r = scc(eg.D);
      auto wk = weak_components_and_diameter(eg.D, class_sources(eg));
      json obs{{"strongly_connected", r.strongly_connected()}, {"weak_components", wk.components}, {"diameter", wk.diameter},
               {"diameter_exact", wk.exact}};
      json exp{{"strongly_connected", false}, {"weak_components", 1}, {"diameter_at_most", 10}};
      return Result{exp, obs, !r.strongly_connected() && wk.components == 1 && wk.diameter <= 10, ""};
    });
  }

  // Criterion 6: Sz(8) and Aut(Sz(8)).
  auto nc = [&](const std::string& name, const std::string& group) {
    R.run("reproduction", name, 6, 0, [&] {
      auto I = analyse(build_group(group));
      const Elem y = detail::element_of_order(*I, 13);
      auto K = normalizer_of_cyclic(*I->G, y);
      auto rep = nc_certificate(*I->G, y, K);
      json obs{{"K_order", K.size()}, {"self_normalizing", rep.self_normalizing}, {"ti_condition", rep.ti_condition}};
      return Result{json{{"certificate", true}}, obs, rep.holds(), ""};
    });
  };
  nc("sz8/nc-certificate", "Sz:8");
  R.run("reproduction", "sz8/full-scc", 6, 1800, [&] {
    auto eg = R.graph("Sz:8", Word::any());
    auto r = scc(eg.D);
    return Result{json{{"strongly_connected", false}}, detail::scc_summary(r), !r.strongly_connected(), ""};
  });
  nc("autsz8/nc-certificate", "Sz:8.fieldaut:3");

  // Criterion 7: Γ_2 of PGL_2(q) and of PΣL_2(9).
  for (std::string g : {"PGL2:5", "PGL2:7", "PGL2:9", "PSL2:9.fieldaut:2"})
    R.run("reproduction", "gamma2/" + g, 7, 0, [&] {
      auto eg = R.graph(g, Word::fixed(2));
      return expect_eq(true, scc(eg.D).strongly_connected());
    });

  // Criterion 12: oracle against computation.
  std::size_t agree = 0;
  std::vector<std::string> required = {"SL2:3", "AGL1:5", "Sym:4", "Dihedral:8", "PSL2:7", "PSL:3:4", "PSU:4:2",
                                       "PSL2:4", "PSL2:8", "PSL2:16", "Sz:8", "PGL2:5", "PGL2:7", "PGL2:9", "PSL2:9.fieldaut:2"};
  for (std::uint64_t q : {5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29}) required.push_back("PSL2:" + std::to_string(q));
  std::set<std::string> seen;
  for (const auto& e : classify::default_suite()) {
    const std::string name = "classify/" + e.group + "/" + e.word;
    R.run("reproduction", name, 12, 0, [&] {
      auto r = classify::cross_validate(e.group, e.word, R.cross_options());
      if (r.ok()) {
        ++agree;
        seen.insert(e.group);
      }
      Result res{json("agree"), r.to_json(), r.ok(), ""};
      if (!r.ok()) res.note = classify::status_name(r.status) + (r.note.empty() ? "" : ": " + r.note);
      return res;
    });
  }
  R.run("reproduction", "classify/coverage", 12, 0, [&] {
    std::vector<std::string> missing;
    for (const auto& g : required)
      if (!seen.count(g)) missing.push_back(g);
    json obs{{"agreeing_checks", agree}, {"groups", seen.size()}, {"missing_required", missing}};
    return Result{json{{"min_groups", 20}, {"missing_required", json::array()}}, obs, seen.size() >= 20 && missing.empty(), ""};
  });
}

// ---------------------------------------------------------------- witness

inline void witness_suite(Runner& R) {
  using namespace witness;
  auto rep = [&](const std::string& name, int crit, std::function<WitnessReport()> make, bool want_found,
                 std::function<std::optional<std::string>(const WitnessReport&)> extra = {}) {
    R.run("witness", name, crit, 0, [&] {
      auto r = make();
      const bool replayed = replay(r);
      std::optional<std::string> problem;
      if (extra) problem = extra(r);
      json obs{{"found", r.found}, {"transcript_ok", r.all_ok()}, {"replay", replayed}, {"failures", r.failures()}};
      const bool ok = r.found == want_found && r.all_ok() && replayed && !problem;
      return Result{json{{"found", want_found}, {"transcript_ok", true}, {"replay", true}}, obs, ok, problem.value_or("")};
    });
  };
  for (std::uint64_t q : {5, 13, 17, 25, 29}) rep("nr1/q=" + std::to_string(q), 8, [q] { return nr1_witness(q); }, true);
  rep("nr1/q=9", 8, [] { return nr1_witness(9); }, false);
  for (auto [m, q, o] : std::vector<std::tuple<std::uint32_t, std::uint64_t, int>>{{3, 3, 2}, {3, 5, 2}, {5, 3, 2}, {3, 2, 4}, {3, 4, 4}, {5, 2, 4}})
    rep("psl_companion/m=" + std::to_string(m) + ",q=" + std::to_string(q), 8, [m, q] { return psl_companion_witness(m, q); }, true,
        [o](const WitnessReport& r) -> std::optional<std::string> {
          if (r.payload["order"] != o) return "order of [g,z] is " + r.payload["order"].dump();
          return std::nullopt;
        });
  for (auto [m, q] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{3, 3}, {3, 4}, {3, 5}})
    rep("unitary/m=" + std::to_string(m) + ",q=" + std::to_string(q), 8, [m, q] { return unitary_witness(m, q); }, true);
  R.run("witness", "unitary/m=3,q=2", 8, 0, [] {
    try {
      unitary_witness(3, 2);
    } catch (const witness_error& e) {
      return Result{json("rejected"), json("rejected"), true, e.what()};
    }
    return Result{json("rejected"), json("accepted"), false, ""};
  });
  for (std::uint64_t q : {2, 4, 8}) rep("sp4_even/q=" + std::to_string(q), 8, [q] { return sp4_even_witness(q); }, true);
  for (std::uint64_t q : {5, 7, 9, 11}) rep("pgl2/q=" + std::to_string(q), 8, [q] { return pgl2_witness(q); }, true);
  for (std::uint64_t q : {5, 7, 11, 13})
    rep("psl2_coset_coverage/q=" + std::to_string(q), 8, [q] { return psl2_coset_coverage(q); }, true);

  // Criterion 9.
  auto two_powers = [](const WitnessReport& r) {
    std::set<std::uint64_t> s;
    for (const auto& eps : {"+", "-"})
      for (auto& [o, cnt] : r.payload["orders"][eps].items()) {
        const auto v = std::stoull(o);
        if (v > 1 && (v & (v - 1)) == 0) s.insert(v);
      }
    return s;
  };
  for (std::uint64_t q : {7, 11})
    rep("lemma3/q=" + std::to_string(q), 9, [q] { return lemma3_check(q); }, true,
        [q, two_powers](const WitnessReport& r) -> std::optional<std::string> {
          const std::uint64_t want = std::uint64_t{1} << witness::detail::v2((q + 1) / 2);
          if (!two_powers(r).count(want)) return "no commutator of order " + std::to_string(want);
          return std::nullopt;
        });
  rep("lemma3/q=13", 9, [] { return lemma3_check(13); }, true, [two_powers](const WitnessReport& r) -> std::optional<std::string> {
    if (!two_powers(r).empty()) return std::string("unexpected 2-element commutator");
    return std::nullopt;
  });
  rep("lemma3/q=17", 9, [] { return lemma3_check(17); }, true, [two_powers](const WitnessReport& r) -> std::optional<std::string> {
    if (two_powers(r).empty()) return std::string("no 2-element commutator");
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- delta

inline void delta_suite(Runner& R) {
  for (const auto& spec : delta::shipped_instances())
    R.run("delta", "delta/" + spec.name(), 10, 0, [&] {
      auto r = delta::run_delta(spec);
      json obs{{"found", r.found}, {"failures", r.failures()}, {"structure", r.payload.value("structure", json())}};
      return Result{json{{"found", true}}, obs, r.found, ""};
    });
  R.run("delta", "delta/PSL2:8-vertex-count", 10, 0, [] {
    auto r = delta::run_delta(delta::shipped_instances()[0]);
    return expect_eq(224, r.payload["structure"]["vertices"]);
  });
}

// ---------------------------------------------------------------- properties

inline const std::vector<std::string>& property_groups() {
  static const std::vector<std::string> g = {"Cyclic:6",  "Sym:3",   "Sym:4",  "Alt:4",   "Alt:5",   "Dihedral:8", "Dihedral:10",
                                             "Dihedral:12", "SL2:3", "SL2:5",  "AGL1:5",  "AGL1:7",  "AGL1:8",     "PSL2:7",
                                             "PSL2:8",    "PSL2:11", "PSL2:13", "PGL2:5", "PGL2:7",  "Sym:5",      "Sym:6",
                                             "PSL2:9",    "PSU:3:2"};
  return g;
}

inline void property_suite(Runner& R) {
  for (const auto& d : property_groups()) {
    // [x,_n y] = [x,y]^((-2)^(n-1)) for every involution y.
    R.run("properties", "2comm/" + d, 11, 0, [&] {
      auto I = analyse(build_group(d));
      const Group& G = *I->G;
      std::uint64_t tested = 0, bad = 0;
      for (Elem y = 0; y < G.order(); ++y) {
        if (I->cd.order_of(y) != 2) continue;
        for (Elem x = 0; x < G.order(); ++x) {
          const Elem c = G.comm(x, y);
          const auto o = static_cast<std::int64_t>(G.element_order(c));
          std::int64_t e = 1;
          for (std::uint32_t n = 1; n <= 5; ++n) {
            if (n > 1) e = (e * -2) % o;
            ++tested;
            bad += engel_word(G, x, y, n) != G.power(c, e);
          }
        }
      }
      return Result{json{{"violations", 0}}, json{{"violations", bad}, {"tested", tested}}, bad == 0, ""};
    });
    R.run("properties", "norm/" + d, 11, 0, [&] {
      auto I = analyse(build_group(d));
      const Group& G = *I->G;
      EngelScratch sc(G.order());
      std::uint32_t worst = 0;
      bool all = true;
      for (auto y : I->cd.reps)
        for (auto x : normalizer_of_cyclic(G, y).elems) {
          auto r = engel_depth(G, x, y, sc);
          all = all && r.reached_identity;
          worst = std::max(worst, r.depth);
        }
      return Result{json{{"max_depth_at_most", 2}}, json{{"max_depth", worst}, {"all_reach_identity", all}}, all && worst <= 2, ""};
    });
    R.run("properties", "equivariance/" + d, 11, 0, [&] {
      auto G = build_group(d);
      std::mt19937 rng(17);
      std::uniform_int_distribution<Elem> U(0, G->order() - 1);
      std::uint64_t bad_eq = 0, bad_mono = 0;
      for (int t = 0; t < 3000; ++t) {
        const Elem x = U(rng), y = U(rng), g = U(rng);
        const std::uint32_t n = 1 + t % 5;
        const Elem w = engel_word(*G, x, y, n);
        bad_eq += G->conj(w, g) != engel_word(*G, G->conj(x, g), G->conj(y, g), n);
        if (w == 0) bad_mono += engel_word(*G, x, y, n + 1) != 0;
      }
      // Arc sets nest in n on class representatives.
      auto I = analyse(G);
      auto prev = representative_arcs(*I, Word::fixed(1));
      for (std::uint32_t n = 2; n <= 4; ++n) {
        auto cur = representative_arcs(*I, Word::fixed(n));
        for (std::size_t c = 0; c < cur.size(); ++c)
          if (!std::includes(cur[c].begin(), cur[c].end(), prev[c].begin(), prev[c].end())) ++bad_mono;
        prev = std::move(cur);
      }
      return Result{json{{"equivariance_violations", 0}, {"monotonicity_violations", 0}},
                    json{{"equivariance_violations", bad_eq}, {"monotonicity_violations", bad_mono}}, bad_eq == 0 && bad_mono == 0, ""};
    });
    R.run("properties", "scc-closure/" + d, 11, 0, [&] {
      auto I = analyse(build_group(d));
      std::uint32_t graphs = 0, bad = 0;
      for (const char* w : {"engel:1", "engel:2", "engel:3", "engel:*"}) {
        auto eg = build_engel_graph(I, Word::parse(w));
        if (eg.D.num_vertices() > 200) continue;
        ++graphs;
        bad += !scc_matches_closure(eg.D, scc(eg.D));
      }
      return Result{json{{"disagreements", 0}}, json{{"graphs_compared", graphs}, {"disagreements", bad}}, bad == 0, ""};
    });
    R.run("properties", "mass/" + d, 11, 0, [&] {
      auto I = analyse(build_group(d));
      return expect_eq(true, witness::class_constant_mass_conservation(*I->G, I->cd));
    });
  }
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s = {"reproduction", "properties", "witness", "delta"};
  return s;
}

inline void run_suite(Runner& R, const std::string& suite) {
  if (suite == "reproduction") reproduction_suite(R);
  else if (suite == "properties") property_suite(R);
  else if (suite == "witness") witness_suite(R);
  else if (suite == "delta") delta_suite(R);
  else throw std::invalid_argument("unknown suite '" + suite + "' (reproduction, properties, witness, delta)");
}

}  // namespace engel::verify
