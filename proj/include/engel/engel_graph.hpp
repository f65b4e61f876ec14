// Engel graphs Γ_n(G) on G \ I_ω and Γ(G) on G \ Z_∞(G).
//
// Out-neighbour sets are computed for class representatives only; the
// out-set of x = rep^g is out(rep)^g. Above kMaterializeMax elements the
// arcs stay implicit and are conjugated on demand.

#pragma once

#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "engel/digraph.hpp"
#include "engel/engel.hpp"
#include "engel/parallel.hpp"
#include "engel/structure.hpp"
#include "json.hpp"

namespace engel {

inline constexpr std::uint32_t kMaterializeMax = 5000;

class ConjugationOracle : public ArcOracle {
 public:
  ConjugationOracle(GroupInfoPtr info, std::vector<std::vector<Elem>> rep_out, std::vector<std::uint32_t> vid_of,
                    std::vector<std::uint32_t> labels)
      : info_(std::move(info)), rep_out_(std::move(rep_out)), vid_of_(std::move(vid_of)), labels_(std::move(labels)) {
    for (auto x : labels_) arcs_ += rep_out_[info_->cd.class_of[x]].size();
  }
  std::uint32_t out_degree(std::uint32_t v) const override {
    return static_cast<std::uint32_t>(rep_out_[info_->cd.class_of[labels_[v]]].size());
  }
  std::uint32_t neighbor(std::uint32_t v, std::uint32_t i) const override {
    const Elem x = labels_[v];
    const auto& cd = info_->cd;
    const Elem s = rep_out_[cd.class_of[x]][i];
    return vid_of_[info_->G->conj(s, cd.conjugator[x])];
  }
  std::uint64_t arc_count() const override { return arcs_; }

 private:
  GroupInfoPtr info_;
  std::vector<std::vector<Elem>> rep_out_;
  std::vector<std::uint32_t> vid_of_;
  std::vector<std::uint32_t> labels_;
  std::uint64_t arcs_ = 0;
};

struct EngelGraph {
  GroupInfoPtr info;
  Word word;
  Digraph D;
  std::vector<char> excluded;                // I_ω (fixed n) or Z_∞ (cumulative)
  std::vector<std::uint32_t> vid_of;         // element -> vertex id, kNone if excluded
  std::vector<std::vector<Elem>> rep_out;    // out-set of each class representative (elements)

  bool empty() const { return D.num_vertices() == 0; }
  std::uint32_t vertex_of(Elem x) const { return vid_of[x]; }
  Elem element_of(std::uint32_t v) const { return D.labels()[v]; }
};

struct GraphOptions {
  int materialize = -1;  // -1 automatic, 0 implicit, 1 materialised
  // Precomputed unfiltered representative out-sets (e.g. from the cache).
  const std::vector<std::vector<Elem>>* rep_arcs = nullptr;
};

// For each class representative r, all y with an arc r -> y (no vertex filter).
inline std::vector<std::vector<Elem>> representative_arcs(const GroupInfo& info, const Word& w) {
  const Group& G = *info.G;
  const auto& cd = info.cd;
  std::vector<std::vector<Elem>> out(cd.num_classes());
  std::vector<EngelScratch> scratch(thread_count());
  parallel_for(cd.num_classes(), [&](std::size_t c, unsigned t) {
    auto& sc = scratch[t];
    for (Elem y = 0; y < G.order(); ++y)
      if (is_arc(G, cd.reps[c], y, w, sc)) out[c].push_back(y);
  });
  return out;
}

inline EngelGraph build_engel_graph(GroupInfoPtr info, const Word& w, const GraphOptions& opt = {}) {
  const Group& G = *info->G;
  const auto& cd = info->cd;
  const std::uint32_t n = G.order();
  EngelGraph eg;
  eg.info = info;
  eg.word = w;
  std::vector<std::vector<Elem>> arcs = opt.rep_arcs ? *opt.rep_arcs : representative_arcs(*info, w);
  eg.excluded.assign(n, 0);
  if (w.cumulative) {
    auto Z = hypercenter(G);
    for (auto z : Z.elems) eg.excluded[z] = 1;
  } else {
    // Right set from the representative arcs; left set needs its own pass.
    std::vector<char> right(cd.num_classes()), left(cd.num_classes(), 1);
    for (std::size_t c = 0; c < cd.num_classes(); ++c) right[c] = arcs[c].size() == n;
    std::vector<EngelScratch> scratch(thread_count());
    parallel_for(cd.num_classes(), [&](std::size_t c, unsigned t) {
      if (!right[c]) {
        left[c] = 0;  // only the intersection matters here
        return;
      }
      for (Elem x = 0; x < n && left[c]; ++x)
        if (!is_arc(G, x, cd.reps[c], w, scratch[t])) left[c] = 0;
    });
    for (Elem x = 0; x < n; ++x) eg.excluded[x] = right[cd.class_of[x]] && left[cd.class_of[x]];
  }
  eg.vid_of.assign(n, kNone);
  std::vector<std::uint32_t> labels;
  for (Elem x = 0; x < n; ++x)
    if (!eg.excluded[x]) {
      eg.vid_of[x] = static_cast<std::uint32_t>(labels.size());
      labels.push_back(x);
    }
  eg.rep_out.resize(cd.num_classes());
  for (std::size_t c = 0; c < cd.num_classes(); ++c) {
    if (eg.excluded[cd.reps[c]]) continue;
    for (auto y : arcs[c])
      if (!eg.excluded[y]) eg.rep_out[c].push_back(y);
  }
  auto oracle = std::make_shared<ConjugationOracle>(info, eg.rep_out, eg.vid_of, labels);
  Digraph D = Digraph::from_oracle(static_cast<std::uint32_t>(labels.size()), oracle, labels);
  const bool mat = opt.materialize == 1 || (opt.materialize == -1 && n <= kMaterializeMax);
  eg.D = mat ? D.materialize() : D;
  return eg;
}

// Test oracle: I_ω by testing every pair, arcs by testing every vertex pair.
inline Digraph build_engel_graph_direct(const Group& G, const Word& w) {
  const std::uint32_t n = G.order();
  EngelScratch sc(n);
  std::vector<char> excluded(n, 0);
  if (w.cumulative) {
    for (auto z : hypercenter(G).elems) excluded[z] = 1;
  } else {
    for (Elem g = 0; g < n; ++g) {
      bool r = true, l = true;
      for (Elem x = 0; x < n && (r || l); ++x) {
        if (r && !is_arc(G, g, x, w, sc)) r = false;
        if (l && !is_arc(G, x, g, w, sc)) l = false;
      }
      excluded[g] = r && l;
    }
  }
  std::vector<std::uint32_t> labels, vid(n, kNone);
  for (Elem x = 0; x < n; ++x)
    if (!excluded[x]) {
      vid[x] = static_cast<std::uint32_t>(labels.size());
      labels.push_back(x);
    }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  for (auto x : labels)
    for (auto y : labels)
      if (is_arc(G, x, y, w, sc)) arcs.emplace_back(vid[x], vid[y]);
  return Digraph::from_arcs(static_cast<std::uint32_t>(labels.size()), std::move(arcs), labels);
}

// Compares implicit out-sets with direct evaluation on random (x, g).
inline bool verify_equivariance(const EngelGraph& eg, std::size_t samples, std::uint64_t seed = 7) {
  if (eg.empty()) return true;
  const Group& G = *eg.info->G;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dv(0, eg.D.num_vertices() - 1), dg(0, G.order() - 1);
  EngelScratch sc(G.order());
  for (std::size_t i = 0; i < samples; ++i) {
    const Elem x = G.conj(eg.element_of(dv(rng)), dg(rng));
    const std::uint32_t v = eg.vid_of[x];
    if (v == kNone) return false;  // vertex set must be conjugation invariant
    std::vector<std::uint32_t> direct;
    for (auto y : eg.D.labels())
      if (is_arc(G, x, y, eg.word, sc)) direct.push_back(eg.vid_of[y]);
    std::sort(direct.begin(), direct.end());
    if (direct != eg.D.out(v)) return false;
  }
  return true;
}

// One vertex per class that is a vertex; eccentricities are class invariant.
inline std::vector<std::uint32_t> class_sources(const EngelGraph& eg) {
  std::vector<std::uint32_t> s;
  for (auto r : eg.info->cd.reps)
    if (eg.vid_of[r] != kNone) s.push_back(eg.vid_of[r]);
  return s;
}

inline nlohmann::json scc_json(const SccResult& r) {
  nlohmann::json j;
  j["count"] = r.count;
  j["sizes"] = r.sorted_sizes();
  j["strongly_connected"] = r.strongly_connected();
  if (r.empty) j["empty"] = true;
  if (r.count > 1) {
    j["condensation"] = {{"sources", r.sources}, {"sinks", r.sinks}};
  }
  return j;
}

inline constexpr std::uint32_t kExportArcCap = 200000;

// JSON schema: group, word, vertices, arcs (pairs of element indices or
// "implicit"), scc, empty.
inline nlohmann::json export_json(const Digraph& D, const std::string& group, const std::string& word, const SccResult* s = nullptr,
                                  bool force_implicit = false) {
  nlohmann::json j;
  j["group"] = group;
  j["word"] = word;
  j["vertices"] = D.labels();
  if (force_implicit || D.num_arcs() > kExportArcCap) {
    j["arcs"] = "implicit";
    j["arc_count"] = D.num_arcs();
  } else {
    auto arcs = nlohmann::json::array();
    for (std::uint32_t v = 0; v < D.num_vertices(); ++v)
      for (auto w : D.out(v)) arcs.push_back({D.labels()[v], D.labels()[w]});
    j["arcs"] = std::move(arcs);
  }
  if (D.empty()) j["empty"] = true;
  if (s) j["scc"] = scc_json(*s);
  return j;
}

inline Digraph import_json(const nlohmann::json& j) {
  std::vector<std::uint32_t> labels = j.at("vertices").get<std::vector<std::uint32_t>>();
  if (!j.at("arcs").is_array()) throw graph_error("graph document has implicit arcs");
  std::unordered_map<std::uint32_t, std::uint32_t> vid;
  for (std::uint32_t i = 0; i < labels.size(); ++i) vid.emplace(labels[i], i);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  for (const auto& a : j.at("arcs")) arcs.emplace_back(vid.at(a.at(0).get<std::uint32_t>()), vid.at(a.at(1).get<std::uint32_t>()));
  const auto V = static_cast<std::uint32_t>(labels.size());
  return Digraph::from_arcs(V, std::move(arcs), std::move(labels));
}

inline constexpr std::uint32_t kDotCap = 2000;

inline std::string export_dot(const Digraph& D, const std::string& name = "G") {
  if (D.num_vertices() > kDotCap) throw graph_error("DOT export is limited to 2000 vertices");
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (std::uint32_t v = 0; v < D.num_vertices(); ++v) os << "  " << D.labels()[v] << ";\n";
  for (std::uint32_t v = 0; v < D.num_vertices(); ++v)
    for (auto w : D.out(v)) os << "  " << D.labels()[v] << " -> " << D.labels()[w] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace engel
