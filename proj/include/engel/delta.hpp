// Coset digraph Delta(H, C): vertices the conjugates of C \ {1}, arcs x -> y
// when y x^-1 lies in H. Hypotheses are checked by direct computation before
// the graph is built.
//
//   H0  calC and H are disjoint
//   H1  calC = {c^g : c in C \ {1}, g in G}
//   H2  C meets C^g trivially for g outside N_G(C)
//   H3  N_G(C) is a Frobenius group with kernel C

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "engel/construct.hpp"
#include "engel/digraph.hpp"
#include "engel/structure.hpp"
#include "engel/witness.hpp"
#include "json.hpp"

namespace engel::delta {

using nlohmann::json;

struct delta_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DeltaInstance {
  GroupInfoPtr info;
  Subgroup H, C, NC;
  std::vector<Elem> calC;  // sorted
  bool h0 = false, h1 = false, h2 = false, h3 = false;

  bool ok() const { return h0 && h1 && h2 && h3; }
  json flags() const { return {{"H0", h0}, {"H1", h1}, {"H2", h2}, {"H3", h3}}; }
};

inline bool is_abelian(const Group& G, const Subgroup& S) {
  for (auto a : S.elems)
    for (auto b : S.elems)
      if (G.mult(a, b) != G.mult(b, a)) return false;
  return true;
}

inline DeltaInstance check_hypotheses(GroupInfoPtr info, Subgroup H, Subgroup C) {
  const Group& G = *info->G;
  const ClassData& cd = info->cd;
  if (!is_abelian(G, C)) throw delta_error("C must be abelian");
  DeltaInstance d;
  d.info = info;
  d.H = std::move(H);
  d.C = std::move(C);
  d.NC = normalizer(G, d.C);

  // calC as a union of classes, and again by conjugating C \ {1} directly.
  std::vector<char> cls(cd.num_classes(), 0);
  for (auto c : d.C.elems)
    if (c != 0) cls[cd.class_of[c]] = 1;
  for (Elem x = 0; x < G.order(); ++x)
    if (cls[cd.class_of[x]]) d.calC.push_back(x);
  std::vector<char> seen(G.order(), 0);
  std::vector<Elem> direct;
  for (Elem g = 0; g < G.order(); ++g)
    for (auto c : d.C.elems) {
      if (c == 0) continue;
      const Elem y = G.conj(c, g);
      if (!seen[y]) {
        seen[y] = 1;
        direct.push_back(y);
      }
    }
  std::sort(direct.begin(), direct.end());
  d.h1 = direct == d.calC;

  d.h0 = std::none_of(d.calC.begin(), d.calC.end(), [&](Elem x) { return d.H.contains(x); });

  d.h2 = true;
  for (Elem g = 0; g < G.order() && d.h2; ++g) {
    if (d.NC.contains(g)) continue;
    for (auto c : d.C.elems)
      if (c != 0 && d.C.contains(G.conj(c, g))) {
        d.h2 = false;
        break;
      }
  }

  // Frobenius with kernel C: 1 < C < N, and C_N(c) <= C for every c != 1 in C.
  d.h3 = d.C.size() > 1 && d.C.size() < d.NC.size();
  for (auto c : d.C.elems) {
    if (!d.h3) break;
    if (c == 0) continue;
    for (auto n : d.NC.elems)
      if (!d.C.contains(n) && G.mult(c, n) == G.mult(n, c)) {
        d.h3 = false;
        break;
      }
  }
  return d;
}

struct DeltaGraph {
  Digraph D;
  std::vector<std::uint32_t> vid;  // element -> vertex, kNone outside calC
};

inline DeltaGraph build_delta(const DeltaInstance& inst) {
  if (!inst.ok()) throw delta_error("hypotheses H0-H3 do not all hold");
  const Group& G = *inst.info->G;
  DeltaGraph dg;
  dg.vid.assign(G.order(), kNone);
  for (std::uint32_t v = 0; v < inst.calC.size(); ++v) dg.vid[inst.calC[v]] = v;
  std::vector<std::uint64_t> off{0};
  std::vector<std::uint32_t> tg;
  for (auto x : inst.calC) {
    const std::size_t start = tg.size();
    for (auto h : inst.H.elems) {
      const std::uint32_t w = dg.vid[G.mult(h, x)];  // y = h x, so y x^-1 = h
      if (w != kNone) tg.push_back(w);
    }
    std::sort(tg.begin() + static_cast<std::ptrdiff_t>(start), tg.end());
    off.push_back(tg.size());
  }
  dg.D = Digraph::from_csr(std::move(off), std::move(tg), inst.calC);
  return dg;
}

// Right coset label Hx -> least element of Hx.
inline std::vector<Elem> right_coset_labels(const Group& G, const Subgroup& H) {
  std::vector<Elem> lab(G.order(), kNone);
  for (Elem x = 0; x < G.order(); ++x) {
    if (lab[x] != kNone) continue;
    for (auto h : H.elems) lab[G.mult(h, x)] = x;
  }
  return lab;
}

struct ComponentReport {
  std::uint64_t vertices = 0, arcs = 0, components = 0, index = 0;
  std::uint64_t hc_size = 0, min_subdegree = 0;
  bool vertex_formula = false;
  bool complete_in_coset = false;        // (1)
  bool count_formula = false;            // (2)
  bool bound = false, hc_is_complement = false, equality_iff = false;  // (3)
  bool gap_ok = false;                   // (4)
  bool double_coset_union = false;
  bool sums_ok = false;                  // sum n = |V|, sum n^2 = |A|
  double cs_bound = 0;
  bool cs_ok = false;
  std::vector<std::uint64_t> subdegrees;

  json to_json() const {
    return {{"vertices", vertices},       {"arcs", arcs},
            {"components", components},   {"index", index},
            {"HC_size", hc_size},         {"HC_equals_G_minus_H", hc_is_complement},
            {"min_subdegree", min_subdegree}, {"subdegrees", subdegrees},
            {"cauchy_schwarz_bound", cs_bound}};
  }
};

inline ComponentReport component_structure(const DeltaInstance& inst, const DeltaGraph& dg) {
  const Group& G = *inst.info->G;
  const Digraph& D = dg.D;
  ComponentReport r;
  r.vertices = D.num_vertices();
  r.arcs = D.num_arcs();
  r.index = G.order() / inst.H.size();
  r.vertex_formula = r.vertices * inst.NC.size() == std::uint64_t{G.order()} * (inst.C.size() - 1);
  auto s = scc(D, false);
  r.components = s.count;

  // (1) complete components inside single right cosets.
  const auto lab = right_coset_labels(G, inst.H);
  std::vector<std::uint64_t> inner(s.count, 0);
  std::vector<Elem> coset_of_comp(s.count, kNone);
  bool one_coset = true;
  for (std::uint32_t v = 0; v < D.num_vertices(); ++v) {
    const auto c = s.comp[v];
    const Elem l = lab[D.labels()[v]];
    if (coset_of_comp[c] == kNone) coset_of_comp[c] = l;
    one_coset = one_coset && coset_of_comp[c] == l;
    D.for_each_out(v, [&](std::uint32_t w) { inner[c] += s.comp[w] == c; });
  }
  bool complete = true;
  std::uint64_t sum = 0, sum2 = 0;
  for (std::uint32_t c = 0; c < s.count; ++c) {
    const std::uint64_t n = s.sizes[c];
    complete = complete && inner[c] == n * n;
    sum += n;
    sum2 += n * n;
  }
  r.complete_in_coset = one_coset && complete;
  r.sums_ok = sum == r.vertices && sum2 == r.arcs;

  // (2) c = |H calC| / |H|.
  std::vector<char> in_hc(G.order(), 0);
  for (auto h : inst.H.elems)
    for (auto x : inst.calC) in_hc[G.mult(h, x)] = 1;
  for (Elem g = 0; g < G.order(); ++g) r.hc_size += in_hc[g];
  r.count_formula = r.hc_size == r.components * inst.H.size();

  // H calC H = H calC.
  r.double_coset_union = true;
  for (Elem g = 0; g < G.order() && r.double_coset_union; ++g) {
    if (!in_hc[g]) continue;
    for (auto h : inst.H.elems)
      if (!in_hc[G.mult(g, h)]) {
        r.double_coset_union = false;
        break;
      }
  }

  // (3)
  r.bound = r.components <= r.index - 1;
  r.hc_is_complement = true;
  for (Elem g = 0; g < G.order(); ++g)
    if (static_cast<bool>(in_hc[g]) == inst.H.contains(g)) r.hc_is_complement = false;
  r.equality_iff = (r.components == r.index - 1) == r.hc_is_complement;

  // (4) subdegrees |HgH| / |H| over non-trivial double cosets.
  std::vector<char> done(G.order(), 0);
  for (auto h : inst.H.elems) done[h] = 1;
  for (Elem g = 0; g < G.order(); ++g) {
    if (done[g]) continue;
    std::uint64_t size = 0;
    for (auto h1 : inst.H.elems) {
      const Elem hg = G.mult(h1, g);
      for (auto h2 : inst.H.elems) {
        const Elem y = G.mult(hg, h2);
        if (!done[y]) {
          done[y] = 1;
          ++size;
        }
      }
    }
    r.subdegrees.push_back(size / inst.H.size());
  }
  std::sort(r.subdegrees.begin(), r.subdegrees.end());
  r.min_subdegree = r.subdegrees.empty() ? 0 : r.subdegrees.front();
  const std::uint64_t gap = r.index - 1 - std::min<std::uint64_t>(r.components, r.index - 1);
  r.gap_ok = r.hc_is_complement || gap >= r.min_subdegree;

  // |V|^2 / |A| <= c by Cauchy-Schwarz on the component sizes.
  r.cs_bound = r.arcs ? static_cast<double>(r.vertices) * static_cast<double>(r.vertices) / static_cast<double>(r.arcs) : 0.0;
  r.cs_ok = r.vertices * r.vertices <= r.components * r.arcs;
  return r;
}

struct CauchySchwarz {
  double bound = 0;
  std::uint64_t actual = 0;
  bool holds = false;
};

inline CauchySchwarz cauchy_schwarz_bound(const Digraph& D) {
  CauchySchwarz cs;
  const std::uint64_t V = D.num_vertices(), A = D.num_arcs();
  cs.actual = scc(D, false).count;
  cs.bound = A ? static_cast<double>(V) * static_cast<double>(V) / static_cast<double>(A) : 0.0;
  cs.holds = V * V <= cs.actual * A;
  return cs;
}

// ---------------------------------------------------------------- selectors

// borel: normaliser of a Sylow subgroup for the defining characteristic.
// sylow-normalizer:p, torus:k (cyclic, generated by the least element of order k).
inline Subgroup select_subgroup(const GroupInfo& info, const std::string& sel) {
  const Group& G = *info.G;
  auto arg = [&](const std::string& prefix) -> std::uint64_t {
    try {
      return parse_uint(sel.substr(prefix.size()));
    } catch (const std::exception&) {
      throw delta_error("bad selector '" + sel + "'");
    }
  };
  if (sel == "borel") {
    if (!G.has_matrices()) throw delta_error("borel needs a matrix group");
    return normalizer(G, sylow(G, info.cd, G.matrices().field->p()));
  }
  if (sel.rfind("sylow-normalizer:", 0) == 0) {
    const std::uint64_t p = arg("sylow-normalizer:");
    if (!ff::is_prime(p) || G.order() % p) throw delta_error("prime does not divide the group order");
    return normalizer(G, sylow(G, info.cd, p));
  }
  if (sel.rfind("torus:", 0) == 0) {
    const std::uint64_t k = arg("torus:");
    for (Elem x = 0; x < G.order(); ++x)
      if (info.cd.order_of(x) == k) return generate(G, {x});
    throw delta_error("no element of order " + std::to_string(k));
  }
  throw delta_error("unknown selector '" + sel + "'");
}

struct DeltaSpec {
  std::string group, H, C;
  std::string name() const { return group + "/" + H + "/" + C; }
};

inline const std::vector<DeltaSpec>& shipped_instances() {
  static const std::vector<DeltaSpec> v = {
      {"PSL2:8", "borel", "torus:9"},
      {"PSL2:32", "borel", "torus:33"},
      {"Sz:8", "sylow-normalizer:2", "torus:13"},
      {"Sz:8", "sylow-normalizer:2", "torus:5"},
  };
  return v;
}

inline bool symmetric_with_loops(const Digraph& D) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fwd, rev;
  fwd.reserve(D.num_arcs());
  rev.reserve(D.num_arcs());
  std::uint64_t loops = 0;
  for (std::uint32_t v = 0; v < D.num_vertices(); ++v)
    D.for_each_out(v, [&](std::uint32_t w) {
      fwd.emplace_back(v, w);
      rev.emplace_back(w, v);
      loops += v == w;
    });
  std::sort(fwd.begin(), fwd.end());
  std::sort(rev.begin(), rev.end());
  return loops == D.num_vertices() && fwd == rev;
}

// Full run: hypotheses, graph, component structure, bound; as a transcript.
inline witness::WitnessReport run_delta(const DeltaSpec& spec) {
  witness::WitnessReport r;
  r.lemma = "delta";
  r.params = {{"group", spec.group}, {"H", spec.H}, {"C", spec.C}};
  auto info = analyse(build_group(spec.group));
  auto inst = check_hypotheses(info, select_subgroup(*info, spec.H), select_subgroup(*info, spec.C));
  r.payload["H_order"] = inst.H.size();
  r.payload["C_order"] = inst.C.size();
  r.payload["N_order"] = inst.NC.size();
  r.payload["hypotheses"] = inst.flags();
  r.check("H0: calC misses H", inst.h0);
  r.check("H1: calC is the set of conjugates of C \\ {1}", inst.h1);
  r.check("H2: C is a TI subgroup", inst.h2);
  r.check("H3: N_G(C) is Frobenius with kernel C", inst.h3);
  if (!inst.ok()) return r;
  auto dg = build_delta(inst);
  auto cr = component_structure(inst, dg);
  r.payload["structure"] = cr.to_json();
  r.check("|V| = |G|(|C|-1)/|N_G(C)|", cr.vertex_formula);
  r.check("arc relation is symmetric with a loop at every vertex", symmetric_with_loops(dg.D));
  r.check("(1) components are complete and lie in single right cosets of H", cr.complete_in_coset);
  r.check("(2) c = |H calC| / |H|", cr.count_formula);
  r.check("(3) c <= |G:H| - 1, with equality iff H calC = G \\ H", cr.bound && cr.equality_iff);
  r.check("(4) a strict gap is at least the minimum non-trivial subdegree", cr.gap_ok);
  r.check("H calC is a union of (H,H)-double cosets", cr.double_coset_union);
  r.check("sum of sizes = |V| and sum of squared sizes = |A|", cr.sums_ok);
  r.check("c >= |V|^2 / |A|", cr.cs_ok);
  r.found = r.all_ok();
  return r;
}

}  // namespace engel::delta
