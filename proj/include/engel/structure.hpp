// Conjugacy classes, centralizers, normalizers, hypercenter, quotients,
// Frobenius detection and the prime graph.

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "engel/group.hpp"

namespace engel {

struct ClassData {
  std::vector<std::uint32_t> class_of;    // class id per element
  std::vector<Elem> reps;                 // least index in each class
  std::vector<std::uint32_t> sizes;
  std::vector<Elem> conjugator;           // reps[class_of[x]]^conjugator[x] == x
  std::vector<std::uint64_t> rep_order;   // element order per class
  std::vector<Subgroup> centralizers;     // C_G(rep)

  std::size_t num_classes() const { return reps.size(); }
  std::uint64_t order_of(Elem x) const { return rep_order[class_of[x]]; }
  std::vector<Elem> members(const Group& G, std::uint32_t c) const {
    std::vector<Elem> out;
    for (Elem x = 0; x < G.order(); ++x)
      if (class_of[x] == c) out.push_back(x);
    return out;
  }
};

inline Subgroup centralizer(const Group& G, Elem x) {
  Subgroup s;
  for (Elem g = 0; g < G.order(); ++g)
    if (G.mult(g, x) == G.mult(x, g)) s.elems.push_back(g);
  return s;
}

// Classes as orbits under conjugation by the generators, scanned in index
// order so each class is labelled by its least element.
inline ClassData compute_classes(const Group& G) {
  const std::uint32_t n = G.order();
  ClassData cd;
  cd.class_of.assign(n, kNone);
  cd.conjugator.assign(n, kNone);
  std::vector<Elem> gens = G.generators();
  if (gens.empty() && n > 1) gens = greedy_generators(G);
  std::vector<Elem> ginv;
  for (auto s : gens) ginv.push_back(G.inv(s));
  std::vector<Elem> queue;
  for (Elem x = 0; x < n; ++x) {
    if (cd.class_of[x] != kNone) continue;
    const auto c = static_cast<std::uint32_t>(cd.reps.size());
    cd.reps.push_back(x);
    cd.class_of[x] = c;
    cd.conjugator[x] = 0;
    queue.assign(1, x);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Elem y = queue[i];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const Elem z = G.mult(G.mult(ginv[k], y), gens[k]);
        if (cd.class_of[z] != kNone) continue;
        cd.class_of[z] = c;
        cd.conjugator[z] = G.mult(cd.conjugator[y], gens[k]);
        queue.push_back(z);
      }
    }
    cd.sizes.push_back(static_cast<std::uint32_t>(queue.size()));
  }
  for (auto r : cd.reps) {
    cd.rep_order.push_back(G.element_order(r));
    cd.centralizers.push_back(centralizer(G, r));
  }
  return cd;
}

// Checks |class| * |C(rep)| = |G| and rep^g = x for every x.
inline bool verify_classes(const Group& G, const ClassData& cd) {
  for (std::size_t c = 0; c < cd.reps.size(); ++c)
    if (std::uint64_t{cd.sizes[c]} * cd.centralizers[c].size() != G.order()) return false;
  for (Elem x = 0; x < G.order(); ++x)
    if (G.conj(cd.reps[cd.class_of[x]], cd.conjugator[x]) != x) return false;
  return true;
}

// Built groups with their class data, cached together.
struct GroupInfo {
  GroupPtr G;
  ClassData cd;
};
using GroupInfoPtr = std::shared_ptr<const GroupInfo>;

inline GroupInfoPtr analyse(GroupPtr G) {
  auto info = std::make_shared<GroupInfo>();
  info->G = std::move(G);
  info->cd = compute_classes(*info->G);
  return info;
}

// Subgroup generated by gens, grown incrementally; returns nullopt when the
// closure exceeds cap elements.
inline std::optional<Subgroup> generate_capped(const Group& G, const std::vector<Elem>& gens, std::size_t cap) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> cur{0};
  in[0] = 1;
  std::vector<Elem> used;
  for (auto s : gens) {
    if (in[s]) continue;
    used.push_back(s);
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (auto g : used) {
        Elem y = G.mult(cur[i], g);
        if (!in[y]) {
          in[y] = 1;
          cur.push_back(y);
          if (cur.size() > cap) return std::nullopt;
        }
      }
  }
  std::sort(cur.begin(), cur.end());
  return Subgroup{std::move(cur), true};
}

inline Subgroup generate_incremental(const Group& G, const std::vector<Elem>& gens) {
  return *generate_capped(G, gens, G.order());
}

// A small generating set of a subgroup.
inline std::vector<Elem> subgroup_generators(const Group& G, const Subgroup& K) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> cur{0}, gens;
  in[0] = 1;
  for (auto x : K.elems) {
    if (in[x]) continue;
    gens.push_back(x);
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (auto g : gens) {
        Elem y = G.mult(cur[i], g);
        if (!in[y]) {
          in[y] = 1;
          cur.push_back(y);
        }
      }
    if (cur.size() == K.size()) break;
  }
  return gens;
}

inline Subgroup normalizer(const Group& G, const Subgroup& K) {
  auto gens = subgroup_generators(G, K);
  Subgroup s;
  for (Elem g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (auto k : gens)
      if (!K.contains(G.conj(k, g))) {
        ok = false;
        break;
      }
    if (ok) s.elems.push_back(g);
  }
  return s;
}

inline Subgroup normalizer_of_cyclic(const Group& G, Elem y) {
  Subgroup Y = generate(G, {y});
  Subgroup s;
  for (Elem g = 0; g < G.order(); ++g)
    if (Y.contains(G.conj(y, g))) s.elems.push_back(g);
  return s;
}

inline bool is_normal(const Group& G, const Subgroup& N) {
  for (auto s : G.generators())
    for (auto x : N.elems)
      if (!N.contains(G.conj(x, s))) return false;
  return true;
}

inline Subgroup center(const Group& G) {
  Subgroup s;
  for (Elem x = 0; x < G.order(); ++x) {
    bool ok = true;
    for (auto g : G.generators())
      if (G.mult(g, x) != G.mult(x, g)) {
        ok = false;
        break;
      }
    if (ok) s.elems.push_back(x);
  }
  return s;
}

// Upper central series: Z_{i+1} = {x : [x, s] in Z_i for all generators s}.
inline Subgroup hypercenter(const Group& G, std::vector<Subgroup>* series = nullptr) {
  std::vector<char> in(G.order(), 0);
  in[0] = 1;
  std::size_t size = 1;
  if (series) series->push_back(Subgroup{{0}, true});
  for (;;) {
    std::vector<char> next(G.order(), 0);
    std::size_t cnt = 0;
    for (Elem x = 0; x < G.order(); ++x) {
      bool ok = true;
      for (auto s : G.generators())
        if (!in[G.comm(x, s)]) {
          ok = false;
          break;
        }
      if (ok) {
        next[x] = 1;
        ++cnt;
      }
    }
    if (cnt == size) break;
    in = std::move(next);
    size = cnt;
    if (series) {
      Subgroup z;
      for (Elem x = 0; x < G.order(); ++x)
        if (in[x]) z.elems.push_back(x);
      series->push_back(std::move(z));
    }
  }
  Subgroup z;
  for (Elem x = 0; x < G.order(); ++x)
    if (in[x]) z.elems.push_back(x);
  return z;
}

inline GroupPtr quotient(GroupPtr G, const Subgroup& N, const std::string& name = "") {
  if (!is_normal(*G, N)) throw group_error("subgroup is not normal");
  std::vector<Elem> coset_of(G->order(), kNone), reps;
  for (Elem x = 0; x < G->order(); ++x) {
    if (coset_of[x] != kNone) continue;
    const auto c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (auto m : N.elems) coset_of[G->mult(x, m)] = c;
  }
  auto Q = Group::quotient(G, std::move(coset_of), std::move(reps), name.empty() ? G->name() + "/N" : name);
  Q->materialize_table();
  Q->verify();
  return Q;
}

// Normal closure of a set of elements: generated by their classes.
inline Subgroup normal_closure(const Group& G, const ClassData& cd, const std::vector<Elem>& xs) {
  std::vector<char> cls(cd.num_classes(), 0);
  for (auto x : xs) cls[cd.class_of[x]] = 1;
  std::vector<Elem> gens;
  for (Elem y = 0; y < G.order(); ++y)
    if (cls[cd.class_of[y]]) gens.push_back(y);
  return generate_incremental(G, gens);
}

// All normal subgroups, as joins of normal closures of single classes.
inline std::vector<Subgroup> normal_subgroups(const Group& G, const ClassData& cd) {
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> out;
  auto add = [&](Subgroup s) {
    if (seen.insert(s.elems).second) out.push_back(std::move(s));
  };
  add(Subgroup{{0}, true});
  for (std::size_t c = 1; c < cd.num_classes(); ++c) add(normal_closure(G, cd, {cd.reps[c]}));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Elem> gi = subgroup_generators(G, out[i]), gj = subgroup_generators(G, out[j]);
      gi.insert(gi.end(), gj.begin(), gj.end());
      add(generate_incremental(G, gi));
    }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elems < b.elems;
  });
  return out;
}

struct FrobeniusData {
  Subgroup kernel;
  Subgroup complement;
};

inline constexpr std::uint32_t kFrobeniusCap = 10000;

// Frobenius kernel N: proper, nontrivial, normal, C_G(n) <= N for all
// 1 != n in N, gcd(|N|, |G:N|) = 1, with an explicit complement.
inline std::optional<FrobeniusData> is_frobenius(const Group& G, const ClassData& cd) {
  if (G.order() > kFrobeniusCap) throw group_error("Frobenius detection is capped at order 10^4");
  const std::uint32_t n = G.order();
  for (const auto& N : normal_subgroups(G, cd)) {
    if (N.size() == 1 || N.size() == n) continue;
    const std::uint64_t h = n / N.size();
    if (std::gcd<std::uint64_t, std::uint64_t>(N.size(), h) != 1) continue;
    bool ok = true;
    for (std::size_t c = 1; c < cd.num_classes() && ok; ++c) {
      if (!N.contains(cd.reps[c])) continue;
      for (auto g : cd.centralizers[c].elems)
        if (!N.contains(g)) {
          ok = false;
          break;
        }
    }
    if (!ok) continue;
    // Complement search: subgroups generated by one or two elements of
    // order dividing |G:N|, first generator a class representative.
    std::vector<Elem> cand;
    for (Elem x = 1; x < n; ++x)
      if (h % cd.order_of(x) == 0) cand.push_back(x);
    auto trivial_meet = [&](const Subgroup& H) {
      for (auto x : H.elems)
        if (x != 0 && N.contains(x)) return false;
      return true;
    };
    std::optional<Subgroup> comp;
    if (h == 1) comp = Subgroup{{0}, true};
    for (std::size_t c = 1; c < cd.num_classes() && !comp; ++c) {
      const Elem a = cd.reps[c];
      if (h % cd.rep_order[c] != 0) continue;
      auto A = generate_capped(G, {a}, h);
      if (!A || !trivial_meet(*A)) continue;
      if (A->size() == h) {
        comp = A;
        break;
      }
      for (auto b : cand) {
        if (A->contains(b)) continue;
        auto B = generate_capped(G, {a, b}, h);
        if (B && B->size() == h && trivial_meet(*B)) {
          comp = B;
          break;
        }
      }
    }
    if (!comp) {
      // Greedy fallback: add elements while the subgroup stays small and meets N trivially.
      std::vector<Elem> gens;
      Subgroup H{{0}, true};
      for (auto x : cand) {
        if (H.contains(x)) continue;
        auto gens2 = gens;
        gens2.push_back(x);
        auto T = generate_capped(G, gens2, h);
        if (T && trivial_meet(*T)) {
          gens = gens2;
          H = *T;
          if (H.size() == h) break;
        }
      }
      if (H.size() == h) comp = H;
    }
    if (comp) return FrobeniusData{N, *comp};
  }
  return std::nullopt;
}

// Sylow p-subgroup grown through p-elements of successive normalizers.
inline Subgroup sylow(const Group& G, const ClassData& cd, std::uint64_t p) {
  std::uint64_t target = 1;
  for (std::uint64_t n = G.order(); n % p == 0; n /= p) target *= p;
  Subgroup P{{0}, true};
  auto is_p_power = [p](std::uint64_t k) {
    while (k % p == 0) k /= p;
    return k == 1;
  };
  std::vector<Elem> gens;
  while (P.size() < target) {
    auto pg = subgroup_generators(G, P);
    Elem pick = kNone;
    for (Elem g = 1; g < G.order() && pick == kNone; ++g) {
      if (P.contains(g) || !is_p_power(cd.order_of(g))) continue;
      bool norm = true;
      for (auto k : pg)
        if (!P.contains(G.conj(k, g))) {
          norm = false;
          break;
        }
      if (norm) pick = g;
    }
    if (pick == kNone) throw group_error("Sylow growth failed");
    gens.push_back(pick);
    P = generate_incremental(G, gens);
  }
  return P;
}

struct PrimeGraph {
  std::vector<std::uint64_t> primes;
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::vector<std::vector<std::uint64_t>> components;
};

inline std::set<std::uint64_t> element_orders(const ClassData& cd) {
  return std::set<std::uint64_t>(cd.rep_order.begin(), cd.rep_order.end());
}

inline PrimeGraph spectrum_prime_graph(const Group& G, const ClassData& cd) {
  PrimeGraph pg;
  pg.primes = ff::prime_factors(G.order());
  for (auto o : element_orders(cd))
    for (std::size_t i = 0; i < pg.primes.size(); ++i)
      for (std::size_t j = i + 1; j < pg.primes.size(); ++j)
        if (o % (pg.primes[i] * pg.primes[j]) == 0) pg.edges.emplace(pg.primes[i], pg.primes[j]);
  std::vector<std::size_t> parent(pg.primes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto idx = [&](std::uint64_t p) { return static_cast<std::size_t>(std::find(pg.primes.begin(), pg.primes.end(), p) - pg.primes.begin()); };
  for (auto [a, b] : pg.edges) parent[find(idx(a))] = find(idx(b));
  std::map<std::size_t, std::vector<std::uint64_t>> comp;
  for (std::size_t i = 0; i < pg.primes.size(); ++i) comp[find(i)].push_back(pg.primes[i]);
  for (auto& [k, v] : comp) pg.components.push_back(v);
  return pg;
}

}  // namespace engel
