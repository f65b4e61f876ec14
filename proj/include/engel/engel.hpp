// Engel words [x,_n y], Engel depth with cycle detection, Engel sink and
// source sets, and the normalizer certificate for missing arcs.

#pragma once

#include <string>
#include <vector>

#include "engel/group.hpp"
#include "engel/parallel.hpp"
#include "engel/structure.hpp"

namespace engel {

// Word selector: [x,_n y] for fixed n, or "some n" (cumulative).
struct Word {
  bool cumulative = false;
  std::uint32_t n = 1;
  bool commuting_alias = false;  // spelled "commuting"; same as engel:1

  static Word fixed(std::uint32_t n) { return {false, n, false}; }
  static Word any() { return {true, 0, false}; }
  static Word commuting() { return {false, 1, true}; }

  static Word parse(const std::string& s) {
    if (s == "commuting") return commuting();
    if (s == "engel:*") return any();
    if (s.rfind("engel:", 0) == 0) {
      auto n = parse_n(s.substr(6));
      if (n == 0) throw std::invalid_argument("Engel word length must be positive");
      return fixed(n);
    }
    throw std::invalid_argument("unknown word '" + s + "' (expected engel:n, engel:* or commuting)");
  }
  std::string str() const {
    if (commuting_alias) return "commuting";
    return cumulative ? "engel:*" : "engel:" + std::to_string(n);
  }

 private:
  static std::uint32_t parse_n(const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("bad Engel length");
    return static_cast<std::uint32_t>(std::stoul(t));
  }
};

inline Elem engel_word(const Group& G, Elem x, Elem y, std::uint32_t n) {
  const Elem yi = G.inv(y);
  for (std::uint32_t i = 0; i < n && x != 0; ++i) x = G.mult(G.mult(G.inv(x), yi), G.mult(x, y));
  return x;
}

struct EngelResult {
  bool reached_identity = false;
  std::uint32_t depth = 0;         // least n with [x,_n y] = 1 when reached
  std::uint32_t cycle_length = 0;  // period of the eventual cycle otherwise
};

// Per-thread visited marks for engel_depth, reset by bumping a stamp.
class EngelScratch {
 public:
  explicit EngelScratch(std::uint32_t n = 0) : stamp_(n, 0), step_(n, 0) {}
  void ensure(std::uint32_t n) {
    if (stamp_.size() < n) {
      stamp_.assign(n, 0);
      step_.assign(n, 0);
      cur_ = 0;
    }
  }
  std::uint32_t next() {
    if (++cur_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      cur_ = 1;
    }
    return cur_;
  }
  std::vector<std::uint32_t> stamp_, step_;
  std::uint32_t cur_ = 0;
};

// Iterates z -> [z, y] from x until the identity or a repeat; at most |G| steps.
inline EngelResult engel_depth(const Group& G, Elem x, Elem y, EngelScratch& sc) {
  EngelResult r;
  if (x == 0) {
    r.reached_identity = true;
    return r;
  }
  sc.ensure(G.order());
  const std::uint32_t s = sc.next();
  const Elem yi = G.inv(y);
  Elem z = x;
  sc.stamp_[z] = s;
  sc.step_[z] = 0;
  for (std::uint32_t step = 1; step <= G.order(); ++step) {
    z = G.mult(G.mult(G.inv(z), yi), G.mult(z, y));
    if (z == 0) {
      r.reached_identity = true;
      r.depth = step;
      return r;
    }
    if (sc.stamp_[z] == s) {
      r.cycle_length = step - sc.step_[z];
      return r;
    }
    sc.stamp_[z] = s;
    sc.step_[z] = step;
  }
  throw group_error("Engel iteration exceeded |G| steps");
}

inline EngelResult engel_depth(const Group& G, Elem x, Elem y) {
  EngelScratch sc(G.order());
  return engel_depth(G, x, y, sc);
}

inline bool is_arc(const Group& G, Elem x, Elem y, const Word& w, EngelScratch& sc) {
  if (w.cumulative) return engel_depth(G, x, y, sc).reached_identity;
  return engel_word(G, x, y, w.n) == 0;
}

inline bool is_arc(const Group& G, Elem x, Elem y, const Word& w) {
  EngelScratch sc(G.order());
  return is_arc(G, x, y, w, sc);
}

struct EngelSets {
  std::vector<char> right;  // omega(g, x) = 1 for all x
  std::vector<char> left;   // omega(x, g) = 1 for all x
  std::vector<char> omega;  // intersection
  std::size_t omega_size() const {
    std::size_t c = 0;
    for (char v : omega) c += v != 0;
    return c;
  }
};

// Both sets are unions of classes, so only representatives are tested.
inline EngelSets engel_sinks_sources(const Group& G, const ClassData& cd, const Word& w) {
  const std::size_t k = cd.num_classes();
  std::vector<char> rc(k, 1), lc(k, 1);
  std::vector<EngelScratch> scratch(thread_count());
  parallel_for(k, [&](std::size_t c, unsigned t) {
    const Elem r = cd.reps[c];
    auto& sc = scratch[t];
    for (Elem x = 0; x < G.order() && rc[c]; ++x)
      if (!is_arc(G, r, x, w, sc)) rc[c] = 0;
    for (Elem x = 0; x < G.order() && lc[c]; ++x)
      if (!is_arc(G, x, r, w, sc)) lc[c] = 0;
  });
  EngelSets s;
  s.right.resize(G.order());
  s.left.resize(G.order());
  s.omega.resize(G.order());
  for (Elem x = 0; x < G.order(); ++x) {
    s.right[x] = rc[cd.class_of[x]];
    s.left[x] = lc[cd.class_of[x]];
    s.omega[x] = s.right[x] && s.left[x];
  }
  return s;
}

struct NcReport {
  bool self_normalizing = false;  // N_G(K) = K
  bool ti_condition = false;      // y in K^g implies K^g = K
  bool holds() const { return self_normalizing && ti_condition; }
};

// When both conditions hold no x outside K has an arc x -> y.
inline NcReport nc_certificate(const Group& G, Elem y, const Subgroup& K) {
  if (!K.contains(y)) throw group_error("y is not in K");
  if (K.size() == G.order()) throw group_error("K = G gives a vacuous certificate");
  NcReport r;
  r.self_normalizing = normalizer(G, K).size() == K.size();
  // y in K^g  <=>  g y g^-1 in K ; then K^g = K forces g in N_G(K).
  auto gens = subgroup_generators(G, K);
  r.ti_condition = true;
  for (Elem g = 0; g < G.order() && r.ti_condition; ++g) {
    if (!K.contains(G.mult(G.mult(g, y), G.inv(g)))) continue;
    const Elem gi = G.inv(g);
    for (auto k : gens)
      if (!K.contains(G.conj(k, gi))) {
        r.ti_condition = false;
        break;
      }
  }
  return r;
}

}  // namespace engel
