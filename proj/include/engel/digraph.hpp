// Immutable digraphs on vertex ids 0..V-1, either with materialised CSR
// arcs or with arcs generated on demand by an oracle.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace engel {

struct graph_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// On-demand arc source: degree and i-th out-neighbour of a vertex.
struct ArcOracle {
  virtual ~ArcOracle() = default;
  virtual std::uint32_t out_degree(std::uint32_t v) const = 0;
  virtual std::uint32_t neighbor(std::uint32_t v, std::uint32_t i) const = 0;
  virtual std::uint64_t arc_count() const = 0;
};

class Digraph {
 public:
  Digraph() = default;

  static Digraph from_arcs(std::uint32_t V, std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs,
                           std::vector<std::uint32_t> labels = {}) {
    Digraph d;
    d.V_ = V;
    d.labels_ = labels.empty() ? identity_labels(V) : std::move(labels);
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    d.offsets_.assign(V + 1, 0);
    for (auto [a, b] : arcs) {
      if (a >= V || b >= V) throw graph_error("arc endpoint out of range");
      ++d.offsets_[a + 1];
    }
    for (std::uint32_t v = 0; v < V; ++v) d.offsets_[v + 1] += d.offsets_[v];
    d.targets_.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) d.targets_[i] = arcs[i].second;
    return d;
  }

  static Digraph from_csr(std::vector<std::uint64_t> offsets, std::vector<std::uint32_t> targets, std::vector<std::uint32_t> labels) {
    Digraph d;
    d.V_ = static_cast<std::uint32_t>(offsets.size() - 1);
    d.offsets_ = std::move(offsets);
    d.targets_ = std::move(targets);
    d.labels_ = std::move(labels);
    return d;
  }

  static Digraph from_oracle(std::uint32_t V, std::shared_ptr<const ArcOracle> oracle, std::vector<std::uint32_t> labels) {
    Digraph d;
    d.V_ = V;
    d.oracle_ = std::move(oracle);
    d.labels_ = std::move(labels);
    return d;
  }

  std::uint32_t num_vertices() const { return V_; }
  bool empty() const { return V_ == 0; }
  bool implicit() const { return oracle_ != nullptr; }
  std::uint64_t num_arcs() const { return oracle_ ? oracle_->arc_count() : targets_.size(); }
  // Vertex id -> external label (group element index for Engel graphs).
  const std::vector<std::uint32_t>& labels() const { return labels_; }

  std::uint32_t out_degree(std::uint32_t v) const {
    return oracle_ ? oracle_->out_degree(v) : static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t neighbor(std::uint32_t v, std::uint32_t i) const {
    return oracle_ ? oracle_->neighbor(v, i) : targets_[offsets_[v] + i];
  }
  template <class F>
  void for_each_out(std::uint32_t v, F&& f) const {
    const std::uint32_t d = out_degree(v);
    for (std::uint32_t i = 0; i < d; ++i) f(neighbor(v, i));
  }
  std::vector<std::uint32_t> out(std::uint32_t v) const {
    std::vector<std::uint32_t> r;
    for_each_out(v, [&](std::uint32_t w) { r.push_back(w); });
    std::sort(r.begin(), r.end());
    return r;
  }

  // Materialised copy (no-op for CSR graphs).
  Digraph materialize() const {
    if (!oracle_) return *this;
    std::vector<std::uint64_t> off(V_ + 1, 0);
    std::vector<std::uint32_t> tg;
    tg.reserve(num_arcs());
    for (std::uint32_t v = 0; v < V_; ++v) {
      auto o = out(v);
      tg.insert(tg.end(), o.begin(), o.end());
      off[v + 1] = tg.size();
    }
    return from_csr(std::move(off), std::move(tg), labels_);
  }

 private:
  static std::vector<std::uint32_t> identity_labels(std::uint32_t V) {
    std::vector<std::uint32_t> l(V);
    for (std::uint32_t i = 0; i < V; ++i) l[i] = i;
    return l;
  }

  std::uint32_t V_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::vector<std::uint32_t> labels_;
  std::shared_ptr<const ArcOracle> oracle_;
};

struct SccResult {
  std::vector<std::uint32_t> comp;  // component id per vertex
  std::uint32_t count = 0;
  std::vector<std::uint32_t> sizes;
  // Condensation summary (filled when count > 1): source and sink components.
  std::uint32_t sources = 0, sinks = 0;
  bool empty = false;  // vertex set was empty; reported as vacuously strongly connected

  bool strongly_connected() const { return count <= 1; }
  std::vector<std::uint32_t> sorted_sizes() const {
    auto s = sizes;
    std::sort(s.rbegin(), s.rend());
    return s;
  }
};

// Tarjan's algorithm with an explicit frame stack.
inline SccResult scc(const Digraph& D, bool condensation = true) {
  const std::uint32_t V = D.num_vertices();
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  SccResult r;
  r.empty = V == 0;
  r.comp.assign(V, kUnseen);
  std::vector<std::uint32_t> index(V, kUnseen), low(V, 0);
  std::vector<char> on_stack(V, 0);
  std::vector<std::uint32_t> stack;
  struct Frame {
    std::uint32_t v, pos, deg;
  };
  std::vector<Frame> frames;
  std::uint32_t counter = 0;
  for (std::uint32_t root = 0; root < V; ++root) {
    if (index[root] != kUnseen) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    frames.push_back({root, 0, D.out_degree(root)});
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.pos < f.deg) {
        const std::uint32_t w = D.neighbor(f.v, f.pos++);
        if (index[w] == kUnseen) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0, D.out_degree(w)});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::uint32_t v = f.v;
      frames.pop_back();
      if (low[v] == index[v]) {
        std::uint32_t sz = 0, w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          r.comp[w] = r.count;
          ++sz;
        } while (w != v);
        r.sizes.push_back(sz);
        ++r.count;
      }
      if (!frames.empty()) {
        const std::uint32_t u = frames.back().v;
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  if (condensation && r.count > 1) {
    std::vector<char> has_in(r.count, 0), has_out(r.count, 0);
    for (std::uint32_t v = 0; v < V; ++v)
      D.for_each_out(v, [&](std::uint32_t w) {
        if (r.comp[v] != r.comp[w]) {
          has_out[r.comp[v]] = 1;
          has_in[r.comp[w]] = 1;
        }
      });
    for (std::uint32_t c = 0; c < r.count; ++c) {
      r.sources += !has_in[c];
      r.sinks += !has_out[c];
    }
  }
  return r;
}

// Reference check for small graphs: u, v share a component iff each reaches
// the other in the Floyd-Warshall transitive closure.
inline bool scc_matches_closure(const Digraph& D, const SccResult& r) {
  const std::uint32_t V = D.num_vertices();
  if (V > 2000) throw graph_error("closure check is limited to 2000 vertices");
  std::vector<std::vector<char>> reach(V, std::vector<char>(V, 0));
  for (std::uint32_t v = 0; v < V; ++v) {
    reach[v][v] = 1;
    D.for_each_out(v, [&](std::uint32_t w) { reach[v][w] = 1; });
  }
  for (std::uint32_t k = 0; k < V; ++k)
    for (std::uint32_t i = 0; i < V; ++i)
      if (reach[i][k])
        for (std::uint32_t j = 0; j < V; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  for (std::uint32_t i = 0; i < V; ++i)
    for (std::uint32_t j = 0; j < V; ++j)
      if ((reach[i][j] && reach[j][i]) != (r.comp[i] == r.comp[j])) return false;
  return true;
}

struct WeakReport {
  std::uint32_t components = 0;
  std::uint32_t largest = 0;
  std::uint32_t diameter = 0;  // of the largest component, symmetrised arcs
  bool exact = true;           // false when sources were sampled
  bool empty = false;
};

inline constexpr std::uint32_t kDiameterCap = 50000;

// Weak components and diameter over the symmetrised arc relation. BFS runs
// from `sources` if given (e.g. one vertex per automorphism orbit), from every
// vertex below the cap, and from a sample above it.
inline WeakReport weak_components_and_diameter(const Digraph& D, const std::vector<std::uint32_t>& sources = {}) {
  const std::uint32_t V = D.num_vertices();
  WeakReport rep;
  rep.empty = V == 0;
  if (V == 0) return rep;
  std::vector<std::vector<std::uint32_t>> adj(V);
  for (std::uint32_t v = 0; v < V; ++v)
    D.for_each_out(v, [&](std::uint32_t w) {
      if (v == w) return;
      adj[v].push_back(w);
      adj[w].push_back(v);
    });
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<std::uint32_t> comp(V, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> csize;
  for (std::uint32_t s = 0; s < V; ++s) {
    if (comp[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto c = static_cast<std::uint32_t>(csize.size());
    std::vector<std::uint32_t> q{s};
    comp[s] = c;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (auto w : adj[q[i]])
        if (comp[w] == std::numeric_limits<std::uint32_t>::max()) {
          comp[w] = c;
          q.push_back(w);
        }
    csize.push_back(static_cast<std::uint32_t>(q.size()));
  }
  rep.components = static_cast<std::uint32_t>(csize.size());
  const auto big = static_cast<std::uint32_t>(std::max_element(csize.begin(), csize.end()) - csize.begin());
  rep.largest = csize[big];
  std::vector<std::uint32_t> src;
  if (!sources.empty()) {
    for (auto s : sources)
      if (s < V && comp[s] == big) src.push_back(s);
  } else {
    for (std::uint32_t v = 0; v < V; ++v)
      if (comp[v] == big) src.push_back(v);
    if (src.size() > kDiameterCap) {
      std::vector<std::uint32_t> sample;
      const std::size_t step = src.size() / 1000 + 1;
      for (std::size_t i = 0; i < src.size(); i += step) sample.push_back(src[i]);
      src = std::move(sample);
      rep.exact = false;
    }
  }
  std::vector<std::uint32_t> dist(V);
  for (auto s : src) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> q{s};
    dist[s] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (auto w : adj[q[i]])
        if (dist[w] == std::numeric_limits<std::uint32_t>::max()) {
          dist[w] = dist[q[i]] + 1;
          rep.diameter = std::max(rep.diameter, dist[w]);
          q.push_back(w);
        }
  }
  return rep;
}

}  // namespace engel
