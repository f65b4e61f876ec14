// Finite groups on a dense index space 0..n-1 with 0 the identity.
//
// Concrete groups (matrix and permutation families) are stored as
// permutations of a small domain; a product is found from the images of a
// base, looked up in a key index. Small groups additionally keep a full
// multiplication table. Semidirect products and quotients are layered on
// top of a parent group.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "engel/ff.hpp"
#include "engel/matrix.hpp"

namespace engel {

using Elem = std::uint32_t;
inline constexpr Elem kNone = 0xffffffffu;

struct group_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Open-addressing map uint64 -> uint32 with linear probing.
class FlatIndex {
 public:
  void reserve(std::size_t n) {
    std::size_t cap = 16;
    while (cap < 2 * n + 1) cap <<= 1;
    keys_.assign(cap, kEmpty);
    vals_.assign(cap, kNone);
    mask_ = cap - 1;
    size_ = 0;
  }
  void insert(std::uint64_t k, std::uint32_t v) {
    if (keys_.empty() || 2 * (size_ + 1) > keys_.size()) grow();
    std::size_t h = slot(k);
    while (keys_[h] != kEmpty && keys_[h] != k) h = (h + 1) & mask_;
    if (keys_[h] == kEmpty) ++size_;
    keys_[h] = k;
    vals_[h] = v;
  }
  std::uint32_t find(std::uint64_t k) const {
    if (keys_.empty()) return kNone;
    std::size_t h = slot(k);
    while (keys_[h] != kEmpty) {
      if (keys_[h] == k) return vals_[h];
      h = (h + 1) & mask_;
    }
    return kNone;
  }
  std::size_t size() const { return size_; }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  std::size_t slot(std::uint64_t k) const { return static_cast<std::size_t>((k * 0x9E3779B97F4A7C15ull) >> 17) & mask_; }
  void grow() {
    auto ok = std::move(keys_);
    auto ov = std::move(vals_);
    reserve(std::max<std::size_t>(16, ok.size()));
    for (std::size_t i = 0; i < ok.size(); ++i)
      if (ok[i] != kEmpty) insert(ok[i], ov[i]);
  }
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> vals_;
  std::size_t mask_ = 0, size_ = 0;
};

// Matrix payload of a matrix group; projective groups store one canonical
// representative per coset of the allowed scalars.
struct MatrixPayload {
  ff::FieldPtr field;
  std::uint32_t dim = 0;
  bool projective = false;
  std::vector<std::uint32_t> scalars;  // allowed scalars (λ with λI in the linear group)
  unsigned bits = 0;                   // bits per packed entry
  std::vector<std::uint64_t> keys;     // packed canonical matrix per element
  FlatIndex key_index;

  std::uint64_t pack(const Mat& x) const {
    std::uint64_t k = 0;
    for (std::size_t i = x.a.size(); i-- > 0;) k = (k << bits) | x.a[i];
    return k;
  }
  Mat unpack(std::uint64_t k) const {
    Mat x(dim);
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    for (std::size_t i = 0; i < x.a.size(); ++i, k >>= bits) x.a[i] = static_cast<std::uint32_t>(k & mask);
    return x;
  }
  // Scale so the first nonzero entry has least index among allowed multiples.
  Mat canonical(const Mat& x) const {
    if (!projective) return x;
    std::uint32_t e = 0;
    for (auto v : x.a)
      if (v) {
        e = v;
        break;
      }
    std::uint32_t best = 1, besti = field->mul(e, 1);
    for (auto l : scalars) {
      std::uint32_t t = field->mul(l, e);
      if (t < besti) {
        besti = t;
        best = l;
      }
    }
    return best == 1 ? x : mat_scale(*field, x, best);
  }
};

class Group {
 public:
  enum class Backend { Table, Perm, Extension, Quotient };

  std::uint32_t order() const { return n_; }
  Backend backend() const { return backend_; }
  // Backend the group was built with, before any table was materialised.
  Backend origin() const { return backend_ == Backend::Table ? backend_before_table_ : backend_; }
  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }
  const std::vector<Elem>& generators() const { return gens_; }

  Elem mult(Elem a, Elem b) const {
    switch (backend_) {
      case Backend::Table:
        return table_[std::size_t{a} * n_ + b];
      case Backend::Perm:
        return perm_mult(a, b);
      case Backend::Extension: {
        const std::uint32_t nl = parent_->order();
        const std::uint32_t k1 = a / nl, l1 = a % nl, k2 = b / nl, l2 = b % nl;
        const Elem l = parent_->mult(l1, alpha_pow_[k1][l2]);
        return ((k1 + k2) % ext_e_) * nl + l;
      }
      case Backend::Quotient:
        return coset_of_[parent_->mult(reps_[a], reps_[b])];
    }
    return kNone;
  }
  Elem inv(Elem a) const { return inv_[a]; }
  // [a, b] = a^-1 b^-1 a b
  Elem comm(Elem a, Elem b) const { return mult(mult(inv_[a], inv_[b]), mult(a, b)); }
  // x^g = g^-1 x g
  Elem conj(Elem x, Elem g) const { return mult(mult(inv_[g], x), g); }
  Elem power(Elem a, std::int64_t e) const {
    if (e < 0) {
      a = inv_[a];
      e = -e;
    }
    Elem r = 0;
    while (e) {
      if (e & 1) r = mult(r, a);
      a = mult(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t element_order(Elem a) const {
    std::uint64_t k = 1;
    for (Elem x = a; x != 0; x = mult(x, a)) ++k;
    return k;
  }

  // Payload access.
  bool has_matrices() const { return matrices_ != nullptr; }
  const MatrixPayload& matrices() const {
    if (!matrices_) throw group_error("group has no matrix payload");
    return *matrices_;
  }
  Mat matrix(Elem a) const { return matrices().unpack(matrices().keys[a]); }
  // Index of a matrix (canonicalised for projective groups), if it is in the group.
  std::optional<Elem> find_matrix(const Mat& x) const {
    const auto& P = matrices();
    if (x.m != P.dim) return std::nullopt;
    auto v = P.key_index.find(P.pack(P.canonical(x)));
    if (v == kNone) return std::nullopt;
    return v;
  }
  std::uint32_t degree() const { return degree_; }
  // Permutation on the internal domain (Perm backend only).
  const std::uint16_t* perm(Elem a) const { return perms_.data() + std::size_t{a} * degree_; }
  bool has_perms() const { return !perms_.empty(); }
  // Natural permutation payload for permutation families (points 0..d-1).
  bool is_permutation_group() const { return natural_degree_ > 0; }
  std::uint32_t natural_degree() const { return natural_degree_; }
  std::vector<std::uint32_t> natural_perm(Elem a) const {
    std::vector<std::uint32_t> r(natural_degree_);
    for (std::uint32_t i = 0; i < natural_degree_; ++i) r[i] = perm(a)[i];
    return r;
  }

  const std::shared_ptr<const Group>& parent() const { return parent_; }
  std::uint32_t extension_degree() const { return ext_e_; }
  // Extension elements: (l, k) <-> k*|L| + l.
  Elem ext_pack(Elem l, std::uint32_t k) const { return k * parent_->order() + l; }
  const std::vector<Elem>& quotient_reps() const { return reps_; }
  const std::vector<Elem>& coset_of() const { return coset_of_; }

  // Materialise a full table when small enough (n <= 2048).
  void materialize_table() {
    if (n_ > kTableMax || backend_ == Backend::Table) return;
    std::vector<Elem> t(std::size_t{n_} * n_);
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b) t[std::size_t{a} * n_ + b] = mult(a, b);
    table_ = std::move(t);
    backend_before_table_ = backend_;
    backend_ = Backend::Table;
  }

  // Identity, inverse and associativity checks; exact for n <= 200.
  void verify() const {
    for (Elem a = 0; a < n_; ++a) {
      if (mult(0, a) != a || mult(a, 0) != a) throw group_error("0 is not the identity");
      if (mult(a, inv_[a]) != 0 || mult(inv_[a], a) != 0) throw group_error("inverse check failed");
    }
    if (n_ <= 200) {
      for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b) {
          Elem ab = mult(a, b);
          for (Elem c = 0; c < n_; ++c)
            if (mult(ab, c) != mult(a, mult(b, c))) throw group_error("associativity failed");
        }
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<Elem> d(0, n_ - 1);
      for (int i = 0; i < 10000; ++i) {
        Elem a = d(rng), b = d(rng), c = d(rng);
        if (mult(mult(a, b), c) != mult(a, mult(b, c))) throw group_error("associativity failed");
      }
    }
  }

  static constexpr std::uint32_t kTableMax = 2048;

  // --- construction hooks used by the builders ---

  // Table group from an explicit n x n table (identity must be 0).
  static std::shared_ptr<Group> from_table(std::uint32_t n, std::vector<Elem> table, std::vector<Elem> gens, std::string name) {
    auto g = std::make_shared<Group>();
    g->n_ = n;
    g->backend_ = Backend::Table;
    g->table_ = std::move(table);
    g->name_ = std::move(name);
    g->inv_.assign(n, kNone);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (g->table_[std::size_t{a} * n + b] == 0) {
          g->inv_[a] = b;
          break;
        }
    for (Elem a = 0; a < n; ++a)
      if (g->inv_[a] == kNone) throw group_error("table has no inverse for some element");
    g->gens_ = std::move(gens);
    return g;
  }

  // Permutation group on a domain of size d, elements given as images.
  // perms holds n*d entries, element 0 must be the identity.
  static std::shared_ptr<Group> from_perms(std::uint32_t d, std::vector<std::uint16_t> perms, std::vector<Elem> gens,
                                           std::string name) {
    auto g = std::make_shared<Group>();
    g->degree_ = d;
    g->n_ = static_cast<std::uint32_t>(perms.size() / d);
    g->perms_ = std::move(perms);
    g->backend_ = Backend::Perm;
    g->gens_ = std::move(gens);
    g->name_ = std::move(name);
    g->choose_base();
    g->inv_.resize(g->n_);
    std::vector<std::uint16_t> tmp(d);
    for (Elem a = 0; a < g->n_; ++a) {
      const auto* p = g->perm(a);
      for (std::uint32_t i = 0; i < d; ++i) tmp[p[i]] = static_cast<std::uint16_t>(i);
      Elem v = g->lookup_images(tmp.data());
      if (v == kNone) throw group_error("inverse not in group");
      g->inv_[a] = v;
    }
    return g;
  }

  void set_matrix_payload(std::shared_ptr<MatrixPayload> p) { matrices_ = std::move(p); }
  void set_natural_degree(std::uint32_t d) { natural_degree_ = d; }

  // Semidirect product L x| <alpha>, alpha given by its images on indices.
  static std::shared_ptr<Group> extension(std::shared_ptr<const Group> L, const std::vector<Elem>& alpha, std::uint32_t e,
                                          std::string name) {
    const std::uint32_t nl = L->order();
    auto g = std::make_shared<Group>();
    g->backend_ = Backend::Extension;
    g->ext_e_ = e;
    g->n_ = nl * e;
    g->alpha_pow_.assign(e, std::vector<Elem>(nl));
    for (Elem l = 0; l < nl; ++l) g->alpha_pow_[0][l] = l;
    for (std::uint32_t k = 1; k < e; ++k)
      for (Elem l = 0; l < nl; ++l) g->alpha_pow_[k][l] = alpha[g->alpha_pow_[k - 1][l]];
    g->parent_ = L;
    g->name_ = std::move(name);
    g->inv_.resize(g->n_);
    for (std::uint32_t k = 0; k < e; ++k)
      for (Elem l = 0; l < nl; ++l) {
        std::uint32_t kk = (e - k) % e;
        g->inv_[k * nl + l] = kk * nl + g->alpha_pow_[kk][L->inv(l)];
      }
    for (auto s : L->generators()) g->gens_.push_back(s);
    if (e > 1) g->gens_.push_back(nl);
    return g;
  }

  // Quotient by a normal subgroup given as the coset id of every element;
  // reps[c] is a representative of coset c with reps[0] in N.
  static std::shared_ptr<Group> quotient(std::shared_ptr<const Group> G, std::vector<Elem> coset_of, std::vector<Elem> reps,
                                         std::string name) {
    auto g = std::make_shared<Group>();
    g->backend_ = Backend::Quotient;
    g->n_ = static_cast<std::uint32_t>(reps.size());
    g->coset_of_ = std::move(coset_of);
    g->reps_ = std::move(reps);
    g->parent_ = G;
    g->name_ = std::move(name);
    g->inv_.resize(g->n_);
    for (Elem c = 0; c < g->n_; ++c) g->inv_[c] = g->coset_of_[G->inv(g->reps_[c])];
    std::vector<char> seen(g->n_, 0);
    for (auto s : G->generators()) {
      Elem c = g->coset_of_[s];
      if (c != 0 && !seen[c]) {
        seen[c] = 1;
        g->gens_.push_back(c);
      }
    }
    return g;
  }

  std::uint32_t base_size() const { return static_cast<std::uint32_t>(base_.size()); }

  // Index of the element whose permutation sends base[i] to imgs[base[i]].
  Elem lookup_images(const std::uint16_t* imgs) const {
    std::uint64_t key = 0;
    for (auto b : base_) key = key * degree_ + imgs[b];
    return lookup_key(key);
  }

 private:
  Elem perm_mult(Elem a, Elem b) const {
    const std::uint16_t* pa = perms_.data() + std::size_t{a} * degree_;
    const std::uint16_t* pb = perms_.data() + std::size_t{b} * degree_;
    std::uint64_t key = 0;
    for (auto bp : base_) key = key * degree_ + pb[pa[bp]];
    return lookup_key(key);
  }
  Elem lookup_key(std::uint64_t key) const { return direct_.empty() ? index_.find(key) : direct_[key]; }

  // Greedy base: add the point that splits the element set most until
  // base images separate all elements.
  void choose_base() {
    base_.clear();
    std::vector<std::uint64_t> cls(n_, 0);
    std::uint64_t radix = 1;
    std::size_t distinct = 1;
    std::vector<char> used(degree_, 0);
    while (distinct < n_) {
      std::size_t best = distinct;
      std::uint32_t bestp = degree_;
      std::vector<std::uint64_t> tmp(n_);
      for (std::uint32_t pt = 0; pt < degree_; ++pt) {
        if (used[pt]) continue;
        for (Elem a = 0; a < n_; ++a) tmp[a] = cls[a] * degree_ + perm(a)[pt];
        std::sort(tmp.begin(), tmp.end());
        std::size_t c = std::unique(tmp.begin(), tmp.end()) - tmp.begin();
        if (c > best) {
          best = c;
          bestp = pt;
          if (c == n_) break;
        }
      }
      if (bestp == degree_) throw group_error("permutation action is not faithful");
      used[bestp] = 1;
      base_.push_back(static_cast<std::uint16_t>(bestp));
      for (Elem a = 0; a < n_; ++a) cls[a] = cls[a] * degree_ + perm(a)[bestp];
      if (radix > (~std::uint64_t{0}) / degree_) throw group_error("base key overflow");
      radix *= degree_;
      distinct = best;
    }
    if (radix <= (std::uint64_t{1} << 24)) {
      direct_.assign(radix, kNone);
      for (Elem a = 0; a < n_; ++a) direct_[cls[a]] = a;
    } else {
      index_.reserve(n_);
      for (Elem a = 0; a < n_; ++a) index_.insert(cls[a], a);
    }
  }

  std::uint32_t n_ = 0;
  Backend backend_ = Backend::Table;
  Backend backend_before_table_ = Backend::Table;
  std::string name_;
  std::vector<Elem> gens_;
  std::vector<Elem> inv_;

  std::vector<Elem> table_;

  std::uint32_t degree_ = 0;
  std::vector<std::uint16_t> perms_;
  std::vector<std::uint16_t> base_;
  std::vector<Elem> direct_;
  FlatIndex index_;

  std::shared_ptr<const Group> parent_;
  std::uint32_t ext_e_ = 1;
  std::vector<std::vector<Elem>> alpha_pow_;
  std::vector<Elem> reps_, coset_of_;

  std::shared_ptr<MatrixPayload> matrices_;
  std::uint32_t natural_degree_ = 0;
};

using GroupPtr = std::shared_ptr<const Group>;

// Sorted element list closed under multiplication.
struct Subgroup {
  std::vector<Elem> elems;
  bool closed = true;

  std::size_t size() const { return elems.size(); }
  bool contains(Elem x) const { return std::binary_search(elems.begin(), elems.end(), x); }
  bool operator==(const Subgroup& o) const { return elems == o.elems; }
};

inline Subgroup generate(const Group& G, const std::vector<Elem>& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<Elem> out{0};
  in[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto s : gens) {
      Elem y = G.mult(out[i], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return {std::move(out), true};
}

inline bool is_closed(const Group& G, const std::vector<Elem>& sorted) {
  if (sorted.empty() || sorted[0] != 0) return false;
  std::vector<char> in(G.order(), 0);
  for (auto x : sorted) in[x] = 1;
  for (auto a : sorted) {
    if (!in[G.inv(a)]) return false;
    for (auto b : sorted)
      if (!in[G.mult(a, b)]) return false;
  }
  return true;
}

inline Subgroup make_subgroup(const Group& G, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  bool c = is_closed(G, elems);
  if (!c) throw group_error("element set is not a subgroup");
  return {std::move(elems), c};
}

inline Subgroup whole_group(const Group& G) {
  Subgroup s;
  s.elems.resize(G.order());
  for (Elem i = 0; i < G.order(); ++i) s.elems[i] = i;
  return s;
}

// Small generating set found greedily: add the least element outside the
// current closure until the whole group is reached.
inline std::vector<Elem> greedy_generators(const Group& G) {
  std::vector<Elem> gens;
  std::vector<char> in(G.order(), 0);
  in[0] = 1;
  std::vector<Elem> cur{0};
  for (Elem x = 1; x < G.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (auto s : gens) {
        Elem y = G.mult(cur[i], s);
        if (!in[y]) {
          in[y] = 1;
          cur.push_back(y);
        }
      }
    }
    if (cur.size() == G.order()) break;
  }
  return gens;
}

}  // namespace engel
