// Group descriptors and constructors for the named families.
//
// Grammar: FAMILY ':' param (':' param)* ['.fieldaut:' k]
//   PSL2:q PGL2:q SL2:q PSL:m:q SL:m:q PGL:m:q PSU:m:q SU:m:q Sp:2m:q Sz:q
//   Alt:n Sym:n Cyclic:n Dihedral:N (order N) AGL1:q CayleyTable:path

#pragma once

#include <bit>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "engel/ff.hpp"
#include "engel/group.hpp"
#include "engel/matrix.hpp"

namespace engel {

inline constexpr std::uint64_t kStructureCap = 2000000;

struct GroupSpec {
  std::string family;                 // normalised: PSL, PGL, SL, PSU, SU, Sp, Sz, Alt, Sym, Cyclic, Dihedral, AGL1, CayleyTable
  std::vector<std::uint64_t> params;  // PSL/PGL/SL/PSU/SU/Sp: {m, q}; Sz/AGL1: {q}; Alt/Sym/Cyclic/Dihedral: {n}
  std::uint32_t fieldaut = 0;         // order of the field automorphism, 0 if none
  std::string path;                   // CayleyTable only
  std::string text;                   // descriptor as given

  std::uint64_t dim() const { return params.size() == 2 ? params[0] : 0; }
  std::uint64_t q() const { return params.empty() ? 0 : params.back(); }
  bool is_linear_family() const {
    return family == "PSL" || family == "PGL" || family == "SL" || family == "PSU" || family == "SU" || family == "Sp";
  }
};

inline std::uint64_t parse_uint(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw group_error("expected a positive integer, got '" + s + "'");
  return std::stoull(s);
}

inline GroupSpec parse_descriptor(const std::string& text) {
  GroupSpec spec;
  spec.text = text;
  std::string body = text;
  auto colon = body.find(':');
  if (colon == std::string::npos) throw group_error("descriptor needs FAMILY:param: '" + text + "'");
  std::string fam = body.substr(0, colon);
  if (fam == "CayleyTable") {
    spec.family = fam;
    spec.path = body.substr(colon + 1);
    if (spec.path.empty()) throw group_error("CayleyTable needs a path");
    return spec;
  }
  auto dot = body.find(".fieldaut:");
  if (dot != std::string::npos) {
    spec.fieldaut = static_cast<std::uint32_t>(parse_uint(body.substr(dot + 10)));
    if (spec.fieldaut == 0) throw group_error("fieldaut order must be positive");
    body = body.substr(0, dot);
  }
  std::vector<std::uint64_t> ps;
  std::stringstream ss(body.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ':')) ps.push_back(parse_uint(tok));
  auto need = [&](std::size_t k) {
    if (ps.size() != k) throw group_error("wrong number of parameters in '" + text + "'");
  };
  auto need_q = [&](std::uint64_t q) {
    if (!ff::prime_power(q)) throw group_error(std::to_string(q) + " is not a prime power");
  };
  if (fam == "PSL2" || fam == "PGL2" || fam == "SL2") {
    need(1);
    need_q(ps[0]);
    spec.family = fam.substr(0, fam.size() - 1);
    spec.params = {2, ps[0]};
  } else if (fam == "PSL" || fam == "PGL" || fam == "SL" || fam == "PSU" || fam == "SU" || fam == "Sp") {
    need(2);
    need_q(ps[1]);
    if (ps[0] < 2) throw group_error("dimension must be at least 2");
    if (fam == "Sp" && ps[0] % 2) throw group_error("symplectic dimension must be even");
    if ((fam == "PSU" || fam == "SU") && ps[0] < 3) throw group_error("unitary dimension must be at least 3");
    spec.family = fam;
    spec.params = ps;
  } else if (fam == "Sz") {
    need(1);
    auto pf = ff::prime_power(ps[0]);
    if (!pf || pf->first != 2 || pf->second % 2 == 0 || pf->second < 3)
      throw group_error("Sz requires q = 2^(2k+1), k >= 1");
    spec.family = fam;
    spec.params = ps;
  } else if (fam == "AGL1") {
    need(1);
    need_q(ps[0]);
    spec.family = fam;
    spec.params = ps;
  } else if (fam == "Alt" || fam == "Sym") {
    need(1);
    if (ps[0] < 2 || ps[0] > 10) throw group_error("degree out of range");
    spec.family = fam;
    spec.params = ps;
  } else if (fam == "Cyclic") {
    need(1);
    if (ps[0] < 1 || ps[0] > 60000) throw group_error("cyclic order out of range");
    spec.family = fam;
    spec.params = ps;
  } else if (fam == "Dihedral") {
    need(1);
    if (ps[0] < 6 || ps[0] % 2 || ps[0] > 120000) throw group_error("Dihedral:N needs even N >= 6");
    spec.family = fam;
    spec.params = ps;
  } else {
    throw group_error("unknown family '" + fam + "'");
  }
  return spec;
}

inline std::uint64_t order_sl(std::uint64_t m, std::uint64_t q) {
  std::uint64_t r = ff::ipow(q, static_cast<unsigned>(m * (m - 1) / 2));
  for (std::uint64_t i = 2; i <= m; ++i) r *= ff::ipow(q, static_cast<unsigned>(i)) - 1;
  return r;
}
inline std::uint64_t order_su(std::uint64_t m, std::uint64_t q) {
  std::uint64_t r = ff::ipow(q, static_cast<unsigned>(m * (m - 1) / 2));
  for (std::uint64_t i = 2; i <= m; ++i) r *= (i % 2 ? ff::ipow(q, static_cast<unsigned>(i)) + 1 : ff::ipow(q, static_cast<unsigned>(i)) - 1);
  return r;
}
inline std::uint64_t order_sp(std::uint64_t dim, std::uint64_t q) {
  const std::uint64_t m = dim / 2;
  std::uint64_t r = ff::ipow(q, static_cast<unsigned>(m * m));
  for (std::uint64_t i = 1; i <= m; ++i) r *= ff::ipow(q, static_cast<unsigned>(2 * i)) - 1;
  return r;
}

// Closed-form order of the family (before any field automorphism), 0 for CayleyTable.
inline std::uint64_t family_order(const GroupSpec& s) {
  const auto& f = s.family;
  if (f == "SL" || f == "PGL") return order_sl(s.params[0], s.params[1]);
  if (f == "PSL") return order_sl(s.params[0], s.params[1]) / std::gcd(s.params[0], s.params[1] - 1);
  if (f == "SU") return order_su(s.params[0], s.params[1]);
  if (f == "PSU") return order_su(s.params[0], s.params[1]) / std::gcd(s.params[0], s.params[1] + 1);
  if (f == "Sp") return order_sp(s.params[0], s.params[1]);
  if (f == "Sz") {
    std::uint64_t q = s.params[0];
    return q * q * (q * q + 1) * (q - 1);
  }
  if (f == "AGL1") return s.params[0] * (s.params[0] - 1);
  if (f == "Sym" || f == "Alt") {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= s.params[0]; ++i) r *= i;
    return f == "Alt" ? r / 2 : r;
  }
  if (f == "Cyclic" || f == "Dihedral") return s.params[0];
  return 0;
}

namespace detail {

inline ff::FieldPtr field_of(std::uint64_t q) { return ff::Field::create_q(q); }

// Hermitian Gram matrix over GF(q^2). Odd m: trace form Tr(b_i b_j^(q^m))
// on the basis b_i = beta^i of GF(q^m) inside GF(q^(2m)). Even m: antidiagonal.
inline Mat unitary_gram_impl(std::uint32_t m, std::uint64_t q) {
  auto pf = ff::prime_power(q).value();
  const std::uint32_t p = pf.first, f = pf.second;
  if (m % 2 == 0) {
    Mat g(m);
    for (std::uint32_t i = 0; i < m; ++i) g(i, m - 1 - i) = 1;
    return g;
  }
  auto big = ff::Field::create(p, 2 * f * m);
  auto sq = ff::Field::create(p, 2 * f);
  auto mid = ff::Field::create(p, f * m);
  ff::SubfieldEmbedding e2(sq, big), em(mid, big);
  const std::uint32_t beta = em.generator_image();
  std::vector<std::uint32_t> b(m);
  b[0] = 1;
  for (std::uint32_t i = 1; i < m; ++i) b[i] = big->mul(b[i - 1], beta);
  Mat g(m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) g(i, j) = ff::rel_trace(e2, big->mul(b[i], big->frobenius(b[j], f * m)));
  return g;
}

struct MatrixFamily {
  std::string name;
  ff::FieldPtr F;
  std::uint32_t dim;
  bool projective;
  std::vector<std::uint32_t> scalars;
  std::vector<Mat> candidates;
  std::uint64_t expected;
};

inline std::uint64_t point_code(const Vec& v, std::uint32_t q) {
  std::uint64_t c = 0;
  for (std::size_t i = v.size(); i-- > 0;) c = c * q + v[i];
  return c;
}

inline Vec normalise_point(const ff::Field& F, Vec v) {
  for (auto x : v)
    if (x) {
      std::uint32_t s = F.inv(x);
      for (auto& y : v) y = F.mul(y, s);
      break;
    }
  return v;
}

inline std::shared_ptr<Group> build_matrix_group(const MatrixFamily& fam) {
  const ff::Field& F = *fam.F;
  const std::uint32_t m = fam.dim, q = F.q();
  auto payload = std::make_shared<MatrixPayload>();
  payload->field = fam.F;
  payload->dim = m;
  payload->projective = fam.projective;
  payload->scalars = fam.scalars;
  payload->bits = std::max(1u, static_cast<unsigned>(std::bit_width(q - 1)));
  if (payload->bits * m * m > 64) throw group_error("matrix entries do not fit a 64-bit key");
  if (fam.expected > kStructureCap) throw group_error("group order " + std::to_string(fam.expected) + " exceeds cap");

  // Closure on canonical matrices; generators are taken from the candidate
  // list only when they enlarge the current group.
  std::vector<Mat> gens;
  std::vector<std::uint64_t> keys;
  std::vector<std::pair<Elem, std::uint32_t>> parent;  // (element, generator) it was reached from
  FlatIndex index;
  auto close = [&]() {
    keys.clear();
    parent.clear();
    index = FlatIndex();
    index.reserve(static_cast<std::size_t>(fam.expected));
    keys.push_back(payload->pack(Mat::identity(m)));
    parent.emplace_back(0, 0);
    index.insert(keys[0], 0);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      Mat x = payload->unpack(keys[i]);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        std::uint64_t k = payload->pack(payload->canonical(mat_mul(F, x, gens[g])));
        if (index.find(k) != kNone) continue;
        if (keys.size() >= fam.expected) throw group_error("closure exceeds the expected order " + std::to_string(fam.expected));
        index.insert(k, static_cast<std::uint32_t>(keys.size()));
        keys.push_back(k);
        parent.emplace_back(static_cast<Elem>(i), static_cast<std::uint32_t>(g));
      }
    }
  };
  close();
  for (const auto& c : fam.candidates) {
    if (keys.size() == fam.expected) break;
    if (index.find(payload->pack(payload->canonical(c))) != kNone) continue;
    gens.push_back(payload->canonical(c));
    close();
  }
  if (keys.size() != fam.expected)
    throw group_error(fam.name + ": closure has order " + std::to_string(keys.size()) + ", expected " + std::to_string(fam.expected));
  std::vector<Elem> gen_idx;
  for (auto& g : gens) gen_idx.push_back(index.find(payload->pack(g)));

  // Permutation domain: orbits of e_1, e_2, ... (plus the all-ones point for
  // projective groups), grown one orbit at a time until the action is faithful.
  std::vector<Vec> starts;
  for (std::uint32_t i = 0; i < m; ++i) {
    Vec v(m, 0);
    v[i] = 1;
    starts.push_back(v);
  }
  if (fam.projective) starts.push_back(Vec(m, 1));
  auto norm = [&](Vec v) { return fam.projective ? normalise_point(F, std::move(v)) : v; };
  std::vector<Vec> points;
  std::unordered_map<std::uint64_t, std::uint32_t> where;
  for (const auto& s0 : starts) {
    Vec s = norm(s0);
    if (where.count(point_code(s, q))) continue;
    where.emplace(point_code(s, q), static_cast<std::uint32_t>(points.size()));
    const std::size_t from = points.size();
    points.push_back(s);
    for (std::size_t i = from; i < points.size(); ++i)
      for (auto& g : gens) {
        Vec w = norm(vec_mat(F, points[i], g));
        auto code = point_code(w, q);
        if (!where.count(code)) {
          where.emplace(code, static_cast<std::uint32_t>(points.size()));
          points.push_back(std::move(w));
          if (points.size() > 65535) throw group_error("permutation domain too large");
        }
      }
    const auto D = static_cast<std::uint32_t>(points.size());
    std::vector<std::vector<std::uint16_t>> gp(gens.size(), std::vector<std::uint16_t>(D));
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (std::uint32_t i = 0; i < D; ++i) gp[g][i] = static_cast<std::uint16_t>(where.at(point_code(norm(vec_mat(F, points[i], gens[g])), q)));
    std::vector<std::uint16_t> perms(keys.size() * D);
    for (std::uint32_t i = 0; i < D; ++i) perms[i] = static_cast<std::uint16_t>(i);
    for (std::size_t e = 1; e < keys.size(); ++e) {
      const auto [par, g] = parent[e];
      for (std::uint32_t d = 0; d < D; ++d) perms[e * D + d] = gp[g][perms[std::size_t{par} * D + d]];
    }
    std::shared_ptr<Group> G;
    try {
      G = Group::from_perms(D, std::move(perms), gen_idx, fam.name);
    } catch (const group_error&) {
      continue;  // not faithful yet
    }
    payload->keys = std::move(keys);
    payload->key_index = std::move(index);
    G->set_matrix_payload(payload);
    return G;
  }
  throw group_error(fam.name + ": no faithful permutation domain");
}

inline std::vector<std::uint32_t> prime_basis(const ff::Field& F) {
  std::vector<std::uint32_t> b;
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < F.degree(); ++i, x *= F.p()) b.push_back(x);
  return b;
}

inline std::vector<Mat> elementary_transvections(const ff::Field& F, std::uint32_t m) {
  std::vector<Mat> out;
  for (auto a : prime_basis(F))
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j) {
        if (i == j) continue;
        Mat x = Mat::identity(m);
        x(i, j) = a;
        out.push_back(x);
      }
  return out;
}

inline std::vector<Vec> all_vectors(const ff::Field& F, std::uint32_t m) {
  std::vector<Vec> out;
  const std::uint64_t total = ff::ipow(F.q(), m);
  for (std::uint64_t c = 1; c < total; ++c) {
    Vec v(m);
    std::uint64_t t = c;
    for (std::uint32_t i = 0; i < m; ++i, t /= F.q()) v[i] = static_cast<std::uint32_t>(t % F.q());
    out.push_back(v);
  }
  return out;
}

// Sesquilinear value x G ybar^T with bar = x -> x^qbar (qbar = 1 for bilinear forms).
inline std::uint32_t form_value(const ff::Field& F, const Vec& x, const Mat& G, const Vec& y, std::uint32_t bar_pow) {
  std::uint32_t r = 0;
  for (std::uint32_t i = 0; i < G.m; ++i) {
    if (!x[i]) continue;
    for (std::uint32_t j = 0; j < G.m; ++j) {
      if (!G(i, j) || !y[j]) continue;
      std::uint32_t yb = bar_pow == 1 ? y[j] : F.pow(y[j], bar_pow);
      r = F.add(r, F.mul(x[i], F.mul(G(i, j), yb)));
    }
  }
  return r;
}

// w -> w + a psi(w, v) v as a matrix: I + a (G vbar^T) v.
inline Mat form_transvection(const ff::Field& F, const Mat& G, const Vec& v, std::uint32_t a, std::uint32_t bar_pow) {
  const std::uint32_t m = G.m;
  Vec col(m, 0);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      std::uint32_t vb = bar_pow == 1 ? v[j] : F.pow(v[j], bar_pow);
      col[i] = F.add(col[i], F.mul(G(i, j), vb));
    }
  Mat x = Mat::identity(m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) x(i, j) = F.add(x(i, j), F.mul(a, F.mul(col[i], v[j])));
  return x;
}

inline Mat symplectic_gram(const ff::Field& F, std::uint32_t dim) {
  Mat J(dim);
  const std::uint32_t h = dim / 2;
  for (std::uint32_t i = 0; i < h; ++i) {
    J(i, h + i) = 1;
    J(h + i, i) = F.neg(1);
  }
  return J;
}

inline std::uint32_t sz_theta(const ff::Field& F, std::uint32_t x) {
  // theta: x -> x^(2^(k+1)) with q = 2^(2k+1)
  return F.frobenius(x, (F.degree() + 1) / 2);
}

inline Mat sz_S(const ff::Field& F, std::uint32_t a, std::uint32_t b) {
  auto t = [&](std::uint32_t x) { return sz_theta(F, x); };
  const std::uint32_t at = t(a);
  Mat x = Mat::identity(4);
  x(1, 0) = a;
  x(2, 0) = b;
  x(2, 1) = at;
  // a^(2+theta) + ab + b^theta
  x(3, 0) = F.add(F.add(F.mul(F.mul(a, a), at), F.mul(a, b)), t(b));
  // a^(1+theta) + b
  x(3, 1) = F.add(F.mul(a, at), b);
  x(3, 2) = a;
  return x;
}

inline Mat sz_M(const ff::Field& F, std::uint32_t l) {
  const std::uint32_t k = (F.degree() - 1) / 2;
  const std::int64_t s = std::int64_t{1} << k;  // 2^k
  Mat x(4);
  x(0, 0) = F.pow(l, 1 + s);
  x(1, 1) = F.pow(l, s);
  x(2, 2) = F.pow(l, -s);
  x(3, 3) = F.pow(l, -1 - s);
  return x;
}

inline Mat antidiagonal(std::uint32_t m) {
  Mat x(m);
  for (std::uint32_t i = 0; i < m; ++i) x(i, m - 1 - i) = 1;
  return x;
}

inline std::shared_ptr<Group> build_perm_family(const std::string& name, std::uint32_t d,
                                                const std::vector<std::vector<std::uint16_t>>& gens, std::uint64_t expected) {
  if (expected > kStructureCap) throw group_error("group order exceeds cap");
  std::unordered_map<std::string, std::uint32_t> where;
  std::vector<std::uint16_t> perms;
  auto key = [&](const std::uint16_t* p) { return std::string(reinterpret_cast<const char*>(p), d * sizeof(std::uint16_t)); };
  for (std::uint32_t i = 0; i < d; ++i) perms.push_back(static_cast<std::uint16_t>(i));
  where.emplace(key(perms.data()), 0);
  std::vector<std::uint16_t> tmp(d);
  for (std::size_t i = 0; i < perms.size() / d; ++i) {
    for (const auto& g : gens) {
      for (std::uint32_t x = 0; x < d; ++x) tmp[x] = g[perms[i * d + x]];
      auto k = key(tmp.data());
      if (where.count(k)) continue;
      if (where.size() >= expected) throw group_error(name + ": closure exceeds expected order");
      where.emplace(k, static_cast<std::uint32_t>(where.size()));
      perms.insert(perms.end(), tmp.begin(), tmp.end());
    }
  }
  if (where.size() != expected)
    throw group_error(name + ": closure has order " + std::to_string(where.size()) + ", expected " + std::to_string(expected));
  std::vector<Elem> gi;
  for (const auto& g : gens) {
    Elem e = where.at(key(g.data()));
    if (e != 0 && std::find(gi.begin(), gi.end(), e) == gi.end()) gi.push_back(e);
  }
  auto G = Group::from_perms(d, std::move(perms), gi, name);
  G->set_natural_degree(d);
  return G;
}

inline std::vector<std::uint16_t> cycle_perm(std::uint32_t d, const std::vector<std::uint32_t>& cyc) {
  std::vector<std::uint16_t> p(d);
  for (std::uint32_t i = 0; i < d; ++i) p[i] = static_cast<std::uint16_t>(i);
  for (std::size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = static_cast<std::uint16_t>(cyc[(i + 1) % cyc.size()]);
  return p;
}

inline std::shared_ptr<Group> read_cayley_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw group_error("cannot open Cayley table '" + path + "'");
  std::uint64_t n;
  if (!(in >> n) || n == 0 || n > 4096) throw group_error("bad Cayley table order");
  std::vector<Elem> t(n * n);
  for (auto& x : t) {
    if (!(in >> x) || x >= n) throw group_error("bad Cayley table entry");
  }
  // Relabel so the identity is 0.
  Elem e = kNone;
  for (Elem a = 0; a < n && e == kNone; ++a) {
    bool ok = true;
    for (Elem b = 0; b < n && ok; ++b) ok = t[a * n + b] == b && t[b * n + a] == b;
    if (ok) e = a;
  }
  if (e == kNone) throw group_error("Cayley table has no identity");
  std::vector<Elem> lab(n);
  std::iota(lab.begin(), lab.end(), 0);
  std::swap(lab[0], lab[e]);
  std::vector<Elem> r(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) r[lab[a] * n + lab[b]] = lab[t[a * n + b]];
  for (Elem a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (Elem b = 0; b < n; ++b) {
      row[r[a * n + b]] = 1;
      col[r[b * n + a]] = 1;
    }
    for (Elem b = 0; b < n; ++b)
      if (!row[b] || !col[b]) throw group_error("Cayley table is not a Latin square");
  }
  auto G = Group::from_table(static_cast<std::uint32_t>(n), std::move(r), {}, "CayleyTable:" + path);
  auto gens = greedy_generators(*G);
  return Group::from_table(static_cast<std::uint32_t>(n), [&] {
    std::vector<Elem> tt(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) tt[a * n + b] = G->mult(a, b);
    return tt;
  }(), gens, G->name());
}

}  // namespace detail

inline Mat unitary_gram(std::uint32_t m, std::uint64_t q) { return detail::unitary_gram_impl(m, q); }

// Semidirect product L x| <alpha>; alpha is verified to be an automorphism of
// order dividing e on the generators (which determines it on all of L).
inline std::shared_ptr<Group> extension_by_automorphism(GroupPtr L, const std::vector<Elem>& alpha, std::uint32_t e,
                                                       std::string name) {
  const std::uint32_t n = L->order();
  if (alpha.size() != n) throw group_error("automorphism has wrong size");
  if (e == 0) throw group_error("extension degree must be positive");
  std::vector<char> hit(n, 0);
  for (auto a : alpha) {
    if (a >= n || hit[a]) throw group_error("map is not a bijection");
    hit[a] = 1;
  }
  if (alpha[0] != 0) throw group_error("map does not fix the identity");
  for (Elem x = 0; x < n; ++x)
    for (auto s : L->generators())
      if (alpha[L->mult(x, s)] != L->mult(alpha[x], alpha[s])) throw group_error("map is not an automorphism");
  for (Elem x = 0; x < n; ++x) {
    Elem y = x;
    for (std::uint32_t k = 0; k < e; ++k) y = alpha[y];
    if (y != x) throw group_error("automorphism order does not divide e");
  }
  if (e == 1) return std::const_pointer_cast<Group>(L);
  auto G = Group::extension(L, alpha, e, std::move(name));
  if (G->order() > kStructureCap) throw group_error("extension order exceeds cap");
  G->materialize_table();
  G->verify();
  return G;
}

// Induced action of the field automorphism x -> x^(p^k) on a matrix group.
inline std::vector<Elem> field_automorphism_map(const Group& L, std::uint32_t k) {
  const auto& P = L.matrices();
  std::vector<Elem> alpha(L.order());
  for (Elem x = 0; x < L.order(); ++x) {
    auto img = L.find_matrix(frobenius(*P.field, L.matrix(x), k));
    if (!img) throw group_error("field automorphism does not preserve the group");
    alpha[x] = *img;
  }
  return alpha;
}

inline std::shared_ptr<Group> build_base_group(const GroupSpec& s) {
  using namespace detail;
  const auto& fam = s.family;
  std::string name = s.text;
  if (auto dot = name.find(".fieldaut:"); dot != std::string::npos) name = name.substr(0, dot);
  std::shared_ptr<Group> G;
  if (fam == "SL" || fam == "PSL" || fam == "PGL") {
    const auto m = static_cast<std::uint32_t>(s.params[0]);
    auto F = field_of(s.params[1]);
    MatrixFamily mf{name, F, m, fam != "SL", {}, elementary_transvections(*F, m), family_order(s)};
    for (std::uint32_t l = 1; l < F->q(); ++l)
      if (fam == "PGL" || F->pow(l, m) == 1) mf.scalars.push_back(l);
    if (fam == "PGL") {
      Mat d = Mat::identity(m);
      d(0, 0) = F->primitive();
      mf.candidates.push_back(d);
    }
    G = build_matrix_group(mf);
  } else if (fam == "SU" || fam == "PSU") {
    const auto m = static_cast<std::uint32_t>(s.params[0]);
    const std::uint64_t q = s.params[1];
    auto F = field_of(q * q);
    Mat gram = unitary_gram(m, q);
    MatrixFamily mf{name, F, m, fam == "PSU", {}, {}, family_order(s)};
    for (std::uint32_t l = 1; l < F->q(); ++l)
      if (F->pow(l, static_cast<std::int64_t>(q + 1)) == 1 && F->pow(l, m) == 1) mf.scalars.push_back(l);
    std::vector<std::uint32_t> trace_zero;
    for (std::uint32_t a = 1; a < F->q(); ++a)
      if (F->add(a, F->pow(a, static_cast<std::int64_t>(q))) == 0) trace_zero.push_back(a);
    for (const auto& v : all_vectors(*F, m)) {
      if (form_value(*F, v, gram, v, static_cast<std::uint32_t>(q)) != 0) continue;
      for (auto a : trace_zero) mf.candidates.push_back(form_transvection(*F, gram, v, a, static_cast<std::uint32_t>(q)));
    }
    // Transvections generate a proper subgroup of SU_3(2); products of two
    // unitary reflections with inverse determinants fill the gap.
    const std::uint32_t zeta = F->element_of_order(q + 1);
    auto reflection = [&](const Vec& v, std::uint32_t z) {
      const std::uint32_t n = form_value(*F, v, gram, v, static_cast<std::uint32_t>(q));
      return form_transvection(*F, gram, v, F->div(F->sub(z, 1), n), static_cast<std::uint32_t>(q));
    };
    std::optional<Mat> first;
    for (const auto& v : all_vectors(*F, m)) {
      if (form_value(*F, v, gram, v, static_cast<std::uint32_t>(q)) == 0) continue;
      if (!first) first = reflection(v, zeta);
      mf.candidates.push_back(mat_mul(*F, *first, reflection(v, F->inv(zeta))));
    }
    G = build_matrix_group(mf);
  } else if (fam == "Sp") {
    const auto m = static_cast<std::uint32_t>(s.params[0]);
    auto F = field_of(s.params[1]);
    Mat J = symplectic_gram(*F, m);
    MatrixFamily mf{name, F, m, false, {}, {}, family_order(s)};
    for (const auto& v : all_vectors(*F, m))
      for (auto a : prime_basis(*F)) mf.candidates.push_back(form_transvection(*F, J, v, a, 1));
    G = build_matrix_group(mf);
  } else if (fam == "Sz") {
    auto F = field_of(s.params[0]);
    MatrixFamily mf{name, F, 4, false, {}, {}, family_order(s)};
    for (auto a : prime_basis(*F)) mf.candidates.push_back(sz_S(*F, a, 0));
    for (auto b : prime_basis(*F)) mf.candidates.push_back(sz_S(*F, 0, b));
    mf.candidates.push_back(sz_M(*F, F->primitive()));
    mf.candidates.push_back(antidiagonal(4));
    G = build_matrix_group(mf);
  } else if (fam == "Alt" || fam == "Sym") {
    const auto d = static_cast<std::uint32_t>(s.params[0]);
    std::vector<std::vector<std::uint16_t>> gens;
    if (fam == "Sym") {
      if (d >= 2) gens.push_back(cycle_perm(d, {0, 1}));
      std::vector<std::uint32_t> all(d);
      std::iota(all.begin(), all.end(), 0);
      if (d >= 3) gens.push_back(cycle_perm(d, all));
    } else {
      for (std::uint32_t i = 2; i < d; ++i) gens.push_back(cycle_perm(d, {0, 1, i}));
    }
    if (gens.empty()) gens.push_back(cycle_perm(std::max(d, 1u), {}));
    G = build_perm_family(name, d, gens, family_order(s));
  } else if (fam == "Cyclic") {
    const auto d = static_cast<std::uint32_t>(s.params[0]);
    std::vector<std::uint32_t> all(d);
    std::iota(all.begin(), all.end(), 0);
    G = build_perm_family(name, d, {cycle_perm(d, all)}, d);
  } else if (fam == "Dihedral") {
    const auto k = static_cast<std::uint32_t>(s.params[0] / 2);
    std::vector<std::uint32_t> all(k);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::uint16_t> refl(k);
    for (std::uint32_t i = 0; i < k; ++i) refl[i] = static_cast<std::uint16_t>((k - i) % k);
    G = build_perm_family(name, k, {cycle_perm(k, all), refl}, s.params[0]);
  } else if (fam == "AGL1") {
    auto F = field_of(s.params[0]);
    const std::uint32_t q = F->q();
    std::vector<std::vector<std::uint16_t>> gens;
    for (auto b : prime_basis(*F)) {
      std::vector<std::uint16_t> t(q);
      for (std::uint32_t x = 0; x < q; ++x) t[x] = static_cast<std::uint16_t>(F->add(x, b));
      gens.push_back(t);
    }
    std::vector<std::uint16_t> mu(q);
    for (std::uint32_t x = 0; x < q; ++x) mu[x] = static_cast<std::uint16_t>(F->mul(x, F->primitive()));
    gens.push_back(mu);
    G = build_perm_family(name, q, gens, family_order(s));
  } else if (fam == "CayleyTable") {
    G = read_cayley_table(s.path);
  } else {
    throw group_error("unknown family '" + fam + "'");
  }
  G->materialize_table();
  G->verify();
  return G;
}

// Built groups are cached per descriptor for the lifetime of the process.
inline GroupPtr build_group(const GroupSpec& s) {
  static std::mutex mu;
  static std::map<std::string, GroupPtr> cache;
  const std::string& key = s.text;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  GroupPtr out;
  if (s.fieldaut) {
    GroupSpec base = s;
    base.fieldaut = 0;
    base.text = s.text.substr(0, s.text.find(".fieldaut:"));
    GroupPtr L = build_group(base);
    if (!L->has_matrices()) throw group_error("fieldaut needs a matrix group");
    const std::uint32_t f = L->matrices().field->degree();
    if (f % s.fieldaut) throw group_error("field automorphism order must divide the field degree");
    auto alpha = field_automorphism_map(*L, f / s.fieldaut);
    out = extension_by_automorphism(L, alpha, s.fieldaut, s.text);
  } else {
    out = build_base_group(s);
  }
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(key, out);
  return out;
}

inline GroupPtr build_group(const std::string& descriptor) { return build_group(parse_descriptor(descriptor)); }

}  // namespace engel
