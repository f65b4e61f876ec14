// Finite fields GF(p^f) in a polynomial basis.
//
// Elements are indices in [0, q): the coefficient vector (c_0, ..., c_{f-1})
// of c_0 + c_1 x + ... over GF(p) is encoded as sum c_i p^i. The modulus is
// the lexicographically least monic irreducible of degree f, so the indexing
// is reproducible. Fields with q <= 2^16 carry log/antilog tables.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace engel::ff {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct field_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kFieldCap = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kTableCap = std::uint64_t{1} << 16;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Returns (p, f) with q = p^f, or nullopt when q is not a prime power.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto fac = prime_factors(q);
  if (fac.size() != 1) return std::nullopt;
  std::uint32_t f = 0;
  while (q > 1) {
    q /= fac[0];
    ++f;
  }
  return std::make_pair(static_cast<std::uint32_t>(fac[0]), f);
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

class Field {
 public:
  static FieldPtr create(std::uint32_t p, std::uint32_t f) {
    return std::shared_ptr<const Field>(new Field(p, f));
  }

  static FieldPtr create_q(std::uint64_t q) {
    auto pf = prime_power(q);
    if (!pf) throw field_error("field order " + std::to_string(q) + " is not a prime power");
    return create(pf->first, pf->second);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return f_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t primitive() const { return primitive_; }
  // Monic modulus coefficients, low degree first, length f + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return 1; }
  std::uint32_t from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (f_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    std::uint32_t r = 0, w = 1;
    while (a | b) {
      std::uint32_t d = a % p_ + b % p_;
      if (d >= p_) d -= p_;
      r += d * w;
      w *= p_;
      a /= p_;
      b /= p_;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    if (f_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint32_t r = 0, w = 1;
    while (a) {
      std::uint32_t d = a % p_;
      r += (d == 0 ? 0 : p_ - d) * w;
      w *= p_;
      a /= p_;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    if (f_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    return poly_mul(a, b);
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw field_error("division by zero");
    if (!exp_.empty()) return exp_[(q_ - 1) - log_[a]];
    return pow(a, static_cast<std::int64_t>(q_) - 2);
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  std::uint32_t pow(std::uint32_t a, std::int64_t e) const {
    const std::int64_t m = static_cast<std::int64_t>(q_) - 1;
    if (a == 0) {
      if (e < 0) throw field_error("negative power of zero");
      return e == 0 ? 1 : 0;
    }
    std::int64_t r = e % m;
    if (r < 0) r += m;
    if (!exp_.empty()) return exp_[static_cast<std::uint64_t>(log_[a]) * r % m];
    std::uint32_t acc = 1, base = a;
    auto k = static_cast<std::uint64_t>(r);
    while (k) {
      if (k & 1) acc = mul(acc, base);
      base = mul(base, base);
      k >>= 1;
    }
    return acc;
  }

  // x -> x^(p^k)
  std::uint32_t frobenius(std::uint32_t a, std::uint32_t k = 1) const {
    for (std::uint32_t i = 0; i < k % f_; ++i) a = pow(a, p_);
    return a;
  }

  // Discrete log to base primitive(); a must be nonzero.
  std::uint64_t log(std::uint32_t a) const {
    if (a == 0) throw field_error("log of zero");
    if (!log_.empty()) return log_[a];
    std::uint32_t x = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i, x = mul(x, primitive_))
      if (x == a) return i;
    throw field_error("log not found");
  }

  std::uint64_t order_of(std::uint32_t a) const {
    if (a == 0) throw field_error("zero has no multiplicative order");
    std::uint64_t n = q_ - 1;
    std::uint64_t ord = n;
    for (auto r : prime_factors(n)) {
      while (ord % r == 0 && pow(a, static_cast<std::int64_t>(ord / r)) == 1) ord /= r;
    }
    return ord;
  }

  bool is_square(std::uint32_t a) const {
    if (a == 0 || p_ == 2) return true;
    return pow(a, (static_cast<std::int64_t>(q_) - 1) / 2) == 1;
  }

  // Square root with the least index among {r, -r}; nullopt for non-squares.
  std::optional<std::uint32_t> sqrt(std::uint32_t a) const {
    if (a == 0) return 0u;
    if (!is_square(a)) return std::nullopt;
    if (p_ == 2) return pow(a, static_cast<std::int64_t>(q_) / 2);
    std::uint32_t r;
    if (!log_.empty()) {
      r = exp_[log_[a] / 2];
    } else {
      r = 0;
      for (std::uint32_t y = 1; y < q_; ++y)
        if (mul(y, y) == a) {
          r = y;
          break;
        }
    }
    return std::min(r, neg(r));
  }

  // Least-index element of multiplicative order exactly d.
  std::uint32_t element_of_order(std::uint64_t d) const {
    if (d == 0 || (q_ - 1) % d != 0)
      throw field_error(std::to_string(d) + " does not divide q - 1 = " + std::to_string(q_ - 1));
    for (std::uint32_t x = 1; x < q_; ++x)
      if (order_of(x) == d) return x;
    throw field_error("no element of the requested order");
  }

  std::vector<std::uint32_t> digits(std::uint32_t a) const {
    std::vector<std::uint32_t> d(f_);
    for (std::uint32_t i = 0; i < f_; ++i, a /= p_) d[i] = a % p_;
    return d;
  }

  std::uint32_t from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t r = 0, w = 1;
    for (std::uint32_t i = 0; i < f_ && i < d.size(); ++i, w *= p_) r += (d[i] % p_) * w;
    return r;
  }

  std::string to_string(std::uint32_t a) const { return std::to_string(a); }

 private:
  Field(std::uint32_t p, std::uint32_t f) : p_(p), f_(f) {
    if (!is_prime(p)) throw field_error(std::to_string(p) + " is not prime");
    if (f == 0) throw field_error("extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
      q *= p;
      if (q > kFieldCap) throw field_error("field cardinality exceeds cap 2^26");
    }
    q_ = static_cast<std::uint32_t>(q);
    choose_modulus();
    find_primitive();
    if (q_ <= kTableCap) build_tables();
  }

  // Multiplication of coefficient vectors modulo the modulus.
  std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(2 * f_ - 1, 0);
    for (std::uint32_t i = 0; i < f_; ++i) {
      if (!da[i]) continue;
      for (std::uint32_t j = 0; j < f_; ++j) prod[i + j] += std::uint64_t{da[i]} * db[j];
    }
    for (auto& c : prod) c %= p_;
    for (std::size_t k = prod.size(); k-- > f_;) {
      std::uint64_t c = prod[k];
      if (!c) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < f_; ++i) {
        std::uint64_t t = c * modulus_[i] % p_;
        prod[k - f_ + i] = (prod[k - f_ + i] + p_ - t) % p_;
      }
    }
    std::vector<std::uint32_t> out(f_);
    for (std::uint32_t i = 0; i < f_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return from_digits(out);
  }

  void choose_modulus();
  void find_primitive() {
    if (q_ == 2) {
      primitive_ = 1;
      return;
    }
    auto fac = prime_factors(q_ - 1);
    for (std::uint32_t g = 1; g < q_; ++g) {
      bool ok = true;
      for (auto r : fac)
        if (pow(g, static_cast<std::int64_t>((q_ - 1) / r)) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        primitive_ = g;
        return;
      }
    }
    throw field_error("no primitive element found");
  }

  void build_tables() {
    std::vector<std::uint32_t> ex(2 * (q_ - 1) + 1);
    std::vector<std::uint32_t> lg(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      ex[i] = x;
      lg[x] = i;
      x = (f_ == 1) ? static_cast<std::uint32_t>(std::uint64_t{x} * primitive_ % p_) : poly_mul(x, primitive_);
    }
    for (std::uint32_t i = q_ - 1; i < ex.size(); ++i) ex[i] = ex[i - (q_ - 1)];
    exp_ = std::move(ex);
    log_ = std::move(lg);
  }

  std::uint32_t p_, f_, q_ = 0;
  std::uint32_t primitive_ = 1;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_, log_;
};

// Polynomials over a field, coefficients low degree first, kept trimmed.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<std::uint32_t> c) : c_(std::move(c)) { trim(); }
  static Poly monomial(std::size_t deg, std::uint32_t coeff = 1) {
    std::vector<std::uint32_t> c(deg + 1, 0);
    c[deg] = coeff;
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
  bool operator==(const Poly&) const = default;

  static Poly add(const Field& F, const Poly& a, const Poly& b) {
    std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
    return Poly(std::move(r));
  }
  static Poly sub(const Field& F, const Poly& a, const Poly& b) {
    std::vector<std::uint32_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a.coeff(i), b.coeff(i));
    return Poly(std::move(r));
  }
  static Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::uint32_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return Poly(std::move(r));
  }
  // Remainder of a modulo m (m nonzero).
  static Poly mod(const Field& F, Poly a, const Poly& m) {
    if (m.is_zero()) throw field_error("polynomial division by zero");
    const std::uint32_t li = F.inv(m.lead());
    const int dm = m.degree();
    while (!a.is_zero() && a.degree() >= dm) {
      std::uint32_t c = F.mul(a.lead(), li);
      int shift = a.degree() - dm;
      for (int i = 0; i <= dm; ++i) {
        auto& t = a.c_[static_cast<std::size_t>(i + shift)];
        t = F.sub(t, F.mul(c, m.c_[static_cast<std::size_t>(i)]));
      }
      a.trim();
    }
    return a;
  }
  // Quotient of a by m; the remainder is dropped.
  static Poly div(const Field& F, Poly a, const Poly& m) {
    if (m.is_zero()) throw field_error("polynomial division by zero");
    const std::uint32_t li = F.inv(m.lead());
    const int dm = m.degree();
    if (a.degree() < dm) return {};
    std::vector<std::uint32_t> q(static_cast<std::size_t>(a.degree() - dm + 1), 0);
    while (!a.is_zero() && a.degree() >= dm) {
      std::uint32_t c = F.mul(a.lead(), li);
      int shift = a.degree() - dm;
      q[static_cast<std::size_t>(shift)] = c;
      for (int i = 0; i <= dm; ++i) {
        auto& t = a.c_[static_cast<std::size_t>(i + shift)];
        t = F.sub(t, F.mul(c, m.c_[static_cast<std::size_t>(i)]));
      }
      a.trim();
    }
    return Poly(std::move(q));
  }
  static Poly gcd(const Field& F, Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = mod(F, a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) {
      std::uint32_t li = F.inv(a.lead());
      for (auto& c : a.c_) c = F.mul(c, li);
    }
    return a;
  }
  static Poly powmod(const Field& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly acc({1});
    base = mod(F, std::move(base), m);
    while (e) {
      if (e & 1) acc = mod(F, mul(F, acc, base), m);
      base = mod(F, mul(F, base, base), m);
      e >>= 1;
    }
    return mod(F, std::move(acc), m);
  }

  std::uint32_t eval(const Field& F, std::uint32_t x) const {
    std::uint32_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = F.add(F.mul(r, x), c_[i]);
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<std::uint32_t> c_;
};

// Rabin test: a polynomial of degree n over GF(Q) is irreducible iff
// x^(Q^n) = x mod f and gcd(x^(Q^k) - x, f) = 1 for every proper divisor k of n.
inline bool is_irreducible(const Field& F, const Poly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const std::uint64_t Q = F.q();
  const Poly x = Poly::monomial(1);
  std::vector<Poly> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = Poly::mod(F, x, f);
  for (int k = 1; k <= n; ++k) frob[static_cast<std::size_t>(k)] = Poly::powmod(F, frob[static_cast<std::size_t>(k - 1)], Q, f);
  if (!(Poly::sub(F, frob[static_cast<std::size_t>(n)], Poly::mod(F, x, f))).is_zero()) return false;
  for (int k = 1; k < n; ++k) {
    if (n % k) continue;
    Poly g = Poly::gcd(F, f, Poly::sub(F, frob[static_cast<std::size_t>(k)], x));
    if (g.degree() != 0) return false;
  }
  return true;
}

inline void Field::choose_modulus() {
  if (f_ == 1) {
    modulus_ = {0, 1};
    return;
  }
  // Minimal GF(p) context for the search; it only needs f == 1 arithmetic.
  Field prime(p_, 1);
  for (std::uint32_t idx = 0; idx < q_; ++idx) {
    std::vector<std::uint32_t> c(f_ + 1);
    std::uint32_t t = idx;
    for (std::uint32_t i = 0; i < f_; ++i, t /= p_) c[i] = t % p_;
    c[f_] = 1;
    if (c[0] == 0) continue;
    if (is_irreducible(prime, Poly(c))) {
      modulus_ = std::move(c);
      return;
    }
  }
  throw field_error("no irreducible modulus found");
}

// Typed element: carries its field so mixed-context arithmetic is caught.
class FieldElem {
 public:
  FieldElem(const FieldPtr& F, std::uint32_t v) : F_(F.get()), v_(v) {
    if (v >= F->q()) throw field_error("element index out of range");
  }
  FieldElem(const Field* F, std::uint32_t v) : F_(F), v_(v) {}

  std::uint32_t index() const { return v_; }
  const Field& field() const { return *F_; }

  friend FieldElem operator+(FieldElem a, FieldElem b) { return {a.check(b), a.F_->add(a.v_, b.v_)}; }
  friend FieldElem operator-(FieldElem a, FieldElem b) { return {a.check(b), a.F_->sub(a.v_, b.v_)}; }
  friend FieldElem operator*(FieldElem a, FieldElem b) { return {a.check(b), a.F_->mul(a.v_, b.v_)}; }
  friend FieldElem operator/(FieldElem a, FieldElem b) { return {a.check(b), a.F_->div(a.v_, b.v_)}; }
  FieldElem operator-() const { return {F_, F_->neg(v_)}; }
  FieldElem inv() const { return {F_, F_->inv(v_)}; }
  FieldElem pow(std::int64_t e) const { return {F_, F_->pow(v_, e)}; }
  friend bool operator==(FieldElem a, FieldElem b) { return a.check(b) && a.v_ == b.v_; }

 private:
  const Field* check(const FieldElem& o) const {
    if (F_ != o.F_) throw field_error("field context mismatch");
    return F_;
  }
  const Field* F_;
  std::uint32_t v_;
};

// Embedding of GF(p^k) into GF(p^n), k | n, fixed by sending the small
// field's generator to the least-index root of its modulus in the big field.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
    if (small_->p() != big_->p()) throw field_error("embedding between fields of different characteristic");
    if (big_->degree() % small_->degree() != 0) throw field_error("subfield degree does not divide field degree");
    const Poly m(small_->modulus());
    bool found = false;
    for (std::uint32_t r = 0; r < big_->q() && !found; ++r) {
      if (m.eval(*big_, r) == 0) {
        gen_image_ = r;
        found = true;
      }
    }
    if (!found) throw field_error("small modulus has no root in big field");
    image_.resize(small_->q());
    for (std::uint32_t a = 0; a < small_->q(); ++a) {
      auto d = small_->digits(a);
      std::uint32_t v = 0, pw = 1;
      for (std::uint32_t i = 0; i < small_->degree(); ++i) {
        v = big_->add(v, big_->mul(big_->from_int(d[i]), pw));
        pw = big_->mul(pw, gen_image_);
      }
      image_[a] = v;
    }
    for (std::uint32_t a = 0; a < small_->q(); ++a) preimage_.emplace(image_[a], a);
    if (preimage_.size() != small_->q()) throw field_error("embedding is not injective");
    if (m.eval(*big_, gen_image_) != 0) throw field_error("generator image does not satisfy the small modulus");
  }

  const FieldPtr& small() const { return small_; }
  const FieldPtr& big() const { return big_; }
  std::uint32_t generator_image() const { return gen_image_; }
  std::uint32_t embed(std::uint32_t a) const { return image_.at(a); }
  std::optional<std::uint32_t> restrict(std::uint32_t b) const {
    auto it = preimage_.find(b);
    if (it == preimage_.end()) return std::nullopt;
    return it->second;
  }
  std::uint32_t restrict_or_throw(std::uint32_t b) const {
    auto r = restrict(b);
    if (!r) throw field_error("element does not lie in the subfield");
    return *r;
  }
  std::uint32_t relative_degree() const { return big_->degree() / small_->degree(); }

 private:
  FieldPtr small_, big_;
  std::uint32_t gen_image_ = 0;
  std::vector<std::uint32_t> image_;
  std::unordered_map<std::uint32_t, std::uint32_t> preimage_;
};

// Sum of x^(Q^i), i < n/m, returned as an element of the small field.
inline std::uint32_t rel_trace(const SubfieldEmbedding& emb, std::uint32_t x) {
  const Field& B = *emb.big();
  const std::uint32_t k = emb.small()->degree();
  std::uint32_t acc = 0, y = x;
  for (std::uint32_t i = 0; i < emb.relative_degree(); ++i) {
    acc = B.add(acc, y);
    y = B.frobenius(y, k);
  }
  return emb.restrict_or_throw(acc);
}

inline std::uint32_t rel_norm(const SubfieldEmbedding& emb, std::uint32_t x) {
  const Field& B = *emb.big();
  const std::uint32_t k = emb.small()->degree();
  std::uint32_t acc = 1, y = x;
  for (std::uint32_t i = 0; i < emb.relative_degree(); ++i) {
    acc = B.mul(acc, y);
    y = B.frobenius(y, k);
  }
  return emb.restrict_or_throw(acc);
}

struct UnitConstantPoly {
  Poly poly;                         // x^m - a1 x^(m-1) - ... - a_{m-1} x - 1
  std::vector<std::uint32_t> a;      // a[0] = a1, ..., a[m-2] = a_{m-1}
};

// Least (a1, ..., a_{m-1}), a1 most significant, making
// x^m - a1 x^(m-1) - ... - a_{m-1} x - 1 irreducible over F.
inline UnitConstantPoly find_irreducible_with_unit_constant(const Field& F, std::uint32_t m) {
  if (m < 2) throw field_error("degree must be at least 2");
  const std::uint64_t q = F.q();
  const std::uint64_t total = ipow(q, m - 1);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint32_t> a(m - 1);
    std::uint64_t t = idx;
    for (std::size_t i = m - 1; i-- > 0; t /= q) a[i] = static_cast<std::uint32_t>(t % q);
    std::vector<std::uint32_t> c(m + 1, 0);
    c[m] = 1;
    for (std::uint32_t k = 1; k < m; ++k) c[m - k] = F.neg(a[k - 1]);
    c[0] = F.neg(1);
    Poly p(c);
    if (is_irreducible(F, p)) return {p, a};
  }
  throw field_error("no irreducible polynomial with unit constant found");
}

}  // namespace engel::ff
