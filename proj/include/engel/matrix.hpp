// Dense square matrices over a Field, acting on row vectors from the right.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "engel/ff.hpp"

namespace engel {

struct Mat {
  std::uint32_t m = 0;
  std::vector<std::uint32_t> a;  // row-major field indices

  Mat() = default;
  explicit Mat(std::uint32_t dim) : m(dim), a(std::size_t{dim} * dim, 0) {}
  Mat(std::uint32_t dim, std::vector<std::uint32_t> entries) : m(dim), a(std::move(entries)) {
    if (a.size() != std::size_t{m} * m) throw std::invalid_argument("matrix entry count mismatch");
  }

  std::uint32_t& operator()(std::uint32_t i, std::uint32_t j) { return a[std::size_t{i} * m + j]; }
  std::uint32_t operator()(std::uint32_t i, std::uint32_t j) const { return a[std::size_t{i} * m + j]; }
  bool operator==(const Mat&) const = default;

  static Mat identity(std::uint32_t dim) {
    Mat r(dim);
    for (std::uint32_t i = 0; i < dim; ++i) r(i, i) = 1;
    return r;
  }
  static Mat scalar(std::uint32_t dim, std::uint32_t s) {
    Mat r(dim);
    for (std::uint32_t i = 0; i < dim; ++i) r(i, i) = s;
    return r;
  }
};

using Vec = std::vector<std::uint32_t>;

inline Mat mat_mul(const ff::Field& F, const Mat& x, const Mat& y) {
  const std::uint32_t m = x.m;
  Mat r(m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t k = 0; k < m; ++k) {
      std::uint32_t c = x(i, k);
      if (!c) continue;
      for (std::uint32_t j = 0; j < m; ++j) r(i, j) = F.add(r(i, j), F.mul(c, y(k, j)));
    }
  return r;
}

inline Mat mat_add(const ff::Field& F, const Mat& x, const Mat& y) {
  Mat r(x.m);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
  return r;
}

inline Mat mat_scale(const ff::Field& F, const Mat& x, std::uint32_t s) {
  Mat r(x.m);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.mul(x.a[i], s);
  return r;
}

inline Vec vec_mat(const ff::Field& F, const Vec& v, const Mat& x) {
  Vec r(x.m, 0);
  for (std::uint32_t i = 0; i < x.m; ++i) {
    if (!v[i]) continue;
    for (std::uint32_t j = 0; j < x.m; ++j) r[j] = F.add(r[j], F.mul(v[i], x(i, j)));
  }
  return r;
}

inline Mat transpose(const Mat& x) {
  Mat r(x.m);
  for (std::uint32_t i = 0; i < x.m; ++i)
    for (std::uint32_t j = 0; j < x.m; ++j) r(j, i) = x(i, j);
  return r;
}

// Entrywise x -> x^(p^k).
inline Mat frobenius(const ff::Field& F, const Mat& x, std::uint32_t k) {
  Mat r(x.m);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.frobenius(x.a[i], k);
  return r;
}

inline std::uint32_t det(const ff::Field& F, Mat x) {
  const std::uint32_t m = x.m;
  std::uint32_t d = 1;
  for (std::uint32_t c = 0; c < m; ++c) {
    std::uint32_t piv = m;
    for (std::uint32_t r = c; r < m; ++r)
      if (x(r, c)) {
        piv = r;
        break;
      }
    if (piv == m) return 0;
    if (piv != c) {
      for (std::uint32_t j = 0; j < m; ++j) std::swap(x(piv, j), x(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, x(c, c));
    std::uint32_t ic = F.inv(x(c, c));
    for (std::uint32_t r = c + 1; r < m; ++r) {
      std::uint32_t f = F.mul(x(r, c), ic);
      if (!f) continue;
      for (std::uint32_t j = c; j < m; ++j) x(r, j) = F.sub(x(r, j), F.mul(f, x(c, j)));
    }
  }
  return d;
}

inline Mat mat_inv(const ff::Field& F, const Mat& x) {
  const std::uint32_t m = x.m;
  Mat a = x, r = Mat::identity(m);
  for (std::uint32_t c = 0; c < m; ++c) {
    std::uint32_t piv = m;
    for (std::uint32_t i = c; i < m; ++i)
      if (a(i, c)) {
        piv = i;
        break;
      }
    if (piv == m) throw std::domain_error("singular matrix");
    for (std::uint32_t j = 0; j < m; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(r(piv, j), r(c, j));
    }
    std::uint32_t ic = F.inv(a(c, c));
    for (std::uint32_t j = 0; j < m; ++j) {
      a(c, j) = F.mul(a(c, j), ic);
      r(c, j) = F.mul(r(c, j), ic);
    }
    for (std::uint32_t i = 0; i < m; ++i) {
      if (i == c || !a(i, c)) continue;
      std::uint32_t f = a(i, c);
      for (std::uint32_t j = 0; j < m; ++j) {
        a(i, j) = F.sub(a(i, j), F.mul(f, a(c, j)));
        r(i, j) = F.sub(r(i, j), F.mul(f, r(c, j)));
      }
    }
  }
  return r;
}

// [x, y] = x^-1 y^-1 x y
inline Mat mat_comm(const ff::Field& F, const Mat& x, const Mat& y) {
  return mat_mul(F, mat_mul(F, mat_inv(F, x), mat_inv(F, y)), mat_mul(F, x, y));
}

inline bool is_scalar(const Mat& x) {
  for (std::uint32_t i = 0; i < x.m; ++i)
    for (std::uint32_t j = 0; j < x.m; ++j) {
      if (i != j && x(i, j)) return false;
      if (x(i, i) != x(0, 0)) return false;
    }
  return true;
}

inline std::uint64_t mat_order(const ff::Field& F, const Mat& x, std::uint64_t cap = 1u << 20) {
  const Mat id = Mat::identity(x.m);
  Mat y = x;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (y == id) return k;
    y = mat_mul(F, y, x);
  }
  throw std::runtime_error("matrix order exceeds cap");
}

// Order modulo scalars.
inline std::uint64_t mat_projective_order(const ff::Field& F, const Mat& x, std::uint64_t cap = 1u << 20) {
  Mat y = x;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (is_scalar(y)) return k;
    y = mat_mul(F, y, x);
  }
  throw std::runtime_error("matrix order exceeds cap");
}

// det(tI - x) by fraction-free (Bareiss) elimination over F[t].
inline ff::Poly char_poly(const ff::Field& F, const Mat& x) {
  const std::uint32_t m = x.m;
  std::vector<ff::Poly> a(std::size_t{m} * m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      std::vector<std::uint32_t> c{F.neg(x(i, j))};
      if (i == j) c.push_back(1);
      a[std::size_t{i} * m + j] = ff::Poly(c);
    }
  // Bareiss elimination keeps entries polynomial.
  ff::Poly prev({1});
  bool negate = false;
  for (std::uint32_t k = 0; k + 1 < m; ++k) {
    std::uint32_t piv = m;
    for (std::uint32_t r = k; r < m; ++r)
      if (!a[std::size_t{r} * m + k].is_zero()) {
        piv = r;
        break;
      }
    if (piv == m) return ff::Poly();
    if (piv != k) {
      for (std::uint32_t j = 0; j < m; ++j) std::swap(a[std::size_t{piv} * m + j], a[std::size_t{k} * m + j]);
      negate = !negate;
    }
    for (std::uint32_t i = k + 1; i < m; ++i)
      for (std::uint32_t j = k + 1; j < m; ++j) {
        auto num = ff::Poly::sub(F, ff::Poly::mul(F, a[std::size_t{i} * m + j], a[std::size_t{k} * m + k]),
                                 ff::Poly::mul(F, a[std::size_t{i} * m + k], a[std::size_t{k} * m + j]));
        a[std::size_t{i} * m + j] = ff::Poly::div(F, num, prev);
      }
    prev = a[std::size_t{k} * m + k];
  }
  ff::Poly d = a[std::size_t{m - 1} * m + (m - 1)];
  if (negate) d = ff::Poly::sub(F, ff::Poly(), d);
  return d;
}

}  // namespace engel
