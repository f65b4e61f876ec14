#include <gtest/gtest.h>

#include <set>

#include "engel/ff.hpp"

using namespace engel::ff;

namespace {

// Brute-force root test on a polynomial over GF(p), coefficients low first.
bool has_factor_brute(std::uint32_t p, const std::vector<std::uint32_t>& c) {
  // Trial division by every monic polynomial of degree 1..deg/2.
  auto F = Field::create(p, 1);
  Poly f(c);
  int n = f.degree();
  for (int d = 1; d <= n / 2; ++d) {
    std::uint64_t total = ipow(p, d);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<std::uint32_t> g(d + 1);
      std::uint64_t t = idx;
      for (int i = 0; i < d; ++i, t /= p) g[i] = t % p;
      g[d] = 1;
      if (Poly::mod(*F, f, Poly(g)).is_zero()) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Field, PrimeFieldBasics) {
  auto F = Field::create(7, 1);
  EXPECT_EQ(F->q(), 7u);
  EXPECT_EQ(F->modulus(), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(F->inv(3), 5u);
  for (std::uint32_t x = 0; x < 7; ++x) EXPECT_EQ(F->add(x, 0), x);
}

TEST(Field, GF8ModulusIsLeastIrreducible) {
  auto F = Field::create(2, 3);
  EXPECT_EQ(F->modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  // Every monic cubic with smaller index must factor.
  for (std::uint32_t idx = 0; idx < 3; ++idx) {
    std::vector<std::uint32_t> c{idx & 1, (idx >> 1) & 1, 0, 1};
    EXPECT_TRUE(has_factor_brute(2, c));
  }
  EXPECT_FALSE(has_factor_brute(2, F->modulus()));
}

TEST(Field, ModulusLeastAgainstBruteForce) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {2, 6}, {7, 2}}) {
    auto F = Field::create(p, f);
    std::uint64_t q = F->q();
    std::uint32_t first = 0;
    for (std::uint32_t idx = 0; idx < q; ++idx) {
      std::vector<std::uint32_t> c(f + 1);
      std::uint32_t t = idx;
      for (int i = 0; i < f; ++i, t /= p) c[i] = t % p;
      c[f] = 1;
      if (!has_factor_brute(p, c)) {
        first = idx;
        break;
      }
    }
    std::uint32_t got = 0, w = 1;
    for (int i = 0; i < f; ++i, w *= p) got += F->modulus()[i] * w;
    EXPECT_EQ(got, first) << p << "^" << f;
  }
}

TEST(Field, Errors) {
  EXPECT_THROW(Field::create(4, 1), field_error);
  EXPECT_THROW(Field::create(2, 27), field_error);
  auto F = Field::create(7, 1);
  EXPECT_THROW(F->inv(0), field_error);
  EXPECT_THROW(F->pow(0, -1), field_error);
  auto G = Field::create(7, 1);
  EXPECT_THROW((void)(FieldElem(F, 1) + FieldElem(G, 2)), field_error);
}

TEST(Field, GroupLawsExhaustive) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}, {2, 4}, {5, 2}, {3, 3}}) {
    auto F = Field::create(p, f);
    const auto q = F->q();
    for (std::uint32_t x = 1; x < q; ++x) {
      EXPECT_EQ(F->mul(x, F->inv(x)), 1u);
      EXPECT_EQ(F->pow(x, q - 1), 1u);
      EXPECT_EQ(F->pow(x, -1), F->inv(x));
    }
    // Distributivity and commutativity over all pairs, one fixed third element.
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        EXPECT_EQ(F->mul(a, b), F->mul(b, a));
        EXPECT_EQ(F->add(F->sub(a, b), b), a);
        std::uint32_t c = (a * 7 + b * 3 + 1) % q;
        EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      }
  }
}

TEST(Field, LargeFieldWithoutTablesMatchesTables) {
  // GF(2^17) has no tables; spot-check against repeated-addition style identities.
  auto F = Field::create(2, 17);
  for (std::uint32_t x : {1u, 2u, 3u, 12345u, 99999u, 131071u}) {
    EXPECT_EQ(F->mul(x, F->inv(x)), 1u);
    EXPECT_EQ(F->frobenius(x, 17), x);
  }
}

TEST(Field, IsSquareAgainstExhaustiveSquaring) {
  for (std::uint64_t q = 2; q <= 10000; ++q) {
    auto pf = prime_power(q);
    if (!pf) continue;
    if (q > 2500 && q % 7 != 0 && pf->second == 1 && q % 11 != 3) continue;  // thin the prime range
    auto F = Field::create(pf->first, pf->second);
    std::vector<char> sq(q, 0);
    for (std::uint32_t y = 0; y < q; ++y) sq[F->mul(y, y)] = 1;
    for (std::uint32_t x = 0; x < q; ++x) ASSERT_EQ(F->is_square(x), sq[x] != 0) << q << " " << x;
  }
}

TEST(Field, IsSquareExamples) {
  auto F7 = Field::create(7, 1);
  EXPECT_TRUE(F7->is_square(2));
  EXPECT_EQ(F7->sqrt(2).value(), 3u);
  auto F13 = Field::create(13, 1);
  EXPECT_TRUE(F13->is_square(F13->neg(1)));
  auto F16 = Field::create(2, 4);
  for (std::uint32_t x = 0; x < 16; ++x) EXPECT_TRUE(F16->is_square(x));
}

TEST(Field, TwoISquareWhenQIsOneModFour) {
  for (std::uint64_t q = 5; q <= 10000; q += 4) {
    auto pf = prime_power(q);
    if (!pf) continue;
    auto F = Field::create(pf->first, pf->second);
    auto i = F->sqrt(F->neg(1));
    ASSERT_TRUE(i.has_value()) << q;
    ASSERT_TRUE(F->is_square(F->mul(2, *i))) << q;
  }
}

TEST(Field, ElementOfOrder) {
  auto F7 = Field::create(7, 1);
  EXPECT_EQ(F7->element_of_order(6), 3u);
  auto F9 = Field::create(3, 2);
  auto x = F9->element_of_order(4);
  EXPECT_EQ(F9->pow(x, 4), 1u);
  EXPECT_NE(F9->pow(x, 2), 1u);
  auto F8 = Field::create(2, 3);
  EXPECT_THROW(F8->element_of_order(5), field_error);
}

TEST(Subfield, TraceAndNorm) {
  {
    SubfieldEmbedding e(Field::create(2, 1), Field::create(2, 2));
    EXPECT_EQ(rel_trace(e, 1), 0u);
    auto& B = *e.big();
    std::uint32_t w = B.element_of_order(3);
    EXPECT_EQ(rel_norm(e, w), 1u);
  }
  {
    SubfieldEmbedding e(Field::create(3, 1), Field::create(3, 2));
    auto& B = *e.big();
    for (std::uint32_t x = 0; x < 9; ++x) {
      EXPECT_EQ(e.embed(rel_norm(e, x)), B.pow(x, 4));
      for (std::uint32_t y = 0; y < 9; ++y) {
        EXPECT_EQ(e.small()->add(rel_trace(e, x), rel_trace(e, y)), rel_trace(e, B.add(x, y)));
        EXPECT_EQ(e.small()->mul(rel_norm(e, x), rel_norm(e, y)), rel_norm(e, B.mul(x, y)));
      }
    }
  }
  {
    SubfieldEmbedding e(Field::create(2, 2), Field::create(2, 6));
    std::set<std::uint32_t> img;
    const auto& S = *e.small();
    auto& B = *e.big();
    for (std::uint32_t x = 0; x < 64; ++x) {
      auto t = rel_trace(e, x);
      img.insert(t);
      // Frobenius-fixed and small-field linear.
      EXPECT_EQ(B.frobenius(e.embed(t), 2), e.embed(t));
      for (std::uint32_t c = 0; c < 4; ++c) EXPECT_EQ(rel_trace(e, B.mul(e.embed(c), x)), S.mul(c, t));
      if (x) {
        EXPECT_NE(rel_norm(e, x), 0u);
      }
    }
    EXPECT_EQ(img.size(), 4u);
  }
}

TEST(Subfield, EmbeddingIsHomomorphism) {
  SubfieldEmbedding e(Field::create(3, 2), Field::create(3, 4));
  const auto& S = *e.small();
  const auto& B = *e.big();
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b) {
      EXPECT_EQ(e.embed(S.mul(a, b)), B.mul(e.embed(a), e.embed(b)));
      EXPECT_EQ(e.embed(S.add(a, b)), B.add(e.embed(a), e.embed(b)));
    }
  EXPECT_THROW(SubfieldEmbedding(Field::create(3, 3), Field::create(3, 4)), field_error);
}

TEST(Irreducible, UnitConstant) {
  auto F2 = Field::create(2, 1);
  auto r = find_irreducible_with_unit_constant(*F2, 3);
  EXPECT_EQ(r.poly.coeffs(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  for (auto [p, f, m] : std::vector<std::tuple<int, int, int>>{{3, 1, 3}, {5, 1, 3}, {2, 2, 3}, {3, 1, 5}, {2, 1, 5}, {7, 1, 2}}) {
    auto F = Field::create(p, f);
    auto res = find_irreducible_with_unit_constant(*F, m);
    ASSERT_EQ(res.poly.degree(), m);
    EXPECT_EQ(res.poly.lead(), 1u);
    EXPECT_EQ(res.poly.coeff(0), F->neg(1));
    for (std::uint32_t x = 0; x < F->q(); ++x) EXPECT_NE(res.poly.eval(*F, x), 0u);
    if (f == 1) {
      EXPECT_FALSE(has_factor_brute(p, res.poly.coeffs()));
    }
  }
}
