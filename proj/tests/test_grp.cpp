#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "engel/construct.hpp"
#include "engel/structure.hpp"

using namespace engel;

namespace {

std::vector<std::uint32_t> sorted_sizes(const ClassData& cd) {
  auto s = cd.sizes;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST(Group, OrdersMatchClosedForms) {
  const std::vector<std::pair<std::string, std::uint32_t>> cases = {
      {"PSL2:4", 60},    {"PSL2:5", 60},    {"PSL2:7", 168},   {"PSL2:8", 504},   {"PSL2:9", 360},     {"PGL2:5", 120},
      {"PGL2:9", 720},   {"SL2:3", 24},     {"SL2:5", 120},    {"PSL:3:2", 168},  {"PSL:3:3", 5616},   {"PSL:3:4", 20160},
      {"PSU:3:3", 6048}, {"PSU:4:2", 25920}, {"SU:3:2", 216},  {"Sp:4:2", 720},   {"Sp:4:3", 51840},   {"Sz:8", 29120},
      {"Alt:5", 60},     {"Sym:4", 24},     {"Dihedral:8", 8}, {"AGL1:5", 20},    {"Cyclic:6", 6},     {"Alt:7", 2520}};
  for (const auto& [d, n] : cases) {
    auto G = build_group(d);
    EXPECT_EQ(G->order(), n) << d;
    EXPECT_EQ(G->order(), family_order(parse_descriptor(d))) << d;
  }
}

TEST(Group, ExactAxiomsOnSmallGroups) {
  for (std::string d : {"Sym:3", "Dihedral:10", "SL2:3", "AGL1:5", "Alt:5", "Sym:4"}) {
    auto G = build_group(d);
    const auto n = G->order();
    for (Elem a = 0; a < n; ++a) {
      EXPECT_EQ(G->mult(0, a), a);
      EXPECT_EQ(G->mult(a, 0), a);
      EXPECT_EQ(G->mult(a, G->inv(a)), 0u);
      EXPECT_EQ(G->mult(G->inv(a), a), 0u);
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) ASSERT_EQ(G->mult(G->mult(a, b), c), G->mult(a, G->mult(b, c))) << d;
    }
  }
}

TEST(Group, DescriptorErrors) {
  for (std::string d : {"Sz:4", "Sz:2", "PSL2:6", "Foo:3", "PSL:3", "Alt:x", "Dihedral:7", "PSU:2:3", "Sp:3:2", "PSL2:9.fieldaut:0"})
    EXPECT_THROW(parse_descriptor(d), group_error) << d;
  EXPECT_THROW(build_group("PSL2:7.fieldaut:2"), group_error);  // 2 does not divide f = 1
}

TEST(Group, MatrixPayloadsPreserveForms) {
  auto G = build_group("SU:3:3");
  const auto& P = G->matrices();
  const auto& F = *P.field;
  Mat gram = unitary_gram(3, 3);
  for (auto s : G->generators()) {
    Mat g = G->matrix(s);
    Mat gbarT = transpose(frobenius(F, g, 1));  // x -> x^3 is the involution of GF(9)
    EXPECT_EQ(mat_mul(F, mat_mul(F, g, gram), gbarT).a, gram.a);
    EXPECT_EQ(det(F, g), 1u);
  }
  auto S = build_group("Sp:4:3");
  const auto& Fs = *S->matrices().field;
  Mat J = detail::symplectic_gram(Fs, 4);
  for (auto s : S->generators()) {
    Mat g = S->matrix(s);
    EXPECT_EQ(mat_mul(Fs, mat_mul(Fs, g, J), transpose(g)).a, J.a);
  }
}

TEST(Group, ClassStructure) {
  auto A5 = analyse(build_group("Alt:5"));
  EXPECT_EQ(sorted_sizes(A5->cd), (std::vector<std::uint32_t>{1, 12, 12, 15, 20}));
  auto P = analyse(build_group("PSL2:7"));
  EXPECT_EQ(element_orders(P->cd), (std::set<std::uint64_t>{1, 2, 3, 4, 7}));
  for (std::string d : {"Cyclic:12", "Dihedral:8"}) {
    auto I = analyse(build_group(d));
    if (d == "Cyclic:12") {
      for (auto s : I->cd.sizes) EXPECT_EQ(s, 1u);
    }
  }
  for (std::uint64_t q : {5, 7, 9, 11, 13, 25}) {
    auto I = analyse(build_group("PSL2:" + std::to_string(q)));
    const auto p = ff::prime_power(q)->first;
    int cnt = 0;
    for (auto o : I->cd.rep_order) cnt += o == p;
    EXPECT_EQ(cnt, 2) << q;
  }
  for (std::string d : {"Sym:4", "PSL2:8", "SL2:3", "PSU:3:3", "Sz:8", "PSL2:9.fieldaut:2"}) {
    auto I = analyse(build_group(d));
    EXPECT_TRUE(verify_classes(*I->G, I->cd)) << d;
  }
}

TEST(Group, Normalizers) {
  auto P = analyse(build_group("PSL2:7"));
  const Group& G = *P->G;
  for (Elem y = 0; y < G.order(); ++y)
    if (P->cd.order_of(y) == 7) {
      EXPECT_EQ(normalizer_of_cyclic(G, y).size(), 21u);
    }
  EXPECT_EQ(normalizer_of_cyclic(G, 0).size(), G.order());
  for (std::uint64_t q : {7, 11, 19}) {
    auto I = analyse(build_group("PSL2:" + std::to_string(q)));
    const Group& H = *I->G;
    for (std::size_t c = 1; c < I->cd.num_classes(); ++c) {
      const auto o = I->cd.rep_order[c];
      if (((q + 1) / 2) % o != 0) continue;
      auto N = normalizer_of_cyclic(H, I->cd.reps[c]);
      EXPECT_EQ(N.size(), q + 1) << q << " order " << o;
      // Dihedral: half the elements are involutions outside the cyclic part.
      std::size_t inv = 0;
      for (auto x : N.elems) inv += I->cd.order_of(x) == 2;
      EXPECT_GE(inv, (q + 1) / 2);
    }
  }
}

TEST(Group, Hypercenter) {
  EXPECT_EQ(hypercenter(*build_group("Alt:5")).size(), 1u);
  EXPECT_EQ(hypercenter(*build_group("PSL2:7")).size(), 1u);
  auto S = build_group("SL2:3");
  EXPECT_EQ(center(*S).size(), 2u);
  EXPECT_EQ(hypercenter(*S).size(), 2u);
  auto A4 = quotient(S, hypercenter(*S));
  EXPECT_EQ(A4->order(), 12u);
  EXPECT_EQ(center(*A4).size(), 1u);
  EXPECT_EQ(hypercenter(*build_group("Dihedral:8")).size(), 8u);
  std::vector<Subgroup> series;
  EXPECT_EQ(hypercenter(*build_group("Dihedral:16"), &series).size(), 16u);
  EXPECT_EQ(series.size(), 4u);  // 1 < Z(2) < Z2(4) < D16
  for (std::string d : {"SL2:3", "Sym:4", "Dihedral:12", "SL2:5"}) {
    auto G = build_group(d);
    auto Z = hypercenter(*G);
    EXPECT_TRUE(is_normal(*G, Z));
    EXPECT_EQ(center(*quotient(G, Z)).size(), 1u) << d;
  }
}

TEST(Group, Quotients) {
  auto S = build_group("SL2:5");
  EXPECT_EQ(quotient(S, center(*S))->order(), 60u);
  auto G = build_group("Sym:4");
  auto Q1 = quotient(G, Subgroup{{0}, true});
  ASSERT_EQ(Q1->order(), 24u);
  for (Elem a = 0; a < 24; ++a)
    for (Elem b = 0; b < 24; ++b) EXPECT_EQ(Q1->mult(a, b), G->mult(a, b));
  EXPECT_EQ(quotient(G, whole_group(*G))->order(), 1u);
  auto C = generate(*G, {1});
  if (!is_normal(*G, C)) {
    EXPECT_THROW(quotient(G, C), group_error);
  }
}

TEST(Group, FrobeniusDetection) {
  auto check = [](const std::string& d) -> std::optional<FrobeniusData> {
    auto I = analyse(build_group(d));
    return is_frobenius(*I->G, I->cd);
  };
  auto a4 = check("Alt:4");
  ASSERT_TRUE(a4);
  EXPECT_EQ(a4->kernel.size(), 4u);
  EXPECT_EQ(a4->complement.size(), 3u);
  auto agl = check("AGL1:5");
  ASSERT_TRUE(agl);
  EXPECT_EQ(agl->kernel.size(), 5u);
  auto s3 = check("Sym:3");
  ASSERT_TRUE(s3);
  EXPECT_EQ(s3->kernel.size(), 3u);
  EXPECT_EQ(check("Dihedral:10")->kernel.size(), 5u);
  EXPECT_EQ(check("AGL1:8")->kernel.size(), 8u);
  EXPECT_FALSE(check("Sym:4"));
  EXPECT_FALSE(check("PSL2:7"));
  EXPECT_FALSE(check("Dihedral:8"));
  EXPECT_FALSE(check("Cyclic:6"));
  EXPECT_FALSE(check("SL2:3"));
}

TEST(Group, PrimeGraph) {
  auto P = analyse(build_group("PSL2:7"));
  auto pg = spectrum_prime_graph(*P->G, P->cd);
  EXPECT_EQ(pg.primes, (std::vector<std::uint64_t>{2, 3, 7}));
  EXPECT_TRUE(pg.edges.empty());
  EXPECT_EQ(pg.components.size(), 3u);
  auto C = analyse(build_group("Cyclic:6"));
  auto pc = spectrum_prime_graph(*C->G, C->cd);
  EXPECT_EQ(pc.edges.size(), 1u);
  EXPECT_EQ(pc.components.size(), 1u);
  auto S = analyse(build_group("Sz:8"));
  auto ps = spectrum_prime_graph(*S->G, S->cd);
  EXPECT_EQ(ps.components, (std::vector<std::vector<std::uint64_t>>{{2}, {5}, {7}, {13}}));
  EXPECT_EQ(element_orders(S->cd), (std::set<std::uint64_t>{1, 2, 4, 5, 7, 13}));
}

TEST(Group, Sylow) {
  auto S = analyse(build_group("Sz:8"));
  EXPECT_EQ(sylow(*S->G, S->cd, 2).size(), 64u);
  EXPECT_EQ(sylow(*S->G, S->cd, 13).size(), 13u);
  auto P = analyse(build_group("PSL2:7"));
  auto P2 = sylow(*P->G, P->cd, 2);
  EXPECT_EQ(P2.size(), 8u);
  EXPECT_TRUE(is_closed(*P->G, P2.elems));
}

TEST(Group, Extensions) {
  auto G = build_group("PSL2:9.fieldaut:2");
  EXPECT_EQ(G->order(), 720u);
  auto L = build_group("PSL2:9");
  for (Elem a = 0; a < L->order(); ++a)
    for (Elem b = 0; b < L->order(); b += 7) ASSERT_EQ(G->mult(a, b), L->mult(a, b));
  auto A = build_group("Sz:8.fieldaut:3");
  EXPECT_EQ(A->order(), 87360u);
  std::vector<Elem> id(L->order());
  std::iota(id.begin(), id.end(), 0);
  EXPECT_EQ(extension_by_automorphism(L, id, 1, "same").get(), L.get());
  std::vector<Elem> bad = id;
  std::swap(bad[1], bad[2]);
  EXPECT_THROW(extension_by_automorphism(L, bad, 2, "bad"), group_error);
  auto alpha = field_automorphism_map(*L, 1);
  EXPECT_THROW(extension_by_automorphism(L, alpha, 3, "bad"), group_error);  // order 2, not 3
}

TEST(Group, CayleyTableInput) {
  auto G = build_group("Sym:3");
  const std::string path = ::testing::TempDir() + "s3_table.txt";
  {
    std::ofstream f(path);
    f << 6 << "\n";
    for (Elem a = 0; a < 6; ++a) {
      for (Elem b = 0; b < 6; ++b) f << G->mult(a, b) << " ";
      f << "\n";
    }
  }
  auto T = analyse(build_group("CayleyTable:" + path));
  EXPECT_EQ(T->G->order(), 6u);
  EXPECT_EQ(T->cd.num_classes(), 3u);
  const std::string bad = ::testing::TempDir() + "bad_table.txt";
  {
    std::ofstream f(bad);
    f << "2\n0 1\n0 1\n";
  }
  EXPECT_THROW(build_group("CayleyTable:" + bad), group_error);
  std::remove(path.c_str());
  std::remove(bad.c_str());
}
