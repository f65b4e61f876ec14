#include <gtest/gtest.h>

#include "engel/witness.hpp"

using namespace engel;
using namespace engel::witness;

namespace {

std::string failures(const WitnessReport& r) {
  std::string s;
  for (const auto& f : r.failures()) s += f + "; ";
  return s;
}

}  // namespace

TEST(Witness, PaleyParameters) {
  auto p5 = paley_graph(5);
  EXPECT_TRUE(p5.report.found);
  EXPECT_EQ(p5.report.payload["parameters"], json({5, 2, 0, 1}));
  // q = 5 is the 5-cycle: each vertex adjacent to x +- 1.
  for (std::uint32_t x = 0; x < 5; ++x) {
    EXPECT_TRUE(p5.adjacent(x, (x + 1) % 5));
    EXPECT_FALSE(p5.adjacent(x, (x + 2) % 5));
  }
  auto p9 = paley_graph(9);
  EXPECT_TRUE(p9.report.found) << failures(p9.report);
  EXPECT_EQ(p9.report.payload["parameters"], json({9, 4, 1, 2}));
  EXPECT_EQ(paley_graph(13).report.payload["parameters"][1], 6);
  for (std::uint64_t q : {17, 25, 29, 401, 1009}) EXPECT_TRUE(paley_graph(q).report.found) << q;
  EXPECT_THROW(paley_graph(7), witness_error);
  EXPECT_THROW(paley_graph(21), witness_error);
}

TEST(Witness, Nr1) {
  for (std::uint64_t q : {5, 13, 17, 25, 29}) {
    auto r = nr1_witness(q);
    EXPECT_TRUE(r.found) << q << ": " << failures(r);
    EXPECT_TRUE(r.all_ok());
  }
  auto r9 = nr1_witness(9);
  EXPECT_FALSE(r9.found);
  EXPECT_TRUE(r9.all_ok()) << failures(r9);
  EXPECT_THROW(nr1_witness(7), witness_error);
  EXPECT_THROW(nr1_witness(2), witness_error);
}

TEST(Witness, Nr1DiscriminantRecheckedIndependently) {
  for (std::uint64_t q : {5, 13, 17, 29, 37, 41}) {
    auto r = nr1_witness(q);
    ASSERT_TRUE(r.found) << q;
    auto F = ff::Field::create_q(q);
    const Mat x = mat_from_json(r.payload["x"]);
    const std::uint32_t tr = F->add(x(0, 0), x(1, 1));
    EXPECT_FALSE(F->is_square(F->sub(F->mul(tr, tr), F->from_int(4)))) << q;
  }
}

TEST(Witness, PslCompanion) {
  for (auto [m, q] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{3, 3}, {3, 5}, {5, 3}}) {
    auto r = psl_companion_witness(m, q);
    EXPECT_TRUE(r.found) << m << "," << q << ": " << failures(r);
    EXPECT_EQ(r.payload["order"], 2);
  }
  for (auto [m, q] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{3, 2}, {3, 4}, {5, 2}}) {
    auto r = psl_companion_witness(m, q);
    EXPECT_TRUE(r.found) << m << "," << q << ": " << failures(r);
    EXPECT_EQ(r.payload["order"], 4);
  }
  EXPECT_THROW(psl_companion_witness(4, 3), witness_error);
}

TEST(Witness, Unitary) {
  for (auto [m, q] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{3, 3}, {3, 4}, {3, 5}}) {
    auto r = unitary_witness(m, q);
    EXPECT_TRUE(r.found) << m << "," << q << ": " << failures(r);
    EXPECT_EQ(((std::uint64_t{q} * q * q + 1) / (q + 1)) % r.payload["order_a"].get<std::uint64_t>(), 0u);
  }
  EXPECT_THROW(unitary_witness(3, 2), witness_error);
  EXPECT_THROW(unitary_witness(4, 3), witness_error);
}

TEST(Witness, Sp4Even) {
  for (std::uint64_t q : {2, 4, 8}) {
    auto r = sp4_even_witness(q);
    EXPECT_TRUE(r.found) << q << ": " << failures(r);
  }
  auto F = ff::Field::create_q(4);
  EXPECT_EQ(mat_order(*F, mat_from_json(sp4_even_witness(4).payload["g"])), 17u);
  EXPECT_THROW(sp4_even_witness(3), witness_error);
}

TEST(Witness, Pgl2) {
  for (std::uint64_t q : {5, 7, 9, 11}) {
    auto r = pgl2_witness(q);
    EXPECT_TRUE(r.found) << q << ": " << failures(r);
    EXPECT_EQ(r.payload["cases"].size(), q - 1);
  }
  // q = 5, a = 1: b = 1/2 = 3, u^2 = -9 I = I over GF(5).
  auto r5 = pgl2_witness(5);
  EXPECT_EQ(r5.payload["cases"][0]["b"], 3);
  EXPECT_THROW(pgl2_witness(8), witness_error);
}

TEST(Witness, Psl2CosetCoverage) {
  for (std::uint64_t q : {5, 7, 11, 13}) {
    auto r = psl2_coset_coverage(q);
    EXPECT_TRUE(r.found) << q << ": " << failures(r);
  }
  EXPECT_THROW(psl2_coset_coverage(53), witness_error);
  EXPECT_THROW(psl2_coset_coverage(8), witness_error);
}

TEST(Witness, Lemma3) {
  auto r7 = lemma3_check(7);
  EXPECT_TRUE(r7.found) << failures(r7);
  EXPECT_GT(r7.payload["orders"]["+"]["4"].get<int>(), 0);
  auto r11 = lemma3_check(11);
  EXPECT_TRUE(r11.found) << failures(r11);
  EXPECT_GT(r11.payload["orders"]["+"]["2"].get<int>(), 0);
  auto r13 = lemma3_check(13);
  EXPECT_TRUE(r13.found) << failures(r13);
  for (auto& [o, n] : r13.payload["orders"]["+"].items()) EXPECT_FALSE(o == "2" || o == "4" || o == "8") << o;
  auto r17 = lemma3_check(17);
  EXPECT_TRUE(r17.found) << failures(r17);
}

TEST(Witness, FieldAutomorphismCommutators) {
  auto sq = field_aut_commutator_check("psl2-even-square", 16);
  EXPECT_TRUE(sq.found) << failures(sq);
  auto id = field_aut_commutator_check("psl2-even-square", 16, 0u);
  EXPECT_TRUE(id.found) << failures(id);
  EXPECT_EQ(mat_from_json(id.payload["commutator"]), Mat::identity(2));
  for (std::uint64_t q : {4, 8, 32}) {
    auto r = field_aut_commutator_check("psl2-q0-2", q);
    EXPECT_TRUE(r.found) << q << ": " << failures(r);
  }
  EXPECT_THROW(field_aut_commutator_check("psl2-even-square", 8), witness_error);
  EXPECT_THROW(field_aut_commutator_check("nonsense", 8), witness_error);
  EXPECT_THROW(field_aut_commutator_check("psl2-q0-2", 128), witness_error);
}

TEST(Witness, AutSz8) {
  auto r = field_aut_commutator_check("sz", 8);
  EXPECT_TRUE(r.found) << failures(r);
  EXPECT_EQ(r.payload["centralizer_order"], 20);
}

TEST(Witness, ClassConstants) {
  auto G = build_group("Sym:3");
  auto cd = compute_classes(*G);
  std::uint32_t tr = 0, three = 0, one = cd.class_of[0];
  for (std::uint32_t c = 0; c < cd.num_classes(); ++c) {
    if (cd.rep_order[c] == 2) tr = c;
    if (cd.rep_order[c] == 3) three = c;
  }
  EXPECT_EQ(class_constant(*G, cd, tr, three, tr), 2u);
  EXPECT_THROW(class_constant(*G, cd, 7, 0, 0), witness_error);
  for (std::string d : {"Sym:4", "Alt:5", "PSL2:7", "SL2:3", "Dihedral:12"}) {
    auto H = build_group(d);
    auto hd = compute_classes(*H);
    const auto k = static_cast<std::uint32_t>(hd.num_classes());
    auto inv_class = [&](std::uint32_t c) { return hd.class_of[H->inv(hd.reps[c])]; };
    for (std::uint32_t i = 0; i < k; ++i) {
      auto t = class_constant_table(*H, hd, i);
      for (std::uint32_t v = 0; v < k; ++v) {
        // Identity class as cofactor.
        EXPECT_EQ(t[hd.class_of[0]][v], i == v ? 1u : 0u) << d;
        for (std::uint32_t j = 0; j < k; ++j) {
          ASSERT_EQ(t[j][v], class_constant(*H, hd, i, j, v));
          // (a, b) -> (b^-1, a^-1).
          ASSERT_EQ(t[j][v], class_constant(*H, hd, inv_class(j), inv_class(i), inv_class(v))) << d;
        }
      }
    }
    EXPECT_TRUE(class_constant_mass_conservation(*H, hd)) << d;
  }
  (void)one;
}

TEST(Witness, ReportsReplayAndRoundTrip) {
  std::vector<WitnessReport> rs = {nr1_witness(13), nr1_witness(9), psl_companion_witness(3, 4), unitary_witness(3, 3),
                                   sp4_even_witness(4), pgl2_witness(7), psl2_coset_coverage(7), lemma3_check(11),
                                   field_aut_commutator_check("psl2-q0-2", 8), paley_graph(13).report};
  for (const auto& r : rs) {
    auto back = WitnessReport::from_json(json::parse(r.to_json().dump()));
    EXPECT_EQ(back.to_json(), r.to_json());
    EXPECT_TRUE(replay(back)) << r.lemma;
  }
  // A tampered payload fails the independent re-check.
  auto bad = nr1_witness(13);
  auto x = mat_from_json(bad.payload["x"]);
  x(0, 1) = (x(0, 1) + 1) % 13;
  bad.payload["x"] = mat_json(x);
  EXPECT_FALSE(recheck_payload(bad));
  EXPECT_FALSE(replay(bad));
}
