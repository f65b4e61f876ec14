#include <gtest/gtest.h>

#include "engel/classify.hpp"

using namespace engel;
using namespace engel::classify;

namespace {

Outcome out(const std::string& g, const std::string& w) { return predict(g, w).outcome; }

}  // namespace

TEST(Classify, Psl2Branches) {
  // q = 23: v_2(12) = 2.
  EXPECT_EQ(out("PSL2:23", "engel:2"), Outcome::not_sc);
  EXPECT_EQ(out("PSL2:23", "engel:3"), Outcome::sc);
  EXPECT_EQ(predict("PSL2:23", "engel:2").params["a"], 2);
  EXPECT_EQ(predict("PSL2:23", "engel:3").branch, "tired");
  for (const char* w : {"engel:1", "engel:2", "engel:5", "engel:40", "engel:*"}) EXPECT_EQ(out("PSL2:13", w), Outcome::not_sc) << w;
  EXPECT_EQ(predict("PSL2:13", "engel:*").branch, "main");
  EXPECT_EQ(out("PSL2:11", "engel:2"), Outcome::sc);
  // n = 1 is outside the threshold statement when a = 1.
  EXPECT_EQ(out("PSL2:11", "engel:1"), Outcome::not_covered);
  EXPECT_EQ(out("PSL2:17", "engel:2"), Outcome::sc);
  EXPECT_EQ(out("PSL2:9", "engel:2"), Outcome::not_sc);
  EXPECT_EQ(out("PSL2:9", "engel:3"), Outcome::sc);
  EXPECT_EQ(out("Alt:6", "engel:2"), Outcome::not_sc);
  EXPECT_EQ(out("PSL2:8", "engel:*"), Outcome::not_sc);
  EXPECT_EQ(out("Alt:5", "engel:7"), Outcome::not_sc);
  // q = 31: (q+1)/2 = 16, a = 4.
  EXPECT_EQ(out("PSL2:31", "engel:4"), Outcome::not_sc);
  EXPECT_EQ(out("PSL2:31", "engel:5"), Outcome::sc);
  EXPECT_EQ(out("PSL:3:2", "engel:2"), Outcome::not_sc);
}

TEST(Classify, OtherFamilies) {
  EXPECT_EQ(out("Sz:8", "engel:*"), Outcome::not_sc);
  EXPECT_EQ(out("Sz:32", "engel:3"), Outcome::not_sc);
  EXPECT_EQ(out("Sz:8.fieldaut:3", "engel:*"), Outcome::not_sc);
  EXPECT_EQ(predict("Sz:8.fieldaut:3", "engel:*").branch, "corcorcor");
  EXPECT_EQ(out("PSL:3:4", "engel:2"), Outcome::not_sc);
  EXPECT_EQ(out("PSL:3:4", "engel:3"), Outcome::sc);
  EXPECT_EQ(out("PSL:3:3", "engel:2"), Outcome::sc);
  EXPECT_EQ(out("PSL:4:2", "engel:2"), Outcome::not_covered);
  EXPECT_EQ(out("PSL:4:2", "engel:3"), Outcome::sc);
  EXPECT_EQ(out("PSU:4:2", "engel:1"), Outcome::not_sc);
  EXPECT_EQ(out("PSU:4:2", "engel:2"), Outcome::sc);
  EXPECT_EQ(out("PSU:3:3", "engel:1"), Outcome::not_covered);
  EXPECT_EQ(out("Sp:4:4", "engel:3"), Outcome::sc);
  EXPECT_EQ(out("Sp:4:4", "engel:2"), Outcome::not_covered);
  EXPECT_EQ(out("Alt:7", "engel:3"), Outcome::sc);
  EXPECT_EQ(out("Sym:7", "engel:3"), Outcome::sc);
  EXPECT_EQ(predict("Sym:7", "engel:3").branch, "corcorcor");
  EXPECT_EQ(out("PGL2:11", "engel:2"), Outcome::sc);
  EXPECT_EQ(predict("PGL2:11", "engel:2").branch, "andrea");
  EXPECT_EQ(predict("PSL2:25.fieldaut:2", "engel:2").branch, "tiredtired");
  EXPECT_EQ(out("PGL:3:4", "engel:3"), Outcome::sc);
  EXPECT_EQ(out("PGL2:8", "engel:*"), Outcome::not_sc);  // PGL_2(8) = PSL_2(8)
}

TEST(Classify, CentralExtensionsAndComputedRoute) {
  // SL_2(5): G/Z_∞ = PSL_2(5); fixed n is not covered with a nontrivial centre.
  auto v = predict("SL2:5", "engel:*");
  EXPECT_EQ(v.outcome, Outcome::not_sc);
  EXPECT_EQ(v.branch, "final-corollary");
  EXPECT_EQ(out("SL2:5", "engel:3"), Outcome::not_covered);
  EXPECT_EQ(out("SL2:7", "engel:*"), Outcome::sc);
  auto s3 = predict("SL2:3", "engel:*");
  EXPECT_EQ(s3.outcome, Outcome::not_sc);
  EXPECT_EQ(s3.branch, "prel");
  EXPECT_EQ(s3.params["hypercenter_order"], 2);
  EXPECT_EQ(out("SL2:3", "engel:2"), Outcome::not_covered);
  EXPECT_EQ(out("AGL1:5", "engel:2"), Outcome::not_sc);
  EXPECT_EQ(out("Sym:4", "engel:*"), Outcome::sc);
  EXPECT_EQ(out("Sym:4", "engel:2"), Outcome::not_covered);
  auto d8 = predict("Dihedral:8", "engel:*");
  EXPECT_TRUE(d8.empty);
  EXPECT_EQ(d8.outcome, Outcome::sc);
  EXPECT_TRUE(predict("Cyclic:5", "engel:*").empty);
  EXPECT_EQ(out("Dihedral:12", "engel:*"), Outcome::not_sc);  // D_12 / Z = S_3
  EXPECT_EQ(out("PSU:3:2", "engel:*"), Outcome::not_sc);       // 3^2:Q_8 is Frobenius
  EXPECT_EQ(out("Dihedral:20000", "engel:*"), Outcome::not_covered);
}

TEST(Classify, AlmostSimpleQuotientDetection) {
  auto check = [](const std::string& d) {
    auto I = analyse(build_group(d));
    return classify::detail::almost_simple(*I->G, I->cd);
  };
  EXPECT_TRUE(check("Alt:5"));
  EXPECT_TRUE(check("Sym:5"));
  EXPECT_TRUE(check("PSL2:7"));
  EXPECT_FALSE(check("Sym:4"));
  EXPECT_FALSE(check("AGL1:5"));
  EXPECT_FALSE(check("Dihedral:10"));
}

TEST(Classify, Monotone) {
  std::vector<std::string> groups = {"PSL2:5", "PSL2:7",  "PSL2:9",  "PSL2:11",  "PSL2:17",       "PSL2:31",        "PSL2:127",
                                     "PSL2:8", "PSL:3:4", "PSL:3:3", "PSU:4:2",  "Sp:4:4",        "Alt:7",          "Sym:8",
                                     "Sz:8",   "PGL2:7",  "Sym:6",   "AGL1:7",   "Sz:8.fieldaut:3", "PSL2:9.fieldaut:2"};
  for (const auto& g : groups) {
    bool seen_sc = false;
    for (std::uint32_t n = 1; n <= 12; ++n) {
      auto o = predict(parse_descriptor(g), Word::fixed(n)).outcome;
      if (seen_sc) {
        EXPECT_EQ(o, Outcome::sc) << g << " n=" << n;
      }
      if (o == Outcome::sc) seen_sc = true;
      if (o == Outcome::not_sc) {
        for (std::uint32_t m = 1; m < n; ++m) EXPECT_EQ(predict(parse_descriptor(g), Word::fixed(m)).outcome, Outcome::not_sc) << g;
      }
    }
    // The cumulative answer is the limit of the fixed-n answers.
    auto cum = predict(parse_descriptor(g), Word::any()).outcome;
    auto far = predict(parse_descriptor(g), Word::fixed(1000)).outcome;
    if (far != Outcome::not_covered) {
      EXPECT_EQ(cum, far) << g;
    }
  }
}

TEST(Classify, VerdictJson) {
  auto j = predict("PSL2:23", "engel:2").to_json();
  EXPECT_EQ(j["strongly_connected"], false);
  EXPECT_EQ(j["branch"], "tired");
  EXPECT_EQ(j["params"]["q_mod_8"], 7);
  auto nc = predict("PSL2:11", "engel:1").to_json();
  EXPECT_EQ(nc["strongly_connected"], "not-covered");
}

TEST(Classify, CrossValidateExamples) {
  EXPECT_EQ(cross_validate("PSL2:11", "engel:2").status, Status::agree);
  EXPECT_EQ(cross_validate("SL2:3", "engel:*").status, Status::agree);
  EXPECT_EQ(cross_validate("Sym:4", "engel:*").status, Status::agree);
  auto d8 = cross_validate("Dihedral:8", "engel:*");
  EXPECT_EQ(d8.status, Status::agree);
  EXPECT_TRUE(d8.computed["empty"].get<bool>());
  EXPECT_EQ(cross_validate("PSL2:11", "engel:1").status, Status::not_covered);
  CrossOptions small;
  small.max_order = 100;
  auto sk = cross_validate("PSL2:7", "engel:3", small);
  EXPECT_EQ(sk.status, Status::skipped);
  EXPECT_FALSE(sk.ok());
}

TEST(Classify, MismatchProducesCounterexampleBundle) {
  // Sabotaged arcs: nothing but loops, so Γ_3(PSL_2(7)) falls apart.
  CrossOptions opt;
  opt.rep_arcs = [](const GroupInfoPtr& info, const std::string&, const Word&) {
    std::vector<std::vector<Elem>> a(info->cd.num_classes());
    for (std::size_t c = 0; c < a.size(); ++c) a[c] = {info->cd.reps[c]};
    return a;
  };
  auto r = cross_validate("PSL2:7", "engel:3", opt);
  EXPECT_EQ(r.status, Status::mismatch);
  ASSERT_TRUE(r.bundle.is_object());
  EXPECT_EQ(r.bundle["group"], "PSL2:7");
  // Without arcs the identity is no longer an Engel sink, so every element is a vertex.
  EXPECT_EQ(r.bundle["scc_sizes"].size(), r.computed["vertices"].get<std::size_t>());
  EXPECT_EQ(r.bundle["scc_sizes"].size(), 168u);
  EXPECT_TRUE(r.bundle["graph"].is_object());
  EXPECT_TRUE(r.to_json().contains("counterexample"));
}

TEST(Classify, DefaultSuiteSize) {
  std::set<std::string> groups;
  for (const auto& e : default_suite()) groups.insert(e.group);
  EXPECT_GE(groups.size(), 20u);
  for (std::string g : {"SL2:3", "AGL1:5", "Sym:4", "Dihedral:8"}) EXPECT_TRUE(groups.count(g)) << g;
}
