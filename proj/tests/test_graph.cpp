#include <gtest/gtest.h>

#include <random>

#include "engel/construct.hpp"
#include "engel/engel_graph.hpp"

using namespace engel;

namespace {

EngelGraph graph_of(const std::string& d, const std::string& w, int mat = -1) {
  GraphOptions o;
  o.materialize = mat;
  return build_engel_graph(analyse(build_group(d)), Word::parse(w), o);
}

const std::vector<std::string> kSmall = {"Sym:3", "Sym:4", "Alt:4", "Alt:5", "Dihedral:8", "Dihedral:10", "SL2:3", "PSL2:7", "AGL1:5"};
const std::vector<std::string> kWords = {"engel:1", "engel:2", "engel:3", "engel:*"};

}  // namespace

TEST(Graph, Psl27ComponentCounts) {
  auto g1 = graph_of("PSL2:7", "engel:1");
  auto g2 = graph_of("PSL2:7", "engel:2");
  auto g3 = graph_of("PSL2:7", "engel:3");
  EXPECT_EQ(g2.D.num_vertices(), 167u);
  EXPECT_EQ(scc(g1.D).count, 37u);
  EXPECT_EQ(scc(g2.D).count, 9u);
  EXPECT_TRUE(scc(g3.D).strongly_connected());
}

TEST(Graph, RepresentativeBuilderMatchesDirect) {
  for (const auto& d : kSmall)
    for (const auto& w : kWords) {
      auto eg = graph_of(d, w);
      auto direct = build_engel_graph_direct(*eg.info->G, eg.word);
      ASSERT_EQ(eg.D.labels(), direct.labels()) << d << " " << w;
      for (std::uint32_t v = 0; v < direct.num_vertices(); ++v) ASSERT_EQ(eg.D.out(v), direct.out(v)) << d << " " << w;
    }
}

TEST(Graph, ImplicitMatchesMaterialised) {
  auto imp = graph_of("PSL2:11", "engel:2", 0);
  auto mat = graph_of("PSL2:11", "engel:2", 1);
  ASSERT_TRUE(imp.D.implicit());
  ASSERT_FALSE(mat.D.implicit());
  ASSERT_EQ(imp.D.num_arcs(), mat.D.num_arcs());
  for (std::uint32_t v = 0; v < mat.D.num_vertices(); ++v) ASSERT_EQ(imp.D.out(v), mat.D.out(v));
  EXPECT_EQ(scc(imp.D).sizes, scc(mat.D).sizes);
  EXPECT_TRUE(verify_equivariance(imp, 100));
}

TEST(Graph, TarjanMatchesClosure) {
  for (const auto& d : kSmall)
    for (const auto& w : kWords) {
      auto eg = graph_of(d, w);
      if (eg.D.num_vertices() > 200) continue;
      auto r = scc(eg.D);
      EXPECT_TRUE(scc_matches_closure(eg.D, r)) << d << " " << w;
    }
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t V = 1 + rng() % 60;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    const std::uint32_t m = rng() % (2 * V + 1);
    for (std::uint32_t i = 0; i < m; ++i) arcs.emplace_back(rng() % V, rng() % V);
    auto D = Digraph::from_arcs(V, arcs);
    EXPECT_TRUE(scc_matches_closure(D, scc(D)));
  }
}

TEST(Graph, TarjanHandlesLongPathWithoutRecursion) {
  const std::uint32_t V = 300000;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  for (std::uint32_t v = 0; v + 1 < V; ++v) arcs.emplace_back(v, v + 1);
  auto path = Digraph::from_arcs(V, arcs);
  EXPECT_EQ(scc(path).count, V);
  arcs.emplace_back(V - 1, 0);
  EXPECT_EQ(scc(Digraph::from_arcs(V, arcs)).count, 1u);
}

TEST(Graph, SmallExamples) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> complete;
  for (std::uint32_t i = 0; i < 5; ++i)
    for (std::uint32_t j = 0; j < 5; ++j) complete.emplace_back(i, j);
  EXPECT_EQ(scc(Digraph::from_arcs(5, complete)).count, 1u);
  auto single = Digraph::from_arcs(1, {});
  auto wr = weak_components_and_diameter(single);
  EXPECT_EQ(wr.components, 1u);
  EXPECT_EQ(wr.diameter, 0u);
}

TEST(Graph, EmptyVertexSetIsFlagged) {
  auto eg = graph_of("Dihedral:8", "engel:*");
  EXPECT_TRUE(eg.empty());
  auto r = scc(eg.D);
  EXPECT_TRUE(r.empty);
  EXPECT_TRUE(r.strongly_connected());
  auto j = export_json(eg.D, "Dihedral:8", "engel:*", &r);
  EXPECT_TRUE(j["empty"].get<bool>());
  EXPECT_TRUE(j["vertices"].empty());
  auto ab = graph_of("Cyclic:12", "engel:*");
  EXPECT_TRUE(ab.empty());
}

TEST(Graph, VertexSetsOfSimpleGroups) {
  EXPECT_EQ(graph_of("Alt:5", "engel:1").D.num_vertices(), 59u);
  EXPECT_EQ(graph_of("PSL2:7", "engel:*").D.num_vertices(), 167u);
  // SL2(3): commuting graph removes the centre only.
  EXPECT_EQ(graph_of("SL2:3", "engel:1").D.num_vertices(), 22u);
}

TEST(Graph, CommutingGraphIsSymmetric) {
  for (const auto& d : kSmall) {
    auto eg = graph_of(d, "commuting");
    for (std::uint32_t v = 0; v < eg.D.num_vertices(); ++v)
      for (auto w : eg.D.out(v)) {
        auto back = eg.D.out(w);
        ASSERT_TRUE(std::binary_search(back.begin(), back.end(), v)) << d;
      }
  }
}

TEST(Graph, ArcSetsNestInN) {
  for (const auto& d : kSmall) {
    auto info = analyse(build_group(d));
    const Group& G = *info->G;
    EngelScratch sc(G.order());
    for (Elem x = 0; x < G.order(); ++x)
      for (Elem y = 0; y < G.order(); ++y) {
        bool prev = false;
        for (std::uint32_t n = 1; n <= 4; ++n) {
          bool a = is_arc(G, x, y, Word::fixed(n), sc);
          ASSERT_TRUE(!prev || a);
          prev = a;
        }
        if (prev) {
          ASSERT_TRUE(is_arc(G, x, y, Word::any(), sc));
        }
      }
  }
}

TEST(Graph, CommutingComponentsOfPsl27) {
  auto eg = graph_of("PSL2:7", "engel:1");
  const auto& cd = eg.info->cd;
  auto r = scc(eg.D);
  // Elements of order 7 form components equal to Sylow 7-subgroups minus 1.
  std::uint32_t even_comp = kNone;
  for (std::uint32_t v = 0; v < eg.D.num_vertices(); ++v) {
    const Elem x = eg.element_of(v);
    const auto o = cd.order_of(x);
    if (o == 7) {
      EXPECT_EQ(r.sizes[r.comp[v]], 6u);
    }
    if (o % 2 == 0) {
      if (even_comp == kNone) even_comp = r.comp[v];
      EXPECT_EQ(r.comp[v], even_comp);
    }
  }
}

TEST(Graph, EvenOrderElementsShareCommutingComponent) {
  // PSL2(2^f) is excluded: there the Sylow 2-subgroup is an isolated component.
  for (std::string d : {"PSL2:11", "PSL2:13", "PSL:3:3", "PSU:3:3"}) {
    auto eg = graph_of(d, "commuting");
    auto r = scc(eg.D);
    std::uint32_t c = kNone;
    for (std::uint32_t v = 0; v < eg.D.num_vertices(); ++v) {
      if (eg.info->cd.order_of(eg.element_of(v)) % 2 != 0) continue;
      if (c == kNone) c = r.comp[v];
      EXPECT_EQ(r.comp[v], c) << d;
    }
  }
}

TEST(Graph, CumulativeDiameterForEvenPsl2) {
  for (std::string d : {"PSL2:4", "Alt:5"}) {
    auto eg = graph_of(d, "engel:*");
    auto wr = weak_components_and_diameter(eg.D);
    EXPECT_EQ(wr.components, 1u) << d;
    EXPECT_LE(wr.diameter, 10u) << d;
    auto from_classes = weak_components_and_diameter(eg.D, class_sources(eg));
    EXPECT_EQ(from_classes.diameter, wr.diameter) << d;
  }
}

TEST(Graph, JsonRoundTrip) {
  auto eg = graph_of("PSL2:5", "engel:2");
  auto r = scc(eg.D);
  auto j = export_json(eg.D, "PSL2:5", "engel:2", &r);
  auto back = import_json(nlohmann::json::parse(j.dump()));
  auto r2 = scc(back);
  EXPECT_EQ(r.count, r2.count);
  EXPECT_EQ(r.sorted_sizes(), r2.sorted_sizes());
  EXPECT_EQ(j.dump(), export_json(back, "PSL2:5", "engel:2", &r2).dump());
}

TEST(Graph, TwoCycleSerialisations) {
  auto D = Digraph::from_arcs(2, {{0, 1}, {1, 0}});
  auto j = export_json(D, "x", "engel:1");
  EXPECT_EQ(j["arcs"].size(), 2u);
  auto dot = export_dot(D);
  EXPECT_NE(dot.find("0 -> 1"), std::string::npos);
  EXPECT_NE(dot.find("1 -> 0"), std::string::npos);
  auto big = Digraph::from_arcs(2001, {});
  EXPECT_THROW(export_dot(big), graph_error);
  auto empty = Digraph::from_arcs(0, {});
  EXPECT_TRUE(export_json(empty, "x", "engel:1")["vertices"].empty());
}
