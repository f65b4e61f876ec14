#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "engel/cache.hpp"
#include "engel/construct.hpp"

using namespace engel;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  auto d = fs::temp_directory_path() / ("engel-cache-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cache, SecondRunHits) {
  auto dir = fresh_dir("hit");
  auto info = analyse(build_group("PSL2:7"));
  const Word w = Word::fixed(2);
  const auto direct = representative_arcs(*info, w);
  cache::Cache c(dir);
  EXPECT_EQ(c.representative_arcs(info, "PSL2:7", w), direct);
  EXPECT_EQ(c.misses(), 1u);
  cache::Cache c2(dir);
  EXPECT_EQ(c2.representative_arcs(info, "PSL2:7", w), direct);
  EXPECT_EQ(c2.hits(), 1u);
  EXPECT_EQ(c2.misses(), 0u);
  // The sidecar describes the blob.
  std::ifstream side(dir / (c.key("PSL2:7", w) + ".json"));
  auto j = nlohmann::json::parse(side);
  EXPECT_EQ(j["descriptor"], "PSL2:7");
  EXPECT_EQ(j["word"], "engel:2");
  EXPECT_EQ(j["version"], cache::kVersion);
  // Different words get different entries.
  EXPECT_NE(c.key("PSL2:7", Word::fixed(3)), c.key("PSL2:7", w));
  fs::remove_all(dir);
}

TEST(Cache, CachedGraphMatchesUncached) {
  auto dir = fresh_dir("same");
  auto info = analyse(build_group("Alt:5"));
  for (const char* ws : {"engel:1", "engel:3", "engel:*"}) {
    const Word w = Word::parse(ws);
    cache::Cache c(dir);
    c.representative_arcs(info, "Alt:5", w);
    auto arcs = cache::Cache(dir).representative_arcs(info, "Alt:5", w);
    GraphOptions opt;
    opt.rep_arcs = &arcs;
    auto a = build_engel_graph(info, w, opt);
    auto b = build_engel_graph(info, w);
    ASSERT_EQ(a.D.num_vertices(), b.D.num_vertices());
    for (std::uint32_t v = 0; v < a.D.num_vertices(); ++v) ASSERT_EQ(a.D.out(v), b.D.out(v));
  }
  fs::remove_all(dir);
}

TEST(Cache, CorruptEntriesAreIgnored) {
  auto dir = fresh_dir("corrupt");
  auto info = analyse(build_group("Sym:4"));
  const Word w = Word::fixed(1);
  const auto direct = representative_arcs(*info, w);
  cache::Cache c(dir);
  c.representative_arcs(info, "Sym:4", w);
  const auto bin = dir / (c.key("Sym:4", w) + ".bin");
  // Flip one byte in the payload.
  {
    std::fstream f(bin, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    char ch = 0x5a;
    f.write(&ch, 1);
  }
  cache::Cache c2(dir);
  EXPECT_FALSE(c2.load(*info, "Sym:4", w));
  EXPECT_EQ(c2.representative_arcs(info, "Sym:4", w), direct);
  // Truncated blob.
  fs::resize_file(bin, 10);
  EXPECT_FALSE(cache::Cache(dir).load(*info, "Sym:4", w));
  // Garbage sidecar.
  cache::Cache(dir).store(*info, "Sym:4", w, direct);
  std::ofstream(dir / (c.key("Sym:4", w) + ".json")) << "{not json";
  EXPECT_FALSE(cache::Cache(dir).load(*info, "Sym:4", w));
  // An entry stored for another group of the same descriptor shape is rejected.
  cache::Cache(dir).store(*info, "Sym:4", w, direct);
  auto other = analyse(build_group("SL2:3"));
  EXPECT_FALSE(cache::Cache(dir).load(*other, "Sym:4", w));
  fs::remove_all(dir);
}

TEST(Cache, VersionBumpInvalidates) {
  auto dir = fresh_dir("version");
  auto info = analyse(build_group("Sym:3"));
  const Word w = Word::any();
  cache::Cache(dir, 1).representative_arcs(info, "Sym:3", w);
  EXPECT_TRUE(cache::Cache(dir, 1).load(*info, "Sym:3", w));
  EXPECT_FALSE(cache::Cache(dir, 2).load(*info, "Sym:3", w));
  fs::remove_all(dir);
}

TEST(Cache, UnwritableDirectoryDegradesToRecomputation) {
  auto info = analyse(build_group("Sym:3"));
  cache::Cache c("/proc/engel-cannot-exist");
  EXPECT_EQ(c.representative_arcs(info, "Sym:3", Word::fixed(2)), representative_arcs(*info, Word::fixed(2)));
}

TEST(Cache, EnvironmentSwitches) {
  setenv("ENGEL_NO_CACHE", "1", 1);
  EXPECT_TRUE(cache::disabled());
  setenv("ENGEL_NO_CACHE", "0", 1);
  EXPECT_FALSE(cache::disabled());
  unsetenv("ENGEL_NO_CACHE");
  EXPECT_FALSE(cache::disabled());
  setenv("ENGEL_CACHE_DIR", "/tmp/some-engel-dir", 1);
  EXPECT_EQ(cache::default_dir(), fs::path("/tmp/some-engel-dir"));
  unsetenv("ENGEL_CACHE_DIR");
}
