// On-disk cache for representative out-sets, keyed by (descriptor, word,
// format version). Each entry is a binary blob plus a JSON sidecar; anything
// that fails validation is treated as a miss and recomputed.
//
// ENGEL_CACHE_DIR overrides the directory, ENGEL_NO_CACHE=1 disables it.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "engel/engel_graph.hpp"
#include "json.hpp"

namespace engel::cache {

namespace fs = std::filesystem;
using json = nlohmann::json;

inline constexpr std::uint32_t kVersion = 1;
inline constexpr char kMagic[4] = {'E', 'N', 'G', 'C'};

inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline bool disabled() {
  const char* v = std::getenv("ENGEL_NO_CACHE");
  return v && *v && std::string(v) != "0";
}

inline fs::path default_dir() {
  if (const char* d = std::getenv("ENGEL_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "engel";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "engel";
  return fs::temp_directory_path() / "engel-cache";
}

class Cache {
 public:
  explicit Cache(fs::path dir = default_dir(), std::uint32_t version = kVersion) : dir_(std::move(dir)), version_(version) {}

  const fs::path& dir() const { return dir_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

  std::string key(const std::string& descriptor, const Word& w) const {
    const std::string k = descriptor + "|" + w.str() + "|v" + std::to_string(version_);
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(k.data(), k.size());
    return os.str();
  }

  std::optional<std::vector<std::vector<Elem>>> load(const GroupInfo& info, const std::string& descriptor, const Word& w) {
    auto r = try_load(info, descriptor, w);
    ++(r ? hits_ : misses_);
    return r;
  }

  // Failures are swallowed: the cache is an optimisation only.
  bool store(const GroupInfo& info, const std::string& descriptor, const Word& w, const std::vector<std::vector<Elem>>& arcs) {
    try {
      fs::create_directories(dir_);
      const std::string k = key(descriptor, w);
      std::vector<std::uint32_t> words;
      words.push_back(version_);
      words.push_back(info.G->order());
      words.push_back(static_cast<std::uint32_t>(info.cd.num_classes()));
      for (auto r : info.cd.reps) words.push_back(r);
      for (const auto& a : arcs) {
        words.push_back(static_cast<std::uint32_t>(a.size()));
        words.insert(words.end(), a.begin(), a.end());
      }
      const std::uint64_t sum = fnv1a(words.data(), words.size() * 4);
      const fs::path tmp = dir_ / (k + ".bin.tmp");
      {
        std::ofstream out(tmp, std::ios::binary);
        out.write(kMagic, 4);
        out.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size() * 4));
        out.write(reinterpret_cast<const char*>(&sum), 8);
        if (!out) return false;
      }
      fs::rename(tmp, dir_ / (k + ".bin"));
      json side{{"descriptor", descriptor}, {"word", w.str()},          {"version", version_},
                {"order", info.G->order()}, {"classes", info.cd.num_classes()}, {"checksum", std::to_string(sum)},
                {"bytes", 4 + words.size() * 4 + 8}};
      std::ofstream(dir_ / (k + ".json")) << side.dump(2) << "\n";
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  // Representative arcs from the cache, computing and storing them on a miss.
  std::vector<std::vector<Elem>> representative_arcs(const GroupInfoPtr& info, const std::string& descriptor, const Word& w) {
    if (auto hit = load(*info, descriptor, w)) return std::move(*hit);
    auto arcs = engel::representative_arcs(*info, w);
    store(*info, descriptor, w, arcs);
    return arcs;
  }

 private:
  std::optional<std::vector<std::vector<Elem>>> try_load(const GroupInfo& info, const std::string& descriptor, const Word& w) const {
    try {
      const std::string k = key(descriptor, w);
      std::ifstream sj(dir_ / (k + ".json"));
      if (!sj) return std::nullopt;
      json side = json::parse(sj);
      if (side.at("descriptor") != descriptor || side.at("word") != w.str() || side.at("version") != version_) return std::nullopt;
      std::ifstream in(dir_ / (k + ".bin"), std::ios::binary);
      if (!in) return std::nullopt;
      std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (raw.size() < 4 + 12 + 8 || (raw.size() - 12) % 4 || !std::equal(kMagic, kMagic + 4, raw.begin())) return std::nullopt;
      const std::size_t nwords = (raw.size() - 12) / 4;
      std::vector<std::uint32_t> words(nwords);
      std::memcpy(words.data(), raw.data() + 4, nwords * 4);
      std::uint64_t sum;
      std::memcpy(&sum, raw.data() + 4 + nwords * 4, 8);
      if (sum != fnv1a(words.data(), nwords * 4) || std::to_string(sum) != side.at("checksum")) return std::nullopt;
      std::size_t pos = 0;
      auto next = [&]() -> std::uint32_t {
        if (pos >= words.size()) throw std::out_of_range("truncated cache entry");
        return words[pos++];
      };
      if (next() != version_ || next() != info.G->order()) return std::nullopt;
      const std::uint32_t k_cls = next();
      if (k_cls != info.cd.num_classes()) return std::nullopt;
      for (std::uint32_t c = 0; c < k_cls; ++c)
        if (next() != info.cd.reps[c]) return std::nullopt;
      std::vector<std::vector<Elem>> arcs(k_cls);
      for (auto& a : arcs) {
        const std::uint32_t n = next();
        if (n > info.G->order()) return std::nullopt;
        a.resize(n);
        for (auto& y : a) {
          y = next();
          if (y >= info.G->order()) return std::nullopt;
        }
      }
      if (pos != words.size()) return std::nullopt;
      return arcs;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  fs::path dir_;
  std::uint32_t version_;
  std::uint64_t hits_ = 0, misses_ = 0;
};

}  // namespace engel::cache
