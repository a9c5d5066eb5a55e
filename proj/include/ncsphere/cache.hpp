#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "json_io.hpp"

namespace ncsphere {

inline constexpr const char* kCacheVersion = "ncsphere-cache-1";

struct CacheKey {
  std::string kind;          // e.g. "extension_matrix"
  std::string presentation;  // sl2h, su2h, gl2h
  int k = 0;
  std::string mode;          // "symbolic" or "al=P/Q"
  std::string str() const { return kind + "|" + presentation + "|k=" + std::to_string(k) + "|" + mode; }
};

// FNV-1a, stable across platforms
inline uint64_t stable_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Read-through JSON cache. Entries carry their key and version; anything that
// fails to parse or does not match is recomputed and rewritten.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir, std::string version = kCacheVersion)
      : dir_(std::move(dir)), version_(std::move(version)) {}

  // NCSPHERE_CACHE wins over the flag value.
  static std::optional<std::filesystem::path> resolve_dir(const std::optional<std::string>& flag) {
    if (const char* env = std::getenv("NCSPHERE_CACHE"); env && *env) return std::filesystem::path(env);
    if (flag && !flag->empty()) return std::filesystem::path(*flag);
    return std::nullopt;
  }

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& version() const { return version_; }
  size_t hits() const { return hits_; }
  size_t misses() const { return misses_; }

  std::filesystem::path path_for(const CacheKey& key) const {
    std::ostringstream name;
    name << std::hex << stable_hash(version_ + "#" + key.str()) << ".json";
    return dir_ / name.str();
  }

  std::optional<json> get(const CacheKey& key) {
    const auto p = path_for(key);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
      json j = json::parse(in);
      if (j.at("version").get<std::string>() != version_ || j.at("key").get<std::string>() != key.str())
        return std::nullopt;
      return j.at("payload");
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void put(const CacheKey& key, const json& payload) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError(dir_.string() + ": " + ec.message());
    const auto p = path_for(key);
    auto tmp = p;
    tmp += ".tmp" + std::to_string(stable_hash(key.str() + std::to_string(uintptr_t(this))));
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw IoError(tmp.string() + ": cannot open for writing");
      json j = {{"version", version_}, {"key", key.str()}, {"payload", payload}};
      out << j.dump() << "\n";
      if (!out) throw IoError(tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, p, ec);
    if (ec) throw IoError(p.string() + ": " + ec.message());
  }

  template <class T>
  T get_or_compute(const CacheKey& key, const std::function<T()>& compute, const std::function<json(const T&)>& save,
                   const std::function<T(const json&)>& load) {
    if (auto j = get(key)) {
      try {
        T v = load(*j);
        ++hits_;
        return v;
      } catch (const std::exception&) {
        // corrupt payload: fall through and recompute
      }
    }
    ++misses_;
    T v = compute();
    put(key, save(v));
    return v;
  }

 private:
  std::filesystem::path dir_;
  std::string version_;
  size_t hits_ = 0, misses_ = 0;
};

}  // namespace ncsphere
