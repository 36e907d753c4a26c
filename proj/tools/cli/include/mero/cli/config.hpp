#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mero/disk.hpp"
#include "mero/map.hpp"

namespace mero::cli {

using Json = nlohmann::json;

/// A malformed or unreadable configuration (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads typed values from one JSON object, filling in defaults. Every key
/// read (given or defaulted) lands in resolved(); finish() rejects keys that
/// were never read.
class Params {
 public:
  Params(const Json& object, std::string path);

  int integer(const std::string& key, std::optional<int> fallback = std::nullopt);
  double real(const std::string& key, std::optional<double> fallback = std::nullopt);
  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt);
  Complex complex(const std::string& key, std::optional<Complex> fallback = std::nullopt);
  std::vector<double> reals(const std::string& key, std::optional<std::vector<double>> fallback = std::nullopt);
  Rect rect(const std::string& key, std::optional<Rect> fallback = std::nullopt);
  MeromorphicMap map(const std::string& key);
  std::vector<DiskRegion> disks(const std::string& key);
  bool has(const std::string& key) const;

  /// Marks `key` as read and returns its raw value (nullptr when absent);
  /// the caller records the resolved form with set_resolved.
  const Json* raw(const std::string& key) { return lookup(key); }
  void set_resolved(const std::string& key, Json value) { resolved_[key] = std::move(value); }
  std::string name(const std::string& key) const;

  /// Throws UsageError naming the first key that was never read.
  void finish() const;
  const Json& resolved() const { return resolved_; }

 private:
  const Json* lookup(const std::string& key);

  const Json& object_;
  std::string path_;
  Json resolved_ = Json::object();
  std::set<std::string> seen_;
};

/// Complex number from a JSON number or a [re, im] pair.
Complex parse_complex(const Json& value, const std::string& name);

/// Map from {"expr", "poles", "label"} or {"compose": [outer, inner], "label"}.
/// Poles are [re, im] or [re, im, order]. Writes the normalized form to
/// `resolved`.
MeromorphicMap parse_map_json(const Json& value, const std::string& name, Json& resolved);

std::uint64_t fnv1a64(std::string_view bytes);

/// FNV-1a 64-bit hash of the compact serialization of `resolved`.
std::uint64_t config_hash(const Json& resolved);
std::string hex_hash(std::uint64_t hash);

}  // namespace mero::cli
