#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edsring/construction.hpp"

namespace edsring {

// One line of <dir>/<fingerprint>.jsonl.
struct CacheRecord {
  std::string fingerprint;
  std::int64_t n = 0;
  RationalPoint point;  // nP
  Integer d;
  std::vector<PrimePower> support;
  bool complete = false;
  Integer cofactor = 1;
};

nlohmann::ordered_json to_json(const CacheRecord& r);
CacheRecord cache_record_from_json(const nlohmann::json& j);
CacheRecord make_record(const Curve& curve, std::int64_t n, const DenomProfile& prof);

// Append-only store of multiples of P for one curve. Appends take an
// exclusive flock and go out as a single write, so concurrent processes
// never interleave lines. Corrupt lines and lines whose fingerprint or
// coordinates do not check out are skipped with a warning on stderr.
class Cache {
 public:
  Cache(std::string dir, const Curve& curve);

  // EDSRING_CACHE_DIR, or nullopt when unset or empty.
  static std::optional<std::string> dir_from_env();

  std::optional<CacheRecord> find(std::int64_t n) const;
  void append(const CacheRecord& r);
  std::size_t size() const { return records_.size(); }
  std::size_t skipped() const { return skipped_; }

  // The last constructed sequence, written to a temporary file and renamed
  // into place. Loading returns it only for the same count and prime bound.
  void store_sequence(const LSequence& s, std::uint64_t prime_bound) const;
  std::optional<LSequence> load_sequence(int count, std::uint64_t prime_bound) const;

  std::string records_path() const;
  std::string sequence_path() const;

 private:
  void load();

  std::string dir_;
  const Curve& curve_;
  std::string fingerprint_;
  std::map<std::int64_t, CacheRecord> records_;
  std::size_t skipped_ = 0;
};

}  // namespace edsring
