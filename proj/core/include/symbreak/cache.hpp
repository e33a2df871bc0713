#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>

#include "symbreak/record.hpp"

namespace symbreak {

/// Append-only newline-delimited JSON record store keyed by the exact graph6
/// string (no canonicalization: a relabeled isomorphic graph misses).
/// Corrupt lines are counted and skipped, never fatal.
class RecordCache {
public:
  RecordCache() = default;
  explicit RecordCache(std::string path);

  bool enabled() const { return !path_.empty(); }
  std::size_t size() const { return records_.size(); }
  std::size_t corrupt_lines() const { return corrupt_; }

  std::optional<VerificationRecord> lookup(const std::string& graph6) const;

  /// Appends to the backing file and the in-memory map.
  void store(const VerificationRecord& record);

  /// Resolves the cache file inside `dir` (flag value or SYMBREAK_CACHE).
  static std::string file_in_dir(const std::string& dir);

private:
  std::string path_;
  std::unordered_map<std::string, VerificationRecord> records_;
  std::size_t corrupt_ = 0;
};

}  // namespace symbreak
