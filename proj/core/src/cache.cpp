#include "symbreak/cache.hpp"

#include <fstream>
#include <iostream>

namespace symbreak {

RecordCache::RecordCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (auto record = record_from_json(line)) {
      records_[record->graph6] = std::move(*record);
    } else {
      ++corrupt_;
    }
  }
  if (corrupt_ > 0)
    std::cerr << "warning: skipped " << corrupt_ << " corrupt cache line(s) in " << path_ << "\n";
}

std::optional<VerificationRecord> RecordCache::lookup(const std::string& graph6) const {
  const auto it = records_.find(graph6);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void RecordCache::store(const VerificationRecord& record) {
  records_[record.graph6] = record;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << record_to_json(record) << '\n';
}

std::string RecordCache::file_in_dir(const std::string& dir) {
  if (dir.empty()) return {};
  return dir + "/records.ndjson";
}

}  // namespace symbreak
