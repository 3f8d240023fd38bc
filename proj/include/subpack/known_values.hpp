#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "subpack/params.hpp"
#include "subpack/qcalc.hpp"

namespace subpack {

struct KnownValue {
  PackingParams params;
  BigInt lower;
  BigInt upper;
  std::string source;
};

/// Registry of exact values and published bounds, one record per line:
///   q n k t lambda lower upper source-tag
/// Blank lines and lines starting with '#' are ignored.
class KnownValues {
 public:
  KnownValues() = default;

  /// The data file compiled into the library.
  static const KnownValues& bundled();
  static std::string bundled_text();
  static KnownValues parse(std::istream& in);
  static KnownValues load(const std::filesystem::path& path);

  void add(KnownValue v);
  const KnownValue* find(const PackingParams& p) const;
  const std::vector<KnownValue>& entries() const noexcept { return entries_; }
  /// Entries whose source tag equals `tag`.
  std::vector<KnownValue> with_source(const std::string& tag) const;
  std::string serialize() const;

 private:
  std::vector<KnownValue> entries_;
};

}  // namespace subpack
