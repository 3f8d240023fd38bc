#include "subpack/known_values.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subpack {

extern const char* const kBundledKnownValues;

const KnownValues& KnownValues::bundled() {
  static const KnownValues registry = [] {
    std::istringstream in(kBundledKnownValues);
    return parse(in);
  }();
  return registry;
}

std::string KnownValues::bundled_text() { return kBundledKnownValues; }

KnownValues KnownValues::parse(std::istream& in) {
  KnownValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    KnownValue v;
    std::string lower, upper;
    if (!(fields >> v.params.q >> v.params.n >> v.params.k >> v.params.t >> v.params.lambda >> lower >> upper >>
          v.source))
      throw std::runtime_error("known values line " + std::to_string(line_no) + ": expected 8 fields");
    try {
      v.lower = BigInt(lower);
      v.upper = BigInt(upper);
      v.params.validate();
    } catch (const std::exception& e) {
      throw std::runtime_error("known values line " + std::to_string(line_no) + ": " + e.what());
    }
    if (v.lower > v.upper)
      throw std::runtime_error("known values line " + std::to_string(line_no) + ": lower exceeds upper");
    out.add(std::move(v));
  }
  return out;
}

KnownValues KnownValues::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse(in);
}

void KnownValues::add(KnownValue v) {
  if (find(v.params)) throw std::invalid_argument("duplicate known value for " + describe(v.params));
  entries_.push_back(std::move(v));
}

const KnownValue* KnownValues::find(const PackingParams& p) const {
  for (const auto& e : entries_)
    if (e.params == p) return &e;
  return nullptr;
}

std::vector<KnownValue> KnownValues::with_source(const std::string& tag) const {
  std::vector<KnownValue> out;
  for (const auto& e : entries_)
    if (e.source == tag) out.push_back(e);
  return out;
}

std::string KnownValues::serialize() const {
  std::ostringstream out;
  for (const auto& e : entries_)
    out << e.params.q << ' ' << e.params.n << ' ' << e.params.k << ' ' << e.params.t << ' ' << e.params.lambda << ' '
        << e.lower << ' ' << e.upper << ' ' << e.source << '\n';
  return out.str();
}

}  // namespace subpack
