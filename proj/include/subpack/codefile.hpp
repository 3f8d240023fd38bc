#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "subpack/packing_code.hpp"

namespace subpack {

/// Code file layout:
///   q n k count
///   <block 1: k lines of n digits>
///   <blank line>
///   <block 2> ...
/// Lines starting with '#' are comments. Each block is read as a generator
/// matrix and canonicalised; rank-deficient and duplicate blocks are rejected.
PackingCode read_code(std::istream& in);
PackingCode read_code_file(const std::filesystem::path& path);

void write_code(std::ostream& out, const PackingCode& code);
void write_code_file(const std::filesystem::path& path, const PackingCode& code);

}  // namespace subpack
