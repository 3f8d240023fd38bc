#include "subpack/codefile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subpack {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

PackingCode read_code(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("code file line " + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      out = trim(out);
      if (!out.empty() && out[0] == '#') continue;
      return true;
    }
    return false;
  };

  std::string header;
  do {
    if (!next_line(header)) throw std::invalid_argument("code file is empty");
  } while (header.empty());
  unsigned q = 0;
  std::size_t n = 0, k = 0, count = 0;
  {
    std::istringstream hs(header);
    std::string extra;
    if (!(hs >> q >> n >> k >> count) || (hs >> extra)) fail("header must be 'q n k count'");
  }
  if (!is_supported_field_order(q)) fail("unsupported field order " + std::to_string(q));
  if (q > 36) fail("field order too large for the digit encoding");
  if (k > n) fail("k exceeds n");
  const Field f(q);
  PackingCode code(f, n, k);

  Matrix m(k, n);
  std::size_t row = 0;
  auto finish_block = [&] {
    const auto s = Subspace::span_of(f, m);
    if (s.dim() != k) fail("block is not " + std::to_string(k) + "-dimensional");
    try {
      code.add(s);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    row = 0;
  };
  while (next_line(line)) {
    if (line.empty()) {
      if (row != 0) fail("block has " + std::to_string(row) + " rows, expected " + std::to_string(k));
      continue;
    }
    if (line.size() != n) fail("row '" + line + "' does not have " + std::to_string(n) + " digits");
    try {
      for (std::size_t c = 0; c < n; ++c) m(row, c) = digit_element(line[c], q);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    if (++row == k) finish_block();
  }
  if (row != 0) fail("truncated block at end of file");
  if (k == 0 && count > 0) fail("0-dimensional blocks cannot be listed");
  if (code.size() != count)
    throw std::invalid_argument("code file declares " + std::to_string(count) + " blocks but contains " +
                                std::to_string(code.size()));
  return code;
}

PackingCode read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_code(in);
}

void write_code(std::ostream& out, const PackingCode& code) {
  out << code.field().order() << ' ' << code.ambient() << ' ' << code.dim() << ' ' << code.size() << '\n';
  for (const auto& b : code.blocks()) out << '\n' << format_subspace(b);
}

void write_code_file(const std::filesystem::path& path, const PackingCode& code) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_code(out, code);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace subpack
