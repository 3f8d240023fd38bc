#include "subpack/ilp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace subpack {

IlpModel build_model(const PackingParams& p, bool strengthen, BoundEngine& engine, const IlpLimits& limits) {
  p.validate();
  const BigInt vars = gaussian_binomial(p.n, p.k, p.q);
  BigInt rows = gaussian_binomial(p.n, p.t, p.q);
  if (strengthen)
    for (unsigned i = 1; i < p.t; ++i) rows += gaussian_binomial(p.n, i, p.q);
  if (vars > limits.max_vars || rows > limits.max_rows)
    throw std::length_error("model for " + describe(p) + " has " + vars.str() + " variables and " + rows.str() +
                            " rows (limits " + std::to_string(limits.max_vars) + " / " +
                            std::to_string(limits.max_rows) + ")");

  const Field f(p.q);
  IlpModel model;
  model.params = p;
  model.blocks = enumerate_subspaces(f, p.n, p.k);

  // rows in canonical enumeration order of the subspaces they belong to
  auto add_rows = [&](unsigned dim, const BigInt& rhs, const std::string& prefix) {
    const std::size_t first = model.rows.size();
    std::unordered_map<std::string, std::size_t> index;
    for_each_subspace(f, p.n, dim, [&](const Subspace& s) {
      index.emplace(s.key(), model.rows.size());
      model.rows.push_back({prefix + std::to_string(model.rows.size() - first), {}, rhs});
    });
    const auto coeffs = enumerate_subspaces(f, p.k, dim);
    for (std::size_t b = 0; b < model.blocks.size(); ++b)
      for (const auto& s : subspaces_of(f, model.blocks[b], coeffs))
        model.rows[index.at(s.key())].vars.push_back(static_cast<std::uint32_t>(b));
  };
  add_rows(p.t, BigInt(p.lambda), "c");
  model.coverage_rows = model.rows.size();
  if (strengthen)
    for (unsigned i = 1; i < p.t; ++i)
      add_rows(i, engine.upper({p.q, p.n - i, p.k - i, p.t - i, p.lambda}), "s" + std::to_string(i) + "_");
  return model;
}

IlpFormat parse_ilp_format(std::string_view token) {
  if (token == "lp") return IlpFormat::lp;
  if (token == "mps") return IlpFormat::mps;
  throw std::invalid_argument("unsupported ILP format '" + std::string(token) + "' (expected lp or mps)");
}

namespace {

std::string var_name(std::size_t i) { return "x" + std::to_string(i); }

// Writes "a + b + c" wrapped so that no line grows past ~200 characters.
void write_sum(std::ostringstream& out, const std::vector<std::string>& terms, std::size_t indent) {
  std::size_t width = indent;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string piece = (i ? " + " : "") + terms[i];
    if (width + piece.size() > 200) {
      out << '\n' << std::string(indent, ' ');
      width = indent;
    }
    out << piece;
    width += piece.size();
  }
}

std::string emit_lp(const IlpModel& m) {
  std::ostringstream out;
  out << "\\ " << describe(m.params) << ": " << m.num_vars() << " variables, " << m.rows.size() << " rows\n";
  out << "Maximize\n obj: ";
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < m.num_vars(); ++i) terms.push_back(var_name(i));
  write_sum(out, terms, 1);
  out << "\nSubject To\n";
  for (const auto& row : m.rows) {
    out << ' ' << row.name << ": ";
    terms.clear();
    for (auto v : row.vars) terms.push_back(var_name(v));
    write_sum(out, terms, 1);
    out << " <= " << row.rhs << '\n';
  }
  out << "Binary\n";
  terms.clear();
  std::size_t width = 0;
  for (std::size_t i = 0; i < m.num_vars(); ++i) {
    const auto name = var_name(i);
    if (width + name.size() > 200) {
      out << '\n';
      width = 0;
    }
    out << ' ' << name;
    width += name.size() + 1;
  }
  out << "\nEnd\n";
  return out.str();
}

std::string field(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + ' ' : s + std::string(width - s.size(), ' ');
}

std::string emit_mps(const IlpModel& m) {
  for (const auto& row : m.rows)
    if (row.name.size() > 8) throw std::length_error("row name too long for fixed MPS: " + row.name);
  if (var_name(m.num_vars()).size() > 8) throw std::length_error("too many variables for fixed MPS names");

  std::vector<std::vector<std::size_t>> column_rows(m.num_vars());
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (auto v : m.rows[r].vars) column_rows[v].push_back(r);

  // fields start in columns 2, 5, 15, 25, 40, 50
  std::ostringstream out;
  out << "NAME          SUBPACK\n";
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  obj\n";
  for (const auto& row : m.rows) out << " L  " << row.name << '\n';
  out << "COLUMNS\n";
  out << "    MARKER                 'MARKER'                 'INTORG'\n";
  for (std::size_t v = 0; v < m.num_vars(); ++v) {
    const std::string name = var_name(v);
    out << "    " << field(name, 10) << field("obj", 10) << "1\n";
    for (auto r : column_rows[v]) out << "    " << field(name, 10) << field(m.rows[r].name, 10) << "1\n";
  }
  out << "    MARKER                 'MARKER'                 'INTEND'\n";
  out << "RHS\n";
  for (const auto& row : m.rows) out << "    " << field("RHS", 10) << field(row.name, 10) << row.rhs << '\n';
  out << "BOUNDS\n";
  for (std::size_t v = 0; v < m.num_vars(); ++v) out << " BV " << field("BND", 10) << var_name(v) << '\n';
  out << "ENDATA\n";
  return out.str();
}

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::uint32_t parse_var(const std::string& tok, std::size_t& num_vars) {
  if (tok.size() < 2 || tok[0] != 'x') throw std::invalid_argument("unexpected variable name '" + tok + "'");
  const auto v = static_cast<std::uint32_t>(std::stoul(tok.substr(1)));
  num_vars = std::max<std::size_t>(num_vars, v + 1);
  return v;
}

void finish(NormalizedModel& m) {
  for (auto& r : m.rows) std::sort(r.first.begin(), r.first.end());
  std::sort(m.rows.begin(), m.rows.end());
  m.objective.resize(m.num_vars, 0);
}

}  // namespace

std::string emit(const IlpModel& model, IlpFormat format) {
  return format == IlpFormat::lp ? emit_lp(model) : emit_mps(model);
}

std::string emit_index(const IlpModel& model) {
  std::string out;
  for (std::size_t i = 0; i < model.num_vars(); ++i)
    out += var_name(i) + ' ' + format_subspace_inline(model.blocks[i]) + '\n';
  return out;
}

NormalizedModel normalize(const IlpModel& model) {
  NormalizedModel m;
  m.maximize = true;
  m.num_vars = model.num_vars();
  m.objective.assign(m.num_vars, 1);
  for (const auto& row : model.rows) m.rows.emplace_back(row.vars, row.rhs);
  m.all_binary = true;
  finish(m);
  return m;
}

NormalizedModel parse_lp(std::string_view text) {
  NormalizedModel m;
  enum class Section { none, objective, constraints, binary, done } section = Section::none;
  std::vector<std::string> pending;  // tokens of the current statement
  std::vector<bool> binary;

  auto flush_constraint = [&] {
    if (pending.empty()) return;
    std::size_t i = 0;
    if (pending[0].back() == ':') i = 1;
    std::vector<std::uint32_t> vars;
    bool expect_term = true;
    for (; i < pending.size(); ++i) {
      const auto& tok = pending[i];
      if (tok == "<=") {
        if (i + 2 != pending.size()) throw std::invalid_argument("malformed constraint in LP text");
        m.rows.emplace_back(std::move(vars), BigInt(pending[i + 1]));
        pending.clear();
        return;
      }
      if (tok == "+") {
        expect_term = true;
        continue;
      }
      if (!expect_term) throw std::invalid_argument("missing '+' in LP constraint");
      vars.push_back(parse_var(tok, m.num_vars));
      expect_term = false;
    }
    throw std::invalid_argument("constraint without '<=' in LP text");
  };

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto cut = line.find('\\'); cut != std::string::npos) line.resize(cut);
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    std::string head = toks[0];
    std::transform(head.begin(), head.end(), head.begin(), ::tolower);
    if (toks.size() == 1 && (head == "maximize" || head == "max" || head == "minimize" || head == "min")) {
      m.maximize = head.rfind("max", 0) == 0;
      section = Section::objective;
      continue;
    }
    if (head == "subject" || head == "st" || head == "s.t.") {
      section = Section::constraints;
      continue;
    }
    if (head == "binary" || head == "binaries" || head == "bin") {
      section = Section::binary;
      continue;
    }
    if (head == "end") {
      section = Section::done;
      continue;
    }
    switch (section) {
      case Section::objective:
        for (const auto& tok : toks) {
          if (tok == "+" || tok.back() == ':') continue;
          const auto v = parse_var(tok, m.num_vars);
          if (m.objective.size() <= v) m.objective.resize(v + 1, 0);
          m.objective[v] += 1;
        }
        break;
      case Section::constraints:
        // a statement starting with "name:" begins a new constraint
        if (toks[0].back() == ':') flush_constraint();
        pending.insert(pending.end(), toks.begin(), toks.end());
        if (pending.size() >= 2 && pending[pending.size() - 2] == "<=") flush_constraint();
        break;
      case Section::binary:
        for (const auto& tok : toks) {
          const auto v = parse_var(tok, m.num_vars);
          if (binary.size() <= v) binary.resize(v + 1, false);
          binary[v] = true;
        }
        break;
      default:
        throw std::invalid_argument("unexpected LP text outside a section: " + line);
    }
  }
  flush_constraint();
  binary.resize(m.num_vars, false);
  m.all_binary = std::all_of(binary.begin(), binary.end(), [](bool b) { return b; });
  finish(m);
  return m;
}

NormalizedModel parse_mps(std::string_view text) {
  NormalizedModel m;
  std::string section;
  std::map<std::string, std::size_t> row_index;
  std::string objective_row;
  std::vector<std::vector<std::uint32_t>> row_vars;
  std::vector<BigInt> rhs;
  std::vector<bool> binary;
  bool integer_block = false;
  std::vector<bool> integer;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (line[0] != ' ') {
      section = toks[0];
      if (section == "ENDATA") break;
      continue;
    }
    if (section == "OBJSENSE") {
      m.maximize = toks[0] == "MAX" || toks[0] == "MAXIMIZE";
    } else if (section == "ROWS") {
      if (toks.size() != 2) throw std::invalid_argument("malformed ROWS line: " + line);
      if (toks[0] == "N") {
        objective_row = toks[1];
      } else if (toks[0] == "L") {
        row_index[toks[1]] = row_vars.size();
        row_vars.emplace_back();
        rhs.emplace_back(0);
      } else {
        throw std::invalid_argument("unsupported row type " + toks[0]);
      }
    } else if (section == "COLUMNS") {
      if (toks.size() >= 3 && toks[1] == "'MARKER'") {
        integer_block = toks[2] == "'INTORG'";
        continue;
      }
      if (toks.size() != 3 && toks.size() != 5) throw std::invalid_argument("malformed COLUMNS line: " + line);
      const auto v = parse_var(toks[0], m.num_vars);
      if (integer.size() <= v) integer.resize(v + 1, false);
      integer[v] = integer[v] || integer_block;
      for (std::size_t i = 1; i + 1 < toks.size(); i += 2) {
        if (BigInt(toks[i + 1]) != 1) throw std::invalid_argument("unexpected coefficient " + toks[i + 1]);
        if (toks[i] == objective_row) {
          if (m.objective.size() <= v) m.objective.resize(v + 1, 0);
          m.objective[v] += 1;
        } else {
          row_vars.at(row_index.at(toks[i])).push_back(v);
        }
      }
    } else if (section == "RHS") {
      for (std::size_t i = 1; i + 1 < toks.size(); i += 2) rhs.at(row_index.at(toks[i])) = BigInt(toks[i + 1]);
    } else if (section == "BOUNDS") {
      if (toks.size() < 3) throw std::invalid_argument("malformed BOUNDS line: " + line);
      const auto v = parse_var(toks[2], m.num_vars);
      if (binary.size() <= v) binary.resize(v + 1, false);
      if (toks[0] == "BV") binary[v] = true;
    } else if (section != "NAME") {
      throw std::invalid_argument("unsupported MPS section " + section);
    }
  }
  for (std::size_t r = 0; r < row_vars.size(); ++r) m.rows.emplace_back(std::move(row_vars[r]), rhs[r]);
  binary.resize(m.num_vars, false);
  m.all_binary = std::all_of(binary.begin(), binary.end(), [](bool b) { return b; });
  finish(m);
  return m;
}

std::vector<std::uint8_t> assignment_for(const IlpModel& model, const PackingCode& code) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < model.blocks.size(); ++i) index.emplace(model.blocks[i].key(), i);
  std::vector<std::uint8_t> x(model.num_vars(), 0);
  for (const auto& b : code.blocks()) {
    auto it = index.find(b.key());
    if (it == index.end()) throw std::invalid_argument("block is not a model variable:\n" + format_subspace(b));
    x[it->second] = 1;
  }
  return x;
}

std::vector<std::string> violated_rows(const IlpModel& model, const std::vector<std::uint8_t>& x) {
  if (x.size() != model.num_vars()) throw std::invalid_argument("assignment length mismatch");
  std::vector<std::string> bad;
  for (const auto& row : model.rows) {
    BigInt lhs = 0;
    for (auto v : row.vars) lhs += x[v];
    if (lhs > row.rhs) bad.push_back(row.name);
  }
  return bad;
}

}  // namespace subpack
