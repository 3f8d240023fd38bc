#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "subpack/bounds.hpp"
#include "subpack/packing_code.hpp"
#include "subpack/params.hpp"

namespace subpack {

struct IlpRow {
  std::string name;
  std::vector<std::uint32_t> vars;  // ascending variable indices, coefficient 1 each
  BigInt rhs;
};

/// maximize sum x_U subject to one row per t-subspace (coverage <= lambda)
/// and, optionally, one row per i-subspace for 1 <= i < t whose right-hand
/// side is the best upper bound on A_q(n-i,k-i,t-i;lambda).
struct IlpModel {
  PackingParams params;
  std::vector<Subspace> blocks;  // variable x_i is blocks[i]
  std::vector<IlpRow> rows;
  std::size_t coverage_rows = 0;

  std::size_t num_vars() const noexcept { return blocks.size(); }
};

struct IlpLimits {
  std::uint64_t max_vars = 500'000;
  std::uint64_t max_rows = 2'000'000;
};

/// Throws std::length_error (with the counts) when a limit is exceeded.
IlpModel build_model(const PackingParams& p, bool strengthen, BoundEngine& engine, const IlpLimits& limits = {});

enum class IlpFormat { lp, mps };

/// "lp" or "mps"; throws std::invalid_argument otherwise.
IlpFormat parse_ilp_format(std::string_view token);

std::string emit(const IlpModel& model, IlpFormat format);
/// One line per variable: "x<i> <block rows separated by spaces>".
std::string emit_index(const IlpModel& model);

/// Solver-neutral view of a pure 0/1 packing model, used to compare models.
struct NormalizedModel {
  bool maximize = true;
  std::size_t num_vars = 0;
  /// Objective coefficient per variable.
  std::vector<BigInt> objective;
  /// (sorted variable indices, rhs) of every <= row, sorted.
  std::vector<std::pair<std::vector<std::uint32_t>, BigInt>> rows;
  bool all_binary = false;

  friend bool operator==(const NormalizedModel&, const NormalizedModel&) = default;
};

NormalizedModel normalize(const IlpModel& model);
/// Parsers for the subset of each format that emit() produces.
NormalizedModel parse_lp(std::string_view text);
NormalizedModel parse_mps(std::string_view text);

/// 0/1 vector selecting the blocks of `code`; throws if a block is not a variable.
std::vector<std::uint8_t> assignment_for(const IlpModel& model, const PackingCode& code);
/// Names of the rows the assignment violates.
std::vector<std::string> violated_rows(const IlpModel& model, const std::vector<std::uint8_t>& x);

}  // namespace subpack
