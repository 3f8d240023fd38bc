#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "subpack/field.hpp"
#include "subpack/subspace.hpp"

namespace subpack {

/// A set of distinct k-subspaces (blocks) of F_q^n.
class PackingCode {
 public:
  PackingCode(Field field, std::size_t ambient, std::size_t dim)
      : field_(std::move(field)), ambient_(ambient), dim_(dim) {}

  /// Validates dimensions and distinctness; throws std::invalid_argument.
  PackingCode(Field field, std::size_t ambient, std::size_t dim, std::vector<Subspace> blocks);

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }
  const std::vector<Subspace>& blocks() const noexcept { return blocks_; }

  /// Appends a block; throws if it has the wrong shape or is already present.
  void add(Subspace block);
  bool contains(const Subspace& block) const;

 private:
  Field field_;
  std::size_t ambient_;
  std::size_t dim_;
  std::vector<Subspace> blocks_;
  std::unordered_set<std::string> keys_;
};

/// The code formed by the orthogonal complements of every block.
PackingCode dual_code(const PackingCode& code);

}  // namespace subpack
