#include "subpack/packing_code.hpp"

#include <stdexcept>

namespace subpack {

PackingCode::PackingCode(Field field, std::size_t ambient, std::size_t dim, std::vector<Subspace> blocks)
    : PackingCode(std::move(field), ambient, dim) {
  blocks_.reserve(blocks.size());
  for (auto& b : blocks) add(std::move(b));
}

void PackingCode::add(Subspace block) {
  if (block.ambient() != ambient_ || block.dim() != dim_)
    throw std::invalid_argument("block has dimension " + std::to_string(block.dim()) + " in F_q^" +
                                std::to_string(block.ambient()) + ", expected " + std::to_string(dim_) +
                                " in F_q^" + std::to_string(ambient_));
  if (!keys_.insert(block.key()).second)
    throw std::invalid_argument("duplicate block:\n" + format_subspace(block));
  blocks_.push_back(std::move(block));
}

bool PackingCode::contains(const Subspace& block) const {
  return keys_.count(block.key()) > 0;
}

PackingCode dual_code(const PackingCode& code) {
  PackingCode out(code.field(), code.ambient(), code.ambient() - code.dim());
  for (const auto& b : code.blocks()) out.add(orthogonal_complement(code.field(), b));
  return out;
}

}  // namespace subpack
