#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace subpack {

/// Field elements are stored as integers in [0, q). For q = p^e with e > 1 the
/// integer's base-p digits are the coefficients of the polynomial residue
/// (digit i is the coefficient of x^i).
using Element = std::uint8_t;

/// Finite field F_q for prime powers q <= 256, backed by full operation tables.
///
/// Extension fields are built from a fixed irreducible polynomial per (p, e)
/// (the Conway polynomial), so element encodings are reproducible across runs.
class Field {
 public:
  /// Throws std::invalid_argument when q is not a supported prime power.
  explicit Field(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return e_; }

  /// Monic modulus, coefficients from x^0 up to x^e. Empty for prime fields.
  const std::vector<unsigned>& modulus() const noexcept { return tables_->modulus; }
  /// Human readable modulus, e.g. "x^2+x+1"; "prime" for prime fields.
  std::string modulus_string() const;

  Element add(Element a, Element b) const noexcept { return tables_->add[index(a, b)]; }
  Element sub(Element a, Element b) const noexcept { return tables_->add[index(a, tables_->neg[b])]; }
  Element mul(Element a, Element b) const noexcept { return tables_->mul[index(a, b)]; }
  Element neg(Element a) const noexcept { return tables_->neg[a]; }
  /// Inverse of a nonzero element; inv(0) is 0.
  Element inv(Element a) const noexcept { return tables_->inv[a]; }

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.q_ == b.q_; }

 private:
  struct Tables {
    std::vector<Element> add;
    std::vector<Element> mul;
    std::vector<Element> neg;
    std::vector<Element> inv;
    std::vector<unsigned> modulus;
  };

  std::size_t index(Element a, Element b) const noexcept {
    return static_cast<std::size_t>(a) * q_ + b;
  }

  unsigned q_ = 0;
  unsigned p_ = 0;
  unsigned e_ = 0;
  std::shared_ptr<const Tables> tables_;
};

/// True when q is a prime power this library can represent.
bool is_supported_field_order(unsigned q);

}  // namespace subpack
