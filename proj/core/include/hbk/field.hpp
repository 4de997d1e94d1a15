#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hbk/errors.hpp"

namespace hbk {

class Field;

/// Element of F_p[t]/(f(t)), stored as the canonical reduced coefficient
/// vector (degree < deg f, coefficients in [0, p)). Elements carry a handle
/// to their field; mixing elements of different fields is an error.
class FieldElement {
 public:
  const std::vector<uint32_t>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement inv() const;

  /// a^n for any integer n; negative exponents invert first (a must be
  /// nonzero in that case).
  FieldElement pow(int64_t n) const;

  bool operator==(const FieldElement& rhs) const;
  bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

  /// Total order on elements of one field (coefficient-wise, low degree
  /// first). Used for deterministic pivoting and canonical sorting.
  bool operator<(const FieldElement& rhs) const;

  /// Ascending-coefficient text, e.g. "1,1" for 1+t.
  std::string to_string() const;

  Field field() const;

 private:
  friend class Field;
  struct Rep;
  FieldElement(std::shared_ptr<const Rep> rep, std::vector<uint32_t> coeffs)
      : rep_(std::move(rep)), coeffs_(std::move(coeffs)) {}

  std::shared_ptr<const Rep> rep_;
  std::vector<uint32_t> coeffs_;
};

/// The coefficient domain X = F_p[t]/(f(t)) with t a unit. Construction
/// checks that p is prime, f is irreducible over Z_p and f(0) != 0.
/// Immutable and cheap to copy; all operations are thread-safe.
class Field {
 public:
  /// f is given by ascending coefficients; it is normalized to monic form
  /// (scaling by the inverse of the leading coefficient does not change the
  /// quotient ring).
  /// Throws: NotPrime, Reducible, TNotInvertible, InvalidArgument.
  static Field make(uint32_t p, const std::vector<int64_t>& f);

  uint32_t p() const;
  uint32_t degree() const;
  uint64_t order() const;  // p^degree
  const std::vector<uint32_t>& modulus() const;  // monic, ascending

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement t() const;

  /// Element from ascending coefficients (any integers; reduced mod p, then
  /// mod f if the degree is too large).
  FieldElement element(const std::vector<int64_t>& coeffs) const;

  /// Element with index in [0, p^d): base-p digits are the coefficients.
  FieldElement element_by_index(uint64_t index) const;
  uint64_t index_of(const FieldElement& a) const;

  /// Least n >= 1 with a^n = 1; divides p^d - 1. Throws ZeroElement for 0.
  uint64_t mult_order(const FieldElement& a) const;

  bool same_field(const Field& other) const { return rep_ == other.rep_; }

  bool operator==(const Field& other) const { return same_field(other); }

 private:
  friend class FieldElement;
  explicit Field(std::shared_ptr<const FieldElement::Rep> rep)
      : rep_(std::move(rep)) {}

  std::shared_ptr<const FieldElement::Rep> rep_;
};

namespace poly {

/// Reduce an integer coefficient vector mod p and strip trailing zeros.
std::vector<uint32_t> normalize_mod_p(const std::vector<int64_t>& f, uint32_t p);

/// Polynomial product mod p (no modulus reduction).
std::vector<uint32_t> mul_mod_p(const std::vector<uint32_t>& a,
                                const std::vector<uint32_t>& b, uint32_t p);

/// Remainder of a by monic b, mod p.
std::vector<uint32_t> rem_mod_p(std::vector<uint32_t> a,
                                const std::vector<uint32_t>& b, uint32_t p);

bool is_irreducible_mod_p(const std::vector<uint32_t>& f, uint32_t p);

}  // namespace poly

bool is_prime(uint64_t n);

/// Prime factorization by trial division (desk scale).
std::vector<uint64_t> prime_factors(uint64_t n);

}  // namespace hbk
