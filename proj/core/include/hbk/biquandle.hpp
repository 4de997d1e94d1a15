#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hbk/field.hpp"

namespace hbk {

/// Alexander biquandle on a field X: a ⊻ b = t·a + (s−t)·b, a ⊼ b = s·a,
/// with the n-fold families  a ⊻^[n] b = tⁿa + (sⁿ−tⁿ)b,  a ⊼^[n] b = sⁿa.
/// The type is lcm(ord(s), ord(t)), the least n > 0 with both n-fold
/// operations trivial; powers of s and t are tabulated so exponents are
/// taken mod type.
class AlexanderBiquandle {
 public:
  /// Throws SNotUnit if s = 0.
  static AlexanderBiquandle make(const Field& field, const FieldElement& s);

  const Field& field() const { return field_; }
  const FieldElement& s() const { return s_; }
  uint64_t type() const { return type_; }

  /// s^n / t^n for any integer n (well-defined: both have order dividing type).
  FieldElement s_pow(int64_t n) const;
  FieldElement t_pow(int64_t n) const;

  FieldElement underop(const FieldElement& a, const FieldElement& b) const;
  FieldElement overop(const FieldElement& a, const FieldElement& b) const;
  FieldElement underop_n(const FieldElement& a, const FieldElement& b, int64_t n) const;
  FieldElement overop_n(const FieldElement& a, const FieldElement& b, int64_t n) const;

  /// The structure is a Z_m-family of biquandles exactly when type | m.
  bool is_zm_family(uint64_t m) const { return m % type_ == 0; }
  void require_zm_family(uint64_t m) const;

 private:
  AlexanderBiquandle(Field field, FieldElement s, uint64_t type,
                     std::vector<FieldElement> s_pows, std::vector<FieldElement> t_pows);

  Field field_;
  FieldElement s_;
  uint64_t type_;
  std::vector<FieldElement> s_pows_;  // index n in [0, type)
  std::vector<FieldElement> t_pows_;
};

/// Finite biquandle given by operation tables; indices in [0, size).
/// under_table[x][y] = x ⊻ y, over_table[x][y] = x ⊼ y.
struct FiniteBiquandleTable {
  size_t size = 0;
  std::vector<std::vector<size_t>> under_table;
  std::vector<std::vector<size_t>> over_table;
};

/// Build the full operation table of an Alexander biquandle (for exhaustive
/// axiom checks on small fields).
FiniteBiquandleTable alexander_table(const AlexanderBiquandle& ab);

struct AxiomCheck {
  AxiomCheck() = default;
  AxiomCheck(std::string axiom_, bool passed_ = true, std::string witness_ = "")
      : axiom(std::move(axiom_)), passed(passed_), witness(std::move(witness_)) {}

  std::string axiom;
  bool passed = true;
  std::string witness;  // empty when passed
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
  std::string to_string() const;
};

/// Exhaustively verifies the biquandle axioms on a finite table.
AxiomReport check_biquandle_axioms(const FiniteBiquandleTable& table);

/// Verifies the Z_m-family axioms for the n-fold operations of ab.
/// Exhaustive when (#X)^3 * m^2 <= exhaustive_budget, otherwise randomized
/// with `samples` seeded trials per axiom.
/// Throws NotZmFamily when type(ab) does not divide m.
AxiomReport check_gfamily_axioms(const AlexanderBiquandle& ab, uint64_t m,
                                 uint64_t seed = 0, size_t samples = 10000,
                                 uint64_t exhaustive_budget = 2000000);

}  // namespace hbk
