#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hbk/biquandle.hpp"
#include "hbk/coloring.hpp"
#include "hbk/diagram.hpp"
#include "hbk/flow.hpp"

namespace hbk {

/// Per gcd-class multiset of coloring dimensions over all flows.
struct DimProfile {
  uint64_t m = 1;
  // gcd value g (a divisor of m) -> (dim -> multiplicity)
  std::map<uint64_t, std::map<size_t, uint64_t>> classes;
  uint64_t flows_examined = 0;

  uint64_t total_multiplicity() const;
  /// Smallest |d - dim| over the class; throws EmptyGcdClass when g is absent.
  size_t min_abs_diff(uint64_t g, size_t d) const;
  size_t max_dim() const;
  std::string to_string() const;
};

/// Evaluates dim Col_X(D, phi) for every flow, grouped by gcd(phi).
/// jobs > 1 evaluates flows concurrently; the aggregate is independent of
/// jobs. Throws TooManyFlows past the cap.
DimProfile flow_dim_profile(const Diagram& d, const AlexanderBiquandle& ab, uint64_t m,
                            uint64_t cap = 1000000, unsigned jobs = 1);

/// max_phi dim Col_X(D, phi) - 1  <=  u(H).
size_t unknotting_lower_bound(const Diagram& d, const AlexanderBiquandle& ab, uint64_t m,
                              uint64_t cap = 1000000, unsigned jobs = 1);

/// max_{phi1} min_{phi2, gcd phi1 = gcd phi2} |dim1 - dim2|  <=  d(H1, H2).
/// The formula is directional; both directions are valid lower bounds for
/// the (symmetric) Gordian distance. Throws EmptyGcdClass when some gcd class
/// of D1 has no counterpart in D2.
size_t gordian_lower_bound(const Diagram& d1, const Diagram& d2, const AlexanderBiquandle& ab,
                           uint64_t m, uint64_t cap = 1000000, unsigned jobs = 1);

size_t gordian_lower_bound(const DimProfile& p1, const DimProfile& p2);

}  // namespace hbk
