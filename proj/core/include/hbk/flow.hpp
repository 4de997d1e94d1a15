#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hbk/diagram.hpp"

namespace hbk {

/// Z_m-flow: an assignment of Z_m values to arcs, recorded per semi-arc
/// (constant on each arc). At each crossing the under-in and under-out arcs
/// carry the same value; at each vertex incoming values sum to outgoing
/// values mod m.
struct Flow {
  uint64_t m = 1;
  std::map<SemiArcId, int64_t> values;  // every semi-arc, value in [0, m)

  int64_t at(const SemiArcId& id) const { return values.at(id); }
  bool is_zero() const;
};

/// gcd { values, m }; the zero flow yields m.
uint64_t gcd_of_flow(const Flow& flow);

/// Re-checks the two local flow conditions directly on the diagram,
/// independently of the solver.
bool is_valid_flow(const Diagram& d, const Flow& flow);

/// Integer Smith normal form data for A (rows x cols): U A V = diag(d_1..d_r)
/// with U, V unimodular. Only V and the diagonal are kept.
struct SmithForm {
  size_t rows = 0, cols = 0, rank = 0;
  std::vector<int64_t> divisors;               // d_1 | d_2 | ... | d_r, positive
  std::vector<std::vector<int64_t>> v;         // cols x cols
};

SmithForm smith_normal_form(std::vector<std::vector<int64_t>> a, size_t cols);

/// Affine enumeration structure of Flow(D; Z_m), solved over Z once via the
/// Smith normal form of the incidence constraints and reduced mod m.
/// #flows = m^(a - r) * prod_i gcd(d_i, m).
class FlowSpace {
 public:
  /// Throws BadModulus if m < 1.
  static FlowSpace solve(const Diagram& d, uint64_t m);

  uint64_t m() const { return m_; }
  size_t arc_count() const { return arc_order_.size(); }
  const std::vector<SemiArcId>& arc_order() const { return arc_order_; }  // representatives
  const Arcs& arcs() const { return arcs_; }
  size_t rank() const { return smith_.rank; }
  const std::vector<int64_t>& elementary_divisors() const { return smith_.divisors; }

  unsigned __int128 count() const;
  std::string count_string() const;

  /// Flow with enumeration index in [0, count()): lexicographic in the basis
  /// coefficients, the zero flow first.
  Flow flow_at(unsigned __int128 index) const;

  /// Calls fn for every flow in enumeration order.
  /// Throws TooManyFlows when count() exceeds cap.
  void for_each_flow(const std::function<void(const Flow&)>& fn,
                     uint64_t cap = 1000000) const;

  std::vector<Flow> enumerate(uint64_t cap = 1000000) const;

 private:
  FlowSpace() = default;
  uint64_t m_ = 1;
  Arcs arcs_;
  std::vector<SemiArcId> arc_order_;
  SmithForm smith_;
  std::vector<uint64_t> radix_;  // digit ranges, most significant first
};

inline FlowSpace flow_space(const Diagram& d, uint64_t m) { return FlowSpace::solve(d, m); }

/// Build a flow from per-arc values (keyed by any member semi-arc of each
/// arc); missing arcs default to 0. Throws InvalidFlow when the result does
/// not satisfy the flow conditions.
Flow make_flow(const Diagram& d, uint64_t m, const std::map<SemiArcId, int64_t>& arc_values);

struct AlexanderNumbering {
  uint64_t m = 1;
  std::vector<int64_t> face_labels;      // by face index; outer face = 0
  std::map<SemiArcId, int64_t> rho;      // label of the face the normal points to (left)
  Faces faces;
};

/// Labels the regions so that crossing a semi-arc from its right side to its
/// left increases the label by the arc's flow value; the unbounded region is
/// labeled 0. Unique given the outer face. Throws Inconsistent when no
/// labeling exists (non-planar data or an invalid flow).
AlexanderNumbering alexander_numbering(const Diagram& d, const Flow& flow);

}  // namespace hbk
