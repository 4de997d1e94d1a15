#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbk/errors.hpp"

namespace hbk {

using SemiArcId = std::string;

enum class Dir { in, out };
enum class Side { left, right };

inline const char* to_string(Dir d) { return d == Dir::in ? "in" : "out"; }
inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

struct Slot {
  SemiArcId semi_arc;
  Dir dir;
  bool operator==(const Slot&) const = default;
};

/// Signed crossing. The four slots are distinct positions; the same semi-arc
/// id may occupy two of them (a kink). The counterclockwise slot order in the
/// plane is derived from the sign:
///   sign +1: (under_in, over_out, under_out, over_in)
///   sign -1: (under_in, over_in, under_out, over_out)
struct Crossing {
  std::string id;
  int sign = 1;
  SemiArcId under_in, under_out, over_in, over_out;

  std::array<Slot, 4> rotation() const;
  bool operator==(const Crossing&) const = default;
};

/// Trivalent vertex; slots listed in counterclockwise planar order.
/// Y-orientation requires at least one in and one out slot, so a vertex is
/// either merge-type (2 in, 1 out) or split-type (1 in, 2 out).
struct Vertex {
  std::string id;
  std::array<Slot, 3> slots;

  bool is_merge() const;
  /// +1 for merge, -1 for split.
  int sign() const { return is_merge() ? 1 : -1; }
  bool operator==(const Vertex&) const = default;
};

struct OuterSpec {
  SemiArcId semi_arc;
  Side side;
  bool operator==(const OuterSpec&) const = default;
};

/// Endpoint of a semi-arc: node (crossing or vertex) and slot position.
struct Port {
  size_t node = 0;  // crossings first, then vertices
  size_t slot = 0;
  bool operator==(const Port&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

struct Faces {
  /// Each face is the cyclic list of (semi_arc, side) pairs met when walking
  /// its boundary; face 0 is the unbounded region (the outer orbits of all
  /// connected components merged).
  std::vector<std::vector<std::pair<SemiArcId, Side>>> faces;
  /// Per semi-arc: indices of the faces on its left / right.
  std::map<SemiArcId, std::pair<size_t, size_t>> side_face;
  size_t count() const { return faces.size(); }
};

struct Arcs {
  /// Semi-arc classes glued along each crossing's over-strand, each sorted;
  /// classes ordered by their first member. The first member is the class
  /// representative used to name the arc.
  std::vector<std::vector<SemiArcId>> classes;
  std::map<SemiArcId, size_t> class_of;
  size_t count() const { return classes.size(); }
  const SemiArcId& repr(size_t i) const { return classes[i].front(); }
};

/// Combinatorial planar diagram of a Y-oriented trivalent graph with signed
/// crossings. Immutable after construction. Construction enforces structural
/// invariants (every semi-arc occurs exactly once as a tail and once as a
/// head, vertices are Y-oriented, signs are +-1) and throws DuplicateSlot /
/// MissingSlot / BadSign / DuplicateId on violation; planarity and the
/// component-has-a-crossing rule are reported by validate().
class Diagram {
 public:
  Diagram(std::string name, std::vector<Crossing> crossings, std::vector<Vertex> vertices,
          std::optional<OuterSpec> outer = std::nullopt);

  const std::string& name() const { return name_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::optional<OuterSpec>& outer() const { return outer_; }

  /// All semi-arc ids, sorted.
  const std::vector<SemiArcId>& semi_arcs() const { return semi_arcs_; }
  size_t semi_arc_count() const { return semi_arcs_.size(); }
  size_t semi_arc_index(const SemiArcId& id) const;
  bool has_semi_arc(const SemiArcId& id) const;

  size_t node_count() const { return crossings_.size() + vertices_.size(); }
  bool node_is_crossing(size_t node) const { return node < crossings_.size(); }
  const Crossing& crossing_at(size_t node) const { return crossings_[node]; }
  const Vertex& vertex_at(size_t node) const { return vertices_[node - crossings_.size()]; }
  /// CCW slot list of a node.
  const std::vector<Slot>& rotation_of(size_t node) const { return rotations_[node]; }

  Port head_port(const SemiArcId& id) const;  // where the semi-arc arrives
  Port tail_port(const SemiArcId& id) const;  // where it leaves

  /// Connected component index of each node; components numbered from 0.
  const std::vector<size_t>& node_component() const { return node_component_; }
  size_t component_count() const { return component_count_; }
  size_t component_of_semi_arc(const SemiArcId& id) const;

  ValidationReport validate() const;
  bool is_valid() const { return validate().ok(); }

  Faces faces() const;
  Arcs arcs() const;

  /// Swap the under- and over-strand of one crossing and flip its sign. The
  /// planar shadow is unchanged. Throws UnknownCrossing.
  Diagram crossing_change(const std::string& crossing_id) const;

  Diagram with_outer(std::optional<OuterSpec> outer) const;
  Diagram with_name(std::string name) const;

  bool operator==(const Diagram& other) const;

 private:
  std::string name_;
  std::vector<Crossing> crossings_;  // sorted by id
  std::vector<Vertex> vertices_;     // sorted by id
  std::optional<OuterSpec> outer_;

  std::vector<SemiArcId> semi_arcs_;
  std::map<SemiArcId, size_t> semi_arc_index_;
  std::map<SemiArcId, Port> head_port_, tail_port_;
  std::vector<std::vector<Slot>> rotations_;
  std::vector<size_t> node_component_;
  size_t component_count_ = 0;
};

/// True when the two diagrams differ only by a relabeling of semi-arc,
/// crossing and vertex ids preserving signs, slot roles and rotations
/// (outer designations and names are ignored).
bool isomorphic(const Diagram& a, const Diagram& b);

}  // namespace hbk
