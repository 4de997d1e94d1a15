#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hbk/diagram.hpp"
#include "hbk/flow.hpp"

namespace hbk {

/// Local rewrite kinds. R4 and R5 sites carry a direction in their first
/// argument ("collapse"/"expand", "twist"/"untwist"); the other kinds are
/// directional by name.
enum class MoveKind { R1p, R1m, R2p, R2m, R3, R4over, R4under, R5, R6 };

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);

/// An applicable rewrite site. Darts are written "<semi_arc>+" (forward,
/// along the orientation) or "<semi_arc>-".
///   R1+: [semi_arc, under|over, +|-]
///   R1-: [crossing]
///   R2+: [dart_a, dart_b, first|second]      (which strand passes over)
///   R2-: [crossing, crossing]
///   R3:  [dart, dart, dart]                  (triangle face, orbit order)
///   R4*: [collapse, dart, dart, dart] | [expand, crossing, vertex, semi_arc]
///   R5:  [twist, vertex, slot_index, first|second] | [untwist, crossing]
///   R6:  [neck_semi_arc, down|up]             (orientation of the new neck)
struct MoveSite {
  MoveKind kind = MoveKind::R1p;
  std::vector<std::string> args;

  std::string to_string() const;
  static MoveSite parse(const std::string& text);
  bool operator==(const MoveSite&) const = default;
};

/// Result of a rewrite, with enough provenance to transport flows: each new
/// or re-extended semi-arc inherits the flow value of a semi-arc of the old
/// diagram; `computed` ids (the R6 neck) are re-derived from vertex
/// conservation instead.
struct MoveResult {
  Diagram diagram;
  std::map<SemiArcId, SemiArcId> inherit;
  std::vector<SemiArcId> computed;
};

/// Applies the move or throws NotApplicable. The result is always a valid
/// diagram.
MoveResult apply_move(const Diagram& d, const MoveSite& site);

/// All sites whose pattern matches, in deterministic order. A listed site
/// may still fail to apply when the rewrite would leave a component without
/// crossings.
std::vector<MoveSite> enumerate_applicable(const Diagram& d);

/// The associated flow: coincides with `flow` away from the rewrite disk.
Flow transport_flow(const Diagram& before, const Flow& flow, const MoveResult& result);

/// Seeded random walk applying `steps` moves, skipping sites that fail and
/// keeping the diagram within the given size budget. Reproducible.
Diagram random_equivalent(const Diagram& d, uint64_t seed, size_t steps,
                          size_t max_crossings = 10, size_t max_vertices = 6);

}  // namespace hbk
