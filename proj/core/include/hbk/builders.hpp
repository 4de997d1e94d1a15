#pragma once

#include <vector>

#include "hbk/diagram.hpp"

namespace hbk::builders {

/// Unknot with a single kink (a one-crossing genus-1 diagram).
/// `first_under`: whether the strand passes under itself on the first visit.
Diagram kinked_unknot(int sign = 1, bool first_under = true);

/// Theta-curve (two vertices, three parallel edges) with one kink on an edge:
/// the smallest genus-2 diagram with a crossing. 1 crossing, 2 vertices.
Diagram theta_with_kink();

/// Genus-2 diagram with two positive crossings and two vertices; its
/// coloring matrix exercises every row kind. Semi-arcs are named x1..x7.
Diagram two_crossing_genus2();

/// Closed positive 2-braid with three crossings (right-handed trefoil),
/// viewed as a genus-1 handlebody-knot diagram.
Diagram trefoil();

/// Planar diagram of the trivial genus-g handlebody-knot: a chain of g
/// circles joined by g-1 connector edges, with one kink so that the diagram
/// has a crossing.
Diagram trivial_genus(size_t g);

/// Split union of trivial handlebody-knots of the given genera, drawn side
/// by side. Ids are prefixed per component.
Diagram trivial_components(const std::vector<size_t>& genera);

}  // namespace hbk::builders
