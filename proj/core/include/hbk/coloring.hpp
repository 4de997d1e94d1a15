#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbk/biquandle.hpp"
#include "hbk/diagram.hpp"
#include "hbk/flow.hpp"

namespace hbk {

/// Role assignment of the four semi-arcs at a crossing. For sign +1,
/// u = under_in, w = under_out, v = over_out, v' = over_in; sign -1 mirrors
/// every role, so one matrix formula covers both signs. phi is the flow of
/// the under arc, psi of the over arc.
struct CrossingFrame {
  std::string id;
  int sign = 1;
  SemiArcId u, v, vp, w;
  int64_t phi = 0;
  int64_t psi = 0;
};

/// Role assignment at a vertex. gamma is the lone-direction edge (the single
/// out-slot of a merge vertex, the single in-slot of a split vertex); the
/// paired edges counterclockwise after gamma are (beta, alpha) at a merge and
/// (alpha, beta) at a split. eta = flow(alpha), theta = flow(beta).
struct VertexFrame {
  std::string id;
  int sign = 1;  // +1 merge, -1 split
  SemiArcId alpha, beta, gamma;
  int64_t eta = 0;
  int64_t theta = 0;
};

CrossingFrame crossing_frame(const Crossing& c, const Flow& flow);
VertexFrame vertex_frame(const Vertex& v, const Flow& flow);

enum class RowKind { under_relation, over_relation, vertex_alpha, vertex_beta };

struct RowProvenance {
  RowKind kind;
  std::string node_id;
};

/// The (2n+4k) x (2n+3k) matrix whose kernel is Col_X(D, phi). Rows come in
/// the order: under-relations (crossings by id), over-relations (same
/// order), vertex-alpha rows (positive-sign vertices by id, then negative),
/// vertex-beta rows (same order). Columns are semi-arcs sorted by id.
struct ColoringMatrix {
  Field field;
  std::vector<SemiArcId> columns;
  std::vector<std::vector<FieldElement>> rows;
  std::vector<RowProvenance> row_provenance;

  size_t row_count() const { return rows.size(); }
  size_t col_count() const { return columns.size(); }
};

/// Throws NotZmFamily when type(ab) does not divide flow.m.
ColoringMatrix coloring_matrix(const Diagram& d, const Flow& flow,
                               const AlexanderBiquandle& ab);

/// Row rank by Gaussian elimination with deterministic pivoting (first
/// nonzero column, first nonzero row).
size_t rank(const ColoringMatrix& mx);

/// dim Col_X(D, phi) = (2n+3k) - rank A(D, phi; X). Always >= 1 on valid
/// flowed diagrams.
size_t coloring_dimension(const Diagram& d, const Flow& flow, const AlexanderBiquandle& ab);

/// "q^e" with q = #X and e = dim; the exact coloring count.
std::string coloring_count_string(const Field& field, size_t dim);

/// Exact number of colorings by backtracking over semi-arc assignments with
/// prefix constraint checks, built from the n-fold biquandle operations
/// rather than the matrix. Throws TooLarge when (#X)^(2n+3k) exceeds cap.
uint64_t coloring_count_bruteforce(const Diagram& d, const Flow& flow,
                                   const AlexanderBiquandle& ab, uint64_t cap = 1000000);

/// The linear combination of the rows of A(D, phi; X) with coefficients
///   eps_c t^{-rho(w)} (s^phi - t^phi)   on under-relation rows,
///   eps_c t^{-rho(v')} (s^psi - t^psi)  on over-relation rows,
///   eps_t t^{-rho(alpha)} (s^eta - t^eta)  on vertex-alpha rows,
///   eps_t t^{-rho(beta)} (s^theta - t^theta) on vertex-beta rows.
/// Must be the zero vector on every valid flowed diagram.
std::vector<FieldElement> relation_residual(const Diagram& d, const Flow& flow,
                                            const AlexanderBiquandle& ab);

bool residual_is_zero(const Diagram& d, const Flow& flow, const AlexanderBiquandle& ab);

}  // namespace hbk
