#include "hbk/coloring.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace hbk {

CrossingFrame crossing_frame(const Crossing& c, const Flow& flow) {
  CrossingFrame f;
  f.id = c.id;
  f.sign = c.sign;
  if (c.sign == 1) {
    f.u = c.under_in;
    f.w = c.under_out;
    f.v = c.over_out;
    f.vp = c.over_in;
  } else {
    f.u = c.under_out;
    f.w = c.under_in;
    f.v = c.over_in;
    f.vp = c.over_out;
  }
  f.phi = flow.at(f.u);
  f.psi = flow.at(f.v);
  return f;
}

VertexFrame vertex_frame(const Vertex& v, const Flow& flow) {
  VertexFrame f;
  f.id = v.id;
  f.sign = v.sign();
  const Dir lone = v.is_merge() ? Dir::out : Dir::in;
  size_t gi = 3;
  for (size_t i = 0; i < 3; ++i)
    if (v.slots[i].dir == lone) gi = i;
  assert(gi < 3);
  f.gamma = v.slots[gi].semi_arc;
  const SemiArcId& first = v.slots[(gi + 1) % 3].semi_arc;
  const SemiArcId& second = v.slots[(gi + 2) % 3].semi_arc;
  if (v.is_merge()) {
    f.beta = first;
    f.alpha = second;
  } else {
    f.alpha = first;
    f.beta = second;
  }
  f.eta = flow.at(f.alpha);
  f.theta = flow.at(f.beta);
  return f;
}

namespace {

std::vector<VertexFrame> vertex_frames_in_row_order(const Diagram& d, const Flow& flow) {
  std::vector<VertexFrame> frames;
  for (const auto& v : d.vertices())  // sorted by id
    if (v.sign() == 1) frames.push_back(vertex_frame(v, flow));
  for (const auto& v : d.vertices())
    if (v.sign() == -1) frames.push_back(vertex_frame(v, flow));
  return frames;
}

}  // namespace

ColoringMatrix coloring_matrix(const Diagram& d, const Flow& flow,
                               const AlexanderBiquandle& ab) {
  ab.require_zm_family(flow.m);
  ColoringMatrix mx{ab.field(), d.semi_arcs(), {}, {}};
  const size_t cols = mx.columns.size();
  auto col = [&](const SemiArcId& id) { return d.semi_arc_index(id); };
  auto blank = [&] { return std::vector<FieldElement>(cols, ab.field().zero()); };

  for (const auto& c : d.crossings()) {
    CrossingFrame f = crossing_frame(c, flow);
    auto row = blank();
    row[col(f.u)] = row[col(f.u)] + ab.t_pow(f.psi);
    row[col(f.v)] = row[col(f.v)] + (ab.s_pow(f.psi) - ab.t_pow(f.psi));
    row[col(f.w)] = row[col(f.w)] - ab.field().one();
    mx.rows.push_back(std::move(row));
    mx.row_provenance.push_back({RowKind::under_relation, c.id});
  }
  for (const auto& c : d.crossings()) {
    CrossingFrame f = crossing_frame(c, flow);
    auto row = blank();
    row[col(f.v)] = row[col(f.v)] - ab.s_pow(f.phi);
    row[col(f.vp)] = row[col(f.vp)] + ab.field().one();
    mx.rows.push_back(std::move(row));
    mx.row_provenance.push_back({RowKind::over_relation, c.id});
  }
  auto vframes = vertex_frames_in_row_order(d, flow);
  for (const auto& f : vframes) {
    auto row = blank();
    row[col(f.alpha)] = row[col(f.alpha)] + ab.field().one();
    row[col(f.gamma)] = row[col(f.gamma)] - ab.field().one();
    mx.rows.push_back(std::move(row));
    mx.row_provenance.push_back({RowKind::vertex_alpha, f.id});
  }
  for (const auto& f : vframes) {
    auto row = blank();
    row[col(f.beta)] = row[col(f.beta)] + ab.field().one();
    row[col(f.gamma)] = row[col(f.gamma)] - ab.s_pow(f.eta);
    mx.rows.push_back(std::move(row));
    mx.row_provenance.push_back({RowKind::vertex_beta, f.id});
  }
  return mx;
}

size_t rank(const ColoringMatrix& mx) {
  auto rows = mx.rows;
  const size_t nrows = rows.size();
  const size_t ncols = mx.col_count();
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < nrows; ++c) {
    size_t pivot = SIZE_MAX;
    for (size_t i = r; i < nrows; ++i)
      if (!rows[i][c].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == SIZE_MAX) continue;
    std::swap(rows[r], rows[pivot]);
    FieldElement inv = rows[r][c].inv();
    for (size_t i = r + 1; i < nrows; ++i) {
      if (rows[i][c].is_zero()) continue;
      FieldElement factor = rows[i][c] * inv;
      for (size_t j = c; j < ncols; ++j)
        rows[i][j] = rows[i][j] - factor * rows[r][j];
    }
    ++r;
  }
  return r;
}

size_t coloring_dimension(const Diagram& d, const Flow& flow, const AlexanderBiquandle& ab) {
  ColoringMatrix mx = coloring_matrix(d, flow, ab);
  return mx.col_count() - rank(mx);
}

std::string coloring_count_string(const Field& field, size_t dim) {
  std::ostringstream os;
  os << field.order() << "^" << dim;
  return os.str();
}

uint64_t coloring_count_bruteforce(const Diagram& d, const Flow& flow,
                                   const AlexanderBiquandle& ab, uint64_t cap) {
  ab.require_zm_family(flow.m);
  const Field& field = ab.field();
  const uint64_t q = field.order();
  const size_t e = d.semi_arc_count();

  long double worst = std::pow(static_cast<long double>(q), static_cast<long double>(e));
  if (worst > static_cast<long double>(cap))
    throw make_error("TooLarge", "(#X)^" + std::to_string(e) + " exceeds cap");

  // constraints in operation form, each checked as soon as its last
  // variable (in column order) is assigned
  struct Constraint {
    std::vector<size_t> vars;
    std::function<bool(const std::vector<FieldElement>&)> check;
    size_t last_var() const { return *std::max_element(vars.begin(), vars.end()); }
  };
  std::vector<Constraint> constraints;
  auto idx = [&](const SemiArcId& id) { return d.semi_arc_index(id); };

  for (const auto& c : d.crossings()) {
    CrossingFrame f = crossing_frame(c, flow);
    size_t u = idx(f.u), v = idx(f.v), vp = idx(f.vp), w = idx(f.w);
    int64_t psi = f.psi, phi = f.phi;
    constraints.push_back(
        {{u, v, w}, [&ab, u, v, w, psi](const std::vector<FieldElement>& x) {
           return x[w] == ab.underop_n(x[u], x[v], psi);
         }});
    constraints.push_back(
        {{v, vp}, [&ab, v, vp, phi](const std::vector<FieldElement>& x) {
           return x[vp] == ab.overop_n(x[v], x[v], phi);
         }});
  }
  for (const auto& v : d.vertices()) {
    VertexFrame f = vertex_frame(v, flow);
    size_t a = idx(f.alpha), b = idx(f.beta), g = idx(f.gamma);
    int64_t eta = f.eta;
    constraints.push_back({{a, g}, [a, g](const std::vector<FieldElement>& x) {
                             return x[a] == x[g];
                           }});
    constraints.push_back({{b, g}, [&ab, b, g, eta](const std::vector<FieldElement>& x) {
                             return x[b] == ab.overop_n(x[g], x[g], eta);
                           }});
  }

  std::vector<std::vector<const Constraint*>> due(e);
  for (const auto& c : constraints) due[c.last_var()].push_back(&c);

  std::vector<FieldElement> assign(e, field.zero());
  uint64_t count = 0;
  std::function<void(size_t)> recurse = [&](size_t pos) {
    if (pos == e) {
      ++count;
      return;
    }
    for (uint64_t val = 0; val < q; ++val) {
      assign[pos] = field.element_by_index(val);
      bool ok = true;
      for (const Constraint* c : due[pos])
        if (!c->check(assign)) {
          ok = false;
          break;
        }
      if (ok) recurse(pos + 1);
    }
  };
  recurse(0);
  return count;
}

std::vector<FieldElement> relation_residual(const Diagram& d, const Flow& flow,
                                            const AlexanderBiquandle& ab) {
  ColoringMatrix mx = coloring_matrix(d, flow, ab);
  AlexanderNumbering numbering = alexander_numbering(d, flow);
  const Field& field = ab.field();

  auto sign_elem = [&](int sign) { return sign == 1 ? field.one() : -field.one(); };
  auto rho = [&](const SemiArcId& id) { return numbering.rho.at(id); };

  std::vector<FieldElement> coeff;
  coeff.reserve(mx.row_count());
  for (const auto& c : d.crossings()) {
    CrossingFrame f = crossing_frame(c, flow);
    coeff.push_back(sign_elem(f.sign) * ab.t_pow(-rho(f.w)) *
                    (ab.s_pow(f.phi) - ab.t_pow(f.phi)));
  }
  for (const auto& c : d.crossings()) {
    CrossingFrame f = crossing_frame(c, flow);
    coeff.push_back(sign_elem(f.sign) * ab.t_pow(-rho(f.vp)) *
                    (ab.s_pow(f.psi) - ab.t_pow(f.psi)));
  }
  auto vframes = vertex_frames_in_row_order(d, flow);
  for (const auto& f : vframes)
    coeff.push_back(sign_elem(f.sign) * ab.t_pow(-rho(f.alpha)) *
                    (ab.s_pow(f.eta) - ab.t_pow(f.eta)));
  for (const auto& f : vframes)
    coeff.push_back(sign_elem(f.sign) * ab.t_pow(-rho(f.beta)) *
                    (ab.s_pow(f.theta) - ab.t_pow(f.theta)));

  std::vector<FieldElement> residual(mx.col_count(), field.zero());
  for (size_t i = 0; i < mx.row_count(); ++i)
    for (size_t j = 0; j < mx.col_count(); ++j)
      residual[j] = residual[j] + coeff[i] * mx.rows[i][j];
  return residual;
}

bool residual_is_zero(const Diagram& d, const Flow& flow, const AlexanderBiquandle& ab) {
  for (const auto& entry : relation_residual(d, flow, ab))
    if (!entry.is_zero()) return false;
  return true;
}

}  // namespace hbk
