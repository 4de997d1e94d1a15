#include "hbk/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace hbk {

std::array<Slot, 4> Crossing::rotation() const {
  if (sign == 1)
    return {Slot{under_in, Dir::in}, Slot{over_out, Dir::out}, Slot{under_out, Dir::out},
            Slot{over_in, Dir::in}};
  return {Slot{under_in, Dir::in}, Slot{over_in, Dir::in}, Slot{under_out, Dir::out},
          Slot{over_out, Dir::out}};
}

bool Vertex::is_merge() const {
  int ins = 0;
  for (const auto& s : slots)
    if (s.dir == Dir::in) ++ins;
  return ins == 2;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& v : violations) os << v << "\n";
  return os.str();
}

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Diagram::Diagram(std::string name, std::vector<Crossing> crossings,
                 std::vector<Vertex> vertices, std::optional<OuterSpec> outer)
    : name_(std::move(name)),
      crossings_(std::move(crossings)),
      vertices_(std::move(vertices)),
      outer_(std::move(outer)) {
  std::sort(crossings_.begin(), crossings_.end(),
            [](const Crossing& a, const Crossing& b) { return a.id < b.id; });
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });

  for (size_t i = 1; i < crossings_.size(); ++i)
    if (crossings_[i].id == crossings_[i - 1].id)
      throw make_error("DuplicateId", "crossing " + crossings_[i].id);
  for (size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i].id == vertices_[i - 1].id)
      throw make_error("DuplicateId", "vertex " + vertices_[i].id);

  for (const auto& c : crossings_)
    if (c.sign != 1 && c.sign != -1)
      throw make_error("BadSign", "crossing " + c.id + " has sign " + std::to_string(c.sign));

  for (const auto& v : vertices_) {
    int ins = 0, outs = 0;
    for (const auto& s : v.slots) (s.dir == Dir::in ? ins : outs)++;
    if (ins == 0 || outs == 0)
      throw make_error("BadSign",
                       "vertex " + v.id + " is not Y-oriented (needs an in and an out slot)");
  }

  rotations_.reserve(node_count());
  for (const auto& c : crossings_) {
    auto rot = c.rotation();
    rotations_.emplace_back(rot.begin(), rot.end());
  }
  for (const auto& v : vertices_) rotations_.emplace_back(v.slots.begin(), v.slots.end());

  // Each semi-arc id must appear exactly once as a tail and once as a head.
  for (size_t node = 0; node < node_count(); ++node) {
    for (size_t i = 0; i < rotations_[node].size(); ++i) {
      const Slot& s = rotations_[node][i];
      auto& table = (s.dir == Dir::in) ? head_port_ : tail_port_;
      auto [it, inserted] = table.emplace(s.semi_arc, Port{node, i});
      if (!inserted)
        throw make_error("DuplicateSlot", "semi-arc " + s.semi_arc + " has two " +
                                              (s.dir == Dir::in ? "head" : "tail") + " slots");
    }
  }
  for (const auto& [id, port] : head_port_)
    if (!tail_port_.count(id))
      throw make_error("MissingSlot", "semi-arc " + id + " has no tail slot");
  for (const auto& [id, port] : tail_port_)
    if (!head_port_.count(id))
      throw make_error("MissingSlot", "semi-arc " + id + " has no head slot");

  for (const auto& [id, port] : head_port_) semi_arcs_.push_back(id);
  std::sort(semi_arcs_.begin(), semi_arcs_.end());
  for (size_t i = 0; i < semi_arcs_.size(); ++i) semi_arc_index_[semi_arcs_[i]] = i;

  if (outer_ && !head_port_.count(outer_->semi_arc))
    throw make_error("MissingSlot", "outer designates unknown semi-arc " + outer_->semi_arc);

  // Connected components over nodes.
  UnionFind uf(node_count());
  for (const auto& id : semi_arcs_) uf.unite(head_port_.at(id).node, tail_port_.at(id).node);
  std::map<size_t, size_t> root_index;
  node_component_.resize(node_count());
  for (size_t n = 0; n < node_count(); ++n) {
    size_t r = uf.find(n);
    auto [it, inserted] = root_index.emplace(r, root_index.size());
    node_component_[n] = it->second;
  }
  component_count_ = root_index.size();
}

size_t Diagram::semi_arc_index(const SemiArcId& id) const {
  auto it = semi_arc_index_.find(id);
  if (it == semi_arc_index_.end()) throw make_error("MissingSlot", "unknown semi-arc " + id);
  return it->second;
}

bool Diagram::has_semi_arc(const SemiArcId& id) const { return semi_arc_index_.count(id) > 0; }

Port Diagram::head_port(const SemiArcId& id) const { return head_port_.at(id); }
Port Diagram::tail_port(const SemiArcId& id) const { return tail_port_.at(id); }

size_t Diagram::component_of_semi_arc(const SemiArcId& id) const {
  return node_component_[head_port(id).node];
}

Faces Diagram::faces() const {
  const size_t e = semi_arc_count();
  // Dart 2*i = forward (tail->head) dart of semi-arc i, 2*i+1 = backward.
  // The face lies on the left of each dart: forward darts contribute
  // (semi_arc, left), backward darts (semi_arc, right). To keep the same
  // face on the left, a dart arriving at a slot departs via the cw-next one.
  auto arrival = [&](size_t dart) -> Port {
    const SemiArcId& id = semi_arcs_[dart / 2];
    return (dart % 2 == 0) ? head_port_.at(id) : tail_port_.at(id);
  };
  auto next_dart = [&](size_t dart) -> size_t {
    Port port = arrival(dart);
    const auto& rot = rotations_[port.node];
    size_t j = (port.slot + rot.size() - 1) % rot.size();
    const Slot& s = rot[j];
    size_t idx = semi_arc_index_.at(s.semi_arc);
    return (s.dir == Dir::out) ? 2 * idx : 2 * idx + 1;
  };

  std::vector<int> orbit_of(2 * e, -1);
  std::vector<std::vector<size_t>> orbits;
  for (size_t d = 0; d < 2 * e; ++d) {
    if (orbit_of[d] >= 0) continue;
    std::vector<size_t> orbit;
    size_t cur = d;
    while (orbit_of[cur] < 0) {
      orbit_of[cur] = static_cast<int>(orbits.size());
      orbit.push_back(cur);
      cur = next_dart(cur);
    }
    orbits.push_back(std::move(orbit));
  }

  auto pair_of_dart = [&](size_t dart) {
    return std::make_pair(semi_arcs_[dart / 2], dart % 2 == 0 ? Side::left : Side::right);
  };
  auto component_of_orbit = [&](const std::vector<size_t>& orbit) {
    return node_component_[arrival(orbit.front()).node];
  };
  auto smallest_pair = [&](const std::vector<size_t>& orbit) {
    auto smallest = pair_of_dart(orbit.front());
    for (size_t d : orbit) smallest = std::min(smallest, pair_of_dart(d));
    return smallest;
  };

  // Pick the outer orbit per component: the designated pair for its own
  // component, the lexicographically smallest (semi_arc, side) pair elsewhere.
  std::vector<int> outer_orbit(component_count_, -1);
  if (outer_) {
    size_t idx = semi_arc_index(outer_->semi_arc);
    size_t dart = outer_->side == Side::left ? 2 * idx : 2 * idx + 1;
    outer_orbit[component_of_orbit(orbits[orbit_of[dart]])] = orbit_of[dart];
  }
  for (size_t comp = 0; comp < component_count_; ++comp) {
    if (outer_orbit[comp] >= 0) continue;
    size_t best_orbit = SIZE_MAX;
    std::pair<SemiArcId, Side> best_key;
    for (size_t o = 0; o < orbits.size(); ++o) {
      if (component_of_orbit(orbits[o]) != comp) continue;
      auto key = smallest_pair(orbits[o]);
      if (best_orbit == SIZE_MAX || key < best_key) {
        best_orbit = o;
        best_key = key;
      }
    }
    outer_orbit[comp] = static_cast<int>(best_orbit);
  }

  // Face 0 merges the outer orbits of all components; the rest keep their
  // orbit boundaries, ordered by smallest boundary pair.
  std::vector<bool> is_outer(orbits.size(), false);
  for (size_t comp = 0; comp < component_count_; ++comp) is_outer[outer_orbit[comp]] = true;

  Faces result;
  result.faces.emplace_back();
  std::vector<size_t> face_index(orbits.size(), 0);
  std::vector<std::pair<std::pair<SemiArcId, Side>, size_t>> inner;
  for (size_t o = 0; o < orbits.size(); ++o) {
    if (is_outer[o]) {
      for (size_t d : orbits[o]) result.faces[0].push_back(pair_of_dart(d));
      continue;
    }
    inner.push_back({smallest_pair(orbits[o]), o});
  }
  std::sort(inner.begin(), inner.end());
  for (const auto& [key, o] : inner) {
    face_index[o] = result.faces.size();
    result.faces.emplace_back();
    for (size_t d : orbits[o]) result.faces.back().push_back(pair_of_dart(d));
  }

  for (size_t i = 0; i < e; ++i) {
    size_t left = face_index[orbit_of[2 * i]];
    size_t right = face_index[orbit_of[2 * i + 1]];
    result.side_face[semi_arcs_[i]] = {left, right};
  }
  return result;
}

Arcs Diagram::arcs() const {
  UnionFind uf(semi_arc_count());
  for (const auto& c : crossings_)
    uf.unite(semi_arc_index_.at(c.over_in), semi_arc_index_.at(c.over_out));
  std::map<size_t, std::vector<SemiArcId>> groups;
  for (size_t i = 0; i < semi_arc_count(); ++i) groups[uf.find(i)].push_back(semi_arcs_[i]);
  Arcs arcs;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    arcs.classes.push_back(members);
  }
  std::sort(arcs.classes.begin(), arcs.classes.end());
  for (size_t i = 0; i < arcs.classes.size(); ++i)
    for (const auto& id : arcs.classes[i]) arcs.class_of[id] = i;
  return arcs;
}

ValidationReport Diagram::validate() const {
  ValidationReport report;

  std::vector<size_t> crossings_in_component(component_count_, 0);
  for (const auto& c : crossings_) {
    size_t node = static_cast<size_t>(&c - crossings_.data());
    crossings_in_component[node_component_[node]]++;
  }
  for (size_t comp = 0; comp < component_count_; ++comp)
    if (crossings_in_component[comp] == 0) {
      std::ostringstream os;
      os << "NoCrossingComponent: component " << comp << " has no crossing";
      report.violations.push_back(os.str());
    }

  // Planarity: per connected component, V - E + F = 2 for the orbits of the
  // rotation system.
  Faces f = faces();
  // Recover per-component orbit counts by re-tracing; face 0 merged c outer
  // orbits, so per-component face totals need the merged count back.
  std::vector<size_t> v_count(component_count_, 0), e_count(component_count_, 0),
      f_count(component_count_, 0);
  for (size_t n = 0; n < node_count(); ++n) v_count[node_component_[n]]++;
  for (const auto& id : semi_arcs_) e_count[component_of_semi_arc(id)]++;
  // Faces 1..: each belongs to one component. Outer: one orbit per component.
  for (size_t i = 1; i < f.faces.size(); ++i)
    f_count[component_of_semi_arc(f.faces[i].front().first)]++;
  for (size_t comp = 0; comp < component_count_; ++comp) f_count[comp] += 1;  // its outer orbit

  for (size_t comp = 0; comp < component_count_; ++comp) {
    long long euler = static_cast<long long>(v_count[comp]) - static_cast<long long>(e_count[comp]) +
                      static_cast<long long>(f_count[comp]);
    if (euler != 2) {
      std::ostringstream os;
      os << "EulerViolation: component " << comp << " has V-E+F = " << euler
         << " (expected 2); the rotation system is not planar";
      report.violations.push_back(os.str());
    }
  }

  // |SA| = 2n + 3k with 2k vertices. Forced by slot counting; kept as a
  // consistency assert.
  size_t n = crossings_.size(), twok = vertices_.size();
  if (2 * semi_arc_count() != 4 * n + 3 * twok)
    report.violations.push_back("SlotCountMismatch: |SA| != 2n + 3k");
  if (twok % 2 != 0)
    report.violations.push_back("OddVertexCount: #vertices must be even");

  return report;
}

Diagram Diagram::crossing_change(const std::string& crossing_id) const {
  auto crossings = crossings_;
  auto it = std::find_if(crossings.begin(), crossings.end(),
                         [&](const Crossing& c) { return c.id == crossing_id; });
  if (it == crossings.end())
    throw make_error("UnknownCrossing", "no crossing with id " + crossing_id);
  Crossing& c = *it;
  std::swap(c.under_in, c.over_in);
  std::swap(c.under_out, c.over_out);
  c.sign = -c.sign;
  return Diagram(name_, std::move(crossings), vertices_, outer_);
}

Diagram Diagram::with_outer(std::optional<OuterSpec> outer) const {
  return Diagram(name_, crossings_, vertices_, std::move(outer));
}

Diagram Diagram::with_name(std::string name) const {
  return Diagram(std::move(name), crossings_, vertices_, outer_);
}

bool Diagram::operator==(const Diagram& other) const {
  return name_ == other.name_ && crossings_ == other.crossings_ &&
         vertices_ == other.vertices_ && outer_ == other.outer_;
}

namespace {

// Backtracking isomorphism on labeled rotation systems. Diagrams at desk
// scale; no sophistication needed.
struct IsoSearch {
  const Diagram& a;
  const Diagram& b;
  std::map<SemiArcId, SemiArcId> arc_map;

  bool try_map(const SemiArcId& x, const SemiArcId& y) {
    auto it = arc_map.find(x);
    if (it != arc_map.end()) return it->second == y;
    arc_map.emplace(x, y);
    return true;
  }
};

bool crossing_matches(const Crossing& x, const Crossing& y, IsoSearch& s) {
  if (x.sign != y.sign) return false;
  return s.try_map(x.under_in, y.under_in) && s.try_map(x.under_out, y.under_out) &&
         s.try_map(x.over_in, y.over_in) && s.try_map(x.over_out, y.over_out);
}

bool vertex_matches(const Vertex& x, const Vertex& y, size_t rot, IsoSearch& s) {
  for (size_t i = 0; i < 3; ++i) {
    const Slot& sx = x.slots[i];
    const Slot& sy = y.slots[(i + rot) % 3];
    if (sx.dir != sy.dir) return false;
    if (!s.try_map(sx.semi_arc, sy.semi_arc)) return false;
  }
  return true;
}

bool consistent_ports(const IsoSearch& s, const std::vector<int>& cmap,
                      const std::vector<int>& vmap) {
  // Mapped semi-arcs must connect correspondingly mapped nodes whenever both
  // the semi-arc and its endpoint node are already mapped.
  const Diagram& a = s.a;
  const Diagram& b = s.b;
  auto node_image = [&](size_t node) -> int {
    if (node < a.crossings().size()) return cmap[node];
    int v = vmap[node - a.crossings().size()];
    return v < 0 ? -1 : v + static_cast<int>(b.crossings().size());
  };
  for (const auto& [x, y] : s.arc_map) {
    for (bool head : {true, false}) {
      Port pa = head ? a.head_port(x) : a.tail_port(x);
      Port pb = head ? b.head_port(y) : b.tail_port(y);
      int img = node_image(pa.node);
      if (img >= 0 && static_cast<size_t>(img) != pb.node) return false;
    }
  }
  return true;
}

bool extend(IsoSearch& s, std::vector<int>& cmap, std::vector<int>& vmap, size_t depth) {
  const auto& ac = s.a.crossings();
  const auto& bc = s.b.crossings();
  const auto& av = s.a.vertices();
  const auto& bv = s.b.vertices();

  if (depth < ac.size()) {
    for (size_t i = 0; i < bc.size(); ++i) {
      bool used = false;
      for (size_t j = 0; j < depth; ++j)
        if (cmap[j] == static_cast<int>(i)) used = true;
      if (used) continue;
      auto saved = s.arc_map;
      cmap[depth] = static_cast<int>(i);
      if (crossing_matches(ac[depth], bc[i], s) && consistent_ports(s, cmap, vmap) &&
          extend(s, cmap, vmap, depth + 1))
        return true;
      cmap[depth] = -1;
      s.arc_map = std::move(saved);
    }
    return false;
  }
  size_t vdepth = depth - ac.size();
  if (vdepth < av.size()) {
    for (size_t i = 0; i < bv.size(); ++i) {
      bool used = false;
      for (size_t j = 0; j < vdepth; ++j)
        if (vmap[j] == static_cast<int>(i)) used = true;
      if (used) continue;
      for (size_t rot = 0; rot < 3; ++rot) {
        auto saved = s.arc_map;
        vmap[vdepth] = static_cast<int>(i);
        if (vertex_matches(av[vdepth], bv[i], rot, s) && consistent_ports(s, cmap, vmap) &&
            extend(s, cmap, vmap, depth + 1))
          return true;
        vmap[vdepth] = -1;
        s.arc_map = std::move(saved);
      }
    }
    return false;
  }
  if (s.arc_map.size() != s.a.semi_arc_count() || !consistent_ports(s, cmap, vmap))
    return false;
  std::vector<SemiArcId> images;
  images.reserve(s.arc_map.size());
  for (const auto& [x, y] : s.arc_map) images.push_back(y);
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

}  // namespace

bool isomorphic(const Diagram& a, const Diagram& b) {
  if (a.crossings().size() != b.crossings().size()) return false;
  if (a.vertices().size() != b.vertices().size()) return false;
  if (a.semi_arc_count() != b.semi_arc_count()) return false;
  IsoSearch s{a, b, {}};
  std::vector<int> cmap(a.crossings().size(), -1);
  std::vector<int> vmap(a.vertices().size(), -1);
  return extend(s, cmap, vmap, 0);
}

}  // namespace hbk
