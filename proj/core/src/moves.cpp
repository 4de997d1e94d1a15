#include "hbk/moves.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace hbk {

std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1p: return "R1+";
    case MoveKind::R1m: return "R1-";
    case MoveKind::R2p: return "R2+";
    case MoveKind::R2m: return "R2-";
    case MoveKind::R3: return "R3";
    case MoveKind::R4over: return "R4over";
    case MoveKind::R4under: return "R4under";
    case MoveKind::R5: return "R5";
    case MoveKind::R6: return "R6";
  }
  return "?";
}

MoveKind move_kind_from_string(const std::string& s) {
  if (s == "R1+") return MoveKind::R1p;
  if (s == "R1-") return MoveKind::R1m;
  if (s == "R2+") return MoveKind::R2p;
  if (s == "R2-") return MoveKind::R2m;
  if (s == "R3") return MoveKind::R3;
  if (s == "R4over") return MoveKind::R4over;
  if (s == "R4under") return MoveKind::R4under;
  if (s == "R5") return MoveKind::R5;
  if (s == "R6") return MoveKind::R6;
  throw make_error("NotApplicable", "unknown move kind " + s);
}

std::string MoveSite::to_string() const {
  std::string s = hbk::to_string(kind) + ":";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i];
  }
  return s;
}

MoveSite MoveSite::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw make_error("NotApplicable", "bad site syntax: " + text);
  MoveSite site;
  site.kind = move_kind_from_string(text.substr(0, colon));
  std::string rest = text.substr(colon + 1);
  std::string cur;
  for (char ch : rest) {
    if (ch == ',') {
      site.args.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) site.args.push_back(cur);
  return site;
}

namespace {

[[noreturn]] void not_applicable(const std::string& why) {
  throw make_error("NotApplicable", why);
}

// ---------------------------------------------------------------- darts

struct Dart {
  SemiArcId arc;
  bool fwd = true;

  std::string text() const { return arc + (fwd ? "+" : "-"); }
  bool operator==(const Dart&) const = default;
  bool operator<(const Dart& o) const { return std::tie(arc, fwd) < std::tie(o.arc, o.fwd); }
};

Dart parse_dart(const std::string& s) {
  if (s.size() < 2 || (s.back() != '+' && s.back() != '-'))
    not_applicable("bad dart " + s);
  return Dart{s.substr(0, s.size() - 1), s.back() == '+'};
}

Port arrival_port(const Diagram& d, const Dart& dart) {
  return dart.fwd ? d.head_port(dart.arc) : d.tail_port(dart.arc);
}

Dart next_dart(const Diagram& d, const Dart& dart) {
  Port port = arrival_port(d, dart);
  const auto& rot = d.rotation_of(port.node);
  const Slot& s = rot[(port.slot + rot.size() - 1) % rot.size()];
  return Dart{s.semi_arc, s.dir == Dir::out};
}

std::vector<Dart> face_orbit(const Diagram& d, const Dart& start) {
  std::vector<Dart> orbit{start};
  for (Dart cur = next_dart(d, start); !(cur == start); cur = next_dart(d, cur))
    orbit.push_back(cur);
  return orbit;
}

std::vector<std::vector<Dart>> all_faces(const Diagram& d) {
  std::set<Dart> seen;
  std::vector<std::vector<Dart>> faces;
  for (const auto& id : d.semi_arcs()) {
    for (bool fwd : {true, false}) {
      Dart start{id, fwd};
      if (seen.count(start)) continue;
      auto orbit = face_orbit(d, start);
      for (const auto& dart : orbit) seen.insert(dart);
      faces.push_back(std::move(orbit));
    }
  }
  return faces;
}

std::string node_id(const Diagram& d, size_t node) {
  return d.node_is_crossing(node) ? d.crossing_at(node).id : d.vertex_at(node).id;
}

// ---------------------------------------------------------------- surgeon

enum CField { UI = 0, UO = 1, OI = 2, OO = 3 };

struct SlotAddr {
  bool is_crossing = true;
  std::string node;
  int pos = 0;  // CField for crossings, slot index for vertices
};

struct Surgeon {
  std::string name;
  std::vector<Crossing> crossings;
  std::vector<Vertex> vertices;
  std::optional<OuterSpec> outer;
  std::set<std::string> arc_ids, node_ids;

  explicit Surgeon(const Diagram& d)
      : name(d.name()), crossings(d.crossings()), vertices(d.vertices()), outer(d.outer()) {
    for (const auto& id : d.semi_arcs()) arc_ids.insert(id);
    for (const auto& c : crossings) node_ids.insert(c.id);
    for (const auto& v : vertices) node_ids.insert(v.id);
  }

  std::string fresh_arc(const std::string& base) {
    std::string id = base;
    for (int i = 1; arc_ids.count(id); ++i) id = base + "." + std::to_string(i);
    arc_ids.insert(id);
    return id;
  }

  std::string fresh_node(const std::string& base) {
    std::string id = base;
    for (int i = 1; node_ids.count(id); ++i) id = base + std::to_string(i);
    node_ids.insert(id);
    return id;
  }

  Crossing& crossing_ref(const std::string& id) {
    for (auto& c : crossings)
      if (c.id == id) return c;
    not_applicable("no crossing " + id);
  }

  Vertex& vertex_ref(const std::string& id) {
    for (auto& v : vertices)
      if (v.id == id) return v;
    not_applicable("no vertex " + id);
  }

  void erase_crossing(const std::string& id) {
    crossings.erase(std::remove_if(crossings.begin(), crossings.end(),
                                   [&](const Crossing& c) { return c.id == id; }),
                    crossings.end());
  }

  void erase_vertex(const std::string& id) {
    vertices.erase(std::remove_if(vertices.begin(), vertices.end(),
                                  [&](const Vertex& v) { return v.id == id; }),
                   vertices.end());
  }

  SlotAddr locate(const SemiArcId& arc, Dir dir) const {
    for (const auto& c : crossings) {
      if (dir == Dir::in) {
        if (c.under_in == arc) return {true, c.id, UI};
        if (c.over_in == arc) return {true, c.id, OI};
      } else {
        if (c.under_out == arc) return {true, c.id, UO};
        if (c.over_out == arc) return {true, c.id, OO};
      }
    }
    for (const auto& v : vertices)
      for (size_t i = 0; i < 3; ++i)
        if (v.slots[i].semi_arc == arc && v.slots[i].dir == dir)
          return {false, v.id, static_cast<int>(i)};
    not_applicable("slot (" + arc + "," + (dir == Dir::in ? "in" : "out") + ") not found");
  }

  void write(const SlotAddr& addr, const SemiArcId& arc) {
    if (addr.is_crossing) {
      Crossing& c = crossing_ref(addr.node);
      switch (addr.pos) {
        case UI: c.under_in = arc; break;
        case UO: c.under_out = arc; break;
        case OI: c.over_in = arc; break;
        case OO: c.over_out = arc; break;
      }
    } else {
      vertex_ref(addr.node).slots[addr.pos].semi_arc = arc;
    }
  }

  void replace_slot(const SemiArcId& from, Dir dir, const SemiArcId& to) {
    write(locate(from, dir), to);
  }

  Diagram build() {
    if (outer) {
      bool alive = false;
      for (const auto& c : crossings)
        if (c.under_in == outer->semi_arc || c.under_out == outer->semi_arc ||
            c.over_in == outer->semi_arc || c.over_out == outer->semi_arc)
          alive = true;
      for (const auto& v : vertices)
        for (const auto& s : v.slots)
          if (s.semi_arc == outer->semi_arc) alive = true;
      if (!alive) outer.reset();
    }
    return Diagram(name, crossings, vertices, outer);
  }
};

// Build a crossing whose derived ccw rotation equals the given ccw slot list;
// the strand on slots {0,2} or {1,3} (under_positions_even) is the under
// strand. The sign falls out.
Crossing crossing_from_rotation(const std::string& id, const std::array<Slot, 4>& ccw,
                                bool under_positions_even) {
  Crossing c;
  c.id = id;
  auto pick = [&](size_t i, size_t j, SemiArcId& in, SemiArcId& out) {
    const Slot &a = ccw[i], &b = ccw[j];
    if (a.dir == Dir::in && b.dir == Dir::out) {
      in = a.semi_arc;
      out = b.semi_arc;
    } else if (a.dir == Dir::out && b.dir == Dir::in) {
      in = b.semi_arc;
      out = a.semi_arc;
    } else {
      not_applicable("strand does not pass through the crossing");
    }
  };
  if (under_positions_even) {
    pick(0, 2, c.under_in, c.under_out);
    pick(1, 3, c.over_in, c.over_out);
  } else {
    pick(1, 3, c.under_in, c.under_out);
    pick(0, 2, c.over_in, c.over_out);
  }
  auto cyclic_equal = [&](const std::array<Slot, 4>& got) {
    for (size_t off = 0; off < 4; ++off) {
      bool ok = true;
      for (size_t i = 0; i < 4; ++i)
        if (!(got[(i + off) % 4] == ccw[i])) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };
  c.sign = 1;
  if (cyclic_equal(c.rotation())) return c;
  c.sign = -1;
  if (cyclic_equal(c.rotation())) return c;
  not_applicable("no sign realizes the requested rotation");
}

Diagram finish(Surgeon& s) {
  Diagram out = s.build();
  ValidationReport report = out.validate();
  if (!report.ok()) not_applicable("result invalid: " + report.violations.front());
  return out;
}

// ---------------------------------------------------------------- R1

MoveResult apply_r1_up(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 3) not_applicable("R1+ needs [semi_arc, under|over, +|-]");
  const SemiArcId& a = site.args[0];
  if (!d.has_semi_arc(a)) not_applicable("unknown semi-arc " + a);
  bool first_under = site.args[1] == "under";
  if (!first_under && site.args[1] != "over") not_applicable("bad role " + site.args[1]);
  int sign = site.args[2] == "+" ? 1 : -1;

  Surgeon s(d);
  std::string loop = s.fresh_arc(a + ".l");
  std::string headpiece = s.fresh_arc(a + ".h");
  s.replace_slot(a, Dir::in, headpiece);
  Crossing c;
  c.id = s.fresh_node("k");
  c.sign = sign;
  if (first_under) {
    c.under_in = a;
    c.under_out = loop;
    c.over_in = loop;
    c.over_out = headpiece;
  } else {
    c.over_in = a;
    c.over_out = loop;
    c.under_in = loop;
    c.under_out = headpiece;
  }
  s.crossings.push_back(c);

  MoveResult result{Diagram(d), {{loop, a}, {headpiece, a}}, {}};
  result.diagram = finish(s);
  return result;
}

MoveResult apply_r1_down(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 1) not_applicable("R1- needs [crossing]");
  const Crossing* c = nullptr;
  for (const auto& cr : d.crossings())
    if (cr.id == site.args[0]) c = &cr;
  if (!c) not_applicable("unknown crossing " + site.args[0]);

  SemiArcId p1, p3;
  if (c->under_out == c->over_in) {  // first visit under
    p1 = c->under_in;
    p3 = c->over_out;
  } else if (c->over_out == c->under_in) {  // first visit over
    p1 = c->over_in;
    p3 = c->under_out;
  } else {
    not_applicable("crossing " + c->id + " is not a kink");
  }
  if (p1 == p3) not_applicable("kink is a whole component");

  Surgeon s(d);
  s.erase_crossing(c->id);
  s.replace_slot(p3, Dir::in, p1);  // merged piece keeps p1's id
  MoveResult result{Diagram(d), {}, {}};
  result.diagram = finish(s);
  return result;
}

// ---------------------------------------------------------------- R2

struct SplitPieces {
  SemiArcId p1, p2, p3;  // in travel order along the dart
};

// Split the dart's semi-arc for two new crossing visits. The piece keeping
// the old tail slot keeps the id; the piece at the old head slot is renamed.
SplitPieces split_for_two(Surgeon& s, const Dart& dart, MoveResult& result) {
  SplitPieces p;
  std::string mid = s.fresh_arc(dart.arc + ".m");
  std::string other = s.fresh_arc(dart.arc + ".h");
  s.replace_slot(dart.arc, Dir::in, other);
  result.inherit[mid] = dart.arc;
  result.inherit[other] = dart.arc;
  if (dart.fwd) {
    p.p1 = dart.arc;
    p.p2 = mid;
    p.p3 = other;
  } else {
    p.p1 = other;
    p.p2 = mid;
    p.p3 = dart.arc;
  }
  return p;
}

MoveResult apply_r2_up(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 3) not_applicable("R2+ needs [dart, dart, first|second]");
  Dart da = parse_dart(site.args[0]);
  Dart db = parse_dart(site.args[1]);
  bool first_over = site.args[2] == "first";
  if (!first_over && site.args[2] != "second") not_applicable("bad over flag");
  if (!d.has_semi_arc(da.arc) || !d.has_semi_arc(db.arc)) not_applicable("unknown semi-arc");
  if (da.arc == db.arc) not_applicable("darts must lie on distinct semi-arcs");

  // both darts on one face
  auto orbit = face_orbit(d, da);
  if (std::find(orbit.begin(), orbit.end(), db) == orbit.end())
    not_applicable("darts do not bound a common face");

  Surgeon s(d);
  MoveResult result{Diagram(d), {}, {}};
  SplitPieces A = split_for_two(s, da, result);
  SplitPieces B = split_for_two(s, db, result);

  auto dir_of = [](bool strand_fwd, bool arrives) {
    // a piece's end at a crossing is a head (in) exactly when travel arrives
    // there and the dart is forward, or travel departs and it is backward
    return (strand_fwd == arrives) ? Dir::in : Dir::out;
  };

  // c1: A pokes through B; travel rays: A in from S, out N; B in E, out W.
  std::array<Slot, 4> c1{Slot{B.p2, dir_of(db.fwd, true)}, Slot{A.p2, dir_of(da.fwd, false)},
                         Slot{B.p3, dir_of(db.fwd, false)}, Slot{A.p1, dir_of(da.fwd, true)}};
  // c2: A returns; A in from N, out S; B in E, out W.
  std::array<Slot, 4> c2{Slot{B.p1, dir_of(db.fwd, true)}, Slot{A.p2, dir_of(da.fwd, true)},
                         Slot{B.p2, dir_of(db.fwd, false)}, Slot{A.p3, dir_of(da.fwd, false)}};

  std::string id1 = s.fresh_node("p");
  std::string id2 = s.fresh_node("p");
  s.crossings.push_back(crossing_from_rotation(id1, c1, /*under even=*/first_over));
  s.crossings.push_back(crossing_from_rotation(id2, c2, first_over));

  result.diagram = finish(s);
  return result;
}

MoveResult apply_r2_down(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 2) not_applicable("R2- needs [crossing, crossing]");
  const std::string &id1 = site.args[0], &id2 = site.args[1];
  if (id1 == id2) not_applicable("need two distinct crossings");

  // locate a bigon face whose corners are exactly these two crossings
  std::vector<Dart> bigon;
  for (const auto& face : all_faces(d)) {
    if (face.size() != 2) continue;
    std::set<std::string> corners;
    for (const auto& dart : face) corners.insert(node_id(d, arrival_port(d, dart).node));
    if (corners == std::set<std::string>{id1, id2}) {
      bigon = face;
      break;
    }
  }
  if (bigon.empty()) not_applicable("no bigon between " + id1 + " and " + id2);

  const Crossing& c1 = *std::find_if(d.crossings().begin(), d.crossings().end(),
                                     [&](const Crossing& c) { return c.id == id1; });
  const Crossing& c2 = *std::find_if(d.crossings().begin(), d.crossings().end(),
                                     [&](const Crossing& c) { return c.id == id2; });
  if (c1.sign != -c2.sign) not_applicable("crossing signs do not cancel");

  auto slot_count = [](const Crossing& c, const SemiArcId& a) {
    return int(c.under_in == a) + int(c.under_out == a) + int(c.over_in == a) +
           int(c.over_out == a);
  };
  auto on_under = [](const Crossing& c, const SemiArcId& a) {
    return c.under_in == a || c.under_out == a;
  };
  auto on_over = [](const Crossing& c, const SemiArcId& a) {
    return c.over_in == a || c.over_out == a;
  };

  SemiArcId mA = bigon[0].arc, mB = bigon[1].arc;
  if (mA == mB) not_applicable("degenerate bigon");
  // each middle piece must pass each corner once (a kink loop occupies two
  // slots and is not a poke)
  for (const SemiArcId& mid : {mA, mB})
    for (const Crossing* c : {&c1, &c2})
      if (slot_count(*c, mid) != 1) not_applicable("bigon piece kinks at a corner");
  // and sit on the same level at both corners
  bool a_over = on_over(c1, mA) && on_over(c2, mA);
  bool a_under = on_under(c1, mA) && on_under(c2, mA);
  bool b_over = on_over(c1, mB) && on_over(c2, mB);
  bool b_under = on_under(c1, mB) && on_under(c2, mB);
  if (!((a_over && b_under) || (a_under && b_over)))
    not_applicable("bigon levels do not match a poke");

  // outer pieces: same-strand partners at the mid piece's endpoints
  auto partner = [&](const Crossing& c, const SemiArcId& piece, bool head_here) -> SemiArcId {
    // the continuation of the strand through c
    if (head_here) {
      if (c.under_in == piece) return c.under_out;
      if (c.over_in == piece) return c.over_out;
    } else {
      if (c.under_out == piece) return c.under_in;
      if (c.over_out == piece) return c.over_in;
    }
    not_applicable("piece not attached as expected");
  };
  struct Splice {
    SemiArcId before, mid, after;
  };
  auto plan_strand = [&](const SemiArcId& mid) -> Splice {
    const Crossing& chead = node_id(d, d.head_port(mid).node) == id1 ? c1 : c2;
    const Crossing& ctail = (&chead == &c1) ? c2 : c1;
    if (node_id(d, d.head_port(mid).node) != chead.id ||
        node_id(d, d.tail_port(mid).node) != ctail.id)
      not_applicable("mid piece does not join the two crossings");
    return Splice{partner(ctail, mid, false), mid, partner(chead, mid, true)};
  };
  Splice a = plan_strand(mA), b = plan_strand(mB);
  std::set<SemiArcId> pieces{a.before, a.mid, a.after, b.before, b.mid, b.after};
  if (pieces.size() != 6) not_applicable("strand pieces are not distinct");

  Surgeon s(d);
  MoveResult result{Diagram(d), {}, {}};
  // merged piece: before.tail .. after.head, keeping before's id
  s.replace_slot(a.after, Dir::in, a.before);
  s.replace_slot(b.after, Dir::in, b.before);
  s.erase_crossing(id1);
  s.erase_crossing(id2);
  result.diagram = finish(s);
  return result;
}

// ---------------------------------------------------------------- R3

MoveResult apply_r3(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 3) not_applicable("R3 needs three darts");
  std::array<Dart, 3> darts{parse_dart(site.args[0]), parse_dart(site.args[1]),
                            parse_dart(site.args[2])};
  for (const auto& dart : darts)
    if (!d.has_semi_arc(dart.arc)) not_applicable("unknown semi-arc " + dart.arc);
  auto orbit = face_orbit(d, darts[0]);
  if (orbit.size() != 3 || !(orbit[1] == darts[1]) || !(orbit[2] == darts[2]))
    not_applicable("darts are not a triangle face in orbit order");

  // corners: node where dart i arrives = corner between darts i and i+1
  std::array<std::string, 3> corner;
  for (size_t i = 0; i < 3; ++i) {
    Port p = arrival_port(d, darts[i]);
    if (!d.node_is_crossing(p.node)) not_applicable("triangle corner is a vertex");
    corner[i] = d.crossing_at(p.node).id;
  }
  if (corner[0] == corner[1] || corner[1] == corner[2] || corner[0] == corner[2])
    not_applicable("corners not distinct");

  auto crossing_of = [&](const std::string& id) -> const Crossing& {
    return *std::find_if(d.crossings().begin(), d.crossings().end(),
                         [&](const Crossing& c) { return c.id == id; });
  };
  auto on_over = [](const Crossing& c, const SemiArcId& a) {
    return c.over_in == a || c.over_out == a;
  };

  // strand i = the strand of mid piece darts[i].arc; its two corners are
  // corner[i] (arrival) and corner[(i+2)%3] (departure).
  std::array<int, 3> over_count{};
  for (size_t i = 0; i < 3; ++i) {
    const SemiArcId& mid = darts[i].arc;
    over_count[i] = (on_over(crossing_of(corner[i]), mid) ? 1 : 0) +
                    (on_over(crossing_of(corner[(i + 2) % 3]), mid) ? 1 : 0);
  }
  std::array<int, 3> sorted = over_count;
  std::sort(sorted.begin(), sorted.end());
  if (!(sorted[0] == 0 && sorted[1] == 1 && sorted[2] == 2))
    not_applicable("over/under pattern is cyclic; not a slide");

  // pieces per strand, in the strand's own orientation
  struct StrandPieces {
    SemiArcId w1, mid, w3;
    std::string a_node, b_node;  // mid: tail at a_node, head at b_node
  };
  std::array<StrandPieces, 3> strands;
  std::set<SemiArcId> all_pieces;
  for (size_t i = 0; i < 3; ++i) {
    StrandPieces sp;
    sp.mid = darts[i].arc;
    sp.a_node = node_id(d, d.tail_port(sp.mid).node);
    sp.b_node = node_id(d, d.head_port(sp.mid).node);
    const Crossing& ca = crossing_of(sp.a_node);
    const Crossing& cb = crossing_of(sp.b_node);
    if (ca.under_out == sp.mid)
      sp.w1 = ca.under_in;
    else if (ca.over_out == sp.mid)
      sp.w1 = ca.over_in;
    else
      not_applicable("mid piece lacks a tail slot at its corner");
    if (cb.under_in == sp.mid)
      sp.w3 = cb.under_out;
    else if (cb.over_in == sp.mid)
      sp.w3 = cb.over_out;
    else
      not_applicable("mid piece lacks a head slot at its corner");
    strands[i] = sp;
    all_pieces.insert(sp.w1);
    all_pieces.insert(sp.w3);
  }
  // Outer pieces may coincide (the three local strands can belong to one
  // global strand), but a triangle edge serving a second role would make two
  // rewrites target one slot.
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j)
      if (i != j && strands[i].mid == strands[j].mid)
        not_applicable("triangle edges are not distinct");
    if (all_pieces.count(strands[i].mid))
      not_applicable("a triangle edge doubles as an outer piece");
  }

  // swap the order of the two crossings along each strand
  Surgeon s(d);
  std::vector<std::pair<SlotAddr, SemiArcId>> writes;
  for (const auto& sp : strands) {
    writes.push_back({s.locate(sp.mid, Dir::in), sp.w1});   // at b: w1 now arrives
    writes.push_back({s.locate(sp.w3, Dir::out), sp.mid});  // at b: mid now departs
    writes.push_back({s.locate(sp.w1, Dir::in), sp.mid});   // at a: mid now arrives
    writes.push_back({s.locate(sp.mid, Dir::out), sp.w3});  // at a: w3 now departs
  }
  for (const auto& [addr, arc] : writes) s.write(addr, arc);

  MoveResult result{Diagram(d), {}, {}};
  result.diagram = finish(s);
  return result;
}

// ---------------------------------------------------------------- R4

MoveResult apply_r4_collapse(const Diagram& d, const MoveSite& site, bool w_over) {
  if (site.args.size() != 4) not_applicable("R4 collapse needs [collapse, dart, dart, dart]");
  std::array<Dart, 3> darts{parse_dart(site.args[1]), parse_dart(site.args[2]),
                            parse_dart(site.args[3])};
  for (const auto& dart : darts)
    if (!d.has_semi_arc(dart.arc)) not_applicable("unknown semi-arc " + dart.arc);
  auto orbit = face_orbit(d, darts[0]);
  if (orbit.size() != 3 || !(orbit[1] == darts[1]) || !(orbit[2] == darts[2]))
    not_applicable("darts are not a triangle face in orbit order");

  // normalized pattern: d0 = strand dart (corners cb then ca), d1 arrives at
  // the vertex, d2 departs it: corner(d0->d1)=cb, corner(d1->d2)=tau,
  // corner(d2->d0)=ca.
  Port pb = arrival_port(d, darts[0]);
  Port pt = arrival_port(d, darts[1]);
  Port pa = arrival_port(d, darts[2]);
  if (!d.node_is_crossing(pb.node) || d.node_is_crossing(pt.node) ||
      !d.node_is_crossing(pa.node))
    not_applicable("corner pattern is not (crossing, vertex, crossing)");
  const Crossing cb = d.crossing_at(pb.node);
  const Crossing ca = d.crossing_at(pa.node);
  const Vertex tau = d.vertex_at(pt.node);
  if (ca.id == cb.id) not_applicable("corners not distinct");

  const SemiArcId w_mid = darts[0].arc;
  const SemiArcId e2p = darts[1].arc;  // cb <-> tau
  const SemiArcId e1p = darts[2].arc;  // tau <-> ca

  auto slot_count = [](const Crossing& c, const SemiArcId& a) {
    return int(c.under_in == a) + int(c.under_out == a) + int(c.over_in == a) +
           int(c.over_out == a);
  };
  if (slot_count(ca, w_mid) != 1 || slot_count(cb, w_mid) != 1 || slot_count(ca, e1p) != 1 ||
      slot_count(cb, e2p) != 1)
    not_applicable("a piece kinks at a corner");
  auto on_over = [](const Crossing& c, const SemiArcId& a) {
    return c.over_in == a || c.over_out == a;
  };
  bool over_a = on_over(ca, w_mid), over_b = on_over(cb, w_mid);
  if (over_a != over_b) not_applicable("strand level differs at the two crossings");
  if (over_a != w_over) not_applicable("strand level does not match the move kind");

  // W pieces in strand orientation: w1 -> w_mid -> w3
  auto partner_in = [&](const Crossing& c, const SemiArcId& piece) -> SemiArcId {
    if (c.under_out == piece) return c.under_in;
    if (c.over_out == piece) return c.over_in;
    not_applicable("piece not a tail at its corner");
  };
  auto partner_out = [&](const Crossing& c, const SemiArcId& piece) -> SemiArcId {
    if (c.under_in == piece) return c.under_out;
    if (c.over_in == piece) return c.over_out;
    not_applicable("piece not a head at its corner");
  };
  std::string w_tail_node = node_id(d, d.tail_port(w_mid).node);
  const Crossing& c_at_tail = (w_tail_node == ca.id) ? ca : cb;
  const Crossing& c_at_head = (w_tail_node == ca.id) ? cb : ca;
  if (node_id(d, d.tail_port(w_mid).node) != c_at_tail.id ||
      node_id(d, d.head_port(w_mid).node) != c_at_head.id)
    not_applicable("strand dart does not join the two crossings");
  SemiArcId w1 = partner_in(c_at_tail, w_mid);
  SemiArcId w3 = partner_out(c_at_head, w_mid);

  // edge pieces and their far continuations
  SemiArcId e1_far = (ca.under_in == e1p)    ? ca.under_out
                     : (ca.under_out == e1p) ? ca.under_in
                     : (ca.over_in == e1p)   ? ca.over_out
                     : (ca.over_out == e1p)  ? ca.over_in
                                             : SemiArcId();
  SemiArcId e2_far = (cb.under_in == e2p)    ? cb.under_out
                     : (cb.under_out == e2p) ? cb.under_in
                     : (cb.over_in == e2p)   ? cb.over_out
                     : (cb.over_out == e2p)  ? cb.over_in
                                             : SemiArcId();
  if (e1_far.empty() || e2_far.empty()) not_applicable("edge pieces not at the crossings");

  // third edge at the vertex
  SemiArcId e3;
  Dir e3_dir = Dir::in;
  for (const auto& slot : tau.slots)
    if (slot.semi_arc != e1p && slot.semi_arc != e2p) {
      e3 = slot.semi_arc;
      e3_dir = slot.dir;
    }
  if (e3.empty()) not_applicable("vertex lacks a third edge");

  std::set<SemiArcId> pieces{w1, w_mid, w3, e1p, e1_far, e2p, e2_far, e3};
  if (pieces.size() != 8) not_applicable("pieces are not distinct");
  // e3 must not end at the crossings being removed, and not be a petal
  for (const auto& port : {d.head_port(e3), d.tail_port(e3)}) {
    std::string n = node_id(d, port.node);
    if (n == ca.id || n == cb.id) not_applicable("third edge meets a removed crossing");
  }
  if (d.head_port(e3).node == d.tail_port(e3).node &&
      node_id(d, d.head_port(e3).node) == tau.id)
    not_applicable("third edge is a petal loop");

  Surgeon s(d);
  MoveResult result{Diagram(d), {}, {}};
  s.erase_crossing(ca.id);
  s.erase_crossing(cb.id);

  // merge e1: keep the tail-side piece's id
  auto merge_edge = [&](const SemiArcId& near, const SemiArcId& far, const std::string& cid) {
    bool near_has_tail = node_id(d, d.tail_port(near).node) != cid;
    if (near_has_tail) {
      // near: tail away, head at crossing; far: tail at crossing, head away
      s.replace_slot(far, Dir::in, near);
      return near;
    }
    // near's tail at the crossing; far's head at the crossing
    s.replace_slot(near, Dir::in, far);
    return far;
  };
  merge_edge(e1p, e1_far, ca.id);
  merge_edge(e2p, e2_far, cb.id);

  // split e3 at the new crossing
  std::string c0 = s.fresh_node("q");
  SemiArcId near_piece, far_piece;
  if (e3_dir == Dir::out) {
    near_piece = e3;
    far_piece = s.fresh_arc(e3 + ".f");
    s.replace_slot(e3, Dir::in, far_piece);
    result.inherit[far_piece] = e3;
  } else {
    far_piece = e3;
    near_piece = s.fresh_arc(e3 + ".n");
    s.replace_slot(e3, Dir::in, near_piece);  // the slot at tau
    result.inherit[near_piece] = e3;
  }

  // rotation at c0: W east-west, e3 north-south (near = south toward tau)
  bool w_fwd = darts[0].fwd;
  Slot east = w_fwd ? Slot{w3, Dir::out} : Slot{w1, Dir::in};
  Slot west = w_fwd ? Slot{w1, Dir::in} : Slot{w3, Dir::out};
  Slot north = (e3_dir == Dir::out) ? Slot{far_piece, Dir::out} : Slot{far_piece, Dir::in};
  Slot south = (e3_dir == Dir::out) ? Slot{near_piece, Dir::in} : Slot{near_piece, Dir::out};
  std::array<Slot, 4> ccw{east, north, west, south};
  s.crossings.push_back(crossing_from_rotation(c0, ccw, /*under even=*/!w_over));

  result.diagram = finish(s);
  return result;
}

MoveResult apply_r4_expand(const Diagram& d, const MoveSite& site, bool w_over) {
  if (site.args.size() != 4) not_applicable("R4 expand needs [expand, crossing, vertex, piece]");
  const std::string& c0_id = site.args[1];
  const std::string& tau_id = site.args[2];
  const SemiArcId& P = site.args[3];

  const Crossing* c0 = nullptr;
  for (const auto& c : d.crossings())
    if (c.id == c0_id) c0 = &c;
  if (!c0) not_applicable("unknown crossing " + c0_id);
  const Vertex* tau = nullptr;
  for (const auto& v : d.vertices())
    if (v.id == tau_id) tau = &v;
  if (!tau) not_applicable("unknown vertex " + tau_id);
  if (!d.has_semi_arc(P)) not_applicable("unknown semi-arc " + P);

  // P joins c0 and tau
  std::string hn = node_id(d, d.head_port(P).node);
  std::string tn = node_id(d, d.tail_port(P).node);
  if (!((hn == c0_id && tn == tau_id) || (hn == tau_id && tn == c0_id)))
    not_applicable("piece does not join the crossing and the vertex");

  bool p_under = (c0->under_in == P || c0->under_out == P);
  bool p_over = (c0->over_in == P || c0->over_out == P);
  if (p_under == p_over) not_applicable("piece level ambiguous at the crossing");
  // W passes over exactly when P's strand is the under strand
  if (p_under != w_over) not_applicable("piece level does not match the move kind");

  // locate P's slot in c0's rotation; the opposite slot is P's continuation F
  auto rot = c0->rotation();
  size_t ip = 4;
  for (size_t i = 0; i < 4; ++i)
    if (rot[i].semi_arc == P &&
        ((rot[i].dir == Dir::in && hn == c0_id) || (rot[i].dir == Dir::out && tn == c0_id)))
      ip = i;
  if (ip == 4) not_applicable("piece slot not found");
  Slot east_slot = rot[(ip + 1) % 4];
  Slot north_slot = rot[(ip + 2) % 4];
  Slot west_slot = rot[(ip + 3) % 4];
  SemiArcId F = north_slot.semi_arc;
  if (F == P) not_applicable("piece continues into itself");

  // W pieces: oriented; the arriving piece has its head at c0
  SemiArcId w_in = (east_slot.dir == Dir::in) ? east_slot.semi_arc : west_slot.semi_arc;
  SemiArcId w_out = (east_slot.dir == Dir::in) ? west_slot.semi_arc : east_slot.semi_arc;
  bool w_east_oriented = (west_slot.dir == Dir::in);  // arrives from the west
  if (w_in == w_out) not_applicable("strand kinks at the crossing");

  // tau's other edges: ccw after P's slot
  size_t it = 4;
  for (size_t i = 0; i < 3; ++i)
    if (tau->slots[i].semi_arc == P) it = i;
  if (it == 4) not_applicable("piece not at the vertex");
  Slot x_slot = tau->slots[(it + 1) % 3];
  Slot y_slot = tau->slots[(it + 2) % 3];
  if (x_slot.semi_arc == P || y_slot.semi_arc == P) not_applicable("piece is a petal");

  std::set<SemiArcId> pieces{P, F, w_in, w_out, x_slot.semi_arc, y_slot.semi_arc};
  if (pieces.size() != 6) not_applicable("pieces are not distinct");
  // x, y must not end at c0 (it is being removed)
  for (const SemiArcId& e : {x_slot.semi_arc, y_slot.semi_arc})
    for (const auto& port : {d.head_port(e), d.tail_port(e)})
      if (node_id(d, port.node) == c0_id) not_applicable("vertex edge meets the crossing");

  Surgeon s(d);
  MoveResult result{Diagram(d), {}, {}};
  s.erase_crossing(c0_id);

  // merge P with F across the removed crossing (keep the tail-side id)
  bool p_tail_at_tau = (tn == tau_id);
  if (p_tail_at_tau) {
    s.replace_slot(F, Dir::in, P);
  } else {
    s.replace_slot(P, Dir::in, F);  // the slot at tau
  }

  // split x and y near tau
  auto split_edge = [&](const Slot& slot, SemiArcId& near, SemiArcId& far) {
    const SemiArcId& e = slot.semi_arc;
    if (d.head_port(e).node == d.tail_port(e).node) not_applicable("vertex edge is a petal");
    if (slot.dir == Dir::out) {
      near = e;
      far = s.fresh_arc(e + ".f");
      s.replace_slot(e, Dir::in, far);
      result.inherit[far] = e;
    } else {
      far = e;
      near = s.fresh_arc(e + ".n");
      s.replace_slot(e, Dir::in, near);  // the slot at tau
      result.inherit[near] = e;
    }
  };
  SemiArcId x_near, x_far, y_near, y_far;
  split_edge(x_slot, x_near, x_far);
  split_edge(y_slot, y_near, y_far);

  // new W mid piece, oriented with the strand
  SemiArcId mid = s.fresh_arc(w_in + ".m");
  result.inherit[mid] = w_in;

  // crossings: W below tau; x at ray 215 (tau side 35), y at 325 (tau side 145)
  auto near_out = [](const Slot& slot) { return slot.dir == Dir::out; };
  Slot x_tau_side = near_out(x_slot) ? Slot{x_near, Dir::in} : Slot{x_near, Dir::out};
  Slot x_far_side = near_out(x_slot) ? Slot{x_far, Dir::out} : Slot{x_far, Dir::in};
  Slot y_tau_side = near_out(y_slot) ? Slot{y_near, Dir::in} : Slot{y_near, Dir::out};
  Slot y_far_side = near_out(y_slot) ? Slot{y_far, Dir::out} : Slot{y_far, Dir::in};

  std::string ka = s.fresh_node("q");
  std::string kb = s.fresh_node("q");
  if (w_east_oriented) {
    // W meets x first: at ca: [mid out @0, x_tau @35, w_in in @180, x_far @215]
    std::array<Slot, 4> ca{Slot{mid, Dir::out}, x_tau_side, Slot{w_in, Dir::in}, x_far_side};
    std::array<Slot, 4> cb{Slot{w_out, Dir::out}, y_tau_side, Slot{mid, Dir::in}, y_far_side};
    // W sits on the even positions of both lists
    s.crossings.push_back(crossing_from_rotation(ka, ca, /*under even=*/!w_over));
    s.crossings.push_back(crossing_from_rotation(kb, cb, !w_over));
  } else {
    // W oriented west: meets y first
    std::array<Slot, 4> cb{Slot{w_in, Dir::in}, y_tau_side, Slot{mid, Dir::out}, y_far_side};
    std::array<Slot, 4> ca{Slot{mid, Dir::in}, x_tau_side, Slot{w_out, Dir::out}, x_far_side};
    s.crossings.push_back(crossing_from_rotation(kb, cb, !w_over));
    s.crossings.push_back(crossing_from_rotation(ka, ca, !w_over));
  }

  result.diagram = finish(s);
  return result;
}

// ---------------------------------------------------------------- R5

MoveResult apply_r5_twist(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 4)
    not_applicable("R5 twist needs [twist, vertex, slot, first|second]");
  const std::string& tau_id = site.args[1];
  size_t slot_i = std::stoul(site.args[2]);
  bool first_over = site.args[3] == "first";
  if (slot_i > 2) not_applicable("slot index out of range");

  const Vertex* tau = nullptr;
  for (const auto& v : d.vertices())
    if (v.id == tau_id) tau = &v;
  if (!tau) not_applicable("unknown vertex " + tau_id);

  Slot sa = tau->slots[slot_i];
  Slot sb = tau->slots[(slot_i + 1) % 3];
  if (sa.semi_arc == sb.semi_arc) not_applicable("cannot twist a petal against itself");

  Surgeon s(d);
  MoveResult result{Diagram(d), {}, {}};

  // split each edge at the new crossing; the near piece attaches to tau
  auto split_near = [&](const Slot& slot, SemiArcId& near, SemiArcId& far) {
    const SemiArcId& e = slot.semi_arc;
    if (slot.dir == Dir::out) {
      near = e;  // keeps its tail slot at tau
      far = s.fresh_arc(e + ".f");
      s.replace_slot(e, Dir::in, far);
      result.inherit[far] = e;
    } else {
      far = e;
      near = s.fresh_arc(e + ".n");
      s.replace_slot(e, Dir::in, near);  // tau's slot
      result.inherit[near] = e;
    }
  };
  SemiArcId a_near, a_far, b_near, b_far;
  split_near(sa, a_near, a_far);
  split_near(sb, b_near, b_far);

  // swap the two slots at tau
  Vertex& vt = s.vertex_ref(tau_id);
  vt.slots[slot_i] = Slot{b_near, sb.dir};
  vt.slots[(slot_i + 1) % 3] = Slot{a_near, sa.dir};

  // crossing geometry (hand +): ccw (a_far@45, b_far@135, a_near@205, b_near@335)
  auto far_slot = [&](const Slot& orig, const SemiArcId& far) {
    return (orig.dir == Dir::in) ? Slot{far, Dir::in} : Slot{far, Dir::out};
  };
  auto near_slot = [&](const Slot& orig, const SemiArcId& near) {
    return (orig.dir == Dir::in) ? Slot{near, Dir::out} : Slot{near, Dir::in};
  };
  Slot A_far = far_slot(sa, a_far), A_near = near_slot(sa, a_near);
  Slot B_far = far_slot(sb, b_far), B_near = near_slot(sb, b_near);

  std::string cid = s.fresh_node("t");
  // ccw rays at the crossing: a_far, b_far, a_near, b_near; strand a on the
  // even positions. The two twist chiralities are the two over choices.
  std::array<Slot, 4> ccw{A_far, B_far, A_near, B_near};
  bool under_even = !first_over;
  s.crossings.push_back(crossing_from_rotation(cid, ccw, under_even));

  result.diagram = finish(s);
  return result;
}

MoveResult apply_r5_untwist(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 2) not_applicable("R5 untwist needs [untwist, crossing]");
  const std::string& cid = site.args[1];
  const Crossing* c = nullptr;
  for (const auto& cr : d.crossings())
    if (cr.id == cid) c = &cr;
  if (!c) not_applicable("unknown crossing " + cid);

  // find the bigon face with corners {c, some vertex}
  std::vector<Dart> bigon;
  std::string tau_id;
  for (const auto& face : all_faces(d)) {
    if (face.size() != 2) continue;
    Port p0 = arrival_port(d, face[0]);
    Port p1 = arrival_port(d, face[1]);
    bool c_first = d.node_is_crossing(p0.node) && node_id(d, p0.node) == cid &&
                   !d.node_is_crossing(p1.node);
    bool c_second = d.node_is_crossing(p1.node) && node_id(d, p1.node) == cid &&
                    !d.node_is_crossing(p0.node);
    if (c_first || c_second) {
      bigon = face;
      tau_id = node_id(d, c_first ? p1.node : p0.node);
      break;
    }
  }
  if (bigon.empty()) not_applicable("no twist bigon at " + cid);

  SemiArcId n1 = bigon[0].arc, n2 = bigon[1].arc;
  if (n1 == n2) not_applicable("degenerate bigon");

  const Vertex* tau = nullptr;
  for (const auto& v : d.vertices())
    if (v.id == tau_id) tau = &v;
  assert(tau);

  // both near pieces join c and tau
  for (const SemiArcId& n : {n1, n2}) {
    std::set<std::string> ends{node_id(d, d.head_port(n).node),
                               node_id(d, d.tail_port(n).node)};
    if (ends != std::set<std::string>{cid, tau_id})
      not_applicable("bigon piece does not join crossing and vertex");
  }

  // far partners at the crossing
  auto partner_at_c = [&](const SemiArcId& n) -> SemiArcId {
    if (c->under_in == n) return c->under_out;
    if (c->under_out == n) return c->under_in;
    if (c->over_in == n) return c->over_out;
    if (c->over_out == n) return c->over_in;
    not_applicable("piece not at the crossing");
  };
  SemiArcId f1 = partner_at_c(n1), f2 = partner_at_c(n2);
  std::set<SemiArcId> pieces{n1, n2, f1, f2};
  if (pieces.size() != 4) not_applicable("pieces are not distinct");

  // slot indices at tau
  size_t i1 = 3, i2 = 3;
  for (size_t i = 0; i < 3; ++i) {
    if (tau->slots[i].semi_arc == n1) i1 = i;
    if (tau->slots[i].semi_arc == n2) i2 = i;
  }
  if (i1 == 3 || i2 == 3) not_applicable("near pieces not at the vertex");

  Surgeon s(d);
  MoveResult result{Diagram(d), {}, {}};

  // merge each strand across the crossing, keeping the tail-side id
  auto merge_strand = [&](const SemiArcId& near, const SemiArcId& far) -> SemiArcId {
    bool near_has_tail = node_id(d, d.tail_port(near).node) == tau_id;
    // exactly one of near/far has its head at the crossing
    if (near_has_tail) {
      // near: tau -> c; far: c -> elsewhere; merged keeps near's id
      s.replace_slot(far, Dir::in, near);
      return near;
    }
    // near: c -> tau; far: elsewhere -> c; merged keeps far's id
    s.replace_slot(near, Dir::in, far);
    return far;
  };
  SemiArcId m1 = merge_strand(n1, f1);
  SemiArcId m2 = merge_strand(n2, f2);

  // untwist: swap the two vertex slots (edge of the other near piece)
  Vertex& vt = s.vertex_ref(tau_id);
  Dir d1 = tau->slots[i1].dir, d2 = tau->slots[i2].dir;
  vt.slots[i1] = Slot{m2, d2};
  vt.slots[i2] = Slot{m1, d1};

  s.erase_crossing(cid);
  result.diagram = finish(s);
  return result;
}

// ---------------------------------------------------------------- R6

MoveResult apply_r6(const Diagram& d, const MoveSite& site) {
  if (site.args.size() != 2) not_applicable("R6 needs [neck, down|up]");
  const SemiArcId& g = site.args[0];
  bool down = site.args[1] == "down";
  if (!down && site.args[1] != "up") not_applicable("bad neck orientation flag");
  if (!d.has_semi_arc(g)) not_applicable("unknown semi-arc " + g);

  Port hp = d.head_port(g), tp = d.tail_port(g);
  if (d.node_is_crossing(hp.node) || d.node_is_crossing(tp.node))
    not_applicable("neck must join two vertices");
  if (hp.node == tp.node) not_applicable("neck is a petal");
  const Vertex th = d.vertex_at(hp.node);  // head vertex
  const Vertex tt = d.vertex_at(tp.node);  // tail vertex

  // ccw after the neck slot
  size_t it = 3, ih = 3;
  for (size_t i = 0; i < 3; ++i) {
    if (tt.slots[i].semi_arc == g && tt.slots[i].dir == Dir::out) it = i;
    if (th.slots[i].semi_arc == g && th.slots[i].dir == Dir::in) ih = i;
  }
  assert(it < 3 && ih < 3);
  Slot p = tt.slots[(it + 1) % 3], q = tt.slots[(it + 2) % 3];
  Slot r = th.slots[(ih + 1) % 3], ss = th.slots[(ih + 2) % 3];

  Surgeon s(d);
  MoveResult result{Diagram(d), {}, {}};
  std::string gp = s.fresh_arc(g + ".i");
  std::string top_id = s.fresh_node("v");
  std::string bot_id = s.fresh_node("v");

  Slot g_top{gp, down ? Dir::out : Dir::in};
  Slot g_bot{gp, down ? Dir::in : Dir::out};
  Vertex top{top_id, {ss, p, g_top}};
  Vertex bot{bot_id, {g_bot, q, r}};
  for (const Vertex* v : {&top, &bot}) {
    int ins = 0, outs = 0;
    for (const auto& slot : v->slots) (slot.dir == Dir::in ? ins : outs)++;
    if (ins == 0 || outs == 0) not_applicable("neck orientation breaks the Y-orientation");
  }

  s.erase_vertex(tt.id);
  s.erase_vertex(th.id);
  s.vertices.push_back(top);
  s.vertices.push_back(bot);
  result.computed.push_back(gp);
  result.diagram = finish(s);
  return result;
}

}  // namespace

MoveResult apply_move(const Diagram& d, const MoveSite& site) {
  switch (site.kind) {
    case MoveKind::R1p: return apply_r1_up(d, site);
    case MoveKind::R1m: return apply_r1_down(d, site);
    case MoveKind::R2p: return apply_r2_up(d, site);
    case MoveKind::R2m: return apply_r2_down(d, site);
    case MoveKind::R3: return apply_r3(d, site);
    case MoveKind::R4over:
    case MoveKind::R4under: {
      bool w_over = site.kind == MoveKind::R4over;
      if (!site.args.empty() && site.args[0] == "collapse") return apply_r4_collapse(d, site, w_over);
      if (!site.args.empty() && site.args[0] == "expand") return apply_r4_expand(d, site, w_over);
      not_applicable("R4 needs collapse or expand direction");
    }
    case MoveKind::R5: {
      if (!site.args.empty() && site.args[0] == "twist") return apply_r5_twist(d, site);
      if (!site.args.empty() && site.args[0] == "untwist") return apply_r5_untwist(d, site);
      not_applicable("R5 needs twist or untwist direction");
    }
    case MoveKind::R6: return apply_r6(d, site);
  }
  not_applicable("unknown kind");
}

std::vector<MoveSite> enumerate_applicable(const Diagram& d) {
  std::vector<MoveSite> sites;

  // R1+
  for (const auto& id : d.semi_arcs())
    for (const char* role : {"under", "over"})
      for (const char* sign : {"+", "-"})
        sites.push_back({MoveKind::R1p, {id, role, sign}});

  // R1-
  for (const auto& c : d.crossings())
    if (c.under_out == c.over_in || c.over_out == c.under_in)
      sites.push_back({MoveKind::R1m, {c.id}});

  auto faces = all_faces(d);

  // R2+
  for (const auto& face : faces) {
    for (size_t i = 0; i < face.size(); ++i)
      for (size_t j = 0; j < face.size(); ++j) {
        if (i == j || face[i].arc == face[j].arc) continue;
        for (const char* over : {"first", "second"})
          sites.push_back({MoveKind::R2p, {face[i].text(), face[j].text(), over}});
      }
  }

  // R2-
  for (const auto& face : faces) {
    if (face.size() != 2) continue;
    Port p0 = arrival_port(d, face[0]);
    Port p1 = arrival_port(d, face[1]);
    if (!d.node_is_crossing(p0.node) || !d.node_is_crossing(p1.node)) continue;
    std::string a = node_id(d, p0.node), b = node_id(d, p1.node);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    MoveSite site{MoveKind::R2m, {a, b}};
    if (std::find(sites.begin(), sites.end(), site) == sites.end()) {
      // check the level pattern cheaply by attempting nothing here; pattern
      // checks run in apply. Only keep cancelling signs.
      const Crossing* ca = nullptr;
      const Crossing* cb = nullptr;
      for (const auto& c : d.crossings()) {
        if (c.id == a) ca = &c;
        if (c.id == b) cb = &c;
      }
      if (ca && cb && ca->sign == -cb->sign) sites.push_back(site);
    }
  }

  // R3 and R4 collapse
  for (const auto& face : faces) {
    if (face.size() != 3) continue;
    std::array<Port, 3> ports{arrival_port(d, face[0]), arrival_port(d, face[1]),
                              arrival_port(d, face[2])};
    int vertex_count = 0, vertex_at = -1;
    for (int i = 0; i < 3; ++i)
      if (!d.node_is_crossing(ports[i].node)) {
        vertex_count++;
        vertex_at = i;
      }
    if (vertex_count == 0) {
      // candidate R3; checks run in apply
      size_t start = 0;
      for (size_t i = 1; i < 3; ++i)
        if (face[i] < face[start]) start = i;
      sites.push_back({MoveKind::R3,
                       {face[start].text(), face[(start + 1) % 3].text(),
                        face[(start + 2) % 3].text()}});
    } else if (vertex_count == 1) {
      // normalize: vertex corner between darts 1 and 2
      size_t start = (vertex_at + 2) % 3;  // dart arriving at the vertex is #1
      std::array<Dart, 3> darts{face[start], face[(start + 1) % 3], face[(start + 2) % 3]};
      // level of the strand dart
      Port pw = arrival_port(d, darts[0]);
      if (!d.node_is_crossing(pw.node)) continue;
      const Crossing& cw = d.crossing_at(pw.node);
      bool over = cw.over_in == darts[0].arc || cw.over_out == darts[0].arc;
      sites.push_back({over ? MoveKind::R4over : MoveKind::R4under,
                       {"collapse", darts[0].text(), darts[1].text(), darts[2].text()}});
    }
  }

  // R4 expand
  for (const auto& c : d.crossings()) {
    for (const SemiArcId& piece : {c.under_in, c.under_out, c.over_in, c.over_out}) {
      Port hp = d.head_port(piece), tp = d.tail_port(piece);
      std::string other;
      if (node_id(d, hp.node) == c.id && !d.node_is_crossing(tp.node))
        other = node_id(d, tp.node);
      else if (node_id(d, tp.node) == c.id && !d.node_is_crossing(hp.node))
        other = node_id(d, hp.node);
      else
        continue;
      bool p_under = (c.under_in == piece || c.under_out == piece);
      MoveSite site{p_under ? MoveKind::R4over : MoveKind::R4under,
                    {"expand", c.id, other, piece}};
      if (std::find(sites.begin(), sites.end(), site) == sites.end()) sites.push_back(site);
    }
  }

  // R5 twist
  for (const auto& v : d.vertices())
    for (size_t i = 0; i < 3; ++i) {
      if (v.slots[i].semi_arc == v.slots[(i + 1) % 3].semi_arc) continue;
      for (const char* over : {"first", "second"})
        sites.push_back({MoveKind::R5, {"twist", v.id, std::to_string(i), over}});
    }

  // R5 untwist
  for (const auto& face : faces) {
    if (face.size() != 2) continue;
    Port p0 = arrival_port(d, face[0]);
    Port p1 = arrival_port(d, face[1]);
    bool c0 = d.node_is_crossing(p0.node), c1 = d.node_is_crossing(p1.node);
    if (c0 == c1) continue;
    std::string cid = node_id(d, c0 ? p0.node : p1.node);
    MoveSite site{MoveKind::R5, {"untwist", cid}};
    if (std::find(sites.begin(), sites.end(), site) == sites.end()) sites.push_back(site);
  }

  // R6
  for (const auto& id : d.semi_arcs()) {
    Port hp = d.head_port(id), tp = d.tail_port(id);
    if (d.node_is_crossing(hp.node) || d.node_is_crossing(tp.node)) continue;
    if (hp.node == tp.node) continue;
    for (const char* orient : {"down", "up"}) sites.push_back({MoveKind::R6, {id, orient}});
  }

  return sites;
}

Flow transport_flow(const Diagram& before, const Flow& flow, const MoveResult& result) {
  if (flow.values.size() != before.semi_arc_count())
    throw make_error("InvalidFlow", "flow does not cover the source diagram");
  Flow out;
  out.m = flow.m;
  std::set<SemiArcId> pending(result.computed.begin(), result.computed.end());
  for (const auto& id : result.diagram.semi_arcs()) {
    if (pending.count(id)) continue;
    auto it = result.inherit.find(id);
    const SemiArcId& src = (it != result.inherit.end()) ? it->second : id;
    auto vt = flow.values.find(src);
    if (vt == flow.values.end())
      throw make_error("InvalidFlow", "no source value for semi-arc " + id);
    out.values[id] = vt->second;
  }
  // necks: vertex conservation determines the one unknown
  for (const auto& id : pending) {
    Port port = result.diagram.head_port(id);
    const Vertex& v = result.diagram.vertex_at(port.node);
    int64_t sum = 0;
    int64_t sign_of_unknown = 0;
    for (const auto& slot : v.slots) {
      int64_t sgn = (slot.dir == Dir::in) ? 1 : -1;
      if (slot.semi_arc == id && out.values.find(slot.semi_arc) == out.values.end()) {
        sign_of_unknown = sgn;
        continue;
      }
      sum += sgn * out.values.at(slot.semi_arc);
    }
    int64_t value = ((-sum * sign_of_unknown) % static_cast<int64_t>(flow.m) +
                     static_cast<int64_t>(flow.m)) %
                    static_cast<int64_t>(flow.m);
    out.values[id] = value;
  }
  return out;
}

Diagram random_equivalent(const Diagram& d, uint64_t seed, size_t steps, size_t max_crossings,
                          size_t max_vertices) {
  std::mt19937_64 rng(seed);
  Diagram cur = d;
  for (size_t step = 0; step < steps; ++step) {
    auto sites = enumerate_applicable(cur);
    // keep within the size budget
    std::vector<MoveSite> allowed;
    size_t n = cur.crossings().size();
    for (const auto& site : sites) {
      size_t next_n = n;
      switch (site.kind) {
        case MoveKind::R1p: next_n = n + 1; break;
        case MoveKind::R1m: next_n = n - 1; break;
        case MoveKind::R2p: next_n = n + 2; break;
        case MoveKind::R2m: next_n = n - 2; break;
        case MoveKind::R3: next_n = n; break;
        case MoveKind::R4over:
        case MoveKind::R4under:
          next_n = site.args[0] == "collapse" ? n - 1 : n + 1;
          break;
        case MoveKind::R5: next_n = site.args[0] == "twist" ? n + 1 : n - 1; break;
        case MoveKind::R6: next_n = n; break;
      }
      if (next_n <= max_crossings && cur.vertices().size() <= max_vertices)
        allowed.push_back(site);
    }
    if (allowed.empty()) break;
    size_t idx = static_cast<size_t>(rng() % allowed.size());
    bool applied = false;
    for (size_t attempt = 0; attempt < allowed.size() && !applied; ++attempt) {
      const MoveSite& site = allowed[(idx + attempt) % allowed.size()];
      try {
        cur = apply_move(cur, site).diagram;
        applied = true;
      } catch (const Error&) {
        // site did not apply; try the next one
      }
    }
    if (!applied) break;
  }
  return cur;
}

}  // namespace hbk
