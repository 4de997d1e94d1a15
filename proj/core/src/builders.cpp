#include "hbk/builders.hpp"

namespace hbk::builders {

Diagram kinked_unknot(int sign, bool first_under) {
  Crossing c;
  c.id = "k";
  c.sign = sign;
  if (first_under) {
    c.under_in = "x1";
    c.under_out = "x2";
    c.over_in = "x2";
    c.over_out = "x1";
  } else {
    c.over_in = "x1";
    c.over_out = "x2";
    c.under_in = "x2";
    c.under_out = "x1";
  }
  return Diagram("kinked-unknot", {c}, {});
}

Diagram theta_with_kink() {
  // Edges a (kinked, pieces a1 -> loop a2 -> a3), b: v1 -> v2, g: v2 -> v1.
  Crossing k{"k", 1, /*under_in=*/"a1", /*under_out=*/"a2", /*over_in=*/"a2",
             /*over_out=*/"a3"};
  Vertex v1{"v1", {Slot{"g", Dir::in}, Slot{"a1", Dir::out}, Slot{"b", Dir::out}}};
  Vertex v2{"v2", {Slot{"a3", Dir::in}, Slot{"g", Dir::out}, Slot{"b", Dir::in}}};
  return Diagram("theta-with-kink", {k}, {v1, v2});
}

Diagram two_crossing_genus2() {
  Crossing c1{"c1", 1, /*under_in=*/"x4", /*under_out=*/"x1", /*over_in=*/"x2",
              /*over_out=*/"x3"};
  Crossing c2{"c2", 1, /*under_in=*/"x6", /*under_out=*/"x2", /*over_in=*/"x7",
              /*over_out=*/"x4"};
  // t1 is merge-type: x1, x3 in, x5 out; t2 is split-type: x5 in, x6, x7 out.
  Vertex t1{"t1", {Slot{"x5", Dir::out}, Slot{"x1", Dir::in}, Slot{"x3", Dir::in}}};
  Vertex t2{"t2", {Slot{"x5", Dir::in}, Slot{"x6", Dir::out}, Slot{"x7", Dir::out}}};
  return Diagram("two-crossing-genus2", {c1, c2}, {t1, t2});
}

Diagram trefoil() {
  // Closed 2-braid with three positive generators; li / ri are the left /
  // right strand pieces between consecutive crossings (indices mod 3).
  auto gen = [](const std::string& id, const std::string& bl, const std::string& br,
                const std::string& tl, const std::string& tr) {
    // bottom-left strand passes over to top-right
    return Crossing{id, 1, /*under_in=*/br, /*under_out=*/tl, /*over_in=*/bl,
                    /*over_out=*/tr};
  };
  Crossing c1 = gen("c1", "l3", "r3", "l1", "r1");
  Crossing c2 = gen("c2", "l1", "r1", "l2", "r2");
  Crossing c3 = gen("c3", "l2", "r2", "l3", "r3");
  return Diagram("trefoil", {c1, c2, c3}, {});
}

Diagram trivial_genus(size_t g) {
  if (g == 0) throw make_error("InvalidArgument", "genus must be >= 1");
  if (g == 1) return kinked_unknot().with_name("trivial-genus1");

  std::vector<Crossing> crossings;
  std::vector<Vertex> vertices;
  auto piece = [](size_t i, const std::string& part) {
    return "c" + std::to_string(i) + "." + part;
  };
  auto conn = [](size_t i) { return "d" + std::to_string(i); };

  // Circle 1 carries the kink (crossing K) and, at 3 o'clock, vertex a1.
  crossings.push_back(Crossing{"k", 1, /*under_in=*/piece(1, "top"),
                               /*under_out=*/piece(1, "loop"), /*over_in=*/piece(1, "loop"),
                               /*over_out=*/piece(1, "bot")});
  // vertices a_i on circle i (split), for i = 1..g-1
  for (size_t i = 1; i <= g - 1; ++i) {
    vertices.push_back(Vertex{"a" + std::to_string(i),
                              {Slot{conn(i), Dir::out}, Slot{piece(i, "top"), Dir::out},
                               Slot{piece(i, "bot"), Dir::in}}});
  }
  for (size_t i = 1; i <= g - 1; ++i) {
    // vertices b_i on circle i+1 (merge)
    std::string top = (i + 1 == g) ? piece(i + 1, "ring") : piece(i + 1, "top");
    std::string bot = (i + 1 == g) ? piece(i + 1, "ring") : piece(i + 1, "bot");
    vertices.push_back(Vertex{"b" + std::to_string(i),
                              {Slot{top, Dir::in}, Slot{conn(i), Dir::in}, Slot{bot, Dir::out}}});
  }
  return Diagram("trivial-genus" + std::to_string(g), std::move(crossings), std::move(vertices));
}

Diagram trivial_components(const std::vector<size_t>& genera) {
  std::vector<Crossing> crossings;
  std::vector<Vertex> vertices;
  std::string name = "trivial-components";
  for (size_t i = 0; i < genera.size(); ++i) {
    Diagram part = trivial_genus(genera[i]);
    std::string prefix = "u" + std::to_string(i + 1) + ".";
    for (Crossing c : part.crossings()) {
      c.id = prefix + c.id;
      c.under_in = prefix + c.under_in;
      c.under_out = prefix + c.under_out;
      c.over_in = prefix + c.over_in;
      c.over_out = prefix + c.over_out;
      crossings.push_back(std::move(c));
    }
    for (Vertex v : part.vertices()) {
      v.id = prefix + v.id;
      for (auto& s : v.slots) s.semi_arc = prefix + s.semi_arc;
      vertices.push_back(std::move(v));
    }
  }
  return Diagram(std::move(name), std::move(crossings), std::move(vertices));
}

}  // namespace hbk::builders
