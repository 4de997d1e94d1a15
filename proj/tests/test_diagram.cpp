#include "hbk/diagram.hpp"

#include <gtest/gtest.h>

#include "hbk/builders.hpp"
#include "hbk/diagram_io.hpp"
#include "support/corpus.hpp"

using namespace hbk;
namespace b = hbk::builders;

TEST(Diagram, KinkedUnknotValid) {
  Diagram d = b::kinked_unknot();
  EXPECT_TRUE(d.validate().ok()) << d.validate().to_string();
  EXPECT_EQ(d.semi_arc_count(), 2u);
  EXPECT_EQ(d.faces().count(), 3u);
  EXPECT_EQ(d.arcs().count(), 1u);
}

TEST(Diagram, AllKinkVariantsValid) {
  for (int sign : {1, -1})
    for (bool first_under : {true, false}) {
      Diagram d = b::kinked_unknot(sign, first_under);
      EXPECT_TRUE(d.validate().ok()) << d.validate().to_string();
      EXPECT_EQ(d.faces().count(), 3u);
    }
}

TEST(Diagram, ThetaWithKinkValid) {
  Diagram d = b::theta_with_kink();
  EXPECT_TRUE(d.validate().ok()) << d.validate().to_string();
  EXPECT_EQ(d.semi_arc_count(), 5u);  // 2n + 3k with n = 1, k = 1
  EXPECT_EQ(d.faces().count(), 4u);   // V - E + F = 2 with V = 3, E = 5
}

TEST(Diagram, TwoCrossingGenus2Valid) {
  Diagram d = b::two_crossing_genus2();
  EXPECT_TRUE(d.validate().ok()) << d.validate().to_string();
  EXPECT_EQ(d.semi_arc_count(), 7u);
  EXPECT_EQ(d.faces().count(), 5u);  // 1 + c + E - V = 1 + 1 + 7 - 4
  Arcs arcs = d.arcs();
  EXPECT_EQ(arcs.count(), 5u);
  // gluings along the over-strands: {x2,x3} and {x4,x7}
  EXPECT_EQ(arcs.class_of.at("x2"), arcs.class_of.at("x3"));
  EXPECT_EQ(arcs.class_of.at("x4"), arcs.class_of.at("x7"));
  EXPECT_NE(arcs.class_of.at("x1"), arcs.class_of.at("x5"));
}

TEST(Diagram, TrefoilValid) {
  Diagram d = b::trefoil();
  EXPECT_TRUE(d.validate().ok()) << d.validate().to_string();
  EXPECT_EQ(d.semi_arc_count(), 6u);
  EXPECT_EQ(d.faces().count(), 5u);
  EXPECT_EQ(d.arcs().count(), 3u);
}

TEST(Diagram, TrivialGenusChainValid) {
  for (size_t g = 1; g <= 4; ++g) {
    Diagram d = b::trivial_genus(g);
    EXPECT_TRUE(d.validate().ok()) << "genus " << g << ": " << d.validate().to_string();
    EXPECT_EQ(d.vertices().size(), 2 * (g - 1));
  }
}

TEST(Diagram, SplitUnionValid) {
  Diagram d = b::trivial_components({1, 2});
  EXPECT_TRUE(d.validate().ok()) << d.validate().to_string();
  EXPECT_EQ(d.component_count(), 2u);
  // merged outer face: V - E + F = 1 + c
  long long euler = static_cast<long long>(d.node_count()) -
                    static_cast<long long>(d.semi_arc_count()) +
                    static_cast<long long>(d.faces().count());
  EXPECT_EQ(euler, 1 + 2);
}

TEST(Diagram, FacesCoverEachSideOnce) {
  for (const Diagram& d : hbk::testsupport::seed_diagrams()) {
    Faces f = d.faces();
    std::map<std::pair<SemiArcId, Side>, int> seen;
    for (const auto& face : f.faces)
      for (const auto& pair : face) seen[pair]++;
    EXPECT_EQ(seen.size(), 2 * d.semi_arc_count());
    for (const auto& [key, count] : seen) EXPECT_EQ(count, 1);
  }
}

TEST(Diagram, VertexBalanceForced) {
  for (const Diagram& d : hbk::testsupport::seed_diagrams()) {
    int merges = 0, splits = 0;
    for (const auto& v : d.vertices()) (v.is_merge() ? merges : splits)++;
    EXPECT_EQ(merges, splits);
  }
}

TEST(Diagram, RejectsDuplicateSlot) {
  // x1 used as under_in twice
  Crossing c1{"c1", 1, "x1", "x2", "x2", "x1"};
  Crossing c2{"c2", 1, "x1", "x3", "x3", "x1"};
  try {
    Diagram("bad", {c1, c2}, {});
    FAIL() << "expected DuplicateSlot";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "DuplicateSlot");
  }
}

TEST(Diagram, RejectsMissingSlot) {
  Crossing c{"c1", 1, "x1", "x2", "x3", "x1"};  // x2 has no head, x3 no tail...
  try {
    Diagram("bad", {c}, {});
    FAIL() << "expected MissingSlot";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "MissingSlot");
  }
}

TEST(Diagram, RejectsNonYOrientedVertex) {
  Vertex v{"v", {Slot{"a", Dir::in}, Slot{"b", Dir::in}, Slot{"c", Dir::in}}};
  try {
    Diagram("bad", {}, {v});
    FAIL() << "expected BadSign";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "BadSign");
  }
}

TEST(Diagram, CrossinglessComponentRejected) {
  // a theta-curve with no crossings is structurally fine but violates the
  // standing assumption that every component carries a crossing
  Vertex v1{"v1", {Slot{"g", Dir::in}, Slot{"a", Dir::out}, Slot{"b", Dir::out}}};
  Vertex v2{"v2", {Slot{"a", Dir::in}, Slot{"g", Dir::out}, Slot{"b", Dir::in}}};
  Diagram d("crossingless-theta", {}, {v1, v2});
  ValidationReport report = d.validate();
  EXPECT_FALSE(report.ok());
  EXPECT_NE(report.to_string().find("NoCrossingComponent"), std::string::npos);
}

TEST(Diagram, NonPlanarRotationReported) {
  // theta graph whose two vertex rotations force a torus embedding; a kink on
  // edge a keeps the crossing rule satisfied
  Crossing kink{"k", 1, "a", "a2", "a2", "a3"};
  Vertex v1k{"v1", {Slot{"a", Dir::out}, Slot{"b", Dir::out}, Slot{"g", Dir::in}}};
  Vertex v2k{"v2", {Slot{"a3", Dir::in}, Slot{"b", Dir::in}, Slot{"g", Dir::out}}};
  Diagram bad("nonplanar-theta", {kink}, {v1k, v2k});
  ValidationReport report = bad.validate();
  EXPECT_FALSE(report.ok());
  EXPECT_NE(report.to_string().find("EulerViolation"), std::string::npos);
}

TEST(CrossingChange, InvolutionAndValidity) {
  for (const Diagram& d : hbk::testsupport::seed_diagrams()) {
    for (const auto& c : d.crossings()) {
      Diagram once = d.crossing_change(c.id);
      EXPECT_TRUE(once.validate().ok());
      EXPECT_EQ(once.semi_arc_count(), d.semi_arc_count());
      EXPECT_EQ(once.faces().count(), d.faces().count());
      Diagram twice = once.crossing_change(c.id);
      EXPECT_EQ(twice, d);
    }
  }
}

TEST(CrossingChange, UnknownCrossing) {
  try {
    b::trefoil().crossing_change("nope");
    FAIL() << "expected UnknownCrossing";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "UnknownCrossing");
  }
}

TEST(DiagramIo, RoundTrip) {
  for (const Diagram& d : hbk::testsupport::seed_diagrams()) {
    Diagram back = parse_diagram(serialize(d));
    EXPECT_EQ(back, d);
    // serialization is byte-stable
    EXPECT_EQ(serialize(back), serialize(d));
  }
}

TEST(DiagramIo, ParseErrors) {
  EXPECT_THROW(parse_diagram("{"), Error);
  EXPECT_THROW(parse_diagram(R"({"crossings":[{"id":"c","sign":2,
    "under_in":"a","under_out":"b","over_in":"b","over_out":"a"}]})"),
               Error);
}

TEST(DiagramIo, OuterPreserved) {
  Diagram d = b::kinked_unknot().with_outer(OuterSpec{"x2", Side::left});
  Diagram back = parse_diagram(serialize(d));
  ASSERT_TRUE(back.outer().has_value());
  EXPECT_EQ(back.outer()->semi_arc, "x2");
  EXPECT_EQ(back.outer()->side, Side::left);
}

TEST(Isomorphism, DetectsRelabeling) {
  Diagram d = b::two_crossing_genus2();
  // relabel semi-arcs via serialize/patch
  std::string text = serialize(d);
  for (const auto& [from, to] : std::vector<std::pair<std::string, std::string>>{
           {"x1", "y1"}, {"x2", "y2"}, {"x3", "y3"}, {"x4", "y4"},
           {"x5", "y5"}, {"x6", "y6"}, {"x7", "y7"}}) {
    size_t pos = 0;
    while ((pos = text.find("\"" + from + "\"", pos)) != std::string::npos) {
      text.replace(pos + 1, from.size(), to);
      pos += to.size();
    }
  }
  Diagram relabeled = parse_diagram(text);
  EXPECT_TRUE(isomorphic(d, relabeled));
  EXPECT_FALSE(isomorphic(d, b::trefoil()));
  EXPECT_FALSE(isomorphic(d, d.crossing_change("c1")));
}
