// Acceptance suite: runs every headline requirement at its stated tolerance
// and prints one pass/fail line per criterion. Exit code = number of failed
// criteria. All checks are exact; every expected value is frozen here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hbk/bounds.hpp"
#include "hbk/builders.hpp"
#include "hbk/coloring.hpp"
#include "hbk/moves.hpp"
#include "support/corpus.hpp"

using namespace hbk;
using namespace hbk::testsupport;
namespace b = hbk::builders;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_seconds) {
    ok = false;
    std::ostringstream os;
    os << detail << (detail.empty() ? "" : "; ") << "over budget: " << elapsed << "s > "
       << budget_seconds << "s";
    detail = os.str();
  }
  if (!ok) ++failures;
  std::printf("%s  criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              elapsed, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

Flow genus2_flow(const Diagram& d, int64_t a, int64_t bb) {
  return make_flow(d, 8, {{"x2", a}, {"x4", bb}, {"x1", bb}, {"x6", a}, {"x5", (a + bb) % 8}});
}

std::vector<std::vector<FieldElement>> golden_matrix(const AlexanderBiquandle& ab, int64_t a,
                                                     int64_t bb) {
  const Field& f = ab.field();
  FieldElement z = f.zero(), one = f.one();
  FieldElement sa = ab.s_pow(a), sb = ab.s_pow(bb);
  FieldElement ta = ab.t_pow(a), tb = ab.t_pow(bb);
  return {
      {-one, z, sa - ta, ta, z, z, z},
      {z, -one, z, sb - tb, z, tb, z},
      {z, one, -sb, z, z, z, z},
      {z, z, z, -sa, z, z, one},
      {z, z, one, z, -one, z, z},
      {z, z, z, z, -one, one, z},
      {one, z, z, z, -sa, z, z},
      {z, z, z, z, -sa, z, one},
  };
}

bool rows_equal_up_to_permutation(std::vector<std::vector<FieldElement>> lhs,
                                  std::vector<std::vector<FieldElement>> rhs) {
  auto row_less = [](const std::vector<FieldElement>& x, const std::vector<FieldElement>& y) {
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return true;
      if (y[i] < x[i]) return false;
    }
    return false;
  };
  std::sort(lhs.begin(), lhs.end(), row_less);
  std::sort(rhs.begin(), rhs.end(), row_less);
  return lhs == rhs;
}

// order of a unit by direct powering, independent of Field::mult_order
uint64_t order_by_powering(const FieldElement& a) {
  FieldElement acc = a;
  uint64_t n = 1;
  while (!acc.is_one()) {
    acc = acc * a;
    ++n;
  }
  return n;
}

}  // namespace

int main() {
  // 1. golden matrix -------------------------------------------------------
  criterion(1, "two-crossing genus-2 example matches the frozen 8x7 matrix", 1.0,
            [](std::string& detail) {
              Diagram d = b::two_crossing_genus2();
              AlexanderBiquandle ab = gf9_family();
              for (auto [a, bb] :
                   std::vector<std::pair<int64_t, int64_t>>{{1, 1}, {1, 2}, {2, 1}}) {
                ColoringMatrix mx = coloring_matrix(d, genus2_flow(d, a, bb), ab);
                if (mx.row_count() != 8 || mx.col_count() != 7) {
                  detail = "wrong shape";
                  return false;
                }
                if (!rows_equal_up_to_permutation(mx.rows, golden_matrix(ab, a, bb))) {
                  std::ostringstream os;
                  os << "mismatch at (a,b)=(" << a << "," << bb << ")";
                  detail = os.str();
                  return false;
                }
              }
              return true;
            });

  // 2. golden types --------------------------------------------------------
  criterion(2, "the field/unit tuples have types 10, 8, 24, 8, 3", 1.0, [](std::string& detail) {
    std::vector<std::pair<AlexanderBiquandle, uint64_t>> expected = {
        {gf81_family(), 10}, {gf9_family(), 8},     {gf25_family(), 24},
        {gf9_family_alt(), 8}, {gf4_family(), 3},
    };
    for (const auto& [ab, want] : expected) {
      uint64_t ord_s = order_by_powering(ab.s());
      uint64_t ord_t = order_by_powering(ab.field().t());
      uint64_t by_powering = std::lcm(ord_s, ord_t);
      if (ab.type() != want || by_powering != want) {
        std::ostringstream os;
        os << "got type " << ab.type() << " / powering " << by_powering << ", want " << want;
        detail = os.str();
        return false;
      }
    }
    return true;
  });

  // shared corpus -----------------------------------------------------------
  std::vector<Diagram> pool = corpus(200, /*seed=*/20240817, /*max_crossings=*/6,
                                     /*max_vertices=*/4);

  // 3. linear-relation residual --------------------------------------------
  criterion(3, "relation residual vanishes on 200 diagrams x all flows", 120.0,
            [&](std::string& detail) {
              std::vector<std::pair<AlexanderBiquandle, uint64_t>> families = {
                  {gf4_family(), 3}, {gf4_family(), 6}, {gf9_family(), 8}};
              size_t checked = 0;
              for (const Diagram& d : pool) {
                for (const auto& [ab, m] : families) {
                  bool ok = true;
                  flow_space(d, m).for_each_flow([&](const Flow& flow) {
                    if (!residual_is_zero(d, flow, ab)) ok = false;
                    ++checked;
                  });
                  if (!ok) {
                    detail = "nonzero residual on " + d.name();
                    return false;
                  }
                }
              }
              detail = std::to_string(checked) + " residuals";
              return true;
            });

  // 4. oracle equivalence ---------------------------------------------------
  criterion(4, "brute-force count equals (#X)^dim on small instances", 120.0,
            [&](std::string& detail) {
              AlexanderBiquandle ab = gf4_family();
              size_t instances = 0, checks = 0;
              for (const Diagram& d : pool) {
                if (d.semi_arc_count() > 8) continue;
                ++instances;
                bool ok = true;
                flow_space(d, 3).for_each_flow([&](const Flow& flow) {
                  uint64_t brute = coloring_count_bruteforce(d, flow, ab, 1 << 20);
                  uint64_t algebraic = 1;
                  for (size_t i = 0; i < coloring_dimension(d, flow, ab); ++i) algebraic *= 4;
                  if (brute != algebraic) ok = false;
                  ++checks;
                });
                if (!ok) {
                  detail = "mismatch on " + d.name();
                  return false;
                }
              }
              std::ostringstream os;
              os << instances << " instances, " << checks << " flows";
              detail = os.str();
              return instances > 0;
            });

  // 5. move invariance ------------------------------------------------------
  criterion(5, "500 random moves preserve #Flow, gcd and dim", 180.0, [&](std::string& detail) {
    AlexanderBiquandle ab = gf4_family();
    const uint64_t m = 3;
    std::mt19937_64 rng(424242);
    size_t applied = 0;
    auto seeds = seed_diagrams();
    size_t seed_index = 0;
    Diagram cur = seeds[0];
    size_t steps_on_current = 0;
    while (applied < 500) {
      if (steps_on_current >= 8 || cur.crossings().size() > 7) {
        cur = seeds[++seed_index % seeds.size()];
        steps_on_current = 0;
      }
      auto sites = enumerate_applicable(cur);
      bool stepped = false;
      for (size_t attempt = 0; attempt < 40 && !stepped; ++attempt) {
        const MoveSite& site = sites[rng() % sites.size()];
        if ((site.kind == MoveKind::R1p || site.kind == MoveKind::R2p ||
             site.kind == MoveKind::R5) &&
            cur.crossings().size() > 5)
          continue;
        std::optional<MoveResult> maybe;
        try {
          maybe = apply_move(cur, site);
        } catch (const Error&) {
          continue;
        }
        const MoveResult& moved = *maybe;
        FlowSpace before = flow_space(cur, m);
        FlowSpace after = flow_space(moved.diagram, m);
        if (before.count_string() != after.count_string()) {
          detail = "flow count changed by " + site.to_string() + " on " + cur.name();
          return false;
        }
        bool ok = true;
        before.for_each_flow([&](const Flow& flow) {
          Flow assoc = transport_flow(cur, flow, moved);
          if (!is_valid_flow(moved.diagram, assoc)) ok = false;
          if (gcd_of_flow(flow) != gcd_of_flow(assoc)) ok = false;
          if (coloring_dimension(cur, flow, ab) !=
              coloring_dimension(moved.diagram, assoc, ab))
            ok = false;
        });
        if (!ok) {
          detail = "invariant broken by " + site.to_string() + " on " + cur.name();
          return false;
        }
        cur = moved.diagram;
        ++applied;
        ++steps_on_current;
        stepped = true;
      }
      if (!stepped) {
        cur = seeds[++seed_index % seeds.size()];
        steps_on_current = 0;
      }
    }
    detail = std::to_string(applied) + " applications";
    return true;
  });

  // 6. crossing-change step -------------------------------------------------
  criterion(6, "|dim - dim after a crossing change| <= 1 everywhere", 120.0,
            [&](std::string& detail) {
              AlexanderBiquandle ab = gf4_family();
              size_t checks = 0;
              for (const Diagram& d : pool) {
                bool ok = true;
                flow_space(d, 3).for_each_flow([&](const Flow& flow) {
                  size_t dim = coloring_dimension(d, flow, ab);
                  for (const auto& c : d.crossings()) {
                    Diagram changed = d.crossing_change(c.id);
                    size_t dim2 = coloring_dimension(changed, flow, ab);
                    size_t diff = dim > dim2 ? dim - dim2 : dim2 - dim;
                    if (diff > 1) ok = false;
                    ++checks;
                  }
                });
                if (!ok) {
                  detail = "step > 1 on " + d.name();
                  return false;
                }
              }
              detail = std::to_string(checks) + " steps";
              return true;
            });

  // 7. bound soundness ------------------------------------------------------
  criterion(7, "gordian bound <= #changes on 100 pairs; trivial bound = 0", 180.0,
            [&](std::string& detail) {
              AlexanderBiquandle ab = gf4_family();
              for (size_t g = 1; g <= 3; ++g)
                if (unknotting_lower_bound(b::trivial_genus(g), ab, 3) != 0) {
                  detail = "trivial genus-" + std::to_string(g) + " bound nonzero";
                  return false;
                }
              std::mt19937_64 rng(777);
              size_t pairs = 0;
              for (const Diagram& d : pool) {
                if (pairs >= 100) break;
                if (d.crossings().empty()) continue;
                Diagram moved = d;
                size_t j = 1 + rng() % 3;
                for (size_t i = 0; i < j; ++i) {
                  const auto& crossings = moved.crossings();
                  moved = moved.crossing_change(crossings[rng() % crossings.size()].id);
                }
                size_t fwd = gordian_lower_bound(d, moved, ab, 3);
                size_t bwd = gordian_lower_bound(moved, d, ab, 3);
                if (fwd > j || bwd > j) {
                  std::ostringstream os;
                  os << "bound " << fwd << "/" << bwd << " exceeds " << j << " on " << d.name();
                  detail = os.str();
                  return false;
                }
                ++pairs;
              }
              detail = std::to_string(pairs) + " pairs";
              return pairs >= 100;
            });

  // 8. counting baselines ---------------------------------------------------
  criterion(8, "dim(trivial m-component) = m and dim >= 1 everywhere", 120.0,
            [&](std::string& detail) {
              AlexanderBiquandle ab = gf4_family();
              for (const auto& genera : std::vector<std::vector<size_t>>{
                       {1}, {2}, {1, 1}, {1, 2}, {1, 1, 1}, {2, 1, 2}}) {
                Diagram d = b::trivial_components(genera);
                bool ok = true;
                flow_space(d, 3).for_each_flow([&](const Flow& flow) {
                  if (coloring_dimension(d, flow, ab) != genera.size()) ok = false;
                });
                if (!ok) {
                  detail = "trivial link dim wrong for " + std::to_string(genera.size()) +
                           " components";
                  return false;
                }
              }
              for (const Diagram& d : pool) {
                bool ok = true;
                flow_space(d, 3).for_each_flow([&](const Flow& flow) {
                  if (coloring_dimension(d, flow, ab) < 1) ok = false;
                });
                if (!ok) {
                  detail = "dim < 1 on " + d.name();
                  return false;
                }
              }
              return true;
            });

  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
