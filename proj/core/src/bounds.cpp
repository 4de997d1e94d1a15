#include "hbk/bounds.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace hbk {

uint64_t DimProfile::total_multiplicity() const {
  uint64_t total = 0;
  for (const auto& [g, dims] : classes)
    for (const auto& [dim, mult] : dims) total += mult;
  return total;
}

size_t DimProfile::min_abs_diff(uint64_t g, size_t d) const {
  auto it = classes.find(g);
  if (it == classes.end())
    throw make_error("EmptyGcdClass", "no flow with gcd " + std::to_string(g) +
                                          " in the comparison diagram");
  size_t best = SIZE_MAX;
  for (const auto& [dim, mult] : it->second) {
    size_t diff = dim > d ? dim - d : d - dim;
    best = std::min(best, diff);
  }
  return best;
}

size_t DimProfile::max_dim() const {
  size_t best = 0;
  for (const auto& [g, dims] : classes)
    for (const auto& [dim, mult] : dims) best = std::max(best, dim);
  return best;
}

std::string DimProfile::to_string() const {
  std::ostringstream os;
  for (const auto& [g, dims] : classes) {
    os << "gcd " << g << ":";
    for (const auto& [dim, mult] : dims) os << " dim" << dim << " x" << mult;
    os << "\n";
  }
  return os.str();
}

DimProfile flow_dim_profile(const Diagram& d, const AlexanderBiquandle& ab, uint64_t m,
                            uint64_t cap, unsigned jobs) {
  ab.require_zm_family(m);
  FlowSpace fs = FlowSpace::solve(d, m);
  unsigned __int128 n = fs.count();
  if (n > cap)
    throw make_error("TooManyFlows", "flow count " + fs.count_string() + " exceeds cap");

  DimProfile profile;
  profile.m = m;
  profile.flows_examined = static_cast<uint64_t>(n);

  const uint64_t total = static_cast<uint64_t>(n);
  if (jobs <= 1 || total < 2 * jobs) {
    for (uint64_t i = 0; i < total; ++i) {
      Flow flow = fs.flow_at(i);
      size_t dim = coloring_dimension(d, flow, ab);
      profile.classes[gcd_of_flow(flow)][dim]++;
    }
    return profile;
  }

  // Deterministic aggregate: workers own disjoint index ranges; results are
  // merged in range order (merge order does not affect a multiset anyway).
  std::vector<DimProfile> partial(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    uint64_t begin = total * w / jobs;
    uint64_t end = total * (w + 1) / jobs;
    workers.emplace_back([&, w, begin, end] {
      for (uint64_t i = begin; i < end; ++i) {
        Flow flow = fs.flow_at(i);
        size_t dim = coloring_dimension(d, flow, ab);
        partial[w].classes[gcd_of_flow(flow)][dim]++;
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& part : partial)
    for (const auto& [g, dims] : part.classes)
      for (const auto& [dim, mult] : dims) profile.classes[g][dim] += mult;
  return profile;
}

size_t unknotting_lower_bound(const Diagram& d, const AlexanderBiquandle& ab, uint64_t m,
                              uint64_t cap, unsigned jobs) {
  DimProfile profile = flow_dim_profile(d, ab, m, cap, jobs);
  return profile.max_dim() - 1;  // dim >= 1 always
}

size_t gordian_lower_bound(const DimProfile& p1, const DimProfile& p2) {
  size_t best = 0;
  for (const auto& [g, dims] : p1.classes)
    for (const auto& [dim, mult] : dims) best = std::max(best, p2.min_abs_diff(g, dim));
  return best;
}

size_t gordian_lower_bound(const Diagram& d1, const Diagram& d2, const AlexanderBiquandle& ab,
                           uint64_t m, uint64_t cap, unsigned jobs) {
  DimProfile p1 = flow_dim_profile(d1, ab, m, cap, jobs);
  DimProfile p2 = flow_dim_profile(d2, ab, m, cap, jobs);
  return gordian_lower_bound(p1, p2);
}

}  // namespace hbk
