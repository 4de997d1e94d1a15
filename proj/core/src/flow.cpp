#include "hbk/flow.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <sstream>

namespace hbk {

namespace {

int64_t imod(int64_t v, uint64_t m) {
  int64_t r = v % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return r;
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

bool Flow::is_zero() const {
  for (const auto& [id, v] : values)
    if (v != 0) return false;
  return true;
}

uint64_t gcd_of_flow(const Flow& flow) {
  uint64_t g = flow.m;
  for (const auto& [id, v] : flow.values) g = std::gcd(g, static_cast<uint64_t>(imod(v, flow.m)));
  return g == 0 ? flow.m : g;
}

bool is_valid_flow(const Diagram& d, const Flow& flow) {
  const uint64_t m = flow.m;
  for (const auto& id : d.semi_arcs())
    if (!flow.values.count(id)) return false;
  // constant along arcs and equal across the under-strand
  for (const auto& c : d.crossings()) {
    if (imod(flow.at(c.over_in) - flow.at(c.over_out), m) != 0) return false;
    if (imod(flow.at(c.under_in) - flow.at(c.under_out), m) != 0) return false;
  }
  for (const auto& v : d.vertices()) {
    int64_t sum = 0;
    for (const auto& s : v.slots) sum += (s.dir == Dir::in ? 1 : -1) * flow.at(s.semi_arc);
    if (imod(sum, m) != 0) return false;
  }
  return true;
}

SmithForm smith_normal_form(std::vector<std::vector<int64_t>> a, size_t cols) {
  SmithForm out;
  out.rows = a.size();
  out.cols = cols;
  out.v.assign(cols, std::vector<int64_t>(cols, 0));
  for (size_t i = 0; i < cols; ++i) out.v[i][i] = 1;
  if (a.empty() || cols == 0) return out;

  auto swap_rows = [&](size_t i, size_t j) { std::swap(a[i], a[j]); };
  auto swap_cols = [&](size_t i, size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : out.v) std::swap(row[i], row[j]);
  };
  auto add_row = [&](size_t dst, size_t src, int64_t k) {
    for (size_t c = 0; c < cols; ++c) a[dst][c] += k * a[src][c];
  };
  auto add_col = [&](size_t dst, size_t src, int64_t k) {
    for (auto& row : a) row[dst] += k * row[src];
    for (auto& row : out.v) row[dst] += k * row[src];
  };

  const size_t rows = a.size();
  size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero |entry| in the remaining block
    size_t pi = SIZE_MAX, pj = SIZE_MAX;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 &&
            (pi == SIZE_MAX || std::abs(a[i][j]) < std::abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == SIZE_MAX) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        int64_t q = a[i][t] / a[t][t];
        add_row(i, t, -q);
        if (a[i][t] != 0) {
          swap_rows(t, i);  // smaller remainder becomes the pivot
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        int64_t q = a[t][j] / a[t][t];
        add_col(j, t, -q);
        if (a[t][j] != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
    }
    if (a[t][t] < 0) {
      for (auto& row : a) row[t] = -row[t];
      for (auto& row : out.v) row[t] = -row[t];
    }
    ++t;
  }
  out.rank = t;

  // Enforce the divisibility chain d_i | d_{i+1} by folding each offending
  // pair into a 2x2 block: diag(a,b) -> diag(gcd, lcm).
  for (size_t i = 0; i + 1 < out.rank; ++i) {
    for (size_t j = i + 1; j < out.rank; ++j) {
      if (a[j][j] % a[i][i] == 0) continue;
      add_col(i, j, 1);  // block becomes [[a,0],[b,b]]
      while (a[j][i] != 0) {
        int64_t q = a[i][i] / a[j][i];
        add_row(i, j, -q);
        swap_rows(i, j);
      }
      if (a[i][j] != 0) add_col(j, i, -a[i][j] / a[i][i]);
      if (a[i][i] < 0) {
        for (auto& row : a) row[i] = -row[i];
        for (auto& row : out.v) row[i] = -row[i];
      }
      if (a[j][j] < 0) {
        for (auto& row : a) row[j] = -row[j];
        for (auto& row : out.v) row[j] = -row[j];
      }
    }
  }
  out.divisors.resize(out.rank);
  for (size_t i = 0; i < out.rank; ++i) out.divisors[i] = a[i][i];
  return out;
}

FlowSpace FlowSpace::solve(const Diagram& d, uint64_t m) {
  if (m < 1) throw make_error("BadModulus", "m must be >= 1");
  FlowSpace fs;
  fs.m_ = m;
  fs.arcs_ = d.arcs();
  for (const auto& cls : fs.arcs_.classes) fs.arc_order_.push_back(cls.front());

  const size_t a = fs.arc_order_.size();
  std::vector<std::vector<int64_t>> rows;
  for (const auto& c : d.crossings()) {
    std::vector<int64_t> row(a, 0);
    row[fs.arcs_.class_of.at(c.under_in)] += 1;
    row[fs.arcs_.class_of.at(c.under_out)] -= 1;
    rows.push_back(std::move(row));
  }
  for (const auto& v : d.vertices()) {
    std::vector<int64_t> row(a, 0);
    for (const auto& s : v.slots)
      row[fs.arcs_.class_of.at(s.semi_arc)] += (s.dir == Dir::in) ? 1 : -1;
    rows.push_back(std::move(row));
  }

  fs.smith_ = smith_normal_form(std::move(rows), a);

  fs.radix_.resize(a);
  for (size_t i = 0; i < a; ++i) {
    if (i < fs.smith_.rank)
      fs.radix_[i] = std::gcd(static_cast<uint64_t>(fs.smith_.divisors[i]), m);
    else
      fs.radix_[i] = m;
  }
  return fs;
}

unsigned __int128 FlowSpace::count() const {
  unsigned __int128 n = 1;
  for (uint64_t r : radix_) n *= r;
  return n;
}

std::string FlowSpace::count_string() const { return u128_to_string(count()); }

Flow FlowSpace::flow_at(unsigned __int128 index) const {
  const size_t a = arc_order_.size();
  // index -> digits, most significant first (coordinate 0)
  std::vector<uint64_t> digit(a, 0);
  for (size_t i = a; i-- > 0;) {
    digit[i] = static_cast<uint64_t>(index % radix_[i]);
    index /= radix_[i];
  }
  // digit k of a torsion coordinate i means y_i = k * (m / gcd(d_i, m))
  std::vector<int64_t> y(a, 0);
  for (size_t i = 0; i < a; ++i) {
    uint64_t step = (i < smith_.rank) ? m_ / radix_[i] : 1;
    y[i] = static_cast<int64_t>(digit[i] * step % m_);
  }
  Flow flow;
  flow.m = m_;
  for (size_t col = 0; col < a; ++col) {
    int64_t x = 0;
    for (size_t k = 0; k < a; ++k)
      x += imod(smith_.v[col][k], m_) * y[k] % static_cast<int64_t>(m_);
    x = imod(x, m_);
    for (const auto& id : arcs_.classes[col]) flow.values[id] = x;
  }
  return flow;
}

void FlowSpace::for_each_flow(const std::function<void(const Flow&)>& fn, uint64_t cap) const {
  unsigned __int128 n = count();
  if (n > cap) {
    std::ostringstream os;
    os << "flow count " << count_string() << " exceeds cap " << cap;
    throw make_error("TooManyFlows", os.str());
  }
  for (unsigned __int128 i = 0; i < n; ++i) fn(flow_at(i));
}

std::vector<Flow> FlowSpace::enumerate(uint64_t cap) const {
  std::vector<Flow> out;
  for_each_flow([&](const Flow& f) { out.push_back(f); }, cap);
  return out;
}

Flow make_flow(const Diagram& d, uint64_t m, const std::map<SemiArcId, int64_t>& arc_values) {
  if (m < 1) throw make_error("BadModulus", "m must be >= 1");
  Arcs arcs = d.arcs();
  std::vector<int64_t> per_class(arcs.count(), 0);
  for (const auto& [id, v] : arc_values) {
    auto it = arcs.class_of.find(id);
    if (it == arcs.class_of.end())
      throw make_error("InvalidFlow", "unknown semi-arc " + id);
    per_class[it->second] = imod(v, m);
  }
  Flow flow;
  flow.m = m;
  for (size_t i = 0; i < arcs.count(); ++i)
    for (const auto& id : arcs.classes[i]) flow.values[id] = per_class[i];
  if (!is_valid_flow(d, flow))
    throw make_error("InvalidFlow", "values violate the crossing or vertex conditions");
  return flow;
}

AlexanderNumbering alexander_numbering(const Diagram& d, const Flow& flow) {
  AlexanderNumbering out;
  out.m = flow.m;
  out.faces = d.faces();
  const size_t nf = out.faces.count();
  std::vector<int64_t> label(nf, -1);
  label[0] = 0;

  // dual edges: semi-arc a relates its two sides by
  //   label(left) = label(right) + flow(a)  (mod m)
  std::queue<size_t> work;
  work.push(0);
  while (!work.empty()) {
    size_t f = work.front();
    work.pop();
    for (const auto& [id, sides] : out.faces.side_face) {
      auto [lf, rf] = sides;
      int64_t v = imod(flow.at(id), flow.m);
      if (lf == f && label[rf] < 0) {
        label[rf] = imod(label[lf] - v, flow.m);
        work.push(rf);
      } else if (rf == f && label[lf] < 0) {
        label[lf] = imod(label[rf] + v, flow.m);
        work.push(lf);
      }
    }
  }
  for (size_t f = 0; f < nf; ++f)
    if (label[f] < 0)
      throw make_error("Inconsistent", "unreached face during numbering");
  // uniqueness / consistency: every dual edge must agree
  for (const auto& [id, sides] : out.faces.side_face) {
    auto [lf, rf] = sides;
    if (imod(label[lf] - label[rf] - flow.at(id), flow.m) != 0)
      throw make_error("Inconsistent", "numbering constraint violated at semi-arc " + id);
  }
  out.face_labels = std::move(label);
  for (const auto& [id, sides] : out.faces.side_face) out.rho[id] = out.face_labels[sides.first];
  return out;
}

}  // namespace hbk
