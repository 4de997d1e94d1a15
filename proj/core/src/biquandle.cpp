#include "hbk/biquandle.hpp"

#include <numeric>
#include <random>
#include <sstream>

namespace hbk {

namespace {

int64_t imod(int64_t n, uint64_t m) {
  int64_t r = n % static_cast<int64_t>(m);
  if (r < 0) r += static_cast<int64_t>(m);
  return r;
}

}  // namespace

AlexanderBiquandle::AlexanderBiquandle(Field field, FieldElement s, uint64_t type,
                                       std::vector<FieldElement> s_pows,
                                       std::vector<FieldElement> t_pows)
    : field_(std::move(field)),
      s_(std::move(s)),
      type_(type),
      s_pows_(std::move(s_pows)),
      t_pows_(std::move(t_pows)) {}

AlexanderBiquandle AlexanderBiquandle::make(const Field& field, const FieldElement& s) {
  if (s.is_zero()) throw make_error("SNotUnit", "s = 0 is not a unit");
  uint64_t ord_s = field.mult_order(s);
  uint64_t ord_t = field.mult_order(field.t());
  uint64_t type = std::lcm(ord_s, ord_t);

  std::vector<FieldElement> s_pows, t_pows;
  s_pows.reserve(type);
  t_pows.reserve(type);
  FieldElement sp = field.one(), tp = field.one();
  const FieldElement t = field.t();
  for (uint64_t i = 0; i < type; ++i) {
    s_pows.push_back(sp);
    t_pows.push_back(tp);
    sp = sp * s;
    tp = tp * t;
  }
  return AlexanderBiquandle(field, s, type, std::move(s_pows), std::move(t_pows));
}

FieldElement AlexanderBiquandle::s_pow(int64_t n) const {
  return s_pows_[static_cast<size_t>(imod(n, type_))];
}

FieldElement AlexanderBiquandle::t_pow(int64_t n) const {
  return t_pows_[static_cast<size_t>(imod(n, type_))];
}

FieldElement AlexanderBiquandle::underop(const FieldElement& a, const FieldElement& b) const {
  return underop_n(a, b, 1);
}

FieldElement AlexanderBiquandle::overop(const FieldElement& a, const FieldElement& b) const {
  return overop_n(a, b, 1);
}

FieldElement AlexanderBiquandle::underop_n(const FieldElement& a, const FieldElement& b,
                                           int64_t n) const {
  FieldElement tn = t_pow(n);
  return tn * a + (s_pow(n) - tn) * b;
}

FieldElement AlexanderBiquandle::overop_n(const FieldElement& a, const FieldElement&,
                                          int64_t n) const {
  return s_pow(n) * a;
}

void AlexanderBiquandle::require_zm_family(uint64_t m) const {
  if (m == 0 || !is_zm_family(m)) {
    std::ostringstream os;
    os << "type " << type_ << " does not divide m = " << m;
    throw make_error("NotZmFamily", os.str());
  }
}

FiniteBiquandleTable alexander_table(const AlexanderBiquandle& ab) {
  const Field& f = ab.field();
  const size_t q = static_cast<size_t>(f.order());
  FiniteBiquandleTable table;
  table.size = q;
  table.under_table.assign(q, std::vector<size_t>(q));
  table.over_table.assign(q, std::vector<size_t>(q));
  for (size_t i = 0; i < q; ++i) {
    FieldElement a = f.element_by_index(i);
    for (size_t j = 0; j < q; ++j) {
      FieldElement b = f.element_by_index(j);
      table.under_table[i][j] = f.index_of(ab.underop(a, b));
      table.over_table[i][j] = f.index_of(ab.overop(a, b));
    }
  }
  return table;
}

bool AxiomReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string AxiomReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "pass" : "FAIL") << "  " << c.axiom;
    if (!c.passed) os << "  [" << c.witness << "]";
    os << "\n";
  }
  return os.str();
}

namespace {

bool is_permutation_row(const std::vector<size_t>& row, size_t n) {
  std::vector<bool> seen(n, false);
  for (size_t v : row) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::string witness2(size_t x, size_t y) {
  std::ostringstream os;
  os << "x=" << x << " y=" << y;
  return os.str();
}

std::string witness3(size_t x, size_t y, size_t z) {
  std::ostringstream os;
  os << "x=" << x << " y=" << y << " z=" << z;
  return os.str();
}

}  // namespace

AxiomReport check_biquandle_axioms(const FiniteBiquandleTable& t) {
  AxiomReport report;
  const size_t n = t.size;
  auto under = [&](size_t x, size_t y) { return t.under_table[x][y]; };
  auto over = [&](size_t x, size_t y) { return t.over_table[x][y]; };

  AxiomCheck idem{"x <u> x = x <o> x"};
  for (size_t x = 0; x < n && idem.passed; ++x)
    if (under(x, x) != over(x, x)) {
      idem.passed = false;
      idem.witness = witness2(x, x);
    }
  report.checks.push_back(idem);

  AxiomCheck bij_under{"y -> y <u> x bijective for all x"};
  AxiomCheck bij_over{"y -> y <o> x bijective for all x"};
  for (size_t x = 0; x < n; ++x) {
    std::vector<size_t> col_u(n), col_o(n);
    for (size_t y = 0; y < n; ++y) {
      col_u[y] = under(y, x);
      col_o[y] = over(y, x);
    }
    if (bij_under.passed && !is_permutation_row(col_u, n)) {
      bij_under.passed = false;
      bij_under.witness = "x=" + std::to_string(x);
    }
    if (bij_over.passed && !is_permutation_row(col_o, n)) {
      bij_over.passed = false;
      bij_over.witness = "x=" + std::to_string(x);
    }
  }
  report.checks.push_back(bij_under);
  report.checks.push_back(bij_over);

  AxiomCheck smap{"S(x,y) = (y <o> x, x <u> y) bijective"};
  {
    std::vector<bool> seen(n * n, false);
    for (size_t x = 0; x < n && smap.passed; ++x)
      for (size_t y = 0; y < n; ++y) {
        size_t key = over(y, x) * n + under(x, y);
        if (seen[key]) {
          smap.passed = false;
          smap.witness = witness2(x, y);
          break;
        }
        seen[key] = true;
      }
  }
  report.checks.push_back(smap);

  AxiomCheck ex1{"(x<u>y)<u>(z<u>y) = (x<u>z)<u>(y<o>z)"};
  AxiomCheck ex2{"(x<u>y)<o>(z<u>y) = (x<o>z)<u>(y<o>z)"};
  AxiomCheck ex3{"(x<o>y)<o>(z<o>y) = (x<o>z)<o>(y<u>z)"};
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        if (ex1.passed && under(under(x, y), under(z, y)) != under(under(x, z), over(y, z))) {
          ex1.passed = false;
          ex1.witness = witness3(x, y, z);
        }
        if (ex2.passed && over(under(x, y), under(z, y)) != under(over(x, z), over(y, z))) {
          ex2.passed = false;
          ex2.witness = witness3(x, y, z);
        }
        if (ex3.passed && over(over(x, y), over(z, y)) != over(over(x, z), under(y, z))) {
          ex3.passed = false;
          ex3.witness = witness3(x, y, z);
        }
      }
  report.checks.push_back(ex1);
  report.checks.push_back(ex2);
  report.checks.push_back(ex3);
  return report;
}

AxiomReport check_gfamily_axioms(const AlexanderBiquandle& ab, uint64_t m, uint64_t seed,
                                 size_t samples, uint64_t exhaustive_budget) {
  ab.require_zm_family(m);
  const Field& f = ab.field();
  const uint64_t q = f.order();

  struct Triple {
    FieldElement x, y, z;
    int64_t g, h;
  };

  std::vector<Triple> triples;
  const bool exhaustive = q * q * q * m * m <= exhaustive_budget;
  if (exhaustive) {
    triples.reserve(static_cast<size_t>(q * q * q * m * m));
    for (uint64_t xi = 0; xi < q; ++xi)
      for (uint64_t yi = 0; yi < q; ++yi)
        for (uint64_t zi = 0; zi < q; ++zi)
          for (uint64_t g = 0; g < m; ++g)
            for (uint64_t h = 0; h < m; ++h)
              triples.push_back({f.element_by_index(xi), f.element_by_index(yi),
                                 f.element_by_index(zi), static_cast<int64_t>(g),
                                 static_cast<int64_t>(h)});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> elem(0, q - 1);
    std::uniform_int_distribution<uint64_t> grp(0, m - 1);
    triples.reserve(samples);
    for (size_t i = 0; i < samples; ++i)
      triples.push_back({f.element_by_index(elem(rng)), f.element_by_index(elem(rng)),
                         f.element_by_index(elem(rng)), static_cast<int64_t>(grp(rng)),
                         static_cast<int64_t>(grp(rng))});
  }

  AxiomReport report;
  std::ostringstream mode;
  mode << (exhaustive ? "exhaustive over " : "sampled with ") << triples.size() << " trials";
  report.checks.push_back({"mode: " + mode.str(), true, ""});

  auto u = [&](const FieldElement& a, const FieldElement& b, int64_t g) {
    return ab.underop_n(a, b, g);
  };
  auto o = [&](const FieldElement& a, const FieldElement& b, int64_t g) {
    return ab.overop_n(a, b, g);
  };

  AxiomCheck a1{"x <u>^g x = x <o>^g x"};
  AxiomCheck a2{"x <u>^(g+h) y = (x<u>^g y) <u>^h (y<u>^g y); x <u>^0 y = x"};
  AxiomCheck a3{"x <o>^(g+h) y = (x<o>^g y) <o>^h (y<o>^g y); x <o>^0 y = x"};
  AxiomCheck e1{"(x<u>^g y)<u>^h(z<o>^g y) = (x<u>^h z)<u>^g(y<u>^h z)"};
  AxiomCheck e2{"(x<o>^g y)<u>^h(z<o>^g y) = (x<u>^h z)<o>^g(y<u>^h z)"};
  AxiomCheck e3{"(x<o>^g y)<o>^h(z<o>^g y) = (x<o>^h z)<o>^g(y<u>^h z)"};

  for (const auto& tr : triples) {
    const auto& x = tr.x;
    const auto& y = tr.y;
    const auto& z = tr.z;
    int64_t g = tr.g, h = tr.h;
    std::string w = "g=" + std::to_string(g) + " h=" + std::to_string(h);
    if (a1.passed && !(u(x, x, g) == o(x, x, g))) {
      a1.passed = false;
      a1.witness = w;
    }
    if (a2.passed &&
        !(u(x, y, g + h) == u(u(x, y, g), u(y, y, g), h) && u(x, y, 0) == x)) {
      a2.passed = false;
      a2.witness = w;
    }
    if (a3.passed &&
        !(o(x, y, g + h) == o(o(x, y, g), o(y, y, g), h) && o(x, y, 0) == x)) {
      a3.passed = false;
      a3.witness = w;
    }
    // Z_m is abelian, so h^{-1} g h = g.
    if (e1.passed && !(u(u(x, y, g), o(z, y, g), h) == u(u(x, z, h), u(y, z, h), g))) {
      e1.passed = false;
      e1.witness = w;
    }
    if (e2.passed && !(u(o(x, y, g), o(z, y, g), h) == o(u(x, z, h), u(y, z, h), g))) {
      e2.passed = false;
      e2.witness = w;
    }
    if (e3.passed && !(o(o(x, y, g), o(z, y, g), h) == o(o(x, z, h), u(y, z, h), g))) {
      e3.passed = false;
      e3.witness = w;
    }
  }
  report.checks.push_back(a1);
  report.checks.push_back(a2);
  report.checks.push_back(a3);
  report.checks.push_back(e1);
  report.checks.push_back(e2);
  report.checks.push_back(e3);
  return report;
}

}  // namespace hbk
