#include "hbk/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace hbk {

struct FieldElement::Rep {
  uint32_t p = 0;
  uint32_t d = 0;
  uint64_t order = 0;
  std::vector<uint32_t> modulus;  // monic, ascending, length d+1
  // t^(d+k) reduced mod f for k in [0, d-1); used by schoolbook reduction.
  std::vector<std::vector<uint32_t>> high_power;
};

namespace {

uint32_t mod_p(int64_t v, uint32_t p) {
  int64_t r = v % static_cast<int64_t>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

uint32_t inv_mod_p(uint32_t a, uint32_t p) {
  // Fermat; p is prime and a != 0.
  uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

}  // namespace

namespace poly {

std::vector<uint32_t> normalize_mod_p(const std::vector<int64_t>& f, uint32_t p) {
  std::vector<uint32_t> out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = mod_p(f[i], p);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<uint32_t> mul_mod_p(const std::vector<uint32_t>& a,
                                const std::vector<uint32_t>& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint64_t(a[i]) * b[j] % p;
  std::vector<uint32_t> out(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<uint32_t>(acc[i] % p);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<uint32_t> rem_mod_p(std::vector<uint32_t> a,
                                const std::vector<uint32_t>& b, uint32_t p) {
  assert(!b.empty() && b.back() == 1);  // monic
  const size_t db = b.size() - 1;
  while (a.size() > db) {
    uint32_t lead = a.back();
    size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (size_t i = 0; i <= db; ++i) {
        uint64_t sub = uint64_t(lead) * b[i] % p;
        uint64_t cur = a[shift + i];
        a[shift + i] = static_cast<uint32_t>((cur + p - sub) % p);
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool is_irreducible_mod_p(const std::vector<uint32_t>& f, uint32_t p) {
  assert(!f.empty() && f.back() == 1);
  const size_t d = f.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  // Trial division against all monic polynomials of degree <= d/2.
  for (size_t deg = 1; deg <= d / 2; ++deg) {
    uint64_t count = 1;
    for (size_t i = 0; i < deg; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      std::vector<uint32_t> g(deg + 1, 0);
      uint64_t v = idx;
      for (size_t i = 0; i < deg; ++i) {
        g[i] = static_cast<uint32_t>(v % p);
        v /= p;
      }
      g[deg] = 1;
      if (rem_mod_p(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Field Field::make(uint32_t p, const std::vector<int64_t>& f) {
  if (!is_prime(p)) throw make_error("NotPrime", "p = " + std::to_string(p));
  if (f.empty()) throw make_error("InvalidArgument", "empty modulus polynomial");
  if (mod_p(f.back(), p) == 0)
    throw make_error("InvalidArgument", "leading coefficient vanishes mod p");

  std::vector<uint32_t> g = poly::normalize_mod_p(f, p);
  if (g.size() < 2)
    throw make_error("InvalidArgument", "modulus must have degree >= 1");
  if (g[0] == 0)
    throw make_error("TNotInvertible", "f(0) = 0, so t is not a unit");
  // Make monic.
  if (g.back() != 1) {
    uint32_t c = inv_mod_p(g.back(), p);
    for (auto& v : g) v = static_cast<uint32_t>(uint64_t(v) * c % p);
  }
  if (!poly::is_irreducible_mod_p(g, p)) {
    std::ostringstream os;
    os << "f is reducible over Z_" << p;
    throw make_error("Reducible", os.str());
  }

  auto rep = std::make_shared<FieldElement::Rep>();
  rep->p = p;
  rep->d = static_cast<uint32_t>(g.size() - 1);
  rep->modulus = g;
  rep->order = 1;
  for (uint32_t i = 0; i < rep->d; ++i) rep->order *= p;

  // t^(d+k) mod f, computed incrementally from t^d = -(f - t^d).
  std::vector<uint32_t> cur(rep->d, 0);
  for (uint32_t i = 0; i < rep->d; ++i) cur[i] = (p - g[i]) % p;
  rep->high_power.push_back(cur);
  for (uint32_t k = 1; k + 1 < rep->d; ++k) {
    // multiply by t, reduce the overflowing t^d term
    std::vector<uint32_t> next(rep->d, 0);
    for (uint32_t i = 0; i + 1 < rep->d; ++i) next[i + 1] = cur[i];
    uint32_t top = cur[rep->d - 1];
    if (top != 0) {
      const auto& td = rep->high_power[0];
      for (uint32_t i = 0; i < rep->d; ++i)
        next[i] = static_cast<uint32_t>((next[i] + uint64_t(top) * td[i]) % p);
    }
    rep->high_power.push_back(next);
    cur = next;
  }
  return Field(std::move(rep));
}

uint32_t Field::p() const { return rep_->p; }
uint32_t Field::degree() const { return rep_->d; }
uint64_t Field::order() const { return rep_->order; }
const std::vector<uint32_t>& Field::modulus() const { return rep_->modulus; }

FieldElement Field::zero() const {
  return FieldElement(rep_, std::vector<uint32_t>(rep_->d, 0));
}

FieldElement Field::one() const {
  std::vector<uint32_t> c(rep_->d, 0);
  c[0] = 1;
  return FieldElement(rep_, std::move(c));
}

FieldElement Field::t() const {
  std::vector<uint32_t> c(rep_->d, 0);
  if (rep_->d == 1) {
    // t is a scalar: t = -f0 since f = t + f0
    c[0] = (rep_->p - rep_->modulus[0]) % rep_->p;
  } else {
    c[1] = 1;
  }
  return FieldElement(rep_, std::move(c));
}

FieldElement Field::element(const std::vector<int64_t>& coeffs) const {
  std::vector<uint32_t> g = poly::normalize_mod_p(coeffs, rep_->p);
  g = poly::rem_mod_p(std::move(g), rep_->modulus, rep_->p);
  g.resize(rep_->d, 0);
  return FieldElement(rep_, std::move(g));
}

FieldElement Field::element_by_index(uint64_t index) const {
  std::vector<uint32_t> c(rep_->d, 0);
  for (uint32_t i = 0; i < rep_->d; ++i) {
    c[i] = static_cast<uint32_t>(index % rep_->p);
    index /= rep_->p;
  }
  return FieldElement(rep_, std::move(c));
}

uint64_t Field::index_of(const FieldElement& a) const {
  uint64_t idx = 0;
  for (uint32_t i = rep_->d; i-- > 0;) idx = idx * rep_->p + a.coeffs()[i];
  return idx;
}

uint64_t Field::mult_order(const FieldElement& a) const {
  if (a.is_zero()) throw make_error("ZeroElement", "mult_order of 0");
  uint64_t n = rep_->order - 1;
  // Descend through divisors: n is an exponent annihilating a (Lagrange);
  // strip each prime while the power stays 1.
  for (uint64_t q : prime_factors(n)) {
    while (n % q == 0 && a.pow(static_cast<int64_t>(n / q)).is_one()) n /= q;
  }
  return n;
}

Field FieldElement::field() const { return Field(rep_); }

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](uint32_t c) { return c == 0; });
}

bool FieldElement::is_one() const {
  if (coeffs_[0] != 1) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](uint32_t c) { return c == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  assert(rep_ == rhs.rep_);
  std::vector<uint32_t> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = (coeffs_[i] + rhs.coeffs_[i]) % rep_->p;
  return FieldElement(rep_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  assert(rep_ == rhs.rep_);
  std::vector<uint32_t> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = (coeffs_[i] + rep_->p - rhs.coeffs_[i]) % rep_->p;
  return FieldElement(rep_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  std::vector<uint32_t> c(coeffs_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = (rep_->p - coeffs_[i]) % rep_->p;
  return FieldElement(rep_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  assert(rep_ == rhs.rep_);
  const uint32_t p = rep_->p, d = rep_->d;
  std::vector<uint64_t> acc(2 * d - 1, 0);
  for (uint32_t i = 0; i < d; ++i) {
    if (coeffs_[i] == 0) continue;
    for (uint32_t j = 0; j < d; ++j)
      acc[i + j] += uint64_t(coeffs_[i]) * rhs.coeffs_[j] % p;
  }
  std::vector<uint32_t> c(d, 0);
  for (uint32_t i = 0; i < d; ++i) c[i] = static_cast<uint32_t>(acc[i] % p);
  for (uint32_t k = 0; k + 1 < d; ++k) {
    uint64_t hi = acc[d + k] % p;
    if (hi == 0) continue;
    const auto& red = rep_->high_power[k];
    for (uint32_t i = 0; i < d; ++i)
      c[i] = static_cast<uint32_t>((c[i] + hi * red[i]) % p);
  }
  return FieldElement(rep_, std::move(c));
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw make_error("DivisionByZero", "inv(0)");
  // a^(q-2) in F_q
  return pow(static_cast<int64_t>(rep_->order - 2));
}

FieldElement FieldElement::pow(int64_t n) const {
  if (n < 0) return inv().pow(-n);
  FieldElement base = *this;
  FieldElement result = FieldElement(rep_, [&] {
    std::vector<uint32_t> c(coeffs_.size(), 0);
    c[0] = 1;
    return c;
  }());
  uint64_t e = static_cast<uint64_t>(n);
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool FieldElement::operator==(const FieldElement& rhs) const {
  return rep_ == rhs.rep_ && coeffs_ == rhs.coeffs_;
}

bool FieldElement::operator<(const FieldElement& rhs) const {
  assert(rep_ == rhs.rep_);
  return std::lexicographical_compare(coeffs_.rbegin(), coeffs_.rend(),
                                      rhs.coeffs_.rbegin(), rhs.coeffs_.rend());
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ",";
    os << coeffs_[i];
  }
  return os.str();
}

}  // namespace hbk
