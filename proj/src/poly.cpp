#include "hyparr/poly.hpp"

#include <climits>
#include <stdexcept>

namespace hyparr {

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::monomial(const Int& c, std::size_t power) {
  if (c == 0) return IntPoly();
  std::vector<Int> v(power + 1, Int(0));
  v[power] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::from_roots(const std::vector<Int>& roots) {
  IntPoly p(std::vector<Int>{Int(1)});
  for (const auto& r : roots) {
    IntPoly factor(std::vector<Int>{-r, Int(1)});
    p = p * factor;
  }
  return p;
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const {
  std::vector<Int> v(std::max(c_.size(), rhs.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) v[i] += rhs.c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const {
  std::vector<Int> v(std::max(c_.size(), rhs.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) v[i] -= rhs.c_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return IntPoly();
  std::vector<Int> v(c_.size() + rhs.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) v[i + j] += c_[i] * rhs.c_[j];
  return IntPoly(std::move(v));
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (is_zero()) return IntPoly();
  if (degree() < divisor.degree()) return std::nullopt;
  std::vector<Int> rem = c_;
  std::vector<Int> quot(c_.size() - divisor.c_.size() + 1, Int(0));
  const Int& lead = divisor.c_.back();
  for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
    const Int& top = rem[k + divisor.degree()];
    if (top % lead != 0) return std::nullopt;
    const Int q = top / lead;
    quot[k] = q;
    for (std::size_t i = 0; i < divisor.c_.size(); ++i)
      rem[k + i] -= q * divisor.c_[i];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return IntPoly(std::move(quot));
}

Int IntPoly::eval(const Int& t) const {
  Int acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string IntPoly::pretty(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (long k = degree(); k >= 0; --k) {
    const Int& c = c_[k];
    if (c == 0) continue;
    const bool first = out.empty();
    const Int a = abs(c);
    if (first)
      out += (c < 0 ? "-" : "");
    else
      out += (c < 0 ? " - " : " + ");
    const bool unit = (a == 1) && k > 0;
    if (!unit) out += a.get_str();
    if (k > 0) {
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  Monomial cur(nvars, 0);
  // lexicographic by exponent vector, last variable soaks up the remainder
  auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var + 1 == nvars) {
      cur[var] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[var] = e;
      self(self, var + 1, left - e);
    }
    cur[var] = 0;
  };
  rec(rec, 0, d);
  return out;
}

MPoly MPoly::constant(std::size_t nvars, const Rat& c) {
  MPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t i) {
  MPoly p(nvars);
  Monomial m(nvars, 0);
  m[i] = 1;
  p.add_term(m, Rat(1));
  return p;
}

MPoly MPoly::linear_form(const QVector& coeffs) {
  MPoly p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Monomial m(coeffs.size(), 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

long MPoly::total_degree() const {
  long best = -1;
  for (const auto& [m, c] : t_) {
    long d = 0;
    for (auto e : m) d += e;
    if (d > best) best = d;
  }
  return best;
}

void MPoly::add_term(const Monomial& m, const Rat& c) {
  if (m.size() != n_) throw std::invalid_argument("monomial arity mismatch");
  if (c == 0) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Rat MPoly::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rat(0) : it->second;
}

MPoly MPoly::operator+(const MPoly& rhs) const {
  MPoly out = *this;
  for (const auto& [m, c] : rhs.t_) out.add_term(m, c);
  return out;
}

MPoly MPoly::operator-(const MPoly& rhs) const {
  MPoly out = *this;
  for (const auto& [m, c] : rhs.t_) out.add_term(m, -c);
  return out;
}

MPoly MPoly::operator*(const MPoly& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("polynomial arity mismatch");
  MPoly out(n_);
  for (const auto& [ma, ca] : t_)
    for (const auto& [mb, cb] : rhs.t_) {
      Monomial m(n_);
      for (std::size_t i = 0; i < n_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

MPoly MPoly::scaled(const Rat& c) const {
  MPoly out(n_);
  if (c == 0) return out;
  for (const auto& [m, v] : t_) out.t_.emplace(m, v * c);
  return out;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly acc = MPoly::constant(n_, Rat(1));
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

MPoly MPoly::substitute(const std::vector<MPoly>& replacement) const {
  if (replacement.size() != n_) throw std::invalid_argument("substitute arity");
  const std::size_t m_out = replacement.empty() ? 0 : replacement[0].nvars();
  MPoly out(m_out);
  for (const auto& [mono, c] : t_) {
    MPoly term = MPoly::constant(m_out, c);
    for (std::size_t i = 0; i < n_; ++i)
      if (mono[i] > 0) term = term * replacement[i].pow(mono[i]);
    out = out + term;
  }
  return out;
}

Rat MPoly::eval(const QVector& point) const {
  if (point.size() != n_) throw std::invalid_argument("eval arity");
  Rat acc(0);
  for (const auto& [mono, c] : t_) {
    Rat term = c;
    for (std::size_t i = 0; i < n_; ++i)
      for (unsigned e = 0; e < mono[i]; ++e) term *= point[i];
    acc += term;
  }
  return acc;
}

unsigned MPoly::min_exponent_of(std::size_t var) const {
  unsigned best = UINT_MAX;
  for (const auto& [mono, c] : t_)
    if (mono[var] < best) best = mono[var];
  return best;
}

std::string MPoly::pretty(const std::vector<std::string>& vars) const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& [mono, c] : t_) {
    const bool first = out.empty();
    const bool neg = c < 0;
    Rat a = neg ? Rat(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string body;
    for (std::size_t i = 0; i < n_; ++i) {
      if (mono[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += vars[i];
      if (mono[i] > 1) body += "^" + std::to_string(mono[i]);
    }
    if (body.empty()) {
      out += to_string(a);
    } else {
      if (a != 1) out += to_string(a) + "*";
      out += body;
    }
  }
  return out;
}

namespace {

MPoly det_rec(const std::vector<std::vector<MPoly>>& m, std::vector<std::size_t> cols,
              std::size_t row) {
  const std::size_t n = m.size();
  if (row == n) return MPoly::constant(n == 0 ? 0 : m[0][0].nvars(), Rat(1));
  MPoly acc(m[0][0].nvars());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const MPoly& entry = m[row][cols[k]];
    if (entry.is_zero()) continue;
    std::vector<std::size_t> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) rest.push_back(cols[j]);
    MPoly sub = entry * det_rec(m, std::move(rest), row + 1);
    if (k % 2 == 1) sub = sub.scaled(Rat(-1));
    acc = acc + sub;
  }
  return acc;
}

}  // namespace

MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly::constant(0, Rat(1));
  for (const auto& r : m)
    if (r.size() != n) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return det_rec(m, std::move(cols), 0);
}

}  // namespace hyparr
