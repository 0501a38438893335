#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyparr/qmatrix.hpp"
#include "hyparr/rational.hpp"

namespace hyparr {

/// Univariate polynomial with integer coefficients, stored from t^0 upward
/// with the top coefficient nonzero.
class IntPoly {
 public:
  IntPoly() = default;  // zero polynomial
  explicit IntPoly(std::vector<Int> coeffs);

  static IntPoly monomial(const Int& c, std::size_t power);
  static IntPoly from_roots(const std::vector<Int>& roots);  // prod (t - r)

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Int coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Int(0); }
  const std::vector<Int>& coeffs() const { return c_; }

  IntPoly operator+(const IntPoly& rhs) const;
  IntPoly operator-(const IntPoly& rhs) const;
  IntPoly operator*(const IntPoly& rhs) const;
  bool operator==(const IntPoly& rhs) const { return c_ == rhs.c_; }

  /// Quotient when the division is exact over the integers, otherwise empty.
  std::optional<IntPoly> divide_exact(const IntPoly& divisor) const;

  Int eval(const Int& t) const;

  /// "t^3 - 7t^2 + 18t - 17", highest degree first.
  std::string pretty(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Int> c_;
};

/// Exponent vector, one entry per variable.
using Monomial = std::vector<unsigned>;

/// All monomials of the given total degree, in a fixed deterministic order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

/// Sparse multivariate polynomial over the rationals.
class MPoly {
 public:
  explicit MPoly(std::size_t nvars = 0) : n_(nvars) {}

  static MPoly constant(std::size_t nvars, const Rat& c);
  static MPoly variable(std::size_t nvars, std::size_t i);
  static MPoly linear_form(const QVector& coeffs);

  std::size_t nvars() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  long total_degree() const;

  void add_term(const Monomial& m, const Rat& c);
  const std::map<Monomial, Rat>& terms() const { return t_; }
  Rat coeff(const Monomial& m) const;

  MPoly operator+(const MPoly& rhs) const;
  MPoly operator-(const MPoly& rhs) const;
  MPoly operator*(const MPoly& rhs) const;
  MPoly scaled(const Rat& c) const;
  MPoly pow(unsigned k) const;
  bool operator==(const MPoly& rhs) const { return n_ == rhs.n_ && t_ == rhs.t_; }

  /// Substitutes replacement[i] for variable i.
  MPoly substitute(const std::vector<MPoly>& replacement) const;

  Rat eval(const QVector& point) const;

  /// Smallest exponent of the given variable over all terms; nvars()+degree
  /// bound is irrelevant for the zero polynomial, which reports UINT_MAX.
  unsigned min_exponent_of(std::size_t var) const;

  std::string pretty(const std::vector<std::string>& vars) const;

 private:
  std::size_t n_ = 0;
  std::map<Monomial, Rat> t_;
};

/// Determinant of a square matrix of polynomials (cofactor expansion).
MPoly mpoly_det(const std::vector<std::vector<MPoly>>& m);

}  // namespace hyparr
