#include <doctest.h>

#include "hyparr/poly.hpp"

using namespace hyparr;

TEST_CASE("integer polynomial arithmetic") {
  const IntPoly p = IntPoly::from_roots({Int(1), Int(2), Int(3)});
  CHECK(p.coeffs() == std::vector<Int>{Int(-6), Int(11), Int(-6), Int(1)});
  CHECK(p.pretty() == "t^3 - 6t^2 + 11t - 6");
  CHECK(p.eval(Int(2)) == 0);
  CHECK(p.eval(Int(4)) == 6);

  const IntPoly t_minus_1(std::vector<Int>{Int(-1), Int(1)});
  const auto q = p.divide_exact(t_minus_1);
  REQUIRE(q);
  CHECK(*q == IntPoly::from_roots({Int(2), Int(3)}));
  CHECK(!IntPoly(std::vector<Int>{Int(1), Int(1)}).divide_exact(t_minus_1));

  CHECK((p - p).is_zero());
  CHECK(IntPoly().pretty() == "0");
  CHECK(IntPoly(std::vector<Int>{Int(-17), Int(18), Int(-7), Int(1)}).pretty() ==
        "t^3 - 7t^2 + 18t - 17");
}

TEST_CASE("monomial enumeration") {
  CHECK(monomials_of_degree(2, 3).size() == 4);
  CHECK(monomials_of_degree(3, 4).size() == 15);
  CHECK(monomials_of_degree(3, 0).size() == 1);
  // every monomial distinct and of the right degree
  const auto monos = monomials_of_degree(4, 5);
  CHECK(monos.size() == 56);
  for (const auto& m : monos) {
    unsigned d = 0;
    for (auto e : m) d += e;
    CHECK(d == 5);
  }
}

TEST_CASE("multivariate arithmetic and substitution") {
  const MPoly x = MPoly::variable(2, 0);
  const MPoly y = MPoly::variable(2, 1);
  const MPoly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.total_degree() == 2);
  CHECK(p.eval({Rat(3), Rat(2)}) == Rat(5));

  // substitute x -> u+v, y -> u-v: (x+y)(x-y) becomes 4uv
  const MPoly u = MPoly::variable(2, 0);
  const MPoly v = MPoly::variable(2, 1);
  const MPoly swapped = p.substitute({u + v, u - v});
  CHECK(swapped == (u * v).scaled(Rat(4)));

  CHECK(MPoly::linear_form({Rat(1), Rat(-1)}).pow(2).coeff({1, 1}) == Rat(-2));
  CHECK(p.min_exponent_of(0) == 0);
  CHECK((x * x * y).min_exponent_of(0) == 2);
}

TEST_CASE("polynomial determinants") {
  const std::size_t n = 3;
  std::vector<std::vector<MPoly>> diag(n, std::vector<MPoly>(n, MPoly(n)));
  for (std::size_t i = 0; i < n; ++i) diag[i][i] = MPoly::variable(n, i);
  const MPoly det = mpoly_det(diag);
  CHECK(det == MPoly::variable(n, 0) * MPoly::variable(n, 1) * MPoly::variable(n, 2));

  // swap two rows: determinant negates
  std::swap(diag[0], diag[1]);
  CHECK(mpoly_det(diag) == det.scaled(Rat(-1)));
}
