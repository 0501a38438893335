#include <doctest.h>

#include <random>

#include "hyparr/decone.hpp"
#include "hyparr/multi.hpp"
#include "support/corpus.hpp"

using namespace hyparr;
using namespace hyparr::testsupport;

namespace {

Arrangement a1() {
  return arr_from(4, {{1, 0, 0, 0},
                      {1, 0, 0, -1},
                      {0, 1, 0, 0},
                      {0, 1, 0, -1},
                      {1, 1, 1, 0},
                      {1, -1, 1, 0},
                      {0, 0, 1, 0},
                      {0, 0, 0, 1}});
}

Arrangement a2() {
  return arr_from(4, {{1, 0, 0, 0},
                      {1, 0, 0, -1},
                      {0, 1, 0, 0},
                      {0, 1, 0, -1},
                      {1, 1, 1, 0},
                      {1, -1, 1, 0},
                      {0, 0, 1, -1},
                      {0, 0, 0, 1}});
}

std::multiset<std::string> hyperplane_keys(const Arrangement& arr) {
  std::multiset<std::string> keys;
  for (const auto& h : arr.hyperplanes) keys.insert(normal_key(h));
  return keys;
}

}  // namespace

TEST_CASE("deconing the catalog goldens") {
  const DeconedArrangement d1 = decone(a1(), 7);
  CHECK(d1.base.dim == 3);
  CHECK(d1.base.size() == 7);
  const Arrangement expect1 = arr_from(
      3,
      {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}, {1, 1, 1}, {1, -1, 1}, {0, 0, 1}},
      {0, 1, 0, 1, 0, 0, 0});
  CHECK(hyperplane_keys(d1.base) == hyperplane_keys(expect1));
  CHECK(charpoly(d1.base).coeffs() ==
        std::vector<Int>{Int(-17), Int(18), Int(-7), Int(1)});

  const DeconedArrangement d2 = decone(a2(), 7);
  const Arrangement expect2 = arr_from(
      3,
      {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}, {1, 1, 1}, {1, -1, 1}, {0, 0, 1}},
      {0, 1, 0, 1, 0, 0, 1});
  CHECK(hyperplane_keys(d2.base) == hyperplane_keys(expect2));
  CHECK(charpoly(d2.base).coeffs() ==
        std::vector<Int>{Int(-19), Int(18), Int(-7), Int(1)});
}

TEST_CASE("deconing a boolean pair gives a point") {
  const DeconedArrangement d = decone(arr_from(2, {{1, 0}, {0, 1}}), 1);
  CHECK(d.base.dim == 1);
  CHECK(d.base.size() == 1);
  CHECK(d.base.hyperplanes[0].normal == QVector{Rat(1)});
  CHECK(d.base.hyperplanes[0].offset == Rat(0));
}

TEST_CASE("decone preconditions") {
  CHECK_THROWS_AS(decone(arr_from(2, {{1, 0}}, {1}), 0), std::invalid_argument);
  CHECK_THROWS_AS(decone(arr_from(2, {{1, 0}}), 5), std::invalid_argument);
}

TEST_CASE("deconing identity on random central arrangements") {
  std::mt19937 gen(31);
  const IntPoly t_minus_1(std::vector<Int>{Int(-1), Int(1)});
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t dim = 3 + trial % 3;
    const Arrangement arr = random_central(dim, dim + 2, gen, trial % 2 == 0);
    const IntPoly chi = charpoly(arr);
    for (std::size_t pivot = 0; pivot < arr.size(); ++pivot)
      CHECK(charpoly(decone(arr, pivot).base) * t_minus_1 == chi);
  }
}

TEST_CASE("restriction map preserves rank and order") {
  std::mt19937 gen(37);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t dim = 3 + trial % 2;
    const Arrangement arr = random_central(dim, dim + 2, gen, trial % 2 == 0);
    const RestrictionMap rm = restriction_map(decone(arr, trial % arr.size()));
    for (std::size_t a = 0; a < rm.source.flats.size(); ++a) {
      CHECK(rm.source.flats[a].rank() == rm.target.flats[rm.image[a]].rank());
      for (std::size_t b = 0; b < rm.source.flats.size(); ++b)
        if (rm.source.leq(a, b)) CHECK(rm.target.leq(rm.image[a], rm.image[b]));
    }
    // fibers partition each rank level of the source
    std::size_t covered = 0;
    for (const auto& fiber : rm.fibers) covered += fiber.size();
    CHECK(covered == rm.source.flats.size());
  }
}

TEST_CASE("parallel flats in the decone share their image") {
  // decone of the boolean 3-arrangement at z: the affine lines x=0 and x=1
  // of the decone both span planes meeting the pivot hyperplane in x=0
  const DeconedArrangement d = decone(arr_from(3, {{1, 0, 0}, {1, 0, -1}, {0, 0, 1}}), 2);
  const RestrictionMap rm = restriction_map(d);
  REQUIRE(rm.source.by_rank.size() >= 2);
  REQUIRE(rm.source.by_rank[1].size() == 2);
  CHECK(rm.image[rm.source.by_rank[1][0]] == rm.image[rm.source.by_rank[1][1]]);
}

TEST_CASE("rank-1 flats map to the trace of their hyperplane") {
  const Arrangement arr = a1();
  const DeconedArrangement d = decone(arr, 7);
  const RestrictionMap rm = restriction_map(d);
  const MultiArrangement zr = ziegler_restrict(arr, 7);
  // every rank-1 source flat is a decone hyperplane; its image must be the
  // corresponding trace hyperplane of the restriction
  for (std::size_t id : rm.source.by_rank[1]) {
    const Flat& target = rm.target.flats[rm.image[id]];
    REQUIRE(target.rank() == 1);
    bool matches_trace = false;
    for (std::size_t i = 0; i < zr.base.size(); ++i)
      if (flat_inside_hyperplane(target, zr.base.hyperplanes[i])) matches_trace = true;
    CHECK(matches_trace);
  }
}

TEST_CASE("fiber decomposition of b2") {
  SUBCASE("boolean") {
    const FiberB2 fib = fiber_decomposition_b2(decone(arr_from(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 2));
    CHECK(fib.total == 1);
    Int nonzero(0);
    for (const auto& v : fib.b2_by_target)
      if (v != 0) nonzero += v;
    CHECK(nonzero == 1);
  }

  SUBCASE("catalog a1: values sum to 18 and the doubled flat contributes 4") {
    const FiberB2 fib = fiber_decomposition_b2(decone(a1(), 7));
    CHECK(fib.total == 18);
    Int sum(0);
    for (std::size_t id = 0; id < fib.b2_by_target.size(); ++id) {
      sum += fib.b2_by_target[id];
      if (fib.map.target.flats[id].rank() == 2)
        CHECK(fib.b2_by_target[id] >= 1);
    }
    CHECK(sum == 18);

    // the fiber over {x=0, y=0} consists of the four vertical lines cut out
    // by pairs from {x, x-1} x {y, y-1}
    for (std::size_t id = 0; id < fib.b2_by_target.size(); ++id) {
      const Flat& f = fib.map.target.flats[id];
      if (f.rank() != 2) continue;
      const auto& eq = f.equations;
      const bool is_xy_axis = eq.rows() == 2 && eq.at(0, 0) == 1 && eq.at(0, 1) == 0 &&
                              eq.at(0, 2) == 0 && eq.at(1, 1) == 1 && eq.at(1, 2) == 0;
      if (is_xy_axis) {
        CHECK(fib.map.fibers[id].size() == 4);
        CHECK(fib.b2_by_target[id] == 4);
      }
    }
  }
}

TEST_CASE("fullness: fiber mass equals b2 of the localized decone") {
  std::mt19937 gen(43);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t dim = 3 + trial % 2;
    const Arrangement arr = random_central(dim, dim + 2, gen, true);
    const std::size_t pivot = trial % arr.size();
    const DeconedArrangement d = decone(arr, pivot);
    const FiberB2 fib = fiber_decomposition_b2(d);
    const IntersectionPoset parent_poset = build_poset(arr);

    Int total(0);
    for (const auto& v : fib.b2_by_target) total += v;
    CHECK(total == betti_of(charpoly(d.base), arr.dim - 1, 2));

    if (fib.map.target.by_rank.size() <= 2) continue;
    for (std::size_t tid : fib.map.target.by_rank[2]) {
      // lift the rank-2 target flat to the parent: its frame-coordinate
      // equations together with the pivot hyperplane itself
      const Flat& target = fib.map.target.flats[tid];
      QMatrix stack(0, dim + 1);
      for (std::size_t r = 0; r < target.equations.rows(); ++r) {
        QVector u_row(dim, Rat(0));
        for (std::size_t c = 0; c + 1 < target.equations.cols(); ++c)
          u_row[c] = target.equations.at(r, c);
        QVector z_row(dim + 1, Rat(0));
        for (std::size_t k = 0; k < dim; ++k)
          for (std::size_t j = 0; j < dim; ++j)
            z_row[k] += u_row[j] * d.frame.at(j, k);
        stack.append_row(z_row);
      }
      QVector pivot_row = arr.hyperplanes[pivot].normal;
      pivot_row.push_back(Rat(0));
      stack.append_row(pivot_row);
      Flat probe;
      probe.equations = rref(std::move(stack)).mat;
      const std::string key = probe.key();

      bool found = false;
      REQUIRE(parent_poset.by_rank.size() > 3);
      for (std::size_t pid : parent_poset.by_rank[3]) {
        if (parent_poset.flats[pid].key() != key) continue;
        found = true;
        const Arrangement local = localize(arr, parent_poset.flats[pid]);
        std::size_t local_pivot = local.size();
        for (std::size_t i = 0; i < local.size(); ++i)
          if (local.labels[i] == arr.labels[pivot]) local_pivot = i;
        REQUIRE(local_pivot < local.size());
        const Int b2_local =
            betti_of(charpoly(decone(local, local_pivot).base), dim - 1, 2);
        CHECK(b2_local == fib.b2_by_target[tid]);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("degenerate pivot: single hyperplane") {
  const Arrangement arr = arr_from(3, {{1, 0, 0}});
  const DeconedArrangement d = decone(arr, 0);
  CHECK(d.base.size() == 0);
  const RestrictionMap rm = restriction_map(d);
  CHECK(rm.source.flats.size() == 1);
  CHECK(rm.target.flats.size() == 1);
  const FiberB2 fib = fiber_decomposition_b2(d);
  CHECK(fib.total == 0);
}
