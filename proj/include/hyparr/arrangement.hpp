#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyparr/poly.hpp"
#include "hyparr/qmatrix.hpp"

namespace hyparr {

/// The affine hyperplane {z : normal·z = offset}. Normals are scaled so the
/// first nonzero entry is 1, which makes proportional forms compare equal.
struct Hyperplane {
  QVector normal;
  Rat offset;
};

Hyperplane make_hyperplane(QVector normal, Rat offset);
bool contains_point(const Hyperplane& h, const QVector& p);

struct Arrangement {
  std::size_t dim = 0;
  std::vector<Hyperplane> hyperplanes;
  std::vector<std::string> labels;  // one per hyperplane

  std::size_t size() const { return hyperplanes.size(); }
  bool is_central() const;  // every offset zero
  std::size_t rank() const; // rank of the stacked normals
};

/// Validates dimensions, canonicalizes, fills missing labels, and rejects
/// duplicate hyperplanes (the exception message names the offending index).
Arrangement make_arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
                             std::vector<std::string> labels = {});

/// A nonempty intersection of hyperplanes. `equations` is the canonical RREF
/// of the stacked (normal | offset) rows and doubles as the identity of the
/// flat; `contains` lists every hyperplane of the arrangement that contains
/// the flat (it is maximal by construction).
struct Flat {
  QMatrix equations;   // rank rows, dim+1 columns
  QVector basepoint;
  std::vector<QVector> directions;
  std::vector<std::uint32_t> contains;

  std::size_t rank() const { return equations.rows(); }
  std::string key() const;
};

bool flat_inside_hyperplane(const Flat& f, const Hyperplane& h);

struct IntersectionPoset {
  std::size_t dim = 0;
  std::vector<Flat> flats;                      // flats[0] is the ambient space
  std::vector<std::vector<std::size_t>> by_rank;
  std::vector<Int> mobius;

  /// Partial order: a <= b iff the flat a contains the flat b as a set,
  /// equivalently contains(a) is a subset of contains(b).
  bool leq(std::size_t a, std::size_t b) const;
  std::size_t max_rank() const { return by_rank.size() - 1; }
};

/// Builds every nonempty intersection rank by rank, deduplicated by canonical
/// equation form, with maximal `contains` sets and Möbius values filled in.
IntersectionPoset build_poset(const Arrangement& arr);

/// Recomputes Möbius values from the order relation alone.
std::vector<Int> mobius(const IntersectionPoset& poset);

IntPoly charpoly(const IntersectionPoset& poset);
IntPoly charpoly(const Arrangement& arr);

/// b_k = (−1)^k · coefficient of t^(dim−k). Throws when k exceeds the
/// ambient dimension of the polynomial.
Int betti_of(const IntPoly& chi, std::size_t ambient_dim, std::size_t k);
Int betti(const Arrangement& arr, std::size_t k);

/// chi divided by (t − 1); requires a central nonempty arrangement. Inexact
/// division signals an internal bug and throws logic_error.
IntPoly chi0(const Arrangement& arr);

/// Sub-arrangement of the hyperplanes containing the flat. Throws when the
/// flat does not belong to the arrangement's poset.
Arrangement localize(const Arrangement& arr, const Flat& flat);

struct Essentialization {
  Arrangement arr;  // dimension == rank of the input
  QMatrix basis;    // columns: the new frame in old coordinates; the trailing
                    // columns span the common intersection of all hyperplanes
};

/// Rewrites a central arrangement in coordinates where the common center is
/// spanned by trailing coordinates, then drops them.
Essentialization essentialize(const Arrangement& arr);

/// Checks b_k(arr) == sum of b_k over the rank-k localizations, recomputing
/// each localized characteristic polynomial from scratch.
bool localglobal_betti_check(const Arrangement& arr, std::size_t k);

}  // namespace hyparr
