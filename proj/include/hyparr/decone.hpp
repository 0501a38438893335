#pragma once

#include "hyparr/arrangement.hpp"

namespace hyparr {

/// Affine slice of a central arrangement on the translate of the pivot
/// hyperplane, living in the first dim−1 coordinates of the pivot frame.
struct DeconedArrangement {
  Arrangement base;     // affine arrangement in dimension dim−1
  std::size_t pivot = 0;
  QMatrix frame;        // u = frame · z; the pivot normal becomes u_last
  QMatrix frame_inv;
  Arrangement parent;
};

/// Deterministic invertible frame whose last row is the pivot normal; the
/// other rows are standard coordinates chosen greedily by index.
QMatrix pivot_frame(const Arrangement& arr, std::size_t pivot);

DeconedArrangement decone(const Arrangement& arr, std::size_t pivot);

/// Rank- and order-preserving map from the flats of the decone to the flats
/// of the restricted arrangement on the pivot hyperplane: a flat is sent to
/// the intersection of its linear span with the pivot hyperplane.
struct RestrictionMap {
  IntersectionPoset source;                      // poset of the decone
  IntersectionPoset target;                      // poset of the restriction
  std::vector<std::size_t> image;                // source flat id -> target flat id
  std::vector<std::vector<std::size_t>> fibers;  // target flat id -> source ids
};

RestrictionMap restriction_map(const DeconedArrangement& d);

/// Groups the Möbius mass of the decone's rank-2 flats by their image in the
/// restriction; the values over all rank-2 targets sum to b2 of the decone.
struct FiberB2 {
  RestrictionMap map;
  std::vector<Int> b2_by_target;  // aligned with map.target.flats
  Int total;
};

FiberB2 fiber_decomposition_b2(const DeconedArrangement& d);

}  // namespace hyparr
