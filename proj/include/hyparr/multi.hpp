#pragma once

#include "hyparr/arrangement.hpp"

namespace hyparr {

/// Central arrangement with a nonnegative integer multiplicity for each
/// hyperplane. Multiplicity-zero hyperplanes stay in storage but are ignored
/// by every computation (they contribute neither to the defining form nor to
/// the poset).
struct MultiArrangement {
  Arrangement base;
  std::vector<unsigned> mult;

  Int total_multiplicity() const;
  MultiArrangement effective() const;  // drops multiplicity-zero hyperplanes
};

MultiArrangement simple_multi(const Arrangement& arr);  // all multiplicities 1

MultiArrangement make_multi(Arrangement base, std::vector<unsigned> mult);

/// Multirestriction on the pivot hyperplane: the traces of the remaining
/// hyperplanes, with multiplicity = number of hyperplanes sharing the trace.
/// Uses the same deterministic pivot frame as decone.
MultiArrangement ziegler_restrict(const Arrangement& arr, std::size_t pivot);

/// Product of the defining linear forms with multiplicities.
MPoly defining_form(const MultiArrangement& ma);

struct ExponentPair {
  unsigned e1 = 0, e2 = 0;  // e1 <= e2, e1 + e2 == total multiplicity
  bool operator==(const ExponentPair&) const = default;
};

/// Exponents of a multiarrangement of rank <= 2 presented in two variables:
/// e1 is the smallest degree whose derivation slice is nonzero, e2 the rest.
ExponentPair rank2_exponents(const MultiArrangement& ma);

struct SigmaFlatEntry {
  Flat flat;                    // rank-2 flat of the effective arrangement
  std::vector<unsigned> mults;  // localized multiplicities
  ExponentPair exps;
};

struct SigmaReport {
  Int sigma1;                    // total multiplicity
  Int sigma2;                    // sum of e1(X)*e2(X) over rank-2 flats
  std::vector<SigmaFlatEntry> per_flat;
};

SigmaReport sigma(const MultiArrangement& ma);

/// Checks sigma_k == sum over rank-k flats of sigma_k of the localization,
/// recomputing every localized value through the full pipeline. k in {1,2}.
bool localglobal_sigma_check(const MultiArrangement& ma, std::size_t k);

/// prod (t - d_i) for a certified set of exponents.
IntPoly free_multi_charpoly(const std::vector<unsigned>& exponents);

MultiArrangement localize_multi(const MultiArrangement& ma, const Flat& flat);

struct EssentialMulti {
  MultiArrangement ma;
  QMatrix basis;
};

EssentialMulti essentialize_multi(const MultiArrangement& ma);

}  // namespace hyparr
