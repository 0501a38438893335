#pragma once

#include <map>
#include <optional>

#include "hyparr/decone.hpp"
#include "hyparr/multi.hpp"

namespace hyparr {

/// Homogeneous polynomial vector field theta = sum coeffs[i] d/dz_i.
struct Derivation {
  std::vector<MPoly> coeffs;
  unsigned degree = 0;  // common homogeneous degree of the coefficients
};

/// theta applied to a linear form with the given coefficient vector.
MPoly apply_derivation(const Derivation& t, const QVector& linear_form);

/// True when p is divisible by (the linear form alpha)^k.
bool divisible_by_form_power(const MPoly& p, const QVector& alpha, unsigned k);

/// Basis of the vector space of degree-d derivations theta with theta(alpha_H)
/// divisible by alpha_H^{m(H)} for every hyperplane of the multiarrangement.
std::vector<Derivation> derivation_slice(const MultiArrangement& ma, unsigned d);

struct FreenessCertificate {
  std::vector<Derivation> basis;   // dim-many derivations
  std::vector<unsigned> exponents; // their degrees, sorted ascending
  Rat determinant_scalar;          // det(coefficient matrix) == scalar * Q
};

/// Saito check: the candidates form a basis iff the determinant of their
/// coefficient matrix is a nonzero scalar multiple of the defining form.
/// Throws when a candidate is not in the derivation module (caller bug).
std::optional<FreenessCertificate> saito_certify(const MultiArrangement& ma,
                                                 const std::vector<Derivation>& candidates);

struct NonFreeWitness {
  std::vector<unsigned> partial_degrees;  // degrees of the greedy choices made
  unsigned stopped_at_degree = 0;
};

enum class SaitoStatus { Free, NonFree, Undetermined };

struct SaitoSearchResult {
  SaitoStatus status = SaitoStatus::Undetermined;
  std::optional<FreenessCertificate> certificate;
  std::optional<NonFreeWitness> witness;
};

/// Greedy minimal-degree basis search over the degree slices. The greedy
/// degree profile of dim-many ring-independent derivations is minimal, so the
/// multiarrangement is free exactly when the profile sums to deg Q.
SaitoSearchResult find_saito_basis(const MultiArrangement& ma);

struct Rank3Report {
  Int b2;      // of the decone at the first hyperplane
  Int sigma2;  // of the multirestriction at the same pivot
  bool free = false;
};

/// Freeness decision for an essential rank-3 central arrangement: free iff
/// b2 of the decone equals sigma2 of the multirestriction.
Rank3Report is_free_rank3(const Arrangement& arr);

struct Codim3Entry {
  Flat flat;  // rank-3 flat inside the pivot hyperplane
  Rank3Report local;
};

struct Codim3Scan {
  std::vector<Codim3Entry> entries;
  bool all_free = true;
};

using Rank3Cache = std::map<std::string, Rank3Report>;

/// Runs the rank-3 freeness decision on every localization at a rank-3 flat
/// inside the pivot hyperplane. The optional cache is keyed by flat and lets
/// callers share work across pivots.
Codim3Scan locally_free_codim3(const Arrangement& arr, std::size_t pivot,
                               Rank3Cache* cache = nullptr);

enum class Verdict { Free, NotFree, LocallyFreeCodim3Only, Undetermined };
std::string to_string(Verdict v);

struct FlatPairing {
  Flat flat;                    // rank-2 flat of the restriction
  std::vector<unsigned> mults;
  ExponentPair exps;
  Int fiber_b2;                 // Möbius mass of the fiber over this flat
};

struct FreenessReport {
  std::size_t pivot = 0;
  std::string pivot_label;
  Int b2;
  Int sigma2;
  bool inequality_ok = false;  // b2 >= sigma2
  bool equality = false;
  IntPoly chi_decone;
  Codim3Scan codim3;
  SaitoSearchResult multirestriction;        // search on the essentialized restriction
  std::vector<unsigned> restriction_exponents;  // padded to dim−1 when free
  std::vector<FlatPairing> per_flat;
  std::vector<Int> chi0_integer_roots;
  bool chi0_splits = false;    // chi0 factors into integer linear factors
  Verdict verdict = Verdict::Undetermined;
};

/// Full freeness diagnosis at a pivot: b2 of the decone against sigma2 of the
/// multirestriction, the codimension-3 local scan, a Saito search on the
/// multirestriction, and the combined verdict.
FreenessReport check_freeness(const Arrangement& arr, std::size_t pivot,
                              Rank3Cache* cache = nullptr);

struct GapReport {
  Int b1_minus_sigma1;
  Int b2_minus_sigma2;
  std::optional<IntPoly> gap_poly;  // chi(decone) - product formula, when the
                                    // multirestriction is certified free
  std::optional<bool> gap_constant;
};

GapReport ziegler_gap(const Arrangement& arr, std::size_t pivot);

}  // namespace hyparr
