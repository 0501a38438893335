#include "hyparr/multi.hpp"

#include <map>
#include <stdexcept>

#include "hyparr/decone.hpp"
#include "hyparr/freeness.hpp"

namespace hyparr {

Int MultiArrangement::total_multiplicity() const {
  Int s(0);
  for (auto m : mult) s += m;
  return s;
}

MultiArrangement MultiArrangement::effective() const {
  MultiArrangement out;
  out.base.dim = base.dim;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (mult[i] == 0) continue;
    out.base.hyperplanes.push_back(base.hyperplanes[i]);
    out.base.labels.push_back(base.labels[i]);
    out.mult.push_back(mult[i]);
  }
  return out;
}

MultiArrangement simple_multi(const Arrangement& arr) {
  return MultiArrangement{arr, std::vector<unsigned>(arr.size(), 1u)};
}

MultiArrangement make_multi(Arrangement base, std::vector<unsigned> mult) {
  if (mult.size() != base.size())
    throw std::invalid_argument("multiplicity count does not match hyperplane count");
  return MultiArrangement{std::move(base), std::move(mult)};
}

MultiArrangement ziegler_restrict(const Arrangement& arr, std::size_t pivot) {
  if (!arr.is_central())
    throw std::invalid_argument("ziegler restriction requires a central arrangement");
  if (pivot >= arr.size()) throw std::invalid_argument("pivot index out of range");
  const std::size_t n = arr.dim;
  const QMatrix frame = pivot_frame(arr, pivot);
  const auto inv = inverse(frame);
  if (!inv) throw std::logic_error("pivot frame not invertible");

  struct Trace {
    Hyperplane h;
    unsigned count = 0;
    std::string label;
  };
  std::map<std::string, Trace> traces;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i == pivot) continue;
    QVector np(n - 1, Rat(0));
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Rat s(0);
      for (std::size_t k = 0; k < n; ++k)
        s += arr.hyperplanes[i].normal[k] * inv->at(k, j);
      np[j] = s;
    }
    if (is_zero(np))
      throw std::logic_error("hyperplane parallel to the pivot in a central arrangement");
    Hyperplane h = make_hyperplane(std::move(np), Rat(0));
    std::string key;
    for (const auto& x : h.normal) key += to_string(x) + ",";
    auto it = traces.find(key);
    if (it == traces.end())
      traces.emplace(key, Trace{std::move(h), 1, arr.labels[i]});
    else
      ++it->second.count;
  }

  std::vector<Hyperplane> hs;
  std::vector<std::string> labels;
  std::vector<unsigned> mults;
  for (auto& [key, t] : traces) {
    hs.push_back(std::move(t.h));
    labels.push_back(std::move(t.label));
    mults.push_back(t.count);
  }
  Arrangement base = make_arrangement(n - 1, std::move(hs), std::move(labels));
  return MultiArrangement{std::move(base), std::move(mults)};
}

MPoly defining_form(const MultiArrangement& ma) {
  MPoly q = MPoly::constant(ma.base.dim, Rat(1));
  for (std::size_t i = 0; i < ma.base.size(); ++i)
    if (ma.mult[i] > 0)
      q = q * MPoly::linear_form(ma.base.hyperplanes[i].normal).pow(ma.mult[i]);
  return q;
}

ExponentPair rank2_exponents(const MultiArrangement& ma) {
  if (ma.base.dim != 2)
    throw std::invalid_argument("rank2_exponents expects an arrangement in two variables");
  if (!ma.base.is_central())
    throw std::invalid_argument("rank2_exponents requires a central arrangement");
  const MultiArrangement eff = ma.effective();
  const Int total = eff.total_multiplicity();
  if (total == 0) return ExponentPair{0, 0};
  if (!total.fits_uint_p()) throw std::invalid_argument("total multiplicity too large");
  const unsigned m = static_cast<unsigned>(total.get_ui());
  for (unsigned d = 0; d <= m; ++d) {
    if (!derivation_slice(eff, d).empty()) {
      const unsigned e1 = d;
      const unsigned e2 = m - d;
      return ExponentPair{std::min(e1, e2), std::max(e1, e2)};
    }
  }
  throw std::logic_error("no derivation found up to the total multiplicity");
}

SigmaReport sigma(const MultiArrangement& ma) {
  if (!ma.base.is_central())
    throw std::invalid_argument("sigma requires a central arrangement");
  const MultiArrangement eff = ma.effective();
  SigmaReport report{eff.total_multiplicity(), Int(0), {}};
  const IntersectionPoset poset = build_poset(eff.base);
  if (poset.by_rank.size() <= 2) return report;
  for (std::size_t id : poset.by_rank[2]) {
    const Flat& x = poset.flats[id];
    const MultiArrangement local = localize_multi(eff, x);
    const EssentialMulti ess = essentialize_multi(local);
    const ExponentPair e = rank2_exponents(ess.ma);
    report.sigma2 += Int(e.e1) * Int(e.e2);
    report.per_flat.push_back(SigmaFlatEntry{x, local.mult, e});
  }
  return report;
}

bool localglobal_sigma_check(const MultiArrangement& ma, std::size_t k) {
  if (k != 1 && k != 2) throw std::invalid_argument("local-global check only for k=1,2");
  const MultiArrangement eff = ma.effective();
  const SigmaReport global = sigma(eff);
  const Int lhs = (k == 1) ? global.sigma1 : global.sigma2;
  const IntersectionPoset poset = build_poset(eff.base);
  if (poset.by_rank.size() <= k) return lhs == 0;
  Int rhs(0);
  for (std::size_t id : poset.by_rank[k]) {
    const MultiArrangement local = localize_multi(eff, poset.flats[id]);
    const SigmaReport lr = sigma(local);
    rhs += (k == 1) ? lr.sigma1 : lr.sigma2;
  }
  return lhs == rhs;
}

IntPoly free_multi_charpoly(const std::vector<unsigned>& exponents) {
  std::vector<Int> roots;
  roots.reserve(exponents.size());
  for (auto e : exponents) roots.emplace_back(e);
  return IntPoly::from_roots(roots);
}

MultiArrangement localize_multi(const MultiArrangement& ma, const Flat& flat) {
  const Arrangement base = localize(ma.base, flat);
  std::vector<unsigned> mult;
  mult.reserve(flat.contains.size());
  for (auto i : flat.contains) mult.push_back(ma.mult[i]);
  return MultiArrangement{base, std::move(mult)};
}

EssentialMulti essentialize_multi(const MultiArrangement& ma) {
  const MultiArrangement eff = ma.effective();
  Essentialization ess = essentialize(eff.base);
  return EssentialMulti{MultiArrangement{std::move(ess.arr), eff.mult}, std::move(ess.basis)};
}

}  // namespace hyparr
