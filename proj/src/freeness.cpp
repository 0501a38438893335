#include "hyparr/freeness.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace hyparr {

MPoly apply_derivation(const Derivation& t, const QVector& linear_form) {
  if (t.coeffs.size() != linear_form.size())
    throw std::invalid_argument("derivation arity mismatch");
  MPoly out(t.coeffs.empty() ? 0 : t.coeffs[0].nvars());
  for (std::size_t i = 0; i < t.coeffs.size(); ++i)
    if (linear_form[i] != 0) out = out + t.coeffs[i].scaled(linear_form[i]);
  return out;
}

namespace {

/// Invertible frame with the given form as last row, standard rows first.
QMatrix form_frame(const QVector& alpha) {
  const std::size_t n = alpha.size();
  std::vector<QVector> rows;
  QMatrix probe(0, n);
  probe.append_row(alpha);
  for (std::size_t i = 0; i < n && rows.size() + 1 < n; ++i) {
    QVector e(n, Rat(0));
    e[i] = 1;
    QMatrix trial = probe;
    trial.append_row(e);
    if (rank(trial) == probe.rows() + 1) {
      probe = std::move(trial);
      rows.push_back(std::move(e));
    }
  }
  rows.push_back(alpha);
  return QMatrix::from_rows(rows);
}

std::vector<MPoly> frame_substitution(const QMatrix& frame_inv) {
  // replacement for z_i when passing to u-coordinates: z = frame_inv · u
  const std::size_t n = frame_inv.rows();
  std::vector<MPoly> subst;
  subst.reserve(n);
  for (std::size_t i = 0; i < n; ++i) subst.push_back(MPoly::linear_form(frame_inv.row(i)));
  return subst;
}

}  // namespace

bool divisible_by_form_power(const MPoly& p, const QVector& alpha, unsigned k) {
  if (p.is_zero() || k == 0) return true;
  const QMatrix frame = form_frame(alpha);
  const auto inv = inverse(frame);
  if (!inv) throw std::logic_error("linear form frame not invertible");
  const MPoly q = p.substitute(frame_substitution(*inv));
  return q.min_exponent_of(alpha.size() - 1) >= k;
}

std::vector<Derivation> derivation_slice(const MultiArrangement& ma, unsigned d) {
  const MultiArrangement eff = ma.effective();
  const std::size_t n = eff.base.dim;
  const auto monos = monomials_of_degree(n, d);
  const std::size_t per_var = monos.size();
  const std::size_t unknowns = n * per_var;  // coefficient c_{i,beta} of z^beta in f_i

  QMatrix rows(0, unknowns);
  for (std::size_t h = 0; h < eff.base.size(); ++h) {
    const QVector& a = eff.base.hyperplanes[h].normal;
    const unsigned m = eff.mult[h];
    if (m > d) {
      // the degree is too small for a nonzero multiple: theta(alpha) must vanish
      for (std::size_t b = 0; b < per_var; ++b) {
        QVector row(unknowns, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
          if (a[i] != 0) row[i * per_var + b] = a[i];
        rows.append_row(row);
      }
      continue;
    }
    const QMatrix frame = form_frame(a);
    const auto inv = inverse(frame);
    if (!inv) throw std::logic_error("linear form frame not invertible");
    const auto subst = frame_substitution(*inv);

    // expansion of each z-monomial in u-coordinates, by single-step recursion
    std::map<Monomial, MPoly> expansion;
    expansion.emplace(Monomial(n, 0), MPoly::constant(n, Rat(1)));
    auto expand = [&](auto&& self, const Monomial& beta) -> const MPoly& {
      auto it = expansion.find(beta);
      if (it != expansion.end()) return it->second;
      Monomial prev = beta;
      std::size_t j = 0;
      while (prev[j] == 0) ++j;
      --prev[j];
      const MPoly e = self(self, prev) * subst[j];
      return expansion.emplace(beta, std::move(e)).first->second;
    };

    // condition rows: coefficients of u-monomials with u_last-exponent < m
    std::map<Monomial, std::size_t> row_of;
    std::vector<QVector> cond;
    for (std::size_t b = 0; b < per_var; ++b) {
      const MPoly& e = expand(expand, monos[b]);
      for (const auto& [gamma, c] : e.terms()) {
        if (gamma[n - 1] >= m) continue;
        auto [it, fresh] = row_of.emplace(gamma, cond.size());
        if (fresh) cond.emplace_back(unknowns, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
          if (a[i] != 0) cond[it->second][i * per_var + b] += a[i] * c;
      }
    }
    for (auto& r : cond) rows.append_row(r);
  }

  std::vector<Derivation> slice;
  for (const auto& v : kernel_basis(rows)) {
    Derivation t;
    t.degree = d;
    t.coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      MPoly f(n);
      for (std::size_t b = 0; b < per_var; ++b)
        if (v[i * per_var + b] != 0) f.add_term(monos[b], v[i * per_var + b]);
      t.coeffs.push_back(std::move(f));
    }
    slice.push_back(std::move(t));
  }
  return slice;
}

std::optional<FreenessCertificate> saito_certify(const MultiArrangement& ma,
                                                 const std::vector<Derivation>& candidates) {
  const std::size_t n = ma.base.dim;
  if (candidates.size() != n)
    throw std::invalid_argument("saito check needs dim-many candidates");
  const MultiArrangement eff = ma.effective();
  for (const auto& t : candidates) {
    if (t.coeffs.size() != n) throw std::invalid_argument("candidate arity mismatch");
    for (std::size_t h = 0; h < eff.base.size(); ++h) {
      const MPoly image = apply_derivation(t, eff.base.hyperplanes[h].normal);
      if (!divisible_by_form_power(image, eff.base.hyperplanes[h].normal, eff.mult[h]))
        throw std::invalid_argument("candidate is not in the derivation module");
    }
  }

  std::vector<std::vector<MPoly>> mat(n, std::vector<MPoly>());
  for (std::size_t i = 0; i < n; ++i) mat[i] = candidates[i].coeffs;
  const MPoly det = mpoly_det(mat);
  if (det.is_zero()) return std::nullopt;

  const MPoly q = defining_form(eff);
  const auto& lead = *q.terms().begin();
  const Rat scalar = det.coeff(lead.first) / lead.second;
  if (scalar == 0) return std::nullopt;
  if (!(det == q.scaled(scalar))) return std::nullopt;

  FreenessCertificate cert;
  cert.basis = candidates;
  for (const auto& t : candidates) cert.exponents.push_back(t.degree);
  std::sort(cert.exponents.begin(), cert.exponents.end());
  cert.determinant_scalar = scalar;
  return cert;
}

namespace {

QVector eval_point(std::size_t n, unsigned which) {
  // fixed pseudo-random rational points, reproducible across runs
  std::mt19937 gen(0x5EED0000u + which * 101u + static_cast<unsigned>(n));
  std::uniform_int_distribution<int> num(-19, 19);
  std::uniform_int_distribution<int> den(1, 7);
  QVector p(n);
  for (auto& x : p) {
    int v = num(gen);
    if (v == 0) v = 1;
    x = make_rat(v, den(gen));
  }
  return p;
}

bool ring_independent(const std::vector<Derivation>& chosen,
                      const std::vector<std::vector<QVector>>& chosen_evals,
                      const Derivation& cand, const std::vector<QVector>& cand_evals,
                      std::size_t n) {
  const std::size_t k = chosen.size() + 1;
  for (unsigned pt = 0; pt < 3; ++pt) {
    QMatrix m(0, n);
    for (const auto& ev : chosen_evals) m.append_row(ev[pt]);
    m.append_row(cand_evals[pt]);
    if (rank(m) == k) return true;
  }
  // all evaluation points degenerate: decide symbolically via maximal minors
  std::vector<std::vector<MPoly>> rows;
  for (const auto& t : chosen) rows.push_back(t.coeffs);
  rows.push_back(cand.coeffs);
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  std::vector<std::size_t> pick(k);
  auto minors = [&](auto&& self, std::size_t start, std::size_t depth) -> bool {
    if (depth == k) {
      std::vector<std::vector<MPoly>> sub(k, std::vector<MPoly>());
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) sub[r].push_back(rows[r][pick[c]]);
      return !mpoly_det(sub).is_zero();
    }
    for (std::size_t c = start; c + (k - depth) <= n; ++c) {
      pick[depth] = c;
      if (self(self, c + 1, depth + 1)) return true;
    }
    return false;
  };
  return minors(minors, 0, 0);
}

std::vector<QVector> evaluate_at_points(const Derivation& t, std::size_t n) {
  std::vector<QVector> out;
  for (unsigned pt = 0; pt < 3; ++pt) {
    const QVector p = eval_point(n, pt);
    QVector row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = t.coeffs[i].eval(p);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

SaitoSearchResult find_saito_basis(const MultiArrangement& ma) {
  if (!ma.base.is_central())
    throw std::invalid_argument("saito search requires a central arrangement");
  const std::size_t n = ma.base.dim;
  const Int deg_q_big = ma.effective().total_multiplicity();
  if (!deg_q_big.fits_uint_p())
    throw std::invalid_argument("total multiplicity too large");
  const unsigned deg_q = static_cast<unsigned>(deg_q_big.get_ui());

  std::vector<Derivation> chosen;
  std::vector<std::vector<QVector>> chosen_evals;
  unsigned degree_sum = 0;

  for (unsigned d = 0; d <= deg_q + 1; ++d) {
    if (chosen.size() < n && degree_sum + (n - chosen.size()) * d > deg_q) {
      SaitoSearchResult res;
      res.status = SaitoStatus::NonFree;
      std::vector<unsigned> degs;
      for (const auto& t : chosen) degs.push_back(t.degree);
      res.witness = NonFreeWitness{std::move(degs), d};
      return res;
    }
    for (auto& cand : derivation_slice(ma, d)) {
      if (chosen.size() == n) break;
      auto evals = evaluate_at_points(cand, n);
      if (ring_independent(chosen, chosen_evals, cand, evals, n)) {
        degree_sum += d;
        chosen.push_back(std::move(cand));
        chosen_evals.push_back(std::move(evals));
      }
    }
    if (chosen.size() == n) {
      SaitoSearchResult res;
      if (degree_sum == deg_q) {
        auto cert = saito_certify(ma, chosen);
        if (cert) {
          res.status = SaitoStatus::Free;
          res.certificate = std::move(cert);
        } else {
          res.status = SaitoStatus::Undetermined;
        }
      } else if (degree_sum > deg_q) {
        res.status = SaitoStatus::NonFree;
        std::vector<unsigned> degs;
        for (const auto& t : chosen) degs.push_back(t.degree);
        res.witness = NonFreeWitness{std::move(degs), d};
      } else {
        res.status = SaitoStatus::Undetermined;
      }
      return res;
    }
  }
  return SaitoSearchResult{};  // undetermined; not reachable for valid input
}

Rank3Report is_free_rank3(const Arrangement& arr) {
  if (!arr.is_central()) throw std::invalid_argument("rank-3 check requires a central arrangement");
  if (arr.dim != 3 || arr.rank() != 3)
    throw std::invalid_argument("rank-3 check requires an essential arrangement in dimension 3");
  const DeconedArrangement d = decone(arr, 0);
  const IntPoly chi = charpoly(d.base);
  Rank3Report r{betti_of(chi, 2, 2), sigma(ziegler_restrict(arr, 0)).sigma2, false};
  r.free = (r.b2 == r.sigma2);
  return r;
}

Codim3Scan locally_free_codim3(const Arrangement& arr, std::size_t pivot, Rank3Cache* cache) {
  if (!arr.is_central())
    throw std::invalid_argument("local freeness scan requires a central arrangement");
  if (pivot >= arr.size()) throw std::invalid_argument("pivot index out of range");
  Codim3Scan scan;
  const IntersectionPoset poset = build_poset(arr);
  if (poset.by_rank.size() <= 3) return scan;
  for (std::size_t id : poset.by_rank[3]) {
    const Flat& x = poset.flats[id];
    if (!std::binary_search(x.contains.begin(), x.contains.end(),
                            static_cast<std::uint32_t>(pivot)))
      continue;
    Rank3Report local;
    const std::string key = x.key();
    if (cache) {
      auto it = cache->find(key);
      if (it != cache->end()) {
        local = it->second;
        scan.entries.push_back(Codim3Entry{x, local});
        scan.all_free = scan.all_free && local.free;
        continue;
      }
    }
    const Arrangement loc = localize(arr, x);
    local = is_free_rank3(essentialize(loc).arr);
    if (cache) cache->emplace(key, local);
    scan.entries.push_back(Codim3Entry{x, local});
    scan.all_free = scan.all_free && local.free;
  }
  return scan;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Free: return "free";
    case Verdict::NotFree: return "not-free";
    case Verdict::LocallyFreeCodim3Only: return "locally-free-codim3-only";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

FreenessReport check_freeness(const Arrangement& arr, std::size_t pivot, Rank3Cache* cache) {
  if (!arr.is_central())
    throw std::invalid_argument("freeness check requires a central arrangement");
  if (arr.dim < 3)
    throw std::invalid_argument("freeness check requires dimension at least 3");
  if (pivot >= arr.size()) throw std::invalid_argument("pivot index out of range");

  FreenessReport rep;
  rep.pivot = pivot;
  rep.pivot_label = arr.labels[pivot];

  const DeconedArrangement dec = decone(arr, pivot);
  rep.chi_decone = charpoly(dec.base);
  rep.b2 = betti_of(rep.chi_decone, arr.dim - 1, 2);

  const MultiArrangement zr = ziegler_restrict(arr, pivot);
  const SigmaReport sg = sigma(zr);
  rep.sigma2 = sg.sigma2;
  rep.inequality_ok = rep.b2 >= rep.sigma2;
  rep.equality = rep.b2 == rep.sigma2;

  // pair the per-flat exponents with the fiber decomposition of b2
  const FiberB2 fib = fiber_decomposition_b2(dec);
  std::map<std::string, Int> fiber_by_key;
  for (std::size_t id = 0; id < fib.map.target.flats.size(); ++id)
    fiber_by_key.emplace(fib.map.target.flats[id].key(), fib.b2_by_target[id]);
  for (const auto& entry : sg.per_flat) {
    FlatPairing p{entry.flat, entry.mults, entry.exps, Int(0)};
    auto it = fiber_by_key.find(entry.flat.key());
    if (it != fiber_by_key.end()) p.fiber_b2 = it->second;
    rep.per_flat.push_back(std::move(p));
  }

  rep.codim3 = locally_free_codim3(arr, pivot, cache);
  rep.multirestriction = find_saito_basis(essentialize_multi(zr).ma);
  if (rep.multirestriction.status == SaitoStatus::Free) {
    rep.restriction_exponents = rep.multirestriction.certificate->exponents;
    while (rep.restriction_exponents.size() < arr.dim - 1)
      rep.restriction_exponents.insert(rep.restriction_exponents.begin(), 0u);
  }

  // advisory: integer-root factorization of chi0
  const IntPoly c0 = chi0(arr);
  IntPoly rest = c0;
  bool progress = true;
  while (progress && rest.degree() > 0) {
    progress = false;
    const Int constant = rest.coeff(0);
    if (constant == 0) {
      auto q = rest.divide_exact(IntPoly(std::vector<Int>{Int(0), Int(1)}));
      rep.chi0_integer_roots.emplace_back(0);
      rest = *q;
      progress = true;
      continue;
    }
    // an integer root of a monic integer polynomial divides the constant term
    const Int bound = abs(constant);
    for (Int r(1); r * r <= bound; ++r) {
      if (bound % r != 0) continue;
      for (const Int& cand : {Int(r), Int(-r), Int(bound / r), Int(-(bound / r))}) {
        if (rest.eval(cand) == 0) {
          auto q = rest.divide_exact(IntPoly(std::vector<Int>{Int(-cand), Int(1)}));
          rep.chi0_integer_roots.push_back(cand);
          rest = *q;
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  rep.chi0_splits = rest.degree() <= 0;
  std::sort(rep.chi0_integer_roots.begin(), rep.chi0_integer_roots.end());

  switch (rep.multirestriction.status) {
    case SaitoStatus::Free:
      rep.verdict = rep.equality ? Verdict::Free : Verdict::NotFree;
      break;
    case SaitoStatus::NonFree:
      // a free arrangement has a free multirestriction, so the arrangement is
      // not free either way; equality still pins down local freeness
      rep.verdict = rep.equality ? Verdict::LocallyFreeCodim3Only : Verdict::NotFree;
      break;
    case SaitoStatus::Undetermined:
      rep.verdict = rep.equality ? Verdict::Undetermined : Verdict::NotFree;
      break;
  }
  if (!rep.inequality_ok)
    throw std::logic_error("b2 of the decone fell below sigma2 of the multirestriction");
  return rep;
}

GapReport ziegler_gap(const Arrangement& arr, std::size_t pivot) {
  if (!arr.is_central())
    throw std::invalid_argument("gap report requires a central arrangement");
  if (pivot >= arr.size()) throw std::invalid_argument("pivot index out of range");

  const DeconedArrangement dec = decone(arr, pivot);
  const IntPoly chi_d = charpoly(dec.base);
  const MultiArrangement zr = ziegler_restrict(arr, pivot);
  const SigmaReport sg = sigma(zr);

  GapReport gap;
  const std::size_t d = arr.dim - 1;
  gap.b1_minus_sigma1 = (d >= 1 ? betti_of(chi_d, d, 1) : Int(0)) - sg.sigma1;
  gap.b2_minus_sigma2 = (d >= 2 ? betti_of(chi_d, d, 2) : Int(0)) - sg.sigma2;

  const SaitoSearchResult search = find_saito_basis(essentialize_multi(zr).ma);
  if (search.status == SaitoStatus::Free) {
    std::vector<unsigned> exps = search.certificate->exponents;
    while (exps.size() < d) exps.insert(exps.begin(), 0u);
    const IntPoly prod = free_multi_charpoly(exps);
    gap.gap_poly = chi_d - prod;
    gap.gap_constant = gap.gap_poly->degree() <= 0;
  }
  return gap;
}

}  // namespace hyparr
