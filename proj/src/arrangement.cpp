#include "hyparr/arrangement.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hyparr {

Hyperplane make_hyperplane(QVector normal, Rat offset) {
  std::size_t lead = normal.size();
  for (std::size_t i = 0; i < normal.size(); ++i)
    if (normal[i] != 0) {
      lead = i;
      break;
    }
  if (lead == normal.size())
    throw std::invalid_argument("hyperplane with zero normal");
  const Rat scale = 1 / normal[lead];
  for (auto& x : normal) x *= scale;
  offset *= scale;
  return Hyperplane{std::move(normal), std::move(offset)};
}

bool contains_point(const Hyperplane& h, const QVector& p) {
  return dot(h.normal, p) == h.offset;
}

bool Arrangement::is_central() const {
  for (const auto& h : hyperplanes)
    if (h.offset != 0) return false;
  return true;
}

std::size_t Arrangement::rank() const {
  QMatrix normals(0, dim);
  for (const auto& h : hyperplanes) normals.append_row(h.normal);
  return hyparr::rank(normals);
}

Arrangement make_arrangement(std::size_t dim, std::vector<Hyperplane> hyperplanes,
                             std::vector<std::string> labels) {
  if (dim < 1) throw std::invalid_argument("arrangement dimension must be >= 1");
  if (!labels.empty() && labels.size() != hyperplanes.size())
    throw std::invalid_argument("label count does not match hyperplane count");
  Arrangement arr;
  arr.dim = dim;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    if (hyperplanes[i].normal.size() != dim)
      throw std::invalid_argument("hyperplane " + std::to_string(i) +
                                  ": coefficient count does not match dim");
    Hyperplane h = make_hyperplane(hyperplanes[i].normal, hyperplanes[i].offset);
    std::string key;
    for (const auto& x : h.normal) key += to_string(x) + ",";
    key += "|" + to_string(h.offset);
    auto [it, fresh] = seen.emplace(key, i);
    if (!fresh)
      throw std::invalid_argument("duplicate hyperplane at index " + std::to_string(i) +
                                  " (same as index " + std::to_string(it->second) + ")");
    arr.hyperplanes.push_back(std::move(h));
    arr.labels.push_back(labels.empty() ? "H" + std::to_string(i) : labels[i]);
  }
  return arr;
}

std::string Flat::key() const {
  std::string k = std::to_string(equations.rows()) + ":";
  for (std::size_t r = 0; r < equations.rows(); ++r)
    for (std::size_t c = 0; c < equations.cols(); ++c)
      k += to_string(equations.at(r, c)) + ",";
  return k;
}

bool flat_inside_hyperplane(const Flat& f, const Hyperplane& h) {
  if (!contains_point(h, f.basepoint)) return false;
  for (const auto& d : f.directions)
    if (dot(h.normal, d) != 0) return false;
  return true;
}

bool IntersectionPoset::leq(std::size_t a, std::size_t b) const {
  const auto& sa = flats[a].contains;
  const auto& sb = flats[b].contains;
  return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

namespace {

Flat ambient_flat(std::size_t dim) {
  Flat v;
  v.equations = QMatrix(0, dim + 1);
  v.basepoint = QVector(dim, Rat(0));
  for (std::size_t i = 0; i < dim; ++i) {
    QVector e(dim, Rat(0));
    e[i] = 1;
    v.directions.push_back(std::move(e));
  }
  return v;
}

void fill_contains(Flat& f, const Arrangement& arr) {
  f.contains.clear();
  for (std::size_t i = 0; i < arr.size(); ++i)
    if (flat_inside_hyperplane(f, arr.hyperplanes[i]))
      f.contains.push_back(static_cast<std::uint32_t>(i));
}

}  // namespace

IntersectionPoset build_poset(const Arrangement& arr) {
  IntersectionPoset poset;
  poset.dim = arr.dim;
  poset.flats.push_back(ambient_flat(arr.dim));
  poset.by_rank.push_back({0});

  const std::size_t max_rank = std::min(arr.dim, arr.size());
  for (std::size_t r = 1; r <= max_rank; ++r) {
    std::map<std::string, Flat> level;
    for (std::size_t id : poset.by_rank[r - 1]) {
      const Flat& x = poset.flats[id];
      for (std::uint32_t i = 0; i < arr.size(); ++i) {
        if (std::binary_search(x.contains.begin(), x.contains.end(), i)) continue;
        QMatrix sys = x.equations;
        QVector row = arr.hyperplanes[i].normal;
        row.push_back(arr.hyperplanes[i].offset);
        sys.append_row(row);

        QMatrix lhs(sys.rows(), arr.dim);
        QVector rhs(sys.rows());
        for (std::size_t rr = 0; rr < sys.rows(); ++rr) {
          for (std::size_t cc = 0; cc < arr.dim; ++cc) lhs.at(rr, cc) = sys.at(rr, cc);
          rhs[rr] = sys.at(rr, arr.dim);
        }
        auto sol = solve_affine(lhs, rhs);
        if (!sol) continue;  // parallel: empty intersection
        Flat f;
        f.equations = rref(std::move(sys)).mat;
        // drop dependent rows: keep the first `rank` rows of the RREF
        const std::size_t rk = arr.dim - sol->kernel.size();
        if (rk != r) continue;  // cannot happen: H was not containing x
        QMatrix trimmed(rk, arr.dim + 1);
        for (std::size_t rr = 0; rr < rk; ++rr)
          for (std::size_t cc = 0; cc <= arr.dim; ++cc)
            trimmed.at(rr, cc) = f.equations.at(rr, cc);
        f.equations = std::move(trimmed);
        f.basepoint = std::move(sol->point);
        f.directions = std::move(sol->kernel);
        const std::string key = f.key();
        if (level.find(key) == level.end()) {
          fill_contains(f, arr);
          level.emplace(key, std::move(f));
        }
      }
    }
    if (level.empty()) break;
    std::vector<std::size_t> ids;
    for (auto& [key, f] : level) {
      ids.push_back(poset.flats.size());
      poset.flats.push_back(std::move(f));
    }
    poset.by_rank.push_back(std::move(ids));
  }

  poset.mobius = mobius(poset);
  return poset;
}

std::vector<Int> mobius(const IntersectionPoset& poset) {
  std::vector<Int> mu(poset.flats.size(), Int(0));
  for (std::size_t r = 0; r < poset.by_rank.size(); ++r) {
    for (std::size_t id : poset.by_rank[r]) {
      if (r == 0) {
        mu[id] = 1;
        continue;
      }
      Int below(0);
      for (std::size_t s = 0; s < r; ++s)
        for (std::size_t j : poset.by_rank[s])
          if (poset.leq(j, id)) below += mu[j];
      mu[id] = -below;
    }
  }
  return mu;
}

IntPoly charpoly(const IntersectionPoset& poset) {
  IntPoly chi;
  for (std::size_t r = 0; r < poset.by_rank.size(); ++r)
    for (std::size_t id : poset.by_rank[r])
      chi = chi + IntPoly::monomial(poset.mobius[id], poset.dim - r);
  return chi;
}

IntPoly charpoly(const Arrangement& arr) { return charpoly(build_poset(arr)); }

Int betti_of(const IntPoly& chi, std::size_t ambient_dim, std::size_t k) {
  if (k > ambient_dim) throw std::invalid_argument("betti index out of range");
  Int c = chi.coeff(ambient_dim - k);
  return (k % 2 == 0) ? c : Int(-c);
}

Int betti(const Arrangement& arr, std::size_t k) {
  if (k > arr.dim) throw std::invalid_argument("betti index out of range");
  return betti_of(charpoly(arr), arr.dim, k);
}

IntPoly chi0(const Arrangement& arr) {
  if (!arr.is_central()) throw std::invalid_argument("chi0 requires a central arrangement");
  if (arr.size() == 0) throw std::invalid_argument("chi0 requires a nonempty arrangement");
  const IntPoly chi = charpoly(arr);
  auto q = chi.divide_exact(IntPoly(std::vector<Int>{Int(-1), Int(1)}));
  if (!q) throw std::logic_error("characteristic polynomial of a central arrangement "
                                 "not divisible by t-1");
  return *q;
}

Arrangement localize(const Arrangement& arr, const Flat& flat) {
  // sanity: the stored contains set must match the geometry against arr
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const bool inside = flat_inside_hyperplane(flat, arr.hyperplanes[i]);
    const bool listed = std::binary_search(flat.contains.begin(), flat.contains.end(),
                                           static_cast<std::uint32_t>(i));
    if (inside != listed)
      throw std::invalid_argument("flat does not belong to this arrangement");
  }
  Arrangement out;
  out.dim = arr.dim;
  for (auto i : flat.contains) {
    out.hyperplanes.push_back(arr.hyperplanes[i]);
    out.labels.push_back(arr.labels[i]);
  }
  return out;
}

Essentialization essentialize(const Arrangement& arr) {
  if (!arr.is_central())
    throw std::invalid_argument("essentialize requires a central arrangement");
  QMatrix normals(0, arr.dim);
  for (const auto& h : arr.hyperplanes) normals.append_row(h.normal);
  const auto center = kernel_basis(normals);
  const std::size_t r = arr.dim - center.size();
  if (r == 0) {
    Arrangement empty;
    empty.dim = 1;
    return Essentialization{std::move(empty), QMatrix::identity(arr.dim)};
  }
  const std::size_t ess_dim = r;

  // columns: greedily chosen standard vectors complementing the center,
  // then the center basis itself
  std::vector<QVector> cols;
  QMatrix probe(0, arr.dim);
  for (const auto& k : center) probe.append_row(k);
  for (std::size_t i = 0; i < arr.dim && cols.size() < ess_dim; ++i) {
    QVector e(arr.dim, Rat(0));
    e[i] = 1;
    QMatrix trial = probe;
    trial.append_row(e);
    if (hyparr::rank(trial) == probe.rows() + 1) {
      probe = std::move(trial);
      cols.push_back(std::move(e));
    }
  }
  QMatrix basis(arr.dim, arr.dim);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < arr.dim; ++i) basis.at(i, j) = cols[j][i];
  for (std::size_t j = 0; j < center.size(); ++j)
    for (std::size_t i = 0; i < arr.dim; ++i)
      basis.at(i, cols.size() + j) = center[j][i];

  std::vector<Hyperplane> hs;
  for (const auto& h : arr.hyperplanes) {
    QVector nn(ess_dim, Rat(0));
    for (std::size_t j = 0; j < ess_dim; ++j) {
      Rat s(0);
      for (std::size_t i = 0; i < arr.dim; ++i) s += h.normal[i] * basis.at(i, j);
      nn[j] = s;
    }
    hs.push_back(Hyperplane{std::move(nn), Rat(0)});
  }
  Arrangement ess = make_arrangement(ess_dim, std::move(hs), arr.labels);
  return Essentialization{std::move(ess), std::move(basis)};
}

bool localglobal_betti_check(const Arrangement& arr, std::size_t k) {
  const IntersectionPoset poset = build_poset(arr);
  const Int lhs = betti_of(charpoly(poset), arr.dim, k);
  if (k >= poset.by_rank.size()) return lhs == 0;
  Int rhs(0);
  for (std::size_t id : poset.by_rank[k]) {
    const Arrangement local = localize(arr, poset.flats[id]);
    rhs += betti_of(charpoly(local), local.dim, k);
  }
  return lhs == rhs;
}

}  // namespace hyparr
