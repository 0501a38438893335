#include "hyparr/decone.hpp"

#include <map>
#include <stdexcept>

#include "hyparr/multi.hpp"

namespace hyparr {

QMatrix pivot_frame(const Arrangement& arr, std::size_t pivot) {
  if (pivot >= arr.size()) throw std::invalid_argument("pivot index out of range");
  const std::size_t n = arr.dim;
  const QVector& a = arr.hyperplanes[pivot].normal;

  std::vector<QVector> rows;
  QMatrix probe(0, n);
  probe.append_row(a);
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
  rows.push_back(a);  // pivot normal last
  return QMatrix::from_rows(rows);
}

DeconedArrangement decone(const Arrangement& arr, std::size_t pivot) {
  if (!arr.is_central()) throw std::invalid_argument("decone requires a central arrangement");
  if (pivot >= arr.size()) throw std::invalid_argument("pivot index out of range");
  const std::size_t n = arr.dim;

  DeconedArrangement d;
  d.pivot = pivot;
  d.parent = arr;
  d.frame = pivot_frame(arr, pivot);
  auto inv = inverse(d.frame);
  if (!inv) throw std::logic_error("pivot frame not invertible");
  d.frame_inv = std::move(*inv);

  std::vector<Hyperplane> hs;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i == pivot) continue;
    // normal in frame coordinates: beta' = beta · frame_inv
    QVector np(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
      Rat s(0);
      for (std::size_t k = 0; k < n; ++k)
        s += arr.hyperplanes[i].normal[k] * d.frame_inv.at(k, j);
      np[j] = s;
    }
    // slice u_last = 1: sum_{j<n-1} np_j u_j = -np_last
    QVector affine(np.begin(), np.end() - 1);
    if (is_zero(affine))
      throw std::logic_error("hyperplane parallel to the pivot in a central arrangement");
    hs.push_back(Hyperplane{std::move(affine), Rat(-np[n - 1])});
    labels.push_back(arr.labels[i]);
  }
  d.base = make_arrangement(n - 1, std::move(hs), std::move(labels));
  return d;
}

RestrictionMap restriction_map(const DeconedArrangement& d) {
  RestrictionMap rm;
  rm.source = build_poset(d.base);
  const MultiArrangement zr = ziegler_restrict(d.parent, d.pivot);
  rm.target = build_poset(zr.base);

  std::map<std::string, std::size_t> target_by_key;
  for (std::size_t id = 0; id < rm.target.flats.size(); ++id)
    target_by_key.emplace(rm.target.flats[id].key(), id);

  rm.image.resize(rm.source.flats.size());
  rm.fibers.assign(rm.target.flats.size(), {});
  for (std::size_t id = 0; id < rm.source.flats.size(); ++id) {
    const Flat& f = rm.source.flats[id];
    // span of the affine flat meets the pivot hyperplane in the linear flat
    // with the same coefficient rows and zero offsets
    QMatrix eq = f.equations;
    for (std::size_t r = 0; r < eq.rows(); ++r) eq.at(r, eq.cols() - 1) = 0;
    Flat probe;
    probe.equations = std::move(eq);
    auto it = target_by_key.find(probe.key());
    if (it == target_by_key.end())
      throw std::logic_error("restriction image is not a flat of the restricted arrangement");
    if (rm.target.flats[it->second].rank() != f.rank())
      throw std::logic_error("restriction map failed to preserve rank");
    rm.image[id] = it->second;
    rm.fibers[it->second].push_back(id);
  }
  return rm;
}

FiberB2 fiber_decomposition_b2(const DeconedArrangement& d) {
  FiberB2 out{restriction_map(d), {}, Int(0)};
  const auto& rm = out.map;
  out.b2_by_target.assign(rm.target.flats.size(), Int(0));
  if (rm.source.by_rank.size() > 2) {
    for (std::size_t id : rm.source.by_rank[2]) {
      out.b2_by_target[rm.image[id]] += rm.source.mobius[id];
      out.total += rm.source.mobius[id];
    }
  }
  return out;
}

}  // namespace hyparr
