#include "hyparr/qmatrix.hpp"

#include <stdexcept>

namespace hyparr {

Rat dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return QMatrix();
  QMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  QVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

void QMatrix::append_row(const QVector& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("append_row: size mismatch");
  e_.insert(e_.end(), v.begin(), v.end());
  ++rows_;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  QMatrix p(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(r, k) == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c)
        p.at(r, c) += at(r, k) * rhs.at(k, c);
    }
  return p;
}

QVector QMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
  QVector out(rows_, Rat(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != 0) out[r] += at(r, c) * v[c];
  return out;
}

bool QMatrix::operator==(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != rhs.e_[i]) return false;
  return true;
}

RrefResult rref(QMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t sel = lead;
    while (sel < rows && m.at(sel, col) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != lead)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m.at(sel, c), m.at(lead, c));
    const Rat inv = 1 / m.at(lead, col);
    for (std::size_t c = col; c < cols; ++c) m.at(lead, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || m.at(r, col) == 0) continue;
      const Rat f = m.at(r, col);
      for (std::size_t c = col; c < cols; ++c) m.at(r, c) -= f * m.at(lead, c);
    }
    pivots.push_back(col);
    ++lead;
  }
  const std::size_t rk = pivots.size();
  return RrefResult{std::move(m), std::move(pivots), rk};
}

std::size_t rank(const QMatrix& m) { return rref(m).rank; }

std::vector<QVector> kernel_basis(const QMatrix& m) {
  const auto r = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
      v[r.pivots[k]] = -r.mat.at(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolution> solve_affine(const QMatrix& m, const QVector& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve_affine: rhs size");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = rhs[r];
  }
  const auto red = rref(std::move(aug));
  for (auto p : red.pivots)
    if (p == m.cols()) return std::nullopt;
  QVector point(m.cols(), Rat(0));
  for (std::size_t k = 0; k < red.pivots.size(); ++k)
    point[red.pivots[k]] = red.mat.at(k, m.cols());
  return AffineSolution{std::move(point), kernel_basis(m)};
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  const auto red = rref(std::move(aug));
  if (red.rank != n) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k)
    if (red.pivots[k] != k) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = red.mat.at(r, n + c);
  return inv;
}

}  // namespace hyparr
