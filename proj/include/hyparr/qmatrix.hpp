#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hyparr/rational.hpp"

namespace hyparr {

using QVector = std::vector<Rat>;

Rat dot(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);

/// Dense rational matrix, row major. Values are immutable in spirit: all
/// operations below return fresh matrices.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  void append_row(const QVector& v);

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& rhs) const;
  QVector apply(const QVector& v) const;

  bool operator==(const QMatrix& rhs) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> e_;
};

struct RrefResult {
  QMatrix mat;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form: leading entries 1, pivot columns cleared.
RrefResult rref(QMatrix m);

std::size_t rank(const QMatrix& m);

/// Basis of the right null space; size == cols − rank.
std::vector<QVector> kernel_basis(const QMatrix& m);

struct AffineSolution {
  QVector point;                 // one solution of m·x = rhs
  std::vector<QVector> kernel;   // basis of m·x = 0
};

/// Empty optional iff the system is inconsistent.
std::optional<AffineSolution> solve_affine(const QMatrix& m, const QVector& rhs);

/// Empty optional iff the matrix is not square invertible.
std::optional<QMatrix> inverse(const QMatrix& m);

}  // namespace hyparr
