#pragma once

// Exact integer matrix algebra: Hermite and Smith normal forms, integer
// linear systems, kernels and lattice membership. Matrices of any shape are
// allowed, including 0 x n and n x 0.

#include "reid/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

namespace reid {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows);
  static IntMatrix diagonal(const IntVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> columns() const;

  IntMatrix transpose() const;
  /// Horizontal concatenation [this | other]; row counts must agree.
  IntMatrix concat_columns(const IntMatrix& other) const;
  /// Columns [first, first + count).
  IntMatrix column_range(std::size_t first, std::size_t count) const;
  IntMatrix row_range(std::size_t first, std::size_t count) const;

  bool is_zero() const;
  bool is_diagonal() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // elementary operations, used by the normal form algorithms
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// U * A = H with U unimodular and H in reduced row echelon (Hermite) form:
/// pivots positive, entries above a pivot in [0, pivot).
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

/// U * A * V = S with U, V unimodular, S diagonal. `invariants` holds the
/// min(rows, cols) diagonal entries: nonnegative, each nonzero one divides the
/// next, zeros last.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntVector invariants;
  std::size_t rank = 0;
};

HermiteDecomposition hnf(const IntMatrix& a);
SmithDecomposition snf(const IntMatrix& a);

/// Some integer x with A x = b, or nothing if no integer solution exists.
std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b);

/// Columns form a basis of {x in Z^cols : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

/// Coefficients c with L c = v, i.e. a certificate that v lies in the column lattice of L.
std::optional<IntVector> lattice_member(const IntMatrix& lattice, const IntVector& v);

/// Exact determinant (fraction-free Bareiss elimination). Square matrices only.
Integer determinant(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
IntMatrix inverse_unimodular(const IntMatrix& u);

/// A basis (as columns) of the lattice spanned by the given columns.
IntMatrix lattice_basis(const IntMatrix& generators);

}  // namespace reid
