#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "dkplab/numeric.hpp"

namespace dkplab {

// Dense row-major integer matrix. Lattice bases are stored column-wise,
// i.e. column j of a basis matrix is the j-th basis vector.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMat(std::initializer_list<std::initializer_list<long>> rows);

  static IntMat identity(std::size_t n);
  static IntMat from_columns(const std::vector<IntVec>& cols, std::size_t rows);
  static IntMat from_rows(const std::vector<IntVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVec row(std::size_t r) const;
  IntVec column(std::size_t c) const;
  std::vector<IntVec> column_list() const;
  void set_row(std::size_t r, const IntVec& v);
  void set_column(std::size_t c, const IntVec& v);

  IntMat transpose() const;
  IntMat column_range(std::size_t begin, std::size_t end) const;
  IntMat row_range(std::size_t begin, std::size_t end) const;
  // Stacks `top` above this matrix.
  IntMat with_row_on_top(const IntVec& top) const;

  IntMat operator*(const IntMat& o) const;
  IntVec operator*(const IntVec& x) const;
  bool operator==(const IntMat& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Row vector times matrix.
IntVec row_times(const IntVec& c, const IntMat& m);
RatVec row_times(const RatVec& c, const IntMat& m);
RatVec mat_times(const IntMat& m, const RatVec& x);

// Exact determinant by fraction-free elimination.
Integer determinant(const IntMat& m);
bool is_unimodular(const IntMat& m);

// Text format: "rows cols" on the first line, then the entries row by row.
std::string format_matrix(const IntMat& m);
IntMat parse_matrix(const std::string& text);

}  // namespace dkplab
