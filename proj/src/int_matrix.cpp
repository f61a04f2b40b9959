#include "dkplab/int_matrix.hpp"

#include <sstream>
#include <utility>

#include "dkplab/error.hpp"

namespace dkplab {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::kShapeMismatch, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_columns(const std::vector<IntVec>& cols, std::size_t rows) {
  IntMat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

IntVec IntMat::row(std::size_t r) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVec IntMat::column(std::size_t c) const {
  IntVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<IntVec> IntMat::column_list() const {
  std::vector<IntVec> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

void IntMat::set_row(std::size_t r, const IntVec& v) {
  if (v.size() != cols_) throw Error(ErrorKind::kShapeMismatch, "row length");
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

void IntMat::set_column(std::size_t c, const IntVec& v) {
  if (v.size() != rows_) throw Error(ErrorKind::kShapeMismatch, "column length");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMat IntMat::column_range(std::size_t begin, std::size_t end) const {
  IntMat m(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c) m(r, c - begin) = (*this)(r, c);
  return m;
}

IntMat IntMat::row_range(std::size_t begin, std::size_t end) const {
  IntMat m(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r - begin, c) = (*this)(r, c);
  return m;
}

IntMat IntMat::with_row_on_top(const IntVec& top) const {
  if (top.size() != cols_) throw Error(ErrorKind::kShapeMismatch, "stacked row length");
  IntMat m(rows_ + 1, cols_);
  m.set_row(0, top);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r + 1, c) = (*this)(r, c);
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw Error(ErrorKind::kShapeMismatch, "matrix product");
  IntMat p(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
    }
  return p;
}

IntVec IntMat::operator*(const IntVec& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::kShapeMismatch, "matrix-vector product");
  IntVec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

IntVec row_times(const IntVec& c, const IntMat& m) {
  if (c.size() != m.rows()) throw Error(ErrorKind::kShapeMismatch, "row vector times matrix");
  IntVec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += c[i] * m(i, j);
  }
  return out;
}

RatVec row_times(const RatVec& c, const IntMat& m) {
  if (c.size() != m.rows()) throw Error(ErrorKind::kShapeMismatch, "row vector times matrix");
  RatVec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += c[i] * Rational(m(i, j));
  return out;
}

RatVec mat_times(const IntMat& m, const RatVec& x) {
  if (x.size() != m.cols()) throw Error(ErrorKind::kShapeMismatch, "matrix-vector product");
  RatVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += Rational(m(i, j)) * x[j];
  return y;
}

Integer determinant(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kShapeMismatch, "determinant of non-square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMat& m) {
  if (m.rows() != m.cols()) return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

std::string format_matrix(const IntMat& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += join(m.row(r));
    out += "\n";
  }
  return out;
}

IntMat parse_matrix(const std::string& text) {
  std::istringstream in(text);
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw Error(ErrorKind::kParse, "matrix header must be 'rows cols'");
  }
  IntMat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::string tok;
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c) {
      if (!(in >> tok)) throw Error(ErrorKind::kParse, "matrix has too few entries");
      m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = parse_integer(tok);
    }
  if (in >> tok) throw Error(ErrorKind::kParse, "trailing data after matrix");
  return m;
}

}  // namespace dkplab
