#pragma once

#include "adelic/arith.hpp"
#include "adelic/groebner.hpp"

#include <string>
#include <vector>

namespace adelic {

/// Dense row-major matrix of ring elements.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Poly> e;

  Matrix() = default;
  Matrix(int r, int c, unsigned charp = 0) : rows(r), cols(c), e(static_cast<size_t>(r) * c, Poly(charp)) {}
  static Matrix identity(int n, unsigned charp = 0);
  static Matrix from_rows(const PolyMatrix& m, int cols);

  Poly& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
  const Poly& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }
  bool is_zero() const;
  PolyMatrix to_rows() const;
  Matrix transposed() const;
  Matrix operator-() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  std::string str() const;
};

// Reference product.
Matrix matmul_serial(const Matrix& a, const Matrix& b);
// Row-parallel product (OpenMP); identical results to matmul_serial.
Matrix matmul_parallel(const Matrix& a, const Matrix& b);
// Dispatches on size.
Matrix matmul(const Matrix& a, const Matrix& b);

}  // namespace adelic
