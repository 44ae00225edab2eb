#include "adelic/matrix.hpp"

#include "adelic/errors.hpp"

namespace adelic {

Matrix Matrix::identity(int n, unsigned charp) {
  Matrix m(n, n, charp);
  for (int i = 0; i < n; ++i) m.at(i, i) = Poly(Rat(1), charp);
  return m;
}

Matrix Matrix::from_rows(const PolyMatrix& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != cols) fail(ErrorKind::InvalidComplex, "ragged matrix rows");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : e)
    if (!x.is_zero()) return false;
  return true;
}

PolyMatrix Matrix::to_rows() const {
  PolyMatrix out(rows, std::vector<Poly>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out[i][j] = at(i, j);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.e) x = -x;
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows != o.rows || cols != o.cols) fail(ErrorKind::InvalidComplex, "matrix shape mismatch in sum");
  Matrix r = *this;
  for (size_t k = 0; k < e.size(); ++k) r.e[k] += o.e[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

bool Matrix::operator==(const Matrix& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (size_t k = 0; k < e.size(); ++k)
    if (!(e[k] - o.e[k]).is_zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::string s = "[";
  for (int i = 0; i < rows; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < cols; ++j) s += (j ? "," : "") + at(i, j).str();
    s += "]";
  }
  return s + "]";
}

namespace {

void check_shapes(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows)
    fail(ErrorKind::InvalidComplex, "matrix product shape mismatch " + std::to_string(a.rows) + "x" +
                                        std::to_string(a.cols) + " * " + std::to_string(b.rows) + "x" +
                                        std::to_string(b.cols));
}

void product_row(const Matrix& a, const Matrix& b, Matrix& c, int i) {
  for (int k = 0; k < a.cols; ++k) {
    const Poly& x = a.at(i, k);
    if (x.is_zero()) continue;
    for (int j = 0; j < b.cols; ++j) {
      const Poly& y = b.at(k, j);
      if (!y.is_zero()) c.at(i, j) += x * y;
    }
  }
}

}  // namespace

Matrix matmul_serial(const Matrix& a, const Matrix& b) {
  check_shapes(a, b);
  Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) product_row(a, b, c, i);
  return c;
}

Matrix matmul_parallel(const Matrix& a, const Matrix& b) {
  check_shapes(a, b);
  Matrix c(a.rows, b.cols);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < a.rows; ++i) product_row(a, b, c, i);
  return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (static_cast<long long>(a.rows) * a.cols * b.cols >= 4096) return matmul_parallel(a, b);
  return matmul_serial(a, b);
}

}  // namespace adelic
