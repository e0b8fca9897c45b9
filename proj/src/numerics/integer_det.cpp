#include <utility>

#include "zeta_cover/numerics.hpp"

namespace zeta_cover {

IntegerMatrix::IntegerMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

IntegerMatrix IntegerMatrix::minor(std::size_t k) const {
  IntegerMatrix out(dim_ - 1);
  for (std::size_t i = 0, oi = 0; i < dim_; ++i) {
    if (i == k) continue;
    for (std::size_t j = 0, oj = 0; j < dim_; ++j) {
      if (j == k) continue;
      out(oi, oj++) = (*this)(i, j);
    }
    ++oi;
  }
  return out;
}

// Bareiss: after step k every entry of the trailing block is a (k+1)x(k+1)
// minor, so the division by the previous pivot is exact.
mpz_class integer_determinant(const IntegerMatrix& input) {
  const std::size_t n = input.dim();
  if (n == 0) return 1;
  IntegerMatrix m = input;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  mpz_class det = m(n - 1, n - 1);
  return sign < 0 ? mpz_class(-det) : det;
}

}  // namespace zeta_cover
