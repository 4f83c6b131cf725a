#pragma once

// Integer working storage for products of binomials (1 - zeta q^f)^(+-1).
//
// Each coefficient is an element of Z[x]/(x^N - 1), so multiplying by a root of
// unity is a cyclic rotation. A global denominator lets rational input series be
// carried through the integer loops.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "overrank/cyclo.hpp"
#include "overrank/qseries.hpp"

namespace overrank::detail {

class CyclicBuffer {
 public:
  CyclicBuffer(long level, std::size_t length);

  /// Loads coefficients (exponent offset handled by the caller) with a common denominator.
  /// `level` must be a multiple of every coefficient's level.
  static CyclicBuffer from_coeffs(long level, const std::vector<CycloNum>& coeffs, std::size_t length);

  long level() const noexcept { return n_; }
  std::size_t size() const noexcept { return len_; }

  /// Index k such that u = zeta_N^k.
  long root_index(const RootOfUnity& u) const;

  void set_one(std::size_t i) { data_[i * n_] = 1; }
  /// b[i] += sign * zeta_N^k
  void add_root(std::size_t i, long k, int sign);

  /// Multiply by (1 - zeta_N^k q^f).
  void mul_binomial(long k, std::size_t f);
  /// Divide by (1 - zeta_N^k q^f).
  void div_binomial(long k, std::size_t f);

  /// Coefficient i divided by the buffer's denominator.
  CycloNum get(std::size_t i) const;

  const mpz_class& denominator() const noexcept { return den_; }
  void set_denominator(mpz_class d) { den_ = std::move(d); }

 private:
  mpz_class* slot(std::size_t i) { return &data_[i * n_]; }
  const mpz_class* slot(std::size_t i) const { return &data_[i * n_]; }

  long n_;
  std::size_t len_;
  std::vector<mpz_class> data_;
  mpz_class den_{1};
};

}  // namespace overrank::detail
