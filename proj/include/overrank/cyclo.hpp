#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "overrank/rational.hpp"

namespace overrank {

/// Largest cyclotomic level any operation may produce (default 240).
long level_cap() noexcept;
void set_level_cap(long cap);

/// Euler's totient.
long totient(long n);

/// Reduction data for Q(zeta_N) in the power basis 1, x, ..., x^(phi-1) modulo Phi_N.
struct LevelInfo {
  long level = 1;
  long phi = 1;
  std::vector<long> cyclotomic;              // Phi_N, low degree first, monic
  std::vector<std::vector<long>> powers;     // powers[k] = x^k mod Phi_N for 0 <= k < N
};

/// Shared, immutable per-level data. Safe to call concurrently.
const LevelInfo& level_info(long level);

/// Element of a cyclotomic field Q(zeta_L), stored in the power basis modulo Phi_L.
///
/// Elements with a rational value are always stored at level 1, so the level of a
/// non-rational element is the smallest level it has been combined at. Binary
/// operations lift both operands to the lcm of their levels.
class CycloNum {
 public:
  CycloNum();
  CycloNum(long n);                      // NOLINT(google-explicit-constructor)
  CycloNum(Rational r);                  // NOLINT(google-explicit-constructor)

  /// coeffs.size() must equal phi(level).
  static CycloNum from_coeffs(long level, std::vector<Rational> coeffs);

  long level() const noexcept { return info_->level; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  /// Same value expressed at a multiple of the current level (no normalization).
  std::vector<Rational> coords_at(long level) const;

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  std::optional<Rational> as_rational() const;

  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }
  CycloNum& operator*=(const Rational& r);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  CycloNum operator-() const;

  /// Throws DivisionByZero for 0.
  CycloNum inverse() const;

  friend bool operator==(const CycloNum& a, const CycloNum& b);

  /// Rational values print as "a/b"; others as "(a0 + a1*zeta(L) + ...)".
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const CycloNum& c) { return os << c.str(); }

 private:
  CycloNum(const LevelInfo* info, std::vector<Rational> c) : info_(info), c_(std::move(c)) { normalize(); }
  void normalize();
  static long common_level(const CycloNum& a, const CycloNum& b);

  const LevelInfo* info_;
  std::vector<Rational> c_;
};

/// zeta_L^k, stored at level L / gcd(L, k).
CycloNum zeta(long level, long k);

/// Sum over j = 0..n-1 of zeta_n^(s j): n when n divides s, otherwise 0.
Rational root_of_unity_sum(long n, long s);

/// The rational value of a, if a lies in Q.
std::optional<Rational> is_rational(const CycloNum& a);

/// A root of unity exp(2 pi i num/den), kept as a reduced fraction of a turn.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  /// zeta_L^k
  RootOfUnity(long level, long k);
  static RootOfUnity one() { return {}; }
  static RootOfUnity minus_one() { return {2, 1}; }

  long order() const noexcept { return den_; }
  long turn_numerator() const noexcept { return num_; }
  bool is_one() const noexcept { return num_ == 0; }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity inverse() const { return RootOfUnity(den_, -num_); }
  RootOfUnity pow(long k) const;
  RootOfUnity operator-() const { return *this * minus_one(); }

  CycloNum value() const { return zeta(den_, num_); }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend auto operator<=>(const RootOfUnity&, const RootOfUnity&) = default;

  /// "1", "-1" or "zeta(L)^k".
  std::string str() const;

 private:
  long num_ = 0;
  long den_ = 1;
};

}  // namespace overrank
