#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "overrank/cyclo.hpp"

namespace overrank {

/// Exponent of q. All arithmetic on exponents is overflow-checked.
using Exp = std::int64_t;

Exp checked_add(Exp a, Exp b);
Exp checked_sub(Exp a, Exp b);
Exp checked_mul(Exp a, Exp b);
/// floor(a / b) and ceil(a / b) for b > 0.
Exp floor_div(Exp a, Exp b);
Exp ceil_div(Exp a, Exp b);

/// Symbolic argument c * q^e with c a root of unity.
struct Monomial {
  RootOfUnity unity;
  Exp exp = 0;

  Monomial() = default;
  Monomial(RootOfUnity u, Exp e) : unity(u), exp(e) {}

  static Monomial q(Exp e = 1) { return {RootOfUnity::one(), e}; }
  static Monomial constant(RootOfUnity u) { return {u, 0}; }
  static Monomial minus_one() { return {RootOfUnity::minus_one(), 0}; }

  Monomial operator*(const Monomial& o) const { return {unity * o.unity, checked_add(exp, o.exp)}; }
  Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }
  Monomial operator-() const { return {-unity, exp}; }
  Monomial inverse() const { return {unity.inverse(), checked_sub(0, exp)}; }
  Monomial pow(long k) const { return {unity.pow(k), checked_mul(exp, k)}; }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Expression-language form, e.g. "-q^3", "zeta(3)*q", "-1".
  std::string str() const;
};

/// Truncated Laurent series in q with cyclotomic coefficients.
///
/// Coefficients are exact for exponents strictly below prec(). Storage is dense on
/// [min_exp(), prec()); leading zeros are trimmed, so min_exp() is the valuation of
/// a nonzero series and equals prec() for a series that vanishes on its window.
class QSeries {
 public:
  QSeries() = default;
  /// coeffs[i] is the coefficient of q^(min_exp + i); entries at or beyond prec are dropped.
  QSeries(Exp min_exp, std::vector<CycloNum> coeffs, Exp prec);

  static QSeries zero(Exp prec) { return QSeries(prec, {}, prec); }
  static QSeries constant(const CycloNum& c, Exp prec);
  static QSeries monomial(const CycloNum& c, Exp e, Exp prec);

  Exp min_exp() const noexcept { return min_; }
  Exp prec() const noexcept { return prec_; }
  const std::vector<CycloNum>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }

  /// Coefficient of q^e; throws RangeError at or beyond prec().
  CycloNum coeff(Exp e) const;

  QSeries truncated(Exp prec) const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }
  QSeries& operator*=(const CycloNum& c);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const CycloNum& c) { return a *= c; }
  friend QSeries operator*(const CycloNum& c, QSeries a) { return a *= c; }
  friend QSeries operator/(const QSeries& a, const QSeries& b) { return a * b.inverse(); }
  QSeries operator-() const;

  /// Adds a constant (exact, so precision is unchanged).
  QSeries operator+(const CycloNum& c) const;
  QSeries operator-(const CycloNum& c) const { return *this + (-c); }

  /// Multiplication by q^e.
  QSeries shifted(Exp e) const;
  QSeries scaled(const CycloNum& c) const { return *this * c; }

  /// Multiplicative inverse. Throws NotInvertible for a series that is zero on its window.
  QSeries inverse() const;
  QSeries pow(long k) const;

  /// Equality on the common window below min(prec_a, prec_b).
  friend bool operator==(const QSeries& a, const QSeries& b);

  /// True when every coefficient is rational.
  bool has_rational_coeffs() const;

  /// "c*q^e" terms in increasing exponent followed by "+ O(q^prec)".
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.str(); }

 private:
  void trim();

  Exp min_ = 0;
  Exp prec_ = 0;
  std::vector<CycloNum> c_;
};

/// q -> q^t for t >= 1.
QSeries subst_q_power(const QSeries& s, Exp t);

/// sum_n c_{m n + r} q^n over the tracked exponents congruent to r mod m.
QSeries extract_progression(const QSeries& s, Exp r, Exp m);

/// First exponent below `window` where a and b differ, if any.
std::optional<Exp> first_difference(const QSeries& a, const QSeries& b, Exp window);

}  // namespace overrank
