#pragma once

#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "overrank/qseries.hpp"

namespace overrank {

/// A product  c * q^s * prod (x_i; q^{b_i})_inf^{p_i}  of q-Pochhammer symbols.
///
/// Every theta quotient in this library (j, J_m, Delta, the Psi summands, eta
/// quotients) is built as a ThetaProduct. Vanishing factors are detected
/// symbolically: a vanishing denominator raises PoleError, a vanishing numerator
/// makes the whole product zero. Evaluation splits off the finitely many factors
/// 1 - u q^f with f <= 0 and runs the rest as in-place binomial updates over an
/// integer cyclotomic buffer, so cost is linear in the number of factors.
class ThetaProduct {
 public:
  ThetaProduct& times(const CycloNum& c);
  ThetaProduct& times(const Monomial& m);
  ThetaProduct& times_q(Exp e);

  /// (x; q^base)_inf ^ power
  ThetaProduct& pochhammer(const Monomial& x, Exp base, int power, std::string label = {});
  /// j(z; q^base) ^ power, as (z)(q^base/z)(q^base) over q^base.
  ThetaProduct& theta(const Monomial& z, Exp base, int power);
  /// J_m ^ power = (q^m; q^m)_inf ^ power
  ThetaProduct& J(Exp m, int power);

  ThetaProduct& operator*=(const ThetaProduct& o);

  /// Throws PoleError naming the first vanishing denominator factor.
  void check_poles() const;
  /// True when some numerator factor vanishes identically (after the pole check).
  bool vanishes() const;
  /// Exact q-adic valuation of a non-vanishing product.
  Exp valuation() const;

  /// The product to O(q^prec).
  QSeries evaluate(Exp prec) const;
  /// s times the product, to the precision s supports: prec(s) + valuation().
  QSeries times_series(const QSeries& s) const;

 private:
  struct Factor {
    Monomial x;
    Exp base;
    int power;
    std::string label;
  };
  struct Normalized {
    CycloNum constant{1};
    Exp shift = 0;
    // (u, f, power): (1 - u q^f)^power with f > 0
    std::vector<std::tuple<RootOfUnity, Exp, int>> binomials;
    long level = 1;
  };
  Normalized normalize(Exp relative_prec) const;
  static bool factor_vanishes(const Factor& f);

  CycloNum constant_{1};
  Exp shift_ = 0;
  std::vector<Factor> factors_;
};

/// True iff j(z; q^base) vanishes, i.e. z is an integral power of q^base.
bool j_is_zero(const Monomial& z, Exp base);

/// prod_{k >= 0} (1 - x q^{k base}) to O(q^prec).
QSeries pochhammer_inf(const Monomial& x, Exp base, Exp prec);

/// J_m = (q^m; q^m)_inf
QSeries J(Exp m, Exp prec);

/// j(z; q^base) by the triple product; the zero series when j_is_zero.
QSeries theta_j(const Monomial& z, Exp base, Exp prec);

/// sum_n (-1)^n q^{base n(n-1)/2} z^n, the bilateral series for j(z; q^base).
QSeries theta_j_sum(const Monomial& z, Exp base, Exp prec);

/// prod J_m^{e} for (m, e) pairs.
QSeries j_quotient(std::initializer_list<std::pair<Exp, int>> factors, Exp prec);
ThetaProduct j_quotient_product(std::initializer_list<std::pair<Exp, int>> factors);

/// prod eta(q^m)^e = q^{sum m e / 24} prod J_m^e; the q-power must be integral.
QSeries eta_quotient(const std::vector<std::pair<Exp, int>>& factors, Exp prec);

}  // namespace overrank
