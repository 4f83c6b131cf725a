#pragma once

#include "overrank/qseries.hpp"
#include "overrank/report.hpp"
#include "overrank/theta.hpp"

namespace overrank {

/// m(x, q^base, z) = 1/j(z; q^base) * sum_r (-1)^r q^{base r(r-1)/2} z^r / (1 - q^{base(r-1)} x z).
///
/// Throws PoleError when j(z; q^base) = 0 or some denominator 1 - q^{base(r-1)} x z vanishes
/// (equivalently j(xz; q^base) = 0). The result is exact below `prec`.
QSeries m_series(const Monomial& x, Exp base, const Monomial& z, Exp prec);

/// Throws PoleError exactly when m_series(x, base, z, .) would.
void check_m_poles(const Monomial& x, Exp base, const Monomial& z);

/// Delta(x, z1, z0; q^base) = z0 J^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1)), all over q^base.
ThetaProduct delta_product(const Monomial& x, const Monomial& z1, const Monomial& z0, Exp base);
QSeries delta(const Monomial& x, const Monomial& z1, const Monomial& z0, Exp base, Exp prec);

/// The theta-quotient sum Psi^n_k(x, z, z'; q^base) arising from the orthogonality
/// relation for m over the n-th roots of unity.
QSeries psi(long k, long n, const Monomial& x, const Monomial& z, const Monomial& zp, Exp base, Exp prec);
void check_psi_poles(long k, long n, const Monomial& x, const Monomial& z, const Monomial& zp, Exp base);

/// Checks  sum_t zeta_n^{-kt} m(zeta_n^t x, q^base, z)
///       = n q^{-base C(k+1,2)} (-x)^k m(-q^{base(C(n,2)-nk)} (-x)^n, q^{base n^2}, z') + n Psi^n_k(x, z, z'; q^base).
VerificationReport orthogonality_check(long k, long n, const Monomial& x, const Monomial& z, const Monomial& zp,
                                       Exp base, Exp order);

/// h(x; q^base) = (-q^base)_inf/(q^base)_inf sum_n (-1)^n q^{base(n^2+n)} / (1 - x q^{base n}).
QSeries h_series(const Monomial& x, Exp base, Exp prec);

/// T(q) = 2 (-q)_inf/(q)_inf sum_n (-1)^n q^{n^2+n} / (1 + q^n)^2.
QSeries T_series(Exp prec);
/// T_2(q) = 2 (-q)_inf/(q)_inf sum_n (-1)^n q^{n^2+2n} / (1 + q^{2n})^2.
QSeries T2_series(Exp prec);

}  // namespace overrank
