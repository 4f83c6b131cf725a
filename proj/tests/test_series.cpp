#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "overrank/errors.hpp"
#include "overrank/qseries.hpp"
#include "overrank/theta.hpp"

using namespace overrank;

namespace {

// Euler's pentagonal series, written out term by term.
QSeries pentagonal(Exp prec) {
  std::vector<CycloNum> c(static_cast<std::size_t>(prec));
  for (Exp k = -40; k <= 40; ++k) {
    const Exp e = k * (3 * k - 1) / 2;
    if (e < prec) c[e] += CycloNum(k % 2 == 0 ? 1 : -1);
  }
  return QSeries(0, c, prec);
}

// p(n) by the naive O(n^2) coin-change recurrence.
std::vector<long> partitions(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) p[s] += p[s - part];
  return p;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  CHECK(zeta(3, 1) + zeta(3, 2) == CycloNum(-1));
  CHECK((CycloNum(1) + zeta(4, 2)).is_zero());
  CHECK(zeta(6, 1) * zeta(6, 1).inverse() == CycloNum(1));
  CHECK(zeta(12, 4) == zeta(3, 1));
  CHECK(zeta(6, 1) * zeta(6, 1) == zeta(3, 1));
  CHECK((zeta(5, 1) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4) + CycloNum(1)).is_zero());
  CHECK(is_rational(zeta(8, 1) * zeta(8, 7)).value() == Rational(1));
  CHECK_THROWS_AS(CycloNum(0).inverse(), DivisionByZero);
  CHECK(root_of_unity_sum(6, 12) == Rational(6));
  CHECK(root_of_unity_sum(6, 4) == Rational(0));
}

TEST_CASE("series precision bookkeeping") {
  const QSeries one_minus_q(0, {CycloNum(1), CycloNum(-1)}, 10);
  const QSeries inv = one_minus_q.inverse();
  CHECK(inv.prec() == 10);
  for (Exp e = 0; e < 10; ++e) CHECK(inv.coeff(e) == CycloNum(1));
  CHECK_THROWS_AS(inv.coeff(10), RangeError);
  const QSeries a = QSeries::monomial(CycloNum(1), 2, 8);
  const QSeries b = QSeries::monomial(CycloNum(1), -1, 5);
  const QSeries ab = a * b;
  CHECK(ab.prec() == 7);
  CHECK(ab.coeff(1) == CycloNum(1));
  CHECK(QSeries::zero(5).min_exp() == 5);
  CHECK_THROWS_AS(QSeries::zero(5).inverse(), NotInvertible);
  const QSeries qm = QSeries::monomial(CycloNum(1), 3, 20).inverse();
  CHECK(qm.min_exp() == -3);
  CHECK(qm.prec() == 14);
}

TEST_CASE("J_1 matches the pentagonal number series") {
  CHECK(J(1, 200) == pentagonal(200));
  CHECK(J(1, 200).prec() == 200);
  CHECK(J(1, 8).str() == "1 - q - q^2 + q^5 + q^7 + O(q^8)");
}

TEST_CASE("1/J_1 generates partitions") {
  const auto p = partitions(120);
  const QSeries inv = ThetaProduct().J(1, -1).evaluate(121);
  for (int n = 0; n <= 120; ++n) CHECK(inv.coeff(n) == CycloNum(p[n]));
}

TEST_CASE("product and bilateral sum agree") {
  const std::vector<std::pair<Monomial, Exp>> cases = {
      {Monomial::minus_one(), 1},       {Monomial::q(1), 2},
      {Monomial(RootOfUnity(3, 1), 1), 2}, {-Monomial::q(5), 2},
      {Monomial::q(-3), 2},             {Monomial(RootOfUnity(5, 2), -7), 3},
      {Monomial(RootOfUnity(12, 5), 4), 18}, {Monomial::q(6), 6}};
  for (const auto& [z, b] : cases) {
    INFO(z.str(), " base ", b);
    CHECK(theta_j(z, b, 80) == theta_j_sum(z, b, 80));
    CHECK(theta_j(z, b, 80).prec() == 80);
  }
  CHECK(theta_j(Monomial::q(6), 6, 40).is_zero());
}

TEST_CASE("theta dictionary") {
  const Exp P = 150;
  CHECK(theta_j(Monomial::q(1), 2, P) == j_quotient({{1, 2}, {2, -1}}, P));
  CHECK(theta_j(Monomial::minus_one(), 1, P) == CycloNum(2) * j_quotient({{2, 2}, {1, -1}}, P));
  CHECK(theta_j(-Monomial::q(1), 2, P) == j_quotient({{2, 5}, {1, -2}, {4, -2}}, P));
  CHECK(theta_j(Monomial::q(1), 3, P) == J(1, P));
  CHECK(theta_j(-Monomial::q(1), 3, P) == j_quotient({{2, 1}, {3, 2}, {1, -1}, {6, -1}}, P));
}

TEST_CASE("pole detection") {
  CHECK_THROWS_AS(ThetaProduct().theta(Monomial::q(4), 2, -1).evaluate(10), PoleError);
  CHECK_NOTHROW(ThetaProduct().theta(Monomial::q(3), 2, -1).evaluate(10));
  const QSeries r = ThetaProduct().theta(Monomial::q(3), 2, -1).evaluate(30);
  const QSeries back = r * theta_j(Monomial::q(3), 2, 40);
  CHECK(back == QSeries::constant(CycloNum(1), 30));
}

TEST_CASE("eta quotient needs an integral shift") {
  CHECK_THROWS_AS(eta_quotient({{1, 1}}, 10), RangeError);
  CHECK(eta_quotient({{1, 24}}, 20).min_exp() == 1);
}
