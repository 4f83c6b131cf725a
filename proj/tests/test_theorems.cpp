#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "overrank/errors.hpp"
#include "overrank/theorems.hpp"
#include "overrank/theta.hpp"

using namespace overrank;

namespace {

const Monomial minus_one = Monomial::minus_one();
Monomial q_(Exp e) { return Monomial::q(e); }

QSeries jq(std::initializer_list<std::pair<Exp, int>> f, Exp prec) { return j_quotient(f, prec); }

QSeries X(Exp p) { return jq({{2, 1}, {3, 6}, {18, 1}, {1, -2}, {6, -3}, {9, -2}}, p); }
QSeries Y(Exp p) { return jq({{2, 4}, {1, -2}, {6, -1}}, p); }

// sum_j zeta_M^{w j} m(zeta_M^{-2j} q, q^2, -1)
QSeries weighted(long M, long w, Exp p) {
  QSeries s = QSeries::zero(p);
  for (long j = 0; j < M; ++j)
    s += m_series(Monomial(RootOfUnity(M, -2 * j), 1), 2, minus_one, p) * zeta(M, w * j);
  return s;
}

bool passes(const VerificationReport& r) { return r.status == Status::pass; }

}  // namespace

TEST_CASE("pair formulas against the oracle") {
  CHECK(passes(verify_pair(2, 3, RankKind::rank, 40)));
  CHECK(passes(verify_pair(4, 4, RankKind::rank, 40)));
  CHECK(passes(verify_pair(3, 5, RankKind::rank, 40)));
  CHECK(passes(verify_pair(2, 5, RankKind::m2, 40)));
  CHECK(passes(verify_pair(1, 2, RankKind::m2, 40)));
}

TEST_CASE("odd a with even M uses the reflected pair") {
  const RhsPlan p = rank_pair_plan(3, 6);
  CHECK(p.a == 4);
  CHECK(p.formula == Formula::rank_even_even);
  CHECK(passes(verify_pair(3, 6, RankKind::rank, 40)));
  CHECK_THROWS_AS(m2_pair_plan(4, 4), RangeError);
}

TEST_CASE("a = M = 3 with z' = -1, z'' = q^6") {
  const RhsPlan p = rank_pair_plan(3, 3);
  CHECK(admissibility(p, 0, minus_one).empty());
  CHECK(admissibility(p, 1, q_(6)).empty());
  const Exp P = 60;
  const QSeries h = h_series(q_(6), 9, P - 2).shifted(2);
  CHECK(rank_pair_rhs(3, 3, minus_one, q_(6), P) == h * CycloNum(-2) + X(P) * CycloNum(Rational(1, 3)));
}

TEST_CASE("a = M = 6 with z' = -1") {
  const Exp P = 60;
  CHECK(rank_pair_rhs(6, 6, minus_one, minus_one, P) == Y(P) * CycloNum(Rational(2, 3)));
}

TEST_CASE("generic choice") {
  const RhsPlan p = rank_pair_plan(2, 5);
  const GenericChoice g = choose_generic(p);
  CHECK(admissibility(p, 0, g.zp).empty());
  CHECK(admissibility(p, 1, g.zpp).empty());
  const GenericChoice g1 = choose_generic(p, 1);
  CHECK(!(g1.zp == g.zp));
  CHECK(passes(generic_independence(2, 5, RankKind::rank, 30)));
  CHECK(passes(generic_independence(3, 4, RankKind::m2, 30)));
  // j(q^50; q^50) = 0
  CHECK(admissibility(p, 0, q_(50)) != "");
}

TEST_CASE("single deviations for odd M") {
  const Exp P = 40;
  for (long a = 0; a < 5; ++a) CHECK(single_deviation(a, 5, RankKind::rank, P) == deviation(a, 5, RankKind::rank, P));
  for (long a = 0; a < 3; ++a) CHECK(single_deviation(a, 3, RankKind::m2, P) == deviation(a, 3, RankKind::m2, P));
}

TEST_CASE("derivation steps") {
  for (auto [a, M] : {std::pair{2L, 3L}, {3L, 5L}, {4L, 6L}, {2L, 4L}}) {
    for (const auto& r : derivation_checks(a, M, RankKind::rank, 30)) CHECK_MESSAGE(passes(r), summary_line(r));
  }
  for (const auto& r : derivation_checks(2, 4, RankKind::m2, 30)) CHECK_MESSAGE(passes(r), summary_line(r));
}

TEST_CASE("m plus Psi for a even and M odd equals the conjugate-weighted sum") {
  const Exp P = 30;
  const long a = 2, M = 5, k = (a + M - 1) / 2;
  QSeries direct = m_series(q_(M - a * M), 2 * M * M, minus_one, P + k * k).shifted(-k * k) *
                   CycloNum(k % 2 ? -M : M);
  direct += psi(k, M, q_(1), minus_one, minus_one, 2, P) * CycloNum(M);
  CHECK(!(direct == weighted(M, -(a - 1), P)));
  CHECK(direct == weighted(M, a - 1, P));
}

TEST_CASE("delta evaluations at sixth roots of unity") {
  const Exp P = 40;
  auto lhs = [&](long j) {
    return delta(Monomial(RootOfUnity(6, -2 * j), 1), Monomial::constant(RootOfUnity(6, j)), minus_one, 2, P) *
           (CycloNum(1) - zeta(6, j));
  };
  const QSeries A = jq({{2, 6}, {3, 3}, {12, 1}, {1, -3}, {4, -3}, {6, -3}}, P);
  const QSeries B = jq({{1, 1}, {2, 4}, {12, 1}, {3, -1}, {4, -3}, {6, -1}}, P);
  const CycloNum c = CycloNum(Rational(-1, 2)) * (CycloNum(1) - zeta(3, 1));
  CHECK(lhs(5) == A * c);
  CHECK(!(lhs(5) == B * c));
  // j = 5 is the complex conjugate of j = 1
  CHECK(lhs(1) == A * (CycloNum(Rational(-1, 2)) * (CycloNum(1) - zeta(3, -1))));
}

TEST_CASE("leading theta quotient of the mod 6 rank difference") {
  const Exp P = 40;
  auto term = [&](int power) {
    ThetaProduct t;
    t.J(18, power).theta(q_(9), 18, 1).J(6, -1).theta(q_(3), 18, -2);
    return t.evaluate(P);
  };
  const QSeries target = jq({{6, 1}, {9, 4}, {3, -2}, {18, -2}}, P);
  CHECK(term(3) == target);
  CHECK(!(term(1) == target));
}

TEST_CASE("suites") {
  std::set<std::string> ids;
  for (const auto& r : run_jobs(section4_jobs(Section4Orders::uniform(30)), 4)) {
    CHECK_MESSAGE(r.status == Status::pass, summary_line(r));
    ids.insert(r.identity_id);
  }
  CHECK(ids.count("mod3.eta_form") == 1);
  CHECK(ids.count("mod6.single_3") == 1);
  for (const auto& r : run_jobs(lemma_jobs(LemmaOrders::uniform(30)), 4))
    CHECK_MESSAGE(r.status != Status::fail, summary_line(r));
}

TEST_CASE("eta form order never drops below 48") {
  CHECK(Section4Orders::uniform(24).eta_form == 48);
  CHECK(Section4Orders::uniform(60).eta_form == 60);
}
