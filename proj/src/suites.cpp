#include <random>

#include "overrank/errors.hpp"
#include "overrank/theorems.hpp"
#include "overrank/theta.hpp"

namespace overrank {

namespace {

using Params = std::vector<std::pair<std::string, ParamValue>>;
using Sides = std::function<std::pair<QSeries, QSeries>(Exp)>;

Monomial q_(Exp e) { return Monomial::q(e); }
Monomial root(long L, long k) { return Monomial::constant(RootOfUnity(L, k)); }
const Monomial minus_one = Monomial::minus_one();

ReportJob identity_job(std::string id, Exp order, Sides sides, Params params = {}) {
  params.emplace_back("order", static_cast<long>(order));
  return [id = std::move(id), order, sides = std::move(sides), params = std::move(params)] {
    return timed_report(id, order, params, [&] {
      const auto [lhs, rhs] = sides(order);
      return compare_series(id, lhs, rhs, order);
    });
  };
}

// c q^shift prod J_m^e
QSeries jprod(std::initializer_list<std::pair<Exp, int>> f, Exp prec, Exp shift = 0, CycloNum c = CycloNum(1)) {
  ThetaProduct p = j_quotient_product(f);
  p.times_q(shift).times(c);
  return p.evaluate(prec);
}

QSeries constant(Rational r, Exp prec) { return QSeries::constant(CycloNum(r), prec); }

QSeries D(long a, long M, Exp prec) { return deviation(a, M, RankKind::rank, prec); }

// q^2 h(q^6; q^9)
QSeries H(Exp prec) { return h_series(q_(6), 9, prec - 2).shifted(2); }

// J2 J3^6 J18 / (J1^2 J6^3 J9^2)
QSeries X(Exp p) { return jprod({{2, 1}, {3, 6}, {18, 1}, {1, -2}, {6, -3}, {9, -2}}, p); }
// J2^4 / (J1^2 J6)
QSeries Y(Exp p) { return jprod({{2, 4}, {1, -2}, {6, -1}}, p); }
// J1 J2^4 J12 / (J3 J4^3 J6)
QSeries B(Exp p) { return jprod({{1, 1}, {2, 4}, {12, 1}, {3, -1}, {4, -3}, {6, -1}}, p); }
// J2^6 J3^3 J12 / (J1^3 J4^3 J6^3)
QSeries A(Exp p) { return jprod({{2, 6}, {3, 3}, {12, 1}, {1, -3}, {4, -3}, {6, -3}}, p); }

// J6 J9^4/(J3^2 J18^2) + 2q J9 J18/J3 + c q^2 J18^4/(J6 J9^2)
QSeries three_dissection(long c, Exp p) {
  return jprod({{6, 1}, {9, 4}, {3, -2}, {18, -2}}, p) + jprod({{9, 1}, {18, 1}, {3, -1}}, p, 1, CycloNum(2)) +
         jprod({{18, 4}, {6, -1}, {9, -2}}, p, 2, CycloNum(c));
}

// (1 - zeta_M^j) Delta(zeta_M^{-2j} q, zeta_M^j, -1; q^2)
QSeries weighted_delta(long M, long j, Exp p) {
  return delta(root(M, -2 * j) * q_(1), root(M, j), minus_one, 2, p) * (CycloNum(1) - zeta(M, j));
}

void add_h_jobs(std::vector<ReportJob>& jobs, Exp order) {
  const std::vector<Monomial> grid = {root(3, 1), root(5, 2) * q_(1), root(8, 1) * q_(2), root(6, 1) * q_(-1),
                                      -q_(3) * root(4, 1)};
  for (const auto& x : grid) {
    const Params p = {{"x", x.str()}};
    jobs.push_back(identity_job("h.relation_to_m", order, [x](Exp n) {
      const Monomial xi = x.inverse();
      const QSeries m = m_series(xi.pow(2) * q_(1), 2, x, n + x.exp).shifted(xi.exp) * (-xi.unity.value());
      return std::pair{h_series(x, 1, n), m};
    }, p));
    jobs.push_back(identity_job("h.reflection", order, [x](Exp n) {
      return std::pair{h_series(x, 1, n), h_series(q_(1) / x, 1, n)};
    }, p));
    jobs.push_back(identity_job("h.sum_with_negated_argument", order, [x](Exp n) {
      ThetaProduct r;
      r.times(CycloNum(2)).J(2, 4).J(1, -2).theta(x.pow(2), 2, -1);
      return std::pair{h_series(x, 1, n) + h_series(-x, 1, n), r.evaluate(n)};
    }, p));
  }
}

void add_theta_jobs(std::vector<ReportJob>& jobs, Exp order) {
  const std::vector<std::pair<Monomial, Exp>> grid = {
      {root(3, 1) * q_(2), 1}, {-q_(5), 2}, {root(5, 2) * q_(-7), 3}, {q_(3), 18}, {-q_(9), 18}};
  for (const auto& [x, b] : grid) {
    const Params p = {{"x", x.str()}, {"base", static_cast<long>(b)}};
    jobs.push_back(identity_job("j.inversion", order, [x, b](Exp n) {
      return std::pair{theta_j(x, b, n), theta_j(x.inverse() * q_(b), b, n)};
    }, p));
    for (long k = -3; k <= 3; ++k) {
      Params pk = p;
      pk.emplace_back("n", k);
      jobs.push_back(identity_job("j.quasi_periodicity", order, [x, b, k](Exp n) {
        // j(q^{bk} x; q^b) = (-1)^k q^{-b C(k,2)} x^{-k} j(x; q^b)
        const Monomial pre = x.pow(-k) * q_(-b * k * (k - 1) / 2);
        const QSeries rhs = theta_j(x, b, n - pre.exp).shifted(pre.exp) *
                            (pre.unity.value() * CycloNum(k % 2 == 0 ? 1 : -1));
        return std::pair{theta_j(q_(b * k) * x, b, n), rhs};
      }, pk));
    }
  }
  struct Entry {
    const char* id;
    Monomial z;
    Exp base;
    std::vector<std::pair<Exp, int>> js;
    long c;
  };
  const std::vector<Entry> dictionary = {
      {"dictionary.j(-1;q)", minus_one, 1, {{2, 2}, {1, -1}}, 2},
      {"dictionary.j(q;q^2)", q_(1), 2, {{1, 2}, {2, -1}}, 1},
      {"dictionary.j(-q;q^2)", -q_(1), 2, {{2, 5}, {1, -2}, {4, -2}}, 1},
      {"dictionary.j(q;q^3)", q_(1), 3, {{1, 1}}, 1},
      {"dictionary.j(-q;q^3)", -q_(1), 3, {{2, 1}, {3, 2}, {1, -1}, {6, -1}}, 1},
      {"dictionary.j(q;q^6)", q_(1), 6, {{1, 1}, {6, 2}, {2, -1}, {3, -1}}, 1},
      {"dictionary.j(-q;q^6)", -q_(1), 6, {{2, 2}, {3, 1}, {12, 1}, {1, -1}, {4, -1}, {6, -1}}, 1}};
  for (const auto& e : dictionary) {
    jobs.push_back(identity_job(e.id, order, [e](Exp n) {
      ThetaProduct r;
      for (auto [m, k] : e.js) r.J(m, k);
      r.times(CycloNum(e.c));
      return std::pair{theta_j(e.z, e.base, n), r.evaluate(n)};
    }));
  }
}

void add_mod3_jobs(std::vector<ReportJob>& jobs, const Section4Orders& o) {
  const Exp E = o.extended;
  jobs.push_back(identity_job("mod3.pair_top", E, [](Exp n) {
    return std::pair{D(3, 3, n) + D(2, 3, n), H(n) * CycloNum(-2) + X(n) * CycloNum(Rational(1, 3))};
  }));
  jobs.push_back(identity_job("mod3.pair_middle", E, [](Exp n) {
    return std::pair{D(2, 3, n) + D(1, 3, n), H(n) * CycloNum(4) - X(n) * CycloNum(Rational(2, 3))};
  }));
  jobs.push_back(identity_job("mod3.pair_middle_doubled", E, [](Exp n) {
    return std::pair{D(2, 3, n) + D(1, 3, n), D(2, 3, n) * CycloNum(2)};
  }));
  jobs.push_back(identity_job("mod3.weighted_sum_zero", E, [](Exp n) {
    return std::pair{D(3, 3, n) + D(2, 3, n) * CycloNum(2), QSeries::zero(n)};
  }));
  jobs.push_back(identity_job("mod3.generic_specialization", E, [](Exp n) {
    return std::pair{D(3, 3, n) + D(2, 3, n), rank_pair_rhs(3, 3, minus_one, q_(6), n)};
  }, {{"z'", std::string("-1")}, {"z''", std::string("q^6")}}));
  jobs.push_back(identity_job("mod3.appell_terms_to_h", E, [](Exp n) {
    QSeries l = constant(1, n) - m_series(q_(9), 18, minus_one, n) * CycloNum(2) +
                m_series(q_(-3), 18, q_(6), n + 4).shifted(-4) * CycloNum(2);
    return std::pair{l, H(n) * CycloNum(-2)};
  }));
  jobs.push_back(identity_job("mod3.psi_k0_vanishes", E, [](Exp n) {
    return std::pair{psi(0, 3, q_(1), minus_one, minus_one, 2, n), QSeries::zero(n)};
  }));
  jobs.push_back(identity_job("mod3.psi_k0_expansion", E, [](Exp n) {
    auto term = [&](Exp s, Exp a1, Exp a2, Exp b1, Exp b2) {
      ThetaProduct t;
      t.J(18, 3).theta(minus_one, 2, -1).theta(minus_one, 18, -1).times_q(s);
      t.theta(q_(a1), 18, 1).theta(q_(a2), 18, 1).theta(-q_(b1), 18, -1).theta(-q_(b2), 18, -1);
      return t.evaluate(n);
    };
    return std::pair{psi(0, 3, q_(1), minus_one, minus_one, 2, n),
                     term(0, 12, 3, 9, 3) + term(2, 18, 9, 9, 9) + term(6, 24, 15, 9, 15)};
  }));
  jobs.push_back(identity_job("mod3.psi_k2_expansion", E, [](Exp n) {
    auto term = [&](Exp s, Exp a1, Exp a2, Exp b2) {
      ThetaProduct t;
      t.times(CycloNum(2)).times_q(2 + s).J(18, 3).theta(minus_one, 2, -1).theta(q_(6), 18, -1);
      t.theta(-q_(a1), 18, 1).theta(-q_(a2), 18, 1).theta(q_(3), 18, -1).theta(-q_(b2), 18, -1);
      return t.evaluate(n);
    };
    return std::pair{psi(2, 3, q_(1), minus_one, q_(6), 2, n) * CycloNum(2),
                     term(0, 18, 9, 3) + term(0, 6, 15, 9) + term(-1, 12, 3, 15)};
  }));
  jobs.push_back(identity_job("mod3.delta_root1", E, [](Exp n) {
    return std::pair{weighted_delta(3, 1, n), B(n) * (CycloNum(Rational(-1, 2)) * (CycloNum(1) + zeta(3, 1)))};
  }));
  jobs.push_back(identity_job("mod3.delta_root2", E, [](Exp n) {
    return std::pair{weighted_delta(3, 2, n), B(n) * (CycloNum(Rational(-1, 2)) * (CycloNum(1) + zeta(3, -1)))};
  }));
  jobs.push_back(identity_job("mod3.delta_sum", E, [](Exp n) {
    QSeries s = QSeries::zero(n);
    for (long j = 1; j <= 2; ++j) s += weighted_delta(3, j, n) * (zeta(3, -j) * CycloNum(Rational(-2, 3)));
    return std::pair{s, B(n) * CycloNum(Rational(1, 3))};
  }));
  jobs.push_back(identity_job("mod3.theta_identity", E, [](Exp n) {
    return std::pair{psi(2, 3, q_(1), minus_one, q_(6), 2, n) * CycloNum(2) + B(n) * CycloNum(Rational(1, 3)),
                     X(n) * CycloNum(Rational(1, 3))};
  }));
  jobs.push_back(identity_job("mod3.theta_identity_J_form", E, [](Exp n) {
    QSeries l = jprod({{2, 1}, {12, 1}, {18, 6}, {4, -2}, {6, -2}, {9, -2}, {36, -1}}, n, 2, CycloNum(2));
    l += jprod({{2, 1}, {6, 1}, {9, 4}, {36, 2}, {3, -2}, {4, -2}, {18, -3}}, n, 2);
    l += jprod({{2, 1}, {9, 1}, {12, 1}, {18, 3}, {3, -1}, {4, -2}, {6, -1}, {36, -1}}, n, 1);
    l += B(n) * CycloNum(Rational(1, 3));
    return std::pair{l, X(n) * CycloNum(Rational(1, 3))};
  }));
  const Exp eta_order = std::max<Exp>(o.eta_form, 48);
  jobs.push_back(identity_job("mod3.eta_form", eta_order, [](Exp n) {
    QSeries l = eta_quotient({{1, 8}, {6, 5}, {12, 1}, {18, 5}, {4, -2}, {36, -1}}, n) * CycloNum(2);
    l += eta_quotient({{1, 8}, {6, 8}, {9, 6}, {36, 2}, {3, -2}, {4, -2}, {18, -4}}, n);
    l += eta_quotient({{1, 8}, {6, 6}, {9, 3}, {12, 1}, {18, 2}, {3, -1}, {4, -2}, {36, -1}}, n);
    l += eta_quotient({{1, 9}, {2, 3}, {6, 6}, {9, 2}, {12, 1}, {3, -1}, {4, -3}, {18, -1}}, n) *
         CycloNum(Rational(1, 3));
    return std::pair{l, eta_quotient({{1, 6}, {3, 6}, {6, 4}}, n) * CycloNum(Rational(1, 3))};
  }));
  jobs.push_back(identity_job("mod3.fjm_dissection", o.general, [](Exp n) {
    QSeries r = jprod({{6, 4}, {9, 6}, {3, -8}, {18, -3}}, n) + jprod({{6, 3}, {9, 3}, {3, -7}}, n, 1, CycloNum(2)) +
                jprod({{6, 2}, {18, 3}, {3, -6}}, n, 2, CycloNum(4));
    return std::pair{jprod({{2, 1}, {1, -2}}, n), r};
  }));
  jobs.push_back(identity_job("mod3.x_dissection", o.general, [](Exp n) {
    return std::pair{X(n), three_dissection(4, n)};
  }));
  jobs.push_back(identity_job("mod3.rank_difference", o.general, [](Exp n) {
    return std::pair{D(0, 3, n) - D(1, 3, n), H(n) * CycloNum(-6) + three_dissection(4, n)};
  }));
  jobs.push_back(identity_job("mod3.rank_difference_via_pairs", o.general, [](Exp n) {
    return std::pair{D(0, 3, n) - D(1, 3, n), D(3, 3, n) + D(2, 3, n) - D(2, 3, n) * CycloNum(2)};
  }));
  const Exp P = o.progression_input;
  for (long r = 0; r < 3; ++r) {
    const Exp out = ceil_div(P - r, 3);
    jobs.push_back(identity_job("mod3.progression_" + std::to_string(r), out, [P, r](Exp n) {
      const QSeries diff = D(0, 3, P) - D(1, 3, P);
      const QSeries lhs = extract_progression(diff, r, 3);
      QSeries rhs;
      if (r == 0) rhs = jprod({{3, 4}, {2, 1}, {1, -2}, {6, -2}}, n);
      if (r == 1) rhs = jprod({{3, 1}, {6, 1}, {1, -1}}, n, 0, CycloNum(2));
      if (r == 2) rhs = jprod({{6, 4}, {2, -1}, {3, -2}}, n, 0, CycloNum(4)) - h_series(q_(1), 3, n) * CycloNum(6);
      return std::pair{lhs, rhs};
    }, {{"input_order", static_cast<long>(P)}}));
  }
}

void add_mod6_jobs(std::vector<ReportJob>& jobs, const Section4Orders& o) {
  const Exp G = o.general;
  const CycloNum third(Rational(1, 3)), two_thirds(Rational(2, 3));
  jobs.push_back(identity_job("mod6.pair_01", G, [=](Exp n) {
    return std::pair{D(0, 6, n) + D(1, 6, n), Y(n) * two_thirds};
  }));
  jobs.push_back(identity_job("mod6.pair_12", G, [=](Exp n) {
    return std::pair{D(1, 6, n) + D(2, 6, n), H(n) * CycloNum(2) - X(n) * third};
  }));
  jobs.push_back(identity_job("mod6.pair_23", G, [=](Exp n) {
    return std::pair{D(2, 6, n) + D(3, 6, n), H(n) * CycloNum(-2) + X(n) * third - Y(n) * two_thirds};
  }));
  jobs.push_back(identity_job("mod6.pair_12_reduces_mod3", G, [](Exp n) {
    return std::pair{D(1, 6, n) + D(2, 6, n), D(1, 3, n)};
  }));
  jobs.push_back(identity_job("mod6.deviations_sum_zero", G, [](Exp n) {
    QSeries s = QSeries::zero(n);
    for (long i = 0; i < 6; ++i) s += D(i, 6, n);
    return std::pair{s, QSeries::zero(n)};
  }));
  jobs.push_back(identity_job("mod6.generic_specialization", G, [](Exp n) {
    QSeries r = psi(2, 3, q_(-1), minus_one, minus_one, 2, n + 1).shifted(-1) * CycloNum(-2);
    for (long j = 1; j <= 5; ++j) r += weighted_delta(6, j, n) * CycloNum(Rational(-1, 3));
    return std::pair{D(6, 6, n) + D(5, 6, n), r};
  }, {{"z'", std::string("-1")}}));
  jobs.push_back(identity_job("mod6.closed_formula", G, [](Exp n) {
    return std::pair{D(6, 6, n) + D(5, 6, n), rank_pair_rhs(6, 6, minus_one, minus_one, n)};
  }, {{"z'", std::string("-1")}}));
  jobs.push_back(identity_job("mod6.psi_vanishes", G, [](Exp n) {
    return std::pair{psi(2, 3, q_(-1), minus_one, minus_one, 2, n), QSeries::zero(n)};
  }));
  // (1 - zeta_6^j) Delta(...) = -1/2 c_j F_j
  struct Eval {
    long j;
    CycloNum c;
    bool uses_a;
  };
  const std::vector<Eval> evals = {{1, CycloNum(1) - zeta(3, -1), true},
                                   {2, CycloNum(1) + zeta(3, 1), false},
                                   {3, CycloNum(0), false},
                                   {4, CycloNum(1) + zeta(3, -1), false},
                                   {5, CycloNum(1) - zeta(3, 1), true}};
  for (const auto& e : evals) {
    jobs.push_back(identity_job("mod6.delta_root" + std::to_string(e.j), G, [e](Exp n) {
      const QSeries f = e.uses_a ? A(n) : B(n);
      return std::pair{weighted_delta(6, e.j, n), f * (CycloNum(Rational(-1, 2)) * e.c)};
    }));
  }
  jobs.push_back(identity_job("mod6.delta_sum", G, [](Exp n) {
    QSeries s = QSeries::zero(n);
    for (long j = 1; j <= 5; ++j) s += weighted_delta(6, j, n) * CycloNum(Rational(-1, 3));
    return std::pair{s, (A(n) * CycloNum(3) + B(n)) * CycloNum(Rational(1, 6))};
  }));
  jobs.push_back(identity_job("mod6.theta_identity", G, [](Exp n) {
    return std::pair{A(n) * CycloNum(3) + B(n), Y(n) * CycloNum(4)};
  }));
  struct Single {
    long a;
    Rational h, t, y, x;
  };
  const std::vector<Single> singles = {{0, {-4, 3}, {1, 3}, {4, 9}, {2, 9}},
                                       {1, {4, 3}, {-1, 3}, {2, 9}, {-2, 9}},
                                       {2, {2, 3}, {1, 3}, {-2, 9}, {-1, 9}},
                                       {3, {-8, 3}, {-1, 3}, {-4, 9}, {4, 9}}};
  for (const auto& s : singles) {
    jobs.push_back(identity_job("mod6.single_" + std::to_string(s.a), G, [s](Exp n) {
      const QSeries r = H(n) * CycloNum(s.h) + T_series(n) * CycloNum(s.t) + Y(n) * CycloNum(s.y) + X(n) * CycloNum(s.x);
      return std::pair{D(s.a, 6, n), r};
    }));
  }
  jobs.push_back(identity_job("mod6.t_relation", G, [](Exp n) {
    return std::pair{D(0, 6, n) + D(2, 6, n) * CycloNum(2), T_series(n)};
  }));
  jobs.push_back(identity_job("mod6.t_relation_mod2", G, [](Exp n) {
    return std::pair{D(0, 2, n), T_series(n)};
  }));
  jobs.push_back(identity_job("mod6.m2rank_t_relation_mod2", G, [](Exp n) {
    return std::pair{deviation(0, 2, RankKind::m2, n), T2_series(n)};
  }));
  jobs.push_back(identity_job("mod6.difference_relation", G, [=](Exp n) {
    return std::pair{(D(0, 6, n) - D(2, 6, n)) * CycloNum(2),
                     H(n) * CycloNum(-4) + Y(n) * CycloNum(Rational(4, 3)) + X(n) * two_thirds};
  }));
  auto diff = [](Exp n) { return D(0, 6, n) + D(1, 6, n) - D(2, 6, n) - D(3, 6, n); };
  jobs.push_back(identity_job("mod6.rank_difference_theta_form", G, [diff](Exp n) {
    ThetaProduct t1, t2, t3;
    t1.J(18, 3).theta(q_(9), 18, 1).J(6, -1).theta(q_(3), 18, -2);
    t2.times(CycloNum(2)).times_q(1).J(18, 3).J(6, -1).theta(q_(3), 18, -1);
    t3.times(CycloNum(4)).times_q(2).J(18, 3).J(6, -1).theta(q_(9), 18, -1);
    const QSeries r = t1.evaluate(n) + t2.evaluate(n) + t3.evaluate(n) -
                      h_series(-q_(3), 9, n - 2).shifted(2) * CycloNum(2);
    return std::pair{diff(n), r};
  }));
  jobs.push_back(identity_job("mod6.rank_difference_h_form", G, [diff](Exp n) {
    const QSeries r = jprod({{6, 1}, {9, 4}, {3, -2}, {18, -2}}, n) + jprod({{9, 1}, {18, 1}, {3, -1}}, n, 1, CycloNum(2)) +
                      h_series(q_(3), 9, n - 2).shifted(2) * CycloNum(2);
    return std::pair{diff(n), r};
  }));
  jobs.push_back(identity_job("mod6.easy_dissection", G, [](Exp n) {
    return std::pair{Y(n), three_dissection(1, n)};
  }));
}

}  // namespace

Section4Orders Section4Orders::uniform(Exp order) {
  Section4Orders o;
  o.general = order;
  o.extended = order;
  o.eta_form = std::max<Exp>(order, 48);
  o.progression_input = order;
  return o;
}

std::vector<ReportJob> section4_jobs(const Section4Orders& orders) {
  std::vector<ReportJob> jobs;
  add_h_jobs(jobs, orders.extended);
  add_theta_jobs(jobs, orders.general);
  add_mod3_jobs(jobs, orders);
  add_mod6_jobs(jobs, orders);
  return jobs;
}

// ---------------------------------------------------------------------------

namespace {

struct Triple {
  Monomial x, z1, z0;
  Exp base;
};

// Pole-free (x, z1, z0) with unities in {+-1, +-zeta_3, +-zeta_6} and exponents in [-2, 2].
std::vector<Triple> switching_grid(std::size_t count) {
  const std::vector<RootOfUnity> units = {RootOfUnity::one(), RootOfUnity::minus_one(), RootOfUnity(3, 1),
                                          RootOfUnity(6, 5), RootOfUnity(6, 1), RootOfUnity(3, 2)};
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick_unit(0, units.size() - 1);
  std::uniform_int_distribution<int> pick_exp(-2, 2);
  auto draw = [&] { return Monomial(units[pick_unit(rng)], pick_exp(rng)); };
  std::vector<Triple> out;
  while (out.size() < count) {
    Triple t{draw(), draw(), draw(), static_cast<Exp>(out.size() % 2 + 1)};
    if (t.z1 == t.z0) continue;
    try {
      check_m_poles(t.x, t.base, t.z1);
      check_m_poles(t.x, t.base, t.z0);
      delta_product(t.x, t.z1, t.z0, t.base).check_poles();
    } catch (const PoleError&) {
      continue;
    }
    out.push_back(t);
  }
  return out;
}

Params triple_params(const Triple& t) {
  return {{"x", t.x.str()}, {"z1", t.z1.str()}, {"z0", t.z0.str()}, {"base", static_cast<long>(t.base)}};
}

}  // namespace

std::vector<ReportJob> lemma_jobs(const LemmaOrders& orders, int oracle_range) {
  std::vector<ReportJob> jobs;
  const Exp R = orders.relations;
  for (const auto& t : switching_grid(10)) {
    jobs.push_back(identity_job("lemma.switching", R, [t](Exp n) {
      return std::pair{m_series(t.x, t.base, t.z1, n) - m_series(t.x, t.base, t.z0, n),
                       delta(t.x, t.z1, t.z0, t.base, n)};
    }, triple_params(t)));
    jobs.push_back(identity_job("lemma.flip", R, [t](Exp n) {
      const Monomial xi = t.x.inverse();
      const QSeries r = m_series(xi, t.base, t.z1.inverse(), n - xi.exp).shifted(xi.exp) * xi.unity.value();
      return std::pair{m_series(t.x, t.base, t.z1, n), r};
    }, {{"x", t.x.str()}, {"z", t.z1.str()}, {"base", static_cast<long>(t.base)}}));
  }
  for (Exp base : {1, 2}) {
    for (long n = 1; n <= 5; ++n) {
      for (long k = 0; k < n; ++k) {
        jobs.push_back([=] { return orthogonality_check(k, n, q_(1), minus_one, -q_(1), base, R); });
        if (base == 1 && n % 2 == 0)
          jobs.push_back([=] { return orthogonality_check(k, n, root(3, 1) * q_(1), minus_one, -q_(1), base, R); });
      }
    }
  }
  jobs.push_back(identity_job("lemma.m_half", orders.long_range, [](Exp n) {
    return std::pair{m_series(q_(1), 2, minus_one, n), constant(Rational(1, 2), n)};
  }));
  const std::vector<std::pair<Monomial, Exp>> jtp = {{minus_one, 1},          {q_(1), 2},
                                                     {root(3, 1) * q_(1), 2}, {-q_(5), 2},
                                                     {root(5, 2) * q_(-7), 3}, {root(12, 5) * q_(4), 18},
                                                     {-q_(3), 18},           {root(4, 1), 1}};
  for (const auto& [z, b] : jtp) {
    jobs.push_back(identity_job("lemma.triple_product", orders.long_range, [z, b](Exp n) {
      return std::pair{theta_j(z, b, n), theta_j_sum(z, b, n)};
    }, {{"z", z.str()}, {"base", static_cast<long>(b)}}));
  }

  // Oracle checks on the enumerated range.
  const Exp T = oracle_range + 1;
  for (RankKind kind : {RankKind::rank, RankKind::m2}) {
    const std::string prefix = kind == RankKind::rank ? "oracle.rank" : "oracle.m2rank";
    jobs.push_back([=] {
      return timed_report(prefix + ".table_invariants", T, {{"n_max", static_cast<long>(oracle_range)}}, [&] {
        VerificationReport r;
        const RankTable counted = RankTable::by_counting(kind, oracle_range);
        r.detail = counted.validate();
        const int small = std::min(oracle_range, 18);
        if (r.detail.empty() && !(RankTable::by_enumeration(kind, small) == RankTable::by_counting(kind, small)))
          r.detail = "enumeration and counting disagree";
        r.status = r.detail.empty() ? Status::pass : Status::fail;
        return r;
      });
    });
    jobs.push_back(identity_job(prefix + ".pbar", T, [=](Exp n) {
      const RankTable& t = RankTable::shared(kind, oracle_range);
      std::vector<CycloNum> c;
      for (int i = 0; i < n; ++i) c.emplace_back(Rational(static_cast<long>(t.total(i))));
      return std::pair{QSeries(0, c, n), pbar_series(n)};
    }));
    for (long M = 3; M <= 6; ++M) {
      for (long j = 1; j < M; ++j) {
        jobs.push_back(identity_job(prefix + ".closed_form", T, [=](Exp n) {
          const RootOfUnity z(M, j);
          const Monomial zm = Monomial::constant(z);
          const QSeries closed = kind == RankKind::rank ? sbar_closed(zm, n) : sbar2_closed(zm, n);
          return std::pair{closed, sbar_from_table(RankTable::shared(kind, oracle_range), z)};
        }, {{"M", M}, {"j", j}}));
      }
      for (long a = 1; a <= M; ++a) {
        jobs.push_back(identity_job(prefix + ".key_formula", T, [=](Exp n) {
          const RankTable& t = RankTable::shared(kind, oracle_range);
          QSeries lhs = QSeries::zero(n);
          for (long j = 1; j < M; ++j) lhs += sbar_from_table(t, RootOfUnity(M, j)) * zeta(M, -a * j);
          lhs *= CycloNum(Rational(1, M));
          return std::pair{lhs, deviation_from_table(t, a, M) + deviation_from_table(t, a - 1, M)};
        }, {{"a", a}, {"M", M}}));
        jobs.push_back(identity_job(prefix + ".key_formula_closed_form", T, [=](Exp n) {
          const RankTable& t = RankTable::shared(kind, oracle_range);
          QSeries lhs = QSeries::zero(n);
          for (long j = 1; j < M; ++j) {
            const Monomial z = Monomial::constant(RootOfUnity(M, j));
            lhs += (kind == RankKind::rank ? sbar_closed(z, n) : sbar2_closed(z, n)) * zeta(M, -a * j);
          }
          lhs *= CycloNum(Rational(1, M));
          return std::pair{lhs, deviation_from_table(t, a, M) + deviation_from_table(t, a - 1, M)};
        }, {{"a", a}, {"M", M}}));
      }
    }
  }
  return jobs;
}

}  // namespace overrank

namespace overrank {

std::vector<ReportJob> theorem_jobs(RankKind kind, std::optional<long> M, std::optional<long> a, Exp order) {
  const bool rank = kind == RankKind::rank;
  const std::string pair_id = rank ? "rank.pair" : "m2rank.pair";
  std::vector<ReportJob> jobs;
  std::vector<long> moduli;
  if (M) moduli = {*M};
  else if (rank) moduli = {3, 4, 5, 6, 7};
  else moduli = {2, 3, 4, 5, 6};
  for (long mod : moduli) {
    const long lo = rank ? 2 : 1, hi = rank ? mod : mod - 1;
    if (a && (*a < lo || *a > hi))
      throw RangeError("a = " + std::to_string(*a) + " is outside " + std::to_string(lo) + ".." + std::to_string(hi));
    for (long r = lo; r <= hi; ++r) {
      if (a && r != *a) continue;
      jobs.push_back([=] { return verify_pair(r, mod, kind, order); });
      jobs.push_back([=] {
        VerificationReport all;
        all.identity_id = pair_id + ".derivation";
        all.parameters = {{"a", r}, {"M", mod}, {"order", static_cast<long>(order)}};
        all.order = order;
        all.status = Status::pass;
        for (const auto& c : derivation_checks(r, mod, kind, order)) {
          all.elapsed_ms += c.elapsed_ms;
          if (!all.detail.empty()) all.detail += "; ";
          all.detail += c.identity_id + " " + to_string(c.status);
          if (c.status == Status::fail && all.status != Status::fail) {
            all.status = Status::fail;
            all.first_discrepancy = c.first_discrepancy;
          } else if (c.status == Status::pole_skipped && all.status == Status::pass) {
            all.status = Status::pole_skipped;
          }
        }
        return all;
      });
    }
    if (rank && mod % 2 == 1 && !a) {
      for (long r = 0; r < mod; ++r) {
        jobs.push_back([=] {
          return timed_report(pair_id + ".single_deviation", order, {{"a", r}, {"M", mod}, {"order", static_cast<long>(order)}},
                              [&] {
                                return compare_series(pair_id + ".single_deviation", single_deviation(r, mod, kind, order),
                                                      deviation(r, mod, kind, order), order);
                              });
        });
      }
    }
  }
  if (!M && !a) {
    const std::vector<std::pair<long, long>> cases =
        rank ? std::vector<std::pair<long, long>>{{2, 3}, {3, 3}, {2, 4}, {4, 6}, {3, 5}}
             : std::vector<std::pair<long, long>>{{1, 2}, {2, 3}, {1, 4}, {3, 5}, {2, 6}};
    const Exp capped = std::min<Exp>(order, 40);
    for (auto [r, mod] : cases) jobs.push_back([=] { return generic_independence(r, mod, kind, capped); });
  }
  return jobs;
}

}  // namespace overrank
