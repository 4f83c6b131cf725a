#include "overrank/theorems.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "overrank/errors.hpp"
#include "overrank/theta.hpp"

namespace overrank {

std::string to_string(Formula f) {
  switch (f) {
    case Formula::rank_even_even:
      return "rank_even_even";
    case Formula::rank_even_odd:
      return "rank_even_odd";
    case Formula::rank_odd_odd:
      return "rank_odd_odd";
    case Formula::m2:
      return "m2";
  }
  return "?";
}

namespace {

CycloNum sign_of(long e) { return CycloNum(e % 2 == 0 ? 1 : -1); }
Monomial q_(Exp e) { return Monomial::q(e); }
Monomial minus_q(Exp e) { return -Monomial::q(e); }
Monomial root(long L, long k) { return Monomial::constant(RootOfUnity(L, k)); }
const Monomial minus_one = Monomial::minus_one();

// -(2/M) or (2/M) times sum_{j=1}^{M-1} zeta^{-aj} (1 - zeta^j) Delta(x_j, z1_j, -1; q^2)
void add_delta_sum(RhsPlan& p, long a, long M, Rational scale, bool m2) {
  for (long j = 1; j < M; ++j) {
    DeltaTerm d;
    d.coeff = zeta(M, -a * j) * (CycloNum(1) - zeta(M, j)) * CycloNum(scale);
    if (m2) {
      d.x = root(M, j) * q_(1);
      d.z1 = q_(1);
    } else {
      d.x = root(M, -2 * j) * q_(1);
      d.z1 = root(M, j);
    }
    d.z0 = minus_one;
    d.base = 2;
    p.delta.push_back(d);
  }
}

PsiTerm psi_term(CycloNum coeff, Exp shift, long k, long n, Monomial x, int slot) {
  PsiTerm t;
  t.coeff = std::move(coeff);
  t.shift = shift;
  t.k = k;
  t.n = n;
  t.x = x;
  t.z = minus_one;
  t.base = 2;
  t.slot = slot;
  return t;
}

AppellTerm appell_term(CycloNum coeff, Exp shift, Monomial x, Exp base, int slot) {
  AppellTerm t;
  t.coeff = std::move(coeff);
  t.shift = shift;
  t.x = x;
  t.base = base;
  t.slot = slot;
  return t;
}

}  // namespace

bool RhsPlan::uses_slot(int slot) const {
  for (const auto& t : appell)
    if (t.slot == slot) return true;
  for (const auto& t : psi)
    if (t.slot == slot) return true;
  return false;
}

RhsPlan rank_pair_plan(long a, long M) {
  if (M < 2 || a < 2 || a > M) throw RangeError("rank pair formula needs 2 <= a <= M");
  if (a % 2 == 1 && M % 2 == 0) a = M - a + 1;
  RhsPlan p;
  p.a = a;
  p.M = M;
  if (a % 2 == 0 && M % 2 == 0) {
    p.formula = Formula::rank_even_even;
    const long t = a / 2;
    p.constant = Rational(a == M ? 1 : 0);
    const Monomial x = Monomial(M / 2 % 2 == 1 ? RootOfUnity::one() : RootOfUnity::minus_one(), M * M / 4 - a * M / 2);
    p.appell.push_back(appell_term(sign_of(t) * CycloNum(2), -t * t, x, M * M / 2, 0));
    p.psi.push_back(psi_term(CycloNum(-2), -1, t - 1, M / 2, q_(-1), 0));
  } else if (a % 2 == 0) {
    p.formula = Formula::rank_even_odd;
    const long k1 = (2 * M - a) / 2;
    const long k2 = (M + 1 - a) / 2;
    p.constant = Rational(0);
    p.appell.push_back(appell_term(sign_of(k1) * CycloNum(-2), -k1 * k1, q_(M * (a - M)), 2 * M * M, 0));
    p.appell.push_back(appell_term(sign_of(k2) * CycloNum(2), -k2 * k2, q_(M * (a - 1)), 2 * M * M, 1));
    p.psi.push_back(psi_term(CycloNum(-2), 0, k1, M, q_(1), 0));
    p.psi.push_back(psi_term(CycloNum(2), 0, k2, M, q_(1), 1));
  } else {
    p.formula = Formula::rank_odd_odd;
    const long k1 = (M - a) / 2;
    const long k2 = (2 * M - a + 1) / 2;
    p.constant = Rational(a == M ? 1 : 0);
    p.appell.push_back(appell_term(sign_of(k1) * CycloNum(-2), -k1 * k1, q_(M * a), 2 * M * M, 0));
    p.appell.push_back(appell_term(sign_of(k2) * CycloNum(2), -k2 * k2, q_(M * (a - M - 1)), 2 * M * M, 1));
    p.psi.push_back(psi_term(CycloNum(-2), 0, k1, M, q_(1), 0));
    p.psi.push_back(psi_term(CycloNum(2), 0, k2, M, q_(1), 1));
  }
  add_delta_sum(p, a, M, Rational(-2, M), false);
  return p;
}

RhsPlan m2_pair_plan(long a, long M) {
  if (M < 2 || a < 1 || a > M - 1) throw RangeError("M2 pair formula needs 1 <= a <= M - 1");
  RhsPlan p;
  p.formula = Formula::m2;
  p.a = a;
  p.M = M;
  p.constant = Rational(a == 1 ? 1 : 0);
  const RootOfUnity s = M % 2 == 1 ? RootOfUnity::one() : RootOfUnity::minus_one();
  p.appell.push_back(appell_term(sign_of(a) * CycloNum(2), -a * a, Monomial(s, M * M - 2 * M * a), 2 * M * M, 0));
  p.appell.push_back(
      appell_term(sign_of(a) * CycloNum(2), -a * a + 2 * a - 1, Monomial(s, M * M - 2 * M * (a - 1)), 2 * M * M, 1));
  p.psi.push_back(psi_term(CycloNum(2), 0, a, M, q_(1), 0));
  p.psi.push_back(psi_term(CycloNum(-2), 0, a - 1, M, q_(1), 1));
  add_delta_sum(p, a, M, Rational(2, M), true);
  return p;
}

RhsPlan pair_plan(RankKind kind, long a, long M) {
  return kind == RankKind::rank ? rank_pair_plan(a, M) : m2_pair_plan(a, M);
}

std::string admissibility(const RhsPlan& plan, int slot, const Monomial& z) {
  try {
    for (const auto& t : plan.appell)
      if (t.slot == slot) check_m_poles(t.x, t.base, z);
    for (const auto& t : plan.psi)
      if (t.slot == slot) check_psi_poles(t.k, t.n, t.x, t.z, z, t.base);
  } catch (const PoleError& e) {
    return e.what();
  }
  return {};
}

GenericChoice choose_generic(const RhsPlan& plan, int skip, long bound) {
  if (bound < 0) bound = 4 * plan.M * plan.M;
  GenericChoice out;
  for (int slot = 0; slot < 2; ++slot) {
    Monomial chosen = minus_one;
    if (plan.uses_slot(slot)) {
      int seen = 0;
      bool found = false;
      for (long t = 0; t <= bound && !found; ++t) {
        const Monomial cand = minus_q(t);
        const std::string why = admissibility(plan, slot, cand);
        if (!why.empty()) {
          out.rejected.push_back({cand, why});
        } else if (seen++ == skip) {
          chosen = cand;
          found = true;
        }
      }
      if (!found)
        throw GenericSearchExhausted("no admissible generic parameter among -q^t, t <= " + std::to_string(bound));
    }
    (slot == 0 ? out.zp : out.zpp) = chosen;
  }
  return out;
}

GenericChoice choose_generic(RankKind kind, long a, long M, int skip) {
  return choose_generic(pair_plan(kind, a, M), skip);
}

QSeries evaluate_plan(const RhsPlan& plan, const Monomial& zp, const Monomial& zpp, Exp prec) {
  auto slot_value = [&](int s) { return s == 0 ? zp : zpp; };
  QSeries sum = QSeries::constant(CycloNum(plan.constant), prec);
  for (const auto& t : plan.appell) {
    const QSeries m = m_series(t.x, t.base, slot_value(t.slot), checked_sub(prec, t.shift));
    sum += m.shifted(t.shift) * t.coeff;
  }
  for (const auto& t : plan.psi) {
    const QSeries s = psi(t.k, t.n, t.x, t.z, slot_value(t.slot), t.base, checked_sub(prec, t.shift));
    sum += s.shifted(t.shift) * t.coeff;
  }
  for (const auto& t : plan.delta) sum += delta(t.x, t.z1, t.z0, t.base, prec) * t.coeff;
  if (!sum.has_rational_coeffs()) throw Error("closed formula produced irrational coefficients");
  return sum;
}

QSeries rank_pair_rhs(long a, long M, const Monomial& zp, const Monomial& zpp, Exp prec) {
  return evaluate_plan(rank_pair_plan(a, M), zp, zpp, prec);
}

QSeries m2_pair_rhs(long a, long M, const Monomial& zp, const Monomial& zpp, Exp prec) {
  return evaluate_plan(m2_pair_plan(a, M), zp, zpp, prec);
}

namespace {

std::string pair_id(RankKind kind) { return kind == RankKind::rank ? "rank.pair" : "m2rank.pair"; }

std::vector<std::pair<std::string, ParamValue>> pair_params(long a, long M, Exp order) {
  return {{"a", a}, {"M", M}, {"order", static_cast<long>(order)}};
}

}  // namespace

VerificationReport verify_pair(long a, long M, RankKind kind, Exp prec) {
  auto params = pair_params(a, M, prec);
  GenericChoice g;
  try {
    g = choose_generic(kind, a, M);
    params.insert(params.begin() + 2, {"z'", g.zp.str()});
    params.insert(params.begin() + 3, {"z''", g.zpp.str()});
  } catch (const Error&) {
  }
  return timed_report(pair_id(kind), prec, params, [&] {
    const QSeries lhs = deviation(a, M, kind, prec) + deviation(a - 1, M, kind, prec);
    const QSeries rhs = evaluate_plan(pair_plan(kind, a, M), g.zp, g.zpp, prec);
    return compare_series(pair_id(kind), lhs, rhs, prec);
  });
}

VerificationReport generic_independence(long a, long M, RankKind kind, Exp prec) {
  const std::string id = pair_id(kind) + ".generic_independence";
  return timed_report(id, prec, pair_params(a, M, prec), [&] {
    const RhsPlan plan = pair_plan(kind, a, M);
    const GenericChoice g0 = choose_generic(plan, 0);
    const GenericChoice g1 = choose_generic(plan, 1);
    auto r = compare_series(id, evaluate_plan(plan, g0.zp, g0.zpp, prec), evaluate_plan(plan, g1.zp, g1.zpp, prec),
                            prec);
    r.detail = "z' in {" + g0.zp.str() + ", " + g1.zp.str() + "}, z'' in {" + g0.zpp.str() + ", " + g1.zpp.str() + "}";
    return r;
  });
}

QSeries single_deviation(long a, long M, RankKind kind, Exp prec, int oracle_range) {
  if (M < 3 || M % 2 == 0) throw RangeError("single deviations are solved for odd M >= 3");
  a = ((a % M) + M) % M;
  if (a > M / 2) a = M - a;
  auto pair = [&](long b) {
    const RhsPlan plan = pair_plan(kind, b, M);
    const GenericChoice g = choose_generic(plan);
    return evaluate_plan(plan, g.zp, g.zpp, prec);
  };
  const long h = (M - 1) / 2;
  // pair(h + 1) = D(h + 1) + D(h) = 2 D(h)
  QSeries d = pair(h + 1) * CycloNum(Rational(1, 2));
  for (long b = h; b > a; --b) {
    // D(b - 1) = pair(b) - D(b); the pair at b = 1 is read at b = M for the ordinary rank.
    const long use = (b == 1 && kind == RankKind::rank) ? M : b;
    d = pair(use) - d;
  }
  const QSeries check = deviation_from_table(RankTable::shared(kind, oracle_range), a, M);
  if (auto e = first_difference(d, check, std::min<Exp>(prec, oracle_range + 1)))
    throw OracleMismatch("single deviation disagrees with enumeration at q^" + std::to_string(*e));
  return d;
}

// ---------------------------------------------------------------------------
// Orthogonality instantiations used to derive the pair formulas.

namespace {

// sum_{j=0}^{M-1} zeta_M^{w j} m(zeta_M^{s j} q, q^2, -1)
QSeries root_sum(long M, long w, long s, Exp prec) {
  QSeries sum = QSeries::zero(prec);
  for (long j = 0; j < M; ++j) sum += m_series(root(M, s * j) * q_(1), 2, minus_one, prec) * zeta(M, w * j);
  return sum;
}

// n (-1)^k q^{shift} m(x, q^base, z) + n q^{psi_shift} Psi^n_k(x0, -1, z; q^2)
QSeries orthogonality_side(long n, long k, const CycloNum& sign, Exp shift, const Monomial& x, Exp base,
                           const Monomial& z, Exp psi_shift, const Monomial& x0, Exp prec) {
  QSeries r = m_series(x, base, z, checked_sub(prec, shift)).shifted(shift) * (sign * CycloNum(n));
  r += psi(k, n, x0, minus_one, z, 2, checked_sub(prec, psi_shift)).shifted(psi_shift) * CycloNum(n);
  return r;
}

struct DerivationCase {
  std::string id;
  std::function<QSeries(Exp)> lhs;
  std::function<QSeries(Exp)> rhs;
  std::vector<std::pair<std::string, ParamValue>> params;
};

std::vector<DerivationCase> derivation_cases(long a, long M, RankKind kind) {
  std::vector<DerivationCase> out;
  const RhsPlan plan = pair_plan(kind, a, M);
  const GenericChoice g = choose_generic(plan);
  a = plan.a;
  auto base_params = [&](long k, long n, const Monomial& x, const Monomial& z) {
    return std::vector<std::pair<std::string, ParamValue>>{
        {"a", a}, {"M", M}, {"k", k}, {"n", n}, {"x", x.str()}, {"z'", z.str()}};
  };
  const Monomial zp = g.zp, zpp = g.zpp;
  if (kind == RankKind::m2) {
    const Monomial inner1(M % 2 ? RootOfUnity::one() : RootOfUnity::minus_one(), M * M - 2 * M * a);
    const Monomial inner2(M % 2 ? RootOfUnity::one() : RootOfUnity::minus_one(), M * M - 2 * M * (a - 1));
    out.push_back({"m2rank.derivation.weighted_sum", [=](Exp p) { return root_sum(M, -a, 1, p); },
                   [=](Exp p) {
                     return orthogonality_side(M, a, sign_of(a), -a * a, inner1, 2 * M * M, zp, 0, q_(1), p);
                   },
                   base_params(a, M, q_(1), zp)});
    out.push_back({"m2rank.derivation.shifted_weighted_sum", [=](Exp p) { return root_sum(M, -(a - 1), 1, p); },
                   [=](Exp p) {
                     return orthogonality_side(M, a - 1, sign_of(a - 1), -a * a + 2 * a - 1, inner2, 2 * M * M, zpp,
                                               0, q_(1), p);
                   },
                   base_params(a - 1, M, q_(1), zpp)});
    return out;
  }
  switch (plan.formula) {
    case Formula::rank_even_even: {
      const long t = a / 2;
      const Monomial inner(M / 2 % 2 == 1 ? RootOfUnity::one() : RootOfUnity::minus_one(), M * M / 4 - M * t);
      out.push_back({"rank.derivation.weighted_sum", [=](Exp p) { return root_sum(M, -a, -2, p); },
                     [=](Exp p) {
                       return orthogonality_side(M / 2, t - 1, sign_of(t - 1), -t * t, inner, M * M / 2, zp, -1,
                                                 q_(-1), p) *
                              CycloNum(2);
                     },
                     base_params(t - 1, M / 2, q_(-1), zp)});
      out.push_back({"rank.derivation.shifted_weighted_sum", [=](Exp p) { return root_sum(M, -(a - 1), -2, p); },
                     [=](Exp p) { return QSeries::zero(p); }, base_params(0, M, q_(1), zp)});
      break;
    }
    case Formula::rank_even_odd: {
      const long k1 = (2 * M - a) / 2, k2 = (M + 1 - a) / 2;
      out.push_back({"rank.derivation.weighted_sum", [=](Exp p) { return root_sum(M, -a, -2, p); },
                     [=](Exp p) {
                       return orthogonality_side(M, k1, sign_of(k1), -k1 * k1, q_(M * (a - M)), 2 * M * M, zp, 0,
                                                 q_(1), p);
                     },
                     base_params(k1, M, q_(1), zp)});
      out.push_back({"rank.derivation.shifted_weighted_sum", [=](Exp p) { return root_sum(M, -(a - 1), -2, p); },
                     [=](Exp p) {
                       return orthogonality_side(M, k2, sign_of(k2), -k2 * k2, q_(M * (a - 1)), 2 * M * M, zpp, 0,
                                                 q_(1), p);
                     },
                     base_params(k2, M, q_(1), zpp)});
      break;
    }
    case Formula::rank_odd_odd: {
      const long k1 = (M - a) / 2, k2 = (2 * M - a + 1) / 2;
      out.push_back({"rank.derivation.weighted_sum", [=](Exp p) { return root_sum(M, -a, -2, p); },
                     [=](Exp p) {
                       return orthogonality_side(M, k1, sign_of(k1), -k1 * k1, q_(M * a), 2 * M * M, zp, 0, q_(1),
                                                 p);
                     },
                     base_params(k1, M, q_(1), zp)});
      out.push_back({"rank.derivation.shifted_weighted_sum", [=](Exp p) { return root_sum(M, -(a - 1), -2, p); },
                     [=](Exp p) {
                       return orthogonality_side(M, k2, sign_of(k2), -k2 * k2, q_(M * (a - M - 1)), 2 * M * M, zpp,
                                                 0, q_(1), p);
                     },
                     base_params(k2, M, q_(1), zpp)});
      break;
    }
    case Formula::m2:
      break;
  }
  return out;
}

}  // namespace

std::vector<VerificationReport> derivation_checks(long a, long M, RankKind kind, Exp prec) {
  std::vector<VerificationReport> out;
  std::vector<DerivationCase> cases;
  try {
    cases = derivation_cases(a, M, kind);
  } catch (const Error& e) {
    VerificationReport r;
    r.identity_id = pair_id(kind) + ".derivation";
    r.parameters = pair_params(a, M, prec);
    r.status = Status::fail;
    r.detail = e.what();
    r.order = prec;
    return {r};
  }
  for (const auto& c : cases) {
    auto params = c.params;
    params.emplace_back("order", static_cast<long>(prec));
    out.push_back(timed_report(c.id, prec, params, [&] { return compare_series(c.id, c.lhs(prec), c.rhs(prec), prec); }));
  }
  // The same instantiations as standalone orthogonality relations.
  const RhsPlan plan = pair_plan(kind, a, M);
  const GenericChoice g = choose_generic(plan);
  for (const auto& t : plan.psi) {
    auto r = orthogonality_check(t.k, t.n, t.x, t.z, t.slot == 0 ? g.zp : g.zpp, t.base, prec);
    r.identity_id = pair_id(kind) + ".derivation.orthogonality";
    r.parameters.insert(r.parameters.begin(), {{"a", plan.a}, {"M", M}});
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<VerificationReport> run_jobs(const std::vector<ReportJob>& jobs, int threads) {
  std::vector<VerificationReport> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        out[i] = jobs[i]();
      } catch (const std::exception& e) {
        out[i].identity_id = "internal_error";
        out[i].status = Status::fail;
        out[i].detail = e.what();
      }
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const VerificationReport& x, const VerificationReport& y) { return x.identity_id < y.identity_id; });
  return out;
}

}  // namespace overrank
