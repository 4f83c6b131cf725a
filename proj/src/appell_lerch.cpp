#include "overrank/appell_lerch.hpp"

#include <map>
#include <numeric>

#include "cyclic_buffer.hpp"
#include "overrank/errors.hpp"

namespace overrank {

namespace {

Exp binom2(Exp n) { return checked_mul(n, n - 1) / 2; }

// Collects sum w q^a / (1 - u q^n) for roots of unity w, u, expanding each
// geometric series in the direction that converges q-adically.
class GeometricAccumulator {
 public:
  GeometricAccumulator(long level, Exp lo, Exp prec)
      : buf_(level, static_cast<std::size_t>(std::max<Exp>(prec - lo, 0))), lo_(lo), prec_(prec) {}

  void add(const RootOfUnity& w, Exp a, const RootOfUnity& u, Exp n) {
    const long N = buf_.level();
    const long iw = buf_.root_index(w);
    const long iu = buf_.root_index(u);
    if (n > 0) {
      long idx = iw;
      for (Exp e = a; e < prec_; e += n) {
        buf_.add_root(static_cast<std::size_t>(e - lo_), idx, 1);
        idx = (idx + iu) % N;
      }
    } else if (n == 0) {
      if (a < prec_) special_[a] += w.value() / (CycloNum(1) - u.value());
    } else {
      // 1/(1 - u q^n) = -sum_{k >= 1} u^{-k} q^{-n k}
      long idx = ((iw - iu) % N + N) % N;
      for (Exp e = a - n; e < prec_; e -= n) {
        buf_.add_root(static_cast<std::size_t>(e - lo_), idx, -1);
        idx = ((idx - iu) % N + N) % N;
      }
    }
  }

  QSeries finish() const {
    std::vector<CycloNum> coeffs(buf_.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = buf_.get(i);
    for (const auto& [e, c] : special_) coeffs[static_cast<std::size_t>(e - lo_)] += c;
    return QSeries(lo_, std::move(coeffs), prec_);
  }

 private:
  detail::CyclicBuffer buf_;
  Exp lo_;
  Exp prec_;
  std::map<Exp, CycloNum> special_;
};

long accumulator_level(std::initializer_list<RootOfUnity> roots) {
  long level = 2;
  for (const auto& u : roots) level = std::lcm(level, u.order());
  return level;
}

// Visits the integers r around the vertex of the convex quadratic g, stopping on each side
// once g(r) >= bound for a few consecutive r.
template <class G, class F>
void scan_convex(Exp centre, G&& g, Exp bound, F&& visit) {
  constexpr int margin = 2;
  for (int side = 0; side < 2; ++side) {
    int misses = 0;
    for (Exp r = side == 0 ? centre : centre - 1;; r += side == 0 ? 1 : -1) {
      if (g(r) < bound) {
        misses = 0;
        visit(r);
      } else if (++misses > margin && (side == 0 ? r > centre + 1 : r < centre - 1)) {
        break;
      }
    }
  }
}

}  // namespace

void check_m_poles(const Monomial& x, Exp base, const Monomial& z) {
  if (base < 1) throw RangeError("m needs a positive base");
  if (j_is_zero(z, base)) throw PoleError("j(" + z.str() + ";q^" + std::to_string(base) + ") vanishes");
  if (j_is_zero(x * z, base))
    throw PoleError("1 - q^(b(r-1)) x z vanishes for x = " + x.str() + ", z = " + z.str());
}

QSeries m_series(const Monomial& x, Exp base, const Monomial& z, Exp prec) {
  check_m_poles(x, base, z);
  ThetaProduct inv_j;
  inv_j.theta(z, base, -1);
  const Exp v = inv_j.valuation();
  const Exp ps = checked_sub(prec, v);

  // Term r: (-1)^r z^r q^{base C(r,2)} / (1 - xz q^{base(r-1)})
  auto lead = [&](Exp r) { return checked_add(checked_mul(base, binom2(r)), checked_mul(r, z.exp)); };
  const Exp centre = floor_div(base - 2 * z.exp, 2 * base);
  Exp lo = ps;
  scan_convex(centre, lead, ps, [&](Exp r) { lo = std::min(lo, lead(r)); });

  const RootOfUnity u = x.unity * z.unity;
  GeometricAccumulator acc(accumulator_level({z.unity, u}), lo, ps);
  scan_convex(centre, lead, ps, [&](Exp r) {
    RootOfUnity w = z.unity.pow(r);
    if (r % 2 != 0) w = -w;
    const Exp n = checked_add(checked_mul(base, r - 1), checked_add(x.exp, z.exp));
    acc.add(w, lead(r), u, n);
  });
  return inv_j.times_series(acc.finish());
}

ThetaProduct delta_product(const Monomial& x, const Monomial& z1, const Monomial& z0, Exp base) {
  ThetaProduct p;
  p.times(z0).J(base, 3);
  p.theta(z1 / z0, base, 1).theta(x * z0 * z1, base, 1);
  p.theta(z0, base, -1).theta(z1, base, -1).theta(x * z0, base, -1).theta(x * z1, base, -1);
  return p;
}

QSeries delta(const Monomial& x, const Monomial& z1, const Monomial& z0, Exp base, Exp prec) {
  return delta_product(x, z1, z0, base).evaluate(prec);
}

namespace {

std::vector<ThetaProduct> psi_terms(long k, long n, const Monomial& x, const Monomial& z, const Monomial& zp,
                                    Exp base) {
  if (n < 1) throw RangeError("Psi needs n >= 1");
  if (base < 1) throw RangeError("Psi needs a positive base");
  const Exp outer = checked_mul(base, checked_mul(n, n));
  const Monomial xz_n = (x * z).pow(n);
  const Monomial c = -(Monomial::q(checked_mul(base, binom2(n) - checked_mul(n, k))) * (-x).pow(n) * zp);
  std::vector<ThetaProduct> out;
  for (long t = 0; t < n; ++t) {
    ThetaProduct p;
    p.times(CycloNum(-1)).times(x.pow(k) * z.pow(k + 1));
    p.times_q(checked_mul(base, binom2(t + 1) + checked_mul(k, t))).times((-z).pow(t));
    p.J(outer, 3).theta(z, base, -1).theta(zp, outer, -1);
    const Exp nt = checked_mul(base, checked_mul(n, t));
    const Monomial a_t =
        -(Monomial::q(checked_mul(base, binom2(n + 1) + checked_mul(n, k) + checked_mul(n, t))) * (-z).pow(n) / zp);
    const Monomial b_t = Monomial::q(nt) * xz_n * zp;
    const Monomial d_t = Monomial::q(nt) * xz_n;
    p.theta(a_t, outer, 1).theta(b_t, outer, 1).theta(c, outer, -1).theta(d_t, outer, -1);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

void check_psi_poles(long k, long n, const Monomial& x, const Monomial& z, const Monomial& zp, Exp base) {
  for (const auto& p : psi_terms(k, n, x, z, zp, base)) p.check_poles();
}

QSeries psi(long k, long n, const Monomial& x, const Monomial& z, const Monomial& zp, Exp base, Exp prec) {
  const auto terms = psi_terms(k, n, x, z, zp, base);
  for (const auto& p : terms) p.check_poles();
  QSeries sum = QSeries::zero(prec);
  for (const auto& p : terms) sum += p.evaluate(prec);
  return sum;
}

VerificationReport orthogonality_check(long k, long n, const Monomial& x, const Monomial& z, const Monomial& zp,
                                       Exp base, Exp order) {
  std::vector<std::pair<std::string, ParamValue>> params = {
      {"k", k}, {"n", n}, {"x", x.str()}, {"z", z.str()}, {"z'", zp.str()}, {"base", static_cast<long>(base)}};
  return timed_report("orthogonality", order, std::move(params), [&] {
    if (n < 1 || k < 0 || k >= n) throw RangeError("orthogonality needs 0 <= k < n");
    QSeries lhs = QSeries::zero(order);
    for (long t = 0; t < n; ++t) {
      const Monomial xt = Monomial(RootOfUnity(n, t), 0) * x;
      lhs += m_series(xt, base, z, order) * zeta(n, -k * t);
    }
    const Monomial pre = Monomial::q(-checked_mul(base, binom2(k + 1))) * (-x).pow(k);
    const Monomial inner_x = -(Monomial::q(checked_mul(base, binom2(n) - checked_mul(n, k))) * (-x).pow(n));
    const Exp outer = checked_mul(base, checked_mul(n, n));
    const QSeries inner = m_series(inner_x, outer, zp, checked_sub(order, pre.exp));
    QSeries rhs = inner.shifted(pre.exp) * (pre.unity.value() * CycloNum(n));
    rhs += psi(k, n, x, z, zp, base, order) * CycloNum(n);
    return compare_series("orthogonality", lhs, rhs, order);
  });
}

QSeries h_series(const Monomial& x, Exp base, Exp prec) {
  if (base < 1) throw RangeError("h needs a positive base");
  if (j_is_zero(x, base)) throw PoleError("1 - x q^(bn) vanishes for x = " + x.str());
  ThetaProduct pre;
  pre.pochhammer(-Monomial::q(base), base, 1).pochhammer(Monomial::q(base), base, -1);
  GeometricAccumulator acc(accumulator_level({x.unity}), 0, prec);
  auto lead = [&](Exp n) { return checked_mul(base, checked_mul(n, n + 1)); };
  scan_convex(0, lead, prec, [&](Exp n) {
    const RootOfUnity w = n % 2 != 0 ? RootOfUnity::minus_one() : RootOfUnity::one();
    acc.add(w, lead(n), x.unity, checked_add(x.exp, checked_mul(base, n)));
  });
  return pre.times_series(acc.finish());
}

namespace {

// 2 (-q)_inf/(q)_inf sum_n (-1)^n q^{n^2 + b n} / (1 + q^{c n})^2
QSeries t_type_series(Exp b, Exp c, Exp prec) {
  std::vector<Rational> s(static_cast<std::size_t>(std::max<Exp>(prec, 0)));
  auto lead = [&](Exp n) { return checked_add(checked_mul(n, n), checked_mul(b, n)); };
  const Exp centre = floor_div(-b, 2);
  scan_convex(centre, lead, prec, [&](Exp n) {
    const long sign = n % 2 != 0 ? -1 : 1;
    const Exp a = lead(n);
    const Exp f = checked_mul(c, n);
    if (f == 0) {
      s[static_cast<std::size_t>(a)] += Rational(sign, 4);
      return;
    }
    // 1/(1 + q^f)^2 = sum_k (-1)^k (k+1) q^{f k}, or q^{-2f} times the same in q^{-f} when f < 0
    const Exp step = f > 0 ? f : -f;
    const Exp start = f > 0 ? a : checked_add(a, checked_mul(-2, f));
    long k = 0;
    for (Exp e = start; e < prec; e += step, ++k)
      s[static_cast<std::size_t>(e)] += Rational(sign * (k % 2 == 0 ? 1 : -1) * (k + 1));
  });
  std::vector<CycloNum> coeffs(s.begin(), s.end());
  ThetaProduct pre;
  pre.times(CycloNum(2)).pochhammer(-Monomial::q(1), 1, 1).pochhammer(Monomial::q(1), 1, -1);
  return pre.times_series(QSeries(0, std::move(coeffs), prec));
}

}  // namespace

QSeries T_series(Exp prec) { return t_type_series(1, 1, prec); }

QSeries T2_series(Exp prec) { return t_type_series(2, 2, prec); }

}  // namespace overrank
