#include "overrank/theta.hpp"

#include <map>
#include <numeric>

#include "cyclic_buffer.hpp"
#include "overrank/errors.hpp"

namespace overrank {

namespace {

CycloNum cyclo_pow(const CycloNum& c, int p) {
  CycloNum base = p < 0 ? c.inverse() : c;
  CycloNum r(1);
  for (int i = 0; i < (p < 0 ? -p : p); ++i) r *= base;
  return r;
}

std::string theta_label(const Monomial& z, Exp base) {
  std::string b = base == 1 ? "q" : "q^" + std::to_string(base);
  return "j(" + z.str() + ";" + b + ")";
}

}  // namespace

ThetaProduct& ThetaProduct::times(const CycloNum& c) {
  constant_ *= c;
  return *this;
}

ThetaProduct& ThetaProduct::times(const Monomial& m) {
  constant_ *= m.unity.value();
  shift_ = checked_add(shift_, m.exp);
  return *this;
}

ThetaProduct& ThetaProduct::times_q(Exp e) {
  shift_ = checked_add(shift_, e);
  return *this;
}

ThetaProduct& ThetaProduct::pochhammer(const Monomial& x, Exp base, int power, std::string label) {
  if (base < 1) throw RangeError("pochhammer base must be positive");
  if (power == 0) return *this;
  if (label.empty()) label = "(" + x.str() + ";q^" + std::to_string(base) + ")_inf";
  factors_.push_back({x, base, power, std::move(label)});
  return *this;
}

ThetaProduct& ThetaProduct::theta(const Monomial& z, Exp base, int power) {
  if (power == 0) return *this;
  const std::string label = theta_label(z, base);
  pochhammer(z, base, power, label);
  pochhammer(Monomial::q(base) / z, base, power, label);
  pochhammer(Monomial::q(base), base, power, label);
  return *this;
}

ThetaProduct& ThetaProduct::J(Exp m, int power) {
  return pochhammer(Monomial::q(m), m, power, "J_" + std::to_string(m));
}

ThetaProduct& ThetaProduct::operator*=(const ThetaProduct& o) {
  constant_ *= o.constant_;
  shift_ = checked_add(shift_, o.shift_);
  factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
  return *this;
}

bool ThetaProduct::factor_vanishes(const Factor& f) {
  // Some 1 - u q^{e + k b} with k >= 0 is identically zero.
  return f.x.unity.is_one() && f.x.exp <= 0 && f.x.exp % f.base == 0;
}

void ThetaProduct::check_poles() const {
  for (const auto& f : factors_)
    if (f.power < 0 && factor_vanishes(f)) throw PoleError(f.label + " vanishes in a denominator");
}

bool ThetaProduct::vanishes() const {
  if (constant_.is_zero()) return true;
  for (const auto& f : factors_)
    if (f.power > 0 && factor_vanishes(f)) return true;
  return false;
}

Exp ThetaProduct::valuation() const {
  Exp v = shift_;
  for (const auto& f : factors_) {
    for (Exp e = f.x.exp; e < 0; e = checked_add(e, f.base)) v = checked_add(v, checked_mul(e, f.power));
  }
  return v;
}

ThetaProduct::Normalized ThetaProduct::normalize(Exp relative_prec) const {
  Normalized n;
  n.constant = constant_;
  n.shift = shift_;
  RootOfUnity unit_acc;
  for (const auto& f : factors_) {
    const RootOfUnity u = f.x.unity;
    for (Exp e = f.x.exp;; e = checked_add(e, f.base)) {
      if (e < 0) {
        // 1 - u q^e = -u q^e (1 - u^{-1} q^{-e})
        unit_acc = unit_acc * (-u).pow(f.power);
        n.shift = checked_add(n.shift, checked_mul(e, f.power));
        if (-e < relative_prec) n.binomials.emplace_back(u.inverse(), -e, f.power);
      } else if (e == 0) {
        n.constant *= cyclo_pow(CycloNum(1) - u.value(), f.power);
      } else {
        if (e >= relative_prec) break;
        n.binomials.emplace_back(u, e, f.power);
      }
    }
  }
  n.constant *= unit_acc.value();
  long level = 1;
  for (const auto& [u, e, p] : n.binomials) level = std::lcm(level, u.order());
  n.level = level;
  return n;
}

QSeries ThetaProduct::evaluate(Exp prec) const {
  check_poles();
  if (vanishes()) return QSeries::zero(prec);
  const Exp v = valuation();
  const Exp rel = checked_sub(prec, v);
  if (rel <= 0) return QSeries::zero(prec);
  const Normalized n = normalize(rel);
  detail::CyclicBuffer buf(n.level, static_cast<std::size_t>(rel));
  buf.set_one(0);
  for (const auto& [u, e, p] : n.binomials) {
    const long k = buf.root_index(u);
    const auto f = static_cast<std::size_t>(e);
    for (int i = 0; i < p; ++i) buf.mul_binomial(k, f);
    for (int i = 0; i < -p; ++i) buf.div_binomial(k, f);
  }
  std::vector<CycloNum> coeffs(static_cast<std::size_t>(rel));
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = buf.get(i) * n.constant;
  return QSeries(v, std::move(coeffs), prec);
}

QSeries ThetaProduct::times_series(const QSeries& s) const {
  check_poles();
  if (vanishes()) return QSeries::zero(s.prec());
  const Exp v = valuation();
  const Exp out_prec = checked_add(s.prec(), v);
  if (s.is_zero()) return QSeries::zero(out_prec);
  const Exp rel = s.prec() - s.min_exp();
  const Normalized n = normalize(rel);
  long level = n.level;
  for (const auto& c : s.coeffs()) level = std::lcm(level, c.level());
  auto buf = detail::CyclicBuffer::from_coeffs(level, s.coeffs(), static_cast<std::size_t>(rel));
  for (const auto& [u, e, p] : n.binomials) {
    const long k = buf.root_index(u);
    const auto f = static_cast<std::size_t>(e);
    for (int i = 0; i < p; ++i) buf.mul_binomial(k, f);
    for (int i = 0; i < -p; ++i) buf.div_binomial(k, f);
  }
  std::vector<CycloNum> coeffs(static_cast<std::size_t>(rel));
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = buf.get(i) * n.constant;
  return QSeries(checked_add(s.min_exp(), v), std::move(coeffs), out_prec);
}

// ---------------------------------------------------------------------------

bool j_is_zero(const Monomial& z, Exp base) {
  if (base < 1) throw RangeError("theta base must be positive");
  return z.unity.is_one() && z.exp % base == 0;
}

QSeries pochhammer_inf(const Monomial& x, Exp base, Exp prec) {
  return ThetaProduct().pochhammer(x, base, 1).evaluate(prec);
}

QSeries J(Exp m, Exp prec) {
  if (m < 1) throw RangeError("J_m needs m >= 1");
  return ThetaProduct().J(m, 1).evaluate(prec);
}

QSeries theta_j(const Monomial& z, Exp base, Exp prec) {
  return ThetaProduct().theta(z, base, 1).evaluate(prec);
}

QSeries theta_j_sum(const Monomial& z, Exp base, Exp prec) {
  if (base < 1) throw RangeError("theta base must be positive");
  // g(n) = base n(n-1)/2 + n e is convex with its minimum near n = 1/2 - e/base.
  auto g = [&](Exp n) { return checked_add(checked_mul(base, n * (n - 1) / 2), checked_mul(n, z.exp)); };
  const Exp centre = floor_div(base - 2 * z.exp, 2 * base);
  std::map<Exp, CycloNum> terms;
  auto visit = [&](Exp n) {
    const Exp e = g(n);
    if (e >= prec) return false;
    RootOfUnity u = z.unity.pow(n);
    if (n % 2 != 0) u = -u;
    terms[e] += u.value();
    return true;
  };
  for (Exp n = centre;; ++n)
    if (!visit(n) && n > centre + 1) break;
  for (Exp n = centre - 1;; --n)
    if (!visit(n) && n < centre - 1) break;
  if (terms.empty()) return QSeries::zero(prec);
  const Exp lo = terms.begin()->first;
  std::vector<CycloNum> coeffs(static_cast<std::size_t>(prec - lo));
  for (auto& [e, c] : terms) coeffs[e - lo] = std::move(c);
  return QSeries(lo, std::move(coeffs), prec);
}

ThetaProduct j_quotient_product(std::initializer_list<std::pair<Exp, int>> factors) {
  ThetaProduct p;
  for (const auto& [m, e] : factors) p.J(m, e);
  return p;
}

QSeries j_quotient(std::initializer_list<std::pair<Exp, int>> factors, Exp prec) {
  return j_quotient_product(factors).evaluate(prec);
}

QSeries eta_quotient(const std::vector<std::pair<Exp, int>>& factors, Exp prec) {
  ThetaProduct p;
  Exp weight24 = 0;
  for (const auto& [m, e] : factors) {
    p.J(m, e);
    weight24 = checked_add(weight24, checked_mul(m, e));
  }
  if (weight24 % 24 != 0) throw RangeError("eta quotient has a fractional q-power");
  p.times_q(weight24 / 24);
  return p.evaluate(prec);
}

}  // namespace overrank
