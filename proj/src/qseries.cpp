#include "overrank/qseries.hpp"

#include <algorithm>
#include <sstream>

#include "overrank/errors.hpp"

namespace overrank {

Exp checked_add(Exp a, Exp b) {
  Exp r;
  if (__builtin_add_overflow(a, b, &r)) throw ExponentOverflow();
  return r;
}

Exp checked_sub(Exp a, Exp b) {
  Exp r;
  if (__builtin_sub_overflow(a, b, &r)) throw ExponentOverflow();
  return r;
}

Exp checked_mul(Exp a, Exp b) {
  Exp r;
  if (__builtin_mul_overflow(a, b, &r)) throw ExponentOverflow();
  return r;
}

Exp floor_div(Exp a, Exp b) {
  Exp q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Exp ceil_div(Exp a, Exp b) { return -floor_div(-a, b); }

std::string Monomial::str() const {
  const bool neg = unity.order() == 2;
  std::string u;
  if (!unity.is_one() && !neg) u = unity.str();
  std::string qpart;
  if (exp == 1) qpart = "q";
  else if (exp != 0) qpart = "q^" + std::to_string(exp);
  std::string body;
  if (!u.empty() && !qpart.empty()) body = u + "*" + qpart;
  else if (!u.empty()) body = u;
  else if (!qpart.empty()) body = qpart;
  else body = "1";
  return neg ? "-" + body : body;
}

// ---------------------------------------------------------------------------

QSeries::QSeries(Exp min_exp, std::vector<CycloNum> coeffs, Exp prec) : min_(min_exp), prec_(prec), c_(std::move(coeffs)) {
  if (min_ > prec_) {
    min_ = prec_;
    c_.clear();
  }
  const auto width = static_cast<std::size_t>(checked_sub(prec_, min_));
  c_.resize(width);
  trim();
}

void QSeries::trim() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == 0) return;
  c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
  min_ += static_cast<Exp>(lead);
}

QSeries QSeries::constant(const CycloNum& c, Exp prec) { return monomial(c, 0, prec); }

QSeries QSeries::monomial(const CycloNum& c, Exp e, Exp prec) {
  if (e >= prec) return zero(prec);
  return QSeries(e, {c}, prec);
}

CycloNum QSeries::coeff(Exp e) const {
  if (e >= prec_) throw RangeError("coefficient of q^" + std::to_string(e) + " is beyond O(q^" + std::to_string(prec_) + ")");
  if (e < min_) return CycloNum();
  return c_[static_cast<std::size_t>(e - min_)];
}

QSeries QSeries::truncated(Exp prec) const {
  if (prec >= prec_) return *this;
  if (prec <= min_) return zero(prec);
  return QSeries(min_, std::vector<CycloNum>(c_.begin(), c_.begin() + (prec - min_)), prec);
}

QSeries& QSeries::operator+=(const QSeries& o) {
  const Exp prec = std::min(prec_, o.prec_);
  const Exp lo = std::min(min_, o.min_);
  if (lo >= prec) return *this = zero(prec);
  std::vector<CycloNum> out(static_cast<std::size_t>(prec - lo));
  for (Exp e = min_; e < prec; ++e) out[e - lo] = std::move(c_[e - min_]);
  for (Exp e = o.min_; e < prec; ++e) out[e - lo] += o.c_[e - o.min_];
  return *this = QSeries(lo, std::move(out), prec);
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

QSeries& QSeries::operator*=(const CycloNum& c) {
  if (c.is_zero()) return *this = zero(prec_);
  for (auto& x : c_) x *= c;
  return *this;
}

QSeries QSeries::operator+(const CycloNum& c) const {
  if (0 >= prec_) return *this;
  return *this + QSeries::constant(c, prec_);
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  const Exp prec = std::min(checked_add(a.prec_, b.min_), checked_add(b.prec_, a.min_));
  const Exp lo = checked_add(a.min_, b.min_);
  if (lo >= prec) return QSeries::zero(prec);
  std::vector<CycloNum> out(static_cast<std::size_t>(prec - lo));
  const Exp width = prec - lo;
  for (Exp i = 0; i < static_cast<Exp>(a.c_.size()) && i < width; ++i) {
    const CycloNum& ai = a.c_[i];
    if (ai.is_zero()) continue;
    for (Exp j = 0; j < static_cast<Exp>(b.c_.size()) && i + j < width; ++j) {
      if (b.c_[j].is_zero()) continue;
      out[i + j] += ai * b.c_[j];
    }
  }
  return QSeries(lo, std::move(out), prec);
}

QSeries QSeries::shifted(Exp e) const {
  QSeries r = *this;
  r.min_ = checked_add(min_, e);
  r.prec_ = checked_add(prec_, e);
  return r;
}

QSeries QSeries::inverse() const {
  if (is_zero()) throw NotInvertible("series vanishes on its window O(q^" + std::to_string(prec_) + ")");
  const Exp rel = prec_ - min_;
  const CycloNum lead_inv = c_[0].inverse();
  std::vector<CycloNum> b(static_cast<std::size_t>(rel));
  b[0] = lead_inv;
  for (Exp n = 1; n < rel; ++n) {
    CycloNum acc;
    for (Exp k = 1; k <= n; ++k)
      if (!c_[k].is_zero() && !b[n - k].is_zero()) acc += c_[k] * b[n - k];
    b[n] = -(acc * lead_inv);
  }
  return QSeries(checked_sub(0, min_), std::move(b), checked_sub(prec_, checked_mul(2, min_)));
}

QSeries QSeries::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  QSeries result = QSeries::constant(CycloNum(1), checked_add(prec_ - min_, checked_mul(min_, k)));
  QSeries base = *this;
  bool first = true;
  while (k > 0) {
    if (k & 1) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return !first_difference(a, b, std::min(a.prec_, b.prec_)).has_value();
}

bool QSeries::has_rational_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const CycloNum& c) { return c.level() == 1; });
}

std::string QSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const CycloNum& c = c_[i];
    if (c.is_zero()) continue;
    const Exp e = min_ + static_cast<Exp>(i);
    std::string qpart;
    if (e == 1) qpart = "q";
    else if (e != 0) qpart = "q^" + std::to_string(e);

    bool neg = false;
    std::string mag;
    if (auto r = c.as_rational()) {
      neg = r->sign() < 0;
      const Rational m = neg ? -*r : *r;
      if (!(m.is_one() && !qpart.empty())) mag = m.str();
    } else {
      mag = c.str();
    }
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (!mag.empty() && !qpart.empty()) os << mag << '*' << qpart;
    else os << mag << qpart;
  }
  if (!first) os << " + ";
  os << "O(q^" << prec_ << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

QSeries subst_q_power(const QSeries& s, Exp t) {
  if (t < 1) throw RangeError("subst_q_power needs t >= 1");
  if (t == 1) return s;
  const Exp lo = checked_mul(s.min_exp(), t);
  const Exp prec = checked_mul(s.prec(), t);
  std::vector<CycloNum> out(static_cast<std::size_t>(prec - lo));
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) out[i * t] = s.coeffs()[i];
  return QSeries(lo, std::move(out), prec);
}

QSeries extract_progression(const QSeries& s, Exp r, Exp m) {
  if (m < 1) throw RangeError("extract_progression needs m >= 1");
  // Exponent m n + r is known iff m n + r < prec, i.e. n < ceil((prec - r) / m).
  const Exp prec = ceil_div(checked_sub(s.prec(), r), m);
  const Exp lo = ceil_div(checked_sub(s.min_exp(), r), m);
  if (lo >= prec) return QSeries::zero(prec);
  std::vector<CycloNum> out(static_cast<std::size_t>(prec - lo));
  for (Exp n = lo; n < prec; ++n) out[n - lo] = s.coeff(m * n + r);
  return QSeries(lo, std::move(out), prec);
}

std::optional<Exp> first_difference(const QSeries& a, const QSeries& b, Exp window) {
  window = std::min({window, a.prec(), b.prec()});
  const Exp lo = std::min(a.min_exp(), b.min_exp());
  for (Exp e = lo; e < window; ++e)
    if (!(a.coeff(e) == b.coeff(e))) return e;
  return std::nullopt;
}

}  // namespace overrank
