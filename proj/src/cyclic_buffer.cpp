#include "cyclic_buffer.hpp"

#include "overrank/errors.hpp"

namespace overrank::detail {

CyclicBuffer::CyclicBuffer(long level, std::size_t length)
    : n_(level), len_(length), data_(static_cast<std::size_t>(level) * length) {
  level_info(level);  // enforces the level cap
}

CyclicBuffer CyclicBuffer::from_coeffs(long level, const std::vector<CycloNum>& coeffs, std::size_t length) {
  CyclicBuffer buf(level, length);
  mpz_class den = 1;
  const std::size_t count = std::min(coeffs.size(), length);
  for (std::size_t i = 0; i < count; ++i)
    for (const Rational& r : coeffs[i].coeffs()) den = lcm(den, r.denominator());
  buf.den_ = den;
  for (std::size_t i = 0; i < count; ++i) {
    const CycloNum& c = coeffs[i];
    if (c.is_zero()) continue;
    if (level % c.level() != 0) throw RangeError("buffer level must be a multiple of coefficient level");
    const long step = level / c.level();
    mpz_class* out = buf.slot(i);
    for (std::size_t t = 0; t < c.coeffs().size(); ++t) {
      const mpq_class& v = c.coeffs()[t].value();
      if (sgn(v) == 0) continue;
      out[static_cast<long>(t) * step] += v.get_num() * (den / v.get_den());
    }
  }
  return buf;
}

long CyclicBuffer::root_index(const RootOfUnity& u) const {
  if (n_ % u.order() != 0) throw RangeError("root of unity order does not divide buffer level");
  return u.turn_numerator() * (n_ / u.order());
}

void CyclicBuffer::add_root(std::size_t i, long k, int sign) {
  mpz_class& v = slot(i)[((k % n_) + n_) % n_];
  if (sign > 0) v += 1;
  else v -= 1;
}

void CyclicBuffer::mul_binomial(long k, std::size_t f) {
  if (f >= len_) return;
  k = ((k % n_) + n_) % n_;
  for (std::size_t i = len_; i-- > f;) {
    const mpz_class* src = slot(i - f);
    mpz_class* dst = slot(i);
    for (long t = 0; t < n_; ++t) {
      if (sgn(src[t]) == 0) continue;
      long d = t + k;
      if (d >= n_) d -= n_;
      dst[d] -= src[t];
    }
  }
}

void CyclicBuffer::div_binomial(long k, std::size_t f) {
  if (f >= len_ || f == 0) {
    if (f == 0) throw RangeError("div_binomial needs a positive exponent");
    return;
  }
  k = ((k % n_) + n_) % n_;
  for (std::size_t i = f; i < len_; ++i) {
    const mpz_class* src = slot(i - f);
    mpz_class* dst = slot(i);
    for (long t = 0; t < n_; ++t) {
      if (sgn(src[t]) == 0) continue;
      long d = t + k;
      if (d >= n_) d -= n_;
      dst[d] += src[t];
    }
  }
}

CycloNum CyclicBuffer::get(std::size_t i) const {
  const LevelInfo& info = level_info(n_);
  const mpz_class* src = slot(i);
  std::vector<mpz_class> acc(static_cast<std::size_t>(info.phi));
  bool any = false;
  for (long t = 0; t < n_; ++t) {
    if (sgn(src[t]) == 0) continue;
    any = true;
    const auto& p = info.powers[static_cast<std::size_t>(t)];
    for (long j = 0; j < info.phi; ++j)
      if (p[j] != 0) acc[j] += src[t] * p[j];
  }
  if (!any) return CycloNum();
  std::vector<Rational> coords;
  coords.reserve(acc.size());
  for (auto& a : acc) coords.emplace_back(mpq_class(a, den_));
  return CycloNum::from_coeffs(n_, std::move(coords));
}

}  // namespace overrank::detail
