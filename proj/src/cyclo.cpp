#include "overrank/cyclo.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "overrank/errors.hpp"

namespace overrank {

namespace {

std::atomic<long> g_level_cap{240};

long mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

// Exact division of integer polynomials (divisor monic).
std::vector<long> poly_divide(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::unique_ptr<LevelInfo> build_level(long n, const std::map<long, std::unique_ptr<LevelInfo>>& known);

class LevelRegistry {
 public:
  const LevelInfo& get(long n) {
    std::lock_guard lock(mutex_);
    return get_locked(n);
  }

 private:
  const LevelInfo& get_locked(long n) {
    auto it = levels_.find(n);
    if (it != levels_.end()) return *it->second;
    for (long d = 1; d < n; ++d)
      if (n % d == 0) get_locked(d);
    auto info = build_level(n, levels_);
    const LevelInfo& ref = *info;
    levels_.emplace(n, std::move(info));
    return ref;
  }

  std::mutex mutex_;
  std::map<long, std::unique_ptr<LevelInfo>> levels_;
};

LevelRegistry& registry() {
  static LevelRegistry r;
  return r;
}

std::unique_ptr<LevelInfo> build_level(long n, const std::map<long, std::unique_ptr<LevelInfo>>& known) {
  auto info = std::make_unique<LevelInfo>();
  info->level = n;
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<long> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) poly = poly_divide(std::move(poly), known.at(d)->cyclotomic);
  info->cyclotomic = poly;
  info->phi = static_cast<long>(poly.size()) - 1;
  const long phi = info->phi;

  info->powers.assign(n, std::vector<long>(phi, 0));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  for (long k = 0; k < n; ++k) {
    info->powers[k] = cur;
    // cur *= x, then reduce the x^phi term.
    const long top = cur[phi - 1];
    for (long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (long i = 0; i < phi; ++i) cur[i] -= top * poly[i];
  }
  return info;
}

std::vector<Rational> zeros(long n) { return std::vector<Rational>(static_cast<std::size_t>(n)); }

const LevelInfo* unit_info() {
  static const LevelInfo* info = &registry().get(1);
  return info;
}

}  // namespace

long level_cap() noexcept { return g_level_cap.load(std::memory_order_relaxed); }

void set_level_cap(long cap) {
  if (cap < 1) throw RangeError("level cap must be positive");
  g_level_cap.store(cap, std::memory_order_relaxed);
}

long totient(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const LevelInfo& level_info(long level) {
  if (level < 1) throw RangeError("cyclotomic level must be positive");
  if (level > level_cap()) throw LevelOverflow(level, level_cap());
  return registry().get(level);
}

// ---------------------------------------------------------------------------
// CycloNum

CycloNum::CycloNum() : info_(unit_info()), c_(1) {}

CycloNum::CycloNum(long n) : info_(unit_info()), c_{Rational(n)} {}

CycloNum::CycloNum(Rational r) : info_(unit_info()), c_{std::move(r)} {}

CycloNum CycloNum::from_coeffs(long level, std::vector<Rational> coeffs) {
  const LevelInfo& info = level_info(level);
  if (static_cast<long>(coeffs.size()) != info.phi)
    throw RangeError("coefficient vector length must equal phi(level)");
  return CycloNum(&info, std::move(coeffs));
}

void CycloNum::normalize() {
  if (info_->level == 1) return;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return;
  c_.resize(1);
  info_ = unit_info();
}

std::vector<Rational> CycloNum::coords_at(long level) const {
  const long from = info_->level;
  if (level == from) return c_;
  if (level % from != 0) throw RangeError("can only lift to a multiple of the current level");
  const LevelInfo& target = level_info(level);
  const long step = level / from;
  std::vector<Rational> out = zeros(target.phi);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const auto& p = target.powers[static_cast<std::size_t>(mod(static_cast<long>(i) * step, level))];
    for (long t = 0; t < target.phi; ++t)
      if (p[t] != 0) out[t] += c_[i] * Rational(p[t]);
  }
  return out;
}

long CycloNum::common_level(const CycloNum& a, const CycloNum& b) {
  const long l = std::lcm(a.level(), b.level());
  if (l > level_cap()) throw LevelOverflow(l, level_cap());
  return l;
}

bool CycloNum::is_zero() const noexcept { return info_->level == 1 && c_[0].is_zero(); }

bool CycloNum::is_one() const noexcept { return info_->level == 1 && c_[0].is_one(); }

std::optional<Rational> CycloNum::as_rational() const {
  if (info_->level == 1) return c_[0];
  return std::nullopt;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (o.info_->level == 1) {
    c_[0] += o.c_[0];
    normalize();
    return *this;
  }
  if (info_ == o.info_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  const long l = common_level(*this, o);
  std::vector<Rational> a = coords_at(l);
  const std::vector<Rational> b = o.coords_at(l);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  *this = CycloNum(&level_info(l), std::move(a));
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) { return *this += -o; }

CycloNum CycloNum::operator-() const {
  std::vector<Rational> c = c_;
  for (auto& x : c) x = -x;
  return CycloNum(info_, std::move(c));
}

CycloNum& CycloNum::operator*=(const Rational& r) {
  if (r.is_zero()) return *this = CycloNum();
  for (auto& x : c_) x *= r;
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  if (o.info_->level == 1) return *this *= o.c_[0];
  if (info_->level == 1) {
    Rational r = c_[0];
    *this = o;
    return *this *= r;
  }
  const long l = common_level(*this, o);
  const LevelInfo& info = level_info(l);
  const std::vector<Rational> a = coords_at(l);
  const std::vector<Rational> b = o.coords_at(l);
  const long phi = info.phi;
  std::vector<Rational> prod = zeros(2 * phi - 1);
  for (long i = 0; i < phi; ++i) {
    if (a[i].is_zero()) continue;
    for (long j = 0; j < phi; ++j)
      if (!b[j].is_zero()) prod[i + j] += a[i] * b[j];
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + phi);
  for (long k = phi; k < 2 * phi - 1; ++k) {
    if (prod[k].is_zero()) continue;
    const auto& p = info.powers[static_cast<std::size_t>(k % l)];
    for (long t = 0; t < phi; ++t)
      if (p[t] != 0) out[t] += prod[k] * Rational(p[t]);
  }
  *this = CycloNum(&info, std::move(out));
  return *this;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (info_->level == 1) return CycloNum(c_[0].inverse());
  // Solve (this * v) = 1: column j of the matrix is this * x^j.
  const LevelInfo& info = *info_;
  const long phi = info.phi;
  std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1));
  for (long j = 0; j < phi; ++j) {
    std::vector<Rational> basis = zeros(phi);
    basis[j] = Rational(1);
    CycloNum col = *this * CycloNum(&info, basis);
    const std::vector<Rational> cc = col.coords_at(info.level);
    for (long i = 0; i < phi; ++i) m[i][j] = cc[i];
  }
  m[0][phi] = Rational(1);
  for (long col = 0; col < phi; ++col) {
    long piv = col;
    while (piv < phi && m[piv][col].is_zero()) ++piv;
    if (piv == phi) throw DivisionByZero();
    std::swap(m[piv], m[col]);
    const Rational inv = m[col][col].inverse();
    for (long k = col; k <= phi; ++k) m[col][k] *= inv;
    for (long r = 0; r < phi; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (long k = col; k <= phi; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<Rational> v(phi);
  for (long i = 0; i < phi; ++i) v[i] = m[i][phi];
  return CycloNum(&info, std::move(v));
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.info_ == b.info_) return a.c_ == b.c_;
  // Rational values always sit at level 1, so differing levels with one of them 1 means unequal.
  if (a.level() == 1 || b.level() == 1) return false;
  const long l = CycloNum::common_level(a, b);
  return a.coords_at(l) == b.coords_at(l);
}

std::string CycloNum::str() const {
  if (info_->level == 1) return c_[0].str();
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    const bool neg = c.sign() < 0;
    const Rational mag = neg ? -c : c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (!mag.is_one()) os << mag << '*';
    os << "zeta(" << info_->level << ')';
    if (i > 1) os << '^' << i;
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

CycloNum zeta(long level, long k) {
  if (level < 1) throw RangeError("zeta level must be positive");
  long e = mod(k, level);
  const long g = std::gcd(level, e);  // gcd(L, 0) = L
  const long l = level / g;
  e /= g;
  if (l == 1) return CycloNum(1);
  const LevelInfo& info = level_info(l);
  std::vector<Rational> c(info.phi);
  const auto& p = info.powers[static_cast<std::size_t>(e)];
  for (long t = 0; t < info.phi; ++t) c[t] = Rational(p[t]);
  return CycloNum::from_coeffs(l, std::move(c));
}

Rational root_of_unity_sum(long n, long s) {
  if (n < 1) throw RangeError("root_of_unity_sum needs n >= 1");
  return mod(s, n) == 0 ? Rational(n) : Rational(0);
}

std::optional<Rational> is_rational(const CycloNum& a) { return a.as_rational(); }

// ---------------------------------------------------------------------------
// RootOfUnity

RootOfUnity::RootOfUnity(long level, long k) {
  if (level < 1) throw RangeError("root of unity level must be positive");
  long e = mod(k, level);
  const long g = std::gcd(level, e);
  den_ = level / g;
  num_ = e / g;
  if (den_ == 1) num_ = 0;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  const long l = std::lcm(den_, o.den_);
  return RootOfUnity(l, num_ * (l / den_) + o.num_ * (l / o.den_));
}

RootOfUnity RootOfUnity::pow(long k) const {
  // num * k may be large; reduce first.
  return RootOfUnity(den_, static_cast<long>((static_cast<__int128>(num_) * k) % den_));
}

std::string RootOfUnity::str() const {
  if (num_ == 0) return "1";
  if (den_ == 2) return "-1";
  std::string s = "zeta(" + std::to_string(den_) + ")";
  if (num_ != 1) s += "^" + std::to_string(num_);
  return s;
}

}  // namespace overrank
