#include "overrank/oracle.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "overrank/appell_lerch.hpp"
#include "overrank/errors.hpp"
#include "overrank/theta.hpp"

namespace overrank {

std::string to_string(RankKind k) { return k == RankKind::rank ? "rank" : "m2"; }

int Overpartition::size() const {
  int s = 0;
  for (const auto& p : parts) s += p.value;
  return s;
}

namespace {

void descend(int remaining, int max_value, Overpartition& op, const std::function<void(const Overpartition&)>& f) {
  if (remaining == 0) {
    f(op);
    return;
  }
  for (int v = std::min(remaining, max_value); v >= 1; --v) {
    for (int c = 1; c * v <= remaining; ++c) {
      for (bool over : {false, true}) {
        op.parts.push_back({v, over});
        for (int i = 1; i < c; ++i) op.parts.push_back({v, false});
        descend(remaining - c * v, v - 1, op, f);
        op.parts.resize(op.parts.size() - static_cast<std::size_t>(c));
      }
    }
  }
}

}  // namespace

void for_each_overpartition(int n, const std::function<void(const Overpartition&)>& f) {
  if (n < 0) return;
  Overpartition op;
  descend(n, n, op, f);
}

std::vector<Overpartition> enumerate(int n) {
  std::vector<Overpartition> out;
  for_each_overpartition(n, [&](const Overpartition& op) { out.push_back(op); });
  return out;
}

long rank(const Overpartition& op) {
  if (op.parts.empty()) return 0;
  return op.largest() - static_cast<long>(op.parts.size());
}

long m2_rank(const Overpartition& op) {
  if (op.parts.empty()) return 0;
  const int l = op.largest();
  long odd_plain = 0;
  for (const auto& p : op.parts)
    if (p.value % 2 == 1 && !p.overlined) ++odd_plain;
  const bool chi = l % 2 == 1 && !op.parts.front().overlined;
  return (l + 1) / 2 - static_cast<long>(op.parts.size()) + odd_plain - (chi ? 1 : 0);
}

long statistic(RankKind kind, const Overpartition& op) { return kind == RankKind::rank ? rank(op) : m2_rank(op); }

// ---------------------------------------------------------------------------

RankTable RankTable::by_enumeration(RankKind kind, int n_max) {
  RankTable t;
  t.kind_ = kind;
  t.rows_.resize(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n)
    for_each_overpartition(n, [&](const Overpartition& op) { ++t.rows_[n][statistic(kind, op)]; });
  return t;
}

namespace {

// Both statistics have the shape top(l, first copy overlined) - W, where W adds up a
// contribution from each distinct part value.
long part_weight(RankKind kind, int v, int copies, bool overlined) {
  if (kind == RankKind::rank) return copies;
  if (v % 2 == 0) return copies;
  return overlined ? 1 : 0;
}

long top_value(RankKind kind, int l, bool overlined) {
  if (kind == RankKind::rank) return l;
  return (l + 1) / 2 - ((l % 2 == 1 && !overlined) ? 1 : 0);
}

}  // namespace

RankTable RankTable::by_counting(RankKind kind, int n_max) {
  using Weights = std::map<long, long long>;
  const std::size_t N = static_cast<std::size_t>(n_max + 1);
  // f[k][n]: overpartitions of n with parts <= k, keyed by total weight W.
  std::vector<std::vector<Weights>> f(N, std::vector<Weights>(N));
  f[0][0][0] = 1;
  for (int k = 1; k <= n_max; ++k) {
    for (int n = 0; n <= n_max; ++n) {
      Weights w = f[k - 1][n];
      for (int c = 1; c * k <= n; ++c)
        for (bool over : {false, true})
          for (const auto& [wt, cnt] : f[k - 1][n - c * k]) w[wt + part_weight(kind, k, c, over)] += cnt;
      f[k][n] = std::move(w);
    }
  }
  RankTable t;
  t.kind_ = kind;
  t.rows_.resize(N);
  t.rows_[0][0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    for (int l = 1; l <= n; ++l)
      for (int c = 1; c * l <= n; ++c)
        for (bool over : {false, true})
          for (const auto& [wt, cnt] : f[l - 1][n - c * l])
            t.rows_[n][top_value(kind, l, over) - wt - part_weight(kind, l, c, over)] += cnt;
  }
  return t;
}

long long RankTable::count(long m, int n) const {
  const Row& r = row(n);
  auto it = r.find(m);
  return it == r.end() ? 0 : it->second;
}

long long RankTable::total(int n) const {
  long long s = 0;
  for (const auto& [m, c] : row(n)) s += c;
  return s;
}

long long RankTable::residue_count(long a, long M, int n) const {
  long long s = 0;
  for (const auto& [m, c] : row(n))
    if (((m - a) % M + M) % M == 0) s += c;
  return s;
}

std::string RankTable::validate() const {
  if (rows_.empty()) return "empty table";
  const QSeries pbar = pbar_series(n_max() + 1);
  for (int n = 0; n <= n_max(); ++n) {
    for (const auto& [m, c] : row(n)) {
      if (c < 0) return "negative count at n=" + std::to_string(n);
      if (count(-m, n) != c) return "symmetry fails at m=" + std::to_string(m) + ", n=" + std::to_string(n);
    }
    if (CycloNum(Rational(static_cast<long>(total(n)))) != pbar.coeff(n))
      return "row total " + std::to_string(total(n)) + " differs from pbar at n=" + std::to_string(n);
  }
  return {};
}

std::string RankTable::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "overrank-ranktable";
  j["version"] = 1;
  j["kind"] = to_string(kind_);
  j["n_max"] = n_max();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    auto entries = nlohmann::ordered_json::array();
    for (const auto& [m, c] : r) entries.push_back({m, c});
    rows.push_back(std::move(entries));
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

RankTable RankTable::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "overrank-ranktable" || j.at("version") != 1) throw Error("unrecognized rank table format");
    RankTable t;
    const std::string kind = j.at("kind");
    if (kind == "rank") t.kind_ = RankKind::rank;
    else if (kind == "m2") t.kind_ = RankKind::m2;
    else throw Error("unknown rank kind " + kind);
    for (const auto& r : j.at("rows")) {
      Row row;
      for (const auto& e : r) row[e.at(0).get<long>()] = e.at(1).get<long long>();
      t.rows_.push_back(std::move(row));
    }
    if (t.n_max() != j.at("n_max").get<int>()) throw Error("rank table row count mismatch");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed rank table: ") + e.what());
  }
}

namespace {

std::unique_ptr<RankTable> load_cached(const std::filesystem::path& file, RankKind kind, int n_max) {
  std::ifstream in(file);
  if (!in) return nullptr;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto t = std::make_unique<RankTable>(RankTable::from_json(ss.str()));
    if (t->kind() != kind || t->n_max() != n_max || !t->validate().empty()) return nullptr;
    return t;
  } catch (const Error&) {
    return nullptr;
  }
}

}  // namespace

const RankTable& RankTable::shared(RankKind kind, int n_max) {
  static std::mutex mu;
  static std::map<std::pair<RankKind, int>, std::unique_ptr<RankTable>> tables;
  std::lock_guard lock(mu);
  auto& slot = tables[{kind, n_max}];
  if (slot) return *slot;

  std::filesystem::path file;
  if (const char* dir = std::getenv("OVERRANK_CACHE_DIR"); dir && *dir) {
    file = std::filesystem::path(dir) / ("ranktable-" + to_string(kind) + "-" + std::to_string(n_max) + ".json");
    slot = load_cached(file, kind, n_max);
    if (slot) return *slot;
  }
  slot = std::make_unique<RankTable>(by_counting(kind, n_max));
  if (const std::string bad = slot->validate(); !bad.empty()) throw OracleMismatch("rank table invalid: " + bad);
  if (!file.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    std::ofstream out(file);
    if (out) out << slot->to_json();
  }
  return *slot;
}

// ---------------------------------------------------------------------------

QSeries pbar_series(Exp prec) {
  return ThetaProduct().pochhammer(-Monomial::q(1), 1, 1).pochhammer(Monomial::q(1), 1, -1).evaluate(prec);
}

namespace {

// 1 - z as a series exact to well beyond prec.
QSeries one_minus(const Monomial& z, Exp prec) {
  const Exp p = checked_add(prec, std::abs(z.exp) * 2 + 1);
  return QSeries::constant(CycloNum(1), p) - QSeries::monomial(z.unity.value(), z.exp, p);
}

}  // namespace

QSeries sbar_closed(const Monomial& z, Exp prec) {
  const Exp work = checked_add(prec, std::max<Exp>(0, -z.exp));
  const QSeries m = m_series(z.pow(-2) * Monomial::q(1), 2, z, work);
  const QSeries inner = QSeries::constant(CycloNum(1), work) - m * CycloNum(2);
  return (one_minus(z, work) * inner).truncated(prec);
}

QSeries sbar2_closed(const Monomial& z, Exp prec) {
  const Exp work = checked_add(prec, std::max<Exp>(0, -z.exp));
  const Monomial x = z * Monomial::q(1);
  QSeries m;
  try {
    m = m_series(x, 2, Monomial::q(1), work);
  } catch (const PoleError&) {
    m = m_series(x, 2, Monomial::minus_one(), work) + delta(x, Monomial::q(1), Monomial::minus_one(), 2, work);
  }
  const QSeries inner = m * CycloNum(2) - CycloNum(1);
  return (one_minus(z, work) * inner).truncated(prec);
}

QSeries rbar_closed(RankKind kind, const RootOfUnity& z, Exp prec) {
  using Key = std::tuple<RankKind, long, long, Exp>;
  static std::mutex mu;
  static std::map<Key, QSeries> memo;
  const Key key{kind, z.turn_numerator(), z.order(), prec};
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  QSeries r;
  if (z == RootOfUnity::minus_one()) {
    r = (kind == RankKind::rank ? T_series(prec) : T2_series(prec)) * CycloNum(2);
  } else {
    const Monomial zm = Monomial::constant(z);
    const QSeries s = kind == RankKind::rank ? sbar_closed(zm, prec) : sbar2_closed(zm, prec);
    r = s * (CycloNum(1) + z.value()).inverse();
  }
  std::lock_guard lock(mu);
  memo.emplace(key, r);
  return r;
}

QSeries sbar_from_table(const RankTable& t, const RootOfUnity& z) {
  const int N = t.n_max();
  std::vector<CycloNum> r(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n) {
    std::map<long, long long> by_power;
    for (const auto& [m, c] : t.row(n)) by_power[((m % z.order()) + z.order()) % z.order()] += c;
    for (const auto& [p, c] : by_power) r[n] += z.pow(p).value() * CycloNum(Rational(static_cast<long>(c)));
  }
  return QSeries(0, std::move(r), N + 1) * (CycloNum(1) + z.value());
}

QSeries deviation_from_table(const RankTable& t, long a, long M) {
  if (M < 2) throw RangeError("deviation needs M >= 2");
  const int N = t.n_max();
  std::vector<CycloNum> c(static_cast<std::size_t>(N + 1));
  for (int n = 0; n <= N; ++n)
    c[n] = CycloNum(Rational(static_cast<long>(t.residue_count(a, M, n) * M - t.total(n)), M));
  return QSeries(0, std::move(c), N + 1);
}

QSeries deviation(long a, long M, RankKind kind, Exp prec, int oracle_range) {
  if (M < 2) throw RangeError("deviation needs M >= 2");
  const RankTable& table = RankTable::shared(kind, oracle_range);
  const QSeries counted = deviation_from_table(table, a, M);
  if (prec <= oracle_range + 1) return counted.truncated(prec);
  QSeries closed = QSeries::zero(prec);
  for (long j = 1; j < M; ++j) closed += rbar_closed(kind, RootOfUnity(M, j), prec) * zeta(M, -a * j);
  closed *= CycloNum(Rational(1, M));
  if (!closed.has_rational_coeffs()) throw OracleMismatch("closed-form deviation has irrational coefficients");
  if (auto e = first_difference(closed, counted, oracle_range + 1))
    throw OracleMismatch("closed form disagrees with enumeration at q^" + std::to_string(*e));
  return closed;
}

}  // namespace overrank
