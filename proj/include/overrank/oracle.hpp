#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "overrank/qseries.hpp"

namespace overrank {

enum class RankKind { rank, m2 };

std::string to_string(RankKind k);

struct Part {
  int value = 0;
  bool overlined = false;
};

/// Parts in non-increasing order; an overlined copy of a value precedes its plain copies.
struct Overpartition {
  std::vector<Part> parts;

  int size() const;
  int largest() const { return parts.empty() ? 0 : parts.front().value; }
};

/// Calls f once for every overpartition of n (n = 0 yields the empty overpartition).
void for_each_overpartition(int n, const std::function<void(const Overpartition&)>& f);
std::vector<Overpartition> enumerate(int n);

/// Largest part minus number of parts; 0 for the empty overpartition.
long rank(const Overpartition& op);
/// ceil(l/2) - #parts + #(odd non-overlined parts) - chi(largest part odd and non-overlined); 0 when empty.
long m2_rank(const Overpartition& op);
long statistic(RankKind kind, const Overpartition& op);

/// Counts of overpartitions of n with a given rank value, for 0 <= n <= n_max.
class RankTable {
 public:
  using Row = std::map<long, long long>;

  /// Streams every overpartition.
  static RankTable by_enumeration(RankKind kind, int n_max);
  /// Memoized counting by largest part; no objects are materialized.
  static RankTable by_counting(RankKind kind, int n_max);
  /// Process-wide table, built once per (kind, n_max). Uses OVERRANK_CACHE_DIR when set.
  static const RankTable& shared(RankKind kind, int n_max);

  RankKind kind() const noexcept { return kind_; }
  int n_max() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  const Row& row(int n) const { return rows_.at(static_cast<std::size_t>(n)); }
  long long count(long m, int n) const;
  long long total(int n) const;
  /// Overpartitions of n with statistic congruent to a mod M.
  long long residue_count(long a, long M, int n) const;

  /// Empty string when both invariants hold (symmetry in m, row totals equal pbar(n)),
  /// otherwise a description of the first violation.
  std::string validate() const;

  std::string to_json() const;
  /// Throws Error on malformed input; does not validate.
  static RankTable from_json(const std::string& text);

  friend bool operator==(const RankTable&, const RankTable&) = default;

 private:
  RankKind kind_ = RankKind::rank;
  std::vector<Row> rows_;
};

/// (-q)_inf / (q)_inf
QSeries pbar_series(Exp prec);

/// (1 - z)(1 - 2 m(z^-2 q, q^2, z))
QSeries sbar_closed(const Monomial& z, Exp prec);
/// -(1 - z) + 2(1 - z) m(z q, q^2, q), with the third parameter switched to -1 when q is not admissible.
QSeries sbar2_closed(const Monomial& z, Exp prec);

/// sum_{m,n} N(m,n) z^m q^n for a root of unity z, from the closed forms (z = -1 via T or T_2).
QSeries rbar_closed(RankKind kind, const RootOfUnity& z, Exp prec);

/// sum_{m,n} (N(m,n) + N(m-1,n)) z^m q^n read off a table, to O(q^(n_max+1)).
QSeries sbar_from_table(const RankTable& t, const RootOfUnity& z);

/// D(a,M) or D_2(a,M) counted directly from a table, to O(q^(n_max+1)).
QSeries deviation_from_table(const RankTable& t, long a, long M);

/// D(a,M) or D_2(a,M) to O(q^prec). Coefficients below oracle_range + 1 come from the rank
/// table; beyond that from the closed forms, which must agree with the table on its range
/// (OracleMismatch otherwise).
QSeries deviation(long a, long M, RankKind kind, Exp prec, int oracle_range = 24);

}  // namespace overrank
