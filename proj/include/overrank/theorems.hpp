#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "overrank/appell_lerch.hpp"
#include "overrank/oracle.hpp"
#include "overrank/report.hpp"

namespace overrank {

/// Which closed formula covers a pair of deviations.
enum class Formula {
  rank_even_even,  // a, M even
  rank_even_odd,   // a even, M odd
  rank_odd_odd,    // a, M odd
  m2               // M2-rank, 1 <= a <= M - 1
};

std::string to_string(Formula f);

/// coeff * q^shift * m(x, q^base, z) with z the generic parameter in `slot` (0 = z', 1 = z'').
struct AppellTerm {
  CycloNum coeff;
  Exp shift = 0;
  Monomial x;
  Exp base = 1;
  int slot = 0;
};

/// coeff * q^shift * Psi^n_k(x, z, zslot; q^base)
struct PsiTerm {
  CycloNum coeff;
  Exp shift = 0;
  long k = 0;
  long n = 1;
  Monomial x;
  Monomial z;
  Exp base = 1;
  int slot = 0;
};

/// coeff * Delta(x, z1, z0; q^base)
struct DeltaTerm {
  CycloNum coeff;
  Monomial x;
  Monomial z1;
  Monomial z0;
  Exp base = 1;
};

/// Right-hand side of a pair formula as a list of symbolic terms, so that generic parameters
/// can be pole-checked before anything is expanded.
struct RhsPlan {
  Formula formula = Formula::rank_even_even;
  long a = 0;  // after any symmetry reduction
  long M = 0;
  Rational constant;
  std::vector<AppellTerm> appell;
  std::vector<PsiTerm> psi;
  std::vector<DeltaTerm> delta;

  bool uses_slot(int slot) const;
};

/// Plan for D(a,M) + D(a-1,M), 2 <= a <= M. For a odd and M even the pair is first rewritten as
/// D(M-a+1,M) + D(M-a,M).
RhsPlan rank_pair_plan(long a, long M);
/// Plan for D_2(a,M) + D_2(a-1,M), 1 <= a <= M - 1.
RhsPlan m2_pair_plan(long a, long M);
RhsPlan pair_plan(RankKind kind, long a, long M);

struct Rejection {
  Monomial candidate;
  std::string reason;
};

struct GenericChoice {
  Monomial zp;
  Monomial zpp;
  std::vector<Rejection> rejected;
};

/// Empty when z is admissible in `slot`, otherwise the pole that rules it out.
std::string admissibility(const RhsPlan& plan, int slot, const Monomial& z);

/// Tries -1, -q, -q^2, ..., -q^bound for each parameter independently and takes the
/// (skip+1)-th admissible one. bound defaults to 4 M^2. Throws GenericSearchExhausted.
GenericChoice choose_generic(const RhsPlan& plan, int skip = 0, long bound = -1);
GenericChoice choose_generic(RankKind kind, long a, long M, int skip = 0);

/// Expands a plan to O(q^prec). Throws Error when a coefficient fails to be rational.
QSeries evaluate_plan(const RhsPlan& plan, const Monomial& zp, const Monomial& zpp, Exp prec);

QSeries rank_pair_rhs(long a, long M, const Monomial& zp, const Monomial& zpp, Exp prec);
QSeries m2_pair_rhs(long a, long M, const Monomial& zp, const Monomial& zpp, Exp prec);

/// Compares the oracle pair D(a,M) + D(a-1,M) (or the M2 analogue) with the closed formula.
VerificationReport verify_pair(long a, long M, RankKind kind, Exp prec);

/// Closed formula at the first and second admissible generic choices.
VerificationReport generic_independence(long a, long M, RankKind kind, Exp prec);

/// Any single deviation for odd M, solved from the closed pair formulas starting at
/// the pair a = (M+1)/2, which equals twice D((M-1)/2, M). Checked against the oracle
/// on its range (OracleMismatch otherwise).
QSeries single_deviation(long a, long M, RankKind kind, Exp prec, int oracle_range = 24);

/// Orthogonality instantiations used in deriving the pair formula for (a, M).
std::vector<VerificationReport> derivation_checks(long a, long M, RankKind kind, Exp prec);

using ReportJob = std::function<VerificationReport()>;

struct LemmaOrders {
  Exp relations = 50;   // switching, flip, orthogonality
  Exp long_range = 200;  // m(q,q^2,-1) = 1/2 and the triple product

  static LemmaOrders uniform(Exp order) { return {order, order}; }
};

/// Switching, flip and orthogonality relations for m, m(q,q^2,-1) = 1/2, the triple product,
/// and the oracle checks: closed forms for S against the rank tables and the pair sums over
/// roots of unity.
std::vector<ReportJob> lemma_jobs(const LemmaOrders& orders, int oracle_range = 24);

struct Section4Orders {
  Exp general = 60;
  Exp extended = 100;  // the M = 3 pair identities and the h relations
  Exp eta_form = 100;  // never below 48
  Exp progression_input = 120;

  static Section4Orders uniform(Exp order);
};

/// Identities for M = 3 and M = 6 with h, T, theta and eta quotients.
std::vector<ReportJob> section4_jobs(const Section4Orders& orders);

/// Pair formulas for one theorem (rank: a in 2..M, M2: a in 1..M-1), with their derivation steps,
/// generic-choice independence on five cases (order capped at 40) and, for the rank with M odd,
/// single deviations. M and a restrict the selection; by default M runs over 3..7 (rank) or 2..6 (M2).
std::vector<ReportJob> theorem_jobs(RankKind kind, std::optional<long> M, std::optional<long> a, Exp order);

/// Runs jobs on up to `threads` threads (0: one per hardware thread); results are sorted by identity_id (stable).
std::vector<VerificationReport> run_jobs(const std::vector<ReportJob>& jobs, int threads);

}  // namespace overrank
