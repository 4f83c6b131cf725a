#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "overrank/qseries.hpp"

namespace overrank {

enum class NodeKind {
  number,  // non-negative rational literal
  q,
  zeta,    // zeta(L)
  J,       // J(m)
  theta,   // j(x; q^t)
  m,       // m(x, q^t, z)
  delta,   // Delta(x, z1, z0; q^t)
  psi,     // Psi(k, n, x, z, z'; q^t)
  h,       // h(x; q^t)
  T,
  T2,
  dev,     // Dev(a, M)
  dev2,    // Dev2(a, M)
  pick,    // pick(e, r, m): coefficients of q^(mn+r), as a series in q^n
  add,
  sub,
  mul,
  div,
  neg,
  pow      // e^k, k an integer
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind = NodeKind::number;
  Rational number;
  std::vector<long> ints;  // zeta: L; J: m; psi: k, n; dev: a, M; pick: r, m; pow: exponent
  std::vector<Monomial> monos;
  Exp base = 1;
  std::vector<ExprPtr> args;
};

/// Recursive descent; throws SyntaxError with the byte offset, line and column of the failure.
ExprPtr parse(std::string_view input);

/// Canonical text; parse(print(e)) evaluates to the same series as e.
std::string print(const Expr& e);

/// e to O(q^prec). Subexpressions with negative valuation are evaluated with enough headroom
/// that the result is exact below prec whenever the kernels allow it. Kernel errors carry the
/// failing subexpression in Error::context().
QSeries eval(const Expr& e, Exp prec);

}  // namespace overrank
