#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "overrank/errors.hpp"
#include "overrank/expr.hpp"
#include "overrank/theta.hpp"

using namespace overrank;

namespace {

QSeries ev(const std::string& s, Exp prec) { return eval(*parse(s), prec); }

SyntaxError syntax_error(const std::string& s) {
  try {
    parse(s);
  } catch (const SyntaxError& e) {
    return e;
  }
  FAIL("no syntax error for " << s);
  return SyntaxError("", 0, 0, 0, {});
}

class TreeGen {
 public:
  explicit TreeGen(unsigned seed) : rng_(seed) {}

  ExprPtr tree(int depth) {
    if (depth == 0 || pick(3) == 0) return leaf();
    switch (pick(6)) {
      case 0: return bin(NodeKind::add, tree(depth - 1), tree(depth - 1));
      case 1: return bin(NodeKind::sub, tree(depth - 1), tree(depth - 1));
      case 2: return bin(NodeKind::mul, tree(depth - 1), tree(depth - 1));
      case 3: {
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::J;
        e->ints = {1 + pick(4)};
        return bin(NodeKind::div, tree(depth - 1), e);
      }
      case 4: {
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::neg;
        e->args = {tree(depth - 1)};
        return e;
      }
      default: {
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::pow;
        e->ints = {pick(4)};
        e->args = {tree(depth - 1)};
        return e;
      }
    }
  }

 private:
  std::mt19937 rng_;

  long pick(long n) { return std::uniform_int_distribution<long>(0, n - 1)(rng_); }

  static ExprPtr bin(NodeKind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  ExprPtr leaf() {
    auto e = std::make_shared<Expr>();
    const Monomial z3q(RootOfUnity(3, 1 + pick(2)), pick(5) - 2);
    switch (pick(9)) {
      case 0:
        e->kind = NodeKind::number;
        e->number = Rational(1 + pick(5), 1 + pick(3));
        break;
      case 1:
        e->kind = NodeKind::q;
        break;
      case 2:
        e->kind = NodeKind::zeta;
        e->ints = {3 + pick(2)};
        break;
      case 3:
        e->kind = NodeKind::J;
        e->ints = {1 + pick(4)};
        break;
      case 4:
        e->kind = NodeKind::theta;
        e->monos = {Monomial(RootOfUnity::minus_one(), pick(7) - 3)};
        e->base = 1 + pick(3);
        break;
      case 5:
        e->kind = NodeKind::m;
        e->monos = {z3q, Monomial::minus_one()};
        e->base = 1 + pick(3);
        break;
      case 6:
        e->kind = NodeKind::h;
        e->monos = {z3q};
        e->base = 1 + pick(2);
        break;
      case 7:
        e->kind = NodeKind::delta;
        e->monos = {z3q, Monomial::minus_one(), -Monomial::q(1)};
        e->base = 2;
        break;
      default:
        e->kind = NodeKind::dev;
        e->ints = {pick(3), 3};
        break;
    }
    return e;
  }
};

}  // namespace

TEST_CASE("parse shapes") {
  const ExprPtr e = parse("J(2)^4 / (J(1)^2 * J(6))");
  CHECK(e->kind == NodeKind::div);
  CHECK(e->args[0]->kind == NodeKind::pow);
  CHECK(e->args[1]->kind == NodeKind::mul);

  const ExprPtr m = parse("m(q^9, q^18, -1)");
  REQUIRE(m->kind == NodeKind::m);
  CHECK(m->monos[0] == Monomial::q(9));
  CHECK(m->base == 18);
  CHECK(m->monos[1] == Monomial::minus_one());

  const ExprPtr h = parse("h(q^6; q^9)");
  CHECK(h->kind == NodeKind::h);
  CHECK(h->base == 9);

  const ExprPtr d = parse("Delta(zeta(3)^2*q, zeta(3), -1; q^2)");
  CHECK(d->monos[0] == Monomial(RootOfUnity(3, 2), 1));
  CHECK(parse("Psi(2, 3, q^-1, -1, -1; q^2)")->monos[0] == Monomial::q(-1));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("-q^2")->kind == NodeKind::neg);
  CHECK(parse("-q^2")->args[0]->kind == NodeKind::pow);
  CHECK(parse("1 - 2 - 3")->args[0]->kind == NodeKind::sub);
  CHECK(parse("8/4/2")->args[0]->kind == NodeKind::div);
  CHECK(parse("1 + 2*3")->kind == NodeKind::add);
  CHECK(ev("8/4/2", 5) == QSeries::constant(CycloNum(1), 5));
  CHECK(ev("-q^2", 5) == QSeries::monomial(CycloNum(-1), 2, 5));
  CHECK(ev("(-q)^2", 5) == QSeries::monomial(CycloNum(1), 2, 5));
  CHECK(ev("2^-1", 5) == QSeries::constant(CycloNum(Rational(1, 2)), 5));
}

TEST_CASE("syntax errors carry positions") {
  SyntaxError e = syntax_error("J(1) + ");
  CHECK(e.offset() == 7);
  CHECK(e.line() == 1);
  CHECK(e.column() == 8);

  e = syntax_error("J(1)\n  * m(J(2), q, -1)");
  CHECK(e.line() == 2);
  CHECK(e.column() == 7);
  CHECK(e.expected() == std::vector<std::string>{"monomial"});
  CHECK(std::string(e.what()).find("monomials") != std::string::npos);

  CHECK(syntax_error("m(q + q^2, q, -1)").offset() == 2);
  CHECK(syntax_error("j(2*q; q)").offset() == 2);
  CHECK(syntax_error("foo(1)").column() == 1);
  CHECK(syntax_error("J(0)").offset() == 2);
  CHECK(syntax_error("J(1))").offset() == 4);
  CHECK(syntax_error("h(q; 2)").offset() == 5);
}

TEST_CASE("evaluation") {
  CHECK(ev("m(q, q^2, -1)", 50) == QSeries::constant(CycloNum(Rational(1, 2)), 50));
  CHECK(ev("j(-1; q) - 2*J(2)^2/J(1)", 100) == QSeries::zero(100));
  CHECK(ev("Dev(3,3) + Dev(2,3) + 2*q^2*h(q^6;q^9) - (1/3)*J(2)*J(3)^6*J(18)/(J(1)^2*J(6)^3*J(9)^2)", 60) ==
        QSeries::zero(60));
  CHECK(ev("J(1)", 8).str() == "1 - q - q^2 + q^5 + q^7 + O(q^8)");
  CHECK(ev("pick(Dev(0,3) - Dev(1,3), 1, 3) - 2*J(3)*J(6)/J(1)", 30) == QSeries::zero(30));
  CHECK(ev("zeta(3)^3", 4) == QSeries::constant(CycloNum(1), 4));
}

TEST_CASE("negative valuations are evaluated with headroom") {
  const QSeries s = ev("q^-5*J(1)", 10);
  CHECK(s.prec() == 10);
  CHECK(s.min_exp() == -5);
  CHECK(ev("q^-3*m(q^-2, q^3, -1)", 6).prec() == 6);
}

TEST_CASE("kernel errors name the subexpression") {
  try {
    ev("1 + m(q, q^2, q^2)", 10);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.context() == "m(q, q^2, q^2)");
  }
  try {
    ev("J(1)/(q - q)", 10);
    FAIL("expected NotInvertible");
  } catch (const NotInvertible& e) {
    CHECK(e.context() == "J(1)/(q - q)");
  }
}

TEST_CASE("print round trip on random trees") {
  TreeGen gen(7);
  for (int i = 0; i < 100; ++i) {
    const ExprPtr e = gen.tree(3);
    const std::string text = print(*e);
    CAPTURE(text);
    const ExprPtr back = parse(text);
    CHECK(print(*back) == text);
    CHECK(eval(*back, 12) == eval(*e, 12));
  }
}

TEST_CASE("larger orders never change earlier coefficients") {
  for (const char* s : {"J(2)^4/(J(1)^2*J(6))", "q^-2*h(zeta(3)*q; q^2)", "pick(J(1)^3, 1, 2)", "T() - Dev(0,2)"}) {
    const QSeries a = ev(s, 20), b = ev(s, 45);
    CHECK(b.truncated(20) == a);
  }
}
