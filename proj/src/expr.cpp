#include "overrank/expr.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "overrank/appell_lerch.hpp"
#include "overrank/errors.hpp"
#include "overrank/oracle.hpp"
#include "overrank/theta.hpp"

namespace overrank {

namespace {

const char* const monomial_hint =
    "arguments of j, m, Delta, Psi and h must be monomials such as -q^3, zeta(3)*q or -1";

std::shared_ptr<Expr> node(NodeKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

ExprPtr binary(NodeKind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a), std::move(b)};
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'", {"operator", "end of input"});
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected,
                         std::size_t at = std::string_view::npos) const {
    if (at == std::string_view::npos) at = pos_;
    int line = 1, column = 1;
    for (std::size_t i = 0; i < at && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError(message, at, line, column, std::move(expected));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(pos_ < s_.size() ? "unexpected character '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input",
                         {"'" + std::string(1, c) + "'"});
  }
  bool at_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string_view peek_ident() {
    skip();
    std::size_t end = pos_;
    if (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) {
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    }
    return s_.substr(pos_, end - pos_);
  }

  long integer() {
    if (!at_digit()) fail(pos_ < s_.size() ? "expected an integer" : "unexpected end of input", {"integer"});
    long v = 0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("integer out of range", {});
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }
  long signed_int() {
    if (accept('(')) {
      const long v = signed_int();
      expect(')');
      return v;
    }
    return accept('-') ? -integer() : integer();
  }
  long positive_int() {
    const std::size_t at = (skip(), pos_);
    const long v = integer();
    if (v <= 0) fail("expected a positive integer", {"positive integer"}, at);
    return v;
  }

  // q or q^t
  Exp base() {
    if (peek_ident() != "q") fail("expected q or q^t", {"q"});
    pos_ += 1;
    return accept('^') ? positive_int() : 1;
  }

  Monomial mono() {
    skip();
    const std::size_t start = pos_;
    auto bad = [&]() { fail(monomial_hint, {"monomial"}, start); };
    const bool negative = accept('-');
    RootOfUnity u;
    Exp e = 0;
    bool need_q = true;
    if (at_digit()) {
      if (integer() != 1) bad();
      need_q = false;
    } else if (peek_ident() == "zeta") {
      pos_ += 4;
      expect('(');
      const long level = positive_int();
      expect(')');
      const long k = accept('^') ? signed_int() : 1;
      u = RootOfUnity(level, k);
      need_q = accept('*');
    }
    if (need_q) {
      if (peek_ident() != "q") bad();
      pos_ += 1;
      e = accept('^') ? signed_int() : 1;
    }
    skip();
    if (pos_ >= s_.size() || (s_[pos_] != ',' && s_[pos_] != ';' && s_[pos_] != ')')) bad();
    Monomial m(u, e);
    return negative ? -m : m;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+')) e = binary(NodeKind::add, e, term());
      else if (accept('-')) e = binary(NodeKind::sub, e, term());
      else return e;
    }
  }
  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (accept('*')) e = binary(NodeKind::mul, e, unary());
      else if (accept('/')) e = binary(NodeKind::div, e, unary());
      else return e;
    }
  }
  ExprPtr unary() {
    if (accept('-')) {
      auto e = node(NodeKind::neg);
      e->args = {unary()};
      return e;
    }
    return power();
  }
  ExprPtr power() {
    ExprPtr b = primary();
    if (!accept('^')) return b;
    auto e = node(NodeKind::pow);
    e->ints = {signed_int()};
    e->args = {std::move(b)};
    return e;
  }

  ExprPtr primary() {
    skip();
    if (accept('(')) {
      // (n/d) is a rational literal
      const std::size_t save = pos_;
      if (at_digit()) {
        const long n = integer();
        if (accept('/') && at_digit()) {
          const long d = integer();
          if (d != 0 && accept(')')) {
            auto e = node(NodeKind::number);
            e->number = Rational(n, d);
            return e;
          }
        }
      }
      pos_ = save;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (at_digit()) {
      auto e = node(NodeKind::number);
      e->number = Rational(integer());
      return e;
    }
    const std::size_t at = pos_;
    const std::string name(peek_ident());
    if (name.empty())
      fail(pos_ < s_.size() ? "unexpected character '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input",
           {"number", "q", "function", "'('", "'-'"});
    pos_ += name.size();
    if (name == "q") return node(NodeKind::q);
    auto e = std::make_shared<Expr>();
    if (name == "zeta") {
      e->kind = NodeKind::zeta;
      expect('(');
      e->ints = {positive_int()};
    } else if (name == "J") {
      e->kind = NodeKind::J;
      expect('(');
      e->ints = {positive_int()};
    } else if (name == "j" || name == "h") {
      e->kind = name == "j" ? NodeKind::theta : NodeKind::h;
      expect('(');
      e->monos = {mono()};
      expect(';');
      e->base = base();
    } else if (name == "m") {
      e->kind = NodeKind::m;
      expect('(');
      e->monos.push_back(mono());
      expect(',');
      e->base = base();
      expect(',');
      e->monos.push_back(mono());
    } else if (name == "Delta") {
      e->kind = NodeKind::delta;
      expect('(');
      for (int i = 0; i < 3; ++i) {
        if (i) expect(',');
        e->monos.push_back(mono());
      }
      expect(';');
      e->base = base();
    } else if (name == "Psi") {
      e->kind = NodeKind::psi;
      expect('(');
      e->ints.push_back(signed_int());
      expect(',');
      e->ints.push_back(positive_int());
      for (int i = 0; i < 3; ++i) {
        expect(',');
        e->monos.push_back(mono());
      }
      expect(';');
      e->base = base();
    } else if (name == "T" || name == "T2") {
      e->kind = name == "T" ? NodeKind::T : NodeKind::T2;
      expect('(');
    } else if (name == "Dev" || name == "Dev2") {
      e->kind = name == "Dev" ? NodeKind::dev : NodeKind::dev2;
      expect('(');
      e->ints.push_back(signed_int());
      expect(',');
      e->ints.push_back(positive_int());
    } else if (name == "pick") {
      e->kind = NodeKind::pick;
      expect('(');
      e->args.push_back(expr());
      expect(',');
      e->ints.push_back(signed_int());
      expect(',');
      e->ints.push_back(positive_int());
    } else {
      fail("unknown name '" + name + "'",
           {"q", "zeta", "J", "j", "m", "Delta", "Psi", "h", "T", "T2", "Dev", "Dev2", "pick"}, at);
    }
    expect(')');
    return e;
  }
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case NodeKind::add:
    case NodeKind::sub:
      return 1;
    case NodeKind::mul:
    case NodeKind::div:
      return 2;
    case NodeKind::neg:
      return 3;
    case NodeKind::pow:
      return 4;
    default:
      return 5;
  }
}

std::string base_str(Exp b) { return b == 1 ? "q" : "q^" + std::to_string(b); }

std::string print_child(const Expr& e, bool paren) {
  return paren ? "(" + print(e) + ")" : print(e);
}

}  // namespace

ExprPtr parse(std::string_view input) { return Parser(input).run(); }

std::string print(const Expr& e) {
  const auto& a = e.args;
  switch (e.kind) {
    case NodeKind::number:
      return e.number.is_integer() ? e.number.str() : "(" + e.number.str() + ")";
    case NodeKind::q:
      return "q";
    case NodeKind::zeta:
      return "zeta(" + std::to_string(e.ints[0]) + ")";
    case NodeKind::J:
      return "J(" + std::to_string(e.ints[0]) + ")";
    case NodeKind::theta:
      return "j(" + e.monos[0].str() + "; " + base_str(e.base) + ")";
    case NodeKind::h:
      return "h(" + e.monos[0].str() + "; " + base_str(e.base) + ")";
    case NodeKind::m:
      return "m(" + e.monos[0].str() + ", " + base_str(e.base) + ", " + e.monos[1].str() + ")";
    case NodeKind::delta:
      return "Delta(" + e.monos[0].str() + ", " + e.monos[1].str() + ", " + e.monos[2].str() + "; " +
             base_str(e.base) + ")";
    case NodeKind::psi:
      return "Psi(" + std::to_string(e.ints[0]) + ", " + std::to_string(e.ints[1]) + ", " + e.monos[0].str() + ", " +
             e.monos[1].str() + ", " + e.monos[2].str() + "; " + base_str(e.base) + ")";
    case NodeKind::T:
      return "T()";
    case NodeKind::T2:
      return "T2()";
    case NodeKind::dev:
    case NodeKind::dev2:
      return std::string(e.kind == NodeKind::dev ? "Dev(" : "Dev2(") + std::to_string(e.ints[0]) + ", " +
             std::to_string(e.ints[1]) + ")";
    case NodeKind::pick:
      return "pick(" + print(*a[0]) + ", " + std::to_string(e.ints[0]) + ", " + std::to_string(e.ints[1]) + ")";
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div: {
      const int p = precedence(e);
      const char* op = e.kind == NodeKind::add ? " + " : e.kind == NodeKind::sub ? " - " : e.kind == NodeKind::mul ? "*" : "/";
      return print_child(*a[0], precedence(*a[0]) < p) + op + print_child(*a[1], precedence(*a[1]) <= p);
    }
    case NodeKind::neg:
      return "-" + print_child(*a[0], precedence(*a[0]) < 3);
    case NodeKind::pow: {
      const long k = e.ints[0];
      return print_child(*a[0], precedence(*a[0]) <= 4) + "^" + (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k));
    }
  }
  return {};
}

namespace {

QSeries eval_at(const Expr& e, Exp W) {
  const auto& a = e.args;
  try {
    switch (e.kind) {
      case NodeKind::number:
        return QSeries::constant(CycloNum(e.number), W);
      case NodeKind::q:
        return QSeries::monomial(CycloNum(1), 1, W);
      case NodeKind::zeta:
        return QSeries::constant(zeta(e.ints[0], 1), W);
      case NodeKind::J:
        return j_quotient({{e.ints[0], 1}}, W);
      case NodeKind::theta:
        return theta_j(e.monos[0], e.base, W);
      case NodeKind::h:
        return h_series(e.monos[0], e.base, W);
      case NodeKind::m:
        return m_series(e.monos[0], e.base, e.monos[1], W);
      case NodeKind::delta:
        return delta(e.monos[0], e.monos[1], e.monos[2], e.base, W);
      case NodeKind::psi:
        return psi(e.ints[0], e.ints[1], e.monos[0], e.monos[1], e.monos[2], e.base, W);
      case NodeKind::T:
        return T_series(W);
      case NodeKind::T2:
        return T2_series(W);
      case NodeKind::dev:
      case NodeKind::dev2:
        return deviation(e.ints[0], e.ints[1], e.kind == NodeKind::dev ? RankKind::rank : RankKind::m2, W);
      case NodeKind::pick: {
        const Exp r = e.ints[0], m = e.ints[1];
        return extract_progression(eval_at(*a[0], checked_add(checked_mul(m, W), r)), r, m);
      }
      case NodeKind::add:
        return eval_at(*a[0], W) + eval_at(*a[1], W);
      case NodeKind::sub:
        return eval_at(*a[0], W) - eval_at(*a[1], W);
      case NodeKind::mul:
        return eval_at(*a[0], W) * eval_at(*a[1], W);
      case NodeKind::div:
        return eval_at(*a[0], W) / eval_at(*a[1], W);
      case NodeKind::neg:
        return eval_at(*a[0], W) * CycloNum(-1);
      case NodeKind::pow: {
        const long k = e.ints[0];
        const Expr& b = *a[0];
        if (b.kind == NodeKind::q) return QSeries::monomial(CycloNum(1), k, W);
        if (b.kind == NodeKind::zeta) return QSeries::constant(zeta(b.ints[0], k), W);
        return eval_at(b, W).pow(k);
      }
    }
  } catch (Error& ex) {
    if (ex.context().empty()) ex.set_context(print(e));
    throw;
  }
  return QSeries::zero(W);
}

}  // namespace

QSeries eval(const Expr& e, Exp prec) {
  Exp W = prec;
  Exp last = std::numeric_limits<Exp>::min();
  for (int attempt = 0;; ++attempt) {
    QSeries r = eval_at(e, W);
    if (r.prec() >= prec) return r.truncated(prec);
    if (attempt == 8 || r.prec() <= last) return r;
    last = r.prec();
    W = checked_add(W, prec - r.prec());
  }
}

}  // namespace overrank
