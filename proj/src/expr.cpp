#include "vdf/expr.hpp"

#include <cctype>

#include "vdf/errors.hpp"

namespace vdf {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr Expr::literal(Rational v) {
  if (v < 0) throw ContractError("expression literals are nonnegative");
  Expr e{Kind::literal, std::move(v), {}, 0, {}, {}};
  return make(std::move(e));
}

ExprPtr Expr::symbol(std::string name) { return make(Expr{Kind::symbol, {}, std::move(name), 0, {}, {}}); }

ExprPtr Expr::yder(unsigned order) { return make(Expr{Kind::yder, {}, {}, order, {}, {}}); }

ExprPtr Expr::power(ExprPtr base, Rational exponent) {
  return make(Expr{Kind::power, {}, {}, 0, std::move(exponent), {std::move(base)}});
}

ExprPtr Expr::product(std::vector<ExprPtr> factors) {
  if (factors.size() < 2) throw ContractError("a product needs at least two factors");
  return make(Expr{Kind::product, {}, {}, 0, {}, std::move(factors)});
}

ExprPtr Expr::sum(std::vector<ExprPtr> terms) {
  if (terms.size() < 2) throw ContractError("a sum needs at least two terms");
  return make(Expr{Kind::sum, {}, {}, 0, {}, std::move(terms)});
}

ExprPtr Expr::neg(ExprPtr child) { return make(Expr{Kind::neg, {}, {}, 0, {}, {std::move(child)}}); }

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case Expr::Kind::literal:
      if (a.value != b.value) return false;
      break;
    case Expr::Kind::symbol:
      if (a.name != b.name) return false;
      break;
    case Expr::Kind::yder:
      if (a.order != b.order) return false;
      break;
    case Expr::Kind::power:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!equal(*a.children[i], *b.children[i])) return false;
  return true;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ExprPtr positioned(ExprPtr e, int line, int col) {
    auto copy = std::make_shared<Expr>(*e);
    copy->line = line;
    copy->column = col;
    return copy;
  }

  ExprPtr expr() {
    skip();
    int l = line_, c = col_;
    std::vector<ExprPtr> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(Expr::neg(term()));
      else
        break;
    }
    if (terms.size() == 1) return terms[0];
    return positioned(Expr::sum(std::move(terms)), l, c);
  }

  ExprPtr term() {
    skip();
    int l = line_, c = col_;
    std::vector<ExprPtr> factors{unary()};
    while (accept('*')) factors.push_back(unary());
    if (factors.size() == 1) return factors[0];
    return positioned(Expr::product(std::move(factors)), l, c);
  }

  ExprPtr unary() {
    skip();
    int l = line_, c = col_;
    if (accept('-')) return positioned(Expr::neg(unary()), l, c);
    return power();
  }

  ExprPtr power() {
    skip();
    int l = line_, c = col_;
    ExprPtr base = atom();
    while (accept('^')) base = positioned(Expr::power(base, exponent()), l, c);
    return base;
  }

  Rational exponent() {
    bool paren = accept('(');
    bool negative = accept('-');
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("exponent must be a rational number");
    Rational q = number();
    if (paren) expect(')');
    return negative ? Rational(-q) : q;
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      advance();
      std::size_t den = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
      if (den == pos_) fail("missing denominator");
    }
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  ExprPtr atom() {
    skip();
    int l = line_, c = col_;
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return positioned(Expr::literal(number()), l, c);
    if (ch == '(') {
      advance();
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) advance();
      std::string name(s_.substr(start, pos_ - start));
      if (name != "Y") return positioned(Expr::symbol(std::move(name)), l, c);
      unsigned order = 0;
      while (pos_ < s_.size() && s_[pos_] == '\'') {
        advance();
        ++order;
      }
      if (order == 0) {
        // Y^(k) is a derivative; Y^(p/q) or Y^k are powers handled by the caller.
        std::size_t save = pos_;
        int sl = line_, sc = col_;
        if (accept('^') && accept('(')) {
          skip();
          std::size_t d0 = pos_;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
          std::size_t d1 = pos_;
          if (d1 > d0 && accept(')')) {
            std::string digits(s_.substr(d0, d1 - d0));
            if (digits.size() > 6) fail("derivative order too large");
            return positioned(Expr::yder(static_cast<unsigned>(std::stoul(digits))), l, c);
          }
        }
        pos_ = save;
        line_ = sl;
        col_ = sc;
      }
      return positioned(Expr::yder(order), l, c);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool atomic(const Expr& e) {
  return e.kind == Expr::Kind::symbol || e.kind == Expr::Kind::yder ||
         (e.kind == Expr::Kind::literal && is_integer(e.value));
}

std::string print_exponent(const Rational& q) {
  if (is_integer(q)) return to_string(q);
  return "(" + to_string(q) + ")";
}

std::string wrap(const std::string& s) { return "(" + s + ")"; }

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::literal:
      return to_string(e.value);
    case Expr::Kind::symbol:
      return e.name;
    case Expr::Kind::yder:
      if (e.order <= 3) return "Y" + std::string(e.order, '\'');
      return "Y^(" + std::to_string(e.order) + ")";
    case Expr::Kind::power: {
      const Expr& b = *e.children[0];
      std::string base = print_expr(b);
      if (!atomic(b)) base = wrap(base);
      return base + "^" + print_exponent(e.exponent);
    }
    case Expr::Kind::product: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const Expr& c = *e.children[i];
        std::string s = print_expr(c);
        if (c.kind == Expr::Kind::sum || c.kind == Expr::Kind::product) s = wrap(s);
        out += (i ? "*" : "") + s;
      }
      return out;
    }
    case Expr::Kind::sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const Expr& c = *e.children[i];
        if (i > 0 && c.kind == Expr::Kind::neg) {
          const Expr& inner = *c.children[0];
          std::string s = print_expr(inner);
          if (inner.kind == Expr::Kind::sum) s = wrap(s);
          out += " - " + s;
          continue;
        }
        std::string s = print_expr(c);
        if (c.kind == Expr::Kind::sum) s = wrap(s);
        out += (i ? " + " : "") + s;
      }
      return out;
    }
    case Expr::Kind::neg: {
      const Expr& c = *e.children[0];
      std::string s = print_expr(c);
      if (c.kind == Expr::Kind::sum || c.kind == Expr::Kind::product) s = wrap(s);
      return "-" + s;
    }
  }
  return "";
}

Series lower_series(const Expr& e, const FieldPtr& field) {
  switch (e.kind) {
    case Expr::Kind::literal:
      return Series::constant(field, e.value);
    case Expr::Kind::symbol:
      if (!field->index_of(e.name))
        throw ParseError("unbound symbol '" + e.name + "'", e.line, e.column);
      return Series::generator(field, e.name);
    case Expr::Kind::yder:
      throw ParseError("the unknown Y cannot occur in a series", e.line, e.column);
    case Expr::Kind::power: {
      const Expr& b = *e.children[0];
      if (b.kind == Expr::Kind::symbol) {
        if (!field->index_of(b.name))
          throw ParseError("unbound symbol '" + b.name + "'", b.line, b.column);
        return Series::generator(field, b.name, e.exponent);
      }
      if (!is_integer(e.exponent))
        throw ParseError("rational exponents are only allowed on generators", e.line, e.column);
      return lower_series(b, field).pow(e.exponent.get_num().get_si());
    }
    case Expr::Kind::product: {
      Series out = lower_series(*e.children[0], field);
      for (std::size_t i = 1; i < e.children.size(); ++i) out = out * lower_series(*e.children[i], field);
      return out;
    }
    case Expr::Kind::sum: {
      Series out = lower_series(*e.children[0], field);
      for (std::size_t i = 1; i < e.children.size(); ++i) out += lower_series(*e.children[i], field);
      return out;
    }
    case Expr::Kind::neg:
      return -lower_series(*e.children[0], field);
  }
  return Series(field);
}

DiffPoly lower_poly(const Expr& e, const Derivation& d) {
  switch (e.kind) {
    case Expr::Kind::literal:
    case Expr::Kind::symbol:
      return DiffPoly::constant(d, lower_series(e, d.field));
    case Expr::Kind::yder:
      return DiffPoly::y(d, e.order);
    case Expr::Kind::power: {
      const Expr& b = *e.children[0];
      if (b.kind == Expr::Kind::symbol) return DiffPoly::constant(d, lower_series(e, d.field));
      if (!is_integer(e.exponent))
        throw ParseError("rational exponents are only allowed on generators", e.line, e.column);
      DiffPoly base = lower_poly(b, d);
      long n = e.exponent.get_num().get_si();
      if (n >= 0) return base.pow(static_cast<unsigned>(n));
      auto it = base.terms().find(MultiIndex{});
      if (base.terms().size() != 1 || it == base.terms().end())
        throw ContractError("negative power of a polynomial involving Y");
      return DiffPoly::constant(d, it->second.pow(n));
    }
    case Expr::Kind::product: {
      DiffPoly out = lower_poly(*e.children[0], d);
      for (std::size_t i = 1; i < e.children.size(); ++i) out = out * lower_poly(*e.children[i], d);
      return out;
    }
    case Expr::Kind::sum: {
      DiffPoly out = lower_poly(*e.children[0], d);
      for (std::size_t i = 1; i < e.children.size(); ++i) out += lower_poly(*e.children[i], d);
      return out;
    }
    case Expr::Kind::neg:
      return -lower_poly(*e.children[0], d);
  }
  return DiffPoly(d);
}

Series parse_series(std::string_view text, const FieldPtr& field) {
  return lower_series(*parse_expr(text), field);
}

DiffPoly parse_poly(std::string_view text, const FieldPtr& field) {
  return lower_poly(*parse_expr(text), Derivation(field));
}

DiffPoly parse_poly(std::string_view text, const Derivation& d) { return lower_poly(*parse_expr(text), d); }

}  // namespace vdf
