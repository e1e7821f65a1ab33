#include "gha/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace gha {

namespace {

[[noreturn]] void fail(const SourcePos& pos, const std::string& message) {
  throw InputError("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message);
}

struct Token {
  enum class Type { integer, decimal, ident, op, end };
  Type type;
  std::string text;
  SourcePos pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t k = 0;
  const auto advance = [&](std::size_t count) {
    for (; count > 0; --count, ++k) {
      if (s[k] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  const auto digit = [&](std::size_t j) { return j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])); };
  while (k < s.size()) {
    const char c = s[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (digit(k) || (c == '.' && digit(k + 1))) {
      std::size_t j = k;
      bool decimal = false;
      while (digit(j)) ++j;
      if (j < s.size() && s[j] == '.') {
        decimal = true;
        ++j;
        while (digit(j)) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t e = j + 1;
        if (e < s.size() && (s[e] == '+' || s[e] == '-')) ++e;
        if (digit(e)) {
          decimal = true;
          j = e;
          while (digit(j)) ++j;
        }
      }
      out.push_back({decimal ? Token::Type::decimal : Token::Type::integer, s.substr(k, j - k), start});
      advance(j - k);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = k;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Type::ident, s.substr(k, j - k), start});
      advance(j - k);
    } else if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Type::op, std::string(1, c), start});
      advance(1);
    } else {
      fail(start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Type::end, "", pos});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

  Expr parse() {
    if (peek().type == Token::Type::end) fail(peek().pos, "empty expression");
    Expr e = sum();
    if (peek().type != Token::Type::end) {
      fail(peek().pos, "expected an operator before '" + peek().text + "' (use '*' between factors)");
    }
    return e;
  }

 private:
  const Token& peek() const { return t_[k_]; }
  bool at_op(char c) const { return peek().type == Token::Type::op && peek().text[0] == c; }
  Token take() { return t_[k_++]; }

  void expect(char c) {
    if (!at_op(c)) fail(peek().pos, std::string("expected '") + c + "'");
    ++k_;
  }

  unsigned integer(const char* what) {
    if (at_op('-')) fail(peek().pos, std::string("negative ") + what);
    if (peek().type != Token::Type::integer) fail(peek().pos, std::string("expected a nonnegative integer ") + what);
    const Token tok = take();
    if (tok.text.size() > 9) fail(tok.pos, std::string(what) + " is too large");
    return static_cast<unsigned>(std::stoul(tok.text));
  }

  static Expr binary(Expr::Kind k, SourcePos pos, Expr a, Expr b) {
    Expr e{k, pos, "", 0, 0, {}};
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  Expr sum() {
    Expr e = product();
    while (at_op('+') || at_op('-')) {
      const Token op = take();
      e = binary(op.text[0] == '+' ? Expr::Kind::add : Expr::Kind::sub, op.pos, std::move(e), product());
    }
    return e;
  }

  Expr product() {
    Expr e = unary();
    while (at_op('*') || at_op('/')) {
      const Token op = take();
      e = binary(op.text[0] == '*' ? Expr::Kind::mul : Expr::Kind::div, op.pos, std::move(e), unary());
    }
    return e;
  }

  Expr unary() {
    if (at_op('-')) {
      const Token op = take();
      Expr e{Expr::Kind::neg, op.pos, "", 0, 0, {}};
      e.args.push_back(unary());
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!at_op('^')) return base;
    const Token op = take();
    Expr e{Expr::Kind::pow, op.pos, "", 0, integer("exponent"), {}};
    e.args.push_back(std::move(base));
    if (at_op('^')) fail(peek().pos, "chained powers need parentheses");
    return e;
  }

  Expr atom() {
    const Token tok = peek();
    switch (tok.type) {
      case Token::Type::integer:
        ++k_;
        return {Expr::Kind::integer, tok.pos, tok.text, 0, 0, {}};
      case Token::Type::decimal:
        ++k_;
        return {Expr::Kind::decimal, tok.pos, tok.text, 0, 0, {}};
      case Token::Type::ident: {
        ++k_;
        if (tok.text == "i") return {Expr::Kind::imaginary_unit, tok.pos, tok.text, 0, 0, {}};
        if (tok.text == "zeta") {
          expect('(');
          const unsigned n = integer("conductor");
          if (n == 0) fail(tok.pos, "zeta(0) is undefined");
          expect(')');
          return {Expr::Kind::zeta, tok.pos, tok.text, n, 0, {}};
        }
        if (tok.text.size() == 1 && std::string("xhyz").find(tok.text[0]) != std::string::npos) {
          return {Expr::Kind::symbol, tok.pos, tok.text, 0, 0, {}};
        }
        fail(tok.pos, "unknown symbol '" + tok.text + "'");
      }
      case Token::Type::op:
        if (tok.text[0] == '(') {
          ++k_;
          Expr e = sum();
          expect(')');
          return e;
        }
        fail(tok.pos, "unexpected '" + tok.text + "'");
      case Token::Type::end:
        fail(tok.pos, "unexpected end of input");
    }
    fail(tok.pos, "unreachable");
  }

  std::vector<Token> t_;
  std::size_t k_ = 0;
};

void check_field(const Expr& e, const Scalar& s, const ParseOptions& o) {
  if (!o.conductor || s.backend() == Backend::approx) return;
  const unsigned n = *o.conductor, c = s.conductor();
  // Q(zeta_N) = Q(zeta_2N) for odd N.
  if (n % c == 0 || (n % 2 == 1 && (2 * n) % c == 0)) return;
  fail(e.pos, "literal '" + (e.kind == Expr::Kind::zeta ? "zeta(" + std::to_string(e.conductor) + ")" : e.text) +
                  "' is not in Q(zeta_" + std::to_string(n) + ")");
}

Scalar literal(const Expr& e, Backend b, const ParseOptions& o) {
  Scalar s;
  switch (e.kind) {
    case Expr::Kind::integer:
      s = Scalar::rational(Rational(mpz_class(e.text)), b);
      break;
    case Expr::Kind::decimal:
      if (b == Backend::exact) fail(e.pos, "decimal literal '" + e.text + "' needs the approx backend");
      s = Scalar::approx(std::strtod(e.text.c_str(), nullptr));
      break;
    case Expr::Kind::imaginary_unit:
      s = b == Backend::approx ? Scalar::approx(0.0, 1.0) : Scalar::zeta(4, 1);
      break;
    case Expr::Kind::zeta:
      s = Scalar::zeta(e.conductor, 1, b);
      break;
    default:
      fail(e.pos, "not a literal");
  }
  check_field(e, s, o);
  return s;
}

template <typename V>
V scaled(const V& v, const Scalar& s) {
  if constexpr (std::is_same_v<V, Scalar>) {
    return v * s;
  } else {
    return v.scale(s);
  }
}

Scalar constant_value(const Expr& e, Backend b, const ParseOptions& o);

/// Folds the tree with `leaf` for literals and symbols.
template <typename V, typename Leaf>
V fold(const Expr& e, const Leaf& leaf, Backend b, const ParseOptions& o) {
  switch (e.kind) {
    case Expr::Kind::add:
      return fold<V>(e.args[0], leaf, b, o) + fold<V>(e.args[1], leaf, b, o);
    case Expr::Kind::sub:
      return fold<V>(e.args[0], leaf, b, o) - fold<V>(e.args[1], leaf, b, o);
    case Expr::Kind::mul:
      return fold<V>(e.args[0], leaf, b, o) * fold<V>(e.args[1], leaf, b, o);
    case Expr::Kind::div: {
      const Scalar d = constant_value(e.args[1], b, o);
      if (d.is_zero()) fail(e.pos, "division by zero");
      return scaled(fold<V>(e.args[0], leaf, b, o), d.inverse());
    }
    case Expr::Kind::neg:
      return -fold<V>(e.args[0], leaf, b, o);
    case Expr::Kind::pow:
      return fold<V>(e.args[0], leaf, b, o).pow(e.exponent);
    default:
      return leaf(e);
  }
}

Scalar constant_value(const Expr& e, Backend b, const ParseOptions& o) {
  return fold<Scalar>(
      e,
      [&](const Expr& leaf) {
        if (leaf.kind == Expr::Kind::symbol) fail(leaf.pos, "only constants may appear in a divisor or scalar");
        return literal(leaf, b, o);
      },
      b, o);
}

Generator generator_of(const std::string& name) {
  switch (name[0]) {
    case 'x':
      return Generator::x;
    case 'h':
      return Generator::h;
    case 'y':
      return Generator::y;
    default:
      return Generator::z;
  }
}

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(tokenize(text)).parse(); }

bool has_decimal_literal(const std::string& text) {
  try {
    for (const auto& t : tokenize(text)) {
      if (t.type == Token::Type::decimal) return true;
    }
  } catch (const InputError&) {
  }
  return false;
}

Scalar parse_scalar(const std::string& text, const ParseOptions& opts) {
  return constant_value(parse_expr(text), opts.backend, opts);
}

Poly parse_poly(const std::string& text, const ParseOptions& opts) {
  const Backend b = opts.backend;
  return fold<Poly>(
      parse_expr(text),
      [&](const Expr& leaf) {
        if (leaf.kind != Expr::Kind::symbol) return Poly::constant(literal(leaf, b, opts));
        if (leaf.text != "h") fail(leaf.pos, "symbol '" + leaf.text + "' is not allowed in a polynomial in h");
        return Poly::identity(b);
      },
      b, opts);
}

Element lower(const Expr& e, const PresentationPtr& p, const ParseOptions& opts) {
  const Backend b = p->backend();
  return fold<Element>(
      e,
      [&](const Expr& leaf) {
        if (leaf.kind == Expr::Kind::symbol) return Element::generator(p, generator_of(leaf.text));
        return Element::scalar(p, literal(leaf, b, opts));
      },
      b, opts);
}

Element parse_element(const std::string& text, const PresentationPtr& p, const ParseOptions& opts) {
  return lower(parse_expr(text), p, opts);
}

}  // namespace gha
