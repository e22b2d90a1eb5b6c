#include "hqc/calculus.hpp"
#include "hqc/dsl.hpp"
#include "hqc/errors.hpp"

#include <cctype>

namespace hqc {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok type = Tok::End;
  std::size_t position = 0;
  std::string text;
  Rational value;      // Number
  unsigned primes = 0;  // Ident
};

std::string describe(const Token& t) {
  switch (t.type) {
    case Tok::Number:
      return "number '" + t.text + "'";
    case Tok::Ident:
      return "identifier '" + t.text + "'";
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.position = i;
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < text.size() && is_digit(text[j])) ++j;
      std::string num(text.substr(i, j - i));
      std::string den = "1";
      if (j < text.size() && text[j] == '/') {
        std::size_t d = j + 1;
        while (d < text.size() && is_digit(text[d])) ++d;
        if (d == j + 1) throw ParseError(j + 1, "expected denominator", "natural number");
        den = std::string(text.substr(j + 1, d - j - 1));
        j = d;
      }
      if (j < text.size() && (text[j] == '.' || is_ident_start(text[j]))) {
        throw ParseError(j, "unexpected character '" + std::string(1, text[j]) + "'",
                         "operator");
      }
      using boost::multiprecision::cpp_int;
      cpp_int denominator(den);
      if (denominator == 0) throw ParseError(i, "zero denominator", "nonzero denominator");
      t.type = Tok::Number;
      t.text = std::string(text.substr(i, j - i));
      t.value = Rational(cpp_int(num), denominator);
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      t.type = Tok::Ident;
      t.text = std::string(text.substr(i, j - i));
      while (j < text.size() && text[j] == '\'') {
        ++t.primes;
        ++j;
      }
      i = j;
    } else {
      switch (c) {
        case '+':
          t.type = Tok::Plus;
          break;
        case '-':
          t.type = Tok::Minus;
          break;
        case '*':
          t.type = Tok::Star;
          break;
        case '^':
          t.type = Tok::Caret;
          break;
        case '(':
          t.type = Tok::LParen;
          break;
        case ')':
          t.type = Tok::RParen;
          break;
        case ',':
          t.type = Tok::Comma;
          break;
        default:
          throw ParseError(i, "unexpected character '" + std::string(1, c) + "'", "operand");
      }
      t.text = std::string(1, c);
      ++i;
    }
    tokens.push_back(std::move(t));
  }
  Token end;
  end.type = Tok::End;
  end.position = text.size();
  tokens.push_back(end);
  return tokens;
}

bool is_generator_name(std::string_view name) {
  if (name.empty()) return false;
  if (name[0] != 'q' && name[0] != 'p' && name[0] != 'x' && name[0] != 'k') return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!is_digit(name[i])) return false;
  }
  return true;
}

int builtin_arity(std::string_view name) {
  if (name == "dag") return 1;
  if (name == "comm" || name == "pb" || name == "anderson" || name == "alex") return 2;
  return -1;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Ast parse_all() {
    Ast result = sum();
    if (peek().type != Tok::End) {
      throw ParseError(peek().position, "unexpected " + describe(peek()), "operator or end of input");
    }
    return result;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  void expect(Tok type, const std::string& what) {
    if (peek().type != type) {
      throw ParseError(peek().position, "expected " + what + ", found " + describe(peek()), what);
    }
    ++pos_;
  }

  Ast sum() {
    const std::size_t start = peek().position;
    std::vector<Ast> terms;
    terms.push_back(product());
    while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
      const Token op = advance();
      Ast rhs = product();
      if (op.type == Tok::Minus) {
        Ast neg;
        neg.kind = Ast::Kind::Neg;
        neg.position = op.position;
        neg.children.push_back(std::move(rhs));
        rhs = std::move(neg);
      }
      terms.push_back(std::move(rhs));
    }
    if (terms.size() == 1) return std::move(terms.front());
    Ast node;
    node.kind = Ast::Kind::Sum;
    node.position = start;
    node.children = std::move(terms);
    return node;
  }

  Ast product() {
    const std::size_t start = peek().position;
    std::vector<Ast> factors;
    factors.push_back(unary());
    while (peek().type == Tok::Star) {
      advance();
      factors.push_back(unary());
    }
    if (factors.size() == 1) return std::move(factors.front());
    Ast node;
    node.kind = Ast::Kind::Product;
    node.position = start;
    node.children = std::move(factors);
    return node;
  }

  Ast unary() {
    if (peek().type == Tok::Minus) {
      Ast node;
      node.kind = Ast::Kind::Neg;
      node.position = advance().position;
      node.children.push_back(unary());
      return node;
    }
    return power();
  }

  Ast power() {
    Ast base = atom();
    if (peek().type != Tok::Caret) return base;
    advance();
    const Token& exp = peek();
    if (exp.type != Tok::Number || denominator(exp.value) != 1 || exp.value < 1 ||
        exp.value > 1000000) {
      throw ParseError(exp.position, "exponent must be a natural number >= 1", "natural number");
    }
    Ast node;
    node.kind = Ast::Kind::Power;
    node.position = base.position;
    node.exponent = static_cast<unsigned>(numerator(exp.value));
    node.children.push_back(std::move(base));
    advance();
    return node;
  }

  Ast atom() {
    const Token& t = peek();
    Ast node;
    node.position = t.position;
    switch (t.type) {
      case Tok::Number:
        node.kind = Ast::Kind::Rational;
        node.value = t.value;
        advance();
        return node;
      case Tok::LParen: {
        advance();
        Ast inner = sum();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        return identifier();
      default:
        throw ParseError(t.position, "expected operand, found " + describe(t), "operand");
    }
  }

  Ast identifier() {
    const Token t = advance();
    Ast node;
    node.position = t.position;
    node.name = t.text;
    const bool call_follows = peek().type == Tok::LParen;

    if (t.text == "i" || is_generator_name(t.text)) {
      if (t.primes > 0 || call_follows) {
        throw ParseError(t.primes > 0 ? t.position + t.text.size() : peek().position,
                         "'" + t.text + "' cannot be applied", "operator");
      }
      if (t.text == "i") {
        node.kind = Ast::Kind::ImagUnit;
        return node;
      }
      node.kind = Ast::Kind::Symbol;
      node.index = 1;
      if (t.text.size() > 1) {
        const std::string digits = t.text.substr(1);
        node.index = digits.size() > 6 ? 0 : static_cast<unsigned>(std::stoul(digits));
      }
      return node;
    }

    if (const int arity = builtin_arity(t.text); arity > 0) {
      if (t.primes > 0) throw ParseError(t.position + t.text.size(), "builtin cannot take primes", "'('");
      expect(Tok::LParen, "'('");
      node.kind = Ast::Kind::Call;
      node.children.push_back(sum());
      while (peek().type == Tok::Comma) {
        advance();
        node.children.push_back(sum());
      }
      if (static_cast<int>(node.children.size()) != arity) {
        throw ParseError(peek().position,
                         t.text + " takes " + std::to_string(arity) + " argument(s)", "')'");
      }
      expect(Tok::RParen, "')'");
      return node;
    }

    if (call_follows || t.primes > 0) {
      expect(Tok::LParen, "'('");
      node.kind = Ast::Kind::FuncApp;
      node.index = t.primes;
      node.children.push_back(sum());
      expect(Tok::RParen, "')'");
      return node;
    }

    // Bound name; resolved during evaluation.
    node.kind = Ast::Kind::Symbol;
    node.index = 0;
    return node;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

LinearArg to_linear_arg(const HybridExpr& e, std::size_t position) {
  LinearArg arg;
  const HybridExpr canonical = canonicalize(e);
  for (const auto& t : canonical.terms()) {
    for (const auto& l : t.word) {
      if (std::holds_alternative<Momentum>(l)) {
        throw ValidationError("momentum is not allowed in a function argument", position);
      }
    }
    if (!t.coeff.is_real()) {
      throw ValidationError("function argument coefficients must be rational", position);
    }
    const Rational& c = t.coeff.re();
    const unsigned degree = t.degree();
    if (degree == 0) {
      arg.constant += c;
    } else if (degree == 1 && t.word.size() == 1 && std::holds_alternative<Position>(t.word[0])) {
      arg.q[std::get<Position>(t.word[0]).mode] += c;
    } else if (degree == 1 && t.word.empty()) {
      if (!t.classical.x.empty()) {
        arg.x[t.classical.x.begin()->first] += c;
      } else {
        arg.k[t.classical.k.begin()->first] += c;
      }
    } else {
      throw ValidationError("function argument must be linear in q, x, k", position);
    }
  }
  if (arg.is_zero()) throw ValidationError("function argument must not be zero", position);
  return arg;
}

class Evaluator {
 public:
  Evaluator(const TablePtr& table, const Environment& env, EvalMode mode)
      : table_(table), env_(env), mode_(mode) {}

  HybridExpr eval(const Ast& node) const {
    switch (node.kind) {
      case Ast::Kind::Sum: {
        HybridExpr acc = eval(node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) acc = plus(acc, eval(node.children[i]));
        return acc;
      }
      case Ast::Kind::Product: {
        HybridExpr acc = eval(node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) acc = times(acc, eval(node.children[i]));
        return acc;
      }
      case Ast::Kind::Power: {
        const HybridExpr base = eval(node.children.front());
        HybridExpr acc = base;
        for (unsigned i = 1; i < node.exponent; ++i) acc = times(acc, base);
        return acc;
      }
      case Ast::Kind::Neg:
        return mode_ == EvalMode::Raw ? raw_scale(Coefficient(-1), eval(node.children.front()))
                                      : scale(Coefficient(-1), eval(node.children.front()));
      case Ast::Kind::Rational:
        return HybridExpr::constant(table_, Coefficient(node.value));
      case Ast::Kind::ImagUnit:
        return HybridExpr::constant(table_, Coefficient::imaginary_unit());
      case Ast::Kind::Symbol:
        return symbol(node);
      case Ast::Kind::FuncApp:
        return function(node);
      case Ast::Kind::Call:
        return call(node);
    }
    throw ValidationError("unsupported syntax node", node.position);
  }

 private:
  HybridExpr plus(const HybridExpr& a, const HybridExpr& b) const {
    return mode_ == EvalMode::Raw ? raw_add(a, b) : add(a, b);
  }
  HybridExpr times(const HybridExpr& a, const HybridExpr& b) const {
    return mode_ == EvalMode::Raw ? raw_mul(a, b) : mul(a, b);
  }

  HybridExpr symbol(const Ast& node) const {
    if (node.index == 0 && !is_generator_name(node.name)) {
      auto it = env_.find(node.name);
      if (it == env_.end()) throw ValidationError("unknown symbol '" + node.name + "'", node.position);
      return it->second;
    }
    const char letter = node.name[0];
    const bool quantum = letter == 'q' || letter == 'p';
    const unsigned limit = quantum ? table_->quantum_modes() : table_->classical_dofs();
    if (node.index == 0 || node.index > limit) {
      throw ValidationError("symbol '" + node.name + "' out of range", node.position);
    }
    switch (letter) {
      case 'q':
        return HybridExpr::q(table_, node.index);
      case 'p':
        return HybridExpr::p(table_, node.index);
      case 'x':
        return HybridExpr::x(table_, node.index);
      default:
        return HybridExpr::k(table_, node.index);
    }
  }

  HybridExpr function(const Ast& node) const {
    const auto id = table_->find_function(node.name);
    if (!id) throw ValidationError("unknown function '" + node.name + "'", node.position);
    const Ast& arg_node = node.children.front();
    const HybridExpr arg = Evaluator(table_, env_, EvalMode::Canonical).eval(arg_node);
    return HybridExpr::function(table_, FuncFactor{*id, node.index, to_linear_arg(arg, arg_node.position)});
  }

  HybridExpr call(const Ast& node) const {
    std::vector<HybridExpr> args;
    for (const auto& child : node.children) args.push_back(eval(child));
    if (node.name == "dag") return dagger(args[0]);
    if (node.name == "comm") return commutator(args[0], args[1]);
    if (node.name == "pb") return poisson(args[0], args[1]);
    if (node.name == "anderson") return bracket(BracketKind::Anderson, args[0], args[1]);
    return bracket(BracketKind::Aleksandrov, args[0], args[1]);
  }

  const TablePtr& table_;
  const Environment& env_;
  EvalMode mode_;
};

}  // namespace

Ast parse_ast(std::string_view text) { return Parser(text).parse_all(); }

HybridExpr evaluate(const Ast& ast, const TablePtr& table, const Environment& env, EvalMode mode) {
  if (!table) throw ValidationError("expression requires a symbol table");
  HybridExpr result = Evaluator(table, env, mode).eval(ast);
  return mode == EvalMode::Canonical ? canonicalize(result) : result;
}

HybridExpr parse(std::string_view text, const TablePtr& table, const Environment& env) {
  return evaluate(parse_ast(text), table, env, EvalMode::Canonical);
}

HybridExpr parse_raw(std::string_view text, const TablePtr& table, const Environment& env) {
  return evaluate(parse_ast(text), table, env, EvalMode::Raw);
}

}  // namespace hqc
