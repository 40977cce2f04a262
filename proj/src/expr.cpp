#include "gacalc/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "gacalc/analytic.hpp"

namespace gacalc {

// ---------------------------------------------------------------- tokenizer

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digit = [&](std::size_t k) { return k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])); };
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (digit(i) || (c == '.' && digit(i + 1))) {
      const std::size_t start = i;
      while (digit(i)) ++i;
      if (i < text.size() && text[i] == '.') {
        const std::size_t dot = i;
        ++i;
        if (!digit(i)) throw ParseError("malformed number", dot + 1);
        while (digit(i)) ++i;
        if (i < text.size() && text[i] == '.') throw ParseError("malformed number", dot + 1);
      }
      if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        throw ParseError("malformed number (use '*' between a number and a name)", i + 1);
      out.push_back({Token::Kind::number, std::string(text.substr(start, i - start)), col});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      out.push_back({Token::Kind::identifier, std::string(text.substr(start, i - start)), col});
      continue;
    }
    switch (c) {
      case '+': case '-': case '*': case '|': case '^': case '~': case '/':
        out.push_back({Token::Kind::op, std::string(1, c), col});
        break;
      case '(':
        out.push_back({Token::Kind::lparen, "(", col});
        break;
      case ')':
        out.push_back({Token::Kind::rparen, ")", col});
        break;
      case ',':
        out.push_back({Token::Kind::comma, ",", col});
        break;
      default:
        throw ParseError(std::string("illegal character '") + c + "'", col);
    }
    ++i;
  }
  return out;
}

// ------------------------------------------------------------------- parser

namespace {

struct FunctionInfo {
  std::string_view name;
  int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"inv", 1},  {"rev", 1},       {"dual", 1},  {"undual", 1}, {"hodge", 1}, {"grade", 2}, {"pow", 2},
    {"norm", 1}, {"normalize", 1}, {"clean", 1}, {"push", 1},   {"pull", 1},  {"involute", 1}, {"conj", 1},
};

ExprPtr make(Expr::Kind kind, std::string text, std::size_t column, std::vector<ExprPtr> args = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->text = std::move(text);
  e->column = column;
  e->args = std::move(args);
  return e;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : t_(tokens) {}

  ExprPtr run() {
    if (t_.empty()) throw ParseError("empty expression", 1);
    ExprPtr e = sum();
    if (pos_ < t_.size()) unexpected();
    return e;
  }

 private:
  const Token* peek() const { return pos_ < t_.size() ? &t_[pos_] : nullptr; }
  bool at_op(std::string_view ops) const {
    const Token* t = peek();
    return t && t->kind == Token::Kind::op && ops.find(t->text[0]) != std::string_view::npos;
  }
  std::size_t end_column() const { return t_.empty() ? 1 : t_.back().column + t_.back().text.size(); }

  [[noreturn]] void unexpected() const {
    const Token* t = peek();
    if (!t) throw ParseError("unexpected end of expression", end_column());
    if (t->kind == Token::Kind::op && t->text == "/") throw ParseError("division operator not defined; use inv()", t->column);
    if (t->kind == Token::Kind::rparen) throw ParseError("unbalanced ')'", t->column);
    throw ParseError("unexpected '" + t->text + "'", t->column);
  }

  void expect(Token::Kind kind, const char* what) {
    const Token* t = peek();
    if (!t || t->kind != kind) {
      if (!t && kind == Token::Kind::rparen) throw ParseError("missing ')'", end_column());
      if (t && t->kind == Token::Kind::op && t->text == "/") unexpected();
      throw ParseError(std::string("expected ") + what, t ? t->column : end_column());
    }
    ++pos_;
  }

  ExprPtr sum() {
    ExprPtr lhs = product();
    while (at_op("+-")) {
      const Token& op = t_[pos_++];
      lhs = make(Expr::Kind::binary, op.text, op.column, {lhs, product()});
    }
    if (at_op("/")) unexpected();
    return lhs;
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    while (at_op("*|^")) {
      const Token& op = t_[pos_++];
      lhs = make(Expr::Kind::binary, op.text, op.column, {lhs, unary()});
    }
    if (at_op("/")) unexpected();
    return lhs;
  }

  ExprPtr unary() {
    if (at_op("-~")) {
      const Token& op = t_[pos_++];
      return make(Expr::Kind::unary, op.text, op.column, {unary()});
    }
    return primary();
  }

  ExprPtr primary() {
    const Token* t = peek();
    if (!t) unexpected();
    switch (t->kind) {
      case Token::Kind::number:
        ++pos_;
        return make(Expr::Kind::number, t->text, t->column);
      case Token::Kind::identifier: {
        ++pos_;
        const Token* next = peek();
        if (!next || next->kind != Token::Kind::lparen) return make(Expr::Kind::symbol, t->text, t->column);
        auto arity = function_arity(t->text);
        if (!arity) throw ParseError("unknown function '" + t->text + "'", t->column);
        ++pos_;
        std::vector<ExprPtr> args;
        const Token* after = peek();
        if (!after || after->kind != Token::Kind::rparen) {
          args.push_back(sum());
          while (peek() && peek()->kind == Token::Kind::comma) {
            ++pos_;
            args.push_back(sum());
          }
        }
        expect(Token::Kind::rparen, "')' or ','");
        if (static_cast<int>(args.size()) != *arity)
          throw ParseError(t->text + "() takes " + std::to_string(*arity) + " argument" + (*arity == 1 ? "" : "s") +
                               ", got " + std::to_string(args.size()),
                           t->column);
        return make(Expr::Kind::call, t->text, t->column, std::move(args));
      }
      case Token::Kind::lparen: {
        ++pos_;
        ExprPtr inner = sum();
        expect(Token::Kind::rparen, "')'");
        return inner;
      }
      default:
        unexpected();
    }
  }

  const std::vector<Token>& t_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<int> function_arity(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return f.arity;
  if (analytic_fn_from_name(name)) return 1;
  return std::nullopt;
}

ExprPtr parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

ExprPtr parse(std::string_view text) { return parse(tokenize(text)); }

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number:
    case Expr::Kind::symbol:
      return e.text;
    case Expr::Kind::unary:
      return e.text + render(*e.args[0]);
    case Expr::Kind::binary:
      return "(" + render(*e.args[0]) + " " + e.text + " " + render(*e.args[1]) + ")";
    case Expr::Kind::call: {
      std::string out = e.text + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += render(*e.args[i]);
      }
      return out + ")";
    }
  }
  return {};
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  return true;
}

// ---------------------------------------------------------------- sessions

std::optional<ScalarKind> scalar_kind_from_name(std::string_view name) {
  if (name == "float") return ScalarKind::float_;
  if (name == "rational") return ScalarKind::rational;
  if (name == "ratfun") return ScalarKind::ratfun;
  return std::nullopt;
}

Session Session::plain(const Signature& sig, ScalarKind scalars) {
  validate(sig);
  return Session{Algebra::create(sig), nullptr, scalars};
}

Session Session::conformal(int n, ScalarKind scalars) {
  auto model = std::make_shared<const CgaModel>(n);
  return Session{model->algebra(), model, scalars};
}

// --------------------------------------------------------------- evaluator

namespace {

// Error already annotated with the failing subexpression.
class EvalError : public MathError {
 public:
  using MathError::MathError;
};

template <class S>
class Evaluator {
 public:
  using MV = Multivector<S>;
  using T = ScalarTraits<S>;

  Evaluator(const Session& session, const Bindings<S>& vars) : s_(session), vars_(vars) {}

  MV eval(const Expr& e) {
    try {
      return dispatch(e);
    } catch (const EvalError&) {
      throw;
    } catch (const ParseError&) {
      throw;
    } catch (const MathError& err) {
      throw EvalError(std::string(err.what()) + " in '" + render(e) + "' at column " + std::to_string(e.column));
    }
  }

 private:
  MV scalar(S v) const { return MV::scalar(s_.algebra, std::move(v)); }

  MV dispatch(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::number:
        return scalar(T::from_decimal(e.text));
      case Expr::Kind::symbol:
        return symbol(e);
      case Expr::Kind::unary: {
        MV a = eval(*e.args[0]);
        return e.text == "-" ? -a : reverse(a);
      }
      case Expr::Kind::binary: {
        MV a = eval(*e.args[0]);
        MV b = eval(*e.args[1]);
        switch (e.text[0]) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '|': return a | b;
          case '^': return a ^ b;
        }
        throw MathError("unknown operator '" + e.text + "'");
      }
      case Expr::Kind::call:
        return call(e);
    }
    throw MathError("malformed expression");
  }

  MV symbol(const Expr& e) const {
    if (auto it = vars_.find(e.text); it != vars_.end()) return it->second;
    if (auto pos = s_.algebra->find_display(e.text)) {
      std::vector<S> display(s_.algebra->size(), T::from_integer(0));
      display[*pos] = T::from_integer(1);
      return MV::from_display(s_.algebra, display);
    }
    if constexpr (std::is_same_v<S, RationalFunction>) {
      if (e.text == "s") return scalar(RationalFunction::s());
    }
    if constexpr (std::is_same_v<S, double>) {
      if (e.text == "pi") return scalar(std::numbers::pi);
    }
    throw ParseError("unknown symbol '" + e.text + "' for signature " + s_.algebra->signature().to_string(), e.column);
  }

  long long integer_arg(const Expr& e) {
    MV v = eval(e);
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!T::is_zero(v[i])) throw MathError("expected an integer scalar");
    if constexpr (std::is_same_v<S, double>) {
      const double x = v[0];
      if (x != std::round(x) || std::abs(x) > 1e15) throw MathError("expected an integer scalar");
      return static_cast<long long>(x);
    } else {
      Rational r;
      if constexpr (std::is_same_v<S, Rational>) {
        r = v[0];
      } else {
        if (!v[0].is_constant()) throw MathError("expected an integer scalar");
        r = v[0].constant_value();
      }
      if (!r.is_integer() || !r.numerator().fits_slong_p()) throw MathError("expected an integer scalar");
      return r.numerator().get_si();
    }
  }

  const CgaModel& cga(const std::string& fn) const {
    if (!s_.cga) throw MathError(fn + "() needs a conformal session (--cga n)");
    return *s_.cga;
  }

  MV call(const Expr& e) {
    const std::string& f = e.text;
    if (f == "grade") {
      MV a = eval(*e.args[0]);
      return grade(a, static_cast<int>(integer_arg(*e.args[1])));
    }
    if (f == "pow") {
      MV a = eval(*e.args[0]);
      return int_power(a, integer_arg(*e.args[1]));
    }
    MV a = eval(*e.args[0]);
    if (f == "inv") return inverse(a);
    if (f == "rev") return reverse(a);
    if (f == "involute") return grade_involution(a);
    if (f == "conj") return conjugate(a);
    if (f == "dual") {
      if (s_.cga) return dual_pseudoscalar(a);
      return dual_complement(a);
    }
    if (f == "undual") {
      if (s_.cga) return undual_pseudoscalar(a);
      return undual_complement(a);
    }
    if (f == "hodge") return hodge_dual(a);
    if (f == "norm") return scalar(norm(a));
    if (f == "normalize") return normalize(a);
    if (f == "clean") return clean(a);
    if (f == "push") return cga(f).push(a);
    if (f == "pull") return cga(f).pull_vector(a);
    if (auto fn = analytic_fn_from_name(f)) {
      if constexpr (std::is_same_v<S, double>) {
        return analytic_function(a, *fn);
      } else {
        throw MathError(f + "() needs float scalars (--scalars float)");
      }
    }
    throw MathError("unknown function '" + f + "'");
  }

  const Session& s_;
  const Bindings<S>& vars_;
};

template <class S>
EvalResult run(const Session& session, const Expr& e) {
  Multivector<S> v = evaluate<S>(e, session);
  return {to_text(v), to_json(v)};
}

}  // namespace

template <class S>
Multivector<S> evaluate(const Expr& e, const Session& session, const Bindings<S>& vars) {
  return Evaluator<S>(session, vars).eval(e);
}

template Multivector<double> evaluate(const Expr&, const Session&, const Bindings<double>&);
template Multivector<Rational> evaluate(const Expr&, const Session&, const Bindings<Rational>&);
template Multivector<RationalFunction> evaluate(const Expr&, const Session&, const Bindings<RationalFunction>&);

EvalResult evaluate_source(const Session& session, std::string_view source) {
  ExprPtr e = parse(source);
  switch (session.scalars) {
    case ScalarKind::float_: return run<double>(session, *e);
    case ScalarKind::rational: return run<Rational>(session, *e);
    case ScalarKind::ratfun: return run<RationalFunction>(session, *e);
  }
  throw MathError("unknown scalar domain");
}

}  // namespace gacalc
