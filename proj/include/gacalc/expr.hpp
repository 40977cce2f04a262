#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gacalc/geometry.hpp"
#include "gacalc/multivector.hpp"

namespace gacalc {

struct Token {
  enum class Kind { number, identifier, op, lparen, rparen, comma };
  Kind kind;
  std::string text;
  std::size_t column;  // 1-based
};

// Splits expression text into tokens. Numbers are integers or decimals
// ("12", "0.5", ".25"); operators are + - * | ^ ~ and the rejected '/'.
std::vector<Token> tokenize(std::string_view text);

struct Expr {
  enum class Kind { number, symbol, unary, binary, call };
  Kind kind;
  // number: literal text; symbol: name; unary/binary: operator; call: function name.
  std::string text;
  std::vector<std::shared_ptr<const Expr>> args;
  std::size_t column = 0;
};
using ExprPtr = std::shared_ptr<const Expr>;

// Precedence, tightest first: unary (- ~), calls, the products * | ^ (one
// left-associative level), then + and -. Function arity is checked here.
ExprPtr parse(std::string_view text);
ExprPtr parse(const std::vector<Token>& tokens);

// Canonical text: binary nodes fully parenthesized.
std::string render(const Expr& e);

bool same_tree(const Expr& a, const Expr& b);

// Arity of a known function, or nullopt.
std::optional<int> function_arity(std::string_view name);

enum class ScalarKind { float_, rational, ratfun };

std::optional<ScalarKind> scalar_kind_from_name(std::string_view name);

// The algebra an expression is evaluated in, plus an optional conformal model
// (which enables push, pull, n0 and ni).
struct Session {
  AlgebraPtr algebra;
  std::shared_ptr<const CgaModel> cga;
  ScalarKind scalars = ScalarKind::float_;

  static Session plain(const Signature& sig, ScalarKind scalars = ScalarKind::float_);
  static Session conformal(int n, ScalarKind scalars = ScalarKind::float_);
};

template <class S>
using Bindings = std::map<std::string, Multivector<S>, std::less<>>;

// Evaluates against the session algebra. Symbols resolve to variables first,
// then to basis blades ("e0" is the scalar unit); "s" is the indeterminate
// over rational functions and "pi" a float constant. Operation errors carry
// the failing subexpression and its column.
template <class S>
Multivector<S> evaluate(const Expr& e, const Session& session, const Bindings<S>& vars = {});

struct EvalResult {
  std::string text;
  nlohmann::json json;
};

// Parses and evaluates in the session's scalar domain.
EvalResult evaluate_source(const Session& session, std::string_view source);

extern template Multivector<double> evaluate(const Expr&, const Session&, const Bindings<double>&);
extern template Multivector<Rational> evaluate(const Expr&, const Session&, const Bindings<Rational>&);
extern template Multivector<RationalFunction> evaluate(const Expr&, const Session&, const Bindings<RationalFunction>&);

}  // namespace gacalc
