#ifndef SDRED_EXPR_HPP
#define SDRED_EXPR_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "sdred/errors.hpp"

namespace sdred {

using Rational = mpq_class;

// Evaluation failed for a structural reason (unbound variable, division by
// zero, log2 of a value that has no exact rational logarithm, ...).
struct EvalError : Error {
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

// Variable bindings for evaluation; keys are variable names (r, w, t, u).
using Env = std::map<std::string, Rational>;

// Arithmetic expression over exact rationals.
//
// Grammar: integer literals; variables r, w, t, u; binary + - * / ^
// (^ binds tightest, right-associative); unary minus; functions
// ceil, floor, log2, max, min; parentheses.
//
// Everything evaluates exactly. ^ demands an integer exponent (NotInteger
// otherwise). log2 demands an exact power-of-2 argument unless it appears
// directly under ceil or floor, which are computed exactly for any positive
// rational argument.
class Expression {
public:
    Expression() = default;

    // Throws ParseError with a position on syntax errors or identifiers
    // outside the grammar.
    static Expression parse(std::string_view text);

    Rational evaluate(const Env& env) const;

    bool empty() const { return root_ == nullptr; }
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

// Narrows an exact rational to an integer; `what` names the quantity in the
// NotInteger message.
mpz_class require_integer(const Rational& value, const std::string& what);

// Same, additionally requiring the result to fit in long; BudgetExceeded
// when it does not.
long require_long(const Rational& value, const std::string& what);

} // namespace sdred

#endif
