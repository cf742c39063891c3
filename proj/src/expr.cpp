#include "sdred/expr.hpp"

#include <cctype>
#include <vector>

namespace sdred {

namespace {

constexpr long kMaxExponent = 1'000'000;

bool is_integer(const Rational& q) { return q.get_den() == 1; }

mpz_class pow2(long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, (unsigned long)e);
    return r;
}

// floor(log2(q)) for q > 0, exact.
long floor_log2(const Rational& q) {
    if (sgn(q) <= 0)
        throw EvalError("log2 of non-positive value " + q.get_str());
    const mpz_class num = q.get_num(), den = q.get_den();
    long e = long(mpz_sizeinbase(num.get_mpz_t(), 2)) - long(mpz_sizeinbase(den.get_mpz_t(), 2));
    // 2^e * den <=> num, adjust until 2^e <= q < 2^(e+1)
    auto le_q = [&](long exp) {
        if (exp >= 0)
            return mpz_class(pow2(exp) * den) <= num;
        return den <= mpz_class(pow2(-exp) * num);
    };
    while (!le_q(e))
        --e;
    while (le_q(e + 1))
        ++e;
    return e;
}

bool is_pow2(const Rational& q, long& e) {
    if (sgn(q) <= 0)
        return false;
    long f = floor_log2(q);
    Rational p = f >= 0 ? Rational(pow2(f)) : Rational(1, pow2(-f));
    if (p == q) {
        e = f;
        return true;
    }
    return false;
}

Rational exact_ceil(const Rational& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return Rational(r);
}

Rational exact_floor(const Rational& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return Rational(r);
}

} // namespace

struct Expression::Node {
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call } kind;
    Rational number;
    std::string name; // variable or function name
    std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make_node(Kind kind, std::vector<NodePtr> args = {}, std::string name = {}) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = kind;
    n->args = std::move(args);
    n->name = std::move(name);
    return n;
}

const char* const kVariables[] = {"r", "w", "t", "u"};
const char* const kFunctions[] = {"ceil", "floor", "log2", "max", "min"};

bool is_variable(const std::string& s) {
    for (auto v : kVariables)
        if (s == v)
            return true;
    return false;
}

bool is_function(const std::string& s) {
    for (auto f : kFunctions)
        if (s == f)
            return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression: " + msg + " at position " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_]))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        NodePtr left = parse_product();
        for (;;) {
            if (eat('+'))
                left = make_node(Kind::Add, {left, parse_product()});
            else if (eat('-'))
                left = make_node(Kind::Sub, {left, parse_product()});
            else
                return left;
        }
    }

    NodePtr parse_product() {
        NodePtr left = parse_unary();
        for (;;) {
            if (eat('*'))
                left = make_node(Kind::Mul, {left, parse_unary()});
            else if (eat('/'))
                left = make_node(Kind::Div, {left, parse_unary()});
            else
                return left;
        }
    }

    NodePtr parse_unary() {
        if (eat('-'))
            return make_node(Kind::Neg, {parse_unary()});
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (eat('^'))
            return make_node(Kind::Pow, {base, parse_unary()}); // right-assoc
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit((unsigned char)c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]))
                ++pos_;
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::Number;
            n->number = Rational(mpz_class(std::string(text_.substr(start, pos_ - start)), 10));
            return n;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (is_function(name)) {
                if (!eat('('))
                    fail("expected '(' after function " + name);
                std::vector<NodePtr> args;
                args.push_back(parse_sum());
                while (eat(','))
                    args.push_back(parse_sum());
                if (!eat(')'))
                    fail("expected ')' closing call to " + name);
                return make_node(Kind::Call, std::move(args), name);
            }
            if (!is_variable(name)) {
                pos_ = start;
                fail("unknown identifier \"" + name + "\"");
            }
            auto n = std::make_shared<Expression::Node>();
            n->kind = Kind::Variable;
            n->name = name;
            return n;
        }
        if (eat('(')) {
            NodePtr e = parse_sum();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

Rational eval_node(const Expression::Node& node, const Env& env);

Rational eval_pow(const Rational& base, const Rational& exponent) {
    mpz_class e = require_integer(exponent, "exponent");
    if (abs(e) > kMaxExponent)
        throw BudgetExceeded("exponent " + e.get_str() + " exceeds evaluation cap");
    long el = e.get_si();
    if (el == 0)
        return 1;
    bool invert = el < 0;
    unsigned long mag = (unsigned long)(invert ? -el : el);
    if (invert && sgn(base) == 0)
        throw EvalError("0 raised to a negative power");
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), mag);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), mag);
    Rational r(num, den);
    r.canonicalize();
    if (invert)
        r = 1 / r;
    return r;
}

Rational eval_call(const Expression::Node& node, const Env& env) {
    const auto& args = node.args;
    auto arity = [&](std::size_t want) {
        if (args.size() != want)
            throw EvalError(node.name + " takes " + std::to_string(want) + " argument(s), got " +
                            std::to_string(args.size()));
    };
    if (node.name == "ceil" || node.name == "floor") {
        arity(1);
        const auto& inner = *args[0];
        if (inner.kind == Kind::Call && inner.name == "log2") {
            // fused: exact for any positive rational argument
            if (inner.args.size() != 1)
                throw EvalError("log2 takes 1 argument");
            Rational x = eval_node(*inner.args[0], env);
            long f = floor_log2(x);
            if (node.name == "floor")
                return f;
            Rational p = f >= 0 ? Rational(pow2(f)) : Rational(1, pow2(-f));
            return p == x ? f : f + 1;
        }
        Rational x = eval_node(inner, env);
        return node.name == "ceil" ? exact_ceil(x) : exact_floor(x);
    }
    if (node.name == "log2") {
        arity(1);
        Rational x = eval_node(*args[0], env);
        long e = 0;
        if (!is_pow2(x, e))
            throw EvalError("log2(" + x.get_str() +
                            ") is not exact; wrap it in ceil() or floor()");
        return e;
    }
    if (node.name == "max" || node.name == "min") {
        if (args.size() < 2)
            throw EvalError(node.name + " takes at least 2 arguments");
        Rational best = eval_node(*args[0], env);
        for (std::size_t i = 1; i < args.size(); ++i) {
            Rational v = eval_node(*args[i], env);
            if (node.name == "max" ? v > best : v < best)
                best = v;
        }
        return best;
    }
    throw EvalError("unknown function " + node.name);
}

Rational eval_node(const Expression::Node& node, const Env& env) {
    switch (node.kind) {
    case Kind::Number:
        return node.number;
    case Kind::Variable: {
        auto it = env.find(node.name);
        if (it == env.end())
            throw EvalError("variable " + node.name + " is not bound");
        return it->second;
    }
    case Kind::Add:
        return eval_node(*node.args[0], env) + eval_node(*node.args[1], env);
    case Kind::Sub:
        return eval_node(*node.args[0], env) - eval_node(*node.args[1], env);
    case Kind::Mul:
        return eval_node(*node.args[0], env) * eval_node(*node.args[1], env);
    case Kind::Div: {
        Rational d = eval_node(*node.args[1], env);
        if (sgn(d) == 0)
            throw EvalError("division by zero");
        return eval_node(*node.args[0], env) / d;
    }
    case Kind::Pow:
        return eval_pow(eval_node(*node.args[0], env), eval_node(*node.args[1], env));
    case Kind::Neg:
        return -eval_node(*node.args[0], env);
    case Kind::Call:
        return eval_call(node, env);
    }
    throw EvalError("corrupt expression tree");
}

} // namespace

Expression Expression::parse(std::string_view text) {
    Expression e;
    e.root_ = Parser(text).run();
    e.text_ = std::string(text);
    return e;
}

Rational Expression::evaluate(const Env& env) const {
    if (!root_)
        throw EvalError("evaluating an empty expression");
    return eval_node(*root_, env);
}

mpz_class require_integer(const Rational& value, const std::string& what) {
    if (!is_integer(value))
        throw NotInteger(what + " = " + value.get_str() + " is not an integer");
    return value.get_num();
}

long require_long(const Rational& value, const std::string& what) {
    mpz_class z = require_integer(value, what);
    if (!z.fits_slong_p())
        throw BudgetExceeded(what + " = " + z.get_str() + " is out of range");
    return z.get_si();
}

} // namespace sdred
