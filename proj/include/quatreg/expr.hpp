#pragma once

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quatreg/jet.hpp"
#include "quatreg/util.hpp"

namespace quatreg {

/// Raised when an expression string does not match the grammar.  `offset` is
/// the byte offset into the input (at most input length, pointing one past
/// the end when the input stops short) and `expected` says what the parser
/// was looking for there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string expected)
        : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected " + expected),
          offset(offset),
          expected(std::move(expected)) {}

    std::size_t offset;
    std::string expected;
};

/// Raised when evaluation hits an excluded point of a partial operation
/// (division by zero, log/sqrt outside their domain, 0 to a negative power).
/// `offset` locates the offending node in the original source text; it is 0
/// for synthesized nodes.
class EvalError : public std::runtime_error {
public:
    EvalError(std::size_t offset, const std::string& what)
        : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}

    std::size_t offset;
};

enum class FuncKind { Sin, Cos, Exp, Log, Sqrt };

inline const char* func_name(FuncKind f) {
    switch (f) {
        case FuncKind::Sin: return "sin";
        case FuncKind::Cos: return "cos";
        case FuncKind::Exp: return "exp";
        case FuncKind::Log: return "log";
        case FuncKind::Sqrt: return "sqrt";
    }
    return "?";
}

struct ExprNode;

/// Immutable handle to an expression tree over the variables x1..x4.
/// Build one with parse_expr() or with the lit/var/add/... constructors
/// below; the latter fold literal zeros and ones as they go.
class Expr {
public:
    Expr() = default;

    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}

    bool valid() const { return node_ != nullptr; }
    const ExprNode& node() const { return *node_; }

private:
    std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
    enum class Kind { Literal, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double value = 0.0;              // Literal
    int axis = 0;                    // Variable, 1..4
    int exponent = 0;                // Pow
    FuncKind func = FuncKind::Sin;   // Call
    Expr a, b;                       // operands (Pow and Call use only a)
    std::size_t offset = 0;          // source byte offset, 0 when synthesized
};

namespace detail {
inline Expr make_node(ExprNode n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }
}  // namespace detail

inline bool is_literal(const Expr& e, double v) {
    return e.valid() && e.node().kind == ExprNode::Kind::Literal && e.node().value == v;
}

inline Expr lit(double v) {
    ExprNode n{};
    n.kind = ExprNode::Kind::Literal;
    n.value = v;
    return detail::make_node(std::move(n));
}

inline Expr var(int axis) {
    if (axis < 1 || axis > 4) throw std::out_of_range("variable axis must be 1..4");
    ExprNode n{};
    n.kind = ExprNode::Kind::Variable;
    n.axis = axis;
    return detail::make_node(std::move(n));
}

inline Expr neg(const Expr& e) {
    if (e.node().kind == ExprNode::Kind::Literal) return lit(-e.node().value);
    ExprNode n{};
    n.kind = ExprNode::Kind::Neg;
    n.a = e;
    return detail::make_node(std::move(n));
}

inline Expr add(const Expr& a, const Expr& b) {
    if (is_literal(a, 0.0)) return b;
    if (is_literal(b, 0.0)) return a;
    ExprNode n{};
    n.kind = ExprNode::Kind::Add;
    n.a = a;
    n.b = b;
    return detail::make_node(std::move(n));
}

inline Expr sub(const Expr& a, const Expr& b) {
    if (is_literal(b, 0.0)) return a;
    if (is_literal(a, 0.0)) return neg(b);
    ExprNode n{};
    n.kind = ExprNode::Kind::Sub;
    n.a = a;
    n.b = b;
    return detail::make_node(std::move(n));
}

inline Expr mul(const Expr& a, const Expr& b) {
    if (is_literal(a, 0.0) || is_literal(b, 0.0)) return lit(0.0);
    if (is_literal(a, 1.0)) return b;
    if (is_literal(b, 1.0)) return a;
    ExprNode n{};
    n.kind = ExprNode::Kind::Mul;
    n.a = a;
    n.b = b;
    return detail::make_node(std::move(n));
}

inline Expr div(const Expr& a, const Expr& b) {
    if (is_literal(a, 0.0)) return lit(0.0);
    if (is_literal(b, 1.0)) return a;
    ExprNode n{};
    n.kind = ExprNode::Kind::Div;
    n.a = a;
    n.b = b;
    return detail::make_node(std::move(n));
}

inline Expr pow(const Expr& a, int exponent) {
    if (exponent == 0) return lit(1.0);
    if (exponent == 1) return a;
    ExprNode n{};
    n.kind = ExprNode::Kind::Pow;
    n.a = a;
    n.exponent = exponent;
    return detail::make_node(std::move(n));
}

inline Expr call(FuncKind f, const Expr& arg) {
    ExprNode n{};
    n.kind = ExprNode::Kind::Call;
    n.func = f;
    n.a = arg;
    return detail::make_node(std::move(n));
}

// ---------------------------------------------------------------------------
// Evaluation, generic over double and Jet2.

namespace detail {

inline double value_of(double v) { return v; }
inline double value_of(const Jet2& j) { return j.v; }

template <class T>
T from_literal(double v);
template <>
inline double from_literal<double>(double v) { return v; }
template <>
inline Jet2 from_literal<Jet2>(double v) { return Jet2::constant(v); }

template <class T>
T eval_node(const ExprNode& n, const std::array<T, 4>& vars) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    switch (n.kind) {
        case ExprNode::Kind::Literal: return from_literal<T>(n.value);
        case ExprNode::Kind::Variable: return vars[n.axis - 1];
        case ExprNode::Kind::Neg: return -eval_node(n.a.node(), vars);
        case ExprNode::Kind::Add: return eval_node(n.a.node(), vars) + eval_node(n.b.node(), vars);
        case ExprNode::Kind::Sub: return eval_node(n.a.node(), vars) - eval_node(n.b.node(), vars);
        case ExprNode::Kind::Mul: return eval_node(n.a.node(), vars) * eval_node(n.b.node(), vars);
        case ExprNode::Kind::Div: {
            T a = eval_node(n.a.node(), vars);
            T b = eval_node(n.b.node(), vars);
            if (value_of(b) == 0.0) throw EvalError(n.offset, "division by zero");
            return a / b;
        }
        case ExprNode::Kind::Pow: {
            T a = eval_node(n.a.node(), vars);
            if (n.exponent < 0 && value_of(a) == 0.0)
                throw EvalError(n.offset, "zero raised to a negative power");
            return pow_int(a, n.exponent);
        }
        case ExprNode::Kind::Call: {
            T a = eval_node(n.a.node(), vars);
            const double v = value_of(a);
            switch (n.func) {
                case FuncKind::Sin: return sin(a);
                case FuncKind::Cos: return cos(a);
                case FuncKind::Exp: return exp(a);
                case FuncKind::Log:
                    if (v <= 0.0) throw EvalError(n.offset, "log of non-positive value " + fmt_double(v));
                    return log(a);
                case FuncKind::Sqrt:
                    if (v <= 0.0) throw EvalError(n.offset, "sqrt of non-positive value " + fmt_double(v));
                    return sqrt(a);
            }
            throw std::logic_error("unreachable");
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

inline double eval_real(const Expr& e, const Vec4& p) {
    return detail::eval_node<double>(e.node(), {p[0], p[1], p[2], p[3]});
}

/// Value, gradient and Hessian of the expression at p in one pass.
inline Jet2 eval_jet(const Expr& e, const Vec4& p) {
    std::array<Jet2, 4> vars{Jet2::seed(p, 1), Jet2::seed(p, 2), Jet2::seed(p, 3), Jet2::seed(p, 4)};
    return detail::eval_node<Jet2>(e.node(), vars);
}

// ---------------------------------------------------------------------------
// Symbolic derivative with literal-zero/one folding (nothing heavier).

inline Expr diff(const Expr& e, int axis) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::Literal: return lit(0.0);
        case ExprNode::Kind::Variable: return lit(n.axis == axis ? 1.0 : 0.0);
        case ExprNode::Kind::Neg: return neg(diff(n.a, axis));
        case ExprNode::Kind::Add: return add(diff(n.a, axis), diff(n.b, axis));
        case ExprNode::Kind::Sub: return sub(diff(n.a, axis), diff(n.b, axis));
        case ExprNode::Kind::Mul:
            return add(mul(diff(n.a, axis), n.b), mul(n.a, diff(n.b, axis)));
        case ExprNode::Kind::Div:
            return div(sub(mul(diff(n.a, axis), n.b), mul(n.a, diff(n.b, axis))), pow(n.b, 2));
        case ExprNode::Kind::Pow:
            return mul(mul(lit(double(n.exponent)), pow(n.a, n.exponent - 1)), diff(n.a, axis));
        case ExprNode::Kind::Call: {
            const Expr da = diff(n.a, axis);
            switch (n.func) {
                case FuncKind::Sin: return mul(call(FuncKind::Cos, n.a), da);
                case FuncKind::Cos: return mul(neg(call(FuncKind::Sin, n.a)), da);
                case FuncKind::Exp: return mul(call(FuncKind::Exp, n.a), da);
                case FuncKind::Log: return div(da, n.a);
                case FuncKind::Sqrt: return div(da, mul(lit(2.0), call(FuncKind::Sqrt, n.a)));
            }
            throw std::logic_error("unreachable");
        }
    }
    throw std::logic_error("unreachable");
}

/// Replaces the variable x_axis by a numeric literal, folding as it goes.
inline Expr substitute(const Expr& e, int axis, double value) {
    const ExprNode& n = e.node();
    switch (n.kind) {
        case ExprNode::Kind::Literal: return e;
        case ExprNode::Kind::Variable: return n.axis == axis ? lit(value) : e;
        case ExprNode::Kind::Neg: return neg(substitute(n.a, axis, value));
        case ExprNode::Kind::Add: return add(substitute(n.a, axis, value), substitute(n.b, axis, value));
        case ExprNode::Kind::Sub: return sub(substitute(n.a, axis, value), substitute(n.b, axis, value));
        case ExprNode::Kind::Mul: return mul(substitute(n.a, axis, value), substitute(n.b, axis, value));
        case ExprNode::Kind::Div: return div(substitute(n.a, axis, value), substitute(n.b, axis, value));
        case ExprNode::Kind::Pow: return pow(substitute(n.a, axis, value), n.exponent);
        case ExprNode::Kind::Call: return call(n.func, substitute(n.a, axis, value));
    }
    throw std::logic_error("unreachable");
}

/// Freezes every coordinate except keep_axis at its value in p.
inline Expr freeze_except(Expr e, int keep_axis, const Vec4& p) {
    for (int axis = 1; axis <= 4; ++axis)
        if (axis != keep_axis) e = substitute(e, axis, p[axis - 1]);
    return e;
}

inline bool structurally_equal(const Expr& x, const Expr& y) {
    const ExprNode& a = x.node();
    const ExprNode& b = y.node();
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::Literal: return a.value == b.value;
        case ExprNode::Kind::Variable: return a.axis == b.axis;
        case ExprNode::Kind::Neg: return structurally_equal(a.a, b.a);
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub:
        case ExprNode::Kind::Mul:
        case ExprNode::Kind::Div:
            return structurally_equal(a.a, b.a) && structurally_equal(a.b, b.b);
        case ExprNode::Kind::Pow: return a.exponent == b.exponent && structurally_equal(a.a, b.a);
        case ExprNode::Kind::Call: return a.func == b.func && structurally_equal(a.a, b.a);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Canonical printer.  parse_expr(to_string(e)) is structurally identical to e
// for any tree built by the constructors above.

namespace detail {

inline int precedence(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub: return 1;
        case ExprNode::Kind::Mul:
        case ExprNode::Kind::Div: return 2;
        case ExprNode::Kind::Neg: return 3;
        case ExprNode::Kind::Pow: return 4;
        default: return 5;
    }
}

inline bool prints_negative(const ExprNode& n) {
    return n.kind == ExprNode::Kind::Neg ||
           (n.kind == ExprNode::Kind::Literal && std::signbit(n.value));
}

inline void print_node(const ExprNode& n, std::string& out);

inline void print_wrapped(const Expr& e, bool parens, std::string& out) {
    if (parens) out += '(';
    print_node(e.node(), out);
    if (parens) out += ')';
}

inline void print_node(const ExprNode& n, std::string& out) {
    const int prec = precedence(n);
    switch (n.kind) {
        case ExprNode::Kind::Literal:
            out += fmt_double(n.value);
            return;
        case ExprNode::Kind::Variable:
            out += 'x';
            out += char('0' + n.axis);
            return;
        case ExprNode::Kind::Neg:
            out += '-';
            print_wrapped(n.a, precedence(n.a.node()) < prec, out);
            return;
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub:
        case ExprNode::Kind::Mul:
        case ExprNode::Kind::Div: {
            print_wrapped(n.a, precedence(n.a.node()) < prec, out);
            switch (n.kind) {
                case ExprNode::Kind::Add: out += '+'; break;
                case ExprNode::Kind::Sub: out += '-'; break;
                case ExprNode::Kind::Mul: out += '*'; break;
                default: out += '/'; break;
            }
            const ExprNode& rhs = n.b.node();
            print_wrapped(n.b, precedence(rhs) <= prec || prints_negative(rhs), out);
            return;
        }
        case ExprNode::Kind::Pow: {
            const ExprNode& base = n.a.node();
            const bool atom = precedence(base) == 5 && !prints_negative(base);
            print_wrapped(n.a, !atom, out);
            out += '^';
            out += std::to_string(n.exponent);
            return;
        }
        case ExprNode::Kind::Call:
            out += func_name(n.func);
            out += '(';
            print_node(n.a.node(), out);
            out += ')';
            return;
    }
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
    std::string out;
    detail::print_node(e.node(), out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser.  Grammar, loosest to tightest binding:
//
//   expr   := mul (('+' | '-') mul)*
//   mul    := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := number | 'x1'..'x4' | func '(' expr ')' | '(' expr ')'
//   func   := 'sin' | 'cos' | 'exp' | 'log' | 'sqrt'
//
// Numbers are decimal with optional fraction and exponent.  A unary minus
// directly on a number folds into a negative literal.

namespace detail {

struct Token {
    enum class Kind { Number, Ident, Op, End };
    Kind kind = Kind::End;
    double number = 0.0;
    bool number_is_integer = false;
    std::string ident;
    char op = 0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.kind = Token::Kind::Ident;
            tok_.ident = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
            tok_.kind = Token::Kind::Op;
            tok_.op = c;
            ++pos_;
            return;
        }
        throw ParseError(pos_, "a valid token (unexpected character '" + std::string(1, c) + "')");
    }

    void lex_number() {
        const std::size_t start = pos_;
        bool integer = true;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            integer = false;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            integer = false;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError(pos_, "digits in the exponent of a number");
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        const std::string_view body = text_.substr(start, pos_ - start);
        double value = 0.0;
        auto res = std::from_chars(body.data(), body.data() + body.size(), value);
        if (res.ec != std::errc{} || res.ptr != body.data() + body.size())
            throw ParseError(start, "a valid number");
        tok_.kind = Token::Kind::Number;
        tok_.number = value;
        tok_.number_is_integer = integer;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Expr parse() {
        Expr e = parse_additive();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End) throw ParseError(t.offset, "an operator or end of input");
        return e;
    }

private:
    static Expr with_offset(Expr e, std::size_t offset) {
        ExprNode n = e.node();
        n.offset = offset;
        return make_node(std::move(n));
    }

    bool peek_op(char c) const {
        return lex_.peek().kind == Token::Kind::Op && lex_.peek().op == c;
    }

    Expr parse_additive() {
        Expr e = parse_multiplicative();
        while (peek_op('+') || peek_op('-')) {
            Token t = lex_.take();
            Expr rhs = parse_multiplicative();
            ExprNode n{};
            n.kind = t.op == '+' ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
            n.a = e;
            n.b = rhs;
            n.offset = t.offset;
            e = make_node(std::move(n));
        }
        return e;
    }

    Expr parse_multiplicative() {
        Expr e = parse_unary();
        while (peek_op('*') || peek_op('/')) {
            Token t = lex_.take();
            Expr rhs = parse_unary();
            ExprNode n{};
            n.kind = t.op == '*' ? ExprNode::Kind::Mul : ExprNode::Kind::Div;
            n.a = e;
            n.b = rhs;
            n.offset = t.offset;
            e = make_node(std::move(n));
        }
        return e;
    }

    Expr parse_unary() {
        if (peek_op('-')) {
            Token t = lex_.take();
            Expr inner = parse_unary();
            if (inner.node().kind == ExprNode::Kind::Literal)
                return with_offset(lit(-inner.node().value), t.offset);
            ExprNode n{};
            n.kind = ExprNode::Kind::Neg;
            n.a = inner;
            n.offset = t.offset;
            return make_node(std::move(n));
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (!peek_op('^')) return base;
        Token caret = lex_.take();
        bool negative = false;
        if (peek_op('-')) {
            lex_.take();
            negative = true;
        }
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::Number || !t.number_is_integer)
            throw ParseError(t.offset, "an integer literal exponent");
        Token numtok = lex_.take();
        int exponent = int(numtok.number);
        if (double(exponent) != numtok.number)
            throw ParseError(numtok.offset, "an integer literal exponent");
        if (negative) exponent = -exponent;
        ExprNode n{};
        n.kind = ExprNode::Kind::Pow;
        n.a = base;
        n.exponent = exponent;
        n.offset = caret.offset;
        if (exponent == 0) return with_offset(lit(1.0), caret.offset);
        if (exponent == 1) return base;
        return make_node(std::move(n));
    }

    Expr parse_atom() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Number) {
            Token tok = lex_.take();
            return with_offset(lit(tok.number), tok.offset);
        }
        if (t.kind == Token::Kind::Ident) {
            Token tok = lex_.take();
            if (tok.ident.size() == 2 && tok.ident[0] == 'x' && tok.ident[1] >= '1' && tok.ident[1] <= '4')
                return with_offset(var(tok.ident[1] - '0'), tok.offset);
            FuncKind f;
            if (tok.ident == "sin") f = FuncKind::Sin;
            else if (tok.ident == "cos") f = FuncKind::Cos;
            else if (tok.ident == "exp") f = FuncKind::Exp;
            else if (tok.ident == "log") f = FuncKind::Log;
            else if (tok.ident == "sqrt") f = FuncKind::Sqrt;
            else
                throw ParseError(tok.offset,
                                 "a variable x1..x4 or a function name (got '" + tok.ident + "')");
            if (!peek_op('('))
                throw ParseError(lex_.peek().offset, "'(' after function name");
            lex_.take();
            Expr arg = parse_additive();
            if (!peek_op(')')) throw ParseError(lex_.peek().offset, "')'");
            lex_.take();
            ExprNode n{};
            n.kind = ExprNode::Kind::Call;
            n.func = f;
            n.a = arg;
            n.offset = tok.offset;
            return make_node(std::move(n));
        }
        if (peek_op('(')) {
            lex_.take();
            Expr e = parse_additive();
            if (!peek_op(')')) throw ParseError(lex_.peek().offset, "')'");
            lex_.take();
            return e;
        }
        throw ParseError(t.offset, "a number, variable, function call, or '('");
    }

    Lexer lex_;
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::Parser(text).parse(); }

}  // namespace quatreg
