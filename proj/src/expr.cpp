#include "galmann/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "galmann/errors.hpp"

namespace galmann {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

NodePtr number_node(double v, std::size_t b = 0, std::size_t e = 0) {
    return make_node({NodeKind::number, v, FuncId::sin, nullptr, nullptr, b, e});
}

constexpr std::array<const char*, 10> func_names = {"sin",  "cos",  "tan",  "exp",  "log",
                                                    "sqrt", "sinh", "cosh", "tanh", "abs"};

bool lookup_func(std::string_view name, FuncId& out) {
    for (std::size_t i = 0; i < func_names.size(); ++i) {
        if (name == func_names[i]) {
            out = static_cast<FuncId>(i);
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind = Tok::end;
    std::size_t begin = 0, end = 0;
    double value = 0.0;
    std::string text;
};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance();

    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_;
};

void Lexer::advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    cur_ = Token{Tok::end, pos_, pos_, 0.0, {}};
    if (pos_ >= src_.size()) return;

    const char c = src_[pos_];
    const auto single = [&](Tok k) {
        cur_ = Token{k, pos_, pos_ + 1, 0.0, {}};
        ++pos_;
    };
    switch (c) {
        case '+': single(Tok::plus); return;
        case '-': single(Tok::minus); return;
        case '*': single(Tok::star); return;
        case '/': single(Tok::slash); return;
        case '^': single(Tok::caret); return;
        case '(': single(Tok::lparen); return;
        case ')': single(Tok::rparen); return;
        default: break;
    }

    if (is_digit(c)) {
        std::size_t p = pos_;
        while (p < src_.size() && is_digit(src_[p])) ++p;
        if (p < src_.size() && src_[p] == '.') {
            ++p;
            while (p < src_.size() && is_digit(src_[p])) ++p;
        }
        // Exponent only when actually followed by digits, so "2e" lexes as
        // the number 2 and the identifier e.
        if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
            if (q < src_.size() && is_digit(src_[q])) {
                ++q;
                while (q < src_.size() && is_digit(src_[q])) ++q;
                p = q;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(src_.data() + pos_, src_.data() + p, value);
        if (res.ec != std::errc{}) {
            throw ParseError(pos_, {}, "syntax error at offset " + std::to_string(pos_) +
                                           ": unreadable number literal");
        }
        cur_ = Token{Tok::number, pos_, p, value, {}};
        pos_ = p;
        return;
    }

    if (is_ident_start(c)) {
        std::size_t p = pos_;
        while (p < src_.size() && is_ident_char(src_[p])) ++p;
        cur_ = Token{Tok::ident, pos_, p, 0.0, std::string(src_.substr(pos_, p - pos_))};
        pos_ = p;
        return;
    }

    throw ParseError(pos_, {}, "syntax error at offset " + std::to_string(pos_) +
                                   ": unexpected character '" + std::string(1, c) + "'");
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += expected.size() == 2 ? " or " : (i + 1 == expected.size() ? ", or " : ", ");
        out += expected[i];
    }
    return out;
}

[[noreturn]] void fail(std::size_t offset, std::vector<std::string> expected) {
    std::string msg =
        "syntax error at offset " + std::to_string(offset) + ": expected " + join_expected(expected);
    throw ParseError(offset, std::move(expected), msg);
}

class Parser {
public:
    Parser(std::string_view src, std::string_view variable) : lex_(src), variable_(variable) {}

    NodePtr parse() {
        NodePtr e = parse_expr();
        if (lex_.peek().kind != Tok::end)
            fail(lex_.peek().begin, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        return e;
    }

private:
    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
            const Token op = lex_.take();
            NodePtr rhs = parse_term();
            lhs = make_node({op.kind == Tok::plus ? NodeKind::add : NodeKind::subtract, 0.0,
                             FuncId::sin, lhs, rhs, lhs->begin, rhs->end});
        }
        return lhs;
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
            const Token op = lex_.take();
            NodePtr rhs = parse_factor();
            lhs = make_node({op.kind == Tok::star ? NodeKind::multiply : NodeKind::divide, 0.0,
                             FuncId::sin, lhs, rhs, lhs->begin, rhs->end});
        }
        return lhs;
    }

    // '^' is right-associative and binds looser than a leading unary minus:
    // -t^2 parses as (-t)^2.
    NodePtr parse_factor() {
        NodePtr base = parse_unary();
        if (lex_.peek().kind == Tok::caret) {
            lex_.take();
            NodePtr expo = parse_factor();
            return make_node(
                {NodeKind::power, 0.0, FuncId::sin, base, expo, base->begin, expo->end});
        }
        return base;
    }

    NodePtr parse_unary() {
        if (lex_.peek().kind == Tok::minus) {
            const Token minus = lex_.take();
            NodePtr operand = parse_atom(true);
            return make_node(
                {NodeKind::negate, 0.0, FuncId::sin, operand, nullptr, minus.begin, operand->end});
        }
        return parse_atom(false);
    }

    NodePtr parse_atom(bool minus_consumed) {
        const Token t = lex_.peek();
        switch (t.kind) {
            case Tok::number:
                lex_.take();
                return number_node(t.value, t.begin, t.end);
            case Tok::ident:
                lex_.take();
                return resolve_ident(t);
            case Tok::lparen: {
                lex_.take();
                NodePtr inner = parse_expr();
                const Token close = expect_rparen();
                // Keep the parenthesized span but the inner structure.
                auto n = *inner;
                n.begin = t.begin;
                n.end = close.end;
                return make_node(std::move(n));
            }
            default: {
                std::vector<std::string> expected = {"number", "identifier", "'('"};
                if (!minus_consumed) expected.emplace_back("'-'");
                fail(t.begin, std::move(expected));
            }
        }
    }

    NodePtr resolve_ident(const Token& t) {
        if (t.text == variable_)
            return make_node({NodeKind::variable, 0.0, FuncId::sin, nullptr, nullptr, t.begin, t.end});
        if (lex_.peek().kind == Tok::lparen) {
            FuncId id;
            if (!lookup_func(t.text, id))
                throw ParseError(t.begin, {},
                                 "unknown function '" + t.text + "' at offset " + std::to_string(t.begin));
            lex_.take();
            NodePtr arg = parse_expr();
            const Token close = expect_rparen();
            return make_node({NodeKind::call, 0.0, id, arg, nullptr, t.begin, close.end});
        }
        if (t.text == "pi") return number_node(std::numbers::pi, t.begin, t.end);
        if (t.text == "e") return number_node(std::numbers::e, t.begin, t.end);
        throw ParseError(t.begin, {},
                         "unknown identifier '" + t.text + "' at offset " + std::to_string(t.begin) +
                             " (the variable is '" + std::string(variable_) + "')");
    }

    Token expect_rparen() {
        if (lex_.peek().kind != Tok::rparen) fail(lex_.peek().begin, {"')'"});
        return lex_.take();
    }

    Lexer lex_;
    std::string_view variable_;
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_atom_kind(NodeKind k) {
    return k == NodeKind::number || k == NodeKind::variable || k == NodeKind::call;
}

void print_node(const ExprNode& n, const std::string& variable, std::string& out);

void print_child(const ExprNode& child, const std::string& variable, bool parens, std::string& out) {
    if (parens) out += '(';
    print_node(child, variable, out);
    if (parens) out += ')';
}

void print_node(const ExprNode& n, const std::string& variable, std::string& out) {
    switch (n.kind) {
        case NodeKind::number:
            out += format_number(n.value);
            return;
        case NodeKind::variable:
            out += variable;
            return;
        case NodeKind::negate:
            out += '-';
            print_child(*n.lhs, variable, !is_atom_kind(n.lhs->kind), out);
            return;
        case NodeKind::add:
        case NodeKind::subtract: {
            print_node(*n.lhs, variable, out);
            out += n.kind == NodeKind::add ? '+' : '-';
            const NodeKind rk = n.rhs->kind;
            print_child(*n.rhs, variable, rk == NodeKind::add || rk == NodeKind::subtract, out);
            return;
        }
        case NodeKind::multiply:
        case NodeKind::divide: {
            const auto additive = [](NodeKind k) { return k == NodeKind::add || k == NodeKind::subtract; };
            print_child(*n.lhs, variable, additive(n.lhs->kind), out);
            out += n.kind == NodeKind::multiply ? '*' : '/';
            const NodeKind rk = n.rhs->kind;
            print_child(*n.rhs, variable,
                        additive(rk) || rk == NodeKind::multiply || rk == NodeKind::divide, out);
            return;
        }
        case NodeKind::power: {
            // The base slot accepts a unary, the exponent slot a factor.
            const NodeKind bk = n.lhs->kind;
            print_child(*n.lhs, variable, !(is_atom_kind(bk) || bk == NodeKind::negate), out);
            out += '^';
            const NodeKind ek = n.rhs->kind;
            print_child(*n.rhs, variable,
                        !(is_atom_kind(ek) || ek == NodeKind::negate || ek == NodeKind::power), out);
            return;
        }
        case NodeKind::call:
            out += func_names[static_cast<std::size_t>(n.func)];
            out += '(';
            print_node(*n.lhs, variable, out);
            out += ')';
            return;
    }
}

std::string node_text(const ExprNode& n, const std::string& variable) {
    std::string out;
    print_node(n, variable, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

bool jet_is_constant(const Jet3& j) { return j.df == 0.0 && j.d2f == 0.0 && j.d3f == 0.0; }

Jet3 eval_power(const ExprNode& n, const Jet3& base, const Jet3& expo, const std::string& variable) {
    if (jet_is_constant(expo)) {
        if (expo.f == std::floor(expo.f) && std::abs(expo.f) <= 1e9) {
            const long long k = static_cast<long long>(expo.f);
            if (base.f == 0.0 && k < 0)
                throw EvalDomainError(node_text(n, variable), "zero raised to a negative power");
            return pow_integer(base, k);
        }
        if (base.f <= 0.0)
            throw EvalDomainError(node_text(n, variable), "non-integer power of a non-positive base");
        return pow_real(base, expo.f);
    }
    if (base.f <= 0.0)
        throw EvalDomainError(node_text(n, variable),
                              "power with a non-constant exponent needs a positive base");
    return exp(expo * log(base));
}

Jet3 eval_call(const ExprNode& n, const Jet3& arg, const std::string& variable) {
    switch (n.func) {
        case FuncId::sin: return sin(arg);
        case FuncId::cos: return cos(arg);
        case FuncId::tan: return tan(arg);
        case FuncId::exp: return exp(arg);
        case FuncId::log:
            if (arg.f <= 0.0) throw EvalDomainError(node_text(n, variable), "log of a non-positive value");
            return log(arg);
        case FuncId::sqrt:
            if (arg.f < 0.0) throw EvalDomainError(node_text(n, variable), "sqrt of a negative value");
            if (arg.f == 0.0) {
                if (jet_is_constant(arg)) return Jet3::constant(0.0);
                throw EvalDomainError(node_text(n, variable), "sqrt has unbounded derivatives at zero");
            }
            return sqrt(arg);
        case FuncId::sinh: return sinh(arg);
        case FuncId::cosh: return cosh(arg);
        case FuncId::tanh: return tanh(arg);
        case FuncId::abs:
            if (arg.f == 0.0) throw EvalDomainError(node_text(n, variable), "abs has no derivative at zero");
            return abs(arg);
    }
    throw NumericalError("unreachable function id");
}

Jet3 eval_node(const ExprNode& n, double t, const std::string& variable) {
    switch (n.kind) {
        case NodeKind::number: return Jet3::constant(n.value);
        case NodeKind::variable: return Jet3::variable(t);
        case NodeKind::negate: return -eval_node(*n.lhs, t, variable);
        case NodeKind::add: return eval_node(*n.lhs, t, variable) + eval_node(*n.rhs, t, variable);
        case NodeKind::subtract: return eval_node(*n.lhs, t, variable) - eval_node(*n.rhs, t, variable);
        case NodeKind::multiply: return eval_node(*n.lhs, t, variable) * eval_node(*n.rhs, t, variable);
        case NodeKind::divide: {
            const Jet3 num = eval_node(*n.lhs, t, variable);
            const Jet3 den = eval_node(*n.rhs, t, variable);
            if (den.f == 0.0) throw EvalDomainError(node_text(n, variable), "division by zero");
            return num / den;
        }
        case NodeKind::power:
            return eval_power(n, eval_node(*n.lhs, t, variable), eval_node(*n.rhs, t, variable), variable);
        case NodeKind::call: return eval_call(n, eval_node(*n.lhs, t, variable), variable);
    }
    throw NumericalError("unreachable node kind");
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::number: return a.value == b.value;
        case NodeKind::variable: return true;
        case NodeKind::negate: return nodes_equal(*a.lhs, *b.lhs);
        case NodeKind::call: return a.func == b.func && nodes_equal(*a.lhs, *b.lhs);
        default: return nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
    }
}

}  // namespace

const char* func_name(FuncId id) { return func_names[static_cast<std::size_t>(id)]; }

const ExprNode& Expression::root() const {
    if (!root_) throw std::logic_error("empty Expression");
    return *root_;
}

std::string Expression::print() const {
    std::string out;
    print_node(root(), variable_, out);
    return out;
}

Expression parse_expression(std::string_view source, std::string_view variable_name) {
    if (source.empty()) fail(0, {"number", "identifier", "'('", "'-'"});
    Parser parser(source, variable_name);
    return Expression(parser.parse(), std::string(source), std::string(variable_name));
}

Jet3 eval_jet3(const Expression& expr, double t) { return eval_node(expr.root(), t, expr.variable()); }

double eval_value(const Expression& expr, double t) { return eval_jet3(expr, t).f; }

bool structurally_equal(const Expression& a, const Expression& b) {
    return nodes_equal(a.root(), b.root());
}

Expression linear_combination(double constant, std::span<const std::pair<double, Expression>> terms) {
    std::string variable;
    for (const auto& [coeff, e] : terms)
        if (!e.empty()) {
            variable = e.variable();
            break;
        }

    NodePtr acc = number_node(constant);
    for (const auto& [coeff, e] : terms) {
        if (coeff == 0.0 || e.empty()) continue;
        if (e.variable() != variable)
            throw InputError("linear_combination: terms use different variables");
        auto term_root = std::make_shared<const ExprNode>(e.root());
        NodePtr scaled = make_node({NodeKind::multiply, 0.0, FuncId::sin,
                                    number_node(std::abs(coeff)), term_root, 0, 0});
        acc = make_node({coeff > 0.0 ? NodeKind::add : NodeKind::subtract, 0.0, FuncId::sin, acc,
                         scaled, 0, 0});
    }
    Expression built(acc, {}, variable);
    return Expression(acc, built.print(), variable);
}

}  // namespace galmann
