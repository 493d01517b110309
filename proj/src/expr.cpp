#include "gaffine/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "gaffine/errors.hpp"

namespace gaffine {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;
using Kind = ExprNode::Kind;

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok type;
    std::size_t pos;
    std::size_t end;
    double number = 0.0;
    std::string text;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::string buf(s.substr(i));
            char* endp = nullptr;
            const double v = std::strtod(buf.c_str(), &endp);
            const std::size_t len = static_cast<std::size_t>(endp - buf.c_str());
            if (len == 0) throw ParseError("malformed number", i);
            out.push_back({Tok::Number, i, i + len, v, {}});
            i += len;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Name, i, j, 0.0, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        Tok t;
        switch (c) {
            case '+': t = Tok::Plus; break;
            case '-': t = Tok::Minus; break;
            case '*': t = Tok::Star; break;
            case '/': t = Tok::Slash; break;
            case '^': t = Tok::Caret; break;
            case '(': t = Tok::LParen; break;
            case ')': t = Tok::RParen; break;
            case ',': t = Tok::Comma; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({t, i, i + 1, 0.0, {}});
        ++i;
    }
    out.push_back({Tok::End, s.size(), s.size(), 0.0, {}});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    NodePtr expr() {
        NodePtr lhs = term();
        while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
            const Kind k = next().type == Tok::Plus ? Kind::Add : Kind::Sub;
            lhs = make(k, lhs, term());
        }
        return lhs;
    }

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }

    // Reported at the offending token, or where the last token ended at end of input.
    [[noreturn]] void unexpected(const std::string& what) const {
        const std::size_t at = peek().type != Tok::End ? peek().pos : i_ == 0 ? 0 : toks_[i_ - 1].end;
        throw ParseError(what, at);
    }

    void expect(Tok t, const char* what) {
        if (peek().type != t) unexpected(std::string("expected ") + what);
        ++i_;
    }

private:
    NodePtr term() {
        NodePtr lhs = unary();
        while (peek().type == Tok::Star || peek().type == Tok::Slash) {
            const Kind k = next().type == Tok::Star ? Kind::Mul : Kind::Div;
            lhs = make(k, lhs, unary());
        }
        return lhs;
    }

    NodePtr unary() {
        if (peek().type == Tok::Minus) {
            next();
            return make(Kind::Neg, unary());
        }
        if (peek().type == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (peek().type == Tok::Caret) {
            next();
            return make(Kind::Pow, base, unary());
        }
        return base;
    }

    NodePtr primary() {
        const Token& t = peek();
        if (t.type == Tok::Number) {
            next();
            auto n = std::make_shared<ExprNode>();
            n->kind = Kind::Number;
            n->number = t.number;
            return n;
        }
        if (t.type == Tok::Name) {
            next();
            if (peek().type == Tok::LParen) {
                ElemFn fn;
                if (!elem_fn_from_name(t.text, fn)) throw ParseError("unknown function '" + t.text + "'", t.pos);
                next();
                NodePtr arg = expr();
                expect(Tok::RParen, "')'");
                auto n = std::make_shared<ExprNode>();
                n->kind = Kind::Call;
                n->fn = fn;
                n->name = t.text;
                n->lhs = arg;
                return n;
            }
            auto n = std::make_shared<ExprNode>();
            n->kind = Kind::Symbol;
            n->name = t.text;
            return n;
        }
        if (t.type == Tok::LParen) {
            next();
            NodePtr e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (t.type == Tok::End) unexpected("unexpected end of input");
        unexpected("expected a number, name or '('");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

bool integral_value(double v) { return std::abs(v) <= 1e9 && v == std::round(v); }

Jet eval_node(const ExprNode& n, const Jet& x, const std::map<std::string, double>& params,
              std::string_view var) {
    const int order = x.order();
    switch (n.kind) {
        case Kind::Number: return Jet::constant(n.number, order);
        case Kind::Symbol: {
            if (n.name == var) return x;
            if (auto it = params.find(n.name); it != params.end()) return Jet::constant(it->second, order);
            if (n.name == "pi") return Jet::constant(std::numbers::pi, order);
            if (n.name == "e") return Jet::constant(std::numbers::e, order);
            throw DomainError("unbound symbol '" + n.name + "'");
        }
        case Kind::Neg: return -eval_node(*n.lhs, x, params, var);
        case Kind::Add: return eval_node(*n.lhs, x, params, var) + eval_node(*n.rhs, x, params, var);
        case Kind::Sub: return eval_node(*n.lhs, x, params, var) - eval_node(*n.rhs, x, params, var);
        case Kind::Mul: return eval_node(*n.lhs, x, params, var) * eval_node(*n.rhs, x, params, var);
        case Kind::Div: return eval_node(*n.lhs, x, params, var) / eval_node(*n.rhs, x, params, var);
        case Kind::Pow: {
            const Jet b = eval_node(*n.lhs, x, params, var);
            const Jet p = eval_node(*n.rhs, x, params, var);
            if (p.is_constant()) {
                if (integral_value(p[0])) return pow_int(b, static_cast<int>(p[0]));
                return pow_real(b, p[0]);
            }
            return exp(p * log(b));
        }
        case Kind::Call: return apply(n.fn, eval_node(*n.lhs, x, params, var));
    }
    return x;
}

void collect(const ExprNode& n, std::set<std::string>& out) {
    if (n.kind == Kind::Symbol && n.name != "pi" && n.name != "e") out.insert(n.name);
    if (n.lhs) collect(*n.lhs, out);
    if (n.rhs) collect(*n.rhs, out);
}

int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Neg: return 3;
        case Kind::Pow: return 4;
        default: return 5;
    }
}

void print(const ExprNode& n, std::string& out);

void print_child(const ExprNode& c, int min_prec, std::string& out) {
    if (precedence(c.kind) < min_prec) {
        out += '(';
        print(c, out);
        out += ')';
    } else {
        print(c, out);
    }
}

void print(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case Kind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            // Negative literals only arise from Expr::constant; keep them atomic.
            if (n.number < 0) {
                out += '(';
                out += buf;
                out += ')';
            } else {
                out += buf;
            }
            return;
        }
        case Kind::Symbol: out += n.name; return;
        case Kind::Neg:
            out += '-';
            print_child(*n.lhs, 3, out);
            return;
        case Kind::Call:
            out += n.name;
            out += '(';
            print(*n.lhs, out);
            out += ')';
            return;
        case Kind::Pow:
            print_child(*n.lhs, 5, out);
            out += '^';
            print_child(*n.rhs, 3, out);
            return;
        default: {
            const int p = precedence(n.kind);
            print_child(*n.lhs, p, out);
            const char* op = n.kind == Kind::Add ? " + " : n.kind == Kind::Sub ? " - " : n.kind == Kind::Mul ? "*" : "/";
            out += op;
            print_child(*n.rhs, p + 1, out);
            return;
        }
    }
}

}  // namespace

Expr Expr::constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Number;
    n->number = v;
    return Expr(n);
}

Jet Expr::eval(const Jet& x, const std::map<std::string, double>& params, std::string_view var) const {
    if (!root_) throw DomainError("evaluating an empty expression");
    return eval_node(*root_, x, params, var);
}

double Expr::eval(double x, const std::map<std::string, double>& params, std::string_view var) const {
    return eval(Jet::constant(x, 0), params, var)[0];
}

std::set<std::string> Expr::symbols() const {
    std::set<std::string> s;
    if (root_) collect(*root_, s);
    return s;
}

std::string Expr::to_string() const {
    std::string out;
    if (root_) print(*root_, out);
    return out;
}

Expr parse_expression(std::string_view src) {
    Parser p(lex(src));
    if (p.peek().type == Tok::End) throw ParseError("empty expression", 0);
    NodePtr root = p.expr();
    if (p.peek().type != Tok::End) p.unexpected("unexpected input");
    return Expr(root);
}

std::vector<Expr> parse_vector_expression(std::string_view src) {
    Parser p(lex(src));
    if (p.peek().type == Tok::End) throw ParseError("empty expression", 0);
    std::vector<Expr> out;
    if (p.peek().type == Tok::LParen) {
        // Try the tuple form first; fall back to a scalar expression.
        Parser probe = p;
        probe.next();
        std::vector<Expr> items{Expr(probe.expr())};
        while (probe.peek().type == Tok::Comma) {
            probe.next();
            items.emplace_back(probe.expr());
        }
        if (items.size() > 1) {
            probe.expect(Tok::RParen, "')'");
            if (probe.peek().type != Tok::End) probe.unexpected("unexpected input after ')'");
            return items;
        }
    }
    NodePtr root = p.expr();
    if (p.peek().type == Tok::Comma) p.unexpected("tuple must be enclosed in parentheses");
    if (p.peek().type != Tok::End) p.unexpected("unexpected input");
    out.emplace_back(root);
    return out;
}

}  // namespace gaffine
