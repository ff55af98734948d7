#include "propkit/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "propkit/error.hpp"
#include "propkit/expr.hpp"

namespace propkit {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t{Tok::Sym, "", line, col};
        std::size_t j = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Tok::Ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::Int;
        } else {
            static constexpr std::string_view two[] = {"..", "<=", ">=", "!=", "=="};
            j = i + 1;
            for (auto op : two)
                if (s.substr(i, 2) == op) j = i + 2;
            if (j == i + 1 && std::string_view("*+-()[]{},;/=<>").find(c) == std::string_view::npos)
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        t.text = std::string(s.substr(i, j - i));
        out.push_back(std::move(t));
        advance(j - i);
    }
    out.push_back(Token{Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, Csp& csp, bool allow_fresh) : toks_(lex(text)), csp_(csp), allow_fresh_(allow_fresh) {}

    void model() {
        while (!at_end()) {
            if (peek_ident("var"))
                declaration(false);
            else if (peek_ident("realvar"))
                declaration(true);
            else if (peek_ident("constraint")) {
                next();
                for (auto& c : constraint()) csp_.add_constraint(std::move(c));
                expect(";");
            } else {
                fail("expected 'var', 'realvar' or 'constraint'");
            }
        }
    }

    Constraint single_constraint() {
        if (peek_ident("constraint")) next();
        auto cs = constraint();
        if (peek().text == ";") next();
        if (!at_end()) fail("trailing input");
        if (cs.size() != 1) fail("expected exactly one constraint");
        return cs.front();
    }

    Domain domain_only() {
        Domain d = peek().text == "[" || peek().text == "{" ? bracketed_domain() : range_domain();
        if (!at_end()) fail("trailing input");
        return d;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == Tok::End; }
    bool peek_ident(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw ParseError(t.line, t.col, what + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
    }

    void expect(std::string_view sym) {
        if (peek().kind != Tok::Sym || peek().text != sym) fail("expected '" + std::string(sym) + "'");
        next();
    }

    std::string identifier() {
        if (peek().kind != Tok::Ident) fail("expected identifier");
        return next().text;
    }

    std::int64_t integer() {
        bool neg = false;
        if (peek().text == "-") {
            next();
            neg = true;
        }
        if (peek().kind != Tok::Int) fail("expected integer");
        const Token& t = peek();
        std::string digits = (neg ? "-" : "") + t.text;
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || p != digits.data() + digits.size()) fail("integer out of range");
        next();
        return v;
    }

    Rational rational() {
        std::string text;
        if (peek().text == "-") {
            next();
            text = "-";
        }
        if (peek().kind != Tok::Int) fail("expected number");
        text += next().text;
        if (peek().text == "/") {
            next();
            if (peek().kind != Tok::Int) fail("expected denominator");
            text += "/" + peek().text;
            if (peek().text.find_first_not_of('0') == std::string::npos) fail("zero denominator");
            next();
        }
        return Rational::parse(text);
    }

    VarId variable() {
        const Token& t = peek();
        std::string name = identifier();
        auto v = csp_.find(name);
        if (!v) throw ParseError(t.line, t.col, "unknown identifier '" + name + "'");
        return *v;
    }

    void declaration(bool real) {
        next();
        const Token& at = peek();
        std::string name = identifier();
        if (is_keyword(name)) throw ParseError(at.line, at.col, "'" + name + "' is a keyword");
        if (name.rfind("_t", 0) == 0 && !allow_fresh_)
            throw ParseError(at.line, at.col, "names starting with '_t' are reserved for fresh variables");
        if (csp_.find(name)) throw ParseError(at.line, at.col, "redeclaration of '" + name + "'");
        if (!peek_ident("in")) fail("expected 'in'");
        next();
        Domain d = real ? real_domain() : int_domain();
        expect(";");
        csp_.add_variable(name, std::move(d));
    }

    static bool is_keyword(std::string_view s) {
        for (auto kw : {"var", "realvar", "in", "constraint", "exactly", "atmost", "abs"})
            if (s == kw) return true;
        return false;
    }

    Domain int_domain() {
        if (peek().text == "{" || peek().text == "[") {
            Domain d = bracketed_domain();
            if (d.is_real()) fail("'var' needs an integer domain; use 'realvar'");
            return d;
        }
        return range_domain();
    }

    Domain real_domain() {
        if (peek().text != "[") fail("expected '['");
        Domain d = bracketed_domain();
        if (!d.is_real()) fail("'realvar' needs a domain [p,q]");
        return d;
    }

    Domain range_domain() {
        std::int64_t lo = integer();
        expect("..");
        std::int64_t hi = integer();
        return Domain::interval(lo, hi);
    }

    Domain bracketed_domain() {
        if (peek().text == "{") {
            next();
            std::vector<std::int64_t> elems;
            if (peek().text != "}") {
                elems.push_back(integer());
                while (peek().text == ",") {
                    next();
                    elems.push_back(integer());
                }
            }
            expect("}");
            return Domain::set(std::move(elems));
        }
        expect("[");
        // Integer interval [l..h] or rational box [p,q].
        std::size_t save = pos_;
        Rational lo = rational();
        if (peek().text == "..") {
            pos_ = save;
            Domain d = range_domain();
            expect("]");
            return d;
        }
        expect(",");
        Rational hi = rational();
        expect("]");
        return Domain::real(lo, hi);
    }

    std::vector<Constraint> constraint() {
        if (peek_ident("exactly") || peek_ident("atmost")) {
            bool exact = next().text == "exactly";
            expect("(");
            VarId x = variable();
            expect(",");
            expect("[");
            std::vector<VarId> list;
            if (peek().text != "]") {
                list.push_back(variable());
                while (peek().text == ",") {
                    next();
                    list.push_back(variable());
                }
            }
            expect("]");
            expect(",");
            VarId z = variable();
            expect(")");
            return {exact ? Constraint::exactly(x, std::move(list), z) : Constraint::atmost(x, std::move(list), z)};
        }
        if (peek_ident("abs") && peek(1).text == "(") {
            next();
            expect("(");
            VarId x = variable();
            expect("-");
            VarId y = variable();
            expect(")");
            if (peek().text != "=" && peek().text != "==") fail("expected '='");
            next();
            return {Constraint::abs_diff(x, y, integer())};
        }
        Expr lhs = expr();
        const Token& op_tok = peek();
        RelOp op;
        if (op_tok.text == "<")
            op = RelOp::Lt;
        else if (op_tok.text == "<=")
            op = RelOp::Le;
        else if (op_tok.text == "=" || op_tok.text == "==")
            op = RelOp::Eq;
        else if (op_tok.text == "!=")
            op = RelOp::Ne;
        else if (op_tok.text == ">=")
            op = RelOp::Ge;
        else if (op_tok.text == ">")
            op = RelOp::Gt;
        else
            fail("expected comparison operator");
        next();
        Expr rhs = expr();
        try {
            return normalize(lhs, op, rhs);
        } catch (const NormalizationError& e) {
            throw ParseError(op_tok.line, op_tok.col, e.what());
        } catch (const OverflowError& e) {
            throw ParseError(op_tok.line, op_tok.col, e.what());
        }
    }

    Expr expr() {
        Expr e = term();
        while (peek().text == "+" || peek().text == "-") {
            bool plus = next().text == "+";
            Expr r = term();
            e = plus ? Expr::add(std::move(e), std::move(r)) : Expr::sub(std::move(e), std::move(r));
        }
        return e;
    }

    Expr term() {
        Expr e = factor();
        while (peek().text == "*") {
            next();
            e = Expr::mul(std::move(e), factor());
        }
        return e;
    }

    Expr factor() {
        if (peek().text == "-") {
            next();
            return Expr::neg(factor());
        }
        if (peek().text == "(") {
            next();
            Expr e = expr();
            expect(")");
            return e;
        }
        if (peek().kind == Tok::Int) return Expr::constant(integer());
        if (peek().kind == Tok::Ident) return Expr::var(variable());
        fail("expected expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Csp& csp_;
    bool allow_fresh_;
};

}  // namespace

Csp parse_model(std::string_view text) {
    Csp csp;
    Parser(text, csp, false).model();
    return csp;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Csp load_model(const std::string& path) { return parse_model(read_file(path)); }

Constraint parse_constraint(const Csp& csp, std::string_view text) {
    Csp copy = csp;
    return Parser(text, copy, true).single_constraint();
}

Domain parse_domain(std::string_view text) {
    Csp none;
    return Parser(text, none, true).domain_only();
}

}  // namespace propkit
