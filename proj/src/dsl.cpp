#include "qdissect/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qdissect::dsl {

namespace {

struct Token {
    enum class Type {
        Int, Q, FSym, Name,
        Plus, Minus, Star, Slash, Caret,
        LParen, RParen, Comma,
        EqEq, EqMod, Assign,
        End
    };
    Type type = Type::End;
    Span span;
    mpz_class int_value;
    int subscript = 0;
    std::string text;
};

const char* token_name(Token::Type t) {
    switch (t) {
        case Token::Type::Int: return "integer";
        case Token::Type::Q: return "'q'";
        case Token::Type::FSym: return "eta symbol";
        case Token::Type::Name: return "name";
        case Token::Type::Plus: return "'+'";
        case Token::Type::Minus: return "'-'";
        case Token::Type::Star: return "'*'";
        case Token::Type::Slash: return "'/'";
        case Token::Type::Caret: return "'^'";
        case Token::Type::LParen: return "'('";
        case Token::Type::RParen: return "')'";
        case Token::Type::Comma: return "','";
        case Token::Type::EqEq: return "'=='";
        case Token::Type::EqMod: return "'=mod='";
        case Token::Type::Assign: return "'='";
        case Token::Type::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    int i = 0;
    const int n = static_cast<int>(text.size());
    auto push = [&](Token::Type t, int b, int e) {
        Token tok;
        tok.type = t;
        tok.span = {b, e};
        out.push_back(std::move(tok));
        return &out.back();
    };
    while (i < n) {
        char c = text[static_cast<std::size_t>(i)];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        int b = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < n && std::isdigit(static_cast<unsigned char>(text[static_cast<std::size_t>(i)]))) ++i;
            Token* t = push(Token::Type::Int, b, i);
            t->int_value = mpz_class(std::string(text.substr(static_cast<std::size_t>(b),
                                                             static_cast<std::size_t>(i - b))));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < n) {
                char d = text[static_cast<std::size_t>(i)];
                if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_') break;
                ++i;
            }
            std::string word(text.substr(static_cast<std::size_t>(b), static_cast<std::size_t>(i - b)));
            if (word == "q") {
                push(Token::Type::Q, b, i);
            } else if (word.size() > 1 && word[0] == 'f' &&
                       std::all_of(word.begin() + 1, word.end(),
                                   [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
                if (word.size() > 8)
                    throw ParseError("eta subscript out of range", {b, i});
                Token* t = push(Token::Type::FSym, b, i);
                long sub = std::stol(word.substr(1));
                if (sub < 1 || sub > 1000000)
                    throw ParseError("eta subscript out of range", {b, i});
                t->subscript = static_cast<int>(sub);
            } else {
                Token* t = push(Token::Type::Name, b, i);
                t->text = std::move(word);
            }
            continue;
        }
        switch (c) {
            case '+': push(Token::Type::Plus, b, ++i); break;
            case '-': push(Token::Type::Minus, b, ++i); break;
            case '*': push(Token::Type::Star, b, ++i); break;
            case '/': push(Token::Type::Slash, b, ++i); break;
            case '^': push(Token::Type::Caret, b, ++i); break;
            case '(': push(Token::Type::LParen, b, ++i); break;
            case ')': push(Token::Type::RParen, b, ++i); break;
            case ',': push(Token::Type::Comma, b, ++i); break;
            case '=':
                if (text.substr(static_cast<std::size_t>(i), 2) == "==") {
                    i += 2;
                    push(Token::Type::EqEq, b, i);
                } else if (text.substr(static_cast<std::size_t>(i), 5) == "=mod=") {
                    i += 5;
                    push(Token::Type::EqMod, b, i);
                } else {
                    push(Token::Type::Assign, b, ++i);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", {b, b + 1});
        }
    }
    Token end;
    end.type = Token::Type::End;
    end.span = {n, n};
    out.push_back(std::move(end));
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprPtr parse_expression() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (peek().type == Token::Type::Plus) {
                advance();
                lhs = binary(ExprNode::Kind::Add, lhs, parse_term());
            } else if (peek().type == Token::Type::Minus) {
                advance();
                lhs = binary(ExprNode::Kind::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    const Token& peek(int ahead = 0) const {
        std::size_t p = pos_ + static_cast<std::size_t>(ahead);
        return p < toks_.size() ? toks_[p] : toks_.back();
    }

    Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    Token expect(Token::Type t, const char* what) {
        if (peek().type != t)
            throw ParseError(std::string("expected ") + what + ", found " + token_name(peek().type),
                             peek().span, {what});
        return advance();
    }

    bool at_end() const { return peek().type == Token::Type::End; }

private:
    ExprPtr binary(ExprNode::Kind kind, ExprPtr lhs, ExprPtr rhs) {
        auto node = std::make_shared<ExprNode>();
        node->kind = kind;
        node->span = {lhs->span.begin, rhs->span.end};
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (peek().type == Token::Type::Star) {
                advance();
                lhs = binary(ExprNode::Kind::Mul, lhs, parse_factor());
            } else if (peek().type == Token::Type::Slash) {
                advance();
                lhs = binary(ExprNode::Kind::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    int parse_signed_int_exponent() {
        bool neg = false;
        if (peek().type == Token::Type::Minus) { advance(); neg = true; }
        Token t = expect(Token::Type::Int, "integer exponent");
        if (!t.int_value.fits_sint_p())
            throw ParseError("exponent out of range", t.span);
        int v = static_cast<int>(t.int_value.get_si());
        return neg ? -v : v;
    }

    ExprPtr parse_factor() {
        if (peek().type == Token::Type::Minus) {
            Token minus = advance();
            ExprPtr inner = parse_factor_tail();
            auto node = std::make_shared<ExprNode>();
            node->kind = ExprNode::Kind::Neg;
            node->span = {minus.span.begin, inner->span.end};
            node->lhs = std::move(inner);
            return node;
        }
        return parse_factor_tail();
    }

    ExprPtr parse_factor_tail() {
        ExprPtr atom = parse_atom();
        if (peek().type != Token::Type::Caret) return atom;
        advance();
        int e = parse_signed_int_exponent();
        int end = toks_[pos_ - 1].span.end;
        if (atom->kind == ExprNode::Kind::QPower && atom->exponent == 1) {
            auto node = std::make_shared<ExprNode>(*atom);
            node->exponent = e;
            node->span.end = end;
            return node;
        }
        if (atom->kind == ExprNode::Kind::EtaSym && atom->exponent == 1) {
            auto node = std::make_shared<ExprNode>(*atom);
            node->exponent = e;
            node->span.end = end;
            return node;
        }
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::Pow;
        node->span = {atom->span.begin, end};
        node->exponent = e;
        node->lhs = std::move(atom);
        return node;
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::Int: {
                Token tok = advance();
                auto node = std::make_shared<ExprNode>();
                node->kind = ExprNode::Kind::IntLit;
                node->span = tok.span;
                node->int_value = tok.int_value;
                return node;
            }
            case Token::Type::Q: {
                Token tok = advance();
                auto node = std::make_shared<ExprNode>();
                node->kind = ExprNode::Kind::QPower;
                node->span = tok.span;
                node->exponent = 1;
                return node;
            }
            case Token::Type::FSym: {
                Token tok = advance();
                auto node = std::make_shared<ExprNode>();
                node->kind = ExprNode::Kind::EtaSym;
                node->span = tok.span;
                node->subscript = tok.subscript;
                node->exponent = 1;
                return node;
            }
            case Token::Type::Name: {
                Token tok = advance();
                auto node = std::make_shared<ExprNode>();
                node->kind = ExprNode::Kind::Name;
                node->span = tok.span;
                node->name = tok.text;
                return node;
            }
            case Token::Type::LParen: {
                Token open = advance();
                ExprPtr inner = parse_expression();
                if (peek().type != Token::Type::RParen)
                    throw ParseError("unbalanced parentheses", open.span, {"')'"});
                Token close = advance();
                auto node = std::make_shared<ExprNode>();
                node->kind = ExprNode::Kind::Paren;
                node->span = {open.span.begin, close.span.end};
                node->lhs = std::move(inner);
                return node;
            }
            default:
                throw ParseError(std::string("expected an operand, found ") + token_name(t.type),
                                 t.span, {"integer", "'q'", "eta symbol", "name", "'('"});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

int precedence(ExprNode::Kind k) {
    switch (k) {
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub: return 1;
        case ExprNode::Kind::Mul:
        case ExprNode::Kind::Div: return 2;
        case ExprNode::Kind::Neg: return 3;
        case ExprNode::Kind::Pow: return 4;
        default: return 5;
    }
}

const ExprNode& skip_paren(const ExprNode& e) {
    return e.kind == ExprNode::Kind::Paren ? skip_paren(*e.lhs) : e;
}

}  // namespace

ExprPtr parse_expr(std::string_view text) {
    Parser p(lex(text));
    ExprPtr e = p.parse_expression();
    if (!p.at_end())
        throw ParseError(std::string("unexpected trailing ") + token_name(p.peek().type),
                         p.peek().span);
    return e;
}

std::string print_expr(const ExprNode& e) {
    auto wrap = [](const ExprNode& child, int min_prec) {
        std::string s = print_expr(child);
        if (precedence(child.kind) < min_prec) return "(" + s + ")";
        return s;
    };
    switch (e.kind) {
        case ExprNode::Kind::IntLit:
            if (e.int_value < 0)
                throw std::logic_error("negative literal in AST; use a Neg node");
            return e.int_value.get_str();
        case ExprNode::Kind::QPower:
            return e.exponent == 1 ? "q" : "q^" + std::to_string(e.exponent);
        case ExprNode::Kind::EtaSym: {
            std::string s = "f" + std::to_string(e.subscript);
            if (e.exponent != 1) s += "^" + std::to_string(e.exponent);
            return s;
        }
        case ExprNode::Kind::Name:
            return e.name;
        case ExprNode::Kind::Neg:
            return "-" + wrap(*e.lhs, 3);
        case ExprNode::Kind::Add:
            return wrap(*e.lhs, 1) + " + " + wrap(*e.rhs, 2);
        case ExprNode::Kind::Sub:
            return wrap(*e.lhs, 1) + " - " + wrap(*e.rhs, 2);
        case ExprNode::Kind::Mul:
            return wrap(*e.lhs, 2) + "*" + wrap(*e.rhs, 3);
        case ExprNode::Kind::Div:
            return wrap(*e.lhs, 2) + "/" + wrap(*e.rhs, 3);
        case ExprNode::Kind::Pow:
            return wrap(*e.lhs, 5) + "^" + std::to_string(e.exponent);
        case ExprNode::Kind::Paren:
            return "(" + print_expr(*e.lhs) + ")";
    }
    return "";
}

bool structurally_equal(const ExprNode& a_in, const ExprNode& b_in) {
    const ExprNode& a = skip_paren(a_in);
    const ExprNode& b = skip_paren(b_in);
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::IntLit: return a.int_value == b.int_value;
        case ExprNode::Kind::QPower: return a.exponent == b.exponent;
        case ExprNode::Kind::EtaSym: return a.subscript == b.subscript && a.exponent == b.exponent;
        case ExprNode::Kind::Name: return a.name == b.name;
        case ExprNode::Kind::Neg: return structurally_equal(*a.lhs, *b.lhs);
        case ExprNode::Kind::Pow:
            return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

Series eval_expr(const ExprNode& e, const CoefficientRing& ring, int order,
                 const Environment* env) {
    switch (e.kind) {
        case ExprNode::Kind::IntLit:
            return Series::constant(e.int_value, ring, order);
        case ExprNode::Kind::QPower:
            if (e.exponent < 0)
                throw EvalError("negative power of q has no series expansion", e.span);
            return Series::q_power(e.exponent, ring, order);
        case ExprNode::Kind::EtaSym: {
            Series base = eta::expand_f(e.subscript, ring, order);
            if (e.exponent < 0) return pow(invert(base), -e.exponent);
            return pow(base, e.exponent);
        }
        case ExprNode::Kind::Name: {
            if (env) {
                auto it = env->find(e.name);
                if (it != env->end()) return it->second;
            }
            throw EvalError("undefined name '" + e.name + "'", e.span);
        }
        case ExprNode::Kind::Neg:
            return scale(eval_expr(*e.lhs, ring, order, env), -1);
        case ExprNode::Kind::Paren:
            return eval_expr(*e.lhs, ring, order, env);
        case ExprNode::Kind::Pow: {
            Series base = eval_expr(*e.lhs, ring, order, env);
            try {
                if (e.exponent < 0) return pow(invert(base), -e.exponent);
                return pow(base, e.exponent);
            } catch (const std::invalid_argument& ex) {
                throw EvalError(ex.what(), e.lhs->span);
            }
        }
        default: {
            Series a = eval_expr(*e.lhs, ring, order, env);
            Series b = eval_expr(*e.rhs, ring, order, env);
            try {
                switch (e.kind) {
                    case ExprNode::Kind::Add: return add(a, b);
                    case ExprNode::Kind::Sub: return sub(a, b);
                    case ExprNode::Kind::Mul: return mul(a, b);
                    case ExprNode::Kind::Div: {
                        try {
                            return mul(a, invert(b));
                        } catch (const std::invalid_argument& ex) {
                            throw EvalError(std::string("denominator: ") + ex.what(), e.rhs->span);
                        }
                    }
                    default: break;
                }
            } catch (const std::invalid_argument& ex) {
                throw EvalError(ex.what(), e.span);
            }
            throw EvalError("unsupported expression node", e.span);
        }
    }
}

namespace {

struct Monomial {
    mpz_class coeff = 1;
    int qpow = 0;
    eta::EtaQuotient quotient;
};

Monomial monomial_pow(const Monomial& m, int e, Span span) {
    Monomial base = m;
    if (e < 0) {
        if (base.qpow != 0)
            throw EvalError("cannot invert a q power inside an eta monomial", span);
        if (base.coeff != 1 && base.coeff != -1)
            throw EvalError("cannot invert coefficient " + base.coeff.get_str(), span);
        base.quotient = base.quotient.inverse();
        e = -e;
    }
    Monomial out;
    mpz_pow_ui(out.coeff.get_mpz_t(), base.coeff.get_mpz_t(), static_cast<unsigned long>(e));
    out.qpow = base.qpow * e;
    for (const auto& [k, exp] : base.quotient.exps) out.quotient.merge(k, exp * e);
    return out;
}

Monomial to_monomial(const ExprNode& e) {
    switch (e.kind) {
        case ExprNode::Kind::IntLit: {
            Monomial m;
            m.coeff = e.int_value;
            return m;
        }
        case ExprNode::Kind::QPower: {
            if (e.exponent < 0)
                throw EvalError("negative q power is not an eta monomial", e.span);
            Monomial m;
            m.qpow = e.exponent;
            return m;
        }
        case ExprNode::Kind::EtaSym: {
            Monomial m;
            m.quotient.merge(e.subscript, e.exponent);
            return m;
        }
        case ExprNode::Kind::Neg: {
            Monomial m = to_monomial(*e.lhs);
            m.coeff = -m.coeff;
            return m;
        }
        case ExprNode::Kind::Paren:
            return to_monomial(*e.lhs);
        case ExprNode::Kind::Pow:
            return monomial_pow(to_monomial(*e.lhs), e.exponent, e.span);
        case ExprNode::Kind::Mul: {
            Monomial a = to_monomial(*e.lhs);
            Monomial b = to_monomial(*e.rhs);
            a.coeff *= b.coeff;
            a.qpow += b.qpow;
            for (const auto& [k, exp] : b.quotient.exps) a.quotient.merge(k, exp);
            return a;
        }
        case ExprNode::Kind::Div: {
            Monomial a = to_monomial(*e.lhs);
            Monomial b = to_monomial(*e.rhs);
            if (b.coeff == 0)
                throw EvalError("division by zero", e.rhs->span);
            if (!mpz_divisible_p(a.coeff.get_mpz_t(), b.coeff.get_mpz_t()))
                throw EvalError("non-integer coefficient division", e.span);
            mpz_divexact(a.coeff.get_mpz_t(), a.coeff.get_mpz_t(), b.coeff.get_mpz_t());
            a.qpow -= b.qpow;
            for (const auto& [k, exp] : b.quotient.exps) a.quotient.merge(k, -exp);
            return a;
        }
        default:
            throw EvalError("expression is not a sum of eta monomials", e.span);
    }
}

void collect_terms(const ExprNode& e, bool negate, eta::EtaExpr& out) {
    const ExprNode& n = skip_paren(e);
    if (n.kind == ExprNode::Kind::Add || n.kind == ExprNode::Kind::Sub) {
        collect_terms(*n.lhs, negate, out);
        collect_terms(*n.rhs, negate != (n.kind == ExprNode::Kind::Sub), out);
        return;
    }
    Monomial m = to_monomial(n);
    if (m.qpow < 0)
        throw EvalError("negative q power in eta monomial", n.span);
    eta::EtaMonomial term;
    term.coeff = negate ? -m.coeff : m.coeff;
    term.qpow = m.qpow;
    term.quotient = std::move(m.quotient);
    out.terms.push_back(std::move(term));
}

}  // namespace

eta::EtaExpr eta_expr_from_ast(const ExprNode& e) {
    eta::EtaExpr out;
    collect_terms(e, false, out);
    return out;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

int expect_small_int(Parser& p, const char* what) {
    Token t = p.expect(Token::Type::Int, what);
    if (!t.int_value.fits_sint_p())
        throw ParseError("value out of range", t.span);
    return static_cast<int>(t.int_value.get_si());
}

std::uint64_t expect_modulus(Parser& p) {
    Token t = p.expect(Token::Type::Int, "modulus");
    if (!t.int_value.fits_ulong_p())
        throw ParseError("modulus out of range", t.span);
    return static_cast<std::uint64_t>(t.int_value.get_ui());
}

Statement parse_statement(const std::string& line, int line_no) {
    Statement st;
    st.line = line_no;
    st.text = line;
    Parser p(lex(line));
    const Token& head = p.peek();
    if (head.type != Token::Type::Name)
        throw ParseError("expected a statement keyword", head.span,
                         {"order", "ring", "let", "assert"});
    std::string kw = head.text;
    p.advance();
    if (kw == "order") {
        st.kind = Statement::Kind::SetOrder;
        st.order = expect_small_int(p, "order");
    } else if (kw == "ring") {
        st.kind = Statement::Kind::SetRing;
        Token t = p.expect(Token::Type::Name, "'exact' or 'mod'");
        if (t.text == "exact") {
            st.modulus = 0;
        } else if (t.text == "mod") {
            st.modulus = expect_modulus(p);
        } else {
            throw ParseError("expected 'exact' or 'mod'", t.span, {"exact", "mod"});
        }
    } else if (kw == "let") {
        Token name = p.expect(Token::Type::Name, "name");
        st.name = name.text;
        p.expect(Token::Type::Assign, "'='");
        if (p.peek().type == Token::Type::Name && p.peek(1).type == Token::Type::LParen &&
            (p.peek().text == "extract" || p.peek().text == "reduce")) {
            std::string fn = p.advance().text;
            p.expect(Token::Type::LParen, "'('");
            Token src = p.expect(Token::Type::Name, "source name");
            st.source = src.text;
            p.expect(Token::Type::Comma, "','");
            if (fn == "extract") {
                st.kind = Statement::Kind::LetExtract;
                st.residue = expect_small_int(p, "residue");
                p.expect(Token::Type::Comma, "','");
                st.step = expect_small_int(p, "step");
            } else {
                st.kind = Statement::Kind::LetReduce;
                st.modulus = expect_modulus(p);
            }
            p.expect(Token::Type::RParen, "')'");
        } else {
            st.kind = Statement::Kind::Let;
            st.expr = p.parse_expression();
        }
    } else if (kw == "assert") {
        st.lhs = p.parse_expression();
        if (p.peek().type == Token::Type::EqEq) {
            p.advance();
            st.kind = Statement::Kind::AssertEqual;
        } else if (p.peek().type == Token::Type::EqMod) {
            p.advance();
            st.kind = Statement::Kind::AssertCongruent;
            st.modulus = expect_modulus(p);
        } else {
            throw ParseError("expected '==' or '=mod='", p.peek().span, {"==", "=mod="});
        }
        st.rhs = p.parse_expression();
        if (p.peek().type == Token::Type::Name && p.peek().text == "upto") {
            p.advance();
            st.upto = expect_small_int(p, "order");
        }
    } else {
        throw ParseError("unknown statement '" + kw + "'", head.span,
                         {"order", "ring", "let", "assert"});
    }
    if (!p.at_end())
        throw ParseError(std::string("unexpected trailing ") + token_name(p.peek().type),
                         p.peek().span);
    return st;
}

}  // namespace

Script parse_script(std::string_view text) {
    Script script;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                               : nl - start);
        ++line_no;
        std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (!line.empty()) {
            try {
                script.statements.push_back(parse_statement(line, line_no));
            } catch (const ParseError& ex) {
                std::ostringstream msg;
                msg << ex.what() << " (column " << ex.span.begin + 1 << ")";
                if (!ex.expected.empty()) {
                    msg << "; expected";
                    for (const auto& e : ex.expected) msg << " " << e;
                }
                throw ScriptError(msg.str(), line_no);
            }
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return script;
}

bool Report::all_passed() const {
    for (const auto& a : assertions)
        if (!a.passed) return false;
    return true;
}

namespace {

std::string coeff_string(const Series& s, int i) {
    return s.coeff(i).get_str();
}

}  // namespace

Report run_script(const Script& script) {
    Report report;
    int order = 500;
    CoefficientRing ring = CoefficientRing::exact();
    Environment env;

    for (const Statement& st : script.statements) {
        try {
            switch (st.kind) {
                case Statement::Kind::SetOrder:
                    if (st.order < 0) throw ScriptError("order must be >= 0", st.line);
                    order = st.order;
                    break;
                case Statement::Kind::SetRing:
                    ring = st.modulus == 0 ? CoefficientRing::exact()
                                           : CoefficientRing::mod(st.modulus);
                    break;
                case Statement::Kind::Let:
                    env.insert_or_assign(st.name, eval_expr(*st.expr, ring, order, &env));
                    break;
                case Statement::Kind::LetExtract: {
                    auto it = env.find(st.source);
                    if (it == env.end())
                        throw ScriptError("undefined name '" + st.source + "'", st.line);
                    env.insert_or_assign(st.name, extract_ap(it->second, st.residue, st.step));
                    break;
                }
                case Statement::Kind::LetReduce: {
                    auto it = env.find(st.source);
                    if (it == env.end())
                        throw ScriptError("undefined name '" + st.source + "'", st.line);
                    env.insert_or_assign(st.name, reduce_mod(it->second, st.modulus));
                    break;
                }
                case Statement::Kind::AssertEqual:
                case Statement::Kind::AssertCongruent: {
                    Series lhs = eval_expr(*st.lhs, ring, order, &env);
                    Series rhs = eval_expr(*st.rhs, ring, order, &env);
                    int depth = std::min(lhs.order(), rhs.order());
                    if (st.upto) {
                        if (*st.upto > depth)
                            throw ScriptError("order exceeded: upto " + std::to_string(*st.upto) +
                                                  " but operands reach only " + std::to_string(depth),
                                              st.line);
                        depth = *st.upto;
                    }
                    AssertionOutcome outcome;
                    outcome.line = st.line;
                    outcome.text = st.text;
                    outcome.order_checked = depth;
                    int bad = -1;
                    if (st.kind == Statement::Kind::AssertEqual) {
                        if (!(lhs.ring() == rhs.ring()))
                            throw ScriptError("ring mismatch: " + lhs.ring().to_string() + " vs " +
                                                  rhs.ring().to_string(),
                                              st.line);
                        for (int i = 0; i <= depth; ++i)
                            if (lhs.coeff(i) != rhs.coeff(i)) { bad = i; break; }
                    } else {
                        bad = first_incongruent(lhs, rhs, st.modulus, depth);
                    }
                    outcome.passed = bad == -1;
                    if (bad != -1) {
                        outcome.first_bad_exponent = bad;
                        outcome.lhs_coeff = coeff_string(lhs, bad);
                        outcome.rhs_coeff = coeff_string(rhs, bad);
                    }
                    report.assertions.push_back(std::move(outcome));
                    break;
                }
            }
        } catch (const ScriptError&) {
            throw;
        } catch (const EvalError& ex) {
            throw ScriptError(ex.what(), st.line);
        } catch (const std::invalid_argument& ex) {
            throw ScriptError(ex.what(), st.line);
        }
    }
    return report;
}

Report run_script_text(std::string_view text) {
    return run_script(parse_script(text));
}

}  // namespace qdissect::dsl
