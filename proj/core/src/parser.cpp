// Hand-written lexer and recursive-descent parser for the DLV input dialect.

#include <asplag/syntax.hpp>

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace asplag {
namespace {

enum class Tok {
    ident,
    variable,
    integer,
    string,
    hash,
    lparen,
    rparen,
    lbrace,
    rbrace,
    lbrack,
    rbrack,
    comma,
    semi,
    colon,
    dot,
    if_,
    weak_if,
    bar,
    minus,
    plus,
    star,
    eq,
    neq,
    lt,
    le,
    gt,
    ge,
    end
};

struct Token {
    Tok              kind;
    std::string_view text;
    std::size_t      offset;
};

const std::unordered_set<std::string_view> kAggregateFunctions{"#count", "#sum", "#min", "#max", "#times"};
const std::unordered_set<std::string_view> kSpecialPredicates{"#int", "#succ", "#prec", "#mod"};
const std::unordered_set<std::string_view> kDirectives{"#maxint"};

class Lexer {
public:
    Lexer(std::string_view text, const std::string& file, std::vector<Comment>& comments)
        : text_(text), file_(file), comments_(comments) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::end, {}, pos_});
                return out;
            }
            out.push_back(next());
        }
    }

    [[noreturn]] void fail(std::size_t offset, std::string_view tok, const std::string& msg) const {
        auto [line, col] = position(offset);
        throw ParseError(file_, line, col, std::string(tok), msg);
    }

    std::pair<std::size_t, std::size_t> position(std::size_t offset) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

private:
    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '%') {
                std::size_t start = pos_;
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                std::size_t stop = pos_;
                if (stop > start && text_[stop - 1] == '\r') --stop;
                comments_.push_back({std::string(text_.substr(start, stop - start)), {start, stop}});
            } else {
                return;
            }
        }
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    Token next() {
        std::size_t start = pos_;
        char        c     = text_[pos_];
        auto        tok   = [&](Tok k, std::size_t len) {
            pos_ += len;
            return Token{k, text_.substr(start, len), start};
        };
        auto peek = [&](std::size_t k) { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; };

        if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t len = 1;
            while (pos_ + len < text_.size() && ident_char(text_[pos_ + len])) ++len;
            bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
            return tok(var ? Tok::variable : Tok::ident, len);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (pos_ + len < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + len]))) ++len;
            return tok(Tok::integer, len);
        }
        if (c == '"') {
            std::size_t len = 1;
            while (pos_ + len < text_.size() && text_[pos_ + len] != '"' && text_[pos_ + len] != '\n') {
                if (text_[pos_ + len] == '\\') ++len;
                ++len;
            }
            if (pos_ + len >= text_.size() || text_[pos_ + len] != '"') fail(start, "\"", "unterminated string");
            return tok(Tok::string, len + 1);
        }
        if (c == '#') {
            std::size_t len = 1;
            while (pos_ + len < text_.size() && ident_char(text_[pos_ + len])) ++len;
            if (len == 1) fail(start, "#", "expected directive or aggregate name");
            return tok(Tok::hash, len);
        }
        switch (c) {
            case '(': return tok(Tok::lparen, 1);
            case ')': return tok(Tok::rparen, 1);
            case '{': return tok(Tok::lbrace, 1);
            case '}': return tok(Tok::rbrace, 1);
            case '[': return tok(Tok::lbrack, 1);
            case ']': return tok(Tok::rbrack, 1);
            case ',': return tok(Tok::comma, 1);
            case ';': return tok(Tok::semi, 1);
            case '.': return tok(Tok::dot, 1);
            case '|': return tok(Tok::bar, 1);
            case '-': return tok(Tok::minus, 1);
            case '+': return tok(Tok::plus, 1);
            case '*': return tok(Tok::star, 1);
            case ':':
                if (peek(1) == '-') return tok(Tok::if_, 2);
                if (peek(1) == '~') return tok(Tok::weak_if, 2);
                return tok(Tok::colon, 1);
            case '=': return tok(Tok::eq, peek(1) == '=' ? 2 : 1);
            case '!':
                if (peek(1) == '=') return tok(Tok::neq, 2);
                break;
            case '<':
                if (peek(1) == '>') return tok(Tok::neq, 2);
                if (peek(1) == '=') return tok(Tok::le, 2);
                return tok(Tok::lt, 1);
            case '>':
                if (peek(1) == '=') return tok(Tok::ge, 2);
                return tok(Tok::gt, 1);
            default: break;
        }
        fail(start, text_.substr(start, 1), "unexpected character");
    }

    std::string_view      text_;
    const std::string&    file_;
    std::vector<Comment>& comments_;
    std::size_t           pos_ = 0;
};

Builtin comparison_of(Tok t) {
    switch (t) {
        case Tok::eq: return Builtin::eq;
        case Tok::neq: return Builtin::neq;
        case Tok::lt: return Builtin::lt;
        case Tok::le: return Builtin::le;
        case Tok::gt: return Builtin::gt;
        case Tok::ge: return Builtin::ge;
        default: return Builtin::none;
    }
}

class Parser {
public:
    Parser(std::vector<Token> toks, const Lexer& lexer) : toks_(std::move(toks)), lexer_(lexer) {}

    void parse(Program& prog) {
        while (peek().kind != Tok::end) {
            if (peek().kind == Tok::hash) {
                prog.directives.push_back(directive());
                continue;
            }
            prog.rules.push_back(rule());
        }
    }

    Rule single_rule() {
        Rule r = rule();
        if (peek().kind != Tok::end) fail(peek(), "expected end of input after rule");
        return r;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (t.kind != Tok::end) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        take();
        return true;
    }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        if (t.kind == Tok::end) lexer_.fail(t.offset, "", "unterminated rule: " + msg);
        lexer_.fail(t.offset, t.text, msg);
    }
    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k) fail(peek(), std::string("expected ") + what);
        return take();
    }

    Directive directive() {
        const Token& name = take();
        if (!kDirectives.contains(name.text)) fail(name, "unknown directive");
        expect(Tok::eq, "'='");
        expect(Tok::integer, "integer");
        const Token& dot = expect(Tok::dot, "'.'");
        std::size_t  end = dot.offset + 1;
        Directive    d;
        d.span = {name.offset, end};
        for (std::size_t i = pos_ - 4; i < pos_; ++i) d.text += toks_[i].text;
        return d;
    }

    Rule rule() {
        anon_counter_ = 0;
        Rule        r;
        std::size_t begin = peek().offset;
        if (accept(Tok::weak_if)) {
            r.weak = true;
            body(r);
            expect(Tok::dot, "'.' after weak constraint body");
            std::size_t end = toks_[pos_ - 1].offset + 1;
            if (accept(Tok::lbrack)) {
                if (peek().kind != Tok::colon && peek().kind != Tok::rbrack) r.weak_weight = simple_term();
                if (accept(Tok::colon)) {
                    if (peek().kind != Tok::rbrack) r.weak_level = simple_term();
                }
                end = expect(Tok::rbrack, "']'").offset + 1;
            }
            r.span = {begin, end};
        } else {
            if (!accept(Tok::if_)) {
                head(r);
                if (accept(Tok::if_)) body(r);
            } else {
                body(r);
            }
            r.span = {begin, expect(Tok::dot, "'.'").offset + 1};
        }
        if (r.literal_count() == 0) fail(toks_[pos_ - 1], "empty rule");
        r.normalize();
        return r;
    }

    void head(Rule& r) {
        r.head.push_back(atom());
        while (peek().kind == Tok::bar || (peek().kind == Tok::ident && peek().text == "v")) {
            take();
            r.head.push_back(atom());
        }
    }

    void body(Rule& r) {
        do {
            bool negated = false;
            if (peek().kind == Tok::ident && peek().text == "not" && peek(1).kind != Tok::lparen &&
                !is_operator(peek(1).kind)) {
                take();
                negated = true;
            }
            (negated ? r.neg_body : r.pos_body).push_back(body_literal(true));
        } while (accept(Tok::comma));
    }

    static bool is_operator(Tok k) {
        return comparison_of(k) != Builtin::none || k == Tok::plus || k == Tok::star;
    }

    Term simple_term() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::variable: {
                take();
                if (t.text == "_") return Term::variable("_" + std::to_string(++anon_counter_));
                return Term::variable(std::string(t.text));
            }
            case Tok::ident: take(); return Term::symbol(std::string(t.text));
            case Tok::integer: take(); return Term::integer(std::string(t.text));
            case Tok::string: take(); return {TermKind::string, std::string(t.text)};
            default: fail(t, "expected term");
        }
    }

    std::vector<Term> term_list(Tok close) {
        std::vector<Term> out;
        if (peek().kind == close) return out;
        do {
            out.push_back(simple_term());
        } while (accept(Tok::comma));
        return out;
    }

    Literal atom() {
        Literal l;
        if (accept(Tok::minus)) l.classically_negated = true;
        if (peek().kind != Tok::ident) fail(peek(), "expected predicate name");
        l.predicate = std::string(take().text);
        if (accept(Tok::lparen)) {
            l.args = term_list(Tok::rparen);
            expect(Tok::rparen, "')'");
        }
        return l;
    }

    Literal prefix_builtin(Builtin b) {
        take(); // operator
        expect(Tok::lparen, "'('");
        Literal l;
        l.builtin   = b;
        l.predicate = std::string(builtin_symbol(b));
        const Token& at = peek();
        l.args          = term_list(Tok::rparen);
        expect(Tok::rparen, "')'");
        std::size_t want = is_arithmetic(b) ? 3 : 2;
        if (l.args.size() != want) fail(at, "built-in " + l.predicate + " expects " + std::to_string(want) + " arguments");
        return l;
    }

    Literal aggregate(std::optional<AggregateGuard> lower) {
        const Token& fn = take();
        if (!kAggregateFunctions.contains(fn.text)) fail(fn, "unknown aggregate function");
        Aggregate agg;
        agg.function = std::string(fn.text);
        agg.lower    = std::move(lower);
        expect(Tok::lbrace, "'{'");
        if (peek().kind != Tok::rbrace) {
            do {
                AggregateElement el;
                el.terms = term_list(Tok::colon);
                if (accept(Tok::colon)) {
                    do {
                        bool negated = false;
                        if (peek().kind == Tok::ident && peek().text == "not" && peek(1).kind != Tok::lparen &&
                            !is_operator(peek(1).kind)) {
                            take();
                            negated = true;
                        }
                        (negated ? el.neg_condition : el.condition).push_back(body_literal(false));
                    } while (accept(Tok::comma));
                }
                sort_unique(el.condition);
                sort_unique(el.neg_condition);
                agg.elements.push_back(std::move(el));
            } while (accept(Tok::semi));
        }
        expect(Tok::rbrace, "'}'");
        if (Builtin b = comparison_of(peek().kind); b != Builtin::none) {
            take();
            agg.upper = AggregateGuard{b, simple_term()};
        }
        std::sort(agg.elements.begin(), agg.elements.end());
        agg.elements.erase(std::unique(agg.elements.begin(), agg.elements.end()), agg.elements.end());
        Literal l;
        l.predicate = agg.function;
        l.aggregate.push_back(std::move(agg));
        return l;
    }

    Literal body_literal(bool allow_aggregate) {
        const Token& t = peek();
        if (t.kind == Tok::hash) {
            if (kAggregateFunctions.contains(t.text)) {
                if (!allow_aggregate) fail(t, "nested aggregates are not supported");
                return aggregate(std::nullopt);
            }
            if (kSpecialPredicates.contains(t.text)) {
                take();
                Literal l;
                l.predicate = std::string(t.text);
                expect(Tok::lparen, "'('");
                l.args = term_list(Tok::rparen);
                expect(Tok::rparen, "')'");
                return l;
            }
            fail(t, "unknown built-in");
        }
        if (peek(1).kind == Tok::lparen) {
            if (t.kind == Tok::plus) return prefix_builtin(Builtin::plus);
            if (t.kind == Tok::star) return prefix_builtin(Builtin::times);
            if (Builtin b = comparison_of(t.kind); b != Builtin::none) return prefix_builtin(b);
        }
        if (t.kind == Tok::minus) return atom();
        if (t.kind == Tok::ident && peek(1).kind == Tok::lparen) return atom();
        if (t.kind == Tok::ident && !is_operator(peek(1).kind)) return atom();

        Term lhs = simple_term();
        Tok  op  = peek().kind;
        if (op == Tok::plus || op == Tok::star) {
            // T1 op T2 = T3
            take();
            Term rhs = simple_term();
            expect(Tok::eq, "'=' after arithmetic expression");
            Term    result = simple_term();
            Literal l;
            l.builtin   = op == Tok::plus ? Builtin::plus : Builtin::times;
            l.predicate = std::string(builtin_symbol(l.builtin));
            l.args      = {std::move(lhs), std::move(rhs), std::move(result)};
            l.infix     = true;
            return l;
        }
        Builtin cmp = comparison_of(op);
        if (cmp == Builtin::none) fail(peek(), "expected comparison operator");
        take();
        if (peek().kind == Tok::hash) {
            if (!allow_aggregate) fail(peek(), "nested aggregates are not supported");
            return aggregate(AggregateGuard{cmp, std::move(lhs)});
        }
        Term rhs = simple_term();
        if (cmp == Builtin::eq && (peek().kind == Tok::plus || peek().kind == Tok::star)) {
            Tok arith = take().kind;
            Term    third = simple_term();
            Literal l;
            l.builtin   = arith == Tok::plus ? Builtin::plus : Builtin::times;
            l.predicate = std::string(builtin_symbol(l.builtin));
            l.args      = {std::move(rhs), std::move(third), std::move(lhs)};
            l.infix     = true;
            return l;
        }
        Literal l;
        l.builtin   = cmp;
        l.predicate = std::string(builtin_symbol(cmp));
        l.args      = {std::move(lhs), std::move(rhs)};
        l.infix     = true;
        return l;
    }

    std::vector<Token> toks_;
    const Lexer&       lexer_;
    std::size_t        pos_          = 0;
    int                anon_counter_ = 0;
};

} // namespace

Program parse_program(std::string_view text, std::string id) {
    Program prog;
    prog.id       = std::move(id);
    prog.raw_text = std::string(text);
    Lexer  lexer(text, prog.id, prog.comments);
    Parser parser(lexer.run(), lexer);
    parser.parse(prog);
    std::stable_sort(prog.rules.begin(), prog.rules.end());
    prog.rules.erase(std::unique(prog.rules.begin(), prog.rules.end()), prog.rules.end());
    prog.cleansed_text = cleanse(text);
    return prog;
}

Rule parse_rule(std::string_view text) {
    std::vector<Comment> comments;
    std::string          file = "<rule>";
    Lexer                lexer(text, file, comments);
    Parser               parser(lexer.run(), lexer);
    return parser.single_rule();
}

} // namespace asplag
