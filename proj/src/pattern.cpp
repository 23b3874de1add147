#include "treegraph/pattern.hpp"

#include <cctype>
#include <sstream>

#include "treegraph/error.hpp"

namespace treegraph {

std::vector<const Predicate*> PatternQuery::predicates_on(const std::string& var) const {
    std::vector<const Predicate*> out;
    for (const auto& p : where)
        if (p.var == var) out.push_back(&p);
    return out;
}

namespace {

enum class Tok {
    Ident,
    Int,
    Float,
    String,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Dot,
    DotDot,
    Comma,
    Star,
    Eq,
    Dash,
    Lt,
    Gt,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Int: return "integer";
        case Tok::Float: return "number";
        case Tok::String: return "string literal";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Colon: return "':'";
        case Tok::Dot: return "'.'";
        case Tok::DotDot: return "'..'";
        case Tok::Comma: return "','";
        case Tok::Star: return "'*'";
        case Tok::Eq: return "'='";
        case Tok::Dash: return "'-'";
        case Tok::Lt: return "'<'";
        case Tok::Gt: return "'>'";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto push = [&](Tok k, std::size_t pos, std::string text = {}) {
        out.push_back({k, std::move(text), pos});
    };
    while (i < n) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t pos = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            push(Tok::Ident, pos, s.substr(i, j - i));
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            // A float only when a single dot is followed by digits; ".." is
            // the range token.
            if (j < n && s[j] == '.' && j + 1 < n && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                ++j;
                while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                push(Tok::Float, pos, s.substr(i, j - i));
            } else {
                push(Tok::Int, pos, s.substr(i, j - i));
            }
            i = j;
            continue;
        }
        if (c == '\'' || c == '"') {
            std::size_t j = i + 1;
            while (j < n && s[j] != c) ++j;
            if (j >= n) throw SyntaxError(pos, "unterminated string literal");
            push(Tok::String, pos, s.substr(i + 1, j - i - 1));
            i = j + 1;
            continue;
        }
        switch (c) {
            case '(': push(Tok::LParen, pos); break;
            case ')': push(Tok::RParen, pos); break;
            case '[': push(Tok::LBracket, pos); break;
            case ']': push(Tok::RBracket, pos); break;
            case ':': push(Tok::Colon, pos); break;
            case ',': push(Tok::Comma, pos); break;
            case '*': push(Tok::Star, pos); break;
            case '=': push(Tok::Eq, pos); break;
            case '-': push(Tok::Dash, pos); break;
            case '<': push(Tok::Lt, pos); break;
            case '>': push(Tok::Gt, pos); break;
            case '.':
                if (i + 1 < n && s[i + 1] == '.') {
                    push(Tok::DotDot, pos);
                    ++i;
                } else {
                    push(Tok::Dot, pos);
                }
                break;
            default:
                throw SyntaxError(pos, std::string("unexpected character '") + c + "'");
        }
        ++i;
    }
    push(Tok::End, n);
    return out;
}

bool ieq(const std::string& a, const char* b) {
    std::size_t i = 0;
    for (; i < a.size() && b[i]; ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return i == a.size() && b[i] == '\0';
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    PatternQuery parse() {
        PatternQuery q;
        expect_keyword("MATCH");
        q.left = node_pattern();
        q.edge = edge_pattern();
        q.right = node_pattern();
        expect_keyword("WHERE");
        q.where.push_back(predicate(q));
        while (at_keyword("AND")) {
            advance();
            q.where.push_back(predicate(q));
        }
        expect_keyword("RETURN");
        q.return_vars.push_back(declared_var(q));
        while (cur().kind == Tok::Comma) {
            advance();
            q.return_vars.push_back(declared_var(q));
        }
        if (cur().kind != Tok::End)
            throw SyntaxError(cur().pos, "expected end of input, got " + describe(cur()));
        if (q.left.var == q.right.var)
            throw SyntaxError(0, "node variables must be distinct");
        return q;
    }

private:
    const Token& cur() const { return toks_[i_]; }
    void advance() { ++i_; }

    std::string describe(const Token& t) const {
        if (t.kind == Tok::Ident) return "'" + t.text + "'";
        return tok_name(t.kind);
    }

    Token expect(Tok kind) {
        if (cur().kind != kind)
            throw SyntaxError(cur().pos, std::string("expected ") + tok_name(kind) + ", got " +
                                             describe(cur()));
        Token t = cur();
        advance();
        return t;
    }

    bool at_keyword(const char* kw) const {
        return cur().kind == Tok::Ident && ieq(cur().text, kw);
    }

    void expect_keyword(const char* kw) {
        if (!at_keyword(kw))
            throw SyntaxError(cur().pos,
                              std::string("expected ") + kw + ", got " + describe(cur()));
        advance();
    }

    NodePattern node_pattern() {
        NodePattern p;
        expect(Tok::LParen);
        p.var = expect(Tok::Ident).text;
        if (cur().kind == Tok::Colon) {
            advance();
            p.label = expect(Tok::Ident).text;
        }
        expect(Tok::RParen);
        return p;
    }

    std::uint32_t int_value(const Token& t) {
        try {
            unsigned long v = std::stoul(t.text);
            if (v > UINT32_MAX) throw std::out_of_range("");
            return static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw SyntaxError(t.pos, "length bound out of range");
        }
    }

    EdgePattern edge_pattern() {
        EdgePattern e;
        bool left_arrow = false;
        if (cur().kind == Tok::Lt) {
            advance();
            left_arrow = true;
        }
        expect(Tok::Dash);
        expect(Tok::LBracket);
        if (cur().kind == Tok::Colon) {
            advance();
            e.label = expect(Tok::Ident).text;
        }
        if (cur().kind == Tok::Star) {
            advance();
            if (cur().kind == Tok::Int) {
                Token lo = cur();
                advance();
                if (cur().kind == Tok::DotDot) {
                    advance();
                    Token hi = expect(Tok::Int);
                    e.len = LengthSpec::between(int_value(lo), int_value(hi));
                    if (*e.len.max < e.len.min)
                        throw SyntaxError(hi.pos, "empty length range");
                } else {
                    e.len = LengthSpec::exactly(int_value(lo));
                }
            } else {
                e.len = LengthSpec::any();
            }
        }
        expect(Tok::RBracket);
        expect(Tok::Dash);
        bool right_arrow = false;
        if (cur().kind == Tok::Gt) {
            advance();
            right_arrow = true;
        }
        if (left_arrow && right_arrow)
            throw SyntaxError(cur().pos, "edge cannot point both ways");
        e.dir = left_arrow ? EdgeDir::Left
                           : (right_arrow ? EdgeDir::Right : EdgeDir::Undirected);
        return e;
    }

    std::string declared_var(const PatternQuery& q) {
        Token t = expect(Tok::Ident);
        if (!q.mentions(t.text))
            throw SyntaxError(t.pos, "variable '" + t.text + "' is not declared in MATCH");
        return t.text;
    }

    Predicate predicate(const PatternQuery& q) {
        Predicate p;
        p.var = declared_var(q);
        expect(Tok::Dot);
        p.prop = expect(Tok::Ident).text;
        expect(Tok::Eq);
        Token t = cur();
        switch (t.kind) {
            case Tok::Int: {
                advance();
                p.literal = PropertyValue(static_cast<std::int64_t>(std::stoll(t.text)));
                break;
            }
            case Tok::Float: {
                advance();
                p.literal = PropertyValue(std::stod(t.text));
                break;
            }
            case Tok::String: {
                advance();
                p.literal = PropertyValue(t.text);
                break;
            }
            case Tok::Dash: {
                // negative number literal
                advance();
                Token v = cur();
                if (v.kind == Tok::Int) {
                    advance();
                    p.literal = PropertyValue(-static_cast<std::int64_t>(std::stoll(v.text)));
                } else if (v.kind == Tok::Float) {
                    advance();
                    p.literal = PropertyValue(-std::stod(v.text));
                } else {
                    throw SyntaxError(v.pos, "expected number after '-'");
                }
                break;
            }
            case Tok::Ident: {
                if (ieq(t.text, "true")) {
                    advance();
                    p.literal = PropertyValue(true);
                    break;
                }
                if (ieq(t.text, "false")) {
                    advance();
                    p.literal = PropertyValue(false);
                    break;
                }
                throw SyntaxError(t.pos, "expected literal, got " + describe(t));
            }
            default:
                throw SyntaxError(t.pos, "expected literal, got " + describe(t));
        }
        return p;
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

std::string print_literal(const PropertyValue& v) {
    switch (v.tag()) {
        case PropertyValue::Tag::Str: {
            const std::string& s = v.as_str();
            char quote = s.find('\'') == std::string::npos ? '\'' : '"';
            return quote + s + quote;
        }
        case PropertyValue::Tag::Float: {
            // keep the decimal point so the literal reparses as a float
            std::string s = v.to_string();
            if (s.find_first_of(".e") == std::string::npos) s += ".0";
            return s;
        }
        default:
            return v.to_string();
    }
}

}  // namespace

PatternQuery parse_query(const std::string& text) { return Parser(text).parse(); }

std::string print_query(const PatternQuery& q) {
    std::ostringstream out;
    auto node = [&](const NodePattern& p) {
        out << '(' << p.var;
        if (p.label) out << ':' << *p.label;
        out << ')';
    };
    out << "MATCH ";
    node(q.left);
    out << (q.edge.dir == EdgeDir::Left ? "<-[" : "-[");
    if (q.edge.label) out << ':' << *q.edge.label;
    if (q.edge.len.variable) {
        out << '*';
        if (q.edge.len.max && q.edge.len.min == *q.edge.len.max) {
            out << q.edge.len.min;
        } else if (q.edge.len.max) {
            out << q.edge.len.min << ".." << *q.edge.len.max;
        } else if (q.edge.len.min != 1) {
            out << q.edge.len.min << "..";  // not producible by the grammar
        }
    }
    out << (q.edge.dir == EdgeDir::Right ? "]->" : "]-");
    node(q.right);
    out << " WHERE ";
    for (std::size_t i = 0; i < q.where.size(); ++i) {
        if (i) out << " AND ";
        out << q.where[i].var << '.' << q.where[i].prop << " = "
            << print_literal(q.where[i].literal);
    }
    out << " RETURN ";
    for (std::size_t i = 0; i < q.return_vars.size(); ++i) {
        if (i) out << ", ";
        out << q.return_vars[i];
    }
    return out.str();
}

}  // namespace treegraph
