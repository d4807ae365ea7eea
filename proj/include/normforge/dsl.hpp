#pragma once

// Structured-English deontic rule DSL.
//
//   rulebase   := { statement } ;
//   statement  := rule | fact ;
//   rule       := "It is" modality "that" clause [ [","] "if" condition ] "." ;
//   modality   := "obligatory" | "prohibited" | "permitted" ;
//   fact       := "Fact:" clause "." ;
//   condition  := disj ;  disj := conj { "or" conj } ;  conj := atom { "and" atom } ;
//   clause     := [ "the" ] LEXEME LEXEME [ "the" ] LEXEME ;
//   LEXEME     := [a-zA-Z][a-zA-Z0-9_]*          (stored lowercased)
//
// "and" binds tighter than "or"; no parentheses. Comments run from "//" to
// end of line. Two comment directives are recognized: "// id: <name>" names
// the next rule (default ids are r1, r2, ... by rule position), and
// "// scope: <lexeme>" sets the rulebase scope. Keywords (it, is, that, if,
// and, or, the, fact, obligatory, prohibited, permitted) are reserved and
// cannot be used as clause lexemes in any letter case.

#include <array>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rules.hpp"

namespace normforge {

class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, std::string expected, std::string found)
        : Error("syntax error at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": expected " + expected + ", found " + found),
          line(line),
          column(column),
          expected(std::move(expected)),
          found(std::move(found)) {}

    int line;
    int column;
    std::string expected;
    std::string found;
};

namespace dsl_detail {

enum class TokKind { Ident, Comma, Period, Colon, IdDirective, ScopeDirective, End };

struct Token {
    TokKind kind;
    std::string text;
    int line;
    int column;
};

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_';
}

inline bool is_reserved(std::string_view lowered) {
    static const std::set<std::string_view> kReserved = {
        "it", "is", "that", "if", "and", "or", "the",
        "fact", "obligatory", "prohibited", "permitted"};
    return kReserved.count(lowered) > 0;
}

inline std::string printable_byte(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string("'") + c + "'";
    char buf[16];
    std::snprintf(buf, sizeof buf, "byte 0x%02X", u);
    return buf;
}

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            int line = line_, col = col_;
            if (pos_ >= input_.size()) {
                out.push_back({TokKind::End, "", line, col});
                return out;
            }
            char c = input_[pos_];
            if (c == '/' && pos_ + 1 < input_.size() && input_[pos_ + 1] == '/') {
                lex_comment(out);
                continue;
            }
            if (is_ident_start(c)) {
                size_t begin = pos_;
                while (pos_ < input_.size() && is_ident_char(input_[pos_])) advance();
                out.push_back({TokKind::Ident,
                               std::string(input_.substr(begin, pos_ - begin)), line, col});
                continue;
            }
            if (c == ',') {
                advance();
                out.push_back({TokKind::Comma, ",", line, col});
                continue;
            }
            if (c == '.') {
                advance();
                out.push_back({TokKind::Period, ".", line, col});
                continue;
            }
            if (c == ':') {
                advance();
                out.push_back({TokKind::Colon, ":", line, col});
                continue;
            }
            throw SyntaxError(line, col, "a statement", printable_byte(c));
        }
    }

private:
    void advance() {
        if (input_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < input_.size()) {
            char c = input_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
                advance();
            else
                break;
        }
    }

    void lex_comment(std::vector<Token>& out) {
        int line = line_, col = col_;
        advance();
        advance();  // consume "//"
        size_t begin = pos_;
        while (pos_ < input_.size() && input_[pos_] != '\n') advance();
        std::string body = trim(input_.substr(begin, pos_ - begin));
        for (auto [prefix, kind] :
             {std::pair{std::string_view("id:"), TokKind::IdDirective},
              std::pair{std::string_view("scope:"), TokKind::ScopeDirective}}) {
            if (body.size() >= prefix.size() && body.compare(0, prefix.size(), prefix) == 0) {
                std::string value = trim(std::string_view(body).substr(prefix.size()));
                if (value.empty() || value.find_first_of(" \t") != std::string::npos)
                    throw SyntaxError(line, col, "a single identifier after '" +
                                      std::string(prefix) + "'", "'" + value + "'");
                out.push_back({kind, value, line, col});
                return;
            }
        }
        // Plain comment: ignored.
    }

    std::string_view input_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    RuleBase parse() {
        RuleBase rb;
        std::optional<std::string> pending_id;
        std::set<std::string> ids;
        while (true) {
            const Token& t = peek();
            if (t.kind == TokKind::End) break;
            if (t.kind == TokKind::IdDirective) {
                pending_id = t.text;  // last directive before the rule wins
                next();
                continue;
            }
            if (t.kind == TokKind::ScopeDirective) {
                std::string scope = to_lower_ascii(t.text);
                if (!is_lexeme(scope))
                    throw SyntaxError(t.line, t.column, "a scope lexeme", "'" + t.text + "'");
                rb.scope_id = scope;
                next();
                continue;
            }
            if (t.kind == TokKind::Ident && t.text == "It") {
                DeonticRule rule = parse_rule();
                rule.id = pending_id ? *pending_id
                                     : "r" + std::to_string(rb.rules.size() + 1);
                pending_id.reset();
                if (!ids.insert(rule.id).second) throw DuplicateRuleId(rule.id);
                rb.rules.push_back(std::move(rule));
                continue;
            }
            if (t.kind == TokKind::Ident && t.text == "Fact") {
                next();
                expect(TokKind::Colon, "':'");
                rb.facts.push_back(parse_clause());
                expect(TokKind::Period, "'.'");
                continue;
            }
            throw SyntaxError(t.line, t.column, "'It is ...' rule or 'Fact:'", describe(t));
        }
        return rb;
    }

private:
    DeonticRule parse_rule() {
        DeonticRule rule;
        expect_keyword("It");
        expect_keyword("is");
        const Token& m = peek();
        auto modality = m.kind == TokKind::Ident ? modality_from_keyword(m.text)
                                                 : std::nullopt;
        if (!modality)
            throw SyntaxError(m.line, m.column,
                              "'obligatory', 'prohibited' or 'permitted'", describe(m));
        rule.modality = *modality;
        next();
        expect_keyword("that");
        rule.head = parse_clause();
        const Token& t = peek();
        if (t.kind == TokKind::Comma) {
            next();
            expect_keyword("if");
            rule.body = parse_condition();
        } else if (t.kind == TokKind::Ident && t.text == "if") {
            next();
            rule.body = parse_condition();
        }
        expect(TokKind::Period, "'.'");
        return rule;
    }

    Condition parse_condition() {
        std::vector<Condition> disj;
        disj.push_back(parse_conjunction());
        while (peek().kind == TokKind::Ident && peek().text == "or") {
            next();
            disj.push_back(parse_conjunction());
        }
        if (disj.size() == 1) return std::move(disj.front());
        return make_or(std::move(disj));
    }

    Condition parse_conjunction() {
        std::vector<Condition> conj;
        conj.push_back(make_atom(parse_clause()));
        while (peek().kind == TokKind::Ident && peek().text == "and") {
            next();
            conj.push_back(make_atom(parse_clause()));
        }
        if (conj.size() == 1) return std::move(conj.front());
        return make_and(std::move(conj));
    }

    Clause parse_clause() {
        skip_article();
        std::string subject = expect_lexeme();
        std::string verb = expect_lexeme();
        skip_article();
        std::string object = expect_lexeme();
        return Clause{std::move(subject), std::move(verb), std::move(object)};
    }

    void skip_article() {
        const Token& t = peek();
        if (t.kind == TokKind::Ident && t.text == "the") next();
    }

    std::string expect_lexeme() {
        const Token& t = peek();
        if (t.kind != TokKind::Ident)
            throw SyntaxError(t.line, t.column, "a lexeme", describe(t));
        std::string lowered = to_lower_ascii(t.text);
        if (dsl_detail::is_reserved(lowered))
            throw SyntaxError(t.line, t.column, "a lexeme",
                              "reserved word '" + t.text + "'");
        next();
        return lowered;
    }

    void expect_keyword(std::string_view kw) {
        const Token& t = peek();
        if (t.kind != TokKind::Ident || t.text != kw)
            throw SyntaxError(t.line, t.column, "'" + std::string(kw) + "'", describe(t));
        next();
    }

    void expect(TokKind kind, const std::string& what) {
        const Token& t = peek();
        if (t.kind != kind) throw SyntaxError(t.line, t.column, what, describe(t));
        next();
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case TokKind::End: return "end of input";
            case TokKind::IdDirective: return "'// id:' directive";
            case TokKind::ScopeDirective: return "'// scope:' directive";
            default: return "'" + t.text + "'";
        }
    }

    const Token& peek() const { return toks_[idx_]; }
    void next() {
        if (idx_ + 1 < toks_.size()) ++idx_;
    }

    std::vector<Token> toks_;
    size_t idx_ = 0;
};

}  // namespace dsl_detail

// Total on all byte strings: returns a RuleBase or throws a positioned
// SyntaxError (DuplicateRuleId for id clashes). Never crashes.
inline RuleBase parse_rulebase(std::string_view text) {
    dsl_detail::Lexer lexer(text);
    dsl_detail::Parser parser(lexer.run());
    return parser.parse();
}

namespace dsl_detail {

inline void write_clause(std::ostream& os, const Clause& c) {
    os << c.subject << ' ' << c.verb << ' ' << c.object;
}

inline void write_condition(std::ostream& os, const Condition& c, bool inside_conj) {
    switch (c.kind) {
        case Condition::Kind::Atom:
            write_clause(os, c.atom);
            return;
        case Condition::Kind::And:
            for (size_t i = 0; i < c.children.size(); ++i) {
                if (i) os << " and ";
                if (c.children[i].kind != Condition::Kind::Atom)
                    throw Error("condition not expressible in the v1 grammar: "
                                "'and' children must be atoms");
                write_condition(os, c.children[i], true);
            }
            return;
        case Condition::Kind::Or:
            if (inside_conj)
                throw Error("condition not expressible in the v1 grammar: "
                            "'or' cannot nest under 'and'");
            for (size_t i = 0; i < c.children.size(); ++i) {
                if (i) os << " or ";
                if (c.children[i].kind == Condition::Kind::Or)
                    throw Error("condition not expressible in the v1 grammar: "
                                "nested 'or'");
                write_condition(os, c.children[i], false);
            }
            return;
    }
}

}  // namespace dsl_detail

// Canonical text: scope directive first, one statement per line, single
// spaces, comma before "if", trailing period, article-free clauses. Rule ids
// that differ from their positional default are preserved via "// id:".
inline std::string serialize_dsl(const RuleBase& rb) {
    std::ostringstream out;
    if (!rb.scope_id.empty()) out << "// scope: " << rb.scope_id << "\n";
    for (size_t i = 0; i < rb.rules.size(); ++i) {
        const DeonticRule& r = rb.rules[i];
        if (r.id != "r" + std::to_string(i + 1)) out << "// id: " << r.id << "\n";
        out << "It is " << modality_keyword(r.modality) << " that ";
        dsl_detail::write_clause(out, r.head);
        if (r.body) {
            out << ", if ";
            dsl_detail::write_condition(out, *r.body, false);
        }
        out << ".\n";
    }
    for (const Clause& f : rb.facts) {
        out << "Fact: ";
        dsl_detail::write_clause(out, f);
        out << ".\n";
    }
    return out.str();
}

}  // namespace normforge
