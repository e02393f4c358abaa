/**
 * @file parser.cpp
 *
 * Hand-written lexer and recursive-descent parser.
 */
#include "whyprov/parser.h"

#include "whyprov/errors.h"

#include <algorithm>
#include <cctype>
#include <set>

namespace whyprov {

namespace {

enum class Tok { Ident, Quoted, LParen, RParen, Comma, Dot, Implies, Colon, Not, Directive, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

bool identChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        std::size_t l = line, cl = col;
        if (c == '(') {
            out.push_back({Tok::LParen, "(", l, cl});
            advance(1);
        } else if (c == ')') {
            out.push_back({Tok::RParen, ")", l, cl});
            advance(1);
        } else if (c == ',') {
            out.push_back({Tok::Comma, ",", l, cl});
            advance(1);
        } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '-') {
            out.push_back({Tok::Implies, ":-", l, cl});
            advance(2);
        } else if (c == ':') {
            out.push_back({Tok::Colon, ":", l, cl});
            advance(1);
        } else if (c == '\\' && i + 1 < src.size() && src[i + 1] == '+') {
            out.push_back({Tok::Not, "\\+", l, cl});
            advance(2);
        } else if (c == '!') {
            out.push_back({Tok::Not, "!", l, cl});
            advance(1);
        } else if (c == '.' && i + 1 < src.size() && std::isalpha(static_cast<unsigned char>(src[i + 1]))) {
            std::size_t j = i + 1;
            while (j < src.size() && identChar(src[j])) ++j;
            out.push_back({Tok::Directive, src.substr(i + 1, j - i - 1), l, cl});
            advance(j - i);
        } else if (c == '.') {
            out.push_back({Tok::Dot, ".", l, cl});
            advance(1);
        } else if (c == '\'' || c == '"') {
            std::string value;
            advance(1);
            bool closed = false;
            while (i < src.size()) {
                char d = src[i];
                if (d == '\\' && i + 1 < src.size()) {
                    value += src[i + 1];
                    advance(2);
                } else if (d == c) {
                    advance(1);
                    closed = true;
                    break;
                } else if (d == '\n') {
                    break;
                } else {
                    value += d;
                    advance(1);
                }
            }
            if (!closed) throw SyntaxError("unterminated string literal", l, cl);
            out.push_back({Tok::Quoted, value, l, cl});
        } else if (identChar(c)) {
            std::size_t j = i;
            while (j < src.size() && identChar(src[j])) ++j;
            std::string word = src.substr(i, j - i);
            out.push_back({word == "not" ? Tok::Not : Tok::Ident, word, l, cl});
            advance(j - i);
        } else if (src.compare(i, 2, "\xC2\xAC") == 0) {  // ¬
            out.push_back({Tok::Not, "¬", l, cl});
            advance(2);
        } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool isVariableName(const std::string& s) {
    return !s.empty() && (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok t) const { return peek().kind == t; }

    const Token& expect(Tok t, const char* what) {
        if (!at(t)) fail(std::string("expected ") + what);
        return toks_[pos_++];
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(msg + ", found " + found, t.line, t.column);
    }

    Term term() {
        const Token& t = peek();
        if (t.kind == Tok::Quoted) {
            ++pos_;
            return Term::constant(t.text);
        }
        if (t.kind == Tok::Ident) {
            ++pos_;
            return isVariableName(t.text) ? Term::variable(t.text) : Term::constant(t.text);
        }
        fail("expected a term");
    }

    Atom atom() {
        Atom a;
        a.predicate = expect(Tok::Ident, "a predicate name").text;
        expect(Tok::LParen, "'('");
        if (!at(Tok::RParen)) {
            a.args.push_back(term());
            while (at(Tok::Comma)) {
                ++pos_;
                a.args.push_back(term());
            }
        }
        expect(Tok::RParen, "')' or ','");
        return a;
    }

    Literal literal() {
        Literal lit;
        if (at(Tok::Not)) {
            ++pos_;
            lit.negated = true;
        }
        lit.atom = atom();
        return lit;
    }

    std::size_t pos_ = 0;
    std::vector<Token> toks_;
};

struct PendingRule {
    std::string label;
    Rule rule;
    std::size_t line;
    std::size_t column;
};

}  // namespace

std::vector<std::string> defaultAttributes(std::size_t arity) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= arity; ++i) out.push_back("A" + std::to_string(i));
    return out;
}

ParseResult parseProgram(const std::string& text, const Catalog& catalog) {
    Parser p(text);
    ParseResult result;
    Program& prog = result.program;
    prog.edbSchema = catalog;
    std::vector<PendingRule> pending;
    std::string answer;

    while (!p.at(Tok::End)) {
        if (p.at(Tok::Directive)) {
            Token d = p.peek();
            ++p.pos_;
            if (d.text == "decl") {
                std::string name = p.expect(Tok::Ident, "a relation name").text;
                p.expect(Tok::LParen, "'('");
                std::vector<std::string> attrs;
                if (!p.at(Tok::RParen)) {
                    attrs.push_back(p.expect(Tok::Ident, "an attribute name").text);
                    while (p.at(Tok::Comma)) {
                        ++p.pos_;
                        attrs.push_back(p.expect(Tok::Ident, "an attribute name").text);
                    }
                }
                p.expect(Tok::RParen, "')'");
                auto it = prog.edbSchema.find(name);
                if (it != prog.edbSchema.end() && it->second.size() != attrs.size())
                    throw SemanticError("arity mismatch: " + name + " declared with " +
                                        std::to_string(attrs.size()) + " attributes, catalog has " +
                                        std::to_string(it->second.size()));
                prog.edbSchema[name] = attrs;
            } else if (d.text == "answer" || d.text == "output") {
                answer = p.expect(Tok::Ident, "a predicate name").text;
            } else {
                throw SyntaxError("unknown directive ." + d.text, d.line, d.column);
            }
            if (p.at(Tok::Dot)) ++p.pos_;
            continue;
        }

        std::size_t line = p.peek().line, col = p.peek().column;
        std::string label;
        if (p.at(Tok::Ident) && p.peek(1).kind == Tok::Colon) {
            label = p.peek().text;
            p.pos_ += 2;
        }
        Atom head = p.atom();
        if (p.at(Tok::Implies)) {
            ++p.pos_;
            Rule r;
            r.head = std::move(head);
            r.body.push_back(p.literal());
            while (p.at(Tok::Comma)) {
                ++p.pos_;
                r.body.push_back(p.literal());
            }
            p.expect(Tok::Dot, "'.' or ','");
            pending.push_back({label, std::move(r), line, col});
        } else {
            p.expect(Tok::Dot, "'.' or ':-'");
            if (!label.empty()) throw SyntaxError("facts cannot carry a rule label", line, col);
            if (!head.isGround())
                throw SemanticError("unsafe rule at " + std::to_string(line) + ":" + std::to_string(col) +
                                    ": fact " + toString(head) + " contains variables");
            result.facts.push_back(std::move(head));
        }
    }

    for (std::size_t i = 0; i < pending.size(); ++i) {
        Rule& r = pending[i].rule;
        r.id = pending[i].label.empty() ? "r" + std::to_string(i + 1) : pending[i].label;
        prog.rules.push_back(std::move(r));
    }

    std::set<std::string> idb = prog.idbPredicates();
    for (const auto& f : result.facts) {
        if (idb.count(f.predicate)) throw SemanticError("fact given for IDB predicate " + f.predicate);
        auto it = prog.edbSchema.find(f.predicate);
        if (it == prog.edbSchema.end()) {
            prog.edbSchema[f.predicate] = defaultAttributes(f.arity());
        } else if (it->second.size() != f.arity()) {
            throw SemanticError("arity mismatch: fact " + toString(f) + " for relation of arity " +
                                std::to_string(it->second.size()));
        }
    }

    validateProgram(prog, true);

    if (!answer.empty()) {
        if (!idb.count(answer)) throw SemanticError("answer predicate " + answer + " is not defined by any rule");
        prog.answerPredicate = answer;
    } else if (!prog.rules.empty()) {
        std::set<std::string> used;
        for (const auto& r : prog.rules)
            for (const auto& lit : r.body) used.insert(lit.atom.predicate);
        std::vector<std::string> tops;
        for (const auto& q : idb)
            if (!used.count(q)) tops.push_back(q);
        prog.answerPredicate = tops.size() == 1 ? tops.front() : prog.rules.front().head.predicate;
    }
    return result;
}

std::vector<Atom> parseFacts(const std::string& text) {
    ParseResult r = parseProgram(text);
    if (!r.program.rules.empty()) throw SemanticError("facts file contains rules");
    return r.facts;
}

ProvenanceQuestion parseQuestion(const std::string& text, const Program& program) {
    Parser p(text);
    ProvenanceQuestion q;
    const Token& kw = p.expect(Tok::Ident, "WHY or WHYNOT");
    std::string word = kw.text;
    std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::toupper(c); });
    if (word == "WHYNOT") {
        q.mode = QuestionMode::WhyNot;
    } else if (word == "WHY") {
        q.mode = QuestionMode::Why;
        if (p.at(Tok::Not) || (p.at(Tok::Ident) && p.peek().text == "NOT")) {
            ++p.pos_;
            q.mode = QuestionMode::WhyNot;
        }
    } else {
        throw SyntaxError("question must start with WHY or WHYNOT", kw.line, kw.column);
    }
    q.atom = p.atom();
    if (p.at(Tok::Dot)) ++p.pos_;
    if (!p.at(Tok::End)) p.fail("expected end of question");

    if (!program.isIdb(q.atom.predicate))
        throw SemanticError("question predicate " + q.atom.predicate + " is not an IDB predicate");
    auto arity = program.arity(q.atom.predicate);
    if (arity && *arity != q.atom.arity())
        throw SemanticError("arity mismatch: question on " + q.atom.predicate + " has " +
                            std::to_string(q.atom.arity()) + " arguments, expected " + std::to_string(*arity));
    return q;
}

}  // namespace whyprov
