/**
 * @file model.cpp
 */
#include "whyprov/model.h"

#include "whyprov/errors.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace whyprov {

Annotation merge(Annotation a, Annotation b) {
    return a == b ? a : Annotation::FT;
}

bool includes(Annotation a, Status s) {
    if (a == Annotation::FT) return true;
    return (a == Annotation::T) == (s == Status::T);
}

Status flip(Status s) {
    return s == Status::T ? Status::F : Status::T;
}

char statusChar(Status s) {
    return s == Status::T ? 'T' : 'F';
}

std::string toString(Annotation a) {
    switch (a) {
        case Annotation::T: return "T";
        case Annotation::F: return "F";
        case Annotation::FT: return "FT";
    }
    return "?";
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.text_ = std::move(name);
    return t;
}

Term Term::constant(std::string value) {
    Term t;
    t.kind_ = Kind::Constant;
    t.text_ = std::move(value);
    return t;
}

Term Term::skolem(SkolemTemplate tpl) {
    Term t;
    t.kind_ = Kind::Skolem;
    t.skolem_ = std::make_shared<const SkolemTemplate>(std::move(tpl));
    return t;
}

Term Term::negatedFlag(std::string name) {
    Term t;
    t.kind_ = Kind::NegatedFlag;
    t.text_ = std::move(name);
    return t;
}

void Term::collectVariables(std::vector<std::string>& out) const {
    switch (kind_) {
        case Kind::Variable:
        case Kind::NegatedFlag:
            if (std::find(out.begin(), out.end(), text_) == out.end()) out.push_back(text_);
            break;
        case Kind::Skolem:
            for (const auto& a : skolem_->args) a.collectVariables(out);
            break;
        case Kind::Constant: break;
    }
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Term::Kind::Skolem) return *a.skolem_ == *b.skolem_;
    return a.text_ == b.text_;
}

bool operator<(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.kind_ == Term::Kind::Skolem) return *a.skolem_ < *b.skolem_;
    return a.text_ < b.text_;
}

bool operator==(const SkolemTemplate& a, const SkolemTemplate& b) {
    return a.kind == b.kind && a.label == b.label && a.position == b.position && a.status == b.status &&
           a.args == b.args;
}

bool operator<(const SkolemTemplate& a, const SkolemTemplate& b) {
    return std::tie(a.kind, a.label, a.position, a.status, a.args) <
           std::tie(b.kind, b.label, b.position, b.status, b.args);
}

bool Atom::isGround() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.isConstant(); });
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> out;
    for (const auto& t : head.args) t.collectVariables(out);
    for (const auto& lit : body)
        for (const auto& t : lit.atom.args) t.collectVariables(out);
    return out;
}

bool Program::isIdb(const std::string& predicate) const {
    return std::any_of(rules.begin(), rules.end(), [&](const Rule& r) { return r.head.predicate == predicate; });
}

std::vector<const Rule*> Program::rulesFor(const std::string& predicate) const {
    std::vector<const Rule*> out;
    for (const auto& r : rules)
        if (r.head.predicate == predicate) out.push_back(&r);
    return out;
}

const Rule* Program::findRule(const std::string& id) const {
    for (const auto& r : rules)
        if (r.id == id) return &r;
    return nullptr;
}

std::set<std::string> Program::idbPredicates() const {
    std::set<std::string> out;
    for (const auto& r : rules) out.insert(r.head.predicate);
    return out;
}

std::optional<std::size_t> Program::arity(const std::string& predicate) const {
    auto it = edbSchema.find(predicate);
    if (it != edbSchema.end()) return it->second.size();
    for (const auto& r : rules) {
        if (r.head.predicate == predicate) return r.head.arity();
        for (const auto& lit : r.body)
            if (lit.atom.predicate == predicate) return lit.atom.arity();
    }
    return std::nullopt;
}

std::set<std::string> Program::constants() const {
    std::set<std::string> out;
    auto scan = [&](const Atom& a) {
        for (const auto& t : a.args)
            if (t.isConstant()) out.insert(t.text());
    };
    for (const auto& r : rules) {
        scan(r.head);
        for (const auto& lit : r.body) scan(lit.atom);
    }
    return out;
}

bool matches(const std::vector<std::string>& tuple, const std::vector<Term>& pattern) {
    if (tuple.size() != pattern.size()) {
        throw std::invalid_argument("arity mismatch: tuple of arity " + std::to_string(tuple.size()) +
                                    " against pattern of arity " + std::to_string(pattern.size()));
    }
    std::unordered_map<std::string, const std::string*> binding;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const Term& p = pattern[i];
        if (p.isConstant()) {
            if (p.text() != tuple[i]) return false;
        } else if (p.isVariable()) {
            auto [it, fresh] = binding.emplace(p.text(), &tuple[i]);
            if (!fresh && *it->second != tuple[i]) return false;
        } else {
            throw std::invalid_argument("pattern contains a non-first-order term");
        }
    }
    return true;
}

std::vector<std::set<std::string>> dependencyStrata(const Program& program) {
    std::set<std::string> idb = program.idbPredicates();
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& p : idb) deps[p];
    for (const auto& r : program.rules)
        for (const auto& lit : r.body)
            if (idb.count(lit.atom.predicate)) deps[r.head.predicate].insert(lit.atom.predicate);

    // level(p) = 1 + max level of IDB predicates p depends on
    std::map<std::string, int> level;
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    std::function<int(const std::string&)> visit = [&](const std::string& p) -> int {
        int& st = state[p];
        if (st == 2) return level[p];
        if (st == 1) throw SemanticError("recursive program: predicate " + p + " depends on itself");
        st = 1;
        int lv = 0;
        for (const auto& q : deps[p]) lv = std::max(lv, visit(q) + 1);
        state[p] = 2;
        level[p] = lv;
        return lv;
    };
    int maxLevel = -1;
    for (const auto& p : idb) maxLevel = std::max(maxLevel, visit(p));

    std::vector<std::set<std::string>> strata(static_cast<std::size_t>(maxLevel + 1));
    for (const auto& [p, lv] : level) strata[static_cast<std::size_t>(lv)].insert(p);
    return strata;
}

std::vector<std::string> unsafeVariables(const Rule& rule) {
    std::vector<std::string> bound;
    for (const auto& lit : rule.body)
        if (!lit.negated)
            for (const auto& t : lit.atom.args) t.collectVariables(bound);
    std::vector<std::string> out;
    for (const auto& v : rule.variables())
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.push_back(v);
    return out;
}

bool isSafe(const Rule& rule) {
    return unsafeVariables(rule).empty();
}

void validateProgram(const Program& program, bool requireSchema) {
    std::map<std::string, std::size_t> arities;
    for (const auto& [p, attrs] : program.edbSchema) arities[p] = attrs.size();
    std::set<std::string> idb = program.idbPredicates();
    std::set<std::string> ids;

    auto checkAtom = [&](const Rule& r, const Atom& a) {
        auto [it, fresh] = arities.emplace(a.predicate, a.arity());
        if (!fresh && it->second != a.arity()) {
            throw SemanticError("arity mismatch in rule " + r.id + ": " + a.predicate + " used with arity " +
                                std::to_string(a.arity()) + ", expected " + std::to_string(it->second));
        }
    };
    for (const auto& r : program.rules) {
        if (!ids.insert(r.id).second) throw SemanticError("duplicate rule id " + r.id);
        if (program.edbSchema.count(r.head.predicate))
            throw SemanticError("rule " + r.id + " defines declared EDB relation " + r.head.predicate);
        checkAtom(r, r.head);
        for (const auto& lit : r.body) {
            if (requireSchema && !idb.count(lit.atom.predicate) && !program.edbSchema.count(lit.atom.predicate))
                throw SemanticError("unknown predicate " + lit.atom.predicate + " in rule " + r.id);
            checkAtom(r, lit.atom);
        }
        auto unsafe = unsafeVariables(r);
        if (!unsafe.empty())
            throw SemanticError("unsafe rule " + r.id + ": variable " + unsafe.front() +
                                " does not occur in a positive body literal");
    }
    for (const auto& r : program.rules)
        if (arities.count(r.id)) throw SemanticError("rule id " + r.id + " clashes with a predicate name");
    dependencyStrata(program);
}

namespace {

bool isBareConstant(const std::string& v) {
    if (v.empty()) return false;
    unsigned char c0 = static_cast<unsigned char>(v[0]);
    if (std::isdigit(c0)) {
        return std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); });
    }
    if (!std::islower(c0)) return false;
    if (v == "not") return false;
    return std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string goalPrefix(const std::string& ruleId) {
    if (ruleId.size() > 1 && ruleId[0] == 'r' &&
        std::all_of(ruleId.begin() + 1, ruleId.end(), [](unsigned char c) { return std::isdigit(c); }))
        return "g" + ruleId.substr(1);
    return "g_" + ruleId;
}

std::string joinTerms(const std::vector<Term>& args) {
    std::string out = "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += toString(args[i]);
    }
    return out + ")";
}

}  // namespace

std::string renderConstant(const std::string& value) {
    if (isBareConstant(value)) return value;
    std::string out = "'";
    for (char c : value) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    return out + "'";
}

std::string goalLabel(const std::string& ruleId, unsigned position) {
    return goalPrefix(ruleId) + "^" + std::to_string(position);
}

std::string toString(const Term& term) {
    switch (term.kind()) {
        case Term::Kind::Variable: return term.text();
        case Term::Kind::Constant: return renderConstant(term.text());
        case Term::Kind::NegatedFlag: return "¬" + term.text();
        case Term::Kind::Skolem: {
            const auto& s = term.skolem();
            std::string label = s.kind == NodeKind::Goal ? goalLabel(s.label, s.position) : s.label;
            return label + "[" + statusChar(s.status) + "]" + joinTerms(s.args);
        }
    }
    return "?";
}

std::string toString(const Atom& atom) {
    return atom.predicate + joinTerms(atom.args);
}

std::string toString(const Literal& literal) {
    return (literal.negated ? "not " : "") + toString(literal.atom);
}

std::string toString(const Rule& rule, bool withLabel) {
    std::string out = (withLabel ? rule.id + ": " : std::string()) + toString(rule.head);
    if (!rule.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (i) out += ", ";
            out += toString(rule.body[i]);
        }
    }
    return out + ".";
}

std::string toString(const Program& program) {
    std::ostringstream os;
    for (const auto& [p, attrs] : program.edbSchema) {
        os << ".decl " << p << "(";
        for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? "," : "") << attrs[i];
        os << ").\n";
    }
    if (!program.answerPredicate.empty()) os << ".answer " << program.answerPredicate << ".\n";
    for (const auto& r : program.rules) os << toString(r) << "\n";
    return os.str();
}

std::string toString(const ProvenanceQuestion& question) {
    return std::string(question.mode == QuestionMode::Why ? "WHY " : "WHYNOT ") + toString(question.atom);
}

std::string canonicalKey(const Atom& atom) {
    std::vector<std::string> seen;
    std::string out = atom.predicate + "(";
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i) out += ",";
        const Term& t = atom.args[i];
        if (t.isVariable()) {
            auto it = std::find(seen.begin(), seen.end(), t.text());
            std::size_t idx = static_cast<std::size_t>(it - seen.begin());
            if (it == seen.end()) seen.push_back(t.text());
            out += "$" + std::to_string(idx);
        } else {
            out += toString(t);
        }
    }
    return out + ")";
}

}  // namespace whyprov
