/**
 * @file model.h
 *
 * Core Datalog data model: terms, atoms, literals, rules, programs,
 * provenance questions and firing-rule annotations.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace whyprov {

/** Success / failure status of a provenance graph node. */
enum class Status : std::uint8_t { T, F };

/** Annotation attached to atoms and rule instances by the rewriter. */
enum class Annotation : std::uint8_t { T, F, FT };

enum class NodeKind : std::uint8_t { Tuple, Rule, Goal };

enum class QuestionMode : std::uint8_t { Why, WhyNot };

Annotation merge(Annotation a, Annotation b);
bool includes(Annotation a, Status s);
Status flip(Status s);
char statusChar(Status s);
std::string toString(Annotation a);

struct SkolemTemplate;

/**
 * A term is a variable or a constant. Generated programs additionally use
 * two head-only kinds: Skolem node constructors and negated boolean flags.
 */
class Term {
public:
    enum class Kind : std::uint8_t { Variable, Constant, Skolem, NegatedFlag };

    Term() = default;

    static Term variable(std::string name);
    static Term constant(std::string value);
    static Term skolem(SkolemTemplate tpl);
    /** Evaluates to the boolean complement of the flag variable `name`. */
    static Term negatedFlag(std::string name);

    Kind kind() const { return kind_; }
    bool isVariable() const { return kind_ == Kind::Variable; }
    bool isConstant() const { return kind_ == Kind::Constant; }

    /** Variable name, constant value or flag variable name. */
    const std::string& text() const { return text_; }
    const SkolemTemplate& skolem() const { return *skolem_; }

    /** Variables occurring in this term, in order of first occurrence. */
    void collectVariables(std::vector<std::string>& out) const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator<(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
    Kind kind_ = Kind::Constant;
    std::string text_;
    std::shared_ptr<const SkolemTemplate> skolem_;
};

/** Constructor of a provenance node identifier with term arguments. */
struct SkolemTemplate {
    NodeKind kind = NodeKind::Tuple;
    /** Predicate name for tuples, rule id for rules and goals. */
    std::string label;
    /** 1-based goal position, 0 for tuples and rules. */
    unsigned position = 0;
    Status status = Status::T;
    std::vector<Term> args;
};

bool operator==(const SkolemTemplate& a, const SkolemTemplate& b);
bool operator<(const SkolemTemplate& a, const SkolemTemplate& b);

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool isGround() const;

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.predicate == b.predicate && a.args == b.args;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        return a.args < b.args;
    }
};

struct Literal {
    Atom atom;
    bool negated = false;

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.negated == b.negated && a.atom == b.atom;
    }
};

struct Rule {
    std::string id;
    Atom head;
    std::vector<Literal> body;

    /** vars(r): head variables, then body-only variables, in first-occurrence order. */
    std::vector<std::string> variables() const;

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.id == b.id && a.head == b.head && a.body == b.body;
    }
};

struct Program {
    std::vector<Rule> rules;
    /** Predicate the questions are posed against. */
    std::string answerPredicate;
    /** Attribute names of the EDB relations. */
    std::map<std::string, std::vector<std::string>> edbSchema;

    bool isIdb(const std::string& predicate) const;
    bool isEdb(const std::string& predicate) const { return !isIdb(predicate); }
    std::vector<const Rule*> rulesFor(const std::string& predicate) const;
    const Rule* findRule(const std::string& id) const;
    std::set<std::string> idbPredicates() const;
    /** Arity of a predicate from the schema or its first occurrence, nullopt if unused. */
    std::optional<std::size_t> arity(const std::string& predicate) const;
    /** All constants occurring in rule heads or bodies. */
    std::set<std::string> constants() const;
};

struct ProvenanceQuestion {
    QuestionMode mode = QuestionMode::Why;
    Atom atom;

    Status rootStatus() const { return mode == QuestionMode::Why ? Status::T : Status::F; }
};

/**
 * t ≼ pattern: equal constants where the pattern has constants, and a
 * consistent assignment for repeated pattern variables.
 * Throws std::invalid_argument on arity mismatch.
 */
bool matches(const std::vector<std::string>& tuple, const std::vector<Term>& pattern);

/**
 * IDB predicates grouped by stratum, lowest first. Throws SemanticError
 * ("recursive program") when the dependency graph has a cycle.
 */
std::vector<std::set<std::string>> dependencyStrata(const Program& program);

/** Variables of `rule` not bound by a positive body literal. */
std::vector<std::string> unsafeVariables(const Rule& rule);
bool isSafe(const Rule& rule);

/**
 * Check safety, arity consistency and non-recursiveness; EDB predicates
 * must appear in the schema when `requireSchema` is set.
 */
void validateProgram(const Program& program, bool requireSchema = true);

/** Constant as it is written in program text: bare if lowercase identifier or number, quoted otherwise. */
std::string renderConstant(const std::string& value);
/** Display label of goal `position` of rule `ruleId`: r1, 3 -> g1^3. */
std::string goalLabel(const std::string& ruleId, unsigned position);
std::string toString(const Term& term);
std::string toString(const Atom& atom);
std::string toString(const Literal& literal);
/** Rule in parseable syntax, optionally prefixed by its label. */
std::string toString(const Rule& rule, bool withLabel = true);
std::string toString(const Program& program);
std::string toString(const ProvenanceQuestion& question);

/** Atom with variables renamed by first occurrence; equal keys mean equal up to renaming. */
std::string canonicalKey(const Atom& atom);

}  // namespace whyprov
