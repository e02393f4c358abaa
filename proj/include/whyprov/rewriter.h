/**
 * @file rewriter.h
 *
 * Rewrites a program and a provenance question into a Datalog program whose
 * `prov_edge` relation is the explanation of the question. Stages:
 *
 *   unifyProgram      rule replicas specialized to the atoms reachable from the question
 *   annotate          T / F / FT annotations for atoms and replicas
 *   makeFiringRules   FIRE_T_* / FIRE_F_* / FIRE_FT_* rules
 *   addConnectivity   firing rules restricted to derivations connected to the question
 *   makeEdgeRules     rules producing prov_edge(src, dst) over Skolem node ids
 */
#pragma once

#include "whyprov/model.h"
#include "whyprov/provgraph.h"
#include "whyprov/storage.h"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace whyprov {

inline constexpr const char* kEdgePredicate = "prov_edge";

/** A rule specialized by unifying its head with an atom. */
struct UnifiedRule {
    std::string baseId;
    /** The specialized rule; its id is the base rule id. */
    Rule rule;
    /** vars(base rule) and their images under the unifier. */
    std::vector<std::string> baseVariables;
    std::vector<Term> nodeArgs;
    /** Canonical key of the atom this replica was first created for. */
    std::string atomKey;

    /** r1^(X=n,Y=s) style label; bare id if nothing was bound. */
    std::string display() const;
};

struct UnifiedProgram {
    ProvenanceQuestion question;
    std::string rootKey;
    std::vector<UnifiedRule> rules;
    /** Atoms in discovery order, keyed by canonicalKey. */
    std::vector<std::string> atomOrder;
    std::map<std::string, Atom> atoms;
    std::map<std::string, std::vector<std::size_t>> replicas;
};

struct AnnotatedProgram {
    UnifiedProgram unified;
    std::map<std::string, Annotation> atomAnnotation;
    /** Per replica; nullopt if not reached. */
    std::vector<std::optional<Annotation>> ruleAnnotation;
};

/** A firing rule restricted to derivations connected to the question. */
struct ConnectedVariant {
    std::size_t replica = 0;
    Status status = Status::T;
    std::string predicate;
    /** Replica specialized along the connecting path. */
    Rule rule;
    std::vector<Term> args;
    /** Flag variables for F variants; flag j is true iff goal j succeeded. */
    std::vector<std::string> flags;
    std::optional<std::size_t> parent;
    unsigned parentGoal = 0;
};

struct FiringProgram {
    AnnotatedProgram annotated;
    /** All generated rules; stage boundaries below. */
    Program program;
    std::size_t firingEnd = 0;
    std::size_t connectivityEnd = 0;
    std::vector<bool> hasFailureRule;
    /**
     * Per replica and goal: a negated goal of the success rule is checked
     * directly (`not R(..)`, or `not FIRE_T_R(..)` for IDB R) instead of via
     * FIRE_F_R, whose domain guards would drop successful derivations.
     */
    std::vector<std::vector<bool>> plainNegation;
    std::set<std::string> idbPredicates;
    /**
     * Columns where some F-annotated atom holds a constant outside the
     * column's domain, mapped to the domain relation. FIRE_F facts for such
     * atoms would otherwise leak into failure rules joining the same
     * predicate with a variable in that column.
     */
    std::map<std::pair<std::string, std::size_t>, std::string> constantGuards;
    std::vector<ConnectedVariant> variants;
};

UnifiedProgram unifyProgram(const Program& program, const ProvenanceQuestion& question);
AnnotatedProgram annotate(UnifiedProgram unified, const Program& program);
FiringProgram makeFiringRules(AnnotatedProgram annotated, const Program& program, const DomainAssignment& domains);
void addConnectivity(FiringProgram& firing);
void makeEdgeRules(FiringProgram& firing);

/** All stages in sequence. */
FiringProgram rewrite(const Program& program, const ProvenanceQuestion& question, const DomainAssignment& domains);

/**
 * Evaluate the rewritten program over `instance` (plus materialized
 * domains) and decode the edge relation into a provenance graph.
 */
ProvGraph computeExplanation(const Program& program, const Instance& instance, const ProvenanceQuestion& question,
                             const DomainAssignment& domains);
ProvGraph evaluateRewrite(const FiringProgram& firing, const Instance& instance, const DomainAssignment& domains);

/** Check that the question's constants lie in the domains of the question predicate. */
void validateQuestion(const ProvenanceQuestion& question, const DomainAssignment& domains);

enum class Stage { Unified, Annotated, Firing, Connected, Edges, All };

Stage parseStage(const std::string& name);
/** Text of one stage, one rule per line. */
std::string renderStage(const FiringProgram& firing, Stage stage);

/** Name of the firing predicate for a relation or rule: FIRE_T_Q, FIRE_FT_T, FIRE_F_r1. */
std::string firingPredicate(const std::string& kind, const std::string& name);

}  // namespace whyprov
