/**
 * @file evaluator.h
 *
 * Stratified evaluation of non-recursive Datalog with negation, and
 * enumeration of rule derivations with per-goal success flags.
 */
#pragma once

#include "whyprov/model.h"
#include "whyprov/storage.h"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace whyprov {

/** Constants used for boolean flags in generated programs. */
inline constexpr const char* kTrue = "true";
inline constexpr const char* kFalse = "false";

/**
 * Evaluate `program` over `input` stratum by stratum. Predicates without
 * rules are read from `input` (missing ones are empty). The result holds
 * the input relations plus one relation per IDB predicate.
 *
 * Heads may contain Skolem templates and negated flags; these are
 * constructed as interned constants.
 */
Instance evaluate(const Program& program, const Instance& input);

struct DerivationRecord {
    std::string ruleId;
    /** vars(r) in canonical order and their values. */
    std::vector<std::string> variables;
    std::vector<std::string> values;
    std::vector<std::string> head;
    bool success = false;
    /** All values lie in their goal domains. Only successful records can be ungrounded. */
    bool grounded = true;
    /** Per body literal: true iff the literal holds under the binding. */
    std::vector<bool> goalStatus;

    const std::string& valueOf(const std::string& variable) const;
    /** Image of a literal's arguments under the binding. */
    std::vector<std::string> instantiate(const Atom& atom) const;
};

class DomainAssignment;

/**
 * Enumerate bindings of vars(rule). With `domains`, each variable ranges
 * over goal_domain(rule, X) (domain-grounded derivations), plus successful
 * derivations whose values fall outside the domain of a negated goal's
 * attribute; without, over the active domain of `evaluated` plus the
 * program constants. `headFilter`
 * restricts to heads matching the pattern. `evaluated` must contain the IDB
 * relations used by the rule.
 */
void forEachDerivation(const Program& program, const Instance& evaluated, const Rule& rule,
                       const std::optional<std::vector<Term>>& headFilter, const DomainAssignment* domains,
                       const std::function<void(const DerivationRecord&)>& callback);

std::vector<DerivationRecord> derivations(const Program& program, const Instance& evaluated, const Rule& rule,
                                          const std::optional<std::vector<Term>>& headFilter = std::nullopt,
                                          const DomainAssignment* domains = nullptr);

/** Number of bindings forEachDerivation would enumerate (saturating). */
std::uint64_t groundingSize(const Program& program, const Instance& evaluated, const Rule& rule,
                            const DomainAssignment* domains);

}  // namespace whyprov
