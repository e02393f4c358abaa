/**
 * @file parser.h
 *
 * Datalog surface syntax:
 *
 *   % comment
 *   .decl Train(fromCity, toCity).
 *   .answer Q.
 *   Train(n, w).
 *   Q(X,Y) :- Train(X,Z), Train(Z,Y), not Train(X,Y).
 *   r2: P(X) :- Train(X,'new york'), \+ Q(X,X).
 *
 * Variables start with an uppercase letter or '_'. Constants are lowercase
 * identifiers, numbers or quoted strings. Unlabeled rules get ids r1..rm by
 * position.
 */
#pragma once

#include "whyprov/model.h"

#include <map>
#include <string>
#include <vector>

namespace whyprov {

/** EDB relation name -> attribute names. */
using Catalog = std::map<std::string, std::vector<std::string>>;

struct ParseResult {
    Program program;
    /** Ground facts given inline in the program text. */
    std::vector<Atom> facts;
};

/**
 * Parse and validate a program. Throws SyntaxError with line/column, or
 * SemanticError for unsafe rules, unknown predicates, arity mismatches and
 * recursion.
 */
ParseResult parseProgram(const std::string& text, const Catalog& catalog = {});

/** Parse facts only (no rules). */
std::vector<Atom> parseFacts(const std::string& text);

/** Parse "WHY Q(n,s)" / "WHYNOT Q(s,X)" and check it against the program. */
ProvenanceQuestion parseQuestion(const std::string& text, const Program& program);

/** Default attribute names A1..An. */
std::vector<std::string> defaultAttributes(std::size_t arity);

}  // namespace whyprov
