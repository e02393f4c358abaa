/**
 * @file games.h
 *
 * Provenance games: a two-player game graph over ground atoms, rule
 * instantiations and goals. A position is lost if it has no moves or all
 * moves lead to won positions; won if some move leads to a lost position.
 * Relation nodes are won iff the atom is true.
 */
#pragma once

#include "whyprov/model.h"
#include "whyprov/storage.h"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace whyprov {

enum class GameNodeKind : std::uint8_t { Positive, Negative, Rule, Goal, Fact };

enum class GameValue : std::uint8_t { Won, Lost, Drawn };

struct GameNode {
    GameNodeKind kind;
    /** Predicate (relation and fact nodes) or rule id (rule and goal nodes). */
    std::string label;
    unsigned position = 0;
    std::vector<std::string> args;

    /** Q(a), ¬Q(a), r1(a,b), g1^2(b), r_R(a). */
    std::string display() const;
};

class GameGraph {
public:
    std::size_t add(GameNode node);
    std::optional<std::size_t> find(const std::string& display) const;
    void addMove(std::size_t from, std::size_t to);

    std::size_t size() const { return nodes_.size(); }
    const GameNode& node(std::size_t i) const { return nodes_[i]; }
    const std::vector<std::size_t>& moves(std::size_t i) const { return moves_[i]; }
    std::size_t moveCount() const;

private:
    std::vector<GameNode> nodes_;
    std::vector<std::vector<std::size_t>> moves_;
    std::unordered_map<std::string, std::size_t> index_;
};

/** Default bound on the number of game nodes. */
inline constexpr std::size_t kGameGuard = 2'000'000;

/**
 * Game for `program` over `instance`, grounded over adom(instance) plus the
 * program constants. Throws SizeGuardError beyond `guard` nodes.
 */
GameGraph buildGame(const Program& program, const Instance& instance, std::size_t guard = kGameGuard);

/** Backward induction; positions on cycles stay Drawn. */
std::vector<GameValue> solve(const GameGraph& game);

/** A move is bad iff both endpoints are won. */
bool isBadMove(const std::vector<GameValue>& values, std::size_t from, std::size_t to);

/** Nodes and good moves reachable from the question roots. */
struct GameProvenance {
    std::vector<std::size_t> roots;
    std::vector<std::size_t> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> moves;
};

/**
 * Roots are positive relation nodes of the question predicate matching the
 * pattern that are won (WHY) or lost (WHYNOT).
 */
GameProvenance gameProvenance(const GameGraph& game, const std::vector<GameValue>& values,
                              const ProvenanceQuestion& question);

/** Polynomial in N[X]: sorted monomial (with repeats) -> coefficient. */
class Polynomial {
public:
    using Monomial = std::vector<std::string>;

    static Polynomial zero() { return {}; }
    static Polynomial one();
    static Polynomial variable(const std::string& name);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    const std::map<Monomial, std::uint64_t>& terms() const { return terms_; }
    /** Sum of coefficients. */
    std::uint64_t monomialCount() const;
    /** "p^3 + 2*p*q*r": monomials in lexicographic order. */
    std::string toString() const;

private:
    std::map<Monomial, std::uint64_t> terms_;
};

/**
 * Provenance polynomial of a WHY root: lost inner positions multiply, won
 * inner positions add, fact leaves r_R(x) map to their annotation. EDB
 * tuples without an annotation map to a variable named after the tuple.
 */
Polynomial toPolynomial(const GameGraph& game, const std::vector<GameValue>& values, std::size_t root,
                        const std::map<std::string, std::string>& annotations = {});

/** Annotation file: lines `Pred(args) = name`. */
std::map<std::string, std::string> parseAnnotations(const std::string& text);

}  // namespace whyprov
