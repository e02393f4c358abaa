/**
 * @file bench.cpp
 */
#include "whyprov/bench.h"

#include "whyprov/errors.h"
#include "whyprov/evaluator.h"
#include "whyprov/parser.h"
#include "whyprov/provgraph.h"
#include "whyprov/rewriter.h"

#include <algorithm>
#include <chrono>
#include <random>

namespace whyprov {

BenchQuery parseBenchQuery(const std::string& name) {
    if (name == "r1") return BenchQuery::R1;
    if (name == "r2") return BenchQuery::R2;
    if (name == "r3") return BenchQuery::R3;
    throw SemanticError("unknown benchmark query " + name + " (expected r1, r2 or r3)");
}

std::string benchQueryName(BenchQuery q) {
    switch (q) {
        case BenchQuery::R1: return "r1";
        case BenchQuery::R2: return "r2";
        case BenchQuery::R3: return "r3";
    }
    return "?";
}

std::string benchProgram(BenchQuery q) {
    const std::string decl = ".decl DBLP(author1, author2).\n";
    switch (q) {
        case BenchQuery::R1:
            return decl + "r1: only2hop(X,Y) :- DBLP(X,Z), DBLP(Z,Y), not DBLP(X,Y).\n";
        case BenchQuery::R2:
            return decl +
                   ".answer XwithYnotZ.\n"
                   "r2: XwithYnotZ(X,Y) :- DBLP(X,Y), not Q_1(X).\n"
                   "r2p: Q_1(X) :- DBLP(X,'Svein Johannessen').\n";
        case BenchQuery::R3:
            return decl +
                   ".answer only3hop.\n"
                   "r3: only3hop(X,Y) :- DBLP(X,A), DBLP(A,B), DBLP(B,Y), not E_1(X,Y), not E_2(X,Y).\n"
                   "r3p: E_1(X,Y) :- DBLP(X,Y).\n"
                   "r3pp: E_2(X,Y) :- DBLP(X,A), DBLP(A,Y).\n";
    }
    return decl;
}

Instance coauthorInstance(std::size_t tuples, std::uint64_t seed) {
    Instance inst;
    inst.declare("DBLP", {"author1", "author2"});
    std::size_t authors = std::max<std::size_t>(4, tuples / 4);
    std::vector<std::string> names;
    names.emplace_back(kBenchAuthor);
    for (std::size_t i = 1; i < authors; ++i) names.push_back("a" + std::to_string(i));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, authors - 1);
    const Relation* rel = nullptr;
    // the distinguished author always has a few co-authors
    for (std::size_t i = 1; i <= 3 && i < authors; ++i) {
        inst.addFact("DBLP", {names[0], names[i]});
        inst.addFact("DBLP", {names[i], names[0]});
    }
    rel = inst.find("DBLP");
    while (rel->size() < tuples) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b) continue;
        inst.addFact("DBLP", {names[a], names[b]});
        inst.addFact("DBLP", {names[b], names[a]});
    }
    return inst;
}

BenchResult runBenchmark(std::size_t tuples, BenchQuery query, std::uint64_t seed, std::uint64_t directGuard,
                         double directBudgetSeconds) {
    using Clock = std::chrono::steady_clock;
    auto seconds = [](Clock::time_point from) { return std::chrono::duration<double>(Clock::now() - from).count(); };

    BenchResult res;
    Instance inst = coauthorInstance(tuples, seed);
    res.tuples = inst.find("DBLP")->size();
    ParseResult parsed = parseProgram(benchProgram(query));
    const Program& program = parsed.program;
    DomainAssignment domains = DomainAssignment::build(program, inst);

    Instance answers = evaluate(program, inst);
    auto rows = answers.tuples(program.answerPredicate);
    ProvenanceQuestion q;
    q.atom.predicate = program.answerPredicate;
    if (!rows.empty()) {
        q.mode = QuestionMode::Why;
        for (const auto& v : rows.front()) q.atom.args.push_back(Term::constant(v));
    } else {
        q.mode = QuestionMode::WhyNot;
        q.atom.args = {Term::constant("a1"), Term::constant("a2")};
    }
    res.question = toString(q);

    auto start = Clock::now();
    ProvGraph g = computeExplanation(program, inst, q, domains);
    res.rewriteSeconds = seconds(start);
    res.ruleNodes = g.count(NodeKind::Rule);
    res.edges = g.edges().size();

    res.directGroundings = directGroundingSize(program, inst, domains);
    if (res.directGroundings > directGuard) {
        res.directStatus = "guard";
        return res;
    }
    start = Clock::now();
    ProvGraph full = directMethod(program, inst, domains, directGuard);
    explanation(full, q);
    res.directSeconds = seconds(start);
    res.directStatus = *res.directSeconds > directBudgetSeconds ? "budget" : "ok";
    return res;
}

}  // namespace whyprov
