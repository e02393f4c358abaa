/**
 * @file bench.h
 *
 * Synthetic co-author workloads and timing of the rewrite and direct
 * methods on them.
 */
#pragma once

#include "whyprov/model.h"
#include "whyprov/storage.h"

#include <cstdint>
#include <optional>
#include <string>

namespace whyprov {

enum class BenchQuery { R1, R2, R3 };

BenchQuery parseBenchQuery(const std::string& name);
std::string benchQueryName(BenchQuery q);

/**
 * Program text over DBLP(author1, author2):
 *   r1  only2hop: pairs two hops apart that are not co-authors
 *   r2  XwithYnotZ: co-author pairs whose first author never wrote with 'Svein Johannessen'
 *   r3  only3hop: pairs three hops apart that are neither one nor two hops apart
 */
std::string benchProgram(BenchQuery q);

/** Name of the distinguished author used by r2; always present in generated data. */
inline constexpr const char* kBenchAuthor = "Svein Johannessen";

/**
 * Symmetric random co-author relation with at least `tuples` tuples over
 * about tuples/4 authors.
 */
Instance coauthorInstance(std::size_t tuples, std::uint64_t seed);

struct BenchResult {
    std::size_t tuples = 0;
    std::string question;
    double rewriteSeconds = 0;
    std::size_t ruleNodes = 0;
    std::size_t edges = 0;
    /** Largest per-rule grounding the direct method would enumerate. */
    std::uint64_t directGroundings = 0;
    /** "ok", "guard" (exceeds its size guard) or "budget" (ran longer than the budget). */
    std::string directStatus;
    std::optional<double> directSeconds;
};

/**
 * Ask WHY for the first answer of the query (both arguments bound) and time
 * the rewrite method; run the direct method when its grounding fits `directGuard`.
 */
BenchResult runBenchmark(std::size_t tuples, BenchQuery query, std::uint64_t seed,
                         std::uint64_t directGuard = 1'000'000, double directBudgetSeconds = 60.0);

}  // namespace whyprov
