/**
 * @file export.h
 *
 * Deterministic text renderings of provenance graphs and game provenance.
 */
#pragma once

#include "whyprov/games.h"
#include "whyprov/provgraph.h"

#include <ostream>
#include <string>

namespace whyprov {

/** Display label with status suffix: T(n,w)[T]. */
std::string nodeText(const NodeId& n);

/** One "src -> dst" line per edge, sorted. */
void writeEdges(const ProvGraph& graph, std::ostream& os);
/** {nodes:[{id,label,kind,status}], edges:[{src,dst}]}, ids are node labels. */
void writeJson(const ProvGraph& graph, std::ostream& os);
/** Tuples as ovals, rules as boxes, goals as rounded boxes; green for T, red for F. */
void writeDot(const ProvGraph& graph, std::ostream& os);

/** Good moves of a game provenance, "src [W] -> dst [L]" lines, sorted. */
void writeGameEdges(const GameGraph& game, const std::vector<GameValue>& values, const GameProvenance& prov,
                    std::ostream& os);

}  // namespace whyprov
