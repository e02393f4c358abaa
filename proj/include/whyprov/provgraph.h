/**
 * @file provgraph.h
 *
 * Provenance graphs: tuple, rule and goal nodes with success/failure status.
 * Also the direct construction used as a reference: ground every rule over
 * its goal domains and add nodes for each derivation.
 */
#pragma once

#include "whyprov/model.h"
#include "whyprov/node_id.h"
#include "whyprov/storage.h"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace whyprov {

class ProvGraph {
public:
    using Edge = std::pair<NodeId, NodeId>;

    void addNode(const NodeId& n) { nodes_.insert(n); }
    void addEdge(const NodeId& src, const NodeId& dst);

    const std::set<NodeId>& nodes() const { return nodes_; }
    const std::set<Edge>& edges() const { return edges_; }
    bool hasNode(const NodeId& n) const { return nodes_.count(n) != 0; }
    bool hasEdge(const NodeId& s, const NodeId& d) const { return edges_.count({s, d}) != 0; }

    std::vector<NodeId> successors(const NodeId& n) const;
    std::size_t count(NodeKind kind) const;
    std::size_t count(NodeKind kind, Status status) const;

    /** Subgraph spanned by the edges (isolated nodes dropped). */
    ProvGraph edgeInduced() const;

private:
    std::set<NodeId> nodes_;
    std::set<Edge> edges_;
    std::map<NodeId, std::vector<NodeId>> adjacency_;
};

/** Default bound on the number of groundings the direct method enumerates per rule. */
inline constexpr std::uint64_t kDirectGuard = 1'000'000;

/**
 * Build the provenance graph of `program` over `instance` for all
 * domain-grounded derivations. Throws SizeGuardError if a rule has more
 * than `guard` groundings.
 */
ProvGraph directMethod(const Program& program, const Instance& instance, const DomainAssignment& domains,
                       std::uint64_t guard = kDirectGuard);

/** Largest per-rule grounding count; what the guard is compared against. */
std::uint64_t directGroundingSize(const Program& program, const Instance& instance, const DomainAssignment& domains);

/**
 * Question roots: tuple nodes of the question predicate matching the
 * pattern, with status T for WHY and F for WHYNOT.
 */
std::vector<NodeId> questionRoots(const ProvGraph& graph, const ProvenanceQuestion& question);

/** Nodes reachable from the question roots, with all edges among them. */
ProvGraph explanation(const ProvGraph& graph, const ProvenanceQuestion& question);

struct GraphDiff {
    std::vector<NodeId> onlyLeftNodes;
    std::vector<NodeId> onlyRightNodes;
    std::vector<ProvGraph::Edge> onlyLeftEdges;
    std::vector<ProvGraph::Edge> onlyRightEdges;

    bool empty() const {
        return onlyLeftNodes.empty() && onlyRightNodes.empty() && onlyLeftEdges.empty() && onlyRightEdges.empty();
    }
    std::string report(std::size_t limit = 20) const;
};

GraphDiff graphDiff(const ProvGraph& left, const ProvGraph& right);
bool graphEqual(const ProvGraph& left, const ProvGraph& right);

/** Violations of the structural laws of provenance graphs; empty if well formed. */
std::vector<std::string> checkInvariants(const ProvGraph& graph, const Program& program);

}  // namespace whyprov
