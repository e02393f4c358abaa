/**
 * @file node_id.h
 *
 * Identifiers of provenance graph nodes. Generated programs build them as
 * Skolem constants; the encoding into a single string is injective so
 * equal ids always intern to the same symbol.
 */
#pragma once

#include "whyprov/model.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace whyprov {

struct NodeId {
    NodeKind kind = NodeKind::Tuple;
    /** Predicate for tuples, rule id for rules and goals. */
    std::string label;
    /** 1-based goal position, 0 otherwise. */
    unsigned position = 0;
    Status status = Status::T;
    std::vector<std::string> args;

    static NodeId tuple(std::string predicate, Status s, std::vector<std::string> args);
    static NodeId rule(std::string ruleId, Status s, std::vector<std::string> args);
    static NodeId goal(std::string ruleId, unsigned position, Status s, std::vector<std::string> args);

    std::string encode() const;
    static std::optional<NodeId> decode(std::string_view text);

    /** Label without status: T(n,w), r1(n,s,w), g1^1(n,w). */
    std::string display() const;

    friend bool operator==(const NodeId& a, const NodeId& b);
    friend bool operator<(const NodeId& a, const NodeId& b);
    friend bool operator!=(const NodeId& a, const NodeId& b) { return !(a == b); }
};

/** Encode without building a NodeId; `args` are already rendered values. */
std::string encodeNodeId(NodeKind kind, std::string_view label, unsigned position, Status status,
                         const std::vector<std::string_view>& args);

}  // namespace whyprov
