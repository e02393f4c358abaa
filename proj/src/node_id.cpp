/**
 * @file node_id.cpp
 *
 * Encoding: kind '|' label '|' position '|' status, then '|' len ':' value
 * for each argument. Labels are identifiers and never contain '|'.
 */
#include "whyprov/node_id.h"

#include <charconv>
#include <tuple>

namespace whyprov {

NodeId NodeId::tuple(std::string predicate, Status s, std::vector<std::string> args) {
    return {NodeKind::Tuple, std::move(predicate), 0, s, std::move(args)};
}

NodeId NodeId::rule(std::string ruleId, Status s, std::vector<std::string> args) {
    return {NodeKind::Rule, std::move(ruleId), 0, s, std::move(args)};
}

NodeId NodeId::goal(std::string ruleId, unsigned position, Status s, std::vector<std::string> args) {
    return {NodeKind::Goal, std::move(ruleId), position, s, std::move(args)};
}

std::string encodeNodeId(NodeKind kind, std::string_view label, unsigned position, Status status,
                         const std::vector<std::string_view>& args) {
    std::string out;
    out += kind == NodeKind::Tuple ? 't' : kind == NodeKind::Rule ? 'r' : 'g';
    out += '|';
    out += label;
    out += '|';
    out += std::to_string(position);
    out += '|';
    out += statusChar(status);
    for (auto a : args) {
        out += '|';
        out += std::to_string(a.size());
        out += ':';
        out += a;
    }
    return out;
}

std::string NodeId::encode() const {
    std::vector<std::string_view> views(args.begin(), args.end());
    return encodeNodeId(kind, label, position, status, views);
}

std::optional<NodeId> NodeId::decode(std::string_view text) {
    NodeId id;
    if (text.size() < 2 || text[1] != '|') return std::nullopt;
    switch (text[0]) {
        case 't': id.kind = NodeKind::Tuple; break;
        case 'r': id.kind = NodeKind::Rule; break;
        case 'g': id.kind = NodeKind::Goal; break;
        default: return std::nullopt;
    }
    std::size_t i = 2;
    auto bar = text.find('|', i);
    if (bar == std::string_view::npos) return std::nullopt;
    id.label = std::string(text.substr(i, bar - i));
    i = bar + 1;
    bar = text.find('|', i);
    if (bar == std::string_view::npos) return std::nullopt;
    if (std::from_chars(text.data() + i, text.data() + bar, id.position).ec != std::errc()) return std::nullopt;
    i = bar + 1;
    if (i >= text.size()) return std::nullopt;
    if (text[i] == 'T') {
        id.status = Status::T;
    } else if (text[i] == 'F') {
        id.status = Status::F;
    } else {
        return std::nullopt;
    }
    ++i;
    while (i < text.size()) {
        if (text[i] != '|') return std::nullopt;
        ++i;
        auto colon = text.find(':', i);
        if (colon == std::string_view::npos) return std::nullopt;
        std::size_t len = 0;
        if (std::from_chars(text.data() + i, text.data() + colon, len).ec != std::errc()) return std::nullopt;
        if (colon + 1 + len > text.size()) return std::nullopt;
        id.args.emplace_back(text.substr(colon + 1, len));
        i = colon + 1 + len;
    }
    return id;
}

std::string NodeId::display() const {
    std::string out = kind == NodeKind::Goal ? goalLabel(label, position) : label;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += renderConstant(args[i]);
    }
    return out + ')';
}

bool operator==(const NodeId& a, const NodeId& b) {
    return a.kind == b.kind && a.label == b.label && a.position == b.position && a.status == b.status &&
           a.args == b.args;
}

bool operator<(const NodeId& a, const NodeId& b) {
    return std::tie(a.kind, a.label, a.position, a.status, a.args) <
           std::tie(b.kind, b.label, b.position, b.status, b.args);
}

}  // namespace whyprov
