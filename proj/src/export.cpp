/**
 * @file export.cpp
 */
#include "whyprov/export.h"

#include <json.hpp>

#include <algorithm>
#include <vector>

namespace whyprov {

namespace {

const char* kindName(NodeKind k) {
    switch (k) {
        case NodeKind::Tuple: return "tuple";
        case NodeKind::Rule: return "rule";
        case NodeKind::Goal: return "goal";
    }
    return "?";
}

std::string dotId(const std::string& label) {
    std::string out;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (label.compare(i, 2, "\xC2\xAC") == 0) {  // ¬
            out += "not_";
            ++i;
        } else if (label[i] == '"' || label[i] == '\\') {
            out += '\\';
            out += label[i];
        } else {
            out += label[i];
        }
    }
    return "\"" + out + "\"";
}

}  // namespace

std::string nodeText(const NodeId& n) {
    return n.display() + "[" + statusChar(n.status) + "]";
}

void writeEdges(const ProvGraph& graph, std::ostream& os) {
    std::vector<std::string> lines;
    for (const auto& [s, d] : graph.edges()) lines.push_back(nodeText(s) + " -> " + nodeText(d));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) os << l << "\n";
}

void writeJson(const ProvGraph& graph, std::ostream& os) {
    using nlohmann::json;
    std::vector<json> nodes;
    for (const auto& n : graph.nodes())
        nodes.push_back({{"id", n.display()},
                         {"label", n.display()},
                         {"kind", kindName(n.kind)},
                         {"status", std::string(1, statusChar(n.status))}});
    std::sort(nodes.begin(), nodes.end(), [](const json& a, const json& b) { return a["id"] < b["id"]; });
    std::vector<json> edges;
    for (const auto& [s, d] : graph.edges()) edges.push_back({{"src", s.display()}, {"dst", d.display()}});
    std::sort(edges.begin(), edges.end(), [](const json& a, const json& b) {
        return std::tie(a["src"], a["dst"]) < std::tie(b["src"], b["dst"]);
    });
    json doc = {{"nodes", nodes}, {"edges", edges}};
    os << doc.dump(2) << "\n";
}

void writeDot(const ProvGraph& graph, std::ostream& os) {
    std::vector<std::string> nodeLines, edgeLines;
    for (const auto& n : graph.nodes()) {
        std::string shape = n.kind == NodeKind::Tuple ? "shape=ellipse" : "shape=box";
        if (n.kind == NodeKind::Goal) shape += ", style=\"rounded,filled\"";
        else shape += ", style=filled";
        std::string color = n.status == Status::T ? "palegreen" : "lightcoral";
        nodeLines.push_back("  " + dotId(n.display()) + " [label=" + dotId(n.display()) + ", " + shape +
                            ", fillcolor=" + color + "];");
    }
    for (const auto& [s, d] : graph.edges())
        edgeLines.push_back("  " + dotId(s.display()) + " -> " + dotId(d.display()) + ";");
    std::sort(nodeLines.begin(), nodeLines.end());
    std::sort(edgeLines.begin(), edgeLines.end());
    os << "digraph provenance {\n";
    for (const auto& l : nodeLines) os << l << "\n";
    for (const auto& l : edgeLines) os << l << "\n";
    os << "}\n";
}

void writeGameEdges(const GameGraph& game, const std::vector<GameValue>& values, const GameProvenance& prov,
                    std::ostream& os) {
    auto text = [&](std::size_t v) {
        const char* tag = values[v] == GameValue::Won ? "[W]" : values[v] == GameValue::Lost ? "[L]" : "[D]";
        return game.node(v).display() + tag;
    };
    std::vector<std::string> lines;
    for (const auto& [s, d] : prov.moves) lines.push_back(text(s) + " -> " + text(d));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) os << l << "\n";
}

}  // namespace whyprov
