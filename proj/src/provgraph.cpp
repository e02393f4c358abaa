/**
 * @file provgraph.cpp
 */
#include "whyprov/provgraph.h"

#include "whyprov/errors.h"
#include "whyprov/evaluator.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace whyprov {

void ProvGraph::addEdge(const NodeId& src, const NodeId& dst) {
    nodes_.insert(src);
    nodes_.insert(dst);
    if (edges_.emplace(src, dst).second) adjacency_[src].push_back(dst);
}

std::vector<NodeId> ProvGraph::successors(const NodeId& n) const {
    auto it = adjacency_.find(n);
    return it == adjacency_.end() ? std::vector<NodeId>{} : it->second;
}

std::size_t ProvGraph::count(NodeKind kind) const {
    return static_cast<std::size_t>(
            std::count_if(nodes_.begin(), nodes_.end(), [&](const NodeId& n) { return n.kind == kind; }));
}

std::size_t ProvGraph::count(NodeKind kind, Status status) const {
    return static_cast<std::size_t>(std::count_if(
            nodes_.begin(), nodes_.end(), [&](const NodeId& n) { return n.kind == kind && n.status == status; }));
}

ProvGraph ProvGraph::edgeInduced() const {
    ProvGraph g;
    for (const auto& [s, d] : edges_) g.addEdge(s, d);
    return g;
}

namespace {

std::vector<std::vector<std::string>> combinations(const std::vector<const std::set<std::string>*>& sets) {
    std::vector<std::vector<std::string>> out;
    for (const auto* s : sets)
        if (s->empty()) return out;
    std::vector<std::set<std::string>::const_iterator> its;
    for (const auto* s : sets) its.push_back(s->begin());
    while (true) {
        std::vector<std::string> row;
        for (auto& it : its) row.push_back(*it);
        out.push_back(std::move(row));
        std::size_t k = sets.size();
        while (k > 0) {
            --k;
            if (++its[k] != sets[k]->end()) break;
            its[k] = sets[k]->begin();
            if (k == 0) return out;
        }
        if (sets.empty()) return out;
    }
}

std::uint64_t saturatingMul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::set<std::string> programPredicates(const Program& program) {
    std::set<std::string> out;
    for (const auto& r : program.rules) {
        out.insert(r.head.predicate);
        for (const auto& lit : r.body) out.insert(lit.atom.predicate);
    }
    return out;
}

}  // namespace

std::uint64_t directGroundingSize(const Program& program, const Instance& instance, const DomainAssignment& domains) {
    std::uint64_t worst = 0;
    for (const auto& p : programPredicates(program)) {
        std::uint64_t n = 1;
        for (std::size_t c = 0; c < domains.attributes(p).size(); ++c)
            n = saturatingMul(n, domains.resolve(p, c).size());
        worst = std::max(worst, n);
    }
    for (const auto& r : program.rules) worst = std::max(worst, groundingSize(program, instance, r, &domains));
    return worst;
}

ProvGraph directMethod(const Program& program, const Instance& instance, const DomainAssignment& domains,
                       std::uint64_t guard) {
    std::uint64_t size = directGroundingSize(program, instance, domains);
    if (size > guard)
        throw SizeGuardError("direct method: " + std::to_string(size) + " groundings exceed the guard of " +
                             std::to_string(guard));

    Instance result = evaluate(program, instance);
    ProvGraph g;
    auto tupleNode = [&](const std::string& pred, const std::vector<std::string>& args) {
        return NodeId::tuple(pred, result.contains(pred, args) ? Status::T : Status::F, args);
    };

    for (const auto& p : programPredicates(program)) {
        std::vector<const std::set<std::string>*> sets;
        for (std::size_t c = 0; c < domains.attributes(p).size(); ++c) sets.push_back(&domains.resolve(p, c));
        for (const auto& args : combinations(sets)) g.addNode(tupleNode(p, args));
    }

    for (const auto& r : program.rules) {
        forEachDerivation(program, result, r, std::nullopt, &domains, [&](const DerivationRecord& d) {
            bool headHolds = result.contains(r.head.predicate, d.head);
            if (!d.success && headHolds) return;
            Status st = d.success ? Status::T : Status::F;
            NodeId ruleNode = NodeId::rule(r.id, st, d.values);
            g.addEdge(NodeId::tuple(r.head.predicate, st, d.head), ruleNode);
            for (std::size_t j = 0; j < r.body.size(); ++j) {
                if (!d.success && d.goalStatus[j]) continue;
                const Literal& lit = r.body[j];
                auto args = d.instantiate(lit.atom);
                NodeId goalNode = NodeId::goal(r.id, static_cast<unsigned>(j + 1), st, args);
                g.addEdge(ruleNode, goalNode);
                g.addEdge(goalNode, tupleNode(lit.atom.predicate, args));
            }
        });
    }
    return g;
}

std::vector<NodeId> questionRoots(const ProvGraph& graph, const ProvenanceQuestion& question) {
    std::vector<NodeId> out;
    for (const auto& n : graph.nodes()) {
        if (n.kind != NodeKind::Tuple || n.label != question.atom.predicate) continue;
        if (n.status != question.rootStatus() || n.args.size() != question.atom.arity()) continue;
        if (matches(n.args, question.atom.args)) out.push_back(n);
    }
    return out;
}

ProvGraph explanation(const ProvGraph& graph, const ProvenanceQuestion& question) {
    std::set<NodeId> seen;
    std::deque<NodeId> todo;
    for (const auto& r : questionRoots(graph, question))
        if (seen.insert(r).second) todo.push_back(r);
    ProvGraph out;
    while (!todo.empty()) {
        NodeId n = todo.front();
        todo.pop_front();
        out.addNode(n);
        for (const auto& s : graph.successors(n)) {
            out.addEdge(n, s);
            if (seen.insert(s).second) todo.push_back(s);
        }
    }
    return out;
}

GraphDiff graphDiff(const ProvGraph& left, const ProvGraph& right) {
    GraphDiff d;
    std::set_difference(left.nodes().begin(), left.nodes().end(), right.nodes().begin(), right.nodes().end(),
                        std::back_inserter(d.onlyLeftNodes));
    std::set_difference(right.nodes().begin(), right.nodes().end(), left.nodes().begin(), left.nodes().end(),
                        std::back_inserter(d.onlyRightNodes));
    std::set_difference(left.edges().begin(), left.edges().end(), right.edges().begin(), right.edges().end(),
                        std::back_inserter(d.onlyLeftEdges));
    std::set_difference(right.edges().begin(), right.edges().end(), left.edges().begin(), left.edges().end(),
                        std::back_inserter(d.onlyRightEdges));
    return d;
}

bool graphEqual(const ProvGraph& left, const ProvGraph& right) {
    return left.nodes() == right.nodes() && left.edges() == right.edges();
}

std::string GraphDiff::report(std::size_t limit) const {
    std::ostringstream os;
    auto node = [](const NodeId& n) { return n.display() + "[" + statusChar(n.status) + "]"; };
    auto section = [&](const char* title, const auto& items, auto render) {
        if (items.empty()) return;
        os << title << " (" << items.size() << "):\n";
        std::size_t shown = 0;
        for (const auto& it : items) {
            if (shown++ == limit) {
                os << "  ...\n";
                break;
            }
            os << "  " << render(it) << "\n";
        }
    };
    auto edge = [&](const ProvGraph::Edge& e) { return node(e.first) + " -> " + node(e.second); };
    section("nodes only in left", onlyLeftNodes, node);
    section("nodes only in right", onlyRightNodes, node);
    section("edges only in left", onlyLeftEdges, edge);
    section("edges only in right", onlyRightEdges, edge);
    return os.str();
}

std::vector<std::string> checkInvariants(const ProvGraph& graph, const Program& program) {
    std::vector<std::string> problems;
    auto name = [](const NodeId& n) { return n.display() + "[" + statusChar(n.status) + "]"; };

    std::map<NodeId, Status> byLabel;
    for (const auto& n : graph.nodes()) {
        NodeId key = n;
        key.status = Status::T;
        auto [it, fresh] = byLabel.emplace(key, n.status);
        if (!fresh && it->second != n.status) problems.push_back("label with two statuses: " + n.display());
    }

    std::map<NodeId, std::size_t> goalCount;
    for (const auto& [s, d] : graph.edges()) {
        std::string e = name(s) + " -> " + name(d);
        if (s.kind == NodeKind::Tuple) {
            if (d.kind != NodeKind::Rule) problems.push_back("tuple node must point to a rule node: " + e);
            else if (s.status != d.status) problems.push_back("tuple and rule status differ: " + e);
        } else if (s.kind == NodeKind::Rule) {
            if (d.kind != NodeKind::Goal || d.label != s.label)
                problems.push_back("rule node must point to its own goal nodes: " + e);
            else if (s.status != d.status) problems.push_back("rule and goal status differ: " + e);
            ++goalCount[s];
        } else {
            if (d.kind != NodeKind::Tuple) {
                problems.push_back("goal node must point to a tuple node: " + e);
                continue;
            }
            const Rule* r = program.findRule(s.label);
            if (!r || s.position == 0 || s.position > r->body.size()) {
                problems.push_back("goal node of unknown rule: " + e);
                continue;
            }
            bool negated = r->body[s.position - 1].negated;
            if ((s.status == d.status) == negated) problems.push_back("goal polarity law violated: " + e);
        }
    }
    for (const auto& n : graph.nodes()) {
        if (n.kind != NodeKind::Rule) continue;
        const Rule* r = program.findRule(n.label);
        if (!r) continue;
        std::size_t k = goalCount.count(n) ? goalCount[n] : 0;
        if (n.status == Status::T && k != r->body.size())
            problems.push_back("successful rule node without all goals: " + name(n));
        if (n.status == Status::F && k == 0) problems.push_back("failed rule node without failed goals: " + name(n));
    }
    return problems;
}

}  // namespace whyprov
