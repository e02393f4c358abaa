#include <doctest.h>

#include "fixtures.h"

#include "whyprov/errors.h"
#include "whyprov/evaluator.h"
#include "whyprov/parser.h"
#include "whyprov/provgraph.h"

using namespace whyprov;

namespace {

struct Train {
    Program program = fixtures::trainProgram();
    Instance instance = fixtures::trainInstance();
    DomainAssignment grouped = DomainAssignment::build(program, instance, fixtures::groupedTrain());
    ProvGraph full = directMethod(program, instance, grouped);
};

std::size_t ruleNodesFor(const ProvGraph& g, const std::vector<std::string>& head, Status s) {
    std::size_t n = 0;
    for (const auto& v : g.nodes())
        if (v.kind == NodeKind::Rule && v.status == s && std::equal(head.begin(), head.end(), v.args.begin())) ++n;
    return n;
}

}  // namespace

TEST_CASE("node ids round-trip through their encoding") {
    std::vector<NodeId> ids = {NodeId::tuple("Train", Status::F, {"n", "s"}),
                               NodeId::rule("r1", Status::T, {"n", "s", "w"}),
                               NodeId::goal("r1", 3, Status::T, {"n", "s"}),
                               NodeId::tuple("R", Status::T, {"a|b", "x:y", ""}),
                               NodeId::tuple("Z", Status::T, {})};
    for (const auto& id : ids) {
        auto back = NodeId::decode(id.encode());
        REQUIRE(back.has_value());
        CHECK(*back == id);
    }
    CHECK(ids[0].encode() != NodeId::tuple("Train", Status::T, {"n", "s"}).encode());
    CHECK(NodeId::tuple("R", Status::T, {"a,b"}).encode() != NodeId::tuple("R", Status::T, {"a", "b"}).encode());
    CHECK(ids[1].display() == "r1(n,s,w)");
    CHECK(ids[2].display() == "g1^3(n,s)");
    CHECK_FALSE(NodeId::decode("garbage").has_value());
}

TEST_CASE("full graph of the running example") {
    Train t;
    CHECK(checkInvariants(t.full, t.program).empty());
    CHECK(ruleNodesFor(t.full, {"n", "s"}, Status::T) == 2);
    CHECK(ruleNodesFor(t.full, {"s", "n"}, Status::F) == 4);
    // 16 tuple nodes per predicate over the grouped domain
    CHECK(t.full.count(NodeKind::Tuple) == 32);
    CHECK(t.full.count(NodeKind::Tuple, Status::T) == 9);
}

TEST_CASE("status law: tuple node is T iff derived") {
    Train t;
    Instance ev = evaluate(t.program, t.instance);
    for (const auto& n : t.full.nodes())
        if (n.kind == NodeKind::Tuple) CHECK((n.status == Status::T) == ev.contains(n.label, n.args));
}

TEST_CASE("WHY Q(n,s) explanation") {
    Train t;
    auto q = fixtures::question("WHY Q(n,s)", t.program);
    ProvGraph e = explanation(t.full, q);
    CHECK(e.hasNode(NodeId::rule("r1", Status::T, {"n", "s", "w"})));
    CHECK(e.hasNode(NodeId::rule("r1", Status::T, {"n", "s", "c"})));
    CHECK(e.count(NodeKind::Rule) == 2);
    CHECK(e.count(NodeKind::Goal) == 5);
    std::set<NodeId> tuples;
    for (const auto& n : e.nodes())
        if (n.kind == NodeKind::Tuple) tuples.insert(n);
    CHECK(tuples == std::set<NodeId>{NodeId::tuple("Q", Status::T, {"n", "s"}),
                                     NodeId::tuple("Train", Status::T, {"n", "w"}),
                                     NodeId::tuple("Train", Status::T, {"w", "s"}),
                                     NodeId::tuple("Train", Status::T, {"n", "c"}),
                                     NodeId::tuple("Train", Status::T, {"c", "s"}),
                                     NodeId::tuple("Train", Status::F, {"n", "s"})});
    CHECK(e.edges().size() == 13);
    CHECK(e.successors(NodeId::goal("r1", 3, Status::T, {"n", "s"})).size() == 1);
}

TEST_CASE("WHYNOT Q(s,n) explanation") {
    Train t;
    auto q = fixtures::question("WHYNOT Q(s,n)", t.program);
    ProvGraph e = explanation(t.full, q);
    CHECK(e.count(NodeKind::Rule, Status::F) == 4);
    CHECK(e.count(NodeKind::Rule) == 4);
    auto c = e.successors(NodeId::rule("r1", Status::F, {"s", "n", "c"}));
    CHECK(c == std::vector<NodeId>{NodeId::goal("r1", 2, Status::F, {"c", "n"})});
    for (const char* z : {"n", "s", "w"}) {
        auto succ = e.successors(NodeId::rule("r1", Status::F, {"s", "n", z}));
        std::set<NodeId> got(succ.begin(), succ.end());
        CHECK(got == std::set<NodeId>{NodeId::goal("r1", 1, Status::F, {"s", z}), NodeId::goal("r1", 2, Status::F, {z, "n"})});
    }
    CHECK_FALSE(e.hasNode(NodeId::goal("r1", 3, Status::T, {"s", "n"})));
    CHECK_FALSE(e.hasNode(NodeId::goal("r1", 3, Status::F, {"s", "n"})));
}

TEST_CASE("WHY with variables unions the per-answer explanations") {
    Train t;
    ProvGraph all = explanation(t.full, fixtures::question("WHY Q(X,Y)", t.program));
    ProvGraph unionOf;
    for (const char* a : {"Q(w,c)", "Q(n,s)", "Q(s,s)", "Q(c,c)"}) {
        ProvGraph one = explanation(t.full, fixtures::question(std::string("WHY ") + a, t.program));
        for (const auto& n : one.nodes()) unionOf.addNode(n);
        for (const auto& [s, d] : one.edges()) unionOf.addEdge(s, d);
    }
    CHECK(graphEqual(all, unionOf));
}

TEST_CASE("WHY on a missing tuple is empty") {
    Train t;
    ProvGraph e = explanation(t.full, fixtures::question("WHY Q(s,n)", t.program));
    CHECK(e.edges().empty());
    CHECK(e.nodes().empty());
}

TEST_CASE("explanation is idempotent") {
    Train t;
    for (const char* qs : {"WHY Q(n,s)", "WHYNOT Q(s,n)", "WHYNOT Q(X,X)", "WHY Q(X,Y)"}) {
        auto q = fixtures::question(qs, t.program);
        ProvGraph once = explanation(t.full, q);
        CHECK(graphEqual(explanation(once, q), once));
        CHECK(checkInvariants(once, t.program).empty());
    }
}

TEST_CASE("graph diffs") {
    Train t;
    ProvGraph e = explanation(t.full, fixtures::question("WHY Q(n,s)", t.program));
    CHECK(graphEqual(e, e));
    ProvGraph fewer;
    bool skipped = false;
    for (const auto& [s, d] : e.edges()) {
        if (!skipped) {
            skipped = true;
            continue;
        }
        fewer.addEdge(s, d);
    }
    for (const auto& n : e.nodes()) fewer.addNode(n);
    GraphDiff d = graphDiff(e, fewer);
    CHECK_FALSE(d.empty());
    CHECK(d.onlyLeftEdges.size() == 1);
    CHECK(d.onlyRightEdges.empty());
    CHECK(d.onlyLeftNodes.empty());
    CHECK(d.report().find("->") != std::string::npos);
}

TEST_CASE("empty domains give an empty graph") {
    auto p = fixtures::trainProgram();
    Instance empty;
    empty.declare("Train", {"fromCity", "toCity"});
    auto dom = DomainAssignment::build(p, empty);
    ProvGraph g = directMethod(p, empty, dom);
    CHECK(g.nodes().empty());
}

TEST_CASE("three hop rule nodes") {
    auto p = fixtures::threeHopProgram();
    Instance inst = fixtures::threeHopInstance();
    auto dom = DomainAssignment::build(p, inst, parseDomainConfig("group = hop.src, hop.dst\n"));
    ProvGraph g = directMethod(p, inst, dom);
    std::set<std::vector<std::string>> mids;
    for (const auto& n : g.nodes())
        if (n.kind == NodeKind::Rule && n.status == Status::T && n.args[0] == "a" && n.args[1] == "a")
            mids.insert({n.args[2], n.args[3]});
    CHECK(mids == std::set<std::vector<std::string>>{{"a", "a"}, {"a", "b"}, {"b", "a"}});
}

TEST_CASE("size guard") {
    auto p = fixtures::trainProgram();
    Instance inst = fixtures::trainInstance();
    auto dom = DomainAssignment::build(p, inst);
    CHECK(directGroundingSize(p, inst, dom) > 10);
    CHECK_THROWS_AS(directMethod(p, inst, dom, 10), SizeGuardError);
}
