#include <doctest.h>

#include "fixtures.h"
#include "random_programs.h"

#include "whyprov/errors.h"
#include "whyprov/evaluator.h"
#include "whyprov/games.h"
#include "whyprov/parser.h"

using namespace whyprov;

namespace {

std::size_t at(const GameGraph& g, const std::string& display) {
    auto id = g.find(display);
    REQUIRE_MESSAGE(id.has_value(), display);
    return *id;
}

bool hasMove(const GameGraph& g, const std::string& from, const std::string& to) {
    auto f = g.find(from), t = g.find(to);
    if (!f || !t) return false;
    const auto& m = g.moves(*f);
    return std::find(m.begin(), m.end(), *t) != m.end();
}

}  // namespace

TEST_CASE("solving tiny games") {
    GameGraph g;
    auto sink = g.add({GameNodeKind::Fact, "R", 0, {"a"}});
    auto v = solve(g);
    CHECK(v[sink] == GameValue::Lost);

    auto above = g.add({GameNodeKind::Positive, "R", 0, {"a"}});
    g.addMove(above, sink);
    v = solve(g);
    CHECK(v[above] == GameValue::Won);
    CHECK(v[sink] == GameValue::Lost);
    CHECK_FALSE(isBadMove(v, above, sink));

    GameGraph loop;
    auto a = loop.add({GameNodeKind::Positive, "A", 0, {}});
    auto b = loop.add({GameNodeKind::Positive, "B", 0, {}});
    loop.addMove(a, b);
    loop.addMove(b, a);
    v = solve(loop);
    CHECK(v[a] == GameValue::Drawn);
}

TEST_CASE("running example game") {
    auto p = fixtures::trainProgram();
    GameGraph g = buildGame(p, fixtures::trainInstance());
    CHECK(hasMove(g, "Q(n,s)", "r1(n,s,w)"));
    CHECK(hasMove(g, "r1(n,s,w)", "g1^1(n,w)"));
    CHECK(hasMove(g, "g1^1(n,w)", "¬Train(n,w)"));
    CHECK(hasMove(g, "¬Train(n,w)", "Train(n,w)"));
    CHECK(hasMove(g, "Train(n,w)", "r_Train(n,w)"));
    auto v = solve(g);
    CHECK(v[at(g, "Q(n,s)")] == GameValue::Won);
    CHECK(v[at(g, "Q(s,n)")] == GameValue::Lost);
    CHECK(v[at(g, "r1(n,s,w)")] == GameValue::Lost);
    CHECK(v[at(g, "r1(s,n,w)")] == GameValue::Won);

    Instance ev = evaluate(p, fixtures::trainInstance());
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.node(i).kind == GameNodeKind::Positive)
            CHECK((v[i] == GameValue::Won) == ev.contains(g.node(i).label, g.node(i).args));
}

TEST_CASE("empty instance has no fact positions") {
    Instance empty;
    empty.declare("Train", {"fromCity", "toCity"});
    GameGraph g = buildGame(fixtures::trainProgram(), empty);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.node(i).kind != GameNodeKind::Fact);
}

TEST_CASE("game provenance") {
    auto p = fixtures::trainProgram();
    GameGraph g = buildGame(p, fixtures::trainInstance());
    auto v = solve(g);

    auto why = gameProvenance(g, v, fixtures::question("WHY Q(n,s)", p));
    REQUIRE(why.roots.size() == 1);
    for (auto [a, b] : why.moves) CHECK_FALSE(isBadMove(v, a, b));
    std::size_t rules = 0;
    for (auto n : why.nodes)
        if (g.node(n).kind == GameNodeKind::Rule) ++rules;
    CHECK(rules == 2);

    auto missing = gameProvenance(g, v, fixtures::question("WHY Q(s,n)", p));
    CHECK(missing.roots.empty());
    CHECK(missing.moves.empty());

    auto whyNot = gameProvenance(g, v, fixtures::question("WHYNOT Q(s,n)", p));
    REQUIRE(whyNot.roots.size() == 1);
    rules = 0;
    for (auto n : whyNot.nodes)
        if (g.node(n).kind == GameNodeKind::Rule) ++rules;
    CHECK(rules == 4);
}

TEST_CASE("three hop polynomial") {
    auto p = fixtures::threeHopProgram();
    GameGraph g = buildGame(p, fixtures::threeHopInstance());
    auto v = solve(g);
    auto prov = gameProvenance(g, v, fixtures::question("WHY 3Hop(a,a)", p));
    std::size_t rules = 0;
    for (auto n : prov.nodes)
        if (g.node(n).kind == GameNodeKind::Rule) ++rules;
    CHECK(rules == 3);

    auto ann = parseAnnotations("hop(a,a) = p\nhop(a,b) = q\nhop(b,a) = r\nhop(b,c) = s\n");
    Polynomial poly = toPolynomial(g, v, at(g, "3Hop(a,a)"), ann);
    CHECK(poly.toString() == "p^3 + 2*p*q*r");
    CHECK(poly.monomialCount() == 3);
    Polynomial expected = Polynomial::variable("p") * Polynomial::variable("p") * Polynomial::variable("p") +
                          Polynomial::variable("p") * Polynomial::variable("q") * Polynomial::variable("r") +
                          Polynomial::variable("r") * Polynomial::variable("p") * Polynomial::variable("q");
    CHECK(poly == expected);
}

TEST_CASE("small polynomials") {
    Instance inst;
    inst.declare("R", {"a"});
    inst.addFact("R", {"a"});
    std::map<std::string, std::string> ann = {{"R(a)", "x"}};

    auto one = parseProgram(".decl R(a).\nQ(X) :- R(X).\n").program;
    GameGraph g1 = buildGame(one, inst);
    CHECK(toPolynomial(g1, solve(g1), at(g1, "Q(a)"), ann).toString() == "x");

    auto two = parseProgram(".decl R(a).\nQ(X) :- R(X), R(X).\n").program;
    GameGraph g2 = buildGame(two, inst);
    CHECK(toPolynomial(g2, solve(g2), at(g2, "Q(a)"), ann).toString() == "x^2");
}

TEST_CASE("polynomial algebra") {
    auto x = Polynomial::variable("x"), y = Polynomial::variable("y");
    CHECK((x + y) * (x + y) == x * x + Polynomial::one() * x * y + y * x + y * y);
    CHECK(((x + y) * (x + y)).toString() == "x^2 + 2*x*y + y^2");
    CHECK(Polynomial::zero().toString() == "0");
    CHECK(Polynomial::one().toString() == "1");
    CHECK((x * Polynomial::zero()).terms().empty());
    CHECK(((x + x) * y).monomialCount() == 2);
}

TEST_CASE("unannotated leaves default to their tuple text") {
    auto p = fixtures::threeHopProgram();
    GameGraph g = buildGame(p, fixtures::threeHopInstance());
    auto v = solve(g);
    CHECK(toPolynomial(g, v, at(g, "3Hop(a,a)")).monomialCount() == 3);
}

TEST_CASE("annotation file syntax") {
    CHECK_THROWS(parseAnnotations("hop(a,a) p\n"));
    auto a = parseAnnotations("% comment\nR('x y') = v\n");
    CHECK(a.at("R('x y')") == "v");
}

TEST_CASE("game size guard") {
    CHECK_THROWS_AS(buildGame(fixtures::trainProgram(), fixtures::trainInstance(), 10), SizeGuardError);
}

TEST_CASE("games agree with evaluation on random programs") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        auto c = randprog::randomCase(rng);
        CAPTURE(c.text);
        auto problems = randprog::checkGameAgreement(c);
        CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
    }
}

TEST_CASE("monomial counts equal derivation tree counts on random positive programs") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 20; ++i) {
        auto c = randprog::randomCase(rng, true);
        CAPTURE(c.text);
        auto problems = randprog::checkMonomialCounts(c);
        CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
    }
}
