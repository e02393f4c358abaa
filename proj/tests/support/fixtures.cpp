#include "fixtures.h"

#include "whyprov/parser.h"

namespace fixtures {

using namespace whyprov;

const char* const kTrainProgram =
        ".decl Train(fromCity, toCity).\n"
        "Q(X,Y) :- Train(X,Z), Train(Z,Y), not Train(X,Y).\n";

Program trainProgram() {
    return parseProgram(kTrainProgram).program;
}

Instance trainInstance() {
    Instance inst;
    inst.declare("Train", {"fromCity", "toCity"});
    for (auto [a, b] : {std::pair{"n", "w"}, {"n", "c"}, {"c", "s"}, {"s", "c"}, {"w", "s"}}) inst.addFact("Train", {a, b});
    return inst;
}

DomainConfig groupedTrain() {
    return parseDomainConfig("group = Train.fromCity, Train.toCity\n");
}

const char* const kThreeHopProgram =
        ".decl hop(src, dst).\n"
        "r1: 3Hop(X,Y) :- hop(X,Z1), hop(Z1,Z2), hop(Z2,Y).\n";

Program threeHopProgram() {
    return parseProgram(kThreeHopProgram).program;
}

Instance threeHopInstance() {
    Instance inst;
    inst.declare("hop", {"src", "dst"});
    for (auto [a, b] : {std::pair{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "c"}}) inst.addFact("hop", {a, b});
    return inst;
}

ProvenanceQuestion question(const std::string& text, const Program& program) {
    return parseQuestion(text, program);
}

}  // namespace fixtures
