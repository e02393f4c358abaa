/**
 * @file cli.cpp
 */
#include "whyprov/cli.h"

#include "whyprov/bench.h"
#include "whyprov/errors.h"
#include "whyprov/evaluator.h"
#include "whyprov/export.h"
#include "whyprov/games.h"
#include "whyprov/parser.h"
#include "whyprov/provgraph.h"
#include "whyprov/rewriter.h"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace whyprov {

namespace {

struct InputOptions {
    std::string program;
    std::vector<std::string> facts;
    std::vector<std::string> csv;
    bool header = false;
    std::string dom;
    std::string out;
};

struct Loaded {
    Program program;
    Instance instance;
    DomainAssignment domains;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Loaded load(const InputOptions& opts) {
    Loaded l;
    for (const auto& spec : opts.csv) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
            throw IoError("--csv expects PRED=FILE, got '" + spec + "'");
        loadCsv(l.instance, spec.substr(eq + 1), spec.substr(0, eq), opts.header);
    }
    std::vector<Atom> extraFacts;
    for (const auto& f : opts.facts) {
        auto facts = parseFacts(readFile(f));
        extraFacts.insert(extraFacts.end(), facts.begin(), facts.end());
    }
    Catalog catalog = l.instance.schema();
    for (const auto& f : extraFacts)
        if (!catalog.count(f.predicate)) catalog[f.predicate] = defaultAttributes(f.arity());

    ParseResult parsed = parseProgram(readFile(opts.program), catalog);
    l.program = std::move(parsed.program);
    for (const auto& [p, attrs] : l.program.edbSchema) l.instance.declare(p, attrs);
    l.instance.addFacts(parsed.facts);
    l.instance.addFacts(extraFacts);
    DomainConfig cfg = opts.dom.empty() ? DomainConfig{} : loadDomainConfig(opts.dom);
    l.domains = DomainAssignment::build(l.program, l.instance, cfg);
    return l;
}

void addInputOptions(CLI::App* cmd, InputOptions& opts) {
    cmd->add_option("--program", opts.program, "Datalog program file")->required();
    cmd->add_option("--facts", opts.facts, "Additional fact files");
    cmd->add_option("--csv", opts.csv, "Load a relation from CSV: PRED=FILE");
    cmd->add_flag("--header", opts.header, "CSV files start with a header row of attribute names");
    cmd->add_option("--dom", opts.dom, "Domain configuration file");
    cmd->add_option("--out", opts.out, "Write output to FILE instead of stdout");
}

/** Write to --out if given, else to `out`. */
void emit(const InputOptions& opts, std::ostream& out, const std::string& text) {
    if (opts.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw IoError("cannot write " + opts.out);
    f << text;
}

std::vector<std::size_t> parseSizes(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(item, &pos);
            if (pos != item.size() || v <= 0) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw IoError("--sizes expects a comma separated list of positive integers");
        }
    }
    return out;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Why and why-not provenance for Datalog with negation", "whyprov"};
    app.require_subcommand(1);

    InputOptions evalOpts, explainOpts, rewriteOpts, gameOpts;
    std::string explainQuestion, method = "rewrite", format = "edges";
    std::uint64_t guard = kDirectGuard;
    std::string rewriteQuestion, stage = "all";
    std::string gameQuestion, annotationFile;
    bool poly = false;
    std::string sizes = "100,1000,10000", query = "r1";
    std::uint64_t seed = 7;
    std::uint64_t benchGuard = kDirectGuard;
    double budget = 60.0;

    auto* evalCmd = app.add_subcommand("eval", "Evaluate the program and print the answer relation");
    addInputOptions(evalCmd, evalOpts);

    auto* explainCmd = app.add_subcommand("explain", "Explanation of a WHY / WHYNOT question");
    addInputOptions(explainCmd, explainOpts);
    explainCmd->add_option("--question", explainQuestion, "e.g. \"WHY Q(n,s)\"")->required();
    explainCmd->add_option("--method", method, "rewrite or direct")->check(CLI::IsMember({"rewrite", "direct"}));
    explainCmd->add_option("--format", format, "edges, dot or json")->check(CLI::IsMember({"edges", "dot", "json"}));
    explainCmd->add_option("--guard", guard, "Grounding limit for the direct method");

    auto* rewriteCmd = app.add_subcommand("rewrite", "Print the rewritten program");
    addInputOptions(rewriteCmd, rewriteOpts);
    rewriteCmd->add_option("--question", rewriteQuestion, "e.g. \"WHY Q(n,s)\"")->required();
    rewriteCmd->add_option("--stage", stage, "unified, annotated, firing, connected, edges or all")
            ->check(CLI::IsMember({"unified", "annotated", "firing", "connected", "edges", "all"}));

    auto* gameCmd = app.add_subcommand("game", "Solve the provenance game and print the game provenance");
    addInputOptions(gameCmd, gameOpts);
    gameCmd->add_option("--question", gameQuestion, "e.g. \"WHY Q(n,s)\"")->required();
    gameCmd->add_flag("--poly", poly, "Print the provenance polynomial of each root");
    gameCmd->add_option("--annotations", annotationFile, "Tuple annotations, lines `R(a,b) = p`");

    auto* benchCmd = app.add_subcommand("bench", "Time rewrite and direct methods on synthetic co-author data");
    benchCmd->add_option("--sizes", sizes, "Comma separated tuple counts");
    benchCmd->add_option("--query", query, "r1, r2 or r3")->check(CLI::IsMember({"r1", "r2", "r3"}));
    benchCmd->add_option("--seed", seed, "Random seed");
    benchCmd->add_option("--direct-guard", benchGuard, "Grounding limit for the direct method");
    benchCmd->add_option("--budget", budget, "Seconds after which the direct method counts as too slow");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (evalCmd->parsed()) {
            Loaded l = load(evalOpts);
            Instance result = evaluate(l.program, l.instance);
            std::ostringstream os;
            for (const auto& row : result.tuples(l.program.answerPredicate)) {
                os << l.program.answerPredicate << "(";
                for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << renderConstant(row[i]);
                os << ")\n";
            }
            emit(evalOpts, out, os.str());
        } else if (explainCmd->parsed()) {
            Loaded l = load(explainOpts);
            ProvenanceQuestion q = parseQuestion(explainQuestion, l.program);
            ProvGraph g;
            if (method == "rewrite") {
                g = computeExplanation(l.program, l.instance, q, l.domains);
            } else {
                validateQuestion(q, l.domains);
                g = explanation(directMethod(l.program, l.instance, l.domains, guard), q).edgeInduced();
            }
            std::ostringstream os;
            if (format == "edges") writeEdges(g, os);
            else if (format == "dot") writeDot(g, os);
            else writeJson(g, os);
            emit(explainOpts, out, os.str());
        } else if (rewriteCmd->parsed()) {
            Loaded l = load(rewriteOpts);
            ProvenanceQuestion q = parseQuestion(rewriteQuestion, l.program);
            FiringProgram fp = rewrite(l.program, q, l.domains);
            emit(rewriteOpts, out, renderStage(fp, parseStage(stage)));
        } else if (gameCmd->parsed()) {
            Loaded l = load(gameOpts);
            ProvenanceQuestion q = parseQuestion(gameQuestion, l.program);
            std::map<std::string, std::string> annotations;
            if (!annotationFile.empty()) annotations = parseAnnotations(readFile(annotationFile));
            GameGraph game = buildGame(l.program, l.instance);
            auto values = solve(game);
            GameProvenance prov = gameProvenance(game, values, q);
            std::ostringstream os;
            os << "% game: " << game.size() << " positions, " << game.moveCount() << " moves; provenance: "
               << prov.nodes.size() << " positions, " << prov.moves.size() << " moves\n";
            writeGameEdges(game, values, prov, os);
            if (poly) {
                if (q.mode != QuestionMode::Why) throw SemanticError("--poly needs a WHY question");
                for (std::size_t r : prov.roots)
                    os << game.node(r).display() << " = " << toPolynomial(game, values, r, annotations).toString()
                       << "\n";
            }
            emit(gameOpts, out, os.str());
        } else if (benchCmd->parsed()) {
            BenchQuery bq = parseBenchQuery(query);
            out << "query  tuples  rewrite_s  rule_nodes  edges  direct_groundings  direct\n";
            for (std::size_t n : parseSizes(sizes)) {
                BenchResult r = runBenchmark(n, bq, seed, benchGuard, budget);
                out << std::left << std::setw(7) << benchQueryName(bq) << std::setw(8) << r.tuples << std::fixed
                    << std::setprecision(4) << std::setw(11) << r.rewriteSeconds << std::setw(12) << r.ruleNodes
                    << std::setw(7) << r.edges << std::setw(19) << r.directGroundings;
                if (r.directSeconds) out << r.directStatus << " " << *r.directSeconds << "s";
                else out << "exceeds guard";
                out << "\n";
            }
        }
    } catch (const SyntaxError& e) {
        err << "syntax error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int runCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return runCli(args, out, err);
}

}  // namespace whyprov
