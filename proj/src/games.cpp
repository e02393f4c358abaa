/**
 * @file games.cpp
 */
#include "whyprov/games.h"

#include "whyprov/errors.h"
#include "whyprov/parser.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace whyprov {

std::string GameNode::display() const {
    std::string out;
    switch (kind) {
        case GameNodeKind::Positive: out = label; break;
        case GameNodeKind::Negative: out = "¬" + label; break;
        case GameNodeKind::Rule: out = label; break;
        case GameNodeKind::Goal: out = goalLabel(label, position); break;
        case GameNodeKind::Fact: out = "r_" + label; break;
    }
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + renderConstant(args[i]);
    return out + ")";
}

std::size_t GameGraph::add(GameNode node) {
    std::string key = node.display();
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    std::size_t id = nodes_.size();
    nodes_.push_back(std::move(node));
    moves_.emplace_back();
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<std::size_t> GameGraph::find(const std::string& display) const {
    auto it = index_.find(display);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void GameGraph::addMove(std::size_t from, std::size_t to) {
    auto& m = moves_[from];
    if (std::find(m.begin(), m.end(), to) == m.end()) m.push_back(to);
}

std::size_t GameGraph::moveCount() const {
    std::size_t n = 0;
    for (const auto& m : moves_) n += m.size();
    return n;
}

namespace {

/** Calls `f` for every tuple over `dom` of the given arity. */
void forEachTuple(const std::vector<std::string>& dom, std::size_t arity,
                  const std::function<void(const std::vector<std::string>&)>& f) {
    if (arity > 0 && dom.empty()) return;
    std::vector<std::size_t> odo(arity, 0);
    std::vector<std::string> row(arity);
    while (true) {
        for (std::size_t i = 0; i < arity; ++i) row[i] = dom[odo[i]];
        f(row);
        std::size_t k = arity;
        while (k > 0) {
            --k;
            if (++odo[k] < dom.size()) break;
            odo[k] = 0;
            if (k == 0) return;
        }
        if (arity == 0) return;
    }
}

std::uint64_t power(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

}  // namespace

GameGraph buildGame(const Program& program, const Instance& instance, std::size_t guard) {
    std::set<std::string> domSet = instance.adom();
    auto consts = program.constants();
    domSet.insert(consts.begin(), consts.end());
    std::vector<std::string> dom(domSet.begin(), domSet.end());

    std::map<std::string, std::size_t> preds;
    for (const auto& r : program.rules) {
        preds[r.head.predicate] = r.head.arity();
        for (const auto& lit : r.body) preds[lit.atom.predicate] = lit.atom.arity();
    }
    std::uint64_t estimate = 0;
    for (const auto& [p, n] : preds) estimate += 3 * power(dom.size(), n);
    for (const auto& r : program.rules) estimate += (1 + r.body.size()) * power(dom.size(), r.variables().size());
    if (estimate > guard)
        throw SizeGuardError("game graph would have about " + std::to_string(estimate) + " nodes, guard is " +
                             std::to_string(guard));

    GameGraph g;
    auto posNode = [&](const std::string& p, const std::vector<std::string>& args) {
        return g.add({GameNodeKind::Positive, p, 0, args});
    };
    for (const auto& [p, n] : preds) {
        bool edb = !program.isIdb(p);
        forEachTuple(dom, n, [&](const std::vector<std::string>& args) {
            std::size_t pn = posNode(p, args);
            std::size_t nn = g.add({GameNodeKind::Negative, p, 0, args});
            g.addMove(nn, pn);
            if (edb && instance.contains(p, args)) g.addMove(pn, g.add({GameNodeKind::Fact, p, 0, args}));
        });
    }
    for (const auto& r : program.rules) {
        auto vars = r.variables();
        forEachTuple(dom, vars.size(), [&](const std::vector<std::string>& values) {
            auto image = [&](const Atom& a) {
                std::vector<std::string> out;
                for (const auto& t : a.args) {
                    if (t.isConstant()) {
                        out.push_back(t.text());
                    } else {
                        auto it = std::find(vars.begin(), vars.end(), t.text());
                        out.push_back(values[static_cast<std::size_t>(it - vars.begin())]);
                    }
                }
                return out;
            };
            std::size_t rn = g.add({GameNodeKind::Rule, r.id, 0, values});
            g.addMove(posNode(r.head.predicate, image(r.head)), rn);
            for (std::size_t j = 0; j < r.body.size(); ++j) {
                const Literal& lit = r.body[j];
                auto args = image(lit.atom);
                std::size_t gn = g.add({GameNodeKind::Goal, r.id, static_cast<unsigned>(j + 1), args});
                g.addMove(rn, gn);
                std::size_t target = lit.negated ? posNode(lit.atom.predicate, args)
                                                 : g.add({GameNodeKind::Negative, lit.atom.predicate, 0, args});
                g.addMove(gn, target);
            }
        });
    }
    return g;
}

std::vector<GameValue> solve(const GameGraph& game) {
    std::size_t n = game.size();
    std::vector<GameValue> value(n, GameValue::Drawn);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> open(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        open[i] = game.moves(i).size();
        for (std::size_t j : game.moves(i)) preds[j].push_back(i);
    }
    std::deque<std::size_t> todo;
    for (std::size_t i = 0; i < n; ++i)
        if (open[i] == 0) {
            value[i] = GameValue::Lost;
            todo.push_back(i);
        }
    while (!todo.empty()) {
        std::size_t v = todo.front();
        todo.pop_front();
        for (std::size_t p : preds[v]) {
            if (value[p] != GameValue::Drawn) continue;
            if (value[v] == GameValue::Lost) {
                value[p] = GameValue::Won;
                todo.push_back(p);
            } else if (--open[p] == 0) {
                value[p] = GameValue::Lost;
                todo.push_back(p);
            }
        }
    }
    return value;
}

bool isBadMove(const std::vector<GameValue>& values, std::size_t from, std::size_t to) {
    return values[from] == GameValue::Won && values[to] == GameValue::Won;
}

GameProvenance gameProvenance(const GameGraph& game, const std::vector<GameValue>& values,
                              const ProvenanceQuestion& question) {
    GameProvenance out;
    GameValue wanted = question.mode == QuestionMode::Why ? GameValue::Won : GameValue::Lost;
    for (std::size_t i = 0; i < game.size(); ++i) {
        const GameNode& n = game.node(i);
        if (n.kind != GameNodeKind::Positive || n.label != question.atom.predicate) continue;
        if (values[i] != wanted || n.args.size() != question.atom.arity()) continue;
        if (matches(n.args, question.atom.args)) out.roots.push_back(i);
    }
    std::vector<bool> seen(game.size(), false);
    std::deque<std::size_t> todo;
    for (std::size_t r : out.roots) {
        seen[r] = true;
        todo.push_back(r);
    }
    while (!todo.empty()) {
        std::size_t v = todo.front();
        todo.pop_front();
        out.nodes.push_back(v);
        for (std::size_t w : game.moves(v)) {
            if (isBadMove(values, v, w)) continue;
            out.moves.emplace_back(v, w);
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
        }
    }
    return out;
}

Polynomial Polynomial::one() {
    Polynomial p;
    p.terms_[{}] = 1;
    return p;
}

Polynomial Polynomial::variable(const std::string& name) {
    Polynomial p;
    p.terms_[{name}] = 1;
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.terms_[m] += c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            std::sort(m.begin(), m.end());
            r.terms_[m] += c1 * c2;
        }
    return r;
}

std::uint64_t Polynomial::monomialCount() const {
    std::uint64_t n = 0;
    for (const auto& [m, c] : terms_) n += c;
    return n;
}

std::string Polynomial::toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::vector<std::string> factors;
        if (c != 1 || m.empty()) factors.push_back(std::to_string(c));
        for (std::size_t i = 0; i < m.size();) {
            std::size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            factors.push_back(j - i > 1 ? m[i] + "^" + std::to_string(j - i) : m[i]);
            i = j;
        }
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

Polynomial toPolynomial(const GameGraph& game, const std::vector<GameValue>& values, std::size_t root,
                        const std::map<std::string, std::string>& annotations) {
    std::map<std::size_t, Polynomial> memo;
    std::function<Polynomial(std::size_t)> visit = [&](std::size_t v) -> Polynomial {
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        const GameNode& n = game.node(v);
        Polynomial result;
        if (n.kind == GameNodeKind::Fact) {
            GameNode tuple{GameNodeKind::Positive, n.label, 0, n.args};
            auto a = annotations.find(tuple.display());
            result = Polynomial::variable(a == annotations.end() ? tuple.display() : a->second);
        } else if (values[v] == GameValue::Won) {
            for (std::size_t w : game.moves(v))
                if (!isBadMove(values, v, w)) result = result + visit(w);
        } else if (values[v] == GameValue::Lost) {
            // lost positions without moves (false atoms under negation) contribute the empty product
            result = Polynomial::one();
            for (std::size_t w : game.moves(v)) result = result * visit(w);
        } else {
            throw SemanticError("drawn position " + n.display() + " has no provenance polynomial");
        }
        memo[v] = result;
        return result;
    };
    return visit(root);
}

std::map<std::string, std::string> parseAnnotations(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find_first_of("#%");
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = line.rfind('=');
        if (eq == std::string::npos)
            throw IoError("annotation line " + std::to_string(lineNo) + ": expected Pred(args) = name");
        auto facts = parseFacts(line.substr(0, eq) + ".");
        std::string name = line.substr(eq + 1);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t\r") + 1);
        if (facts.size() != 1 || name.empty())
            throw IoError("annotation line " + std::to_string(lineNo) + ": expected Pred(args) = name");
        std::vector<std::string> args;
        for (const auto& t : facts[0].args) args.push_back(t.text());
        out[GameNode{GameNodeKind::Positive, facts[0].predicate, 0, args}.display()] = name;
    }
    return out;
}

}  // namespace whyprov
