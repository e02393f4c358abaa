/**
 * @file rewriter.cpp
 */
#include "whyprov/rewriter.h"

#include "whyprov/errors.h"
#include "whyprov/evaluator.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace whyprov {

namespace {

/** Union-find over first-order terms with a ranking for class representatives. */
class Unifier {
public:
    using Rank = std::function<std::size_t(const std::string&)>;

    bool unify(const Term& a, const Term& b) {
        std::string ra = find(key(a)), rb = find(key(b));
        if (ra == rb) return true;
        bool ca = isConst(ra), cb = isConst(rb);
        if (ca && cb) return false;
        if (cb) std::swap(ra, rb);
        parent_[rb] = ra;
        auto& into = members_[ra];
        auto& from = members_[rb];
        into.insert(into.end(), from.begin(), from.end());
        members_.erase(rb);
        return true;
    }

    /** Image of `t`: the class constant, else the best-ranked variable. */
    Term apply(const Term& t, const Rank& rank) {
        if (!t.isVariable()) return t;
        std::string root = find(key(t));
        if (isConst(root)) return Term::constant(root.substr(2));
        const auto& ms = members_[root];
        const std::string* best = nullptr;
        for (const auto& m : ms)
            if (!best || rank(m.substr(2)) < rank(best->substr(2))) best = &m;
        return Term::variable(best->substr(2));
    }

    Atom apply(const Atom& a, const Rank& rank) {
        Atom out{a.predicate, {}};
        for (const auto& t : a.args) out.args.push_back(apply(t, rank));
        return out;
    }

private:
    static std::string key(const Term& t) { return (t.isConstant() ? "c:" : "v:") + t.text(); }
    static bool isConst(const std::string& k) { return k[0] == 'c'; }

    std::string find(const std::string& k) {
        auto it = parent_.find(k);
        if (it == parent_.end()) {
            parent_[k] = k;
            members_[k] = {k};
            return k;
        }
        if (it->second == k) return k;
        std::string r = find(it->second);
        parent_[k] = r;
        return r;
    }

    std::map<std::string, std::string> parent_;
    std::map<std::string, std::vector<std::string>> members_;
};

constexpr std::size_t kWorstRank = std::numeric_limits<std::size_t>::max();

Unifier::Rank rankBy(const std::vector<std::string>& preferred) {
    return [preferred](const std::string& v) {
        auto it = std::find(preferred.begin(), preferred.end(), v);
        return it == preferred.end() ? kWorstRank : static_cast<std::size_t>(it - preferred.begin());
    };
}

/** Rename variables of `a` by appending `suffix`. */
Atom renamed(const Atom& a, const std::string& suffix) {
    Atom out{a.predicate, {}};
    for (const auto& t : a.args) out.args.push_back(t.isVariable() ? Term::variable(t.text() + suffix) : t);
    return out;
}

std::vector<Term> variableTerms(const std::vector<std::string>& names) {
    std::vector<Term> out;
    for (const auto& n : names) out.push_back(Term::variable(n));
    return out;
}

std::vector<std::string> freshFlags(const Rule& rule, std::size_t n) {
    auto vars = rule.variables();
    std::vector<std::string> out;
    for (std::size_t j = 1; j <= n; ++j) {
        std::string name = "V" + std::to_string(j);
        while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
        out.push_back(name);
    }
    return out;
}

Literal pos(Atom a) {
    return {std::move(a), false};
}

Literal neg(Atom a) {
    return {std::move(a), true};
}

Atom withArgs(const std::string& predicate, std::vector<Term> args) {
    return {predicate, std::move(args)};
}

}  // namespace

std::string firingPredicate(const std::string& kind, const std::string& name) {
    return "FIRE_" + kind + "_" + name;
}

namespace {

/** Body of a success firing rule: T firing atoms for positive goals, F firing atoms (or plain negation) for negated ones. */
/** Domain guards needed by a failure rule for `r`, see FiringProgram::constantGuards. */
std::vector<Literal> leakGuards(const FiringProgram& fp, const Rule& r) {
    std::vector<Literal> out;
    std::set<std::pair<std::string, std::string>> seen;
    auto visit = [&](const Atom& a) {
        for (std::size_t c = 0; c < a.arity(); ++c) {
            if (!a.args[c].isVariable()) continue;
            auto it = fp.constantGuards.find({a.predicate, c});
            if (it == fp.constantGuards.end() || !seen.insert({it->second, a.args[c].text()}).second) continue;
            out.push_back(pos(withArgs(it->second, {a.args[c]})));
        }
    };
    visit(r.head);
    for (const auto& lit : r.body) visit(lit.atom);
    return out;
}

std::vector<Literal> successBody(const FiringProgram& fp, const Rule& r, const std::vector<bool>& plain) {
    std::vector<Literal> body;
    for (std::size_t j = 0; j < r.body.size(); ++j) {
        const Literal& lit = r.body[j];
        const std::string& p = lit.atom.predicate;
        if (!lit.negated) {
            body.push_back(pos(withArgs(firingPredicate("T", p), lit.atom.args)));
        } else if (j < plain.size() && plain[j]) {
            body.push_back(neg(fp.idbPredicates.count(p) ? withArgs(firingPredicate("T", p), lit.atom.args) : lit.atom));
        } else {
            body.push_back(pos(withArgs(firingPredicate("F", p), lit.atom.args)));
        }
    }
    return body;
}

}  // namespace

std::string UnifiedRule::display() const {
    std::string bound;
    for (std::size_t i = 0; i < baseVariables.size(); ++i) {
        const Term& t = nodeArgs[i];
        if (t.isVariable() && t.text() == baseVariables[i]) continue;
        if (!bound.empty()) bound += ",";
        bound += baseVariables[i] + "=" + toString(t);
    }
    return bound.empty() ? baseId : baseId + "^(" + bound + ")";
}

UnifiedProgram unifyProgram(const Program& program, const ProvenanceQuestion& question) {
    UnifiedProgram up;
    up.question = question;
    up.rootKey = canonicalKey(question.atom);

    std::deque<std::string> todo;
    auto discover = [&](const Atom& a) {
        std::string k = canonicalKey(a);
        if (up.atoms.emplace(k, a).second) {
            up.atomOrder.push_back(k);
            todo.push_back(k);
        }
        return k;
    };
    discover(question.atom);

    std::map<std::string, std::size_t> replicaIndex;
    while (!todo.empty()) {
        std::string k = todo.front();
        todo.pop_front();
        const Atom atom = renamed(up.atoms.at(k), "'");
        auto& reps = up.replicas[k];
        for (const Rule* base : program.rulesFor(atom.predicate)) {
            if (base->head.arity() != atom.arity())
                throw SemanticError("arity mismatch: " + toString(atom) + " against head of rule " + base->id);
            Unifier u;
            bool ok = true;
            for (std::size_t i = 0; i < atom.arity() && ok; ++i) ok = u.unify(base->head.args[i], atom.args[i]);
            if (!ok) continue;

            UnifiedRule ur;
            ur.baseId = base->id;
            ur.baseVariables = base->variables();
            auto rank = rankBy(ur.baseVariables);
            ur.rule.id = base->id;
            ur.rule.head = u.apply(base->head, rank);
            for (const auto& lit : base->body) ur.rule.body.push_back({u.apply(lit.atom, rank), lit.negated});
            for (const auto& v : ur.baseVariables) ur.nodeArgs.push_back(u.apply(Term::variable(v), rank));
            ur.atomKey = k;

            std::string sig = toString(ur.rule);
            auto [it, fresh] = replicaIndex.emplace(sig, up.rules.size());
            if (std::find(reps.begin(), reps.end(), it->second) == reps.end()) reps.push_back(it->second);
            if (!fresh) continue;
            up.rules.push_back(ur);
            for (const auto& lit : up.rules.back().rule.body) discover(lit.atom);
        }
    }
    return up;
}

AnnotatedProgram annotate(UnifiedProgram unified, const Program& program) {
    AnnotatedProgram ap;
    ap.unified = std::move(unified);
    const UnifiedProgram& up = ap.unified;
    ap.ruleAnnotation.assign(up.rules.size(), std::nullopt);

    auto note = [](auto& slot, Annotation a) { slot = slot ? merge(*slot, a) : a; };
    std::map<std::string, std::optional<Annotation>> atomAnn;
    std::set<std::pair<std::string, Annotation>> done;
    std::deque<std::pair<std::string, Annotation>> todo;

    Annotation root = up.question.mode == QuestionMode::Why ? Annotation::T : Annotation::F;
    todo.emplace_back(up.rootKey, root);
    done.emplace(up.rootKey, root);
    note(atomAnn[up.rootKey], root);

    while (!todo.empty()) {
        auto [key, ann] = todo.front();
        todo.pop_front();
        auto it = up.replicas.find(key);
        if (it == up.replicas.end()) continue;
        for (std::size_t idx : it->second) {
            note(ap.ruleAnnotation[idx], ann);
            for (const auto& lit : up.rules[idx].rule.body) {
                // a successful derivation needs every goal to succeed; a failed one may fail on any goal
                Annotation g = Annotation::FT;
                if (ann == Annotation::T) g = lit.negated ? Annotation::F : Annotation::T;
                std::string gk = canonicalKey(lit.atom);
                note(atomAnn[gk], g);
                if (program.isIdb(lit.atom.predicate) && done.emplace(gk, g).second) todo.emplace_back(gk, g);
            }
        }
    }
    for (const auto& [k, a] : atomAnn)
        if (a) ap.atomAnnotation[k] = *a;
    return ap;
}

FiringProgram makeFiringRules(AnnotatedProgram annotated, const Program& program, const DomainAssignment& domains) {
    FiringProgram fp;
    fp.annotated = std::move(annotated);
    const UnifiedProgram& up = fp.annotated.unified;
    fp.hasFailureRule.assign(up.rules.size(), false);
    fp.plainNegation.assign(up.rules.size(), {});
    fp.idbPredicates = program.idbPredicates();
    auto& out = fp.program.rules;

    auto emit = [&](Atom head, std::vector<Literal> body) {
        Rule r;
        r.id = "fire" + std::to_string(out.size() + 1);
        r.head = std::move(head);
        r.body = std::move(body);
        out.push_back(std::move(r));
    };
    // dom_R_A(X) for every variable position of `a`
    auto guards = [&](const Atom& a) {
        std::vector<Literal> out;
        for (std::size_t c = 0; c < a.arity(); ++c) {
            if (!a.args[c].isVariable()) continue;
            auto attr = domains.attribute(a.predicate, c);
            out.push_back(pos(withArgs(DomainAssignment::relationName(attr), {a.args[c]})));
        }
        return out;
    };
    auto flagRules = [&](const Atom& a) {
        const std::string& p = a.predicate;
        auto args = a.args;
        args.push_back(Term::constant(kTrue));
        emit(withArgs(firingPredicate("FT", p), args), {pos(withArgs(firingPredicate("T", p), a.args))});
        args.back() = Term::constant(kFalse);
        emit(withArgs(firingPredicate("FT", p), args), {pos(withArgs(firingPredicate("F", p), a.args))});
    };
    // a derivation whose bound constants fall outside the goal domains is not domain grounded
    auto grounded = [&](const UnifiedRule& ur) {
        const Rule* base = program.findRule(ur.baseId);
        for (std::size_t i = 0; i < ur.baseVariables.size(); ++i) {
            if (!ur.nodeArgs[i].isConstant()) continue;
            if (!domains.goalDomain(*base, ur.baseVariables[i]).count(ur.nodeArgs[i].text())) return false;
        }
        return true;
    };

    for (const auto& [key, ann] : fp.annotated.atomAnnotation) {
        if (!includes(ann, Status::F)) continue;
        const Atom& a = up.atoms.at(key);
        for (std::size_t c = 0; c < a.arity(); ++c)
            if (a.args[c].isConstant() && !domains.resolve(a.predicate, c).count(a.args[c].text()))
                fp.constantGuards[{a.predicate, c}] = DomainAssignment::relationName(domains.attribute(a.predicate, c));
    }

    std::set<std::size_t> emitted;
    for (const auto& key : up.atomOrder) {
        auto annIt = fp.annotated.atomAnnotation.find(key);
        if (annIt == fp.annotated.atomAnnotation.end()) continue;
        Annotation ann = annIt->second;
        const Atom& a = up.atoms.at(key);
        const std::string& p = a.predicate;

        if (!program.isIdb(p)) {
            if (includes(ann, Status::T)) emit(withArgs(firingPredicate("T", p), a.args), {pos(a)});
            if (includes(ann, Status::F)) {
                auto body = guards(a);
                body.push_back(neg(a));
                emit(withArgs(firingPredicate("F", p), a.args), body);
            }
            if (ann == Annotation::FT) flagRules(a);
            continue;
        }

        if (includes(ann, Status::F)) {
            auto body = guards(a);
            body.push_back(neg(withArgs(firingPredicate("T", p), a.args)));
            emit(withArgs(firingPredicate("F", p), a.args), body);
        }
        if (ann == Annotation::FT) flagRules(a);

        auto reps = up.replicas.find(key);
        if (reps == up.replicas.end()) continue;
        for (std::size_t idx : reps->second) {
            if (!emitted.insert(idx).second) continue;
            const UnifiedRule& ur = up.rules[idx];
            const Rule& r = ur.rule;
            std::string firingT = firingPredicate("T", ur.baseId);
            emit(withArgs(firingPredicate("T", p), r.head.args), {pos(withArgs(firingT, ur.nodeArgs))});

            auto& plain = fp.plainNegation[idx];
            plain.assign(r.body.size(), false);
            for (std::size_t j = 0; j < r.body.size(); ++j) {
                const Literal& lit = r.body[j];
                if (!lit.negated) continue;
                for (std::size_t c = 0; c < lit.atom.arity() && !plain[j]; ++c) {
                    const Term& t = lit.atom.args[c];
                    if (!t.isVariable()) continue;
                    const auto& dom = domains.resolve(lit.atom.predicate, c);
                    for (const auto& v : domains.goalDomain(r, t.text(), true))
                        if (!dom.count(v)) {
                            plain[j] = true;
                            break;
                        }
                }
            }
            emit(withArgs(firingT, ur.nodeArgs), successBody(fp, r, plain));

            auto ruleAnn = fp.annotated.ruleAnnotation[idx];
            if (!ruleAnn || !includes(*ruleAnn, Status::F) || !grounded(ur)) continue;
            auto flags = freshFlags(r, r.body.size());
            auto headArgs = ur.nodeArgs;
            std::vector<Literal> fbody{pos(withArgs(firingPredicate("F", p), r.head.args))};
            for (std::size_t j = 0; j < r.body.size(); ++j) {
                const Literal& lit = r.body[j];
                auto args = lit.atom.args;
                args.push_back(Term::variable(flags[j]));
                fbody.push_back(pos(withArgs(firingPredicate("FT", lit.atom.predicate), args)));
                headArgs.push_back(lit.negated ? Term::negatedFlag(flags[j]) : Term::variable(flags[j]));
            }
            for (auto& g : leakGuards(fp, r)) fbody.push_back(std::move(g));
            emit(withArgs(firingPredicate("F", ur.baseId), headArgs), fbody);
            fp.hasFailureRule[idx] = true;
        }
    }
    fp.firingEnd = out.size();
    fp.connectivityEnd = out.size();
    return fp;
}

namespace {

/** Head terms of a variant: node args, then flags (negated for negated goals). */
std::vector<Term> variantHead(const ConnectedVariant& v) {
    std::vector<Term> out = v.args;
    for (std::size_t j = 0; j < v.flags.size(); ++j)
        out.push_back(v.rule.body[j].negated ? Term::negatedFlag(v.flags[j]) : Term::variable(v.flags[j]));
    return out;
}

/** Terms to match a variant's facts: node args, then one flag per goal. */
std::vector<Term> variantPattern(const ConnectedVariant& v, const std::vector<Term>& flags) {
    std::vector<Term> out = v.args;
    out.insert(out.end(), flags.begin(), flags.end());
    return out;
}

}  // namespace

void addConnectivity(FiringProgram& fp) {
    const UnifiedProgram& up = fp.annotated.unified;
    auto& rules = fp.program.rules;
    rules.resize(fp.firingEnd);
    fp.variants.clear();

    Status rootStatus = up.question.rootStatus();
    auto rootReps = up.replicas.find(up.rootKey);
    if (rootReps != up.replicas.end()) {
        for (std::size_t idx : rootReps->second) {
            if (rootStatus == Status::F && !fp.hasFailureRule[idx]) continue;
            const UnifiedRule& ur = up.rules[idx];
            ConnectedVariant v;
            v.replica = idx;
            v.status = rootStatus;
            v.predicate = firingPredicate(rootStatus == Status::T ? "T" : "F", ur.baseId);
            v.rule = ur.rule;
            v.args = ur.nodeArgs;
            if (rootStatus == Status::F) v.flags = freshFlags(ur.rule, ur.rule.body.size());
            fp.variants.push_back(std::move(v));
        }
    }

    // breadth-first over variants; each connects to the replicas of its IDB goals
    for (std::size_t vi = 0; vi < fp.variants.size(); ++vi) {
        for (std::size_t k = 0; k < up.rules[fp.variants[vi].replica].rule.body.size(); ++k) {
            const ConnectedVariant parent = fp.variants[vi];
            const Literal& baseGoal = up.rules[parent.replica].rule.body[k];
            auto reps = up.replicas.find(canonicalKey(baseGoal.atom));
            if (reps == up.replicas.end()) continue;
            Status childStatus = baseGoal.negated ? flip(parent.status) : parent.status;

            for (std::size_t ci : reps->second) {
                if (childStatus == Status::F && !fp.hasFailureRule[ci]) continue;
                const UnifiedRule& child = up.rules[ci];

                // parent variables are primed so they cannot capture child variables
                Atom parentGoal = renamed(parent.rule.body[k].atom, "'");
                Unifier u;
                bool ok = true;
                for (std::size_t i = 0; i < parentGoal.arity() && ok; ++i)
                    ok = u.unify(child.rule.head.args[i], parentGoal.args[i]);
                if (!ok) continue;
                auto rank = rankBy(child.rule.variables());

                ConnectedVariant v;
                v.replica = ci;
                v.status = childStatus;
                v.parent = vi;
                v.parentGoal = static_cast<unsigned>(k + 1);
                std::string suffix = "__" + up.rules[parent.replica].baseId + "_" + std::to_string(k + 1);
                auto sep = parent.predicate.find("__");
                if (sep != std::string::npos) suffix += parent.predicate.substr(sep);
                v.predicate = firingPredicate(childStatus == Status::T ? "T" : "F", child.baseId) + suffix;
                v.rule.id = child.rule.id;
                v.rule.head = u.apply(child.rule.head, rank);
                for (const auto& lit : child.rule.body) v.rule.body.push_back({u.apply(lit.atom, rank), lit.negated});
                for (const auto& t : child.nodeArgs) v.args.push_back(u.apply(t, rank));
                if (childStatus == Status::F) v.flags = freshFlags(v.rule, v.rule.body.size());

                Rule cr;
                cr.id = "conn" + std::to_string(fp.variants.size());
                cr.head = withArgs(v.predicate, variantHead(v));
                if (childStatus == Status::T) cr.body = successBody(fp, v.rule, fp.plainNegation[ci]);
                for (const auto& lit : v.rule.body) {
                    if (childStatus == Status::T) {
                        continue;
                    } else {
                        auto args = lit.atom.args;
                        args.push_back(Term::variable(v.flags[cr.body.size()]));
                        cr.body.push_back(pos(withArgs(firingPredicate("FT", lit.atom.predicate), args)));
                    }
                }
                if (childStatus == Status::F) {
                    cr.body.insert(cr.body.begin(),
                                   pos(withArgs(firingPredicate("F", v.rule.head.predicate), v.rule.head.args)));
                    for (auto& g : leakGuards(fp, v.rule)) cr.body.push_back(std::move(g));
                }

                // an F parent only connects through a goal that failed
                std::vector<Term> parentTerms;
                for (const auto& t : parent.args)
                    parentTerms.push_back(u.apply(t.isVariable() ? Term::variable(t.text() + "'") : t, rank));
                for (std::size_t j = 0; j < parent.flags.size(); ++j)
                    parentTerms.push_back(j == k ? Term::constant(kFalse) : Term::variable(parent.flags[j] + "'"));
                cr.body.push_back(pos(withArgs(parent.predicate, parentTerms)));

                rules.push_back(std::move(cr));
                fp.variants.push_back(std::move(v));
            }
        }
    }
    fp.connectivityEnd = rules.size();
}

void makeEdgeRules(FiringProgram& fp) {
    auto& rules = fp.program.rules;
    rules.resize(fp.connectivityEnd);
    const UnifiedProgram& up = fp.annotated.unified;

    auto node = [](NodeKind kind, const std::string& label, unsigned position, Status s, std::vector<Term> args) {
        return Term::skolem(SkolemTemplate{kind, label, position, s, std::move(args)});
    };
    auto emit = [&](Term src, Term dst, Literal body) {
        Rule r;
        r.id = "edge" + std::to_string(rules.size() + 1);
        r.head = withArgs(kEdgePredicate, {std::move(src), std::move(dst)});
        r.body = {std::move(body)};
        rules.push_back(std::move(r));
    };

    for (const auto& v : fp.variants) {
        const std::string& ruleId = up.rules[v.replica].baseId;
        const Rule& r = v.rule;
        Term ruleNode = node(NodeKind::Rule, ruleId, 0, v.status, v.args);
        Term headNode = node(NodeKind::Tuple, r.head.predicate, 0, v.status, r.head.args);

        if (v.status == Status::T) {
            Literal body = pos(withArgs(v.predicate, v.args));
            emit(headNode, ruleNode, body);
            for (std::size_t j = 0; j < r.body.size(); ++j) {
                const Literal& lit = r.body[j];
                auto j1 = static_cast<unsigned>(j + 1);
                Term goal = node(NodeKind::Goal, ruleId, j1, Status::T, lit.atom.args);
                emit(ruleNode, goal, body);
                emit(goal, node(NodeKind::Tuple, lit.atom.predicate, 0, lit.negated ? Status::F : Status::T, lit.atom.args),
                     body);
            }
            continue;
        }
        std::vector<Term> anyFlags = variableTerms(v.flags);
        emit(headNode, ruleNode, pos(withArgs(v.predicate, variantPattern(v, anyFlags))));
        for (std::size_t j = 0; j < r.body.size(); ++j) {
            const Literal& lit = r.body[j];
            auto flags = anyFlags;
            flags[j] = Term::constant(kFalse);
            Literal body = pos(withArgs(v.predicate, variantPattern(v, flags)));
            auto j1 = static_cast<unsigned>(j + 1);
            Term goal = node(NodeKind::Goal, ruleId, j1, Status::F, lit.atom.args);
            emit(ruleNode, goal, body);
            emit(goal, node(NodeKind::Tuple, lit.atom.predicate, 0, lit.negated ? Status::T : Status::F, lit.atom.args),
                 body);
        }
    }
}

FiringProgram rewrite(const Program& program, const ProvenanceQuestion& question, const DomainAssignment& domains) {
    validateQuestion(question, domains);
    auto fp = makeFiringRules(annotate(unifyProgram(program, question), program), program, domains);
    addConnectivity(fp);
    makeEdgeRules(fp);
    return fp;
}

void validateQuestion(const ProvenanceQuestion& question, const DomainAssignment& domains) {
    for (std::size_t c = 0; c < question.atom.arity(); ++c) {
        const Term& t = question.atom.args[c];
        if (!t.isConstant()) continue;
        const auto& dom = domains.resolve(question.atom.predicate, c);
        if (!dom.count(t.text()))
            throw SemanticError("question constant " + renderConstant(t.text()) + " is not in dom(" +
                                domains.attribute(question.atom.predicate, c).toString() + ")");
    }
}

ProvGraph evaluateRewrite(const FiringProgram& firing, const Instance& instance, const DomainAssignment& domains) {
    Instance db = instance;
    domains.materialize(db);
    Instance result = evaluate(firing.program, db);
    ProvGraph g;
    const Relation* edges = result.find(kEdgePredicate);
    if (!edges) return g;
    for (const auto& row : edges->rows()) {
        auto src = NodeId::decode(result.symbols().text(row[0]));
        auto dst = NodeId::decode(result.symbols().text(row[1]));
        if (!src || !dst) throw Error("malformed node id in edge relation");
        g.addEdge(*src, *dst);
    }
    return g;
}

ProvGraph computeExplanation(const Program& program, const Instance& instance, const ProvenanceQuestion& question,
                             const DomainAssignment& domains) {
    return evaluateRewrite(rewrite(program, question, domains), instance, domains);
}

Stage parseStage(const std::string& name) {
    if (name == "unified") return Stage::Unified;
    if (name == "annotated") return Stage::Annotated;
    if (name == "firing") return Stage::Firing;
    if (name == "connected") return Stage::Connected;
    if (name == "edges") return Stage::Edges;
    if (name == "all") return Stage::All;
    throw SemanticError("unknown stage " + name);
}

std::string renderStage(const FiringProgram& fp, Stage stage) {
    std::ostringstream os;
    const UnifiedProgram& up = fp.annotated.unified;
    auto rulesIn = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i < to; ++i) os << toString(fp.program.rules[i], false) << "\n";
    };
    switch (stage) {
        case Stage::Unified:
            for (const auto& ur : up.rules) os << ur.display() << ": " << toString(ur.rule, false) << "\n";
            break;
        case Stage::Annotated:
            for (const auto& key : up.atomOrder) {
                auto it = fp.annotated.atomAnnotation.find(key);
                if (it != fp.annotated.atomAnnotation.end())
                    os << "% " << toString(up.atoms.at(key)) << " : " << toString(it->second) << "\n";
            }
            for (std::size_t i = 0; i < up.rules.size(); ++i) {
                const auto& ann = fp.annotated.ruleAnnotation[i];
                os << up.rules[i].display() << " [" << (ann ? toString(*ann) : "-") << "]: "
                   << toString(up.rules[i].rule, false) << "\n";
            }
            break;
        case Stage::Firing: rulesIn(0, fp.firingEnd); break;
        case Stage::Connected: rulesIn(fp.firingEnd, fp.connectivityEnd); break;
        case Stage::Edges: rulesIn(fp.connectivityEnd, fp.program.rules.size()); break;
        case Stage::All: rulesIn(0, fp.program.rules.size()); break;
    }
    return os.str();
}

}  // namespace whyprov
