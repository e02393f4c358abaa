/**
 * @file evaluator.cpp
 *
 * Rules are compiled into a fixed join plan: positive literals in body
 * order, each column either checked against a bound value or binding a new
 * slot. Negated literals run as soon as all their variables are bound.
 */
#include "whyprov/evaluator.h"

#include "whyprov/errors.h"
#include "whyprov/node_id.h"

#include <algorithm>
#include <limits>
#include <map>

namespace whyprov {

namespace {

constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

struct HeadTerm {
    Term::Kind kind;
    std::uint32_t slot = kNoSlot;
    Value value = 0;
    const SkolemTemplate* skolem = nullptr;
    std::vector<HeadTerm> args;
};

struct Column {
    enum class Op : std::uint8_t { Const, Check, Bind } op;
    std::uint32_t slot = kNoSlot;
    Value value = 0;
};

struct BodyStep {
    const Relation* relation;
    std::vector<Column> columns;
    std::uint64_t mask = 0;
};

struct NegCheck {
    const Relation* relation;
    std::vector<Column> columns;  // Const or Check only
};

class CompiledRule {
public:
    CompiledRule(const Rule& rule, Instance& db, Relation& target) : target_(target), db_(db) {
        std::map<std::string, std::uint32_t> slots;
        auto slotOf = [&](const std::string& v) {
            auto [it, fresh] = slots.emplace(v, static_cast<std::uint32_t>(slots.size()));
            return it->second;
        };
        std::vector<bool> bound;
        std::vector<std::size_t> bindStep;  // step after which each slot is bound

        std::vector<const Literal*> negs;
        for (const auto& lit : rule.body) {
            if (lit.negated) {
                negs.push_back(&lit);
                continue;
            }
            BodyStep step{&rel(lit.atom), {}, 0};
            for (std::size_t c = 0; c < lit.atom.args.size(); ++c) {
                const Term& t = lit.atom.args[c];
                if (t.isConstant()) {
                    step.columns.push_back({Column::Op::Const, kNoSlot, db.symbols().intern(t.text())});
                    step.mask |= 1ULL << c;
                } else {
                    std::uint32_t s = slotOf(t.text());
                    if (s >= bound.size()) {
                        bound.resize(s + 1, false);
                        bindStep.resize(s + 1, 0);
                    }
                    if (bound[s]) {
                        step.columns.push_back({Column::Op::Check, s, 0});
                        // bound in an earlier literal: usable as an index key
                        if (bindStep[s] < steps_.size() + 1) step.mask |= 1ULL << c;
                    } else {
                        step.columns.push_back({Column::Op::Bind, s, 0});
                        bound[s] = true;
                        bindStep[s] = steps_.size() + 1;
                    }
                }
            }
            steps_.push_back(std::move(step));
        }
        negAfter_.assign(steps_.size() + 1, {});
        for (const Literal* lit : negs) {
            NegCheck nc{&rel(lit->atom), {}};
            std::size_t after = 0;
            for (const auto& t : lit->atom.args) {
                if (t.isConstant()) {
                    nc.columns.push_back({Column::Op::Const, kNoSlot, db.symbols().intern(t.text())});
                } else {
                    auto it = slots.find(t.text());
                    if (it == slots.end() || it->second >= bound.size() || !bound[it->second])
                        throw SemanticError("unsafe rule " + rule.id + ": variable " + t.text() +
                                            " only occurs negated");
                    nc.columns.push_back({Column::Op::Check, it->second, 0});
                    after = std::max(after, bindStep[it->second]);
                }
            }
            negAfter_[after].push_back(std::move(nc));
        }
        for (const auto& t : rule.head.args) head_.push_back(compileHead(t, slots, rule));
        values_.assign(slots.size(), 0);
        trueValue_ = db.symbols().intern(kTrue);
        falseValue_ = db.symbols().intern(kFalse);
    }

    void run() {
        if (!checkNegations(0)) return;
        join(0);
    }

private:
    Relation& rel(const Atom& a) { return db_.relation(a.predicate, a.arity()); }

    HeadTerm compileHead(const Term& t, const std::map<std::string, std::uint32_t>& slots, const Rule& rule) {
        HeadTerm h;
        h.kind = t.kind();
        switch (t.kind()) {
            case Term::Kind::Constant: h.value = db_.symbols().intern(t.text()); break;
            case Term::Kind::Variable:
            case Term::Kind::NegatedFlag: {
                auto it = slots.find(t.text());
                if (it == slots.end())
                    throw SemanticError("unsafe rule " + rule.id + ": head variable " + t.text() +
                                        " does not occur in the body");
                h.slot = it->second;
                break;
            }
            case Term::Kind::Skolem:
                h.skolem = &t.skolem();
                for (const auto& a : t.skolem().args) h.args.push_back(compileHead(a, slots, rule));
                break;
        }
        return h;
    }

    Value headValue(const HeadTerm& h) {
        switch (h.kind) {
            case Term::Kind::Constant: return h.value;
            case Term::Kind::Variable: return values_[h.slot];
            case Term::Kind::NegatedFlag: return values_[h.slot] == trueValue_ ? falseValue_ : trueValue_;
            case Term::Kind::Skolem: {
                std::vector<Value> argValues;
                argValues.reserve(h.args.size());
                for (const auto& a : h.args) argValues.push_back(headValue(a));
                std::vector<std::string_view> views;
                views.reserve(argValues.size());
                for (Value v : argValues) views.emplace_back(db_.symbols().text(v));
                return db_.symbols().intern(
                        encodeNodeId(h.skolem->kind, h.skolem->label, h.skolem->position, h.skolem->status, views));
            }
        }
        return 0;
    }

    bool checkNegations(std::size_t after) {
        for (const auto& nc : negAfter_[after]) {
            key_.clear();
            for (const auto& col : nc.columns) key_.push_back(col.op == Column::Op::Const ? col.value : values_[col.slot]);
            if (nc.relation->contains(key_)) return false;
        }
        return true;
    }

    void join(std::size_t i) {
        if (i == steps_.size()) {
            Tuple out;
            out.reserve(head_.size());
            for (const auto& h : head_) out.push_back(headValue(h));
            target_.insert(out);
            return;
        }
        const BodyStep& step = steps_[i];
        Tuple key;
        for (std::size_t c = 0; c < step.columns.size(); ++c) {
            if (!(step.mask & (1ULL << c))) continue;
            const Column& col = step.columns[c];
            key.push_back(col.op == Column::Op::Const ? col.value : values_[col.slot]);
        }
        auto visit = [&](const Tuple& row) {
            for (std::size_t c = 0; c < step.columns.size(); ++c) {
                const Column& col = step.columns[c];
                switch (col.op) {
                    case Column::Op::Const:
                        if (row[c] != col.value) return;
                        break;
                    case Column::Op::Check:
                        if (row[c] != values_[col.slot]) return;
                        break;
                    case Column::Op::Bind: values_[col.slot] = row[c]; break;
                }
            }
            if (!checkNegations(i + 1)) return;
            join(i + 1);
        };
        const auto& rows = step.relation->rows();
        if (step.mask == 0) {
            for (std::size_t r = 0; r < rows.size(); ++r) visit(rows[r]);
        } else {
            const auto& hits = step.relation->lookup(step.mask, key);
            for (std::uint32_t r : hits) visit(rows[r]);
        }
    }

    std::vector<BodyStep> steps_;
    std::vector<std::vector<NegCheck>> negAfter_;
    std::vector<HeadTerm> head_;
    std::vector<Value> values_;
    Tuple key_;
    Relation& target_;
    Instance& db_;
    Value trueValue_ = 0;
    Value falseValue_ = 0;
};

}  // namespace

Instance evaluate(const Program& program, const Instance& input) {
    Instance db = input;
    for (const auto& stratum : dependencyStrata(program)) {
        for (const auto& r : program.rules) {
            if (!stratum.count(r.head.predicate)) continue;
            Relation& target = db.relation(r.head.predicate, r.head.arity());
            if (target.arity() != r.head.arity())
                throw SemanticError("arity mismatch: head of rule " + r.id + " for " + r.head.predicate);
            CompiledRule(r, db, target).run();
        }
    }
    return db;
}

const std::string& DerivationRecord::valueOf(const std::string& variable) const {
    auto it = std::find(variables.begin(), variables.end(), variable);
    if (it == variables.end()) throw std::out_of_range("unknown variable " + variable);
    return values[static_cast<std::size_t>(it - variables.begin())];
}

std::vector<std::string> DerivationRecord::instantiate(const Atom& atom) const {
    std::vector<std::string> out;
    out.reserve(atom.args.size());
    for (const auto& t : atom.args) out.push_back(t.isConstant() ? t.text() : valueOf(t.text()));
    return out;
}

namespace {

std::vector<std::set<std::string>> candidateSets(const Program& program, const Instance& evaluated, const Rule& rule,
                                                 const std::vector<std::string>& vars,
                                                 const DomainAssignment* domains) {
    std::vector<std::set<std::string>> out;
    if (domains) {
        for (const auto& v : vars) out.push_back(domains->goalDomain(rule, v, true));
    } else {
        std::set<std::string> all = evaluated.adom();
        auto consts = program.constants();
        all.insert(consts.begin(), consts.end());
        out.assign(vars.size(), all);
    }
    return out;
}

}  // namespace

std::uint64_t groundingSize(const Program& program, const Instance& evaluated, const Rule& rule,
                            const DomainAssignment* domains) {
    auto vars = rule.variables();
    auto sets = candidateSets(program, evaluated, rule, vars, domains);
    std::uint64_t n = 1;
    for (const auto& s : sets) {
        if (s.empty()) return 0;
        if (n > std::numeric_limits<std::uint64_t>::max() / s.size()) return std::numeric_limits<std::uint64_t>::max();
        n *= s.size();
    }
    return n;
}

void forEachDerivation(const Program& program, const Instance& evaluated, const Rule& rule,
                       const std::optional<std::vector<Term>>& headFilter, const DomainAssignment* domains,
                       const std::function<void(const DerivationRecord&)>& callback) {
    auto vars = rule.variables();
    auto sets = candidateSets(program, evaluated, rule, vars, domains);
    // negated goals may narrow a goal domain further; successful derivations are reported anyway
    std::vector<std::optional<std::set<std::string>>> grounded(vars.size());
    if (domains)
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto full = domains->goalDomain(rule, vars[i]);
            if (full.size() < sets[i].size()) grounded[i] = std::move(full);
        }

    if (headFilter) {
        if (headFilter->size() != rule.head.arity())
            throw std::invalid_argument("arity mismatch: head filter for rule " + rule.id);
        for (std::size_t i = 0; i < rule.head.args.size(); ++i) {
            const Term& h = rule.head.args[i];
            const Term& f = (*headFilter)[i];
            if (!f.isConstant()) continue;
            if (h.isConstant()) {
                if (h.text() != f.text()) return;
            } else {
                auto idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), h.text()) - vars.begin());
                bool present = sets[idx].count(f.text()) != 0;
                sets[idx].clear();
                if (present) sets[idx].insert(f.text());
            }
        }
    }

    std::vector<std::vector<std::string>> choices;
    for (const auto& s : sets) {
        if (s.empty()) return;
        choices.emplace_back(s.begin(), s.end());
    }

    const SymbolTable& symbols = evaluated.symbols();
    std::map<std::string, std::size_t> varIndex;
    for (std::size_t i = 0; i < vars.size(); ++i) varIndex[vars[i]] = i;

    DerivationRecord rec;
    rec.ruleId = rule.id;
    rec.variables = vars;
    rec.values.resize(vars.size());
    rec.goalStatus.resize(rule.body.size());

    std::vector<std::size_t> odo(vars.size(), 0);
    Tuple key;
    while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) rec.values[i] = choices[i][odo[i]];
        rec.head = rec.instantiate(rule.head);
        if (!headFilter || matches(rec.head, *headFilter)) {
            rec.success = true;
            for (std::size_t g = 0; g < rule.body.size(); ++g) {
                const Literal& lit = rule.body[g];
                const Relation* rel = evaluated.find(lit.atom.predicate);
                bool present = false;
                if (rel) {
                    key.clear();
                    bool known = true;
                    for (const auto& t : lit.atom.args) {
                        const std::string& v = t.isConstant() ? t.text() : rec.values[varIndex[t.text()]];
                        auto id = symbols.find(v);
                        if (!id) {
                            known = false;
                            break;
                        }
                        key.push_back(*id);
                    }
                    present = known && rel->contains(key);
                }
                bool holds = lit.negated ? !present : present;
                rec.goalStatus[g] = holds;
                rec.success = rec.success && holds;
            }
            rec.grounded = true;
            for (std::size_t i = 0; i < grounded.size() && rec.grounded; ++i)
                if (grounded[i]) rec.grounded = grounded[i]->count(rec.values[i]) != 0;
            if (rec.grounded || rec.success) callback(rec);
        }
        std::size_t k = vars.size();
        while (k > 0) {
            --k;
            if (++odo[k] < choices[k].size()) break;
            odo[k] = 0;
            if (k == 0) return;
        }
        if (vars.empty()) return;
    }
}

std::vector<DerivationRecord> derivations(const Program& program, const Instance& evaluated, const Rule& rule,
                                          const std::optional<std::vector<Term>>& headFilter,
                                          const DomainAssignment* domains) {
    std::vector<DerivationRecord> out;
    forEachDerivation(program, evaluated, rule, headFilter, domains,
                      [&](const DerivationRecord& r) { out.push_back(r); });
    return out;
}

}  // namespace whyprov
