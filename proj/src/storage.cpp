/**
 * @file storage.cpp
 */
#include "whyprov/storage.h"

#include "whyprov/errors.h"
#include "whyprov/parser.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace whyprov {

std::size_t TupleHash::operator()(const Tuple& t) const noexcept {
    std::size_t h = t.size();
    for (Value v : t) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

Value SymbolTable::intern(std::string_view text) {
    auto it = ids_.find(std::string(text));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<Value>(names_.size());
    names_.emplace_back(text);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<Value> SymbolTable::find(std::string_view text) const {
    auto it = ids_.find(std::string(text));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

bool Relation::insert(const Tuple& t) {
    if (t.size() != arity_)
        throw SemanticError("arity mismatch: tuple of arity " + std::to_string(t.size()) + " for relation of arity " +
                            std::to_string(arity_));
    if (!set_.insert(t).second) return false;
    rows_.push_back(t);
    indexes_.clear();
    return true;
}

const std::vector<std::uint32_t>& Relation::lookup(std::uint64_t mask, const Tuple& key) const {
    static const std::vector<std::uint32_t> none;
    auto it = indexes_.find(mask);
    if (it == indexes_.end()) {
        Index idx;
        Tuple k;
        for (std::uint32_t row = 0; row < rows_.size(); ++row) {
            k.clear();
            for (std::size_t c = 0; c < arity_; ++c)
                if (mask & (1ULL << c)) k.push_back(rows_[row][c]);
            idx[k].push_back(row);
        }
        it = indexes_.emplace(mask, std::move(idx)).first;
    }
    auto hit = it->second.find(key);
    return hit == it->second.end() ? none : hit->second;
}

Instance::Instance() : symbols_(std::make_shared<SymbolTable>()) {}

void Instance::declare(const std::string& predicate, const std::vector<std::string>& attributes) {
    auto it = schema_.find(predicate);
    if (it != schema_.end() && it->second.size() != attributes.size())
        throw SemanticError("arity mismatch: " + predicate + " declared with " + std::to_string(attributes.size()) +
                            " attributes, already has " + std::to_string(it->second.size()));
    schema_[predicate] = attributes;
    relation(predicate, attributes.size());
}

bool Instance::addFact(const std::string& predicate, const std::vector<std::string>& values) {
    if (!schema_.count(predicate)) declare(predicate, defaultAttributes(values.size()));
    Relation& rel = relation(predicate, values.size());
    if (rel.arity() != values.size())
        throw SemanticError("arity mismatch: " + std::to_string(values.size()) + " values for " + predicate + "/" +
                            std::to_string(rel.arity()));
    return rel.insert(encode(values));
}

void Instance::addFacts(const std::vector<Atom>& facts) {
    for (const auto& f : facts) {
        std::vector<std::string> values;
        for (const auto& t : f.args) values.push_back(t.text());
        addFact(f.predicate, values);
    }
}

bool Instance::contains(const std::string& predicate, const std::vector<std::string>& values) const {
    const Relation* rel = find(predicate);
    if (!rel || rel->arity() != values.size()) return false;
    Tuple t;
    for (const auto& v : values) {
        auto id = symbols_->find(v);
        if (!id) return false;
        t.push_back(*id);
    }
    return rel->contains(t);
}

Relation& Instance::relation(const std::string& predicate, std::size_t arity) {
    auto it = relations_.find(predicate);
    if (it == relations_.end()) it = relations_.emplace(predicate, Relation(arity)).first;
    return it->second;
}

const Relation* Instance::find(const std::string& predicate) const {
    auto it = relations_.find(predicate);
    return it == relations_.end() ? nullptr : &it->second;
}

std::vector<std::vector<std::string>> Instance::tuples(const std::string& predicate) const {
    std::vector<std::vector<std::string>> out;
    if (const Relation* rel = find(predicate))
        for (const auto& row : rel->rows()) out.push_back(decode(row));
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::string> Instance::adom() const {
    std::set<Value> ids;
    for (const auto& [p, rel] : relations_)
        for (const auto& row : rel.rows()) ids.insert(row.begin(), row.end());
    std::set<std::string> out;
    for (Value v : ids) out.insert(symbols_->text(v));
    return out;
}

std::set<std::string> Instance::adomColumn(const std::string& predicate, std::size_t column) const {
    std::set<std::string> out;
    if (const Relation* rel = find(predicate))
        for (const auto& row : rel->rows()) out.insert(symbols_->text(row.at(column)));
    return out;
}

std::set<std::string> Instance::adomAttr(const std::string& predicate, const std::string& attribute) const {
    auto it = schema_.find(predicate);
    if (it == schema_.end()) throw SemanticError("unknown relation " + predicate);
    auto pos = std::find(it->second.begin(), it->second.end(), attribute);
    if (pos == it->second.end()) throw SemanticError("unknown attribute " + predicate + "." + attribute);
    return adomColumn(predicate, static_cast<std::size_t>(pos - it->second.begin()));
}

std::vector<std::string> Instance::decode(const Tuple& t) const {
    std::vector<std::string> out;
    out.reserve(t.size());
    for (Value v : t) out.push_back(symbols_->text(v));
    return out;
}

Tuple Instance::encode(const std::vector<std::string>& values) {
    Tuple t;
    t.reserve(values.size());
    for (const auto& v : values) t.push_back(symbols_->intern(v));
    return t;
}

namespace {

std::string trim(const std::string& s) {
    auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return b < e ? std::string(b, e) : std::string();
}

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"' && trim(cur).empty()) {
            cur.clear();
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::size_t loadCsvText(Instance& instance, const std::string& text, const std::string& predicate, bool header,
                        const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineNo = 0, added = 0;
    std::optional<std::size_t> width;
    bool sawHeader = !header;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = splitCsvLine(line);
        if (width && fields.size() != *width)
            throw IoError(origin + ":" + std::to_string(lineNo) + ": ragged row with " +
                          std::to_string(fields.size()) + " fields, expected " + std::to_string(*width));
        width = fields.size();
        if (!sawHeader) {
            sawHeader = true;
            instance.declare(predicate, fields);
            continue;
        }
        if (instance.addFact(predicate, fields)) ++added;
    }
    return added;
}

std::size_t loadCsv(Instance& instance, const std::string& path, const std::string& predicate, bool header) {
    return loadCsvText(instance, readFile(path), predicate, header, path);
}

namespace {

AttributeRef parseAttributeRef(const std::string& spec, std::size_t lineNo) {
    auto dot = spec.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == spec.size())
        throw IoError("domain config line " + std::to_string(lineNo) + ": expected Relation.attribute, got '" +
                      spec + "'");
    return {spec.substr(0, dot), spec.substr(dot + 1)};
}

std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    for (auto& f : splitCsvLine(s)) {
        std::string v = f;
        if (v.size() >= 2 && v.front() == '\'' && v.back() == '\'') v = v.substr(1, v.size() - 2);
        if (!v.empty()) out.push_back(v);
    }
    return out;
}

}  // namespace

DomainConfig parseDomainConfig(const std::string& text) {
    DomainConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find_first_of("#%");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("domain config line " + std::to_string(lineNo) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
        if (key == "group") {
            std::vector<AttributeRef> group;
            for (const auto& a : splitList(value)) group.push_back(parseAttributeRef(a, lineNo));
            cfg.groups.push_back(std::move(group));
        } else {
            auto& extra = cfg.extras[parseAttributeRef(key, lineNo)];
            for (const auto& v : splitList(value)) extra.insert(v);
        }
    }
    return cfg;
}

DomainConfig loadDomainConfig(const std::string& path) {
    return parseDomainConfig(readFile(path));
}

DomainAssignment DomainAssignment::build(const Program& program, const Instance& instance, const DomainConfig& config) {
    DomainAssignment d;
    std::set<std::string> edb;
    for (const auto& [p, attrs] : instance.schema()) {
        d.attributes_[p] = attrs;
        edb.insert(p);
    }
    for (const auto& [p, attrs] : program.edbSchema) {
        d.attributes_[p] = attrs;
        edb.insert(p);
    }
    std::set<std::string> idb = program.idbPredicates();
    for (const auto& p : idb) d.attributes_[p] = defaultAttributes(*program.arity(p));

    auto known = [&](const AttributeRef& a) {
        auto it = d.attributes_.find(a.predicate);
        if (it == d.attributes_.end() ||
            std::find(it->second.begin(), it->second.end(), a.attribute) == it->second.end())
            throw SemanticError("unknown attribute " + a.toString() + " in domain config");
    };
    for (const auto& g : config.groups)
        for (const auto& a : g) known(a);
    for (const auto& [a, vals] : config.extras) known(a);

    auto extrasOf = [&](const AttributeRef& a) -> std::set<std::string> {
        auto it = config.extras.find(a);
        return it == config.extras.end() ? std::set<std::string>{} : it->second;
    };

    std::map<AttributeRef, std::set<std::string>> base;
    std::set<std::string> universe = program.constants();
    for (const auto& p : edb) {
        const auto& attrs = d.attributes_[p];
        for (std::size_t c = 0; c < attrs.size(); ++c) {
            AttributeRef a{p, attrs[c]};
            auto vals = instance.find(p) ? instance.adomColumn(p, c) : std::set<std::string>{};
            auto extra = extrasOf(a);
            vals.insert(extra.begin(), extra.end());
            universe.insert(vals.begin(), vals.end());
            base[a] = std::move(vals);
        }
    }
    for (const auto& p : idb) {
        for (const auto& attr : d.attributes_[p]) {
            AttributeRef a{p, attr};
            auto vals = universe;
            auto extra = extrasOf(a);
            vals.insert(extra.begin(), extra.end());
            base[a] = std::move(vals);
        }
    }

    // groups share the union of their members' domains
    std::map<AttributeRef, AttributeRef> parent;
    std::function<AttributeRef(const AttributeRef&)> root = [&](const AttributeRef& a) -> AttributeRef {
        auto it = parent.find(a);
        if (it == parent.end() || it->second == a) return a;
        AttributeRef r = root(it->second);
        parent[a] = r;
        return r;
    };
    for (const auto& g : config.groups)
        for (std::size_t i = 1; i < g.size(); ++i) {
            AttributeRef ra = root(g[0]), rb = root(g[i]);
            if (!(ra == rb)) parent[rb] = ra;
        }
    std::map<AttributeRef, std::set<std::string>> merged;
    for (const auto& [a, vals] : base) merged[root(a)].insert(vals.begin(), vals.end());
    for (const auto& [a, vals] : base) d.domains_[a] = merged[root(a)];
    return d;
}

const std::set<std::string>& DomainAssignment::resolve(const AttributeRef& attr) const {
    auto it = domains_.find(attr);
    if (it == domains_.end()) throw SemanticError("no domain for attribute " + attr.toString());
    return it->second;
}

const std::vector<std::string>& DomainAssignment::attributes(const std::string& predicate) const {
    auto it = attributes_.find(predicate);
    if (it == attributes_.end()) throw SemanticError("no domain for relation " + predicate);
    return it->second;
}

AttributeRef DomainAssignment::attribute(const std::string& predicate, std::size_t column) const {
    const auto& attrs = attributes(predicate);
    if (column >= attrs.size())
        throw SemanticError("arity mismatch: column " + std::to_string(column + 1) + " of " + predicate);
    return {predicate, attrs[column]};
}

const std::set<std::string>& DomainAssignment::resolve(const std::string& predicate, std::size_t column) const {
    return resolve(attribute(predicate, column));
}

std::set<std::string> DomainAssignment::goalDomain(const Rule& rule, const std::string& variable,
                                                   bool positiveOnly) const {
    std::optional<std::set<std::string>> acc;
    bool positive = false;
    for (const auto& lit : rule.body) {
        if (positiveOnly && lit.negated) continue;
        for (std::size_t c = 0; c < lit.atom.args.size(); ++c) {
            const Term& t = lit.atom.args[c];
            if (!t.isVariable() || t.text() != variable) continue;
            positive = positive || !lit.negated;
            const auto& dom = resolve(lit.atom.predicate, c);
            if (!acc) {
                acc = dom;
            } else {
                std::set<std::string> next;
                std::set_intersection(acc->begin(), acc->end(), dom.begin(), dom.end(),
                                      std::inserter(next, next.begin()));
                acc = std::move(next);
            }
        }
    }
    if (!positive)
        throw SemanticError("variable " + variable + " of rule " + rule.id + " is not bound by a positive goal");
    return *acc;
}

std::string DomainAssignment::relationName(const std::string& predicate, const std::string& attribute) {
    return "dom_" + predicate + "_" + attribute;
}

std::string DomainAssignment::relationName(const AttributeRef& attr) {
    return relationName(attr.predicate, attr.attribute);
}

void DomainAssignment::materialize(Instance& instance) const {
    for (const auto& [a, vals] : domains_) {
        Relation& rel = instance.relation(relationName(a), 1);
        for (const auto& v : vals) rel.insert({instance.symbols().intern(v)});
    }
}

}  // namespace whyprov
