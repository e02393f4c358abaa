/**
 * @file storage.h
 *
 * Database instances with set semantics, CSV loading, and the per-attribute
 * domains dom(R.A) used to ground failed derivations.
 */
#pragma once

#include "whyprov/model.h"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace whyprov {

using Value = std::uint32_t;
using Tuple = std::vector<Value>;

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept;
};

/** Interns constants; ids are dense and stable. */
class SymbolTable {
public:
    Value intern(std::string_view text);
    std::optional<Value> find(std::string_view text) const;
    const std::string& text(Value v) const { return names_[v]; }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Value> ids_;
};

/**
 * A set of tuples of fixed arity. Hash indexes keyed by a bitmask of bound
 * columns are built on first use and dropped when the relation changes.
 */
class Relation {
public:
    explicit Relation(std::size_t arity = 0) : arity_(arity) {}

    std::size_t arity() const { return arity_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }
    const std::vector<Tuple>& rows() const { return rows_; }

    /** Returns false if the tuple was already present. */
    bool insert(const Tuple& t);
    bool contains(const Tuple& t) const { return set_.count(t) != 0; }

    /** Row numbers whose columns in `mask` equal `key` (key lists the masked columns in order). */
    const std::vector<std::uint32_t>& lookup(std::uint64_t mask, const Tuple& key) const;

private:
    using Index = std::unordered_map<Tuple, std::vector<std::uint32_t>, TupleHash>;

    std::size_t arity_;
    std::vector<Tuple> rows_;
    std::unordered_set<Tuple, TupleHash> set_;
    mutable std::unordered_map<std::uint64_t, Index> indexes_;
};

class Instance {
public:
    Instance();

    SymbolTable& symbols() { return *symbols_; }
    const SymbolTable& symbols() const { return *symbols_; }

    /** Declare an EDB relation. Redeclaring with a different arity throws SemanticError. */
    void declare(const std::string& predicate, const std::vector<std::string>& attributes);
    const std::map<std::string, std::vector<std::string>>& schema() const { return schema_; }

    /** Add a tuple; declares the relation with default attribute names if needed. */
    bool addFact(const std::string& predicate, const std::vector<std::string>& values);
    void addFacts(const std::vector<Atom>& facts);

    bool contains(const std::string& predicate, const std::vector<std::string>& values) const;

    /** Relation for `predicate`, created empty with `arity` if missing. */
    Relation& relation(const std::string& predicate, std::size_t arity);
    const Relation* find(const std::string& predicate) const;
    const std::map<std::string, Relation>& relations() const { return relations_; }

    /** Rows of a relation decoded to strings, sorted. */
    std::vector<std::vector<std::string>> tuples(const std::string& predicate) const;

    std::set<std::string> adom() const;
    std::set<std::string> adomAttr(const std::string& predicate, const std::string& attribute) const;
    std::set<std::string> adomColumn(const std::string& predicate, std::size_t column) const;

    std::vector<std::string> decode(const Tuple& t) const;
    Tuple encode(const std::vector<std::string>& values);

private:
    std::shared_ptr<SymbolTable> symbols_;
    std::map<std::string, std::vector<std::string>> schema_;
    std::map<std::string, Relation> relations_;
};

/**
 * Load a CSV file into `predicate`. Values are trimmed and duplicates
 * collapse. With `header`, the first row names the attributes. Returns the
 * number of new tuples. Throws IoError on unreadable files or ragged rows.
 */
std::size_t loadCsv(Instance& instance, const std::string& path, const std::string& predicate, bool header);
std::size_t loadCsvText(Instance& instance, const std::string& text, const std::string& predicate, bool header,
                        const std::string& origin = "<csv>");

/** Attribute R.A; for IDB predicates A is A1..An. */
struct AttributeRef {
    std::string predicate;
    std::string attribute;

    std::string toString() const { return predicate + "." + attribute; }
    friend bool operator<(const AttributeRef& a, const AttributeRef& b) {
        return std::tie(a.predicate, a.attribute) < std::tie(b.predicate, b.attribute);
    }
    friend bool operator==(const AttributeRef& a, const AttributeRef& b) {
        return a.predicate == b.predicate && a.attribute == b.attribute;
    }
};

/**
 * Domain configuration, key=value lines:
 *
 *   group = Train.fromCity, Train.toCity
 *   Train.toCity = boston, denver
 *
 * A group makes its attributes share the union of their domains. Any other
 * key adds extra values to one attribute. '#' and '%' start comments.
 */
struct DomainConfig {
    std::vector<std::vector<AttributeRef>> groups;
    std::map<AttributeRef, std::set<std::string>> extras;
};

DomainConfig parseDomainConfig(const std::string& text);
DomainConfig loadDomainConfig(const std::string& path);

/**
 * Resolved dom(R.A) for every attribute of a program. EDB attributes default
 * to adom(R.A); IDB attributes default to the union of all EDB domains and
 * the program constants. Configuration can only add values.
 */
class DomainAssignment {
public:
    DomainAssignment() = default;
    static DomainAssignment build(const Program& program, const Instance& instance, const DomainConfig& config = {});

    const std::set<std::string>& resolve(const AttributeRef& attr) const;
    const std::set<std::string>& resolve(const std::string& predicate, std::size_t column) const;
    AttributeRef attribute(const std::string& predicate, std::size_t column) const;
    const std::vector<std::string>& attributes(const std::string& predicate) const;

    /**
     * Intersection of dom(A) over all body attributes A where `variable`
     * occurs, or only over positive goals with `positiveOnly`. Throws
     * SemanticError if it does not occur in a positive goal.
     */
    std::set<std::string> goalDomain(const Rule& rule, const std::string& variable, bool positiveOnly = false) const;

    /** Unary relation name holding dom(R.A). */
    static std::string relationName(const AttributeRef& attr);
    static std::string relationName(const std::string& predicate, const std::string& attribute);

    /** Add one dom_R_A relation per attribute to `instance`. */
    void materialize(Instance& instance) const;

    const std::map<AttributeRef, std::set<std::string>>& all() const { return domains_; }

private:
    std::map<std::string, std::vector<std::string>> attributes_;
    std::map<AttributeRef, std::set<std::string>> domains_;
};

}  // namespace whyprov
