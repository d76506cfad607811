#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cohup/logic/term.hpp"
#include "cohup/store/relation.hpp"

namespace cohup {

using Substitution = std::map<std::string, Constant>;

/// Extensional relations keyed by name/arity, with set semantics.
class FactBase {
public:
    FactBase() = default;
    explicit FactBase(const std::vector<Atom>& facts);

    bool insert(const PredicateKey& key, Tuple tuple);
    bool insert(const Atom& fact);
    bool erase(const PredicateKey& key, const Tuple& tuple);
    bool contains(const PredicateKey& key, const Tuple& tuple) const;

    /// nullptr when the predicate has never been populated.
    const Relation* find(const PredicateKey& key) const;
    /// Creates an empty relation on first access.
    Relation& relation(const PredicateKey& key);

    std::vector<PredicateKey> predicates() const;
    std::size_t size() const;
    std::size_t size(const PredicateKey& key) const;
    const std::map<PredicateKey, Relation>& relations() const noexcept { return relations_; }

    /// All facts in predicate then tuple order.
    std::vector<Atom> atoms() const;

    /// Empty relations compare equal to absent ones.
    bool operator==(const FactBase& other) const;

private:
    std::map<PredicateKey, Relation> relations_;
};

/// Immutable, shareable view of a FactBase at one point in time.
class Snapshot {
public:
    Snapshot() : base_(std::make_shared<const FactBase>()) {}
    explicit Snapshot(FactBase base) : base_(std::make_shared<const FactBase>(std::move(base))) {}

    const FactBase& operator*() const noexcept { return *base_; }
    const FactBase* operator->() const noexcept { return base_.get(); }
    const FactBase& get() const noexcept { return *base_; }

private:
    std::shared_ptr<const FactBase> base_;
};

/// Substitutions θ such that pattern·θ is a stored fact, in tuple order.
/// Unknown predicates yield no substitutions.
std::vector<Substitution> query(const FactBase& base, const Atom& pattern);
inline std::vector<Substitution> query(const Snapshot& snap, const Atom& pattern) { return query(*snap, pattern); }

/// Matching tuples of one relation; constants in the pattern select, repeated
/// variables must agree.
std::vector<Tuple> match(const Relation& relation, const Atom& pattern);

} // namespace cohup
