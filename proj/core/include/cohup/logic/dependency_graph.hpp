#pragma once

#include <map>
#include <set>
#include <vector>

#include "cohup/logic/term.hpp"

namespace cohup {

struct DependencyEdge {
    PredicateKey from; // rule head
    PredicateKey to;   // body predicate
    bool negative = false;

    auto operator<=>(const DependencyEdge&) const = default;
};

/// Predicate dependency graph of a rule set: an edge from -> to exists iff
/// `to` occurs in the body of a rule for `from`. Built-ins are not nodes.
class DependencyGraph {
public:
    DependencyGraph() = default;
    static DependencyGraph build(const RuleSet& rules);

    const std::set<PredicateKey>& nodes() const noexcept { return nodes_; }
    const std::set<DependencyEdge>& edges() const noexcept { return edges_; }
    bool is_intensional(const PredicateKey& p) const { return intensional_.contains(p); }

    /// Predicates reachable from p over one or more edges.
    const std::set<PredicateKey>& dependencies(const PredicateKey& p) const;
    /// Whether the reachable set contains a negative edge from p's side.
    bool depends_negatively(const PredicateKey& from, const PredicateKey& to) const;
    bool depends_on(const PredicateKey& from, const PredicateKey& to) const;
    bool mutually_dependent(const PredicateKey& a, const PredicateKey& b) const;
    bool is_recursive(const PredicateKey& p) const { return depends_on(p, p); }

    /// Strongly connected components of intensional predicates, callees
    /// before callers; ties broken by predicate order.
    std::vector<std::set<PredicateKey>> components() const;

private:
    std::set<PredicateKey> nodes_;
    std::set<PredicateKey> intensional_;
    std::set<DependencyEdge> edges_;
    std::map<PredicateKey, std::set<PredicateKey>> closure_;
    std::map<PredicateKey, std::set<PredicateKey>> negative_closure_;
};

} // namespace cohup
