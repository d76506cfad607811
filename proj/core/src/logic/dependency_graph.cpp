#include "cohup/logic/dependency_graph.hpp"

#include <deque>

namespace cohup {

DependencyGraph DependencyGraph::build(const RuleSet& rules) {
    DependencyGraph g;
    g.nodes_.insert(rules.extensional.begin(), rules.extensional.end());
    for (const auto& rule : rules.rules) {
        const auto head = rule.head.key();
        g.nodes_.insert(head);
        g.intensional_.insert(head);
        for (const auto& lit : rule.body) {
            if (lit.is_builtin()) continue;
            g.nodes_.insert(lit.atom.key());
            g.edges_.insert({head, lit.atom.key(), lit.kind == LiteralKind::Negated});
        }
    }

    std::map<PredicateKey, std::vector<std::pair<PredicateKey, bool>>> adjacency;
    for (const auto& e : g.edges_) adjacency[e.from].emplace_back(e.to, e.negative);

    // Search over (node, crossed-a-negative-edge) states.
    for (const auto& start : g.nodes_) {
        auto& reach = g.closure_[start];
        auto& neg_reach = g.negative_closure_[start];
        std::set<std::pair<PredicateKey, bool>> seen;
        std::deque<std::pair<PredicateKey, bool>> queue;
        for (const auto& [to, negative] : adjacency[start]) {
            if (seen.insert({to, negative}).second) queue.emplace_back(to, negative);
        }
        while (!queue.empty()) {
            auto [node, negative] = queue.front();
            queue.pop_front();
            reach.insert(node);
            if (negative) neg_reach.insert(node);
            for (const auto& [to, edge_negative] : adjacency[node]) {
                std::pair<PredicateKey, bool> state{to, negative || edge_negative};
                if (seen.insert(state).second) queue.push_back(std::move(state));
            }
        }
    }
    return g;
}

const std::set<PredicateKey>& DependencyGraph::dependencies(const PredicateKey& p) const {
    static const std::set<PredicateKey> empty;
    auto it = closure_.find(p);
    return it == closure_.end() ? empty : it->second;
}

bool DependencyGraph::depends_on(const PredicateKey& from, const PredicateKey& to) const {
    return dependencies(from).contains(to);
}

bool DependencyGraph::depends_negatively(const PredicateKey& from, const PredicateKey& to) const {
    auto it = negative_closure_.find(from);
    return it != negative_closure_.end() && it->second.contains(to);
}

bool DependencyGraph::mutually_dependent(const PredicateKey& a, const PredicateKey& b) const {
    return depends_on(a, b) && depends_on(b, a);
}

std::vector<std::set<PredicateKey>> DependencyGraph::components() const {
    std::vector<std::set<PredicateKey>> sccs;
    std::map<PredicateKey, std::size_t> scc_of;
    for (const auto& p : intensional_) {
        if (scc_of.contains(p)) continue;
        std::set<PredicateKey> scc{p};
        for (const auto& q : intensional_) {
            if (q != p && mutually_dependent(p, q)) scc.insert(q);
        }
        for (const auto& q : scc) scc_of[q] = sccs.size();
        sccs.push_back(std::move(scc));
    }

    // Kahn's algorithm; sccs are already ordered by their smallest member.
    const std::size_t n = sccs.size();
    std::vector<std::set<std::size_t>> callers(n);
    std::vector<std::size_t> pending(n, 0);
    for (const auto& e : edges_) {
        auto from = scc_of.find(e.from);
        auto to = scc_of.find(e.to);
        if (from == scc_of.end() || to == scc_of.end() || from->second == to->second) continue;
        if (callers[to->second].insert(from->second).second) ++pending[from->second];
    }
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (pending[i] == 0) ready.insert(i);
    }
    std::vector<std::set<PredicateKey>> ordered;
    while (!ready.empty()) {
        std::size_t i = *ready.begin();
        ready.erase(ready.begin());
        ordered.push_back(sccs[i]);
        for (std::size_t caller : callers[i]) {
            if (--pending[caller] == 0) ready.insert(caller);
        }
    }
    return ordered;
}

} // namespace cohup
