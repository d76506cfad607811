#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "cohup/logic/term.hpp"

namespace cohup {

/// Bit i set means column i is bound in a lookup.
using ColumnMask = std::uint64_t;

inline constexpr std::size_t kMaxArity = 64;

/// Set of ground tuples of one predicate, ordered by the constant order.
///
/// Hash indices keyed by a column mask are built on first use and kept up to
/// date by insert(); erase() drops them. Index construction is guarded, so
/// concurrent lookups on an unmodified relation are safe.
class Relation {
public:
    using TupleRefs = std::vector<const Tuple*>;

    explicit Relation(std::size_t arity = 0);
    ~Relation();
    Relation(const Relation& other);
    Relation& operator=(const Relation& other);
    Relation(Relation&&) noexcept;
    Relation& operator=(Relation&&) noexcept;

    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }

    bool insert(Tuple tuple);
    bool erase(const Tuple& tuple);
    bool contains(const Tuple& tuple) const { return tuples_.contains(tuple); }
    void clear();

    auto begin() const { return tuples_.begin(); }
    auto end() const { return tuples_.end(); }
    const std::set<Tuple>& tuples() const noexcept { return tuples_; }

    /// Tuples whose columns selected by `mask` equal `key` (key holds the
    /// bound values in column order). The reference stays valid until the
    /// relation is modified.
    const TupleRefs& lookup(ColumnMask mask, const Tuple& key) const;

    bool operator==(const Relation& other) const { return tuples_ == other.tuples_; }

private:
    struct Indices;

    std::size_t arity_;
    std::set<Tuple> tuples_;
    mutable std::unique_ptr<Indices> indices_;
};

Tuple project(const Tuple& tuple, ColumnMask mask);

} // namespace cohup
