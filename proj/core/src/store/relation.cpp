#include "cohup/store/relation.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "cohup/error.hpp"

namespace cohup {

struct Relation::Indices {
    using Index = std::unordered_map<Tuple, TupleRefs, TupleHash>;

    std::mutex mutex;
    std::map<ColumnMask, Index> by_mask;
};

Tuple project(const Tuple& tuple, ColumnMask mask) {
    Tuple key;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (mask & (ColumnMask{1} << i)) key.push_back(tuple[i]);
    }
    return key;
}

Relation::Relation(std::size_t arity) : arity_(arity), indices_(std::make_unique<Indices>()) {
    if (arity > kMaxArity) throw Error(ErrorKind::InvalidRuleSet, "arity above " + std::to_string(kMaxArity));
}

Relation::~Relation() = default;

Relation::Relation(const Relation& other)
    : arity_(other.arity_), tuples_(other.tuples_), indices_(std::make_unique<Indices>()) {}

Relation& Relation::operator=(const Relation& other) {
    if (this != &other) {
        arity_ = other.arity_;
        tuples_ = other.tuples_;
        indices_ = std::make_unique<Indices>();
    }
    return *this;
}

Relation::Relation(Relation&& other) noexcept = default;
Relation& Relation::operator=(Relation&& other) noexcept = default;

bool Relation::insert(Tuple tuple) {
    if (tuple.size() != arity_) {
        throw Error(ErrorKind::InvalidRuleSet, "tuple of width " + std::to_string(tuple.size()) +
                                                   " inserted into relation of arity " + std::to_string(arity_));
    }
    auto [it, inserted] = tuples_.insert(std::move(tuple));
    if (inserted && indices_) {
        for (auto& [mask, index] : indices_->by_mask) index[project(*it, mask)].push_back(&*it);
    }
    return inserted;
}

bool Relation::erase(const Tuple& tuple) {
    if (tuples_.erase(tuple) == 0) return false;
    if (indices_) indices_->by_mask.clear();
    return true;
}

void Relation::clear() {
    tuples_.clear();
    if (indices_) indices_->by_mask.clear();
}

const Relation::TupleRefs& Relation::lookup(ColumnMask mask, const Tuple& key) const {
    static const TupleRefs empty;
    if (!indices_) indices_ = std::make_unique<Indices>();
    std::lock_guard lock(indices_->mutex);
    auto it = indices_->by_mask.find(mask);
    if (it == indices_->by_mask.end()) {
        Indices::Index index;
        for (const auto& tuple : tuples_) index[project(tuple, mask)].push_back(&tuple);
        it = indices_->by_mask.emplace(mask, std::move(index)).first;
    }
    auto found = it->second.find(key);
    return found == it->second.end() ? empty : found->second;
}

} // namespace cohup
