#include "eval/join.hpp"

#include <algorithm>
#include <optional>

#include "cohup/error.hpp"
#include "cohup/logic/render.hpp"

namespace cohup::detail {

namespace {

class Compiler {
public:
    explicit Compiler(const Rule& rule) : rule_(rule) {}

    CompiledRule run(ColumnMask head_bound) {
        CompiledRule out;
        out.head = rule_.head.key();
        out.head_bound = head_bound;

        for (std::size_t col = 0; col < rule_.head.args.size(); ++col) {
            if (!(head_bound & (ColumnMask{1} << col))) continue;
            if (const auto* v = std::get_if<Variable>(&rule_.head.args[col])) bound_[id_of(v->name)] = true;
        }

        std::vector<std::size_t> pending;
        for (std::size_t i = 0; i < rule_.body.size(); ++i) {
            const Literal& lit = rule_.body[i];
            if (lit.kind == LiteralKind::Positive) {
                out.steps.push_back(positive_step(lit, i));
            } else if (lit.kind == LiteralKind::Member && is_variable(lit.lhs()) &&
                       !is_bound(std::get<Variable>(lit.lhs()).name)) {
                out.steps.push_back(member_step(lit, i));
            } else {
                pending.push_back(i);
            }
            flush(pending, out.steps);
        }
        flush(pending, out.steps);
        if (!pending.empty()) {
            throw Error(ErrorKind::InvalidRuleSet,
                        "literal " + render(rule_.body[pending.front()]) + " in " + render(rule_) +
                            " has a variable that no positive literal binds");
        }

        for (const auto& arg : rule_.head.args) {
            if (const auto* v = std::get_if<Variable>(&arg)) {
                if (!is_bound(v->name)) {
                    throw Error(ErrorKind::InvalidRuleSet,
                                "head variable " + v->name + " of " + render(rule_) + " is not range-restricted");
                }
                out.head_args.push_back({Slot::Kind::Bound, id_of(v->name), {}});
            } else if (const auto* c = std::get_if<Constant>(&arg)) {
                out.head_args.push_back({Slot::Kind::Constant, 0, *c});
            } else {
                throw Error(ErrorKind::InvalidRuleSet, "list constant in head of " + render(rule_));
            }
        }
        out.var_count = ids_.size();
        return out;
    }

private:
    std::size_t id_of(const std::string& name) {
        auto [it, inserted] = ids_.emplace(name, ids_.size());
        if (inserted) bound_.push_back(false);
        return it->second;
    }
    bool is_bound(const std::string& name) {
        auto it = ids_.find(name);
        return it != ids_.end() && bound_[it->second];
    }
    bool term_bound(const Term& t) { return !is_variable(t) || is_bound(std::get<Variable>(t).name); }

    Slot filter_slot(const Term& t) {
        if (const auto* v = std::get_if<Variable>(&t)) return {Slot::Kind::Bound, id_of(v->name), {}};
        if (const auto* c = std::get_if<Constant>(&t)) return {Slot::Kind::Constant, 0, *c};
        throw Error(ErrorKind::InvalidRuleSet, "list constant outside member/2 in " + render(rule_));
    }

    Step positive_step(const Literal& lit, std::size_t index) {
        Step step;
        step.kind = LiteralKind::Positive;
        step.predicate = lit.atom.key();
        step.body_index = index;
        if (step.predicate.arity > kMaxArity) throw Error(ErrorKind::InvalidRuleSet, "arity too large");
        std::vector<std::size_t> fresh;
        for (std::size_t col = 0; col < lit.atom.args.size(); ++col) {
            const Term& arg = lit.atom.args[col];
            if (const auto* v = std::get_if<Variable>(&arg)) {
                std::size_t id = id_of(v->name);
                if (bound_[id]) {
                    step.args.push_back({Slot::Kind::Bound, id, {}});
                    step.mask |= ColumnMask{1} << col;
                } else if (std::find(fresh.begin(), fresh.end(), id) != fresh.end()) {
                    step.args.push_back({Slot::Kind::Check, id, {}});
                } else {
                    fresh.push_back(id);
                    step.args.push_back({Slot::Kind::Bind, id, {}});
                }
            } else {
                step.args.push_back(filter_slot(arg));
                step.mask |= ColumnMask{1} << col;
            }
        }
        for (std::size_t id : fresh) bound_[id] = true;
        return step;
    }

    Step member_step(const Literal& lit, std::size_t index) {
        const auto* list = std::get_if<ListConstant>(&lit.rhs());
        if (list == nullptr) {
            throw Error(ErrorKind::InvalidRuleSet, "member/2 needs a list constant in " + render(rule_));
        }
        Step step;
        step.kind = LiteralKind::Member;
        step.body_index = index;
        step.list = list->items;
        if (const auto* v = std::get_if<Variable>(&lit.lhs()); v != nullptr && !is_bound(v->name)) {
            std::size_t id = id_of(v->name);
            step.args.push_back({Slot::Kind::Bind, id, {}});
            bound_[id] = true;
        } else {
            step.args.push_back(filter_slot(lit.lhs()));
        }
        return step;
    }

    std::optional<Step> try_filter(std::size_t index) {
        const Literal& lit = rule_.body[index];
        Step step;
        step.kind = lit.kind;
        step.body_index = index;
        switch (lit.kind) {
        case LiteralKind::Negated: {
            for (const auto& arg : lit.atom.args) {
                if (!term_bound(arg)) return std::nullopt;
            }
            step.predicate = lit.atom.key();
            for (const auto& arg : lit.atom.args) step.args.push_back(filter_slot(arg));
            return step;
        }
        case LiteralKind::NotEqual:
            if (!term_bound(lit.lhs()) || !term_bound(lit.rhs())) return std::nullopt;
            step.args = {filter_slot(lit.lhs()), filter_slot(lit.rhs())};
            return step;
        case LiteralKind::Equal: {
            const bool l = term_bound(lit.lhs());
            const bool r = term_bound(lit.rhs());
            if (!l && !r) return std::nullopt;
            if (l && r) {
                step.args = {filter_slot(lit.lhs()), filter_slot(lit.rhs())};
                return step;
            }
            // One side binds from the other.
            const Term& unbound = l ? lit.rhs() : lit.lhs();
            const Term& source = l ? lit.lhs() : lit.rhs();
            Slot from = filter_slot(source);
            std::size_t id = id_of(std::get<Variable>(unbound).name);
            Slot to{Slot::Kind::Bind, id, {}};
            bound_[id] = true;
            step.args = {to, from};
            return step;
        }
        case LiteralKind::Member:
            if (!term_bound(lit.lhs())) return std::nullopt;
            return member_step(lit, index);
        case LiteralKind::Positive:
            break;
        }
        return std::nullopt;
    }

    void flush(std::vector<std::size_t>& pending, std::vector<Step>& steps) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto it = pending.begin(); it != pending.end(); ++it) {
                if (auto step = try_filter(*it)) {
                    steps.push_back(std::move(*step));
                    pending.erase(it);
                    progress = true;
                    break;
                }
            }
        }
    }

    const Rule& rule_;
    std::map<std::string, std::size_t> ids_;
    std::vector<bool> bound_;
};

const Constant& value_of(const Slot& slot, const Frame& frame) {
    return slot.kind == Slot::Kind::Constant ? slot.constant : *frame[slot.var];
}

void run(const CompiledRule& rule, Resolver& resolver, Frame& frame, std::size_t index, const Emit& emit) {
    if (index == rule.steps.size()) {
        Tuple head;
        head.reserve(rule.head_args.size());
        for (const auto& slot : rule.head_args) head.push_back(value_of(slot, frame));
        emit(head);
        return;
    }
    const Step& step = rule.steps[index];
    switch (step.kind) {
    case LiteralKind::Positive: {
        Tuple key;
        for (const auto& slot : step.args) {
            if (slot.kind == Slot::Kind::Constant || slot.kind == Slot::Kind::Bound) key.push_back(value_of(slot, frame));
        }
        const auto& matches = resolver.lookup(step, step.mask, key);
        for (std::size_t m = 0; m < matches.size(); ++m) {
            const Tuple& tuple = *matches[m];
            bool ok = true;
            for (std::size_t col = 0; col < step.args.size() && ok; ++col) {
                const Slot& slot = step.args[col];
                if (slot.kind == Slot::Kind::Bind) {
                    frame[slot.var] = &tuple[col];
                } else if (slot.kind == Slot::Kind::Check) {
                    ok = *frame[slot.var] == tuple[col];
                }
            }
            if (ok) run(rule, resolver, frame, index + 1, emit);
        }
        return;
    }
    case LiteralKind::Negated: {
        Tuple tuple;
        tuple.reserve(step.args.size());
        for (const auto& slot : step.args) tuple.push_back(value_of(slot, frame));
        if (!resolver.contains(step, tuple)) run(rule, resolver, frame, index + 1, emit);
        return;
    }
    case LiteralKind::Equal: {
        const Slot& a = step.args[0];
        const Slot& b = step.args[1];
        if (a.kind == Slot::Kind::Bind) {
            frame[a.var] = &value_of(b, frame);
            run(rule, resolver, frame, index + 1, emit);
        } else if (value_of(a, frame) == value_of(b, frame)) {
            run(rule, resolver, frame, index + 1, emit);
        }
        return;
    }
    case LiteralKind::NotEqual:
        if (value_of(step.args[0], frame) != value_of(step.args[1], frame)) {
            run(rule, resolver, frame, index + 1, emit);
        }
        return;
    case LiteralKind::Member: {
        const Slot& element = step.args[0];
        if (element.kind == Slot::Kind::Bind) {
            for (const auto& item : step.list) {
                frame[element.var] = &item;
                run(rule, resolver, frame, index + 1, emit);
            }
        } else if (std::find(step.list.begin(), step.list.end(), value_of(element, frame)) != step.list.end()) {
            run(rule, resolver, frame, index + 1, emit);
        }
        return;
    }
    }
}

class SemiNaiveResolver final : public Resolver {
public:
    SemiNaiveResolver(Resolver& outside, std::map<PredicateKey, Relation>& full,
                      std::map<PredicateKey, Relation>& delta)
        : outside_(outside), full_(full), delta_(delta) {}

    void focus(std::optional<std::size_t> body_index) { delta_index_ = body_index; }

    const Relation::TupleRefs& lookup(const Step& step, ColumnMask mask, const Tuple& key) override {
        auto it = full_.find(step.predicate);
        if (it == full_.end()) return outside_.lookup(step, mask, key);
        if (delta_index_ && *delta_index_ == step.body_index) return delta_.at(step.predicate).lookup(mask, key);
        return it->second.lookup(mask, key);
    }

    bool contains(const Step& step, const Tuple& tuple) override {
        auto it = full_.find(step.predicate);
        if (it == full_.end()) return outside_.contains(step, tuple);
        return it->second.contains(tuple);
    }

private:
    Resolver& outside_;
    std::map<PredicateKey, Relation>& full_;
    std::map<PredicateKey, Relation>& delta_;
    std::optional<std::size_t> delta_index_;
};

} // namespace

CompiledRule compile(const Rule& rule, ColumnMask head_bound) { return Compiler(rule).run(head_bound); }

bool seed_frame(const CompiledRule& rule, const Tuple& key, Frame& frame) {
    frame.assign(rule.var_count, nullptr);
    std::size_t k = 0;
    for (std::size_t col = 0; col < rule.head_args.size(); ++col) {
        if (!(rule.head_bound & (ColumnMask{1} << col))) continue;
        const Constant& value = key[k++];
        const Slot& slot = rule.head_args[col];
        if (slot.kind == Slot::Kind::Constant) {
            if (slot.constant != value) return false;
        } else if (frame[slot.var] == nullptr) {
            frame[slot.var] = &value;
        } else if (*frame[slot.var] != value) {
            return false;
        }
    }
    return true;
}

void execute(const CompiledRule& rule, Resolver& resolver, Frame& frame, const Emit& emit) {
    if (frame.size() < rule.var_count) frame.resize(rule.var_count, nullptr);
    run(rule, resolver, frame, 0, emit);
}

void saturate(std::span<const CompiledRule* const> rules, Resolver& outside,
              std::map<PredicateKey, Relation>& targets, SaturationStats* stats) {
    std::map<PredicateKey, Relation> delta;
    std::map<PredicateKey, Relation> next;
    for (const auto& [key, rel] : targets) {
        delta.emplace(key, Relation(key.arity));
        next.emplace(key, Relation(key.arity));
    }
    SemiNaiveResolver resolver(outside, targets, delta);
    Frame frame;

    auto evaluate = [&](const CompiledRule& rule) {
        Relation& out = next.at(rule.head);
        const Relation& full = targets.at(rule.head);
        frame.assign(rule.var_count, nullptr);
        run(rule, resolver, frame, 0, [&](const Tuple& t) {
            if (!full.contains(t)) out.insert(t);
        });
    };
    auto merge = [&] {
        bool grew = false;
        for (auto& [key, fresh] : next) {
            Relation& d = delta.at(key);
            d.clear();
            for (const auto& t : fresh) {
                targets.at(key).insert(t);
                d.insert(t);
                grew = true;
                if (stats) ++stats->derived;
            }
            fresh.clear();
        }
        if (stats) ++stats->rounds;
        return grew;
    };

    resolver.focus(std::nullopt);
    for (const CompiledRule* rule : rules) evaluate(*rule);
    bool grew = merge();

    while (grew) {
        for (const CompiledRule* rule : rules) {
            for (const Step& step : rule->steps) {
                if (step.kind != LiteralKind::Positive) continue;
                auto d = delta.find(step.predicate);
                if (d == delta.end() || d->second.empty()) continue;
                resolver.focus(step.body_index);
                evaluate(*rule);
            }
        }
        resolver.focus(std::nullopt);
        grew = merge();
    }
}

} // namespace cohup::detail
