#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohup/logic/term.hpp"
#include "cohup/store/fact_base.hpp"

namespace cohup {

/// classT(id, ownerId, name)
struct ClassElement {
    Constant id;
    Constant owner;
    std::string name;
};

/// methodT(id, classId, name) and fieldT(id, classId, name)
struct MemberElement {
    Constant id;
    Constant owner;
    std::string name;
};

/// Program element facts: the structural facts extracted from Java code.
struct ProgramElementFacts {
    std::vector<ClassElement> classes;
    std::set<Constant> interfaces; // interfaceT/1
    std::set<Constant> externs;    // externT/1
    std::vector<MemberElement> methods;
    std::vector<MemberElement> fields;
    std::vector<std::pair<Constant, Constant>> calls;    // callT(caller, callee)
    std::vector<std::pair<Constant, Constant>> accesses; // accessT(method, field)

    static const std::set<PredicateKey>& predicates();
};

/// Parses a PEF file. Throws UnknownPredicate (with the line) for facts
/// outside the seven PEF predicates.
ProgramElementFacts parse_pef(std::string_view text);

inline constexpr std::string_view kAnonymousPrefix = "ANONYMOUS$";
inline constexpr std::string_view kConstructorName = "<init>";

/// True iff the class is neither extern, an interface, nor anonymous.
/// Throws UnknownClass when no classT fact has this id.
bool source_class(const ProgramElementFacts& pef, const Constant& class_id);

/// Cohesion model facts c/1, cm/2, cf/2, mf/2, mm/2.
class CohesionModel {
public:
    CohesionModel() = default;
    /// Throws UnknownPredicate for facts outside the model predicates and
    /// DanglingReference when cm/cf name a class without c.
    explicit CohesionModel(FactBase facts);

    static const PredicateKey c, cm, cf, mf, mm;
    static const std::set<PredicateKey>& predicates();

    const FactBase& facts() const noexcept { return facts_; }
    Snapshot snapshot() const { return Snapshot(facts_); }

    std::vector<Constant> classes() const;
    std::vector<Constant> methods_of(const Constant& cls) const;
    std::vector<Constant> fields_of(const Constant& cls) const;
    bool has_class(const Constant& cls) const;
    /// Every constant occurring in any model fact.
    std::set<Constant> identifiers() const;

    /// One fact per line, predicate then tuple order.
    std::string to_text() const;

    bool operator==(const CohesionModel& other) const { return facts_ == other.facts_; }

private:
    FactBase facts_;
};

/// Parses a model fact file (c/cm/cf/mf/mm facts).
CohesionModel parse_model(std::string_view text);

/// Derives the cohesion model: source classes only, constructors dropped,
/// call and access edges kept when both endpoints survive. Throws
/// DanglingReference or DuplicateElement when the facts are inconsistent.
CohesionModel derive_model(const ProgramElementFacts& pef);

} // namespace cohup
