#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cohup/metrics/lcom1.hpp"
#include "cohup/model/cohesion_model.hpp"
#include "cohup/store/delta_set.hpp"
#include "cohup/up/propagation.hpp"

namespace cohup {

enum class ElementKind { Method, Field };

struct ExistingClass {
    Constant id;
};

/// Extract into a new class; the id is generated unless a name is given.
struct NewClass {
    std::optional<std::string> name;
};

using RefactoringTarget = std::variant<ExistingClass, NewClass>;

struct RefactoringSpec {
    ElementKind kind = ElementKind::Method;
    Constant element;
    Constant from;
    RefactoringTarget target = NewClass{};

    static RefactoringSpec move_method(Constant method, Constant from, RefactoringTarget target);
    static RefactoringSpec move_field(Constant field, Constant from, RefactoringTarget target);

    /// Batch-file form, e.g. "move-method m3 c1 -> new".
    std::string to_text() const;
};

/// Parses "move-method <m> <from> -> <to|new>" or the move-field form.
/// Throws SyntaxError.
RefactoringSpec parse_refactoring_command(std::string_view line);

/// First id "c<k>", k = 1, 2, ..., not used by any model fact.
Constant fresh_class_id(const CohesionModel& model);

/// Seed deltas of a refactoring. Throws ElementNotInClass,
/// TargetEqualsSource, UnknownClass (missing source or target class) and
/// DuplicateElement (a named new class that already exists).
DeltaSet seeds_for(const RefactoringSpec& spec, const CohesionModel& model);

struct ClassImpact {
    Constant cls;
    std::optional<Lcom1Value> before; // absent for new classes
    std::optional<Lcom1Value> after;  // absent for removed classes

    Lcom1Value delta() const { return after.value_or(Lcom1Value{}) - before.value_or(Lcom1Value{}); }
};

struct ImpactReport {
    RefactoringSpec spec;
    std::vector<ClassImpact> classes; // classes named by any seed or lp/cp delta
    DeltaSet seeds;
    DeltaSet induced; // lp/cp only
    MetricResult before;
    MetricResult after;
    bool hypothetical = true;
    PropagationResult propagation;

    std::string to_text(bool show_deltas = false) const;
};

/// Metric rules prepared for what-if analysis over one model state.
class ImpactAnalyzer {
public:
    explicit ImpactAnalyzer(CohesionModel model, RuleSet rules = lcom1_rules(),
                            Mapping mapping = Mapping::LackingPairs, TransformOptions options = {});

    const CohesionModel& model() const noexcept { return model_; }
    const MaterializedState& state() const noexcept { return state_; }
    const MetricResult& metrics() const noexcept { return metrics_; }
    const PropagationProgram& program() const noexcept { return program_; }

    /// Never modifies the analyzer's model.
    ImpactReport whatif(const RefactoringSpec& spec) const;
    /// Makes a hypothetical report real, reusing its propagated state.
    void commit(const ImpactReport& report);

private:
    CohesionModel model_;
    Mapping mapping_;
    PropagationProgram program_;
    MaterializedState state_;
    MetricResult metrics_;
};

/// One-shot what-if: materializes `model` with t.source, then propagates.
ImpactReport whatif(const CohesionModel& model, const TransformedRuleSet& t, const RefactoringSpec& spec,
                    Mapping mapping = Mapping::LackingPairs);

} // namespace cohup
