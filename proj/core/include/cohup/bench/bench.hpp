#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cohup/model/cohesion_model.hpp"
#include "cohup/refactor/refactoring.hpp"

namespace cohup {

struct BenchParams {
    std::size_t classes = 200;
    std::size_t methods_per_class = 10;
    std::size_t fields_per_class = 10;
    double density = 0.3;
    std::size_t updates = 20;
    std::uint64_t seed = 1;
};

struct BenchTrial {
    std::string refactoring;
    std::uint64_t trial_seed = 0;
    std::int64_t t_incremental_ns = 0;
    std::int64_t t_full_ns = 0;
    bool equal = false;

    double speedup() const;
};

struct BenchReport {
    BenchParams params;
    std::size_t model_facts = 0;
    std::vector<BenchTrial> trials;
    double median_speedup = 0.0; // median of per-trial t_full / t_incremental; 0 without trials
    bool all_equal = true;

    std::string to_text() const;
};

/// Deterministic synthetic model: classes c1..cN with methods cI_mJ and
/// fields cI_fK. Each method accesses each field of its own class with
/// probability density, and each field of one randomly chosen other class
/// with probability density / 4.
CohesionModel synthetic_model(const BenchParams& params);

/// A random move-method or move-field (to an existing or a new class)
/// drawn from `trial_seed`.
RefactoringSpec random_refactoring(const CohesionModel& model, std::uint64_t trial_seed);

/// Times incremental (propagate + remap_incremental) against full
/// (apply_delta_set + evaluate + lcom1_all) for each update. Trials are
/// independent what-ifs against the same model. Throws MismatchDetected
/// when the two paths disagree, and InvalidRuleSet for bad parameters.
BenchReport run_bench(const BenchParams& params);

} // namespace cohup
