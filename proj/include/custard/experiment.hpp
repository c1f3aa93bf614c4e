#pragma once

#include "custard/evaluation.hpp"
#include "custard/graph.hpp"
#include "custard/propagation.hpp"
#include "custard/sampling.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace custard {

enum class Method { Rwr, Custard, CustardSq };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name);

struct ExperimentConfig {
    std::string dataset = "dataset";
    std::vector<Method> methods{Method::Rwr, Method::Custard, Method::CustardSq};
    std::vector<double> gammas{0.02, 0.05, 0.10};
    std::vector<int> ks{1, 2, 3};
    std::vector<double> lambdas{0.9};
    double alpha = 0.05;
    int n_trials = 50;
    std::uint64_t base_seed = 0;
    int workers = 1;
    double tolerance = 1e-9;
    int max_iterations = 1000;
    Normalization variant = Normalization::Symmetric;

    /// Throws std::invalid_argument on empty lists or out-of-range values.
    void validate() const;
    PropagationConfig propagation(double lambda) const;
};

struct TrialResult {
    RankedResult ranked;
    int iterations = 0;
    bool converged = false;
};

/**
 * Runs one method on one plan and evaluates it. `base` must be the
 * normalization of `g` selected by cfg.variant. The sq variant uses the first
 * seed as query and the remaining seeds as positives; rwr ignores negatives.
 */
TrialResult run_single(const Graph &g, const TransitionMatrix &base, Method method,
                       const TrialPlan &plan, const PropagationConfig &cfg);

/// Aggregated metrics for one (method, gamma, k, lambda) cell, pooled over labels.
struct CellResult {
    Method method = Method::Custard;
    double gamma = 0.0;
    int k = 1;
    std::optional<double> lambda; ///< empty for rwr
    MetricSummary summary;
    std::size_t undefined_instances = 0;
    std::size_t unconverged_solves = 0;
};

struct ExperimentReport {
    std::vector<CellResult> cells;
    std::vector<TrialPlan> plans;
    std::vector<std::string> warnings;
    bool partial = false; ///< some label/cell could not be set up
};

/**
 * For every (gamma, k) the trials of every label are built once and shared by
 * all methods and lambdas. Instance j of a cell pools the rankings of trial j
 * across labels; the cell reports mean and population std over instances.
 * Trials run on `workers` OpenMP threads; results do not depend on the count.
 */
ExperimentReport run_experiment(const Graph &g, const ExperimentConfig &cfg);

/// `dataset,method,gamma,k,lambda,metric,mean,std,n_trials`
void write_csv(std::ostream &out, const std::string &dataset, const ExperimentReport &report);

} // namespace custard
