#include "custard/experiment.hpp"

#include "custard/errors.hpp"

#include <charconv>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace custard {

std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::Rwr:
        return "rwr";
    case Method::Custard:
        return "custard";
    case Method::CustardSq:
        return "custard_sq";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "rwr")
        return Method::Rwr;
    if (name == "custard")
        return Method::Custard;
    if (name == "custard_sq")
        return Method::CustardSq;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (methods.empty() || gammas.empty() || ks.empty() || lambdas.empty())
        throw std::invalid_argument("methods, gamma, k and lambda lists must be nonempty");
    for (const double g : gammas)
        if (!(g > 0.0 && g <= 1.0))
            throw std::invalid_argument("gamma values must lie in (0, 1]");
    for (const int k : ks)
        if (k < 1)
            throw std::invalid_argument("k values must be at least 1");
    for (const double l : lambdas)
        if (!(l >= 0.0 && l <= 1.0))
            throw std::invalid_argument("lambda values must lie in [0, 1]");
    if (n_trials < 1)
        throw std::invalid_argument("trials must be at least 1");
    if (workers < 1)
        throw std::invalid_argument("workers must be at least 1");
    propagation(lambdas.front()).validate();
}

PropagationConfig ExperimentConfig::propagation(double lambda) const {
    PropagationConfig p;
    p.alpha = alpha;
    p.lambda = lambda;
    p.tolerance = tolerance;
    p.max_iterations = max_iterations;
    p.variant = variant;
    p.backend = Backend::Serial;
    return p;
}

TrialResult run_single(const Graph &g, const TransitionMatrix &base, Method method,
                       const TrialPlan &plan, const PropagationConfig &cfg) {
    if (plan.seeds.empty())
        throw std::invalid_argument("run_single: plan has no seeds");
    ScoreVector scores;
    switch (method) {
    case Method::Rwr:
        scores = base.variant() == Normalization::Symmetric ? rwr_symmetric(base, plan.seeds, cfg)
                                                            : rwr_classical(base, plan.seeds, cfg);
        break;
    case Method::Custard:
        scores = custard(base, plan.seeds, plan.negatives, cfg);
        break;
    case Method::CustardSq: {
        const std::span<const NodeId> rest(plan.seeds.data() + 1, plan.seeds.size() - 1);
        scores = custard_sq(g, plan.seeds.front(), rest, plan.negatives, cfg);
        break;
    }
    }
    TrialResult out;
    out.iterations = scores.iterations_used;
    out.converged = scores.converged;
    out.ranked = evaluate(scores.p, plan.training(), g.nodes_with_label(plan.label_id));
    return out;
}

namespace {

struct Variant {
    Method method;
    std::optional<double> lambda;
};

std::vector<Variant> expand_variants(const ExperimentConfig &cfg) {
    std::vector<Variant> out;
    for (const Method m : cfg.methods) {
        if (m == Method::Rwr) {
            out.push_back({m, std::nullopt});
            continue;
        }
        for (const double l : cfg.lambdas)
            out.push_back({m, l});
    }
    return out;
}

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

ExperimentReport run_experiment(const Graph &g, const ExperimentConfig &cfg) {
    cfg.validate();
    ExperimentReport report;
    const TransitionMatrix base = normalize(g, cfg.variant);
    const auto variants = expand_variants(cfg);
    const auto n_trials = static_cast<std::size_t>(cfg.n_trials);

    for (const double gamma : cfg.gammas) {
        for (const int k : cfg.ks) {
            // plans[label slot][trial]
            std::vector<std::vector<TrialPlan>> plans;
            for (LabelId label = 0; label < static_cast<LabelId>(g.num_labels()); ++label) {
                if (g.nodes_with_label(label).empty())
                    continue;
                try {
                    plans.push_back(build_trials(g, label, gamma, k, cfg.n_trials, cfg.base_seed));
                } catch (const ConfigError &e) {
                    report.warnings.push_back("gamma=" + format_double(gamma) + " k=" +
                                              std::to_string(k) + ": skipping label '" +
                                              g.label_name(label) + "': " + e.what());
                    report.partial = true;
                }
            }
            if (plans.empty()) {
                report.warnings.push_back("gamma=" + format_double(gamma) + " k=" +
                                          std::to_string(k) + ": no label could be sampled");
                continue;
            }
            for (const auto &label_plans : plans)
                report.plans.insert(report.plans.end(), label_plans.begin(), label_plans.end());

            const std::size_t n_labels = plans.size();
            const auto n_tasks = static_cast<std::int64_t>(n_labels * n_trials);
            for (const Variant &variant : variants) {
                const PropagationConfig pcfg = cfg.propagation(variant.lambda.value_or(0.0));
                std::vector<TrialResult> results(n_labels * n_trials);
                std::vector<std::string> errors(results.size());
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers)
                for (std::int64_t t = 0; t < n_tasks; ++t) {
                    const auto idx = static_cast<std::size_t>(t);
                    try {
                        results[idx] = run_single(g, base, variant.method,
                                                  plans[idx / n_trials][idx % n_trials], pcfg);
                    } catch (const std::exception &e) {
                        errors[idx] = e.what();
                    }
                }
                for (const auto &err : errors)
                    if (!err.empty())
                        throw std::runtime_error("trial failed: " + err);

                CellResult cell;
                cell.method = variant.method;
                cell.gamma = gamma;
                cell.k = k;
                cell.lambda = variant.lambda;
                std::vector<Metrics> instances;
                for (std::size_t j = 0; j < n_trials; ++j) {
                    std::vector<RankProfile> pooled;
                    for (std::size_t l = 0; l < n_labels; ++l) {
                        TrialResult &r = results[l * n_trials + j];
                        if (!r.converged)
                            ++cell.unconverged_solves;
                        pooled.push_back(std::move(r.ranked.profile));
                    }
                    if (auto m = pooled_metrics(pooled))
                        instances.push_back(*m);
                    else
                        ++cell.undefined_instances;
                }
                if (instances.empty()) {
                    report.warnings.push_back(std::string(to_string(variant.method)) +
                                              ": every instance had undefined metrics");
                    report.partial = true;
                    continue;
                }
                if (cell.undefined_instances > 0)
                    report.warnings.push_back(std::string(to_string(variant.method)) + " gamma=" +
                                              format_double(gamma) + " k=" + std::to_string(k) +
                                              ": excluded " +
                                              std::to_string(cell.undefined_instances) +
                                              " instances with undefined metrics");
                if (cell.unconverged_solves > 0)
                    report.warnings.push_back(std::string(to_string(variant.method)) + " gamma=" +
                                              format_double(gamma) + " k=" + std::to_string(k) +
                                              ": " + std::to_string(cell.unconverged_solves) +
                                              " solves hit max_iterations");
                cell.summary = aggregate(instances);
                report.cells.push_back(cell);
            }
        }
    }
    return report;
}

void write_csv(std::ostream &out, const std::string &dataset, const ExperimentReport &report) {
    out << "dataset,method,gamma,k,lambda,metric,mean,std,n_trials\n";
    for (const CellResult &c : report.cells) {
        const std::string prefix = dataset + "," + std::string(to_string(c.method)) + "," +
                                   format_double(c.gamma) + "," + std::to_string(c.k) + "," +
                                   (c.lambda ? format_double(*c.lambda) : std::string("NA")) + ",";
        const std::pair<const char *, const Summary *> rows[] = {
            {"auc", &c.summary.auc}, {"p_at_20", &c.summary.p_at_20}, {"p_at_100", &c.summary.p_at_100}};
        for (const auto &[name, s] : rows)
            out << prefix << name << ',' << format_double(s->mean) << ',' << format_double(s->std)
                << ',' << s->n_trials << '\n';
    }
}

} // namespace custard
