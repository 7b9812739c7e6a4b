#ifndef CTMC_EXPERIMENT_HPP
#define CTMC_EXPERIMENT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctmc/checker.hpp"
#include "ctmc/variants.hpp"

namespace ctmc {

struct NamedVariant {
    std::string name;
    std::vector<VariantEdit> edits;   // empty = wildtype
};

// Declarative experiment: parsed from a key/value spec file, overridable
// from the CLI.
struct ExperimentSpec {
    std::string mode;                       // sweep | steady | rewards | knockout-scan
    std::vector<std::string> model_paths;
    std::vector<double> times;
    std::string expr;                       // sweep shorthand: P=?[F[t,t] expr]
    std::string query_template;             // alternative: full property with $t
    std::vector<std::string> molecules;     // steady
    std::vector<std::string> blocks;        // rewards
    std::string formula_a, formula_b;       // knockout-scan
    std::vector<NamedVariant> variants;
    std::string output;
    std::string json_output;
};

ExperimentSpec parse_experiment_spec(const std::string& text, const std::string& filename);

// "0:20:2" (start:stop:step) or "0,1,2,5"; must be strictly increasing.
std::vector<double> parse_time_grid(const std::string& text);

struct SweepResult {
    std::vector<double> times;
    std::vector<std::string> variant_names;
    std::vector<std::vector<double>> values;   // [variant][time]
    std::string csv() const;
};

// P=?[ F[t,t] expr ] per variant per grid point; each point is a standalone
// check, so entries coincide exactly with `check` on the same variant.
SweepResult sweep_transient(const ModelAst& base, const std::vector<NamedVariant>& variants,
                            const std::string& expr, const std::vector<double>& time_grid,
                            const SolverConfig& cfg = {});

// Generic variant: any property template with $t substituted per grid point.
SweepResult sweep_query(const ModelAst& base, const std::vector<NamedVariant>& variants,
                        const std::string& query_template, const std::vector<double>& time_grid,
                        const SolverConfig& cfg = {});

struct SteadyTable {
    std::vector<std::string> molecules;
    std::vector<double> values;              // full precision
    std::string csv() const;                 // rounded to 2 decimals
    std::string json() const;                // full precision
};

SteadyTable steady_state_table(const ModelAst& model, const std::vector<std::string>& molecules,
                               const SolverConfig& cfg = {});

struct RewardCurves {
    std::vector<double> times;
    std::vector<std::string> blocks;
    std::vector<std::vector<double>> values;   // [block][time]
    std::string csv() const;
};

// R{block}=?[ C<=t ] across the grid; series are nondecreasing.
RewardCurves reward_curves(const ModelAst& model, const std::vector<std::string>& blocks,
                           const std::vector<double>& time_grid, const SolverConfig& cfg = {});

struct KnockoutScan {
    struct Row {
        std::string id;            // "wildtype" or the reaction id
        std::string removed_name;
        double value_a = 0.0, value_b = 0.0;
        bool failed = false;
        std::string error;
        std::string quadrant;
    };
    std::vector<Row> rows;
    std::string csv() const;
};

// Steady-state scatter: one row per single-reaction knockout plus wildtype,
// with quadrant classification relative to the wildtype point.
KnockoutScan knockout_scan(const ModelAst& model, const std::string& formula_a,
                           const std::string& formula_b, const SolverConfig& cfg = {},
                           double quadrant_tolerance = 1e-7);

// Bounded parallel map; worker count from CTMC_CHECK_THREADS (default: all
// cores). Output ordering is by index, independent of the thread count.
void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace ctmc

#endif
