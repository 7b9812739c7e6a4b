// ctmc-check: build, check, sweep, scan, simulate and export guarded-command
// CTMC models. See docs/cli.md for the full interface.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctmc/build.hpp"
#include "ctmc/checker.hpp"
#include "ctmc/csv.hpp"
#include "ctmc/experiment.hpp"
#include "ctmc/parser.hpp"
#include "ctmc/printer.hpp"
#include "ctmc/sim.hpp"

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ctmc::IoError("cannot open '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ctmc::IoError("cannot open '" + path + "' for writing");
    os << content;
}

ctmc::ModelAst load_model(const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, std::string>> sources;
    for (const std::string& p : paths) sources.emplace_back(slurp(p), p);
    return ctmc::parse_model_sources(sources);
}

struct NumericFlags {
    double epsilon = 1e-9;
    std::uint64_t max_iters = 1'000'000;
    std::string solver = "gauss-seidel";
    double unif_factor = 1.02;
    std::uint64_t max_states = 10'000'000;

    ctmc::SolverConfig config() const {
        ctmc::SolverConfig cfg;
        cfg.epsilon = epsilon;
        cfg.max_iters = max_iters;
        cfg.unif_factor = unif_factor;
        if (solver == "jacobi") cfg.method = ctmc::SolverMethod::Jacobi;
        else if (solver == "gauss-seidel") cfg.method = ctmc::SolverMethod::GaussSeidel;
        else throw CLI::ValidationError("--solver", "must be jacobi or gauss-seidel");
        return cfg;
    }
    ctmc::BuildOptions build_options() const { return {max_states}; }
};

void add_numeric_flags(CLI::App* cmd, NumericFlags& nf) {
    cmd->add_option("--epsilon", nf.epsilon, "solver convergence threshold")
        ->capture_default_str();
    cmd->add_option("--max-iters", nf.max_iters, "iteration cap for linear solvers")
        ->capture_default_str();
    cmd->add_option("--solver", nf.solver, "jacobi or gauss-seidel")->capture_default_str();
    cmd->add_option("--unif-factor", nf.unif_factor, "uniformization rate factor")
        ->capture_default_str();
    cmd->add_option("--max-states", nf.max_states, "state space cap")->capture_default_str();
}

json diagnostics_json(const ctmc::CheckDiagnostics& d) {
    json j;
    j["iterations"] = d.iterations;
    if (d.fg_left >= 0) {
        j["fg_left"] = d.fg_left;
        j["fg_right"] = d.fg_right;
    }
    j["wall_ms"] = d.wall_ms;
    j["marginal"] = d.marginal;
    if (!d.notes.empty()) j["notes"] = d.notes;
    return j;
}

json result_json(const std::string& formula, const ctmc::CheckResult& r) {
    json j;
    j["formula"] = formula;
    if (r.value) {
        if (r.value_infinite) j["value"] = "inf";
        else j["value"] = *r.value;
    } else {
        j["satisfied"] = r.init_satisfied;
        j["satisfying_count"] = r.satisfying->size();
    }
    j["diagnostics"] = diagnostics_json(r.diag);
    return j;
}

void print_result_text(const std::string& formula, const ctmc::CheckResult& r) {
    if (r.value) {
        std::cout << formula << " = "
                  << (r.value_infinite ? "inf" : ctmc::CsvWriter::number(*r.value)) << "\n";
    } else {
        std::cout << formula << " : " << (r.init_satisfied ? "true" : "false") << " ("
                  << r.satisfying->size() << " states satisfy)\n";
    }
}

std::vector<ctmc::NamedVariant> parse_variant_options(const std::vector<std::string>& specs) {
    // each spec: name=X,remove-reaction=7,remove-label=a  (keys repeatable)
    std::vector<ctmc::NamedVariant> out;
    for (const std::string& s : specs) {
        ctmc::NamedVariant v;
        std::istringstream is(s);
        std::string part;
        while (std::getline(is, part, ',')) {
            std::size_t eq = part.find('=');
            if (eq == std::string::npos)
                throw ctmc::IoError("variant spec needs key=value pairs: '" + s + "'");
            std::string key = part.substr(0, eq), value = part.substr(eq + 1);
            if (key == "name") v.name = value;
            else if (key == "remove-reaction")
                v.edits.push_back(ctmc::VariantEdit::remove_reaction(std::stoi(value)));
            else if (key == "remove-label")
                v.edits.push_back(ctmc::VariantEdit::remove_label(value));
            else throw ctmc::IoError("unknown variant key '" + key + "'");
        }
        if (v.name.empty()) throw ctmc::IoError("variant spec needs a name: '" + s + "'");
        out.push_back(std::move(v));
    }
    return out;
}

void emit(const std::string& content, const std::string& path) {
    if (path.empty() || path == "-") std::cout << content;
    else spit(path, content);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact CTMC model checker for modular guarded-command models"};
    app.require_subcommand(1);

    std::vector<std::string> model_paths;
    NumericFlags nf;
    bool json_out = false;

    // ---- build
    auto* cmd_build = app.add_subcommand("build", "build the state space, print statistics");
    bool stats = false;
    std::string model_name = "model";
    std::string export_prefix;
    cmd_build->add_option("model", model_paths, "model file(s), merged in order")->required();
    cmd_build->add_flag("--stats", stats, "print Model,States,Transitions table");
    cmd_build->add_option("--name", model_name, "model name for the statistics table");
    cmd_build->add_option("--export-prefix", export_prefix,
                          "write <prefix>.tra/.sta/.lab explicit-chain files");
    add_numeric_flags(cmd_build, nf);

    // ---- check
    auto* cmd_check = app.add_subcommand("check", "evaluate CSL / reward properties");
    std::string property, property_file;
    bool all_states = false;
    cmd_check->add_option("model", model_paths, "model file(s), merged in order")->required();
    cmd_check->add_option("-p,--property", property, "property formula");
    cmd_check->add_option("--props", property_file, "property file (one formula per line)");
    cmd_check->add_flag("--json", json_out, "emit structured results on stdout");
    cmd_check->add_flag("--all-states", all_states, "include per-state values in JSON output");
    add_numeric_flags(cmd_check, nf);

    // ---- sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "transient sweep over a time grid");
    std::string expr, query_template, times_spec, output, spec_path;
    std::vector<std::string> variant_specs;
    cmd_sweep->add_option("model", model_paths, "model file(s), merged in order");
    cmd_sweep->add_option("--expr", expr, "state expression; runs P=?[F[t,t] expr]");
    cmd_sweep->add_option("--query", query_template, "full property template with $t");
    cmd_sweep->add_option("--times", times_spec, "grid: start:stop:step or comma list");
    cmd_sweep->add_option("--variant", variant_specs,
                          "named variant, e.g. name=SHP2Mutant,remove-reaction=7");
    cmd_sweep->add_option("--spec", spec_path, "experiment spec file (CLI flags override)");
    cmd_sweep->add_option("-o,--output", output, "CSV output path (default stdout)");
    add_numeric_flags(cmd_sweep, nf);

    // ---- steady
    auto* cmd_steady = app.add_subcommand("steady", "steady-state probability table");
    std::string molecules_csv, json_output;
    cmd_steady->add_option("model", model_paths, "model file(s), merged in order")->required();
    cmd_steady->add_option("--molecules", molecules_csv,
                           "comma list of molecules (default: every variable)");
    cmd_steady->add_option("-o,--output", output, "CSV output path (default stdout)");
    cmd_steady->add_option("--json-output", json_output, "full-precision JSON output path");
    add_numeric_flags(cmd_steady, nf);

    // ---- rewards
    auto* cmd_rewards = app.add_subcommand("rewards", "cumulative reward curves over a grid");
    std::string blocks_csv;
    cmd_rewards->add_option("model", model_paths, "model file(s), merged in order")->required();
    cmd_rewards->add_option("--blocks", blocks_csv, "comma list of reward blocks (default: all)");
    cmd_rewards->add_option("--times", times_spec, "grid: start:stop:step or comma list")
        ->required();
    cmd_rewards->add_option("-o,--output", output, "CSV output path (default stdout)");
    add_numeric_flags(cmd_rewards, nf);

    // ---- knockout-scan
    auto* cmd_scan = app.add_subcommand("knockout-scan",
                                        "steady-state scatter over single-reaction knockouts");
    std::string formula_a, formula_b;
    cmd_scan->add_option("model", model_paths, "model file(s), merged in order")->required();
    cmd_scan->add_option("--formula-a", formula_a, "first expression, e.g. Akt=1")->required();
    cmd_scan->add_option("--formula-b", formula_b, "second expression, e.g. MEK12=1")->required();
    cmd_scan->add_option("-o,--output", output, "CSV output path (default stdout)");
    add_numeric_flags(cmd_scan, nf);

    // ---- simulate
    auto* cmd_sim = app.add_subcommand("simulate", "Gillespie trajectory / transient estimate");
    std::uint64_t seed = 1, runs = 0;
    double horizon = 10.0, at_time = -1.0;
    std::string sim_expr;
    cmd_sim->add_option("model", model_paths, "model file(s), merged in order")->required();
    cmd_sim->add_option("--seed", seed, "RNG seed")->capture_default_str();
    cmd_sim->add_option("--horizon", horizon, "simulated time horizon")->capture_default_str();
    cmd_sim->add_option("--runs", runs, "Monte-Carlo runs (with --expr/--time)");
    cmd_sim->add_option("--expr", sim_expr, "expression for the transient estimate");
    cmd_sim->add_option("--time", at_time, "time instant for the transient estimate");
    cmd_sim->add_option("-o,--output", output, "trajectory CSV path (default stdout)");
    cmd_sim->add_flag("--json", json_out, "emit structured results on stdout");
    add_numeric_flags(cmd_sim, nf);

    // ---- export
    auto* cmd_export = app.add_subcommand("export", "write .tra/.sta/.lab explicit-chain files");
    std::string prefix;
    cmd_export->add_option("model", model_paths, "model file(s), merged in order")->required();
    cmd_export->add_option("-o,--output", prefix, "output prefix")->required();
    add_numeric_flags(cmd_export, nf);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_build) {
            ctmc::ModelAst ast = load_model(model_paths);
            ctmc::Ctmc chain = ctmc::build_state_space(ast, nf.build_options());
            if (!export_prefix.empty()) {
                ctmc::export_tra(chain, export_prefix + ".tra");
                ctmc::export_sta(chain, export_prefix + ".sta");
                ctmc::export_lab(chain, export_prefix + ".lab");
            }
            if (stats) {
                ctmc::CsvWriter w;
                w.row({"Model", "States", "Transitions"});
                w.row({model_name, std::to_string(chain.n_states),
                       std::to_string(chain.transition_count())});
                std::cout << w.str();
            } else {
                std::cout << "states: " << chain.n_states
                          << "\ntransitions: " << chain.transition_count()
                          << "\ndeadlocks: " << chain.deadlocks.size() << "\n";
            }
            if (!chain.deadlocks.empty())
                std::cerr << "note: " << chain.deadlocks.size()
                          << " absorbing state(s) with exit rate 0\n";
            return 0;
        }

        if (*cmd_check) {
            if (property.empty() == property_file.empty())
                throw ctmc::IoError("check needs exactly one of -p or --props");
            ctmc::ModelAst ast = load_model(model_paths);
            ctmc::Ctmc chain = ctmc::build_state_space(ast, nf.build_options());
            ctmc::Checker checker(chain, nf.config());

            std::vector<ctmc::FormulaPtr> formulas;
            if (!property.empty()) {
                formulas.push_back(ctmc::parse_property(property, &ast));
            } else {
                formulas = ctmc::parse_property_file(slurp(property_file), &ast, property_file);
            }
            json results = json::array();
            for (const auto& f : formulas) {
                ctmc::CheckResult r = checker.check(*f);
                std::string text = ctmc::print_formula(*f);
                if (json_out) {
                    json j = result_json(text, r);
                    if (all_states && !r.all_values.empty()) {
                        json vals = json::array();
                        for (std::size_t s = 0; s < r.all_values.size(); ++s) {
                            if (!r.all_infinite.empty() && r.all_infinite[s]) vals.push_back("inf");
                            else vals.push_back(r.all_values[s]);
                        }
                        j["state_values"] = std::move(vals);
                    }
                    results.push_back(std::move(j));
                } else {
                    print_result_text(text, r);
                }
            }
            if (json_out) std::cout << results.dump(2) << "\n";
            return 0;
        }

        if (*cmd_sweep) {
            ctmc::ExperimentSpec spec;
            if (!spec_path.empty()) spec = ctmc::parse_experiment_spec(slurp(spec_path), spec_path);
            if (!model_paths.empty()) spec.model_paths = model_paths;
            if (!expr.empty()) spec.expr = expr;
            if (!query_template.empty()) spec.query_template = query_template;
            if (!times_spec.empty()) spec.times = ctmc::parse_time_grid(times_spec);
            if (!variant_specs.empty()) spec.variants = parse_variant_options(variant_specs);
            if (!output.empty()) spec.output = output;
            if (spec.model_paths.empty()) throw ctmc::IoError("sweep needs a model");
            if (spec.times.empty()) throw ctmc::IoError("sweep needs a time grid");
            if (spec.expr.empty() && spec.query_template.empty())
                throw ctmc::IoError("sweep needs --expr or --query");

            ctmc::ModelAst ast = load_model(spec.model_paths);
            std::vector<ctmc::NamedVariant> variants = spec.variants;
            variants.insert(variants.begin(), {"wildtype", {}});
            ctmc::SweepResult res =
                spec.query_template.empty()
                    ? ctmc::sweep_transient(ast, variants, spec.expr, spec.times, nf.config())
                    : ctmc::sweep_query(ast, variants, spec.query_template, spec.times,
                                        nf.config());
            emit(res.csv(), spec.output);
            return 0;
        }

        if (*cmd_steady) {
            ctmc::ModelAst ast = load_model(model_paths);
            std::vector<std::string> molecules;
            if (!molecules_csv.empty()) {
                std::istringstream is(molecules_csv);
                std::string m;
                while (std::getline(is, m, ',')) molecules.push_back(m);
            } else {
                for (const auto& mod : ast.modules)
                    for (const auto& v : mod.variables) molecules.push_back(v.name);
            }
            ctmc::SteadyTable table = ctmc::steady_state_table(ast, molecules, nf.config());
            emit(table.csv(), output);
            if (!json_output.empty()) spit(json_output, table.json() + "\n");
            return 0;
        }

        if (*cmd_rewards) {
            ctmc::ModelAst ast = load_model(model_paths);
            std::vector<std::string> blocks;
            if (!blocks_csv.empty()) {
                std::istringstream is(blocks_csv);
                std::string b;
                while (std::getline(is, b, ',')) blocks.push_back(b);
            } else {
                for (const auto& r : ast.rewards) blocks.push_back(r.name);
            }
            ctmc::RewardCurves rc =
                ctmc::reward_curves(ast, blocks, ctmc::parse_time_grid(times_spec), nf.config());
            emit(rc.csv(), output);
            return 0;
        }

        if (*cmd_scan) {
            ctmc::ModelAst ast = load_model(model_paths);
            ctmc::KnockoutScan scan = ctmc::knockout_scan(ast, formula_a, formula_b, nf.config());
            emit(scan.csv(), output);
            return 0;
        }

        if (*cmd_sim) {
            ctmc::ModelAst ast = load_model(model_paths);
            ctmc::Ctmc chain = ctmc::build_state_space(ast, nf.build_options());
            if (runs > 0) {
                if (sim_expr.empty() || at_time < 0.0)
                    throw ctmc::IoError("transient estimate needs --expr and --time");
                ctmc::FormulaPtr f = ctmc::parse_property(sim_expr, &ast);
                if (f->kind != ctmc::FormulaKind::Atom)
                    throw ctmc::IoError("--expr must be a plain state expression");
                ctmc::TransientEstimate est =
                    ctmc::estimate_transient(chain, *f->atom, at_time, runs, seed);
                if (json_out) {
                    json j;
                    j["estimate"] = est.estimate;
                    j["half_width_95"] = est.half_width_95;
                    j["runs"] = est.runs;
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << "estimate " << ctmc::CsvWriter::number(est.estimate) << " +/- "
                              << ctmc::CsvWriter::number(est.half_width_95) << " (95% CI, "
                              << est.runs << " runs)\n";
                }
                return 0;
            }
            ctmc::Trajectory traj = ctmc::simulate(chain, seed, horizon);
            ctmc::CsvWriter w;
            std::vector<std::string> header{"time", "stateIndex"};
            for (const auto& v : chain.vars) header.push_back(v.name);
            w.row(header);
            double t = 0.0;
            for (const auto& seg : traj.segments) {
                std::vector<std::string> row{ctmc::CsvWriter::number(t),
                                             std::to_string(seg.state)};
                for (std::int32_t x : chain.state(seg.state))
                    row.push_back(std::to_string(x));
                w.row(row);
                t += seg.sojourn;
            }
            emit(w.str(), output);
            return 0;
        }

        if (*cmd_export) {
            ctmc::ModelAst ast = load_model(model_paths);
            ctmc::Ctmc chain = ctmc::build_state_space(ast, nf.build_options());
            ctmc::export_tra(chain, prefix + ".tra");
            ctmc::export_sta(chain, prefix + ".sta");
            ctmc::export_lab(chain, prefix + ".lab");
            std::cout << "wrote " << prefix << ".tra/.sta/.lab (" << chain.n_states << " states, "
                      << chain.transition_count() << " transitions)\n";
            return 0;
        }
    } catch (const ctmc::Error& e) {
        std::cerr << "ctmc-check: error [" << ctmc::error_class_name(e.error_class()) << "] "
                  << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ctmc-check: error [internal] " << e.what() << "\n";
        return 1;
    }
    return 0;
}
