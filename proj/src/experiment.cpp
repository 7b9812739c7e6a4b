#include "ctmc/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "ctmc/build.hpp"
#include "ctmc/csv.hpp"
#include "ctmc/parser.hpp"

namespace ctmc {

void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("CTMC_CHECK_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) workers = static_cast<std::size_t>(v);
    }
    if (workers < 1) workers = 1;
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// ------------------------------------------------------------------ spec file

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            std::string t = trim(cur);
            if (!t.empty()) out.push_back(unquote(t));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(unquote(t));
    return out;
}

} // namespace

std::vector<double> parse_time_grid(const std::string& text) {
    std::vector<double> out;
    std::string body = trim(text);
    if (body.find(':') != std::string::npos) {
        std::vector<std::string> parts = split_list(body, ':');
        if (parts.size() != 3) throw IoError("time grid must be start:stop:step or a list");
        double start = std::stod(parts[0]), stop = std::stod(parts[1]), step = std::stod(parts[2]);
        if (step <= 0.0) throw IoError("time grid step must be positive");
        for (double t = start; t <= stop + 1e-9 * step; t += step) out.push_back(t);
    } else {
        for (const std::string& p : split_list(body, ','))
            out.push_back(std::stod(p));
    }
    if (out.empty()) throw IoError("empty time grid");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw IoError("time grid must be strictly increasing");
    for (double t : out)
        if (t < 0.0) throw IoError("time grid values must be non-negative");
    return out;
}

ExperimentSpec parse_experiment_spec(const std::string& text, const std::string& filename) {
    ExperimentSpec spec;
    NamedVariant* current_variant = nullptr;
    int lineno = 0;
    std::istringstream is(text);
    std::string raw;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        auto fail = [&](const std::string& msg) -> void {
            throw IoError(filename + ":" + std::to_string(lineno) + ": " + msg);
        };

        if (line == "[variant]") {
            spec.variants.push_back({});
            current_variant = &spec.variants.back();
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (current_variant) {
            if (key == "name") {
                current_variant->name = unquote(value);
                continue;
            }
            if (key == "remove-reaction") {
                current_variant->edits.push_back(VariantEdit::remove_reaction(std::stoi(value)));
                continue;
            }
            if (key == "remove-label") {
                current_variant->edits.push_back(VariantEdit::remove_label(unquote(value)));
                continue;
            }
            // fall through: top-level key after variant blocks is a mistake
            fail("unknown variant key '" + key + "'");
        }
        if (key == "mode") spec.mode = unquote(value);
        else if (key == "model") {
            for (const std::string& p : split_list(unquote(value), ' '))
                spec.model_paths.push_back(p);
        } else if (key == "times") spec.times = parse_time_grid(unquote(value));
        else if (key == "expr") spec.expr = unquote(value);
        else if (key == "query" || key == "queries") spec.query_template = unquote(value);
        else if (key == "molecules") spec.molecules = split_list(unquote(value), ',');
        else if (key == "blocks") spec.blocks = split_list(unquote(value), ',');
        else if (key == "formula-a") spec.formula_a = unquote(value);
        else if (key == "formula-b") spec.formula_b = unquote(value);
        else if (key == "output") spec.output = unquote(value);
        else if (key == "json-output") spec.json_output = unquote(value);
        else fail("unknown key '" + key + "'");
    }
    for (const auto& v : spec.variants)
        if (v.name.empty()) throw IoError(filename + ": every [variant] needs a name");
    return spec;
}

// ------------------------------------------------------------------- sweeps

namespace {

std::string format_time(double t) { return CsvWriter::number(t, "%.12g"); }

std::string substitute_time(const std::string& tmpl, double t) {
    std::string out;
    std::size_t i = 0;
    std::string ts = format_time(t);
    while (i < tmpl.size()) {
        if (tmpl.compare(i, 2, "$t") == 0) {
            out += ts;
            i += 2;
        } else {
            out += tmpl[i++];
        }
    }
    return out;
}

struct BuiltVariant {
    std::string name;
    ModelAst ast;
    Ctmc chain;
};

std::vector<BuiltVariant> build_variants(const ModelAst& base,
                                         const std::vector<NamedVariant>& variants) {
    std::vector<BuiltVariant> out(variants.size());
    std::exception_ptr first_error;
    std::mutex m;
    parallel_for_indexed(variants.size(), [&](std::size_t i) {
        try {
            out[i].name = variants[i].name;
            out[i].ast = make_variant(base, variants[i].edits);
            out[i].chain = build_state_space(out[i].ast);
        } catch (const Error& e) {
            std::lock_guard<std::mutex> lock(m);
            if (!first_error)
                first_error = std::make_exception_ptr(
                    BuildError("variant '" + variants[i].name + "': " + e.what()));
        }
    });
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

} // namespace

SweepResult sweep_query(const ModelAst& base, const std::vector<NamedVariant>& variants,
                        const std::string& query_template, const std::vector<double>& time_grid,
                        const SolverConfig& cfg) {
    std::vector<BuiltVariant> built = build_variants(base, variants);
    SweepResult res;
    res.times = time_grid;
    for (const auto& v : built) res.variant_names.push_back(v.name);
    res.values.assign(built.size(), std::vector<double>(time_grid.size(), 0.0));

    parallel_for_indexed(built.size(), [&](std::size_t vi) {
        Checker ck(built[vi].chain, cfg);
        for (std::size_t ti = 0; ti < time_grid.size(); ++ti) {
            FormulaPtr f =
                parse_property(substitute_time(query_template, time_grid[ti]), &built[vi].ast);
            CheckResult r = ck.check(*f);
            if (!r.value)
                throw QueryError("sweep query must be an '=?' form");
            res.values[vi][ti] = *r.value;
        }
    });
    return res;
}

SweepResult sweep_transient(const ModelAst& base, const std::vector<NamedVariant>& variants,
                            const std::string& expr, const std::vector<double>& time_grid,
                            const SolverConfig& cfg) {
    return sweep_query(base, variants, "P=? [ F[$t,$t] " + expr + " ]", time_grid, cfg);
}

std::string SweepResult::csv() const {
    CsvWriter w;
    std::vector<std::string> header{"time"};
    for (const auto& n : variant_names) header.push_back(n);
    w.row(header);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        std::vector<std::string> row{format_time(times[ti])};
        for (std::size_t vi = 0; vi < variant_names.size(); ++vi)
            row.push_back(CsvWriter::number(values[vi][ti]));
        w.row(row);
    }
    return w.str();
}

// -------------------------------------------------------------- steady table

SteadyTable steady_state_table(const ModelAst& model, const std::vector<std::string>& molecules,
                               const SolverConfig& cfg) {
    Ctmc chain = build_state_space(model);
    Checker ck(chain, cfg);
    SteadyTable table;
    for (const std::string& mol : molecules) {
        FormulaPtr f = parse_property("S=? [ " + mol + "=1 ]", &model);
        CheckResult r = ck.check(*f);
        table.molecules.push_back(mol);
        table.values.push_back(*r.value);
    }
    return table;
}

std::string SteadyTable::csv() const {
    CsvWriter w;
    w.row({"molecule", "probability"});
    for (std::size_t i = 0; i < molecules.size(); ++i)
        w.row({molecules[i], CsvWriter::number(values[i], "%.2f")});
    return w.str();
}

std::string SteadyTable::json() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < molecules.size(); ++i) {
        if (i) os << ",";
        os << "\"" << molecules[i] << "\":" << CsvWriter::number(values[i]);
    }
    os << "}";
    return os.str();
}

// -------------------------------------------------------------- reward curves

RewardCurves reward_curves(const ModelAst& model, const std::vector<std::string>& blocks,
                           const std::vector<double>& time_grid, const SolverConfig& cfg) {
    Ctmc chain = build_state_space(model);
    for (const auto& b : blocks) chain.reward_or_throw(b);

    RewardCurves rc;
    rc.times = time_grid;
    rc.blocks = blocks;
    rc.values.assign(blocks.size(), std::vector<double>(time_grid.size(), 0.0));
    parallel_for_indexed(blocks.size(), [&](std::size_t bi) {
        Checker ck(chain, cfg);
        for (std::size_t ti = 0; ti < time_grid.size(); ++ti) {
            FormulaPtr f = parse_property(
                "R{\"" + blocks[bi] + "\"}=? [ C<=" + format_time(time_grid[ti]) + " ]", &model);
            rc.values[bi][ti] = *ck.check(*f).value;
        }
    });
    return rc;
}

std::string RewardCurves::csv() const {
    CsvWriter w;
    std::vector<std::string> header{"time"};
    for (const auto& b : blocks) header.push_back(b);
    w.row(header);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        std::vector<std::string> row{format_time(times[ti])};
        for (std::size_t bi = 0; bi < blocks.size(); ++bi)
            row.push_back(CsvWriter::number(values[bi][ti]));
        w.row(row);
    }
    return w.str();
}

// -------------------------------------------------------------- knockout scan

namespace {

std::string classify_quadrant(double da, double db, double tol) {
    bool za = std::abs(da) <= tol, zb = std::abs(db) <= tol;
    if (za && zb) return "origin";
    if (za) return "const-a";
    if (zb) return "const-b";
    if (da < 0 && db < 0) return "area1";
    if (da < 0 && db > 0) return "area2";
    if (da > 0 && db > 0) return "area3";
    return "area4";
}

std::string reaction_display_name(const ReactionIndex& idx, int id) {
    const auto& refs = idx.reactions.at(id);
    for (const auto& r : refs)
        if (r.action) return *r.action;
    return refs.empty() ? "?" : refs.front().module;
}

} // namespace

KnockoutScan knockout_scan(const ModelAst& model, const std::string& formula_a,
                           const std::string& formula_b, const SolverConfig& cfg,
                           double quadrant_tolerance) {
    ReactionIndex idx = build_reaction_index(model);
    std::vector<int> ids = idx.ids();

    KnockoutScan scan;
    scan.rows.resize(ids.size() + 1);

    auto evaluate = [&](const ModelAst& ast, KnockoutScan::Row& row) {
        Ctmc chain = build_state_space(ast);
        Checker ck(chain, cfg);
        FormulaPtr fa = parse_property("S=? [ " + formula_a + " ]", &ast);
        FormulaPtr fb = parse_property("S=? [ " + formula_b + " ]", &ast);
        row.value_a = *ck.check(*fa).value;
        row.value_b = *ck.check(*fb).value;
    };

    // wildtype first; knockouts follow in reaction-id order
    scan.rows[0].id = "wildtype";
    scan.rows[0].removed_name = "-";
    evaluate(model, scan.rows[0]);

    parallel_for_indexed(ids.size(), [&](std::size_t i) {
        KnockoutScan::Row& row = scan.rows[i + 1];
        row.id = std::to_string(ids[i]);
        row.removed_name = reaction_display_name(idx, ids[i]);
        try {
            ModelAst variant = make_variant(model, {VariantEdit::remove_reaction(ids[i])});
            evaluate(variant, row);
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
        }
    });

    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
        KnockoutScan::Row& row = scan.rows[i];
        if (row.failed) continue;
        if (i == 0) {
            row.quadrant = "origin";
        } else {
            row.quadrant = classify_quadrant(row.value_a - scan.rows[0].value_a,
                                             row.value_b - scan.rows[0].value_b,
                                             quadrant_tolerance);
        }
    }
    return scan;
}

std::string KnockoutScan::csv() const {
    CsvWriter w;
    w.row({"reactionId", "removedName", "steadyA", "steadyB", "quadrant"});
    for (const auto& row : rows) {
        if (row.failed) {
            w.row({row.id, row.removed_name, "error", "error", row.error});
        } else {
            w.row({row.id, row.removed_name, CsvWriter::number(row.value_a),
                   CsvWriter::number(row.value_b), row.quadrant});
        }
    }
    return w.str();
}

} // namespace ctmc
