#include "ctmc/ctmc.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "ctmc/bound_expr.hpp"

namespace ctmc {

double Ctmc::max_exit_rate() const {
    double m = 0.0;
    for (double e : exit_rate) m = std::max(m, e);
    return m;
}

const Ctmc::RewardData* Ctmc::find_reward(const std::string& name) const {
    for (const auto& r : rewards)
        if (r.name == name) return &r;
    return nullptr;
}

const Ctmc::RewardData& Ctmc::reward_or_throw(const std::string& name) const {
    const RewardData* r = find_reward(name);
    if (!r) throw QueryError("unknown reward block \"" + name + "\"");
    return *r;
}

std::vector<std::uint8_t> Ctmc::sat_mask(const Expr& e) const {
    BoundExpr be = BoundExpr::compile_bool(e, symbols);
    std::vector<std::uint8_t> mask(n_states);
    for (std::uint32_t s = 0; s < n_states; ++s) mask[s] = be.eval_bool(state(s)) ? 1 : 0;
    return mask;
}

std::vector<std::uint32_t> Ctmc::sat_set(const Expr& e) const {
    BoundExpr be = BoundExpr::compile_bool(e, symbols);
    std::vector<std::uint32_t> set;
    for (std::uint32_t s = 0; s < n_states; ++s)
        if (be.eval_bool(state(s))) set.push_back(s);
    return set;
}

double Ctmc::rate_between(std::uint32_t s, std::uint32_t target) const {
    const std::uint32_t* first = col.data() + row_ptr[s];
    const std::uint32_t* last = col.data() + row_ptr[s + 1];
    const std::uint32_t* it = std::lower_bound(first, last, target);
    if (it == last || *it != target) return 0.0;
    return rate[row_ptr[s] + std::size_t(it - first)];
}

double Ctmc::jump_probability(std::uint32_t s, std::uint32_t target) const {
    if (s >= n_states || target >= n_states) throw QueryError("state index out of range");
    if (exit_rate[s] <= 0.0)
        throw QueryError("jump probability undefined: state " + std::to_string(s) +
                         " is absorbing");
    return rate_between(s, target) / exit_rate[s];
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    return os;
}

} // namespace

// .tra: one line per stored transition, "src dst rate", row-major, columns
// ascending within a row.
void export_tra(const Ctmc& c, const std::string& path) {
    std::ofstream os = open_out(path);
    char buf[64];
    for (std::uint32_t s = 0; s < c.n_states; ++s) {
        for (std::uint64_t k = c.row_ptr[s]; k < c.row_ptr[s + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%.12g", c.rate[k]);
            os << s << ' ' << c.col[k] << ' ' << buf << '\n';
        }
    }
}

// .sta: header "(var1,...,varN)" then "index:(v1,...,vN)" per state.
void export_sta(const Ctmc& c, const std::string& path) {
    std::ofstream os = open_out(path);
    os << '(';
    for (std::size_t i = 0; i < c.vars.size(); ++i) {
        if (i) os << ',';
        os << c.vars[i].name;
    }
    os << ")\n";
    for (std::uint32_t s = 0; s < c.n_states; ++s) {
        os << s << ":(";
        std::span<const std::int32_t> row = c.state(s);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << ")\n";
    }
}

// .lab: label id declarations, then "state: ids" for init and deadlock states.
void export_lab(const Ctmc& c, const std::string& path) {
    std::ofstream os = open_out(path);
    os << "0=\"init\" 1=\"deadlock\"\n";
    std::vector<std::uint8_t> dead(c.n_states, 0);
    for (std::uint32_t s : c.deadlocks) dead[s] = 1;
    for (std::uint32_t s = 0; s < c.n_states; ++s) {
        bool is_init = s == c.init_index;
        if (!is_init && !dead[s]) continue;
        os << s << ':';
        if (is_init) os << " 0";
        if (dead[s]) os << " 1";
        os << '\n';
    }
}

} // namespace ctmc
