// Command-line front end: evaluate nets, export weight enumerators, run seeded
// searches, integration experiments and closed-form bounds. All output that is
// meant for diffing is JSON with a fixed key order; every random quantity is
// derived from --seed.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wafomlab/enumerator.hpp"
#include "wafomlab/netgen.hpp"
#include "wafomlab/qmc.hpp"
#include "wafomlab/search.hpp"
#include "wafomlab/serialize.hpp"
#include "wafomlab/wafom.hpp"

namespace {

using wafomlab::GroupSpec;
using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

GroupSpec parse_moduli(const std::string& list) {
    std::vector<std::uint32_t> moduli;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t pos = list.find(',', start);
        const std::string tok = list.substr(start, pos == std::string::npos ? pos : pos - start);
        try {
            const unsigned long v = std::stoul(tok);
            moduli.push_back(std::uint32_t(v));
        } catch (const std::exception&) {
            throw wafomlab::parse_error("bad modulus '" + tok + "' in --moduli");
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return GroupSpec(moduli);
}

void print_report_text(const wafomlab::WafomReport& r) {
    std::cout << "base " << r.base << '\n'
              << "moduli " << r.moduli << '\n'
              << "s " << r.s << '\n'
              << "n " << r.n << '\n'
              << "points " << r.num_points << '\n'
              << "log_num_points " << r.log_num_points << '\n'
              << "wafom " << fmt_double(r.wafom) << '\n';
    std::cout << "wafom_log_b "
              << (r.wafom_log_b ? fmt_double(*r.wafom_log_b) : std::string("-inf")) << '\n';
    std::cout << "method " << r.method << '\n';
    if (r.wafom_exact_str) std::cout << "wafom_exact " << *r.wafom_exact_str << '\n';
    if (r.min_weight_computed) {
        std::cout << "min_weight "
                  << (r.min_weight_infinite ? std::string("infinite")
                                            : std::to_string(*r.min_weight))
                  << '\n';
    }
    if (r.lower_bound) std::cout << "lower_bound " << fmt_double(*r.lower_bound) << '\n';
    if (r.existence_bound_value) {
        std::cout << "existence_bound " << fmt_double(*r.existence_bound_value) << '\n';
    }
}

struct CommonState {
    unsigned threads = 1;
};

int cmd_eval(const std::string& net_path, bool exact, bool min_weight, bool json,
             unsigned threads) {
    const wafomlab::GeneratorSet gens = wafomlab::parse_net_file(net_path);
    const wafomlab::PointGroup p = wafomlab::span(gens);
    wafomlab::ReportOptions opts;
    opts.exact = exact;
    opts.with_min_weight = min_weight;
    opts.threads = threads;
    const wafomlab::WafomReport report = wafomlab::evaluate(p, opts);
    if (json) {
        std::cout << wafomlab::to_json_string(report) << '\n';
    } else {
        print_report_text(report);
    }
    return 0;
}

int cmd_enumerate(const std::string& net_path, std::optional<std::uint64_t> truncate,
                  unsigned threads) {
    const wafomlab::GeneratorSet gens = wafomlab::parse_net_file(net_path);
    const wafomlab::PointGroup p = wafomlab::span(gens);
    const auto we = wafomlab::weight_enumerator(p, truncate, threads);
    wafomlab::write_enumerator(std::cout, we);
    return 0;
}

int cmd_search(const std::string& moduli, std::uint32_t s, std::uint32_t n, std::uint32_t d,
               std::uint32_t trials, std::uint64_t seed, const std::string& objective,
               std::optional<std::uint64_t> target, unsigned threads) {
    wafomlab::SearchConfig cfg;
    cfg.group = parse_moduli(moduli);
    cfg.s = s;
    cfg.n = n;
    cfg.d = d;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.target_min_weight = target;
    if (objective == "min-wafom") {
        cfg.objective = wafomlab::SearchObjective::min_wafom;
    } else if (objective == "max-min-weight") {
        cfg.objective = wafomlab::SearchObjective::max_min_weight;
    } else {
        throw wafomlab::error("unknown objective '" + objective +
                              "' (expected min-wafom or max-min-weight)");
    }
    const auto result = wafomlab::run_search(cfg);
    std::cout << wafomlab::to_json_string(result) << '\n';
    return 0;
}

int cmd_integrate(const std::string& net_path, const std::string& function, double gamma,
                  unsigned threads) {
    const wafomlab::GeneratorSet gens = wafomlab::parse_net_file(net_path);
    const wafomlab::PointGroup p = wafomlab::span(gens);
    const auto f = wafomlab::make_test_function(function, p.rows(), gamma);
    wafomlab::QmcRecord record;
    record.result = wafomlab::discretized_qmc(p, f, threads);
    record.function_name = function;
    if (function == "prod_centered") record.gamma = gamma;
    record.moduli = p.spec().to_string();
    record.s = p.rows();
    record.n = p.cols();
    record.num_points = p.order();
    record.net_source = net_path;
    std::cout << wafomlab::to_json_string(record) << '\n';
    return 0;
}

int cmd_bounds(const std::string& moduli, std::uint32_t s, std::uint32_t d, double c,
               std::optional<double> C, std::optional<std::uint32_t> n,
               std::optional<std::uint64_t> target) {
    const GroupSpec group = parse_moduli(moduli);
    const std::uint64_t b = group.order();
    const std::uint64_t p_b = group.smallest_prime_factor();
    const double alpha = wafomlab::alpha_of(b);

    wafomlab::BoundParams params;
    params.c = c;
    params.C = C;
    params.validate(b);

    ordered_json j;
    j["moduli"] = group.to_string();
    j["base"] = b;
    j["p_b"] = p_b;
    j["alpha"] = alpha;
    j["s"] = s;
    j["d"] = d;
    j["c"] = c;
    j["min_weight_bound"] = wafomlab::min_weight_ceiling(s, d);
    j["lower_bound_unconditional"] = wafomlab::wafom_lower_bound_unconditional(b, s, d);

    if (C) {
        // An explicitly requested constant must be admissible; let the
        // precondition error propagate otherwise.
        j["C"] = *C;
        j["lower_bound"] = wafomlab::wafom_lower_bound(b, s, d, *C);
    } else {
        j["C"] = nullptr;
        j["lower_bound"] = nullptr;
    }

    const double logb = std::log(double(b));
    const double existence_d_min = (1 + c) * double(b - 1) * s / (alpha * logb);
    j["existence_d_min"] = existence_d_min;
    if (double(d) >= existence_d_min) {
        j["existence_bound"] = wafomlab::existence_bound(b, p_b, s, d, alpha, c);
    } else {
        j["existence_bound"] = nullptr;
    }

    try {
        const auto w = wafomlab::order_window(b, s, d);
        j["order_window"] = {{"D", w.D},
                             {"E", w.E},
                             {"c", w.c},
                             {"C", w.C},
                             {"lower_exponent", w.lower_exponent},
                             {"upper_exponent", w.upper_exponent}};
    } catch (const wafomlab::precondition_error&) {
        j["order_window"] = nullptr;
    }

    if (n && target) {
        j["success_bound"] =
            wafomlab::success_probability_bound(b, p_b, s, *n, d, *target);
    } else {
        j["success_bound"] = nullptr;
    }

    std::cout << j.dump() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital net construction, WAFOM evaluation and search"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads for reductions")
        ->envname("WAFOMLAB_THREADS")
        ->check(CLI::Range(1u, 1024u));

    // eval
    std::string eval_net;
    bool eval_exact = false, eval_min_weight = false, eval_json = false;
    auto* eval = app.add_subcommand("eval", "evaluate WAFOM of a net file");
    eval->add_option("--net", eval_net, "net file")->required();
    eval->add_flag("--exact", eval_exact, "exact rational WAFOM");
    eval->add_flag("--min-weight", eval_min_weight, "also compute the minimum dual Dick weight");
    eval->add_flag("--json", eval_json, "JSON output");

    // enumerate
    std::string enum_net;
    std::int64_t enum_truncate = -1;
    auto* enumerate = app.add_subcommand("enumerate", "dual weight enumerator of a net file");
    enumerate->add_option("--net", enum_net, "net file")->required();
    enumerate->add_option("--truncate", enum_truncate, "highest degree to print");

    // search
    std::string search_moduli, search_objective = "min-wafom";
    std::uint32_t search_s = 1, search_n = 1, search_d = 1, search_trials = 1;
    std::uint64_t search_seed = 0;
    std::int64_t search_target = -1;
    auto* search = app.add_subcommand("search", "seeded random search for good nets");
    search->add_option("--moduli", search_moduli, "cyclic factors, e.g. 2 or 2,3")->required();
    search->add_option("--s", search_s, "dimension")->required();
    search->add_option("--n", search_n, "precision")->required();
    search->add_option("--d", search_d, "generators per trial")->required();
    search->add_option("--trials", search_trials, "number of trials")->required();
    search->add_option("--seed", search_seed, "PRNG seed")->required();
    search->add_option("--objective", search_objective, "min-wafom or max-min-weight");
    search->add_option("--target-min-weight", search_target, "success threshold for min weight");

    // integrate
    std::string int_net, int_function;
    double int_gamma = 1.0;
    auto* integrate = app.add_subcommand("integrate", "discretized quadrature experiment");
    integrate->add_option("--net", int_net, "net file")->required();
    integrate->add_option("--function", int_function, "integrand name")->required();
    integrate->add_option("--gamma", int_gamma, "weight for prod_centered");

    // bounds
    std::string bounds_moduli;
    std::uint32_t bounds_s = 1, bounds_d = 1;
    double bounds_c = 1.0;
    double bounds_C = -1.0;
    bool bounds_C_set = false;
    std::int64_t bounds_n = -1, bounds_target = -1;
    auto* bounds = app.add_subcommand("bounds", "closed-form WAFOM bounds and constants");
    bounds->add_option("--moduli", bounds_moduli, "cyclic factors")->required();
    bounds->add_option("--s", bounds_s, "dimension")->required();
    bounds->add_option("--d", bounds_d, "log_b of the point count")->required();
    bounds->add_option("--c", bounds_c, "tail/existence parameter (default 1)");
    bounds->add_option("--C", bounds_C, "lower-bound constant (> 1/2)")
        ->each([&](const std::string&) { bounds_C_set = true; });
    bounds->add_option("--n", bounds_n, "precision, enables the success bound");
    bounds->add_option("--target-min-weight", bounds_target,
                       "minimum-weight target, enables the success bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) {
            return cmd_eval(eval_net, eval_exact, eval_min_weight, eval_json, threads);
        }
        if (enumerate->parsed()) {
            std::optional<std::uint64_t> trunc;
            if (enum_truncate >= 0) trunc = std::uint64_t(enum_truncate);
            return cmd_enumerate(enum_net, trunc, threads);
        }
        if (search->parsed()) {
            std::optional<std::uint64_t> target;
            if (search_target >= 0) target = std::uint64_t(search_target);
            return cmd_search(search_moduli, search_s, search_n, search_d, search_trials,
                              search_seed, search_objective, target, threads);
        }
        if (integrate->parsed()) {
            return cmd_integrate(int_net, int_function, int_gamma, threads);
        }
        if (bounds->parsed()) {
            std::optional<double> C;
            if (bounds_C_set) C = bounds_C;
            std::optional<std::uint32_t> n;
            if (bounds_n >= 0) n = std::uint32_t(bounds_n);
            std::optional<std::uint64_t> target;
            if (bounds_target >= 0) target = std::uint64_t(bounds_target);
            return cmd_bounds(bounds_moduli, bounds_s, bounds_d, bounds_c, C, n, target);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
