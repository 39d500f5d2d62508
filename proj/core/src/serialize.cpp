#include "wafomlab/serialize.hpp"

#include <json.hpp>

namespace wafomlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_or_null(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json min_weight_field(bool computed, bool infinite,
                              const std::optional<std::uint64_t>& value) {
    if (!computed) return nullptr;
    if (infinite) return "infinite";
    return *value;
}

ordered_json report_json(const WafomReport& r) {
    ordered_json j;
    j["base"] = r.base;
    j["moduli"] = r.moduli;
    j["s"] = r.s;
    j["n"] = r.n;
    j["log_num_points"] = r.log_num_points;
    j["wafom"] = r.wafom;
    j["wafom_log_b"] = json_or_null(r.wafom_log_b);
    j["method"] = r.method;
    j["min_weight"] = min_weight_field(r.min_weight_computed, r.min_weight_infinite, r.min_weight);
    j["lower_bound"] = json_or_null(r.lower_bound);
    j["existence_bound"] = json_or_null(r.existence_bound_value);
    j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
    if (r.wafom_exact_str) j["wafom_exact"] = *r.wafom_exact_str;
    return j;
}

} // namespace

std::string to_json_string(const WafomReport& report) { return report_json(report).dump(); }

std::string to_json_string(const QmcRecord& record) {
    ordered_json j;
    j["function"] = record.function_name;
    j["gamma"] = json_or_null(record.gamma);
    j["moduli"] = record.moduli;
    j["s"] = record.s;
    j["n"] = record.n;
    j["num_points"] = record.num_points;
    j["net"] = record.net_source;
    j["seed"] = record.seed ? ordered_json(*record.seed) : ordered_json(nullptr);
    j["i_pn"] = record.result.i_pn;
    j["i_center"] = record.result.i_center;
    j["exact"] = record.result.exact;
    j["err_discretized"] = record.result.err_discretized;
    j["err_center"] = record.result.err_center;
    j["wafom"] = record.result.wafom;
    return j.dump();
}

std::string to_json_string(const SearchResult& result) {
    const SearchConfig& cfg = result.config;
    ordered_json j;
    j["config"] = {
        {"moduli", cfg.group.to_string()},
        {"s", cfg.s},
        {"n", cfg.n},
        {"d", cfg.d},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
        {"objective",
         cfg.objective == SearchObjective::min_wafom ? "min-wafom" : "max-min-weight"},
        {"target_min_weight", cfg.target_min_weight ? ordered_json(*cfg.target_min_weight)
                                                    : ordered_json(nullptr)},
    };
    ordered_json trials = ordered_json::array();
    for (const auto& t : result.history) {
        ordered_json entry;
        entry["trial"] = t.index;
        entry["wafom"] = t.wafom;
        if (t.min_weight_infinite) {
            entry["min_weight"] = "infinite";
        } else if (t.min_weight) {
            entry["min_weight"] = *t.min_weight;
        } else {
            entry["min_weight"] = nullptr;
        }
        trials.push_back(std::move(entry));
    }
    j["trials"] = std::move(trials);
    j["best_trial"] = result.best_index;
    j["best"] = report_json(result.best_report);
    j["best_net"] = net_file_string(result.best_generators);
    j["theorem_bound"] = json_or_null(result.theorem_bound);
    j["bound_met"] = result.bound_met ? ordered_json(*result.bound_met) : ordered_json(nullptr);
    j["success_bound"] = json_or_null(result.success_bound);
    j["success_rate"] = json_or_null(result.success_rate);
    return j.dump();
}

} // namespace wafomlab
