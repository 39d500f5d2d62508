#pragma once

#include <optional>
#include <string>

#include "wafomlab/qmc.hpp"
#include "wafomlab/search.hpp"
#include "wafomlab/wafom.hpp"

namespace wafomlab {

/// One integration experiment: a QmcResult plus where the net came from.
struct QmcRecord {
    QmcResult result;
    std::string function_name;
    std::optional<double> gamma;
    std::string moduli;
    std::uint32_t s = 0;
    std::uint32_t n = 0;
    std::uint64_t num_points = 1;
    std::string net_source;
    std::optional<std::uint64_t> seed;
};

/// JSON text with a fixed key order, suitable for byte-for-byte comparison
/// between runs.
std::string to_json_string(const WafomReport& report);
std::string to_json_string(const QmcRecord& record);
std::string to_json_string(const SearchResult& result);

} // namespace wafomlab
