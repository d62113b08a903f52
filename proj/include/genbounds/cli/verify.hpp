#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace genbounds::cli {

struct VerifyOptions {
    std::uint64_t seed = 1;
    int count = 50;
    // Test seam: scales the average-joint total variation inside the
    // ordering suite so an injected fault is provably caught.
    double tv_fault_scale = 1.0;
};

struct PropertyResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<PropertyResult> properties;

    bool all_pass() const;
    nlohmann::ordered_json to_json() const;
};

// suite is "discrete", "gaussian" or "all"; count = 0 yields an empty
// passing report.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts);

}  // namespace genbounds::cli
