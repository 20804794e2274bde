#include "mvpose/standardization.hpp"

#include <cmath>

#include <json.hpp>

#include "mvpose/error.hpp"

namespace mvpose {

void StandardizationStats::validate() const {
    for (std::size_t i = 0; i < 7; ++i) {
        if (!std::isfinite(mean[i]) || !std::isfinite(std[i]) || !(std[i] > 0.0)) {
            throw Error(ErrorCode::InvalidArgument,
                        "standardization component " + std::to_string(i) + " has std " + std::to_string(std[i]));
        }
    }
}

StandardizationStats StandardizationStats::from_samples(std::span<const ParamVector> samples) {
    if (samples.empty()) throw Error(ErrorCode::EmptyInput, "no samples for standardization stats");
    StandardizationStats stats;
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < 7; ++i) {
        double sum = 0.0;
        for (const auto& s : samples) sum += s[i];
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto& s : samples) ss += (s[i] - mean) * (s[i] - mean);
        stats.mean[i] = mean;
        stats.std[i] = std::sqrt(ss / n);
    }
    stats.validate();
    return stats;
}

std::string StandardizationStats::to_json() const {
    nlohmann::json j;
    j["mean"] = mean;
    j["std"] = std;
    return j.dump(2);
}

StandardizationStats StandardizationStats::from_json(const std::string& text) {
    StandardizationStats stats;
    try {
        const auto j = nlohmann::json::parse(text);
        stats.mean = j.at("mean").get<ParamVector>();
        stats.std = j.at("std").get<ParamVector>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("standardization stats: ") + e.what());
    }
    stats.validate();
    return stats;
}

ParamVector standardize(const ParamVector& raw, const StandardizationStats& stats) {
    ParamVector out{};
    for (std::size_t i = 0; i < 7; ++i) out[i] = (raw[i] - stats.mean[i]) / stats.std[i];
    return out;
}

ParamVector destandardize(const ParamVector& z, const StandardizationStats& stats) {
    ParamVector out{};
    for (std::size_t i = 0; i < 7; ++i) out[i] = z[i] * stats.std[i] + stats.mean[i];
    return out;
}

}  // namespace mvpose
