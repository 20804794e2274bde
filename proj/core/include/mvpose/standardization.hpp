#pragma once

#include <array>
#include <span>
#include <string>

namespace mvpose {

using ParamVector = std::array<double, 7>;

/// Per-component mean and standard deviation of (quaternion | untangled translation).
struct StandardizationStats {
    ParamVector mean{};
    ParamVector std{1, 1, 1, 1, 1, 1, 1};

    /// Throws Error(InvalidArgument) unless every std component is finite and > 0.
    void validate() const;

    /// Population moments of a sample pool. Throws on an empty pool or a constant component.
    static StandardizationStats from_samples(std::span<const ParamVector> samples);

    /// {"mean":[7 reals],"std":[7 reals]}
    std::string to_json() const;
    static StandardizationStats from_json(const std::string& text);

    bool operator==(const StandardizationStats&) const = default;
};

ParamVector standardize(const ParamVector& raw, const StandardizationStats& stats);
ParamVector destandardize(const ParamVector& z, const StandardizationStats& stats);

}  // namespace mvpose
