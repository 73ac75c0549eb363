#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wavecast {

/// Lagged-input regression problem. Inputs are stored row-major; columns()
/// gives the feature-major copy the batch kernels stream over.
struct RegressionDataset {
    std::size_t n_features = 0;
    std::vector<double> inputs;  ///< rows() x n_features
    std::vector<double> targets;

    std::size_t rows() const noexcept { return targets.size(); }
    std::span<const double> row(std::size_t i) const {
        return {inputs.data() + i * n_features, n_features};
    }
    /// columns[k * rows() + i] == row(i)[k]
    std::vector<double> columns() const;
    /// Rows [first, last).
    RegressionDataset slice(std::size_t first, std::size_t last) const;
    void validate() const;
};

/// Row for target s[t] holds (s[t-1], ..., s[t-p]).
RegressionDataset make_lagged_dataset(std::span<const double> s, int p);

}  // namespace wavecast
