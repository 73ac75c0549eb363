#include "wavecast/dataset.hpp"

#include <cmath>
#include <string>

#include "wavecast/error.hpp"

namespace wavecast {

std::vector<double> RegressionDataset::columns() const {
    const std::size_t n = rows();
    std::vector<double> cols(n * n_features);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n_features; ++k) cols[k * n + i] = inputs[i * n_features + k];
    }
    return cols;
}

RegressionDataset RegressionDataset::slice(std::size_t first, std::size_t last) const {
    if (first > last || last > rows()) throw ValidationError("dataset slice out of range");
    RegressionDataset out;
    out.n_features = n_features;
    out.inputs.assign(inputs.begin() + static_cast<long>(first * n_features),
                      inputs.begin() + static_cast<long>(last * n_features));
    out.targets.assign(targets.begin() + static_cast<long>(first),
                       targets.begin() + static_cast<long>(last));
    return out;
}

void RegressionDataset::validate() const {
    if (n_features == 0) throw ValidationError("dataset has no features");
    if (inputs.size() != rows() * n_features) {
        throw ValidationError("dataset inputs do not match rows x features");
    }
    for (double v : inputs) {
        if (!std::isfinite(v)) throw ValidationError("dataset has non-finite inputs");
    }
    for (double v : targets) {
        if (!std::isfinite(v)) throw ValidationError("dataset has non-finite targets");
    }
}

RegressionDataset make_lagged_dataset(std::span<const double> s, int p) {
    if (p < 1) throw ParameterError("lag must be at least 1");
    const auto up = static_cast<std::size_t>(p);
    if (up >= s.size()) {
        throw LengthError("lag " + std::to_string(p) + " leaves no rows in a series of length " +
                          std::to_string(s.size()));
    }
    RegressionDataset ds;
    ds.n_features = up;
    const std::size_t n = s.size() - up;
    ds.inputs.reserve(n * up);
    ds.targets.reserve(n);
    for (std::size_t t = up; t < s.size(); ++t) {
        for (std::size_t k = 1; k <= up; ++k) ds.inputs.push_back(s[t - k]);
        ds.targets.push_back(s[t]);
    }
    return ds;
}

}  // namespace wavecast
