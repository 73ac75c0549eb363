#include "wavecast/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "wavecast/error.hpp"

namespace wavecast {

AdfResult adf_test(std::span<const double> y, std::optional<int> lags) {
    const std::size_t n = y.size();
    if (n < kAdfMinLength) {
        throw LengthError("ADF test needs at least " + std::to_string(kAdfMinLength) +
                          " points, got " + std::to_string(n));
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw ValidationError("ADF input has non-finite values");
    }
    const int p = lags ? *lags : static_cast<int>(std::floor(std::cbrt(static_cast<double>(n - 1))));
    if (p < 0) throw ParameterError("ADF lag count must be non-negative");

    std::vector<double> dy(n - 1);
    for (std::size_t t = 1; t < n; ++t) dy[t - 1] = y[t] - y[t - 1];

    // Rows t = p+1 .. n-1 (indices into y), response dy[t-1].
    const auto up = static_cast<std::size_t>(p);
    if (n < up + 2) throw LengthError("ADF: too few observations for the lag count");
    const std::size_t rows = n - 1 - up;
    const std::size_t cols = 2 + up;
    if (rows <= cols) throw LengthError("ADF: regression has no residual degrees of freedom");

    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    Eigen::VectorXd r(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t t = i + up + 1;
        const auto ri = static_cast<Eigen::Index>(i);
        r(ri) = dy[t - 1];
        X(ri, 0) = 1.0;
        X(ri, 1) = y[t - 1];
        for (std::size_t k = 1; k <= up; ++k) X(ri, static_cast<Eigen::Index>(1 + k)) = dy[t - 1 - k];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < static_cast<Eigen::Index>(cols)) {
        throw NumericError("ADF regression matrix is rank deficient");
    }
    const Eigen::VectorXd beta = qr.solve(r);
    const Eigen::VectorXd resid = r - X * beta;
    const double s2 = resid.squaredNorm() / static_cast<double>(rows - cols);

    // Var(beta_1) = s2 * e1' (X'X)^-1 e1 = s2 * ||R^-T P' e1||^2
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols));
    e1(1) = 1.0;
    const Eigen::VectorXd pe = qr.colsPermutation().transpose() * e1;
    const auto R = qr.matrixR().topLeftCorner(static_cast<Eigen::Index>(cols),
                                              static_cast<Eigen::Index>(cols));
    const Eigen::VectorXd z = R.transpose().triangularView<Eigen::Lower>().solve(pe);
    const double se = std::sqrt(s2 * z.squaredNorm());
    if (!(se > 0.0) || !std::isfinite(se)) {
        throw NumericError("ADF: degenerate standard error on the lagged level");
    }

    AdfResult result;
    result.statistic = beta(1) / se;
    result.lags_used = p;
    result.stationary = result.statistic < result.critical_values.pct5;
    return result;
}

std::vector<double> acf(std::span<const double> s, int max_lag) {
    const std::size_t n = s.size();
    if (max_lag < 0 || 2 * static_cast<std::size_t>(max_lag) >= n) {
        throw LengthError("ACF: max lag must be below half the series length");
    }
    const double mean = sample_mean(s);
    double c0 = 0.0;
    for (double v : s) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) throw DegenerateScaleError("ACF of a constant series");

    std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
    out[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            ck += (s[t] - mean) * (s[t - static_cast<std::size_t>(k)] - mean);
        }
        out[static_cast<std::size_t>(k)] = ck / c0;
    }
    return out;
}

namespace {

// Durbin-Levinson on autocorrelations rho[0..L].
std::vector<double> durbin_levinson(const std::vector<double>& rho) {
    const std::size_t L = rho.size() - 1;
    std::vector<double> out(L);
    if (L == 0) return out;
    std::vector<double> phi(L + 1, 0.0), prev(L + 1, 0.0);
    phi[1] = rho[1];
    out[0] = rho[1];
    double v = 1.0 - rho[1] * rho[1];
    for (std::size_t k = 2; k <= L; ++k) {
        prev = phi;
        double num = rho[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        const double kk = v > 0.0 ? num / v : 0.0;
        phi[k] = kk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - kk * prev[k - j];
        v *= (1.0 - kk * kk);
        out[k - 1] = kk;
    }
    return out;
}

}  // namespace

std::vector<double> pacf(std::span<const double> s, int max_lag) {
    return durbin_levinson(acf(s, max_lag));
}

CorrelogramResult correlogram(std::span<const double> s, int max_lag) {
    CorrelogramResult r;
    r.acf = acf(s, max_lag);
    r.pacf = durbin_levinson(r.acf);
    r.band = 1.96 / std::sqrt(static_cast<double>(s.size()));
    return r;
}

int select_lag(std::span<const double> s, int max_lag) {
    if (max_lag < 1) throw ParameterError("select_lag: max lag must be at least 1");
    const auto cg = correlogram(s, max_lag);
    const auto significant = [&](int k) {
        return std::abs(cg.pacf[static_cast<std::size_t>(k)]) > cg.band;
    };
    int k = 0;
    while (k < max_lag && !significant(k)) ++k;
    if (k == max_lag) return 1;
    while (k < max_lag && significant(k)) ++k;
    return k;
}

StationarityResult difference_until_stationary(const Subseries& s, int max_d) {
    if (max_d < 0 || max_d > kMaxDiffOrder) {
        throw ParameterError("max difference order must be in [0, " +
                             std::to_string(kMaxDiffOrder) + "]");
    }
    if (s.values.size() < kAdfMinLength + static_cast<std::size_t>(max_d)) {
        throw LengthError("series '" + s.label + "' too short for ADF after " +
                          std::to_string(max_d) + " differences");
    }
    int d = 0;
    while (true) {
        auto diffed = difference(s, d);
        const AdfResult test = adf_test(diffed.series.values);
        if (test.stationary || d == max_d) {
            return StationarityResult{std::move(diffed.series), std::move(diffed.record),
                                      test.stationary, test};
        }
        ++d;
    }
}

std::string to_string(WsrtSign sign) {
    switch (sign) {
        case WsrtSign::Better: return "+";
        case WsrtSign::Same: return "=";
        case WsrtSign::Worse: return "-";
    }
    return "=";
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

WsrtResult wilcoxon_signed_rank(std::span<const double> errors_a, std::span<const double> errors_b,
                                double critical_z) {
    if (errors_a.size() != errors_b.size()) {
        throw ValidationError("WSRT: error sequences differ in length");
    }
    std::vector<double> diffs;
    for (std::size_t i = 0; i < errors_a.size(); ++i) {
        const double d = std::abs(errors_a[i]) - std::abs(errors_b[i]);
        if (!std::isfinite(d)) throw ValidationError("WSRT: non-finite error value");
        if (d != 0.0) diffs.push_back(d);
    }
    WsrtResult result;
    if (diffs.empty()) return result;
    if (diffs.size() < 6) {
        throw LengthError("WSRT needs at least 6 non-zero differences, got " +
                          std::to_string(diffs.size()));
    }

    std::vector<double> mags(diffs.size());
    std::transform(diffs.begin(), diffs.end(), mags.begin(), [](double d) { return std::abs(d); });
    const auto ranks = average_ranks(mags);
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        (diffs[i] > 0.0 ? result.w_plus : result.w_minus) += ranks[i];
    }
    const auto n = static_cast<double>(diffs.size());
    const double mean = n * (n + 1.0) / 4.0;
    const double sd = std::sqrt(n * (n + 1.0) * (2.0 * n + 1.0) / 24.0);
    result.n_used = static_cast<int>(diffs.size());
    result.z = (result.w_plus - mean) / sd;
    result.significant = std::abs(result.z) > critical_z;
    if (result.significant) result.sign = result.z < 0.0 ? WsrtSign::Better : WsrtSign::Worse;
    return result;
}

}  // namespace wavecast
