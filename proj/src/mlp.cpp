#include "wavecast/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "wavecast/error.hpp"
#include "wavecast/simd.hpp"

namespace wavecast {

void MlpConfig::validate() const {
    if (n_input < 1) throw ParameterError("MLP needs at least one input node");
    if (n_hidden < 1) throw ParameterError("MLP needs at least one hidden node");
    if (max_epochs < 1) throw ParameterError("MLP max_epochs must be positive");
    if (!(target_mse >= 0.0)) throw ParameterError("MLP target_mse must be non-negative");
}

MlpModel MlpModel::zeros(int n_input, int n_hidden) {
    MlpModel m;
    m.n_input = n_input;
    m.n_hidden = n_hidden;
    const auto v = static_cast<std::size_t>(n_input);
    const auto u = static_cast<std::size_t>(n_hidden);
    m.hidden_weights.assign(u * v, 0.0);
    m.hidden_bias.assign(u, 0.0);
    m.output_weights.assign(u, 0.0);
    return m;
}

std::size_t MlpModel::parameter_count() const {
    return hidden_weights.size() + hidden_bias.size() + output_weights.size() + 1;
}

std::vector<double> MlpModel::flatten() const {
    std::vector<double> p;
    p.reserve(parameter_count());
    p.insert(p.end(), hidden_weights.begin(), hidden_weights.end());
    p.insert(p.end(), hidden_bias.begin(), hidden_bias.end());
    p.insert(p.end(), output_weights.begin(), output_weights.end());
    p.push_back(output_bias);
    return p;
}

void MlpModel::assign(std::span<const double> p) {
    if (p.size() != parameter_count()) throw ValidationError("MLP parameter vector size mismatch");
    auto it = p.begin();
    std::copy_n(it, hidden_weights.size(), hidden_weights.begin());
    it += static_cast<long>(hidden_weights.size());
    std::copy_n(it, hidden_bias.size(), hidden_bias.begin());
    it += static_cast<long>(hidden_bias.size());
    std::copy_n(it, output_weights.size(), output_weights.begin());
    it += static_cast<long>(output_weights.size());
    output_bias = *it;
}

void MlpModel::validate() const {
    if (n_input < 1 || n_hidden < 1) throw ValidationError("MLP dimensions must be positive");
    const auto v = static_cast<std::size_t>(n_input);
    const auto u = static_cast<std::size_t>(n_hidden);
    if (hidden_weights.size() != u * v || hidden_bias.size() != u || output_weights.size() != u) {
        throw ValidationError("MLP parameter arrays inconsistent with dimensions");
    }
    for (double w : flatten()) {
        if (!std::isfinite(w)) throw ValidationError("MLP has non-finite parameters");
    }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double mlp_forward(const MlpModel& m, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(m.n_input)) {
        throw ValidationError("MLP input has " + std::to_string(x.size()) + " values, expected " +
                              std::to_string(m.n_input));
    }
    const auto v = static_cast<std::size_t>(m.n_input);
    double y = m.output_bias;
    for (std::size_t j = 0; j < static_cast<std::size_t>(m.n_hidden); ++j) {
        double z = m.hidden_bias[j];
        for (std::size_t i = 0; i < v; ++i) z += m.hidden_weights[j * v + i] * x[i];
        y += m.output_weights[j] * sigmoid(z);
    }
    return y;
}

namespace {

struct Activations {
    std::vector<double> hidden;  ///< n_hidden x rows, unit-major
    std::vector<double> output;
};

Activations forward_batch(const MlpModel& m, std::span<const double> cols, std::size_t rows) {
    const auto v = static_cast<std::size_t>(m.n_input);
    const auto u = static_cast<std::size_t>(m.n_hidden);
    Activations act;
    act.hidden.assign(u * rows, 0.0);
    act.output.assign(rows, m.output_bias);
    for (std::size_t j = 0; j < u; ++j) {
        std::span<double> z(act.hidden.data() + j * rows, rows);
        std::fill(z.begin(), z.end(), m.hidden_bias[j]);
        for (std::size_t i = 0; i < v; ++i) {
            simd::axpy(m.hidden_weights[j * v + i], cols.subspan(i * rows, rows), z);
        }
        for (double& a : z) a = sigmoid(a);
        simd::axpy(m.output_weights[j], z, act.output);
    }
    return act;
}

void check_dims(const MlpModel& m, const RegressionDataset& data) {
    if (data.n_features != static_cast<std::size_t>(m.n_input)) {
        throw ValidationError("dataset has " + std::to_string(data.n_features) +
                              " features, MLP expects " + std::to_string(m.n_input));
    }
}

LossGradient loss_and_gradient_cols(const MlpModel& m, std::span<const double> cols,
                                    std::span<const double> targets) {
    const std::size_t rows = targets.size();
    const auto v = static_cast<std::size_t>(m.n_input);
    const auto u = static_cast<std::size_t>(m.n_hidden);
    const Activations act = forward_batch(m, cols, rows);

    std::vector<double> resid(rows);
    double sse = 0.0, rsum = 0.0;
    for (std::size_t t = 0; t < rows; ++t) {
        resid[t] = act.output[t] - targets[t];
        sse += resid[t] * resid[t];
        rsum += resid[t];
    }

    LossGradient out;
    out.loss = 0.5 * sse;
    out.gradient = MlpModel::zeros(m.n_input, m.n_hidden);
    out.gradient.output_bias = rsum;
    std::vector<double> delta(rows);
    for (std::size_t j = 0; j < u; ++j) {
        std::span<const double> a(act.hidden.data() + j * rows, rows);
        out.gradient.output_weights[j] = simd::dot(resid, a);
        double dsum = 0.0;
        for (std::size_t t = 0; t < rows; ++t) {
            delta[t] = resid[t] * m.output_weights[j] * a[t] * (1.0 - a[t]);
            dsum += delta[t];
        }
        out.gradient.hidden_bias[j] = dsum;
        for (std::size_t i = 0; i < v; ++i) {
            out.gradient.hidden_weights[j * v + i] = simd::dot(delta, cols.subspan(i * rows, rows));
        }
    }
    return out;
}

}  // namespace

std::vector<double> mlp_predict(const MlpModel& m, const RegressionDataset& data) {
    check_dims(m, data);
    const auto cols = data.columns();
    return forward_batch(m, cols, data.rows()).output;
}

LossGradient mlp_loss_and_gradient(const MlpModel& m, const RegressionDataset& data) {
    check_dims(m, data);
    if (data.rows() == 0) throw LengthError("loss over an empty dataset");
    const auto cols = data.columns();
    return loss_and_gradient_cols(m, cols, data.targets);
}

RpropState::RpropState(std::size_t n_params, RpropParams params)
    : params_(params), delta_(n_params, params.delta_init), prev_gradient_(n_params, 0.0) {}

void RpropState::step(std::span<double> w, std::span<const double> g) {
    if (w.size() != delta_.size() || g.size() != delta_.size()) {
        throw ValidationError("RPROP: parameter count changed between steps");
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        double grad = g[k];
        const double sign_product = prev_gradient_[k] * grad;
        if (sign_product > 0.0) {
            delta_[k] = std::min(delta_[k] * params_.eta_plus, params_.delta_max);
        } else if (sign_product < 0.0) {
            delta_[k] = std::max(delta_[k] * params_.eta_minus, params_.delta_min);
            grad = 0.0;
        }
        if (grad > 0.0) {
            w[k] -= delta_[k];
        } else if (grad < 0.0) {
            w[k] += delta_[k];
        }
        prev_gradient_[k] = grad;
    }
}

MlpModel mlp_init(const MlpConfig& cfg) {
    cfg.validate();
    MlpModel m = MlpModel::zeros(cfg.n_input, cfg.n_hidden);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    auto params = m.flatten();
    for (double& p : params) p = unif(rng);
    m.assign(params);
    return m;
}

MlpFit mlp_train_rprop(const MlpConfig& cfg, const RegressionDataset& data) {
    cfg.validate();
    data.validate();
    if (data.rows() == 0) throw LengthError("MLP training on an empty dataset");
    if (data.n_features != static_cast<std::size_t>(cfg.n_input)) {
        throw ValidationError("MLP config expects " + std::to_string(cfg.n_input) +
                              " inputs, dataset has " + std::to_string(data.n_features));
    }

    MlpFit fit;
    fit.model = mlp_init(cfg);
    const auto cols = data.columns();
    const auto n = static_cast<double>(data.rows());
    auto params = fit.model.flatten();
    RpropState rprop(params.size());

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        const LossGradient lg = loss_and_gradient_cols(fit.model, cols, data.targets);
        if (!std::isfinite(lg.loss)) {
            throw DivergenceError("RPROP training diverged at epoch " + std::to_string(epoch),
                                  epoch);
        }
        fit.loss_history.push_back(lg.loss);
        fit.train_mse = 2.0 * lg.loss / n;
        fit.epochs_run = epoch;
        if (fit.train_mse <= cfg.target_mse) return fit;
        rprop.step(params, lg.gradient.flatten());
        fit.model.assign(params);
        fit.epochs_run = epoch + 1;
    }
    const LossGradient final_lg = loss_and_gradient_cols(fit.model, cols, data.targets);
    if (!std::isfinite(final_lg.loss)) {
        throw DivergenceError("RPROP training diverged after the last epoch", cfg.max_epochs);
    }
    fit.train_mse = 2.0 * final_lg.loss / n;
    return fit;
}

}  // namespace wavecast
