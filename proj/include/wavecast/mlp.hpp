#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wavecast/dataset.hpp"

namespace wavecast {

struct MlpConfig {
    int n_input = 1;
    int n_hidden = 10;
    int max_epochs = 2000;
    double target_mse = 1e-5;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Single hidden layer, sigmoid hidden units, linear output:
///   y = b + sum_j w_j * sigmoid(c_j + sum_i W_ji x_i)
struct MlpModel {
    int n_input = 0;
    int n_hidden = 0;
    std::vector<double> hidden_weights;  ///< n_hidden x n_input, row j is hidden unit j
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;
    double output_bias = 0.0;

    static MlpModel zeros(int n_input, int n_hidden);

    std::size_t parameter_count() const;
    /// hidden_weights, hidden_bias, output_weights, output_bias
    std::vector<double> flatten() const;
    void assign(std::span<const double> params);
    void validate() const;
};

double sigmoid(double z);

/// One sample, straight loops.
double mlp_forward(const MlpModel& model, std::span<const double> x);
/// All rows of a dataset through the SIMD column kernels.
std::vector<double> mlp_predict(const MlpModel& model, const RegressionDataset& data);

struct LossGradient {
    double loss = 0.0;  ///< 0.5 * sum of squared residuals
    MlpModel gradient;
};

LossGradient mlp_loss_and_gradient(const MlpModel& model, const RegressionDataset& data);

struct RpropParams {
    double eta_plus = 1.2;
    double eta_minus = 0.5;
    double delta_init = 0.1;
    double delta_max = 50.0;
    double delta_min = 1e-6;
};

/// Batch RPROP- with the gradient zeroed after a sign change.
class RpropState {
public:
    explicit RpropState(std::size_t n_params, RpropParams params = {});

    void step(std::span<double> weights, std::span<const double> gradient);

    std::span<const double> step_sizes() const noexcept { return delta_; }
    const RpropParams& params() const noexcept { return params_; }

private:
    RpropParams params_;
    std::vector<double> delta_;
    std::vector<double> prev_gradient_;
};

MlpModel mlp_init(const MlpConfig& cfg);

struct MlpFit {
    MlpModel model;
    int epochs_run = 0;
    double train_mse = 0.0;
    std::vector<double> loss_history;  ///< E at the start of every epoch
};

MlpFit mlp_train_rprop(const MlpConfig& cfg, const RegressionDataset& data);

}  // namespace wavecast
