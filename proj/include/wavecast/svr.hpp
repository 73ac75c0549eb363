#pragma once

#include <span>
#include <string>
#include <vector>

#include "wavecast/dataset.hpp"

namespace wavecast {

enum class KernelKind { Rbf, Polynomial, Linear };

std::string to_string(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& text);

struct Kernel {
    KernelKind kind = KernelKind::Rbf;
    double gamma = 1.0;  ///< rbf width; polynomial scale
    int degree = 3;
    double coef0 = 1.0;

    double operator()(std::span<const double> a, std::span<const double> b) const;
};

struct SvrConfig {
    double C = 1.0;
    double epsilon = 0.1;
    Kernel kernel;
    double tolerance = 1e-3;
    /// Iteration budget is max_passes * 2n working-pair updates.
    int max_passes = 10000;

    void validate() const;
};

struct SvrModel {
    Kernel kernel;
    std::size_t n_features = 0;
    std::vector<double> support_vectors;  ///< row-major, dual_coeffs.size() rows
    std::vector<double> dual_coeffs;      ///< alpha_i - alpha_i*
    double bias = 0.0;

    std::size_t n_support() const noexcept { return dual_coeffs.size(); }
};

struct SvrFit {
    SvrModel model;
    /// Full multiplier vectors over the training rows, for invariant checks.
    std::vector<double> alpha;
    std::vector<double> alpha_star;
    double kkt_gap = 0.0;  ///< maximal violating-pair gap at exit
    long iterations = 0;
    bool converged = false;
};

/// K[i * n + j] over the rows of data.
std::vector<double> gram_matrix(const Kernel& kernel, const RegressionDataset& data);
/// K[q * n_ref + j] = k(query_q, ref_j).
std::vector<double> cross_kernel(const Kernel& kernel, const RegressionDataset& query,
                                 const RegressionDataset& ref);

/// Epsilon-SVR dual by pairwise working-set optimisation on a precomputed
/// Gram matrix. Throws ConvergenceError if the budget runs out with a gap
/// above 10x tolerance.
SvrFit svr_train(const SvrConfig& cfg, const RegressionDataset& data);
SvrFit svr_train_gram(const SvrConfig& cfg, const RegressionDataset& data,
                      std::span<const double> gram);

double svr_predict(const SvrModel& model, std::span<const double> x);
std::vector<double> svr_predict(const SvrModel& model, const RegressionDataset& data);

/// 0.5 * beta' K beta + C * sum of epsilon-insensitive training losses.
double svr_primal_objective(const SvrFit& fit, const SvrConfig& cfg,
                            const RegressionDataset& data);

struct SvrGrid {
    std::vector<double> C;
    std::vector<double> epsilon;
    std::vector<double> gamma;  ///< only swept for the rbf kernel

    /// C = 2^-3, 2^-1, ..., 2^15; epsilon = 2^-8 .. 2^-1; gamma = 2^-4 .. 2^2
    static SvrGrid standard();
};

struct GridCell {
    double C = 0.0;
    double epsilon = 0.0;
    double gamma = 0.0;
    bool ok = false;
    double validation_mse = 0.0;
    std::string error;
};

struct GridSearchResult {
    SvrConfig best;
    double validation_mse = 0.0;
    std::vector<GridCell> cells;
};

/// Fits every grid cell on the chronological head of data and scores it on
/// the tail (validation_fraction of the rows). Ties go to smaller C, then
/// smaller epsilon, then smaller gamma.
GridSearchResult svr_grid_search(const RegressionDataset& data, const SvrConfig& base,
                                 const SvrGrid& grid, double validation_fraction = 0.2);

}  // namespace wavecast
