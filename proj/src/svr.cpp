#include "wavecast/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "wavecast/error.hpp"
#include "wavecast/simd.hpp"

namespace wavecast {

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::Rbf: return "rbf";
        case KernelKind::Polynomial: return "polynomial";
        case KernelKind::Linear: return "linear";
    }
    return "rbf";
}

KernelKind parse_kernel_kind(const std::string& text) {
    if (text == "rbf") return KernelKind::Rbf;
    if (text == "polynomial" || text == "poly") return KernelKind::Polynomial;
    if (text == "linear") return KernelKind::Linear;
    throw ParameterError("unknown kernel '" + text + "'");
}

double Kernel::operator()(std::span<const double> a, std::span<const double> b) const {
    switch (kind) {
        case KernelKind::Rbf: {
            double d2 = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) d2 += (a[k] - b[k]) * (a[k] - b[k]);
            return std::exp(-gamma * d2);
        }
        case KernelKind::Polynomial: {
            double d = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) d += a[k] * b[k];
            return std::pow(gamma * d + coef0, degree);
        }
        case KernelKind::Linear: {
            double d = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) d += a[k] * b[k];
            return d;
        }
    }
    return 0.0;
}

void SvrConfig::validate() const {
    if (!(C > 0.0)) throw ParameterError("SVR: C must be positive");
    if (!(epsilon >= 0.0)) throw ParameterError("SVR: epsilon must be non-negative");
    if (kernel.kind == KernelKind::Rbf && !(kernel.gamma > 0.0)) {
        throw ParameterError("SVR: rbf gamma must be positive");
    }
    if (kernel.kind == KernelKind::Polynomial && kernel.degree < 1) {
        throw ParameterError("SVR: polynomial degree must be at least 1");
    }
    if (!(tolerance > 0.0)) throw ParameterError("SVR: tolerance must be positive");
    if (max_passes < 1) throw ParameterError("SVR: max_passes must be positive");
}

namespace {

// out[j] = k(query, ref_j) for every reference row, streaming over the
// feature-major reference columns.
void kernel_row(const Kernel& kernel, std::span<const double> query, std::span<const double> cols,
                std::size_t n_ref, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const std::size_t p = query.size();
    switch (kernel.kind) {
        case KernelKind::Rbf:
            for (std::size_t k = 0; k < p; ++k) {
                simd::add_squared_diff(cols.subspan(k * n_ref, n_ref), query[k], out);
            }
            for (double& v : out) v = std::exp(-kernel.gamma * v);
            break;
        case KernelKind::Polynomial:
            for (std::size_t k = 0; k < p; ++k) simd::axpy(query[k], cols.subspan(k * n_ref, n_ref), out);
            for (double& v : out) v = std::pow(kernel.gamma * v + kernel.coef0, kernel.degree);
            break;
        case KernelKind::Linear:
            for (std::size_t k = 0; k < p; ++k) simd::axpy(query[k], cols.subspan(k * n_ref, n_ref), out);
            break;
    }
}

}  // namespace

std::vector<double> cross_kernel(const Kernel& kernel, const RegressionDataset& query,
                                 const RegressionDataset& ref) {
    if (query.n_features != ref.n_features) throw ValidationError("kernel: feature count mismatch");
    const std::size_t nq = query.rows(), nr = ref.rows();
    const auto cols = ref.columns();
    std::vector<double> K(nq * nr);
    for (std::size_t q = 0; q < nq; ++q) {
        kernel_row(kernel, query.row(q), cols, nr, std::span<double>(K.data() + q * nr, nr));
    }
    return K;
}

std::vector<double> gram_matrix(const Kernel& kernel, const RegressionDataset& data) {
    return cross_kernel(kernel, data, data);
}

SvrFit svr_train(const SvrConfig& cfg, const RegressionDataset& data) {
    cfg.validate();
    data.validate();
    return svr_train_gram(cfg, data, gram_matrix(cfg.kernel, data));
}

namespace {

// Cholesky factor of Q_FF + ridge * I over an ordered set F of dual
// variables, kept up to date as variables enter and leave F.
class FreeSetFactor {
public:
    FreeSetFactor(std::span<const double> K, const std::vector<signed char>& y, std::size_t l,
                  double ridge)
        : K_(K), y_(y), l_(l), ridge_(ridge) {}

    const std::vector<std::size_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::size_t updates() const { return updates_; }

    void clear() {
        members_.clear();
        updates_ = 0;
    }

    /// False (and no change) when t is numerically dependent on the members.
    bool append(std::size_t t) {
        const std::size_t m = members_.size();
        reserve(m + 1);
        double* row = &L_[m * cap_];
        double d2 = q(t, t) + ridge_;
        for (std::size_t j = 0; j < m; ++j) {
            double v = q(t, members_[j]);
            const double* Lj = &L_[j * cap_];
            for (std::size_t k = 0; k < j; ++k) v -= Lj[k] * row[k];
            row[j] = v / Lj[j];
            d2 -= row[j] * row[j];
        }
        if (!(d2 > 0.5 * ridge_)) return false;
        row[m] = std::sqrt(d2);
        members_.push_back(t);
        ++updates_;
        return true;
    }

    /// Deletes row and column pos, restoring the trailing block with a rank-1 update.
    void remove(std::size_t pos) {
        const std::size_t m = members_.size();
        const std::size_t r = m - pos - 1;
        x_.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
            double* dst = &L_[(pos + i) * cap_];
            const double* src = &L_[(pos + i + 1) * cap_];
            x_[i] = src[pos];
            for (std::size_t k = 0; k < pos; ++k) dst[k] = src[k];
            for (std::size_t k = pos; k <= pos + i; ++k) dst[k] = src[k + 1];
        }
        for (std::size_t j = 0; j < r; ++j) {
            double& Ljj = L_[(pos + j) * cap_ + pos + j];
            const double rr = std::hypot(Ljj, x_[j]);
            const double c = rr / Ljj, s = x_[j] / Ljj;
            Ljj = rr;
            for (std::size_t i = j + 1; i < r; ++i) {
                double& Lij = L_[(pos + i) * cap_ + pos + j];
                Lij = (Lij + s * x_[i]) / c;
                x_[i] = c * x_[i] - s * Lij;
            }
        }
        members_.erase(members_.begin() + static_cast<long>(pos));
        ++updates_;
    }

    /// b <- (L L^T)^-1 b
    void solve(std::vector<double>& b) const {
        const std::size_t m = members_.size();
        for (std::size_t i = 0; i < m; ++i) {
            const double* Li = &L_[i * cap_];
            double v = b[i];
            for (std::size_t k = 0; k < i; ++k) v -= Li[k] * b[k];
            b[i] = v / Li[i];
        }
        for (std::size_t i = m; i-- > 0;) {
            double v = b[i];
            for (std::size_t k = i + 1; k < m; ++k) v -= L_[k * cap_ + i] * b[k];
            b[i] = v / L_[i * cap_ + i];
        }
    }

private:
    double q(std::size_t s, std::size_t t) const {
        return y_[s] * y_[t] * K_[(s < l_ ? s : s - l_) * l_ + (t < l_ ? t : t - l_)];
    }

    void reserve(std::size_t m) {
        if (m <= cap_) return;
        std::size_t cap = std::max<std::size_t>(cap_ * 2, 32);
        while (cap < m) cap *= 2;
        std::vector<double> grown(cap * cap, 0.0);
        for (std::size_t i = 0; i < members_.size(); ++i) {
            std::copy_n(&L_[i * cap_], i + 1, &grown[i * cap]);
        }
        L_.swap(grown);
        cap_ = cap;
    }

    std::span<const double> K_;
    const std::vector<signed char>& y_;
    std::size_t l_;
    double ridge_;
    std::vector<std::size_t> members_;
    std::vector<double> L_;
    std::size_t cap_ = 0;
    std::vector<double> x_;
    std::size_t updates_ = 0;
};

// Moves a dual variable and folds the change into the gradient.
void move_variable(std::vector<double>& a, std::vector<double>& G, const std::vector<signed char>& y,
                   std::span<const double> K, std::size_t l, std::size_t t, double value) {
    const double delta = (value - a[t]) * y[t];
    a[t] = value;
    if (delta == 0.0) return;
    const auto Kt = K.subspan((t < l ? t : t - l) * l, l);
    simd::axpy(delta, Kt, std::span<double>(G).first(l));
    simd::axpy(-delta, Kt, std::span<double>(G).subspan(l));
}

// Newton step on the free multipliers: minimizes the dual over the face where
// the bounded ones stay fixed, then moves toward that minimizer as far as the
// box allows. The dual objective never increases.
void newton_step(std::vector<double>& a, std::vector<double>& G, const std::vector<signed char>& y,
                 std::span<const double> K, std::size_t l, double C, FreeSetFactor& factor) {
    const std::size_t n = 2 * l;
    auto is_free = [&](std::size_t t) { return a[t] > 0.0 && a[t] < C; };

    std::size_t stale = 0;
    for (std::size_t t : factor.members()) stale += !is_free(t);
    if (factor.updates() > 4 * n || stale > 8) factor.clear();
    for (std::size_t pos = factor.size(); pos-- > 0;) {
        if (!is_free(factor.members()[pos])) factor.remove(pos);
    }
    std::vector<char> member(n, 0);
    for (std::size_t t : factor.members()) member[t] = 1;
    for (std::size_t t = 0; t < n; ++t) {
        if (is_free(t) && !member[t]) factor.append(t);
    }

    const auto& F = factor.members();
    const std::size_t m = F.size();
    if (m < 2) return;
    std::vector<double> u(m), v(m);
    for (std::size_t r = 0; r < m; ++r) {
        u[r] = -G[F[r]];
        v[r] = y[F[r]];
    }
    factor.solve(u);
    factor.solve(v);
    double yu = 0.0, yv = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        yu += y[F[r]] * u[r];
        yv += y[F[r]] * v[r];
    }
    if (!(std::abs(yv) > 0.0)) return;
    const double lambda = yu / yv;
    std::vector<double> d(m);
    for (std::size_t r = 0; r < m; ++r) {
        d[r] = u[r] - lambda * v[r];
        if (!std::isfinite(d[r])) return;
    }

    double theta = 1.0;
    std::size_t blocking = m;
    for (std::size_t r = 0; r < m; ++r) {
        const double at = a[F[r]];
        const double room = d[r] > 0.0 ? (C - at) / d[r] : d[r] < 0.0 ? at / -d[r] : 1.0;
        if (room < theta) {
            theta = room;
            blocking = r;
        }
    }
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t t = F[r];
        const double value = r == blocking ? (d[r] > 0.0 ? C : 0.0)
                                           : std::clamp(a[t] + theta * d[r], 0.0, C);
        move_variable(a, G, y, K, l, t, value);
    }
}

// Dual solver. `a` holds alpha (0..l-1) then alpha* (l..2l-1); a feasible
// starting point may be passed in, and the solution is left there.
SvrFit solve_dual(const SvrConfig& cfg, const RegressionDataset& data, std::span<const double> K,
                  std::vector<double>& a) {
    const std::size_t l = data.rows();
    const std::size_t n = 2 * l;
    const double C = cfg.C;
    constexpr double kTau = 1e-12;
    std::vector<double> G(n);
    std::vector<signed char> y(n);
    for (std::size_t t = 0; t < l; ++t) {
        y[t] = 1;
        y[t + l] = -1;
        G[t] = cfg.epsilon - data.targets[t];
        G[t + l] = cfg.epsilon + data.targets[t];
    }
    for (std::size_t s = 0; s < l; ++s) {
        const double beta = a[s] - a[s + l];
        if (beta == 0.0) continue;
        const double* Ks = K.data() + s * l;
        for (std::size_t t = 0; t < l; ++t) {
            G[t] += Ks[t] * beta;
            G[t + l] -= Ks[t] * beta;
        }
    }
    auto kidx = [l](std::size_t t) { return t < l ? t : t - l; };
    auto kval = [&](std::size_t s, std::size_t t) { return K[kidx(s) * l + kidx(t)]; };
    auto at_upper = [&](std::size_t t) { return a[t] >= C; };
    auto at_lower = [&](std::size_t t) { return a[t] <= 0.0; };

    double max_diag = 0.0;
    for (std::size_t t = 0; t < l; ++t) max_diag = std::max(max_diag, K[t * l + t]);
    FreeSetFactor factor(K, y, l, 1e-10 * std::max(max_diag, 1.0));

    SvrFit fit;
    const long max_iter = static_cast<long>(cfg.max_passes) * static_cast<long>(n);
    double gap = std::numeric_limits<double>::infinity();
    long iter = 0;
    for (; iter < max_iter; ++iter) {
        // SMO alone crawls on ill-conditioned Gram matrices; interleaving
        // Newton steps on the free set lets the pair updates only sort out
        // which variables are free.
        if (iter > 0) newton_step(a, G, y, K, l, C, factor);

        // Maximal violating pair with second-order choice of j.
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (y[t] == 1 ? !at_upper(t) : !at_lower(t)) {
                const double v = -y[t] * G[t];
                if (v >= gmax) {
                    gmax = v;
                    i = t;
                }
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        std::size_t j = n;
        double best_obj = std::numeric_limits<double>::infinity();
        if (i != n) {
            const double kii = kval(i, i);
            for (std::size_t t = 0; t < n; ++t) {
                if (y[t] == 1 ? at_lower(t) : at_upper(t)) continue;
                const double yg = y[t] * G[t];
                if (yg >= gmax2) gmax2 = yg;
                const double grad_diff = gmax + yg;
                if (grad_diff > 0.0) {
                    double quad = kii + kval(t, t) - 2.0 * kval(i, t);
                    if (quad <= 0.0) quad = kTau;
                    const double obj = -(grad_diff * grad_diff) / quad;
                    if (obj <= best_obj) {
                        best_obj = obj;
                        j = t;
                    }
                }
            }
        }
        gap = gmax + gmax2;
        if (i == n || j == n || gap < cfg.tolerance) break;

        const double old_ai = a[i], old_aj = a[j];
        const double kij = kval(i, j);
        if (y[i] != y[j]) {
            // Q_ij = -k(i,j) here.
            double quad = kval(i, i) + kval(j, j) + 2.0 * (-kij);
            if (quad <= 0.0) quad = kTau;
            const double delta = (-G[i] - G[j]) / quad;
            const double diff = a[i] - a[j];
            a[i] += delta;
            a[j] += delta;
            if (diff > 0.0) {
                if (a[j] < 0.0) {
                    a[j] = 0.0;
                    a[i] = diff;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = -diff;
            }
            if (diff > 0.0) {
                if (a[i] > C) {
                    a[i] = C;
                    a[j] = C - diff;
                }
            } else if (a[j] > C) {
                a[j] = C;
                a[i] = C + diff;
            }
        } else {
            double quad = kval(i, i) + kval(j, j) - 2.0 * kij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (G[i] - G[j]) / quad;
            const double sum = a[i] + a[j];
            a[i] -= delta;
            a[j] += delta;
            if (sum > C) {
                if (a[i] > C) {
                    a[i] = C;
                    a[j] = sum - C;
                }
            } else if (a[j] < 0.0) {
                a[j] = 0.0;
                a[i] = sum;
            }
            if (sum > C) {
                if (a[j] > C) {
                    a[j] = C;
                    a[i] = sum - C;
                }
            } else if (a[i] < 0.0) {
                a[i] = 0.0;
                a[j] = sum;
            }
        }

        const double dai = (a[i] - old_ai) * y[i];
        const double daj = (a[j] - old_aj) * y[j];
        const double* Ki = K.data() + kidx(i) * l;
        const double* Kj = K.data() + kidx(j) * l;
        const std::span<double> G_alpha(G.data(), l), G_star(G.data() + l, l);
        simd::axpy(dai, {Ki, l}, G_alpha);
        simd::axpy(daj, {Kj, l}, G_alpha);
        simd::axpy(-dai, {Ki, l}, G_star);
        simd::axpy(-daj, {Kj, l}, G_star);
    }
    fit.iterations = iter;
    fit.kkt_gap = gap;
    fit.converged = gap < cfg.tolerance;
    if (!fit.converged && gap > 10.0 * cfg.tolerance) {
        throw ConvergenceError("SVR solver stopped after " + std::to_string(iter) +
                               " iterations with KKT gap " + std::to_string(gap));
    }

    // Bias from free multipliers, midpoint of the feasible interval otherwise.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    int n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * G[t];
        if (at_upper(t)) {
            if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (at_lower(t)) {
            if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    const double rho = n_free > 0 ? sum_free / n_free : (ub + lb) / 2.0;

    fit.alpha.assign(a.begin(), a.begin() + static_cast<long>(l));
    fit.alpha_star.assign(a.begin() + static_cast<long>(l), a.end());
    fit.model.kernel = cfg.kernel;
    fit.model.n_features = data.n_features;
    fit.model.bias = -rho;
    for (std::size_t t = 0; t < l; ++t) {
        const double beta = fit.alpha[t] - fit.alpha_star[t];
        if (beta != 0.0) {
            fit.model.dual_coeffs.push_back(beta);
            const auto r = data.row(t);
            fit.model.support_vectors.insert(fit.model.support_vectors.end(), r.begin(), r.end());
        }
    }
    return fit;
}

void check_gram(const SvrConfig& cfg, const RegressionDataset& data, std::span<const double> K) {
    cfg.validate();
    const std::size_t l = data.rows();
    if (l < 2) throw LengthError("SVR needs at least two training rows");
    if (K.size() != l * l) throw ValidationError("SVR: Gram matrix has the wrong size");
}

}  // namespace

SvrFit svr_train_gram(const SvrConfig& cfg, const RegressionDataset& data,
                      std::span<const double> K) {
    check_gram(cfg, data, K);
    std::vector<double> a(2 * data.rows(), 0.0);
    return solve_dual(cfg, data, K, a);
}

double svr_predict(const SvrModel& m, std::span<const double> x) {
    if (x.size() != m.n_features) throw ValidationError("SVR input dimension mismatch");
    double f = m.bias;
    for (std::size_t i = 0; i < m.n_support(); ++i) {
        std::span<const double> sv(m.support_vectors.data() + i * m.n_features, m.n_features);
        f += m.dual_coeffs[i] * m.kernel(sv, x);
    }
    return f;
}

std::vector<double> svr_predict(const SvrModel& m, const RegressionDataset& data) {
    if (data.n_features != m.n_features) throw ValidationError("SVR input dimension mismatch");
    std::vector<double> out(data.rows(), m.bias);
    if (m.n_support() == 0) return out;
    RegressionDataset svs;
    svs.n_features = m.n_features;
    svs.inputs = m.support_vectors;
    svs.targets.assign(m.n_support(), 0.0);
    const auto cols = svs.columns();
    std::vector<double> krow(m.n_support());
    for (std::size_t q = 0; q < data.rows(); ++q) {
        kernel_row(m.kernel, data.row(q), cols, m.n_support(), krow);
        out[q] += simd::dot(krow, m.dual_coeffs);
    }
    return out;
}

double svr_primal_objective(const SvrFit& fit, const SvrConfig& cfg,
                            const RegressionDataset& data) {
    const std::size_t l = data.rows();
    const auto K = gram_matrix(cfg.kernel, data);
    std::vector<double> beta(l);
    for (std::size_t t = 0; t < l; ++t) beta[t] = fit.alpha[t] - fit.alpha_star[t];
    double quad = 0.0, loss = 0.0;
    for (std::size_t s = 0; s < l; ++s) {
        double f = fit.model.bias;
        for (std::size_t t = 0; t < l; ++t) {
            quad += beta[s] * beta[t] * K[s * l + t];
            f += beta[t] * K[s * l + t];
        }
        loss += std::max(0.0, std::abs(data.targets[s] - f) - cfg.epsilon);
    }
    return 0.5 * quad + cfg.C * loss;
}

SvrGrid SvrGrid::standard() {
    SvrGrid g;
    for (int e = -3; e <= 15; e += 2) g.C.push_back(std::ldexp(1.0, e));
    for (int e = -8; e <= -1; ++e) g.epsilon.push_back(std::ldexp(1.0, e));
    for (int e = -4; e <= 2; ++e) g.gamma.push_back(std::ldexp(1.0, e));
    return g;
}

GridSearchResult svr_grid_search(const RegressionDataset& data, const SvrConfig& base,
                                 const SvrGrid& grid, double validation_fraction) {
    base.validate();
    data.validate();
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw ParameterError("validation fraction must lie in (0, 1)");
    }
    if (grid.C.empty() || grid.epsilon.empty()) throw ParameterError("empty SVR grid");
    const std::size_t n = data.rows();
    const auto n_val = static_cast<std::size_t>(std::floor(static_cast<double>(n) * validation_fraction));
    if (n_val < 1 || n - n_val < 2) {
        throw LengthError("dataset of " + std::to_string(n) + " rows too small for grid search");
    }
    const auto fit_part = data.slice(0, n - n_val);
    const auto val_part = data.slice(n - n_val, n);

    std::vector<double> gammas = grid.gamma;
    if (base.kernel.kind != KernelKind::Rbf || gammas.empty()) gammas = {base.kernel.gamma};

    GridSearchResult result;
    const GridCell* best = nullptr;
    auto better = [](const GridCell& a, const GridCell& b) {
        return std::tie(a.validation_mse, a.C, a.epsilon, a.gamma) <
               std::tie(b.validation_mse, b.C, b.epsilon, b.gamma);
    };
    result.cells.reserve(gammas.size() * grid.C.size() * grid.epsilon.size());
    for (double gamma : gammas) {
        Kernel kernel = base.kernel;
        kernel.gamma = gamma;
        const auto K = gram_matrix(kernel, fit_part);
        const auto Kv = cross_kernel(kernel, val_part, fit_part);
        for (double eps : grid.epsilon) {
            // Solutions are warm-started along increasing C: the previous
            // optimum stays feasible when the box grows.
            std::vector<double> alpha(2 * fit_part.rows(), 0.0);
            double prev_C = 0.0;
            for (double C : grid.C) {
                GridCell cell{C, eps, gamma, false, 0.0, {}};
                SvrConfig cfg = base;
                cfg.C = C;
                cfg.epsilon = eps;
                cfg.kernel = kernel;
                if (C < prev_C) std::fill(alpha.begin(), alpha.end(), 0.0);
                prev_C = C;
                try {
                    check_gram(cfg, fit_part, K);
                    const SvrFit fit = solve_dual(cfg, fit_part, K, alpha);
                    const std::size_t l = fit_part.rows();
                    double sse = 0.0;
                    for (std::size_t q = 0; q < n_val; ++q) {
                        double f = fit.model.bias;
                        for (std::size_t t = 0; t < l; ++t) {
                            f += (fit.alpha[t] - fit.alpha_star[t]) * Kv[q * l + t];
                        }
                        const double e = f - val_part.targets[q];
                        sse += e * e;
                    }
                    cell.validation_mse = sse / static_cast<double>(n_val);
                    cell.ok = std::isfinite(cell.validation_mse);
                    if (!cell.ok) cell.error = "non-finite validation error";
                } catch (const Error& e) {
                    cell.error = e.what();
                }
                result.cells.push_back(cell);
            }
        }
    }
    std::string diagnostics;
    for (const auto& cell : result.cells) {
        if (cell.ok && (best == nullptr || better(cell, *best))) best = &cell;
        if (!cell.ok) diagnostics += "\n  C=" + std::to_string(cell.C) + " eps=" +
                                     std::to_string(cell.epsilon) + " gamma=" +
                                     std::to_string(cell.gamma) + ": " + cell.error;
    }
    if (best == nullptr) throw ConvergenceError("every SVR grid cell failed:" + diagnostics);
    result.best = base;
    result.best.C = best->C;
    result.best.epsilon = best->epsilon;
    result.best.kernel.gamma = best->gamma;
    result.validation_mse = best->validation_mse;
    return result;
}

}  // namespace wavecast
