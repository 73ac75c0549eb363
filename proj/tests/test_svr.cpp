#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wavecast/error.hpp"
#include "wavecast/svr.hpp"

using namespace wavecast;
using testing::Rng;

namespace {

RegressionDataset make_data(const std::vector<double>& inputs, std::size_t features, const std::vector<double>& targets) {
    RegressionDataset d;
    d.n_features = features;
    d.inputs = inputs;
    d.targets = targets;
    return d;
}

RegressionDataset noisy_sine(Rng& rng, std::size_t n, std::size_t p) {
    std::vector<double> s(n + p);
    for (std::size_t t = 0; t < s.size(); ++t) s[t] = std::sin(0.3 * static_cast<double>(t)) + 0.05 * rng.normal();
    return make_lagged_dataset(s, static_cast<int>(p));
}

double kernel_oracle(const Kernel& k, std::span<const double> a, std::span<const double> b) {
    long double dot = 0.0L, d2 = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<long double>(a[i]) * b[i];
        d2 += static_cast<long double>(a[i] - b[i]) * (a[i] - b[i]);
    }
    switch (k.kind) {
        case KernelKind::Rbf: return static_cast<double>(std::exp(-k.gamma * d2));
        case KernelKind::Polynomial: return static_cast<double>(std::pow(k.gamma * dot + k.coef0, k.degree));
        case KernelKind::Linear: return static_cast<double>(dot);
    }
    return 0.0;
}

double predict_oracle(const SvrModel& m, std::span<const double> x) {
    long double f = m.bias;
    for (std::size_t s = 0; s < m.n_support(); ++s) {
        std::span<const double> sv(m.support_vectors.data() + s * m.n_features, m.n_features);
        f += static_cast<long double>(m.dual_coeffs[s]) * kernel_oracle(m.kernel, x, sv);
    }
    return static_cast<double>(f);
}

double validation_mse(const SvrModel& m, const RegressionDataset& val) {
    double sse = 0.0;
    for (std::size_t i = 0; i < val.rows(); ++i) {
        const double e = predict_oracle(m, val.row(i)) - val.targets[i];
        sse += e * e;
    }
    return sse / static_cast<double>(val.rows());
}

void check_invariants(const SvrFit& fit, const SvrConfig& cfg) {
    CHECK(fit.converged);
    CHECK(fit.kkt_gap <= cfg.tolerance);
    double sum_beta = 0.0;
    for (std::size_t i = 0; i < fit.alpha.size(); ++i) {
        CHECK(fit.alpha[i] >= 0.0);
        CHECK(fit.alpha_star[i] >= 0.0);
        CHECK(fit.alpha[i] <= cfg.C);
        CHECK(fit.alpha_star[i] <= cfg.C);
        CHECK(fit.alpha[i] * fit.alpha_star[i] <= cfg.tolerance * cfg.C);
        sum_beta += fit.alpha[i] - fit.alpha_star[i];
    }
    CHECK(std::abs(sum_beta) <= cfg.tolerance * cfg.C);
}

}  // namespace

TEST_SUITE("svr") {

TEST_CASE("constant targets are absorbed by the bias") {
    Rng rng(1);
    const auto d = make_data(rng.uniform_vec(40), 2, std::vector<double>(20, 3.0));
    for (double eps : {0.0, 0.1}) {
        SvrConfig cfg;
        cfg.epsilon = eps;
        const auto fit = svr_train(cfg, d);
        for (double b : fit.model.dual_coeffs) CHECK(std::abs(b) <= 1e-6);
        for (double y : svr_predict(fit.model, d)) CHECK(y == doctest::Approx(3.0).epsilon(1e-3));
        CHECK(svr_predict(fit.model, rng.uniform_vec(2)) == doctest::Approx(3.0).epsilon(1e-3));
    }
}

TEST_CASE("linear target inside the epsilon tube") {
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) {
        x.push_back(i / 49.0);
        y.push_back(2.0 * x.back());
    }
    const auto d = make_data(x, 1, y);
    SvrConfig cfg;
    cfg.kernel.kind = KernelKind::Linear;
    cfg.epsilon = 0.01;
    cfg.C = 100.0;
    const auto fit = svr_train(cfg, d);
    check_invariants(fit, cfg);
    const auto pred = svr_predict(fit.model, d);
    int interior = 0;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        CHECK(std::abs(pred[i] - y[i]) <= cfg.epsilon + 1e-2);
        // Strictly inside the tube: both multipliers vanish.
        if (std::abs(pred[i] - y[i]) < cfg.epsilon - 1e-3) {
            ++interior;
            CHECK(fit.alpha[i] == 0.0);
            CHECK(fit.alpha_star[i] == 0.0);
        }
    }
    CHECK(interior > 0);
}

TEST_CASE("kkt and multiplier invariants on random problems") {
    Rng rng(2);
    for (int rep = 0; rep < 12; ++rep) {
        const auto d = noisy_sine(rng, static_cast<std::size_t>(rng.integer(10, 80)), 3);
        SvrConfig cfg;
        cfg.C = std::ldexp(1.0, rng.integer(-3, 8));
        cfg.epsilon = std::ldexp(1.0, rng.integer(-8, -2));
        cfg.kernel.kind = rep % 3 == 0 ? KernelKind::Polynomial : KernelKind::Rbf;
        cfg.kernel.gamma = std::ldexp(1.0, rng.integer(-3, 1));
        cfg.kernel.degree = 2;
        check_invariants(svr_train(cfg, d), cfg);
    }
}

TEST_CASE("objective is within one percent of a finer solve") {
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const auto d = noisy_sine(rng, 20, 2);
        SvrConfig cfg;
        cfg.C = std::ldexp(1.0, rng.integer(-1, 6));
        cfg.epsilon = 0.05;
        SvrConfig fine = cfg;
        fine.tolerance = cfg.tolerance / 10.0;
        const double coarse_obj = svr_primal_objective(svr_train(cfg, d), cfg, d);
        const double fine_obj = svr_primal_objective(svr_train(fine, d), fine, d);
        CHECK(std::abs(coarse_obj - fine_obj) <= 0.01 * std::abs(fine_obj));
    }
}

TEST_CASE("training through a supplied gram matrix matches direct training") {
    Rng rng(4);
    const auto d = noisy_sine(rng, 40, 3);
    SvrConfig cfg;
    cfg.C = 8.0;
    const auto K = gram_matrix(cfg.kernel, d);
    const auto a = svr_train(cfg, d), b = svr_train_gram(cfg, d, K);
    CHECK(a.alpha == b.alpha);
    CHECK(a.model.bias == b.model.bias);
    CHECK_THROWS_AS(svr_train_gram(cfg, d, std::vector<double>(3, 0.0)), ValidationError);
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.rows(); ++j)
            CHECK(K[i * d.rows() + j] == doctest::Approx(kernel_oracle(cfg.kernel, d.row(i), d.row(j))).epsilon(1e-14));
}

TEST_CASE("svr training is deterministic") {
    Rng rng(5);
    const auto d = noisy_sine(rng, 60, 4);
    SvrConfig cfg;
    const auto a = svr_train(cfg, d), b = svr_train(cfg, d);
    CHECK(a.alpha == b.alpha);
    CHECK(a.alpha_star == b.alpha_star);
    CHECK(a.model.bias == b.model.bias);
}

TEST_CASE("prediction matches a brute-force kernel sum") {
    Rng rng(6);
    for (auto kind : {KernelKind::Rbf, KernelKind::Polynomial, KernelKind::Linear}) {
        const auto d = noisy_sine(rng, 50, 3);
        SvrConfig cfg;
        cfg.kernel.kind = kind;
        cfg.kernel.gamma = 0.5;
        cfg.kernel.degree = 2;
        const auto fit = svr_train(cfg, d);
        const auto query = noisy_sine(rng, 30, 3);
        const auto batch = svr_predict(fit.model, query);
        for (std::size_t i = 0; i < query.rows(); ++i) {
            const double ref = predict_oracle(fit.model, query.row(i));
            CHECK(std::abs(svr_predict(fit.model, query.row(i)) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
            CHECK(std::abs(batch[i] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("prediction examples") {
    SvrModel empty;
    empty.n_features = 2;
    empty.bias = -1.5;
    CHECK(svr_predict(empty, std::vector<double>{3.0, 4.0}) == -1.5);

    SvrModel one;
    one.kernel.kind = KernelKind::Rbf;
    one.kernel.gamma = 1.0;
    one.n_features = 1;
    one.support_vectors = {0.0, 100.0};
    one.dual_coeffs = {0.8, -0.3};
    one.bias = 0.25;
    CHECK(svr_predict(one, std::vector<double>{0.0}) == doctest::Approx(0.8 + 0.25).epsilon(1e-12));
    CHECK_THROWS_AS(svr_predict(one, std::vector<double>{0.0, 1.0}), ValidationError);
}

TEST_CASE("svr configuration errors") {
    SvrConfig cfg;
    cfg.C = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = {};
    cfg.epsilon = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = {};
    cfg.kernel.gamma = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = {};
    const auto tiny = make_data({1.0}, 1, {2.0});
    CHECK_THROWS_AS(svr_train(cfg, tiny), LengthError);
    CHECK(parse_kernel_kind("rbf") == KernelKind::Rbf);
    CHECK(to_string(KernelKind::Polynomial) == "polynomial");
    CHECK_THROWS_AS(parse_kernel_kind("sigmoid"), ParameterError);
}

TEST_CASE("exhausted budget raises a convergence error") {
    Rng rng(7);
    const auto d = noisy_sine(rng, 80, 3);
    SvrConfig cfg;
    cfg.C = 1e4;
    cfg.epsilon = 1e-4;
    cfg.tolerance = 1e-12;
    cfg.max_passes = 1;
    CHECK_THROWS_AS(svr_train(cfg, d), ConvergenceError);
}

TEST_CASE("standard grid values") {
    const auto g = SvrGrid::standard();
    REQUIRE(g.C.size() == 10);
    CHECK(g.C.front() == 0.125);
    CHECK(g.C[1] == 0.5);
    CHECK(g.C.back() == 32768.0);
    REQUIRE(g.epsilon.size() == 8);
    CHECK(g.epsilon.front() == 1.0 / 256.0);
    CHECK(g.epsilon.back() == 0.5);
    REQUIRE(g.gamma.size() == 7);
    CHECK(g.gamma.front() == 1.0 / 16.0);
    CHECK(g.gamma.back() == 4.0);
}

TEST_CASE("grid search returns the argmin of independently refitted cells") {
    Rng rng(8);
    const auto d = noisy_sine(rng, 100, 3);
    SvrGrid grid;
    grid.C = {0.125, 2.0, 32.0};
    grid.epsilon = {1.0 / 64.0, 1.0 / 8.0, 0.5};
    grid.gamma = {0.5};
    SvrConfig base;
    const auto res = svr_grid_search(d, base, grid, 0.2);
    REQUIRE(res.cells.size() == 9);

    for (const auto& cell : res.cells) {
        REQUIRE(cell.ok);
        CHECK(res.validation_mse <= cell.validation_mse);
    }
    const auto head = d.slice(0, 80), tail = d.slice(80, 100);
    double best_oracle = std::numeric_limits<double>::infinity();
    for (double C : grid.C)
        for (double eps : grid.epsilon) {
            SvrConfig cfg = base;
            cfg.C = C;
            cfg.epsilon = eps;
            cfg.kernel.gamma = 0.5;
            const double m = validation_mse(svr_train(cfg, head).model, tail);
            best_oracle = std::min(best_oracle, m);
            if (C == res.best.C && eps == res.best.epsilon) CHECK(res.validation_mse == doctest::Approx(m).epsilon(1e-3));
        }
    CHECK(res.validation_mse <= best_oracle * (1.0 + 1e-3));
}

TEST_CASE("grid search on a single cell returns it") {
    Rng rng(9);
    const auto d = noisy_sine(rng, 40, 2);
    SvrGrid grid;
    grid.C = {4.0};
    grid.epsilon = {0.125};
    grid.gamma = {0.25};
    const auto res = svr_grid_search(d, SvrConfig{}, grid);
    CHECK(res.best.C == 4.0);
    CHECK(res.best.epsilon == 0.125);
    CHECK(res.best.kernel.gamma == 0.25);
    CHECK(res.cells.size() == 1);
}

TEST_CASE("grid search on noisy linear data beats the extreme cells") {
    Rng rng(10);
    std::vector<double> s(120);
    for (std::size_t t = 0; t < s.size(); ++t) s[t] = 0.01 * static_cast<double>(t) + 0.1 * rng.normal();
    const auto d = make_lagged_dataset(s, 2);
    SvrGrid grid = SvrGrid::standard();
    grid.gamma = {0.25};
    const auto res = svr_grid_search(d, SvrConfig{}, grid);
    CHECK(std::isfinite(res.best.C));
    for (const auto& cell : res.cells) {
        if ((cell.C == 0.125 || cell.C == 32768.0) && cell.ok) {
            CHECK(res.validation_mse <= cell.validation_mse * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("grid search errors") {
    Rng rng(11);
    const auto d = noisy_sine(rng, 30, 2);
    SvrGrid grid;
    CHECK_THROWS_AS(svr_grid_search(d, SvrConfig{}, grid), ParameterError);
    grid = SvrGrid::standard();
    CHECK_THROWS_AS(svr_grid_search(d, SvrConfig{}, grid, 1.0), ParameterError);
    CHECK_THROWS_AS(svr_grid_search(d.slice(0, 2), SvrConfig{}, grid), LengthError);
    SvrConfig doomed;
    doomed.tolerance = 1e-14;
    doomed.max_passes = 1;
    grid.C = {1e4};
    grid.epsilon = {1e-5};
    grid.gamma = {4.0};
    CHECK_THROWS_AS(svr_grid_search(noisy_sine(rng, 80, 3), doomed, grid), ConvergenceError);
}

}
