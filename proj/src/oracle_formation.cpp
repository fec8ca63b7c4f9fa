#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "sqc/measures.hpp"
#include "sqc/oracle.hpp"

namespace sqc {
namespace {

// Scaled eigenvectors: rho = sum_k v_k v_k^dagger.
struct Ensemble {
    Eigen::Matrix2cd vecs;  // column k is sqrt(lambda_k) e_k
};

Ensemble scaled_eigenvectors(const DensityMatrix& state) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(state.matrix());
    Ensemble ens;
    for (int k = 0; k < 2; ++k) {
        ens.vecs.col(k) = std::sqrt(std::max(0.0, solver.eigenvalues()(k))) * solver.eigenvectors().col(k);
    }
    return ens;
}

struct Problem {
    const Ensemble* ens;
    int rows;
};

// x holds an m x 2 complex matrix (re, im interleaved, row major).  Its columns
// are orthonormalized to an isometry U, and psi_i = sum_k U_ik v_k.
double decomposition_entropy(const Ensemble& ens, int rows, const double* x) {
    Eigen::MatrixXcd m(rows, 2);
    for (int i = 0; i < rows; ++i) {
        for (int k = 0; k < 2; ++k) m(i, k) = Complex(x[4 * i + 2 * k], x[4 * i + 2 * k + 1]);
    }
    Eigen::VectorXcd c0 = m.col(0);
    const double n0 = c0.norm();
    if (n0 < 1e-12) return 1.0;
    c0 /= n0;
    Eigen::VectorXcd c1 = m.col(1) - c0 * c0.dot(m.col(1));
    const double n1 = c1.norm();
    if (n1 < 1e-12) return 1.0;
    c1 /= n1;

    double total = 0.0;
    for (int i = 0; i < rows; ++i) {
        const Eigen::Vector2cd psi = std::conj(c0(i)) * ens.vecs.col(0) + std::conj(c1(i)) * ens.vecs.col(1);
        const double w = psi.squaredNorm();
        if (w < 1e-300) continue;
        total += w * binary_entropy(std::clamp(std::norm(psi(0)) / w, 0.0, 1.0));
    }
    return total;
}

double gsl_objective(const gsl_vector* v, void* params) {
    const auto* prob = static_cast<const Problem*>(params);
    return decomposition_entropy(*prob->ens, prob->rows, v->data);
}

double minimize_from(const Ensemble& ens, int rows, std::vector<double> x0) {
    constexpr int kRestarts = 4;
    constexpr int kMaxIter = 4000;
    const std::size_t n = x0.size();
    Problem prob{&ens, rows};
    gsl_multimin_function fn{&gsl_objective, n, &prob};
    gsl_multimin_fminimizer* mini = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
    gsl_vector* x = gsl_vector_alloc(n);
    gsl_vector* step = gsl_vector_alloc(n);
    double best = decomposition_entropy(ens, rows, x0.data());
    for (int restart = 0; restart < kRestarts; ++restart) {
        for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x, i, x0[i]);
        gsl_vector_set_all(step, restart == 0 ? 0.5 : 0.05);
        gsl_multimin_fminimizer_set(mini, &fn, x, step);
        for (int it = 0; it < kMaxIter; ++it) {
            if (gsl_multimin_fminimizer_iterate(mini) != GSL_SUCCESS) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(mini), 1e-10) == GSL_SUCCESS) break;
        }
        const double value = gsl_multimin_fminimizer_minimum(mini);
        if (!(value < best - 1e-14) && restart > 0) {
            best = std::min(best, value);
            break;
        }
        best = std::min(best, value);
        const gsl_vector* at = gsl_multimin_fminimizer_x(mini);
        for (std::size_t i = 0; i < n; ++i) x0[i] = gsl_vector_get(at, i);
    }
    gsl_vector_free(step);
    gsl_vector_free(x);
    gsl_multimin_fminimizer_free(mini);
    return best;
}

std::vector<double> identity_start(int rows) {
    std::vector<double> x(static_cast<std::size_t>(4 * rows), 0.0);
    x[0] = 1.0;
    x[6] = 1.0;
    return x;
}

std::vector<double> random_start(int rows, std::uint64_t seed, std::size_t job) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(job), 0xc0fu};
    std::mt19937_64 eng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(4 * rows));
    for (auto& v : x) v = gauss(eng);
    return x;
}

}  // namespace

double oracle_coherence_of_formation(const DensityMatrix& state, const SweepConfig& config, Execution exec) {
    config.validate();
    gsl_set_error_handler_off();
    const Ensemble ens = scaled_eigenvectors(state);
    const auto eig = state.eigenvalues();
    if (std::min(eig[0], eig[1]) <= kStateTol) {
        const int k = eig[0] > eig[1] ? 0 : 1;
        const Eigen::Vector2cd psi = ens.vecs.col(k);
        return binary_entropy(std::clamp(std::norm(psi(0)) / psi.squaredNorm(), 0.0, 1.0));
    }

    const std::size_t starts = std::max<std::size_t>(4, config.grid_density / 8);
    constexpr int kRowChoices[] = {2, 3, 4};
    const std::size_t jobs = 3 * starts;
    std::vector<double> results(jobs);
    auto run = [&](std::size_t job) {
        const int rows = kRowChoices[job / starts];
        const std::size_t local = job % starts;
        auto x0 = local == 0 ? identity_start(rows) : random_start(rows, config.rng_seed, job);
        results[job] = minimize_from(ens, rows, std::move(x0));
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t job = 0; job < jobs; ++job) run(job);
    } else {
        for (std::size_t job = 0; job < jobs; ++job) run(job);
    }
    return *std::min_element(results.begin(), results.end());
}

}  // namespace sqc
