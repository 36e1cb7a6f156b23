#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brownflow/domains.hpp"
#include "brownflow/laurent.hpp"
#include "brownflow/rng.hpp"
#include "brownflow/types.hpp"

namespace brownflow::rmt {

enum class Kind { ginibre, wigner, unitary_bm, gl_bm, elliptic_bm };

const char* to_string(Kind k);
Kind parse_kind(const std::string& name);

struct EnsembleConfig {
    int N = 100;
    TimeParams params;
    int steps = 0;  // 0 picks the default
    std::uint64_t seed = 0;
    Kind kind = Kind::gl_bm;
    bool reunitarize = true;
    // per-step bound on the RMS eigenvalue error of U*U - I
    double unitary_step_tol = 1e-4;

    // s for the elliptic motion, t otherwise
    double total_time() const;
    int resolved_steps() const;
    void validate() const;
};

int default_steps(double total_time);

struct EigenvalueCloud {
    std::vector<Complex> values;
    EnsembleConfig config;
    std::uint64_t trial = 0;
    double wall_time = 0.0;
};

// Ginibre: iid complex entries of variance dt/N. Wigner: Hermitian with
// off-diagonal variance dt/N and real diagonal of variance dt/N.
ComplexMatrix sample_increment(Kind kind, int N, double dt, const rng::Stream& stream,
                               std::uint64_t step, std::uint32_t purpose);

// Terminal matrix of the trajectory indexed by (config.seed, trial).
ComplexMatrix simulate(const EnsembleConfig& config, std::uint64_t trial = 0);

// Newton-Schulz polar projection, repeated until the RMS error of U*U - I is
// at most tol. With trust_prediction the last check is replaced by the
// quadratic error model 0.75 e^2, which saves two products per step.
// Returns the final (or predicted) RMS error.
double reunitarize(ComplexMatrix& U, double tol, bool trust_prediction = false);
double unitarity_defect(const ComplexMatrix& U);  // ||U*U - I||_F

EigenvalueCloud eigenvalues(const ComplexMatrix& A);
std::vector<Complex> eigenvalue_list(const ComplexMatrix& A);

Complex trace_moment(const ComplexMatrix& A, int n);

struct McOptions {
    int steps = 10;  // unitary steps per sample
    int threads = 0;
};

// (1/M) sum_j p(B U_j) with independent unitary Brownian motions U_j at time t.
ComplexMatrix conditional_expectation_mc(const ComplexMatrix& B, double t, const LaurentPoly& p, int M,
                                         std::uint64_t seed, const McOptions& opt = {});

// One-parameter specs test T(lambda) <= t + margin; polygon specs accept
// points inside or within margin of the boundary.
double containment_fraction(const std::vector<Complex>& values, const domains::Domain& domain, double margin);
double containment_stats(const EigenvalueCloud& cloud, const domains::Domain& domain, double margin);

// Eigenvalue clouds of config.trials independent trajectories, run in
// parallel; the result order follows the trial index.
std::vector<EigenvalueCloud> simulate_clouds(const EnsembleConfig& config, int trials, int threads = 0);

}  // namespace brownflow::rmt
