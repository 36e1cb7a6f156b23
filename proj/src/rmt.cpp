#include "brownflow/rmt.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "brownflow/cmaps.hpp"
#include "brownflow/parallel.hpp"

namespace brownflow::rmt {

const char* to_string(Kind k) {
    switch (k) {
        case Kind::ginibre: return "ginibre";
        case Kind::wigner: return "wigner";
        case Kind::unitary_bm: return "unitary";
        case Kind::gl_bm: return "gl";
        case Kind::elliptic_bm: return "elliptic";
    }
    return "?";
}

Kind parse_kind(const std::string& name) {
    if (name == "ginibre") return Kind::ginibre;
    if (name == "wigner") return Kind::wigner;
    if (name == "unitary" || name == "unitary_bm") return Kind::unitary_bm;
    if (name == "gl" || name == "gl_bm") return Kind::gl_bm;
    if (name == "elliptic" || name == "elliptic_bm") return Kind::elliptic_bm;
    throw ValidationError("unknown ensemble kind '" + name + "'");
}

int default_steps(double total_time) {
    return std::max(1000, 200 * static_cast<int>(std::ceil(total_time)));
}

double EnsembleConfig::total_time() const { return kind == Kind::elliptic_bm ? params.s : params.t; }

int EnsembleConfig::resolved_steps() const { return steps > 0 ? steps : default_steps(total_time()); }

void EnsembleConfig::validate() const {
    if (N < 1) throw ValidationError("N must be positive");
    if (steps < 0) throw ValidationError("steps must be positive");
    if (kind == Kind::elliptic_bm)
        params.validate();
    else if (!(params.t > 0.0) || !std::isfinite(params.t))
        throw ValidationError("t must be positive");
    if (!(unitary_step_tol > 0.0)) throw ValidationError("unitary_step_tol must be positive");
}

ComplexMatrix sample_increment(Kind kind, int N, double dt, const rng::Stream& stream, std::uint64_t step,
                               std::uint32_t purpose) {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    const auto n = static_cast<std::size_t>(N);
    std::vector<double> z(2 * n * n);
    ComplexMatrix A(N, N);
    if (kind == Kind::ginibre) {
        stream.normals(step, purpose, z.data(), 2 * n * n);
        const double sd = std::sqrt(dt / (2.0 * N));
        for (std::size_t k = 0; k < n * n; ++k) A.data()[k] = Complex(sd * z[2 * k], sd * z[2 * k + 1]);
        return A;
    }
    if (kind != Kind::wigner) throw ValidationError("increments exist for ginibre and wigner only");
    stream.normals(step, purpose, z.data(), n * n);
    const double sd_off = std::sqrt(dt / (2.0 * N));
    const double sd_diag = std::sqrt(dt / N);
    std::size_t k = 0;
    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < j; ++i) {
            const Complex v(sd_off * z[k], sd_off * z[k + 1]);
            k += 2;
            A(i, j) = v;
            A(j, i) = std::conj(v);
        }
        A(j, j) = sd_diag * z[k++];
    }
    return A;
}

double unitarity_defect(const ComplexMatrix& U) {
    ComplexMatrix G = U.adjoint() * U;
    G.diagonal().array() -= 1.0;
    return G.norm();
}

double reunitarize(ComplexMatrix& U, double tol, bool trust_prediction) {
    const double root_n = std::sqrt(static_cast<double>(U.rows()));
    ComplexMatrix G, T;
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
        G.noalias() = U.adjoint() * U;
        G.diagonal().array() -= 1.0;
        const double e = G.norm() / root_n;
        if (e <= tol) return e;
        if (!(e < 0.5)) throw StepSizeError("unitary iterate drifted too far from U(N); increase steps");
        if (e >= best) return e;  // rounding floor reached
        best = e;
        T.noalias() = U * G;
        U -= 0.5 * T;
        const double predicted = 0.75 * e * e;
        if (trust_prediction && predicted <= tol) return predicted;
    }
    return best;
}

namespace {

void check_finite(const ComplexMatrix& A, int step) {
    if (!A.allFinite()) {
        std::ostringstream os;
        os << "non-finite entries at step " << step << "; rerun with more steps";
        throw StepSizeError(os.str());
    }
}

}  // namespace

ComplexMatrix simulate(const EnsembleConfig& cfg, std::uint64_t trial) {
    cfg.validate();
    const int N = cfg.N;
    const rng::Stream stream(cfg.seed, trial);
    const double t = cfg.params.t, s = cfg.params.s;
    switch (cfg.kind) {
        case Kind::ginibre:
        case Kind::wigner:
            // a single increment over [0, t] has the exact terminal law
            return sample_increment(cfg.kind, N, t, stream, 0, rng::kOneShot);
        default:
            break;
    }
    const int steps = cfg.resolved_steps();
    ComplexMatrix A = ComplexMatrix::Identity(N, N);
    ComplexMatrix D, T;
    const Complex I(0.0, 1.0);
    if (cfg.kind == Kind::gl_bm) {
        const double dt = t / steps;
        for (int k = 0; k < steps; ++k) {
            D = sample_increment(Kind::ginibre, N, dt, stream, k, rng::kIncrementA);
            T.noalias() = A * D;
            A += T;
            check_finite(A, k);
        }
    } else if (cfg.kind == Kind::unitary_bm) {
        const double dt = t / steps;
        for (int k = 0; k < steps; ++k) {
            D = I * sample_increment(Kind::wigner, N, dt, stream, k, rng::kIncrementA);
            D.diagonal().array() -= 0.5 * dt;
            T.noalias() = A * D;
            A += T;
            check_finite(A, k);
            if (cfg.reunitarize) reunitarize(A, cfg.unitary_step_tol, true);
        }
        if (cfg.reunitarize) reunitarize(A, 1e-15);
    } else {
        // elliptic motion on the clock [0, 1]
        const double dr = 1.0 / steps;
        const double a = std::sqrt(s - 0.5 * t), b = std::sqrt(0.5 * t);
        for (int k = 0; k < steps; ++k) {
            const ComplexMatrix X = sample_increment(Kind::wigner, N, dr, stream, k, rng::kIncrementA);
            const ComplexMatrix Y = sample_increment(Kind::wigner, N, dr, stream, k, rng::kIncrementB);
            // i dw = i a X - b Y
            D = (I * a) * X - b * Y;
            D.diagonal().array() -= 0.5 * (s - t) * dr;
            T.noalias() = A * D;
            A += T;
            check_finite(A, k);
        }
    }
    return A;
}

std::vector<Complex> eigenvalue_list(const ComplexMatrix& A) {
    if (!A.allFinite()) throw ValidationError("matrix has non-finite entries");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(A, false);
    if (es.info() != Eigen::Success) throw EigenError("complex Schur iteration did not converge");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

EigenvalueCloud eigenvalues(const ComplexMatrix& A) {
    const auto t0 = std::chrono::steady_clock::now();
    EigenvalueCloud c;
    c.values = eigenvalue_list(A);
    c.config.N = static_cast<int>(A.rows());
    c.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

Complex trace_moment(const ComplexMatrix& A, int n) {
    const auto N = A.rows();
    if (n == 0) return 1.0;
    if (n > 0) {
        ComplexMatrix P = A;
        for (int k = 1; k < n; ++k) P = P * A;
        return P.trace() / static_cast<double>(N);
    }
    Eigen::PartialPivLU<ComplexMatrix> lu(A);
    const double rc = lu.rcond();
    if (!(rc >= 1e-12)) {
        std::ostringstream os;
        os << "matrix is too ill-conditioned for negative powers (rcond " << rc << ")";
        throw SingularPointError(os.str());
    }
    ComplexMatrix P = lu.solve(ComplexMatrix::Identity(N, N));
    for (int k = -1; k > n; --k) P = lu.solve(P);
    return P.trace() / static_cast<double>(N);
}

ComplexMatrix conditional_expectation_mc(const ComplexMatrix& B, double t, const LaurentPoly& p, int M,
                                         std::uint64_t seed, const McOptions& opt) {
    if (M < 1) throw ValidationError("M must be positive");
    if (B.rows() != B.cols()) throw ValidationError("B must be square");
    const auto N = B.rows();
    if (p.coeffs.size() == 1 && p.coeffs.count(0)) return p.coeff(0) * ComplexMatrix::Identity(N, N);
    EnsembleConfig cfg;
    cfg.N = static_cast<int>(N);
    cfg.params = TimeParams::one(t);
    cfg.steps = opt.steps;
    cfg.seed = seed;
    cfg.kind = Kind::unitary_bm;
    cfg.validate();
    // fixed chunks keep the summation order independent of the thread count
    constexpr int chunk = 8;
    const int chunks = (M + chunk - 1) / chunk;
    std::vector<ComplexMatrix> partial(chunks);
    parallel_for(chunks, resolve_threads(opt.threads), [&](std::size_t c) {
        ComplexMatrix acc = ComplexMatrix::Zero(N, N);
        const int lo = static_cast<int>(c) * chunk, hi = std::min(M, lo + chunk);
        for (int j = lo; j < hi; ++j) {
            const ComplexMatrix U = simulate(cfg, static_cast<std::uint64_t>(j));
            acc += p.apply(B * U);
        }
        partial[c] = std::move(acc);
    });
    ComplexMatrix sum = ComplexMatrix::Zero(N, N);
    for (const auto& m : partial) sum += m;
    return sum / static_cast<double>(M);
}

double containment_fraction(const std::vector<Complex>& values, const domains::Domain& domain, double margin) {
    if (values.empty()) return 0.0;
    if (!(margin >= 0.0)) throw ValidationError("margin must be nonnegative");
    const auto& spec = domain.spec();
    std::size_t hit = 0;
    for (Complex z : values) {
        if (!spec.uses_polygon()) {
            if (cmaps::t_level(z) <= spec.params.t + margin) ++hit;
        } else {
            const auto& poly = domain.polyline();
            if (poly.parity_inside(z) || poly.distance(z) <= margin) ++hit;
        }
    }
    return static_cast<double>(hit) / values.size();
}

double containment_stats(const EigenvalueCloud& cloud, const domains::Domain& domain, double margin) {
    return containment_fraction(cloud.values, domain, margin);
}

std::vector<EigenvalueCloud> simulate_clouds(const EnsembleConfig& config, int trials, int threads) {
    config.validate();
    if (trials < 1) throw ValidationError("trials must be positive");
    std::vector<EigenvalueCloud> out(trials);
    parallel_for(trials, resolve_threads(threads), [&](std::size_t k) {
        const auto t0 = std::chrono::steady_clock::now();
        const ComplexMatrix A = simulate(config, k);
        EigenvalueCloud c;
        c.values = eigenvalue_list(A);
        c.config = config;
        c.trial = k;
        c.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out[k] = std::move(c);
    });
    return out;
}

}  // namespace brownflow::rmt
