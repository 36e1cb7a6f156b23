#include "brownflow/brown.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "brownflow/cmaps.hpp"
#include "brownflow/parallel.hpp"

namespace brownflow::brown {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
}  // namespace

Grid2D Grid2D::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 6) throw ValidationError("grid needs RE_MIN,RE_MAX,IM_MIN,IM_MAX,NX,NY");
    Grid2D g;
    try {
        g.re_min = std::stod(parts[0]);
        g.re_max = std::stod(parts[1]);
        g.im_min = std::stod(parts[2]);
        g.im_max = std::stod(parts[3]);
        g.nx = std::stoi(parts[4]);
        g.ny = std::stoi(parts[5]);
    } catch (const std::exception&) {
        throw ValidationError("cannot parse grid '" + text + "'");
    }
    g.validate();
    return g;
}

void Grid2D::validate() const {
    if (!(re_max > re_min) || !(im_max > im_min)) throw ValidationError("grid ranges must be increasing");
    if (nx < 2 || ny < 2) throw ValidationError("grid needs at least 2 points per axis");
}

const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::T: return "T";
        case FieldKind::fk_logdet: return "fk_logdet";
        case FieldKind::reg_trace: return "reg_trace";
        case FieldKind::brown_density: return "brown_density";
        case FieldKind::resolvent_norm: return "resolvent_norm";
        case FieldKind::laplacian_count: return "laplacian_count";
    }
    return "?";
}

FieldKind parse_field_kind(const std::string& name) {
    for (auto k : {FieldKind::T, FieldKind::fk_logdet, FieldKind::reg_trace, FieldKind::brown_density,
                   FieldKind::resolvent_norm, FieldKind::laplacian_count})
        if (name == to_string(k)) return k;
    throw ValidationError("unknown field kind '" + name + "'");
}

std::size_t ScalarField::masked() const {
    std::size_t n = 0;
    for (auto m : mask) n += m != 0;
    return n;
}

double ScalarField::integrate() const {
    double sum = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        const double wy = (j == 0 || j == grid.ny - 1) ? 0.5 : 1.0;
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
            if (mask[k]) continue;
            const double wx = (i == 0 || i == grid.nx - 1) ? 0.5 : 1.0;
            sum += wx * wy * values[k];
        }
    }
    return sum * grid.dx() * grid.dy();
}

double ScalarField::sum_region(const std::function<bool(Complex)>& keep) const {
    double sum = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
            if (!mask[k] && keep(grid.point(i, j))) sum += values[k];
        }
    return sum * grid.dx() * grid.dy();
}

EpsilonSchedule EpsilonSchedule::geometric(double eps_max, double eps_min, int count) {
    if (!(eps_max > eps_min) || !(eps_min > 0.0) || count < 2)
        throw ValidationError("epsilon schedule needs eps_max > eps_min > 0 and at least 2 points");
    EpsilonSchedule s;
    const double r = std::log(eps_min / eps_max) / (count - 1);
    for (int k = 0; k < count; ++k) s.epsilons.push_back(eps_max * std::exp(r * k));
    s.epsilons.back() = eps_min;
    return s;
}

void EpsilonSchedule::validate() const {
    if (epsilons.empty()) throw ValidationError("empty epsilon schedule");
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        if (!(epsilons[k] > 0.0)) throw ValidationError("epsilons must be positive");
        if (k > 0 && !(epsilons[k] < epsilons[k - 1])) throw ValidationError("epsilons must strictly decrease");
    }
}

namespace {

ComplexMatrix shifted(const ComplexMatrix& A, Complex lambda) {
    ComplexMatrix B = A;
    B.diagonal().array() -= lambda;
    return B;
}

double inf_norm(const ComplexMatrix& A) { return A.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

double fk_log_det(const ComplexMatrix& A, Complex lambda) {
    const ComplexMatrix B = shifted(A, lambda);
    const auto N = B.rows();
    Eigen::PartialPivLU<ComplexMatrix> lu(B);
    const double tiny = N * kEps * inf_norm(B);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < N; ++k) {
        const double p = std::abs(lu.matrixLU()(k, k));
        if (p <= tiny) return -kInf;
        sum += std::log(p);
    }
    return sum / N;
}

LogDetEvaluator::LogDetEvaluator(const ComplexMatrix& A) {
    Eigen::HessenbergDecomposition<ComplexMatrix> hd(A);
    H_ = hd.matrixH();
    scale_ = inf_norm(A);
}

double LogDetEvaluator::operator()(Complex lambda) const {
    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto N = H_.rows();
    RowMat M = H_;
    M.diagonal().array() -= lambda;
    const double tiny = N * kEps * (scale_ + std::abs(lambda));
    double sum = 0.0;
    for (Eigen::Index k = 0; k < N; ++k) {
        if (k + 1 < N && std::abs(M(k + 1, k)) > std::abs(M(k, k)))
            M.row(k).tail(N - k).swap(M.row(k + 1).tail(N - k));
        const Complex piv = M(k, k);
        if (std::abs(piv) <= tiny) return -kInf;
        sum += std::log(std::abs(piv));
        if (k + 1 < N) {
            const Complex m = M(k + 1, k) / piv;
            M.row(k + 1).tail(N - k - 1) -= m * M.row(k).tail(N - k - 1);
        }
    }
    return sum / N;
}

RegularizedTrace regularized_trace(const ComplexMatrix& A, Complex lambda, double eps) {
    if (!(eps > 0.0)) throw ValidationError("epsilon must be positive");
    const ComplexMatrix B = shifted(A, lambda);
    const auto N = B.rows();
    ComplexMatrix P = B.adjoint() * B;
    ComplexMatrix Q = B * B.adjoint();
    P.diagonal().array() += eps;
    Q.diagonal().array() += eps;
    Eigen::LLT<ComplexMatrix> lp(P), lq(Q);
    if (lp.info() != Eigen::Success || lq.info() != Eigen::Success)
        return {kInf, true};
    // Tr(P^-1 Q^-1) = ||Lq^-1 Lp^-*||_F^2
    const ComplexMatrix Y = lp.matrixU().solve(ComplexMatrix::Identity(N, N));
    const ComplexMatrix Z = lq.matrixL().solve(Y);
    RegularizedTrace r;
    r.value = Z.squaredNorm() / N;
    r.ill_conditioned = std::min(lp.rcond(), lq.rcond()) < 1e-13;
    return r;
}

std::vector<double> regularized_trace_sweep(const ComplexMatrix& A, Complex lambda,
                                            const std::vector<double>& epsilons) {
    const ComplexMatrix B = shifted(A, lambda);
    const auto N = B.rows();
    Eigen::BDCSVD<ComplexMatrix> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd s2 = svd.singularValues().array().square();
    const Eigen::MatrixXd W = (svd.matrixV().adjoint() * svd.matrixU()).cwiseAbs2();
    std::vector<double> out;
    out.reserve(epsilons.size());
    for (double eps : epsilons) {
        const Eigen::VectorXd d = (s2.array() + eps).inverse();
        out.push_back(d.dot(W * d) / N);
    }
    return out;
}

namespace {

ScalarField make_field(const Grid2D& grid, FieldKind kind) {
    grid.validate();
    ScalarField f;
    f.grid = grid;
    f.kind = kind;
    f.values.assign(grid.size(), 0.0);
    f.mask.assign(grid.size(), 0);
    return f;
}

}  // namespace

BrownDensityField brown_density_grid(const ComplexMatrix& A, const Grid2D& grid, const EpsilonSchedule& schedule,
                                     int threads) {
    schedule.validate();
    BrownDensityField out;
    out.schedule = schedule;
    out.field = make_field(grid, FieldKind::brown_density);
    out.field.epsilon = schedule.smallest();
    out.sweep.resize(grid.size());
    parallel_for(grid.ny, resolve_threads(threads), [&](std::size_t j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = j * grid.nx + i;
            out.sweep[k] = regularized_trace_sweep(A, grid.point(i, static_cast<int>(j)), schedule.epsilons);
            out.field.values[k] = schedule.smallest() / kPi * out.sweep[k].back();
            if (!std::isfinite(out.field.values[k])) out.field.mask[k] = 1;
        }
    });
    return out;
}

ScalarField fk_logdet_field(const ComplexMatrix& A, const Grid2D& grid) {
    ScalarField f = make_field(grid, FieldKind::fk_logdet);
    const LogDetEvaluator L(A);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
            f.values[k] = L(grid.point(i, j));
            if (!std::isfinite(f.values[k])) f.mask[k] = 1;
        }
    return f;
}

ScalarField t_level_field(const Grid2D& grid) {
    ScalarField f = make_field(grid, FieldKind::T);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
            f.values[k] = cmaps::t_level(grid.point(i, j));
            if (!std::isfinite(f.values[k])) f.mask[k] = 1;
        }
    return f;
}

ScalarField resolvent_norm_field(const ComplexMatrix& A, const Grid2D& grid, int n, int threads) {
    ScalarField f = make_field(grid, FieldKind::resolvent_norm);
    parallel_for(grid.ny, resolve_threads(threads), [&](std::size_t j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = j * grid.nx + i;
            const ResolventNorm r = l2_resolvent_norm(A, grid.point(i, static_cast<int>(j)), n);
            f.values[k] = r.value;
            if (!std::isfinite(r.value) || r.overflow_flagged) f.mask[k] = 1;
        }
    });
    return f;
}

ScalarField reg_trace_field(const ComplexMatrix& A, const Grid2D& grid, double eps, int threads) {
    ScalarField f = make_field(grid, FieldKind::reg_trace);
    f.epsilon = eps;
    parallel_for(grid.ny, resolve_threads(threads), [&](std::size_t j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = j * grid.nx + i;
            const RegularizedTrace r = regularized_trace(A, grid.point(i, static_cast<int>(j)), eps);
            f.values[k] = r.value;
            if (!std::isfinite(r.value) || r.ill_conditioned) f.mask[k] = 1;
        }
    });
    return f;
}

ScalarField laplacian_counting(const ComplexMatrix& A, const Grid2D& grid, double h) {
    if (!(h > 0.0)) throw ValidationError("h must be positive");
    ScalarField f = make_field(grid, FieldKind::laplacian_count);
    f.h = h;
    const LogDetEvaluator L(A);
    const double scale = 1.0 / (2.0 * kPi * h * h);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool on_grid = std::abs(h - grid.dx()) <= 1e-12 * h && std::abs(h - grid.dy()) <= 1e-12 * h;
    if (on_grid) {
        std::vector<double> v(grid.size());
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) v[static_cast<std::size_t>(j) * grid.nx + i] = L(grid.point(i, j));
        auto val = [&](int i, int j) { return v[static_cast<std::size_t>(j) * grid.nx + i]; };
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
                if (i == 0 || j == 0 || i == grid.nx - 1 || j == grid.ny - 1) {
                    f.values[k] = nan;
                    f.mask[k] = 1;
                    continue;
                }
                const double lap = val(i + 1, j) + val(i - 1, j) + val(i, j + 1) + val(i, j - 1) - 4.0 * val(i, j);
                f.values[k] = lap * scale;
                if (!std::isfinite(f.values[k])) f.mask[k] = 1;
            }
        return f;
    }
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
            const Complex z = grid.point(i, j);
            const double lap = L(z + h) + L(z - h) + L(z + Complex(0, h)) + L(z - Complex(0, h)) - 4.0 * L(z);
            f.values[k] = lap * scale;
            if (!std::isfinite(f.values[k])) f.mask[k] = 1;
        }
    return f;
}

ResolventNorm l2_resolvent_norm(const ComplexMatrix& A, Complex lambda, int n) {
    if (n < 1) throw ValidationError("n must be positive");
    const ComplexMatrix B = shifted(A, lambda);
    const auto N = B.rows();
    Eigen::PartialPivLU<ComplexMatrix> lu(B);
    const double tiny = N * kEps * inf_norm(B);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() <= tiny) return {kInf, true};
    const ComplexMatrix R = lu.solve(ComplexMatrix::Identity(N, N));
    ComplexMatrix P = R;
    for (int k = 1; k < n; ++k) P = P * R;
    ResolventNorm out;
    out.value = std::sqrt(P.squaredNorm() / N);
    out.overflow_flagged = lu.rcond() < 1e-12 || !std::isfinite(out.value);
    return out;
}

InequalityReport epsilon_inequality_check(const ComplexMatrix& A, Complex lambda, const EpsilonSchedule& schedule,
                                          double tol) {
    schedule.validate();
    InequalityReport rep;
    const ResolventNorm r = l2_resolvent_norm(A, lambda, 2);
    if (!std::isfinite(r.value) || r.overflow_flagged) {
        rep.skipped = true;
        rep.reason = "A - lambda is singular or too ill-conditioned";
        return rep;
    }
    const double bound = r.value * r.value;
    for (double eps : schedule.epsilons) {
        const double v = regularized_trace(A, lambda, eps).value - bound;
        rep.max_violation = std::max(rep.max_violation, v);
        ++rep.checks;
        if (v > tol) ++rep.violations;
    }
    return rep;
}

}  // namespace brownflow::brown
