#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "brownflow/types.hpp"

namespace brownflow::brown {

struct Grid2D {
    double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
    int nx = 2, ny = 2;

    // "RE_MIN,RE_MAX,IM_MIN,IM_MAX,NX,NY"
    static Grid2D parse(const std::string& text);
    void validate() const;
    double dx() const { return (re_max - re_min) / (nx - 1); }
    double dy() const { return (im_max - im_min) / (ny - 1); }
    Complex point(int i, int j) const { return {re_min + i * dx(), im_min + j * dy()}; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
};

enum class FieldKind { T, fk_logdet, reg_trace, brown_density, resolvent_norm, laplacian_count };

const char* to_string(FieldKind k);
FieldKind parse_field_kind(const std::string& name);

// values[j * nx + i] at grid.point(i, j); mask != 0 marks sentinel or
// contaminated nodes, whose value is kept as computed (possibly infinite).
struct ScalarField {
    Grid2D grid;
    FieldKind kind = FieldKind::T;
    std::vector<double> values;
    std::vector<unsigned char> mask;
    double epsilon = 0.0;  // for regularized fields
    double h = 0.0;        // for the Laplacian

    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
    std::size_t masked() const;
    // 2-D trapezoid over unmasked nodes
    double integrate() const;
    // sum of value * dx * dy over unmasked nodes selected by keep
    double sum_region(const std::function<bool(Complex)>& keep) const;
};

struct EpsilonSchedule {
    std::vector<double> epsilons;

    static EpsilonSchedule geometric(double eps_max = 1.0, double eps_min = 1e-6, int count = 13);
    void validate() const;
    double smallest() const { return epsilons.back(); }
};

double fk_log_det(const ComplexMatrix& A, Complex lambda);

// log|det(A - lambda)| / N for many lambda: one Hessenberg reduction, then an
// O(N^2) pivoted elimination per point.
class LogDetEvaluator {
public:
    explicit LogDetEvaluator(const ComplexMatrix& A);
    double operator()(Complex lambda) const;

private:
    ComplexMatrix H_;
    double scale_;
};

struct RegularizedTrace {
    double value = 0.0;
    bool ill_conditioned = false;
};

// (1/N) Tr[(A_l* A_l + eps)^-1 (A_l A_l* + eps)^-1] through two Cholesky
// factorizations.
RegularizedTrace regularized_trace(const ComplexMatrix& A, Complex lambda, double eps);

// Same quantity for a whole schedule from one SVD of A - lambda.
std::vector<double> regularized_trace_sweep(const ComplexMatrix& A, Complex lambda,
                                            const std::vector<double>& epsilons);

struct BrownDensityField {
    ScalarField field;                       // (eps/pi) * trace at the smallest eps
    std::vector<std::vector<double>> sweep;  // per node, one value per epsilon
    EpsilonSchedule schedule;
};

BrownDensityField brown_density_grid(const ComplexMatrix& A, const Grid2D& grid, const EpsilonSchedule& schedule,
                                     int threads = 0);

ScalarField fk_logdet_field(const ComplexMatrix& A, const Grid2D& grid);
ScalarField t_level_field(const Grid2D& grid);
ScalarField resolvent_norm_field(const ComplexMatrix& A, const Grid2D& grid, int n, int threads = 0);
ScalarField reg_trace_field(const ComplexMatrix& A, const Grid2D& grid, double eps, int threads = 0);

// Five-point Laplacian of fk_log_det divided by 2 pi. When h equals the grid
// spacing the stencil reuses grid values, so region sums telescope into a
// discrete boundary flux.
ScalarField laplacian_counting(const ComplexMatrix& A, const Grid2D& grid, double h);

struct ResolventNorm {
    double value = 0.0;
    bool overflow_flagged = false;
};

ResolventNorm l2_resolvent_norm(const ComplexMatrix& A, Complex lambda, int n);

struct InequalityReport {
    double max_violation = -std::numeric_limits<double>::infinity();
    int checks = 0;
    int violations = 0;
    bool skipped = false;
    std::string reason;
};

// regularized_trace(eps) <= l2_resolvent_norm(n = 2)^2 + tol for every eps.
InequalityReport epsilon_inequality_check(const ComplexMatrix& A, Complex lambda, const EpsilonSchedule& schedule,
                                          double tol = 1e-9);

}  // namespace brownflow::brown
