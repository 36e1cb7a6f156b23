#pragma once

#include <vector>

#include "brownflow/types.hpp"

namespace brownflow::cmaps {

struct FValue {
    Complex value;
    Complex derivative;
};

// f_t(z) = z exp((t/2)(1+z)/(1-z)). Throws SingularPointError at z = 1 and
// OverflowError when the real part of the exponent leaves the double range.
Complex f_eval(double t, Complex z);
FValue f_eval_d(double t, Complex z);

// Level function T(lambda) = |lambda-1|^2 log|lambda|^2 / (|lambda|^2 - 1).
// Returns +inf at 0.
double t_level(Complex lambda);

// Solves f_tau(zeta) = mu1 by Newton continuation along the straight segment
// mu0 -> mu1, starting from a known solution zeta0 of f_tau(zeta0) = mu0.
Complex track_root(double tau, Complex zeta0, Complex mu0, Complex mu1);

// Inverse of f_t on the closed disk. For |w| = 1 the boundary value is the
// limit from inside.
Complex chi_eval(double t, Complex w);

struct ArcSupport {
    bool full_circle = false;
    double theta_max = 0.0;  // half width of the arc about angle 0

    bool contains_angle(double theta, double widen = 0.0) const;
};

ArcSupport nu_support(double t);
bool on_support(double t, Complex z, double modulus_tol = 1e-12);

double nu_moment(double t, int k);
// Taylor coefficient of chi/(1-chi) at 0 by a discrete Cauchy integral.
double nu_moment_oracle(double t, int k, double radius = 0.5, int nodes = 64);

// Density of nu_t with respect to d(theta), so that it integrates to 1 over
// the circle. thetas are sorted; weights is the quadrature rule matching the
// grid (endpoint-clustered on an arc, warped near -1 on the full circle).
struct SpectralMeasureGrid {
    double t = 0.0;
    std::vector<double> thetas;
    std::vector<double> weights;
    std::vector<double> density;
    std::vector<Complex> chi;  // boundary values chi_t(e^{i theta})
    ArcSupport support;

    std::size_t size() const { return thetas.size(); }
    double mass() const;
    Complex moment(int k) const;  // integral of omega^k
    // Rule built from every other node; used for error estimates.
    bool has_coarse_rule() const;
    std::vector<double> coarse_weights() const;
};

double nu_density_at(double t, double theta);
SpectralMeasureGrid nu_density(double t, int grid_size);

Complex chi_s_extended(double s, Complex z);
Complex chi_st_eval(double s, double t, Complex z);
// Inverse of chi_{s,t}: f_{s,t}(lambda) = f_s(zeta) where f_{s-t}(zeta) = lambda
// and zeta lies in the region T > s.
Complex f_st_eval(double s, double t, Complex lambda);

}  // namespace brownflow::cmaps
