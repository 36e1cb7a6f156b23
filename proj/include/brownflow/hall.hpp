#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "brownflow/cmaps.hpp"
#include "brownflow/domains.hpp"
#include "brownflow/laurent.hpp"
#include "brownflow/types.hpp"

namespace brownflow::hall {

using MeasurePtr = std::shared_ptr<const cmaps::SpectralMeasureGrid>;

MeasurePtr make_measure(double t, int grid_size = 2049);

// A function on the circle sampled at the nodes of a spectral measure grid.
struct CircleFunctionSamples {
    MeasurePtr measure;
    std::vector<Complex> values;

    static CircleFunctionSamples sample(MeasurePtr measure, const std::function<Complex(Complex)>& f);
    static CircleFunctionSamples sample(MeasurePtr measure, const LaurentPoly& p);
    const std::vector<double>& thetas() const { return measure->thetas; }
    void validate() const;
};

CircleFunctionSamples operator+(const CircleFunctionSamples& a, const CircleFunctionSamples& b);
CircleFunctionSamples operator*(Complex c, const CircleFunctionSamples& a);

struct GtOptions {
    double band = 1e-3;         // z within this many T-units of t is rejected
    double rel_tol = 1e-3;      // accepted gap between the rule and its nested half rule
    double kernel_tol = 1e-6;   // |T(chi) - t| allowed at the kernel nodes
};

struct GtResult {
    Complex value;
    double error_estimate = 0.0;  // |full rule - half rule|
};

GtResult gt_apply_detailed(double t, const CircleFunctionSamples& f, Complex z, const GtOptions& opt = {});
Complex gt_apply(double t, const CircleFunctionSamples& f, Complex z, const GtOptions& opt = {});

// Transform of u^k for k in {0, 1, 2, -1}, returned as a polynomial in z.
LaurentPoly closed_form_transform(const TimeParams& params, const LaurentPoly& p);

// r_lambda^{s,t}(omega) and, for n > 1, the function mapped to (b - lambda)^-n.
// f_{s,t}(lambda) (or the values on the derivative circle) is computed once.
class ResolventPreimage {
public:
    ResolventPreimage(double s, double t, Complex lambda, int n = 1, const domains::Domain* domain = nullptr);

    Complex operator()(Complex omega) const;
    Complex preimage() const { return F_; }  // f_{s,t}(lambda)
    double circle_radius() const { return radius_; }

private:
    double s_, t_;
    Complex lambda_;
    int n_;
    Complex F_ = 0.0;
    double radius_ = 0.0;
    std::vector<Complex> mu_, Fmu_, weight_;
};

Complex r_lambda(double s, double t, Complex lambda, Complex omega, int n = 1,
                 const domains::Domain* domain = nullptr);

// 1 / (1 - omega f_s(chi_{s-t}(z))) - 1
Complex pi_generating(double s, double t, Complex omega, Complex z);

struct IdentitySample {
    Complex lambda, z, product;
    double deviation = 0.0;
};

struct IdentityReport {
    std::vector<IdentitySample> samples;
    double max_deviation = 0.0;
    int grid_size = 0;
    double tolerance = 1e-3;
    bool passed = false;
};

// For s = t: checks (z - lambda) * gt_apply(r_lambda, z) = 1 on every pair.
IdentityReport resolvent_identity_check(double t, const std::vector<Complex>& lambdas,
                                        const std::vector<Complex>& zs, int grid_size = 2049,
                                        double tolerance = 1e-3);

}  // namespace brownflow::hall
