#include "brownflow/hall.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace brownflow::hall {

namespace {
constexpr double kPi = std::numbers::pi;
}

MeasurePtr make_measure(double t, int grid_size) {
    return std::make_shared<const cmaps::SpectralMeasureGrid>(cmaps::nu_density(t, grid_size));
}

CircleFunctionSamples CircleFunctionSamples::sample(MeasurePtr measure, const std::function<Complex(Complex)>& f) {
    if (!measure) throw ValidationError("missing measure grid");
    CircleFunctionSamples s;
    s.measure = std::move(measure);
    s.values.reserve(s.measure->size());
    for (double th : s.measure->thetas) s.values.push_back(f(std::polar(1.0, th)));
    s.validate();
    return s;
}

CircleFunctionSamples CircleFunctionSamples::sample(MeasurePtr measure, const LaurentPoly& p) {
    return sample(std::move(measure), [&](Complex w) { return p(w); });
}

void CircleFunctionSamples::validate() const {
    if (!measure) throw ValidationError("missing measure grid");
    if (values.size() != measure->size()) throw ValidationError("samples are not aligned with the grid");
    for (Complex v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ValidationError("non-finite sample");
}

CircleFunctionSamples operator+(const CircleFunctionSamples& a, const CircleFunctionSamples& b) {
    if (a.measure != b.measure) throw ValidationError("samples live on different grids");
    CircleFunctionSamples r = a;
    for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] += b.values[k];
    return r;
}

CircleFunctionSamples operator*(Complex c, const CircleFunctionSamples& a) {
    CircleFunctionSamples r = a;
    for (auto& v : r.values) v *= c;
    return r;
}

GtResult gt_apply_detailed(double t, const CircleFunctionSamples& f, Complex z, const GtOptions& opt) {
    f.validate();
    const auto& m = *f.measure;
    if (std::abs(m.t - t) > 1e-14 * std::max(1.0, t)) throw ValidationError("measure grid belongs to another t");
    if (z == Complex(0.0)) throw DomainError("z = 0 is never in the domain");
    const double w = cmaps::t_level(z) - t;
    if (std::abs(w) <= opt.band) throw DomainError("z lies in the boundary band; the kernel is ill-conditioned");
    if (w > 0) throw DomainError("z lies outside the domain");

    const bool nested = m.has_coarse_rule();
    const std::vector<double> wc = nested ? m.coarse_weights() : std::vector<double>{};
    const Complex zi = 1.0 / z;
    Complex fine = 0.0, coarse = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        const double mass = m.weights[j] * m.density[j];
        if (mass == 0.0) continue;
        const Complex c = m.chi[j];
        // chi and its reflection both sit on the boundary of the domain
        const double dev = std::max(std::abs(cmaps::t_level(c) - t), std::abs(cmaps::t_level(1.0 / std::conj(c)) - t));
        if (dev > opt.kernel_tol) {
            std::ostringstream os;
            os << "kernel node " << j << " is off the boundary level set by " << dev;
            throw AccuracyError(os.str());
        }
        const Complex kern = std::norm(1.0 - c) / ((z - c) * (zi - std::conj(c)));
        const Complex term = f.values[j] * kern * m.density[j];
        fine += m.weights[j] * term;
        if (nested) coarse += wc[j] * term;
    }
    GtResult r{fine, nested ? std::abs(fine - coarse) : 0.0};
    if (nested && r.error_estimate > opt.rel_tol * std::max(std::abs(fine), 1e-12)) {
        std::ostringstream os;
        os << "quadrature not converged at z = " << z << " (estimate " << r.error_estimate << ")";
        throw AccuracyError(os.str());
    }
    return r;
}

Complex gt_apply(double t, const CircleFunctionSamples& f, Complex z, const GtOptions& opt) {
    return gt_apply_detailed(t, f, z, opt).value;
}

LaurentPoly closed_form_transform(const TimeParams& params, const LaurentPoly& p) {
    params.validate();
    const double s = params.s, t = params.t;
    LaurentPoly out;
    for (const auto& [k, c] : p.coeffs) {
        switch (k) {
            case 0:
                out.add(0, c);
                break;
            case 1:
                out.add(1, c * std::exp(-0.5 * t));
                break;
            case 2:
                out.add(2, c * std::exp(-t));
                out.add(1, -c * t * std::exp(-t) * std::exp(-0.5 * (s - t)));
                break;
            case -1:
                out.add(-1, c * std::exp(-0.5 * t));
                break;
            default: {
                std::ostringstream os;
                os << "no closed form for u^" << k << "; only u, u^2 and u^-1 are supported";
                throw UnsupportedError(os.str());
            }
        }
    }
    return out;
}

namespace {

void require_exterior(const domains::Domain& dom, Complex lambda) {
    const auto c = dom.contains(lambda);
    if (c.verdict != domains::Verdict::outside) {
        std::ostringstream os;
        os << "lambda = " << lambda << " is " << domains::to_string(c.verdict) << " of the domain";
        throw DomainError(os.str());
    }
}

Complex r1(double t, Complex lambda, Complex F, Complex omega) {
    if (lambda == Complex(0.0)) return std::exp(0.5 * t) / omega;
    return (F / lambda) / (omega - F);
}

}  // namespace

ResolventPreimage::ResolventPreimage(double s, double t, Complex lambda, int n, const domains::Domain* domain)
    : s_(s), t_(t), lambda_(lambda), n_(n) {
    TimeParams{s, t}.validate();
    if (n < 1) throw ValidationError("n must be positive");
    std::unique_ptr<domains::Domain> own;
    if (!domain) {
        own = std::make_unique<domains::Domain>(domains::DomainSpec{{s, t}});
        domain = own.get();
    }
    require_exterior(*domain, lambda);
    F_ = lambda == Complex(0.0) ? Complex(0.0) : cmaps::f_st_eval(s, t, lambda);
    if (n == 1) return;

    constexpr int M = 48;
    radius_ = 0.5 * domain->polyline().distance(lambda);
    for (int attempt = 0;; ++attempt) {
        bool clear = true;
        for (int k = 0; k < M && clear; ++k)
            clear = domain->contains(lambda + std::polar(radius_, 2.0 * kPi * k / M)).verdict == domains::Verdict::outside;
        if (clear) break;
        if (attempt == 4) throw DomainError("derivative circle keeps meeting the domain");
        radius_ *= 0.5;
    }
    // the Cauchy formula for the Taylor coefficient already divides by (n-1)!
    for (int k = 0; k < M; ++k) {
        const double phi = 2.0 * kPi * k / M;
        const Complex mu = lambda + std::polar(radius_, phi);
        mu_.push_back(mu);
        Fmu_.push_back(mu == Complex(0.0) ? Complex(0.0) : cmaps::f_st_eval(s, t, mu));
        weight_.push_back(std::polar(std::pow(radius_, -(n - 1)), -(n - 1) * phi) / static_cast<double>(M));
    }
}

Complex ResolventPreimage::operator()(Complex omega) const {
    if (n_ == 1) return r1(t_, lambda_, F_, omega);
    Complex acc = 0.0;
    for (std::size_t k = 0; k < mu_.size(); ++k) acc += weight_[k] * r1(t_, mu_[k], Fmu_[k], omega);
    return acc;
}

Complex r_lambda(double s, double t, Complex lambda, Complex omega, int n, const domains::Domain* domain) {
    return ResolventPreimage(s, t, lambda, n, domain)(omega);
}

Complex pi_generating(double s, double t, Complex omega, Complex z) {
    TimeParams{s, t}.validate();
    const Complex zeta = s == t ? z : cmaps::track_root(s - t, 0.0, 0.0, z);
    return 1.0 / (1.0 - omega * cmaps::f_eval(s, zeta)) - 1.0;
}

IdentityReport resolvent_identity_check(double t, const std::vector<Complex>& lambdas, const std::vector<Complex>& zs,
                                        int grid_size, double tolerance) {
    IdentityReport rep;
    rep.grid_size = grid_size;
    rep.tolerance = tolerance;
    const MeasurePtr measure = make_measure(t, grid_size);
    const domains::Domain dom(domains::DomainSpec{TimeParams::one(t)});
    for (Complex lambda : lambdas) {
        const ResolventPreimage r(t, t, lambda, 1, &dom);
        const auto samples = CircleFunctionSamples::sample(measure, [&](Complex w) { return r(w); });
        for (Complex z : zs) {
            IdentitySample s{lambda, z, (z - lambda) * gt_apply(t, samples, z), 0.0};
            s.deviation = std::abs(s.product - 1.0);
            rep.max_deviation = std::max(rep.max_deviation, s.deviation);
            rep.samples.push_back(s);
        }
    }
    rep.passed = rep.max_deviation <= tolerance;
    return rep;
}

}  // namespace brownflow::hall
