#include "brownflow/cmaps.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace brownflow {

void TimeParams::validate() const {
    if (!(t > 0.0) || !std::isfinite(t))
        throw ValidationError("inner time t must be positive and finite");
    if (!std::isfinite(s) || !(s > t / 2.0))
        throw ValidationError("outer time s must exceed t/2");
}

}  // namespace brownflow

namespace brownflow::cmaps {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMaxExp = 700.0;

// exponent (t/2)(1+z)/(1-z), with the real part snapped to zero on the unit
// circle so that |f| = 1 there to rounding
Complex exponent(double t, Complex z) {
    const double x = z.real(), y = z.imag();
    const double d = (1.0 - x) * (1.0 - x) + y * y;
    if (d == 0.0) throw SingularPointError("f_t is singular at z = 1");
    double one_minus = 1.0 - (x * x + y * y);
    if (std::abs(one_minus) <= 4.0 * kEps) one_minus = 0.0;
    return 0.5 * t * Complex(one_minus / d, 2.0 * y / d);
}

Complex exp_checked(Complex g) {
    if (g.real() > kMaxExp || !std::isfinite(g.real()) || !std::isfinite(g.imag())) {
        std::ostringstream os;
        os << "exponent overflow in f_t (Re exponent = " << g.real() << ")";
        throw OverflowError(os.str(), g.real());
    }
    return std::exp(g);
}

struct NewtonResult {
    Complex z;
    bool ok;
};

NewtonResult newton(double tau, Complex z, Complex target, double tol, int max_iter) {
    const double scale = std::max(1.0, std::abs(target));
    double last_res = std::numeric_limits<double>::infinity();
    int growth = 0;
    for (int it = 0; it < max_iter; ++it) {
        FValue fv;
        try {
            fv = f_eval_d(tau, z);
        } catch (const Error&) {
            return {z, false};
        }
        const Complex r = fv.value - target;
        const double res = std::abs(r);
        if (res <= tol * scale) return {z, true};
        if (res > last_res) {
            if (++growth > 3) return {z, false};
        }
        last_res = std::min(last_res, res);
        if (fv.derivative == Complex(0.0)) return {z, false};
        const Complex dz = r / fv.derivative;
        z -= dz;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return {z, false};
        // stagnation at working precision
        if (std::abs(dz) <= 4.0 * kEps * std::max(1.0, std::abs(z))) {
            fv = f_eval_d(tau, z);
            return {z, std::abs(fv.value - target) <= 1e3 * tol * scale};
        }
    }
    return {z, false};
}

// h(alpha) = alpha + (t/2) cot(alpha/2): argument of f_t on the unit circle
double circle_phase(double t, double alpha) {
    return alpha + 0.5 * t / std::tan(0.5 * alpha);
}

// boundary value for an angle outside the support arc: the root lies on the
// unit circle on the branch where the phase is increasing
Complex chi_on_circle(double t, double theta, const ArcSupport& arc) {
    double target = std::fmod(theta, 2.0 * kPi);
    if (target < 0) target += 2.0 * kPi;
    const double a_star = std::acos(1.0 - 0.5 * t);
    double lo = a_star, hi = 2.0 * kPi - a_star;
    target = std::clamp(target, arc.theta_max, 2.0 * kPi - arc.theta_max);
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (circle_phase(t, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    const double a = 0.5 * (lo + hi);
    return {std::cos(a), std::sin(a)};
}

}  // namespace

FValue f_eval_d(double t, Complex z) {
    if (t == 0.0) return {z, Complex(1.0)};
    const Complex g = exponent(t, z);
    const Complex e = exp_checked(g);
    const Complex om = 1.0 - z;
    return {z * e, e * (1.0 + t * z / (om * om))};
}

Complex f_eval(double t, Complex z) {
    if (t == 0.0) return z;
    return z * exp_checked(exponent(t, z));
}

double t_level(Complex lambda) {
    const double m2 = std::norm(lambda);
    if (m2 == 0.0) return std::numeric_limits<double>::infinity();
    const double d2 = std::norm(lambda - 1.0);
    const double m = std::sqrt(m2);
    if (std::abs(m - 1.0) < 1e-8) return d2;
    const double a = m2 - 1.0;
    return d2 * std::log1p(a) / a;
}

Complex track_root(double tau, Complex zeta0, Complex mu0, Complex mu1) {
    if (tau == 0.0) return mu1;
    constexpr double kFinalTol = 1e-13;
    constexpr double kStepTol = 1e-9;
    Complex zeta = zeta0;
    double s = 0.0, ds = 0.125;
    while (s < 1.0) {
        const double s_next = std::min(1.0, s + ds);
        const Complex target = mu0 + (mu1 - mu0) * s_next;
        bool accepted = false;
        try {
            const FValue fv = f_eval_d(tau, zeta);
            if (fv.derivative != Complex(0.0)) {
                const Complex guess = zeta + (target - fv.value) / fv.derivative;
                const NewtonResult nr = newton(tau, guess, target, kStepTol, 30);
                if (nr.ok && std::abs(nr.z - guess) <= 0.5 * std::abs(guess - zeta) + 1e-10) {
                    zeta = nr.z;
                    s = s_next;
                    ds = std::min(2.0 * ds, 0.25);
                    accepted = true;
                }
            }
        } catch (const Error&) {
        }
        if (!accepted) {
            ds *= 0.5;
            if (ds < 1e-12)
                throw ContinuationError("Newton continuation stalled", zeta);
        }
    }
    const NewtonResult fin = newton(tau, zeta, mu1, kFinalTol, 100);
    if (!fin.ok) throw ContinuationError("Newton continuation did not converge", fin.z);
    return fin.z;
}

bool ArcSupport::contains_angle(double theta, double widen) const {
    if (full_circle) return true;
    double a = std::remainder(theta, 2.0 * kPi);
    return std::abs(a) <= theta_max + widen;
}

ArcSupport nu_support(double t) {
    if (!(t > 0.0)) throw ValidationError("nu_support needs t > 0");
    if (t >= 4.0) return {true, kPi};
    return {false, 0.5 * std::sqrt(t * (4.0 - t)) + std::acos(1.0 - 0.5 * t)};
}

bool on_support(double t, Complex z, double modulus_tol) {
    if (std::abs(std::abs(z) - 1.0) > modulus_tol) return false;
    return nu_support(t).contains_angle(std::arg(z));
}

Complex chi_eval(double t, Complex w) {
    if (t < 0.0) throw ValidationError("chi_eval needs t >= 0");
    const double r = std::abs(w);
    if (r > 1.0 + 1e-12) throw DomainError("chi_eval is defined on the closed unit disk");
    if (t == 0.0 || w == Complex(0.0)) return w;
    if (r < 1.0 - 1e-12) return track_root(t, 0.0, 0.0, w);

    const double theta = std::arg(w);
    const Complex u = w / r;
    const ArcSupport arc = nu_support(t);
    if (!arc.full_circle && std::abs(theta) >= arc.theta_max) return chi_on_circle(t, theta, arc);

    // inside the arc: radial limit with Richardson extrapolation, then polish
    constexpr double h = 1e-6;
    const Complex z2 = track_root(t, 0.0, 0.0, (1.0 - 2.0 * h) * u);
    const Complex z1 = track_root(t, z2, (1.0 - 2.0 * h) * u, (1.0 - h) * u);
    const Complex ze = 2.0 * z1 - z2;
    NewtonResult nr = newton(t, ze, u, 1e-14, 100);
    Complex z = (nr.ok && std::abs(nr.z - ze) < 1e-3) ? nr.z : ze;
    if (std::norm(z) > 1.0) z = 1.0 / std::conj(z);
    return z;
}

double nu_moment(double t, int k) {
    const int n = std::abs(k);
    if (n == 0) return 1.0;
    // sum_{j<n} (-t)^j/j! n^{j-1} C(n, j+1)
    double sum = 0.0;
    double term_pow = 1.0;   // (-t)^j / j!
    double npow = 1.0 / n;   // n^{j-1}
    double binom = n;        // C(n, j+1) at j = 0
    for (int j = 0; j < n; ++j) {
        sum += term_pow * npow * binom;
        term_pow *= -t / (j + 1);
        npow *= n;
        binom *= static_cast<double>(n - j - 1) / (j + 2);
    }
    return std::exp(-0.5 * n * t) * sum;
}

double nu_moment_oracle(double t, int k, double radius, int nodes) {
    if (k < 1) throw ValidationError("nu_moment_oracle needs k >= 1");
    Complex acc = 0.0;
    for (int m = 0; m < nodes; ++m) {
        const double phi = 2.0 * kPi * m / nodes;
        const Complex z = std::polar(radius, phi);
        const Complex c = chi_eval(t, z);
        acc += c / (1.0 - c) * std::polar(1.0, -k * phi);
    }
    acc /= static_cast<double>(nodes) * std::pow(radius, k);
    if (std::abs(acc.imag()) > 1e-10)
        throw AccuracyError("moment oracle left an imaginary residue");
    return acc.real();
}

double SpectralMeasureGrid::mass() const {
    double m = 0.0;
    for (std::size_t j = 0; j < size(); ++j) m += weights[j] * density[j];
    return m;
}

Complex SpectralMeasureGrid::moment(int k) const {
    Complex m = 0.0;
    for (std::size_t j = 0; j < size(); ++j)
        m += weights[j] * density[j] * std::polar(1.0, k * thetas[j]);
    return m;
}

bool SpectralMeasureGrid::has_coarse_rule() const {
    return support.full_circle ? size() % 2 == 0 : size() % 2 == 1;
}

std::vector<double> SpectralMeasureGrid::coarse_weights() const {
    if (!has_coarse_rule()) throw ValidationError("grid size has no nested coarse rule");
    std::vector<double> w(size(), 0.0);
    for (std::size_t j = 0; j < size(); j += 2) w[j] = 2.0 * weights[j];
    return w;
}

namespace {

double poisson_density(Complex chi) {
    const double num = 1.0 - std::norm(chi);
    if (num <= 0.0) return 0.0;
    return num / (2.0 * kPi * std::norm(1.0 - chi));
}

}  // namespace

double nu_density_at(double t, double theta) {
    return poisson_density(chi_eval(t, std::polar(1.0, theta)));
}

SpectralMeasureGrid nu_density(double t, int grid_size) {
    if (grid_size < 64) throw ValidationError("nu_density needs grid_size >= 64");
    if (!(t > 0.0)) throw ValidationError("nu_density needs t > 0");
    SpectralMeasureGrid g;
    g.t = t;
    g.support = nu_support(t);
    const int n = grid_size;
    g.thetas.resize(n);
    g.weights.resize(n);
    if (!g.support.full_circle) {
        // theta = -theta_max cos(phi): clusters nodes where the density has
        // square-root edges
        const double dphi = kPi / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double phi = j * dphi;
            g.thetas[j] = -g.support.theta_max * std::cos(phi);
            g.weights[j] = g.support.theta_max * std::sin(phi) * dphi;
        }
        g.thetas.front() = -g.support.theta_max;
        g.thetas.back() = g.support.theta_max;
    } else {
        // theta = u + sin u flattens the cusp at -1 that appears at t = 4
        const double du = 2.0 * kPi / n;
        for (int j = 0; j < n; ++j) {
            const double u = -kPi + j * du;
            g.thetas[j] = u + std::sin(u);
            g.weights[j] = (1.0 + std::cos(u)) * du;
        }
    }
    g.density.resize(n);
    g.chi.resize(n);
    for (int j = 0; j < n; ++j) {
        try {
            g.chi[j] = chi_eval(t, std::polar(1.0, g.thetas[j]));
        } catch (const ContinuationError& e) {
            std::ostringstream os;
            os << "boundary value failed at theta = " << g.thetas[j]
               << " (endpoint refinement needed): " << e.what();
            throw ContinuationError(os.str(), e.last_iterate());
        }
        g.density[j] = poisson_density(g.chi[j]);
    }
    return g;
}

Complex chi_s_extended(double s, Complex z) {
    if (!(s > 0.0)) throw ValidationError("chi_s_extended needs s > 0");
    if (on_support(s, z)) throw DomainError("point lies on the support of nu_s");
    const double r = std::abs(z);
    if (r <= 1.0) return chi_eval(s, r > 1.0 - 1e-12 ? z / r : z);
    return 1.0 / chi_eval(s, 1.0 / z);
}

Complex chi_st_eval(double s, double t, Complex z) {
    TimeParams{s, t}.validate();
    return f_eval(s - t, chi_s_extended(s, z));
}

Complex f_st_eval(double s, double t, Complex lambda) {
    TimeParams{s, t}.validate();
    const double tau = s - t;
    if (tau == 0.0) {
        if (!(t_level(lambda) > t)) throw DomainError("lambda lies in the closed domain");
        return f_eval(t, lambda);
    }
    if (lambda == Complex(0.0)) return 0.0;

    bool interior_root = false;
    auto finish = [&](Complex zeta, Complex& out) {
        if (t_level(zeta) > s) {
            out = f_eval(s, zeta);
            return true;
        }
        interior_root = true;
        return false;
    };
    Complex out;

    try {
        if (finish(track_root(tau, 0.0, 0.0, lambda), out)) return out;
    } catch (const ContinuationError&) {
    }

    const double big = std::max(1e3, 100.0 * std::abs(lambda));
    const Complex mu0 = big * lambda / std::abs(lambda);
    try {
        NewtonResult seed = newton(tau, mu0 * std::exp(0.5 * tau) + tau, mu0, 1e-13, 100);
        if (seed.ok && finish(track_root(tau, seed.z, mu0, lambda), out)) return out;
    } catch (const ContinuationError&) {
    }

    std::array<Complex, 4> scales{std::exp(0.5 * tau), std::exp(-0.5 * tau), 1.0, -1.0};
    for (Complex sc : scales) {
        for (int k = 0; k < 8; ++k) {
            const Complex seed = sc * lambda * std::polar(1.0, 2.0 * kPi * k / 8.0);
            NewtonResult nr = newton(tau, seed, lambda, 1e-13, 100);
            if (nr.ok && finish(nr.z, out)) return out;
        }
    }
    if (interior_root) throw DomainError("lambda is not in the exterior of the two-parameter domain");
    throw ContinuationError("could not invert chi_{s,t}", lambda);
}

}  // namespace brownflow::cmaps
