#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brownflow/cmaps.hpp"
#include "brownflow/domains.hpp"

using namespace brownflow;
using namespace brownflow::cmaps;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> disk(std::mt19937_64& g, int n, double r) {
    std::uniform_real_distribution<double> U(-r, r);
    std::vector<Complex> v;
    while (static_cast<int>(v.size()) < n) {
        Complex z(U(g), U(g));
        if (std::abs(z) <= r) v.push_back(z);
    }
    return v;
}

// f_t restricted to [0, 1) is increasing, so the real inverse is a bisection
double real_inverse(double t, double w) {
    double lo = 0.0, hi = 1.0 - 1e-12;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f_eval(t, mid).real() < w)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("f_t basic values") {
    CHECK(f_eval(1.3, 0.0) == Complex(0.0));
    CHECK(std::abs(f_eval(2.0, 0.5) - 0.5 * std::exp(3.0)) < 1e-12);
    CHECK(std::abs(f_eval(2.0, 0.5).real() - 10.04277) < 1e-5);
    CHECK(f_eval(0.0, Complex(0.3, 0.4)) == Complex(0.3, 0.4));
    for (double th : {0.1, 1.0, 2.5, -3.0}) CHECK(std::abs(std::abs(f_eval(1.7, std::polar(1.0, th))) - 1.0) < 1e-14);
}

TEST_CASE("f_t singular point and overflow") {
    CHECK_THROWS_AS(f_eval(1.0, 1.0), SingularPointError);
    try {
        f_eval(100.0, 0.999);
        FAIL("expected overflow");
    } catch (const OverflowError& e) {
        CHECK(e.exponent() > 700.0);
    }
}

TEST_CASE("analytic derivative matches central differences") {
    const double h = 1e-6;
    for (Complex z : {Complex(0.2, 0.1), Complex(-0.5, 0.3), Complex(2.0, -1.0)}) {
        const Complex fd = (f_eval(1.5, z + h) - f_eval(1.5, z - h)) / (2 * h);
        CHECK(std::abs(f_eval_d(1.5, z).derivative - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
    }
    for (double s : {0.5, 1.0, 3.0, 5.0}) {
        const Complex fd = (f_eval(s, h) - f_eval(s, -h)) / (2 * h);
        CHECK(std::abs(fd - std::exp(s / 2)) <= 1e-8);
    }
}

TEST_CASE("reciprocal symmetry and unit-circle isometry") {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> R(0.3, 3.0), A(-kPi, kPi);
    for (int k = 0; k < 500; ++k) {
        const Complex z = std::polar(R(g), A(g));
        if (std::abs(z - 1.0) < 0.2) continue;
        CHECK(std::abs(f_eval(2.2, 1.0 / z) * f_eval(2.2, z) - 1.0) <= 1e-10);
    }
    for (double t : {0.5, 2.0, 4.0, 7.0}) {
        double worst = 0.0;
        for (int k = 1; k <= 10000; ++k) {
            const double th = 2 * kPi * k / 10001.0;
            worst = std::max(worst, std::abs(std::abs(f_eval(t, std::polar(1.0, th))) - 1.0));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("chi_t agrees with a real bisection oracle") {
    CHECK(chi_eval(1.0, 0.0) == Complex(0.0));
    const Complex z = chi_eval(1.0, 0.3);
    CHECK(std::abs(z) < 0.3);
    CHECK(std::abs(z - real_inverse(1.0, 0.3)) < 1e-12);
    CHECK(std::abs(f_eval(1.0, z) - 0.3) < 1e-10);
    CHECK_THROWS_AS(chi_eval(1.0, 1.5), DomainError);
}

TEST_CASE("round trip over the disk") {
    std::mt19937_64 g(2);
    for (double t : {0.5, 1.0, 2.0, 3.9, 4.0, 4.1}) {
        double worst = 0.0;
        for (Complex z : disk(g, 1000, 0.95)) worst = std::max(worst, std::abs(f_eval(t, chi_eval(t, z)) - z));
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("boundary values of chi_2") {
    const auto arc = nu_support(2.0);
    // inside the support the boundary value is interior to the disk with
    // positive density; outside it stays on the circle
    for (double th : {0.0, 0.7, 1.5, -2.0, 2.5}) {
        REQUIRE(arc.contains_angle(th));
        const Complex w = std::polar(1.0, th);
        const Complex c = chi_eval(2.0, w);
        CHECK(std::abs(c) < 1.0);
        CHECK(std::abs(f_eval(2.0, c) - w) <= 1e-10);
    }
    for (double th : {2.7, 3.0, kPi, -2.9}) {
        REQUIRE_FALSE(arc.contains_angle(th));
        const Complex w = std::polar(1.0, th);
        const Complex c = chi_eval(2.0, w);
        CHECK(std::abs(std::abs(c) - 1.0) < 1e-14);
        CHECK(std::abs(f_eval(2.0, c) - w) <= 1e-10);
        // the radial limit from inside lands on the same point
        CHECK(std::abs(chi_eval(2.0, (1 - 1e-9) * w) - c) < 1e-6);
    }
}

TEST_CASE("level function") {
    CHECK(t_level(1.0) == 0.0);
    CHECK(std::isinf(t_level(0.0)));
    CHECK(std::abs(t_level(2.0) - std::log(4.0) / 3.0) < 1e-14);
    CHECK(std::abs(t_level(2.0) - 0.46210) < 1e-5);
    for (double th : {0.3, 1.0, 2.0, 3.0}) {
        const Complex l = std::polar(1.0, th);
        CHECK(std::abs(t_level(l) - std::norm(l - 1.0)) < 1e-14);
        // continuity across the removable singularity
        CHECK(std::abs(t_level(l * (1 + 2e-8)) - t_level(l)) < 1e-6);
    }
    for (Complex l : {Complex(0.3, 0.4), Complex(-2.0, 1.0), Complex(5.0, 0.1)})
        CHECK(std::abs(t_level(1.0 / std::conj(l)) - t_level(l)) < 1e-12 * t_level(l));
    CHECK(std::abs(t_level(-1.0) - 4.0) < 1e-14);
}

TEST_CASE("moments: closed form against the Cauchy-integral oracle") {
    for (double t : {0.3, 1.0, 2.0, 3.9, 5.0}) {
        CHECK(nu_moment(t, 0) == 1.0);
        CHECK(std::abs(nu_moment(t, 1) - std::exp(-t / 2)) < 1e-14);
        CHECK(std::abs(nu_moment(t, 2) - std::exp(-t) * (1 - t)) < 1e-14);
        for (int k = 1; k <= 8; ++k) {
            const double o = nu_moment_oracle(t, k);
            CHECK(std::abs(nu_moment(t, k) - o) <= 1e-10);
            CHECK(nu_moment(t, -k) == nu_moment(t, k));
        }
    }
    CHECK(std::abs(nu_moment_oracle(1.0, 2)) < 1e-10);
    CHECK(std::abs(nu_moment_oracle(2.0, 1) - 0.36788) < 1e-5);
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(nu_moment_oracle(1e-6, k) - 1.0) < 1e-4);
    CHECK_THROWS_AS(nu_moment_oracle(1.0, 0), ValidationError);
}

TEST_CASE("support arc") {
    CHECK(nu_support(4.0).full_circle);
    CHECK(nu_support(4.0).theta_max == doctest::Approx(kPi));
    CHECK(nu_support(5.0).full_circle);
    CHECK(std::abs(nu_support(2.0).theta_max - (1 + kPi / 2)) < 1e-14);
    CHECK(std::abs(nu_support(2.0).theta_max - 2.57080) < 1e-5);
    CHECK(nu_support(3.999).theta_max < kPi);
    // arc shrinks like 2 sqrt(t)
    CHECK(nu_support(1e-6).theta_max / (2 * std::sqrt(1e-6)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("density grid invariants") {
    for (double t : {0.2, 1.0, 2.0, 3.9, 4.0, 4.1, 6.0}) {
        const auto g = nu_density(t, 1025);
        CHECK(std::abs(g.mass() - 1.0) <= 1e-6);
        for (double d : g.density) CHECK(d >= 0.0);
        for (std::size_t j = 1; j < g.size(); ++j) CHECK(g.thetas[j] > g.thetas[j - 1]);
        if (t <= 2.0)
            for (int k = 1; k <= 6; ++k) CHECK(std::abs(g.moment(k) - nu_moment(t, k)) <= 1e-6);
    }
    const auto arc = nu_support(1.0);
    for (double th = arc.theta_max + 1e-3; th < kPi; th += 0.05) CHECK(nu_density_at(1.0, th) <= 1e-6);
    CHECK_THROWS_AS(nu_density(1.0, 32), ValidationError);
    // mass concentrates near theta = 0 as t shrinks
    const auto small = nu_density(0.01, 257);
    double near = 0.0;
    for (std::size_t j = 0; j < small.size(); ++j)
        if (std::abs(small.thetas[j]) < 0.25) near += small.weights[j] * small.density[j];
    CHECK(near > 0.999);
}

TEST_CASE("extended chi_s") {
    CHECK(chi_s_extended(3.0, 0.0) == Complex(0.0));
    for (Complex z : {Complex(0.3, 0.2), Complex(-0.6, 0.1), Complex(0.0, -0.8)})
        CHECK(std::abs(chi_s_extended(3.0, 1.0 / z) * chi_s_extended(3.0, z) - 1.0) <= 1e-10);
    const Complex c = chi_s_extended(3.0, -1.0);
    CHECK(std::abs(f_eval(3.0, c) + 1.0) <= 1e-10);
    // -1 is off the arc for s < 4, so the value stays on the circle
    CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
    const Complex in = chi_s_extended(3.0, Complex(-1.5, 0.2));
    CHECK(std::abs(f_eval(3.0, in) - Complex(-1.5, 0.2)) <= 1e-10);
    CHECK_THROWS_AS(chi_s_extended(3.0, 1.0), DomainError);
    CHECK_THROWS_AS(chi_s_extended(5.0, std::polar(1.0, 3.0)), DomainError);
    // s < 4: points of the circle outside the arc are allowed
    CHECK_NOTHROW(chi_s_extended(1.0, std::polar(1.0, 3.0)));
}

TEST_CASE("two-parameter maps") {
    CHECK(chi_st_eval(3.0, 1.0, 0.0) == Complex(0.0));
    CHECK(std::abs(chi_st_eval(2.0, 2.0, 0.4) - chi_eval(2.0, 0.4)) < 1e-15);
    CHECK(std::abs(f_st_eval(2.0, 2.0, -3.0) - f_eval(2.0, -3.0)) < 1e-15);
    CHECK_THROWS_AS(f_st_eval(2.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(chi_st_eval(1.0, 3.0, 0.1), ValidationError);

    // near 0 the inverse is f_s o chi_{s-t}
    for (Complex z : {Complex(0.02, 0.01), Complex(-0.03, 0.0), Complex(0.0, 0.04)})
        CHECK(std::abs(f_st_eval(3.0, 1.0, z) - f_eval(3.0, chi_eval(2.0, z))) < 1e-12);

    const domains::Domain dom(domains::DomainSpec{{3.0, 1.0}});
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> U(-12.0, 12.0);
    int n = 0;
    while (n < 100) {
        const Complex lam(U(g), U(g));
        const auto c = dom.contains(lam);
        if (c.verdict != domains::Verdict::outside || c.witness < 0.02) continue;
        ++n;
        const Complex F = f_st_eval(3.0, 1.0, lam);
        CHECK(std::abs(chi_st_eval(3.0, 1.0, F) - lam) <= 1e-10 * std::max(1.0, std::abs(lam)));
    }
    // chi_{3,1} of a point off the arc lands outside the traced domain
    for (Complex z : {Complex(0.5, 0.0), Complex(-0.9, 0.0), Complex(2.0, 1.0), Complex(0.0, 0.5)})
        CHECK(dom.contains(chi_st_eval(3.0, 1.0, z)).verdict == domains::Verdict::outside);
}

TEST_CASE("one-parameter exterior mapping") {
    std::mt19937_64 g(8);
    std::uniform_real_distribution<double> U(-6.0, 6.0);
    for (double t : {1.0, 3.0, 4.5}) {
        const auto arc = nu_support(t);
        int n = 0;
        while (n < 200) {
            const Complex lam(U(g) * (t > 4 ? 3 : 1), U(g) * (t > 4 ? 3 : 1));
            if (!(t_level(lam) > t + 0.01)) continue;
            ++n;
            const Complex F = f_st_eval(t, t, lam);
            const bool on_circle = std::abs(std::abs(F) - 1.0) <= 1e-6;
            CHECK((!on_circle || !arc.contains_angle(std::arg(F))));
        }
    }
}
