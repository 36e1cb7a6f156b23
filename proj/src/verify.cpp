#include "brownflow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "brownflow/brown.hpp"
#include "brownflow/cmaps.hpp"
#include "brownflow/domains.hpp"
#include "brownflow/hall.hpp"
#include "brownflow/parallel.hpp"
#include "brownflow/rmt.hpp"

namespace brownflow::verify {

namespace {

CheckResult start(int id, std::string name) {
    CheckResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

struct Ctx {
    bool quick;
    int threads;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// Points with |z| <= rmax, uniform in the disk.
std::vector<Complex> disk_points(std::mt19937_64& g, int n, double rmax) {
    std::uniform_real_distribution<double> U(-rmax, rmax);
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < n) {
        Complex z(U(g), U(g));
        if (std::abs(z) <= rmax) out.push_back(z);
    }
    return out;
}

// interior points of Sigma_t with T at most frac * t
std::vector<Complex> interior_points(std::mt19937_64& g, int n, double t, double frac) {
    std::uniform_real_distribution<double> U(-3.0, 5.0);
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < n) {
        Complex z(U(g), U(g));
        if (cmaps::t_level(z) <= frac * t) out.push_back(z);
    }
    return out;
}

CheckResult c1_roundtrip(const Ctx&) {
    CheckResult r = start(1, "map round-trip |f_t(chi_t(z)) - z| <= 1e-10");
    std::mt19937_64 g(101);
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0, 3.9, 4.0, 4.1}) {
        double w = 0.0;
        for (Complex z : disk_points(g, 1000, 0.95)) w = std::max(w, std::abs(cmaps::f_eval(t, cmaps::chi_eval(t, z)) - z));
        r.metrics["max_residual_t" + fmt("%g", t)] = w;
        worst = std::max(worst, w);
    }
    r.metrics["max_residual"] = worst;
    r.passed = worst <= 1e-10;
    r.detail = "max residual " + fmt("%.2e", worst);
    return r;
}

CheckResult c2_moments(const Ctx&) {
    CheckResult r = start(2, "moments: nu_2 = e^-t(1-t), oracle vs closed form <= 1e-10 for |k| <= 8");
    double worst_nu2 = 0.0, worst = 0.0;
    for (double t : {0.5, 1.0, 2.0, 3.9}) {
        worst_nu2 = std::max(worst_nu2, std::abs(cmaps::nu_moment(t, 2) - std::exp(-t) * (1.0 - t)));
        worst = std::max(worst, std::abs(cmaps::nu_moment(t, 0) - 1.0));
        for (int k = 1; k <= 8; ++k) {
            const double o = cmaps::nu_moment_oracle(t, k);
            worst = std::max({worst, std::abs(cmaps::nu_moment(t, k) - o), std::abs(cmaps::nu_moment(t, -k) - o)});
        }
    }
    r.metrics = {{"nu2_error", worst_nu2}, {"oracle_error", worst}};
    r.passed = worst_nu2 <= 1e-10 && worst <= 1e-10;
    r.detail = "nu_2 error " + fmt("%.2e", worst_nu2) + ", oracle error " + fmt("%.2e", worst);
    return r;
}

// Edge of the support located from the Poisson extension of nu_t just inside
// the circle, without using the arc formula.
double support_edge_probe(double t, double lo, double hi, double sign) {
    constexpr double r = 1.0 - 1e-9;
    auto dens = [&](double th) {
        const Complex c = cmaps::chi_eval(t, std::polar(r, sign * th));
        return ((1.0 + c) / (1.0 - c)).real() / (2.0 * kPi);
    };
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dens(mid) > 1e-4)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CheckResult c3_support(const Ctx&) {
    CheckResult r = start(3, "support arc at t = 2 within 1e-3 rad, density mass 1 +- 1e-6");
    const double expect = 1.0 + kPi / 2.0;
    const double formula = cmaps::nu_support(2.0).theta_max;
    const double right = support_edge_probe(2.0, 2.0, 3.1, 1.0);
    const double left = support_edge_probe(2.0, 2.0, 3.1, -1.0);
    const auto grid = cmaps::nu_density(2.0, 2049);
    const double mass = grid.mass();
    double outside = 0.0;
    for (double th = 2.6; th <= kPi; th += 0.01) outside = std::max(outside, cmaps::nu_density_at(2.0, th));
    const double err = std::max({std::abs(right - expect), std::abs(left - expect), std::abs(formula - expect)});
    r.metrics = {{"theta_max_formula", formula}, {"edge_probe_right", right}, {"edge_probe_left", left},
                 {"edge_error", err}, {"mass", mass}, {"density_outside_arc", outside}};
    r.passed = err <= 1e-3 && std::abs(mass - 1.0) <= 1e-6 && outside <= 1e-6;
    r.detail = "edge error " + fmt("%.2e", err) + " rad, mass-1 " + fmt("%.2e", mass - 1.0);
    return r;
}

CheckResult c4_domains(const Ctx&) {
    CheckResult r = start(4, "domain facts: 1 inside, 0 outside, loop counts, Sigma_2 meets the circle at +-i");
    bool ok = true;
    for (double t : {1.0, 2.0, 4.0, 4.1}) {
        const domains::DomainSpec spec{TimeParams::one(t)};
        ok &= domains::contains(spec, 1.0).verdict == domains::Verdict::inside;
        ok &= domains::contains(spec, 0.0).verdict == domains::Verdict::outside;
    }
    json loops = json::object();
    for (double s : {1.0, 2.0, 3.0, 3.9, 4.0, 4.1, 5.0}) {
        const auto poly = domains::trace_level_set(s, 512);
        loops[fmt("%g", s)] = poly.loops.size();
        ok &= poly.loops.size() == (s > 4.0 ? 2u : 1u);
    }
    // crossings of the traced boundary with the unit circle
    const auto poly = domains::trace_level_set(2.0, 512);
    std::vector<Complex> hits;
    for (const auto& l : poly.loops)
        for (std::size_t i = 0; i < l.size(); ++i) {
            const Complex a = l[i], b = l[(i + 1) % l.size()];
            const double fa = std::abs(a) - 1.0, fb = std::abs(b) - 1.0;
            if ((fa < 0) != (fb < 0)) hits.push_back(a + fa / (fa - fb) * (b - a));
        }
    double err = hits.size() == 2 ? 0.0 : 1.0;
    for (Complex h : hits) err = std::max(err, std::min(std::abs(h - Complex(0, 1)), std::abs(h + Complex(0, 1))));
    ok &= err <= 1e-3;
    r.metrics = {{"loop_counts", loops}, {"circle_crossings", hits.size()}, {"crossing_error", err}};
    r.passed = ok;
    r.detail = "crossing error " + fmt("%.2e", err);
    return r;
}

CheckResult c5_exterior(const Ctx&) {
    CheckResult r = start(5, "exterior mapping: f_{s,t} sends 200 exterior points off supp nu_s");
    std::mt19937_64 g(505);
    int failures = 0, total = 0;
    double min_margin = kPi;
    for (auto [s, t] : {std::pair{2.0, 2.0}, {3.0, 1.0}, {5.0, 3.0}}) {
        const domains::Domain dom(domains::DomainSpec{{s, t}});
        const auto& poly = dom.polyline();
        double rmax = 0.0;
        for (Complex z : poly.loops[0]) rmax = std::max(rmax, std::abs(z));
        double hole = 0.0;
        if (poly.loops.size() > 1)
            for (Complex z : poly.loops[1]) hole = std::max(hole, std::abs(z));
        const auto arc = cmaps::nu_support(s);
        std::vector<Complex> pts;
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        while (pts.size() < 200) {
            const bool in_hole = hole > 0 && pts.size() % 4 == 0;
            const double R = in_hole ? hole : 1.3 * rmax;
            const Complex z(R * U(g), R * U(g));
            const auto c = dom.contains(z);
            const double margin = dom.spec().uses_polygon() ? 0.02 : 0.05;
            if (c.verdict == domains::Verdict::outside && c.witness > margin) pts.push_back(z);
        }
        for (Complex lam : pts) {
            ++total;
            try {
                const Complex F = cmaps::f_st_eval(s, t, lam);
                const double off = std::abs(std::abs(F) - 1.0);
                double margin = off;
                if (off <= 1e-6) margin = arc.full_circle ? -1.0 : std::abs(std::remainder(std::arg(F), 2 * kPi)) - arc.theta_max;
                if (!(margin > 0)) ++failures;
                min_margin = std::min(min_margin, std::max(margin, off));
            } catch (const Error&) {
                ++failures;
            }
        }
    }
    r.metrics = {{"points", total}, {"failures", failures}, {"min_margin", min_margin}};
    r.passed = failures == 0 && total == 600;
    r.detail = std::to_string(failures) + " failures over " + std::to_string(total) + " points";
    return r;
}

CheckResult c6_transform(const Ctx&) {
    CheckResult r = start(6, "transform golden values: omega^2 and omega^-1 at 20 interior points, 1e-4 relative");
    const double t = 1.0;
    const auto measure = hall::make_measure(t, 2049);
    const auto f2 = hall::CircleFunctionSamples::sample(measure, LaurentPoly::monomial(2));
    const auto fm1 = hall::CircleFunctionSamples::sample(measure, LaurentPoly::monomial(-1));
    std::mt19937_64 g(606);
    double e2 = 0.0, em1 = 0.0;
    for (Complex z : interior_points(g, 20, t, 0.8)) {
        const Complex want2 = std::exp(-t) * (z * z - t * z);
        const Complex wantm1 = std::exp(-0.5 * t) / z;
        e2 = std::max(e2, std::abs(hall::gt_apply(t, f2, z) - want2) / std::abs(want2));
        em1 = std::max(em1, std::abs(hall::gt_apply(t, fm1, z) - wantm1) / std::abs(wantm1));
    }
    r.metrics = {{"rel_error_u2", e2}, {"rel_error_u_inv", em1}};
    r.passed = e2 <= 1e-4 && em1 <= 1e-4;
    r.detail = "u^2 " + fmt("%.2e", e2) + ", u^-1 " + fmt("%.2e", em1);
    return r;
}

CheckResult c7_resolvent(const Ctx&) {
    CheckResult r = start(7, "resolvent identity (z - lambda) G(r_lambda) = 1 within 1e-3, 10 x 10 pairs");
    const double t = 1.0;
    std::mt19937_64 g(707);
    std::vector<Complex> lambdas;
    std::uniform_real_distribution<double> U(-8.0, 8.0);
    while (lambdas.size() < 10) {
        const Complex l(U(g), U(g));
        if (cmaps::t_level(l) > t + 0.5) lambdas.push_back(l);
    }
    const auto zs = interior_points(g, 10, t, 0.8);
    const auto rep = hall::resolvent_identity_check(t, lambdas, zs, 2049, 1e-3);
    r.metrics = {{"max_deviation", rep.max_deviation}, {"pairs", rep.samples.size()}};
    r.passed = rep.passed && rep.samples.size() == 100;
    r.detail = "max deviation " + fmt("%.2e", rep.max_deviation);
    return r;
}

CheckResult c8_pi(const Ctx&) {
    CheckResult r = start(8, "Pi identity at (s,t) = (3,1) for 100 small zeta, 1e-10");
    std::mt19937_64 g(808);
    const double s = 3.0, t = 1.0;
    const auto arc = cmaps::nu_support(s);
    std::uniform_real_distribution<double> A(-arc.theta_max, arc.theta_max);
    double worst = 0.0;
    for (Complex zeta : disk_points(g, 100, 0.1)) {
        const Complex w = std::polar(1.0, A(g));
        const Complex lhs = hall::pi_generating(s, t, w, cmaps::f_eval(s - t, zeta));
        const Complex rhs = 1.0 / (1.0 - w * cmaps::f_eval(s, zeta)) - 1.0;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    r.metrics = {{"max_error", worst}};
    r.passed = worst <= 1e-10;
    r.detail = "max error " + fmt("%.2e", worst);
    return r;
}

CheckResult c9_containment(const Ctx& cx) {
    CheckResult r = start(9, "eigenvalue containment: gl N=500 t=2 (T <= 2.2, 8 seeds) and (3,1) within 0.05");
    rmt::EnsembleConfig cfg;
    cfg.N = cx.quick ? 120 : 500;
    cfg.params = TimeParams::one(2.0);
    cfg.kind = rmt::Kind::gl_bm;
    cfg.seed = 9001;
    if (cx.quick) cfg.steps = 200;
    const int seeds = cx.quick ? 2 : 8;
    const auto clouds = rmt::simulate_clouds(cfg, seeds, cx.threads);
    const domains::Domain one(domains::DomainSpec{TimeParams::one(2.0)});
    double worst = 1.0;
    json per = json::array();
    for (const auto& c : clouds) {
        const double f = rmt::containment_stats(c, one, 0.2);
        per.push_back(f);
        worst = std::min(worst, f);
    }
    rmt::EnsembleConfig ec = cfg;
    ec.kind = rmt::Kind::elliptic_bm;
    ec.params = {3.0, 1.0};
    ec.seed = 9002;
    const auto ell = rmt::simulate_clouds(ec, 1, cx.threads);
    const domains::Domain two(domains::DomainSpec{{3.0, 1.0}});
    const double f2 = rmt::containment_stats(ell[0], two, 0.05);
    r.metrics = {{"N", cfg.N}, {"one_param_fractions", per}, {"one_param_min", worst}, {"two_param_fraction", f2}};
    r.passed = worst >= 0.99 && f2 >= 0.98;
    r.detail = "min fraction " + fmt("%.4f", worst) + " (8 seeds), two-parameter " + fmt("%.4f", f2);
    if (cx.quick) r.detail += " [quick sizes]";
    return r;
}

CheckResult c10_bst_moments(const Ctx& cx) {
    CheckResult r = start(10, "trace moments of B_{3,1}, n = 1..3, within 4 standard errors of nu_n(2)");
    rmt::EnsembleConfig cfg;
    cfg.N = cx.quick ? 80 : 300;
    cfg.params = {3.0, 1.0};
    cfg.kind = rmt::Kind::elliptic_bm;
    cfg.seed = 10010;
    if (cx.quick) cfg.steps = 200;
    const int trials = cx.quick ? 8 : 16;
    std::vector<ComplexMatrix> mats(trials);
    parallel_for(trials, resolve_threads(cx.threads), [&](std::size_t k) { mats[k] = rmt::simulate(cfg, k); });
    bool ok = true;
    json per = json::array();
    for (int n = 1; n <= 3; ++n) {
        std::vector<Complex> x;
        for (const auto& m : mats) x.push_back(rmt::trace_moment(m, n));
        Complex mean = 0.0;
        for (Complex v : x) mean += v;
        mean /= static_cast<double>(trials);
        double var = 0.0;
        for (Complex v : x) var += std::norm(v - mean);
        var /= trials - 1;
        const double se = std::sqrt(var / trials);
        const double target = cmaps::nu_moment(2.0, n);
        const double z = std::abs(mean - target) / se;
        ok &= z <= 4.0;
        per.push_back({{"n", n}, {"mean_re", mean.real()}, {"mean_im", mean.imag()}, {"target", target},
                       {"se", se}, {"z", z}});
    }
    r.metrics = {{"N", cfg.N}, {"trials", trials}, {"moments", per}};
    r.passed = ok;
    std::ostringstream os;
    os << "z-scores";
    for (const auto& p : per) os << ' ' << fmt("%.2f", p["z"].get<double>());
    r.detail = os.str();
    return r;
}

CheckResult c11_conditional(const Ctx& cx) {
    CheckResult r = start(11, "conditional expectation of (BU)^2 vs e^-1(B^2 - B), N=200, M=2000");
    const int N = cx.quick ? 40 : 200;
    const int M = cx.quick ? 200 : 2000;
    rmt::EnsembleConfig bc;
    bc.N = N;
    bc.params = TimeParams::one(1.0);
    bc.kind = rmt::Kind::gl_bm;
    bc.seed = 11011;
    const ComplexMatrix B = rmt::simulate(bc);
    rmt::McOptions mo;
    mo.threads = cx.threads;
    const ComplexMatrix est = rmt::conditional_expectation_mc(B, 1.0, LaurentPoly::monomial(2), M, 11012, mo);
    const ComplexMatrix want = std::exp(-1.0) * (B * B - B);
    const double dev = (est - want).norm() / want.norm();
    const double tol = 5.0 / std::sqrt(static_cast<double>(M)) + 0.5 / (static_cast<double>(N) * N);
    r.metrics = {{"N", N}, {"M", M}, {"unitary_steps", mo.steps}, {"relative_deviation", dev}, {"tolerance", tol}};
    r.passed = dev <= tol;
    r.detail = "relative deviation " + fmt("%.4f", dev) + " (bound " + fmt("%.4f", tol) + ")";
    return r;
}

CheckResult c12_brown(const Ctx&) {
    CheckResult r = start(12, "Brown machinery: Laplacian counts within 2%, epsilon inequality, monotonicity");
    rmt::EnsembleConfig gc;
    gc.N = 100;
    gc.kind = rmt::Kind::ginibre;
    gc.params = TimeParams::one(1.0);
    gc.seed = 12012;
    const ComplexMatrix A = rmt::simulate(gc);
    const auto ev = rmt::eigenvalue_list(A);
    double rmax = 0.0;
    for (Complex z : ev) rmax = std::max(rmax, std::abs(z));
    const double h = 1e-2;
    const int half = static_cast<int>(std::ceil((rmax + 0.2) / h));
    brown::Grid2D grid{-half * h, half * h, -half * h, half * h, 2 * half + 1, 2 * half + 1};
    const auto lap = brown::laplacian_counting(A, grid, h);
    // vertical cut lines at least 2h away from every eigenvalue; region
    // boundaries sit halfway between grid columns
    double worst = 0.0;
    int regions = 0;
    for (double x0 : {-0.6, -0.3, 0.0, 0.3, 0.6, 10.0}) {
        double cut = x0;
        if (x0 < 5.0) {
            for (int tries = 0; tries < 50; ++tries) {
                bool clear = true;
                for (Complex z : ev) clear &= std::abs(z.real() - cut) > 2 * h;
                if (clear) break;
                cut += 0.5 * h;
            }
            cut = (std::floor(cut / h) + 0.5) * h;
        }
        const double frac = lap.sum_region([&](Complex z) { return z.real() > cut || x0 > 5.0; });
        int count = 0;
        for (Complex z : ev) count += (z.real() > cut || x0 > 5.0);
        worst = std::max(worst, std::abs(frac - static_cast<double>(count) / ev.size()));
        ++regions;
    }
    // inequality and monotonicity on a 50 x 50 sample
    gc.N = 50;
    gc.seed = 12013;
    const ComplexMatrix S = rmt::simulate(gc);
    const auto evs = rmt::eigenvalue_list(S);
    const auto sched = brown::EpsilonSchedule::geometric(1.0, 1e-6, 13);
    std::mt19937_64 g(12014);
    int violations = 0, checks = 0, nonmono = 0, points = 0;
    double maxv = -1e300;
    while (points < 20) {
        const Complex lam = disk_points(g, 1, 1.5)[0];
        double d = 1e300;
        for (Complex z : evs) d = std::min(d, std::abs(z - lam));
        if (d < 0.05) continue;
        ++points;
        const auto rep = brown::epsilon_inequality_check(S, lam, sched);
        if (rep.skipped) {
            ++violations;
            continue;
        }
        violations += rep.violations;
        checks += rep.checks;
        maxv = std::max(maxv, rep.max_violation);
        double prev = 0.0;
        for (double eps : sched.epsilons) {
            const double v = brown::regularized_trace(S, lam, eps).value;
            if (v < prev * (1.0 - 1e-12)) ++nonmono;
            prev = v;
        }
    }
    r.metrics = {{"counting_max_error", worst}, {"regions", regions}, {"masked_nodes", lap.masked()},
                 {"inequality_checks", checks}, {"violations", violations}, {"max_violation", maxv},
                 {"monotonicity_breaks", nonmono}};
    r.passed = worst <= 0.02 && violations == 0 && checks == 260 && nonmono == 0;
    r.detail = "count error " + fmt("%.4f", worst) + ", " + std::to_string(violations) + " violations in " +
               std::to_string(checks) + ", " + std::to_string(nonmono) + " monotonicity breaks";
    return r;
}

CheckResult c13_unitary(const Ctx& cx) {
    CheckResult r = start(13, "unitary BM N=500 t=2: arguments in arc + 0.05, moments k <= 4 within 4 SE");
    rmt::EnsembleConfig cfg;
    cfg.N = cx.quick ? 120 : 500;
    cfg.params = TimeParams::one(2.0);
    cfg.kind = rmt::Kind::unitary_bm;
    cfg.seed = 13013;
    if (cx.quick) cfg.steps = 300;
    const ComplexMatrix U = rmt::simulate(cfg);
    const double defect = rmt::unitarity_defect(U);
    const auto ev = rmt::eigenvalue_list(U);
    const auto arc = cmaps::nu_support(2.0);
    int in = 0;
    for (Complex z : ev) in += arc.contains_angle(std::arg(z), 0.05);
    const double frac = static_cast<double>(in) / ev.size();
    bool ok = frac >= 0.99;
    json per = json::array();
    double zmax = 0.0;
    for (int k = 1; k <= 4; ++k) {
        Complex mean = 0.0;
        for (Complex z : ev) mean += std::pow(z, k);
        mean /= static_cast<double>(ev.size());
        double var = 0.0;
        for (Complex z : ev) var += std::norm(std::pow(z, k) - mean);
        var /= ev.size() - 1;
        const double se = std::sqrt(var / ev.size());
        const double target = cmaps::nu_moment(2.0, k);
        const double z = std::abs(mean - target) / se;
        zmax = std::max(zmax, z);
        ok &= z <= 4.0;
        per.push_back({{"k", k}, {"mean_re", mean.real()}, {"mean_im", mean.imag()}, {"target", target}, {"z", z}});
    }
    r.metrics = {{"N", cfg.N}, {"fraction_in_arc", frac}, {"moments", per}, {"unitarity_defect", defect}};
    r.passed = ok;
    r.detail = "fraction " + fmt("%.4f", frac) + ", max z-score " + fmt("%.2f", zmax);
    return r;
}

using Fn = CheckResult (*)(const Ctx&);
constexpr Fn kChecks[] = {c1_roundtrip, c2_moments,      c3_support,      c4_domains, c5_exterior,
                          c6_transform, c7_resolvent,    c8_pi,           c9_containment,
                          c10_bst_moments, c11_conditional, c12_brown, c13_unitary};

}  // namespace

int criterion_count() { return static_cast<int>(std::size(kChecks)); }

std::vector<CheckResult> run_suite(const SuiteOptions& opt) {
    const Ctx cx{opt.quick, opt.threads};
    std::vector<CheckResult> out;
    for (int id = 1; id <= criterion_count(); ++id) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = kChecks[id - 1](cx);
        } catch (const std::exception& e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (id == 1 && r.seconds >= 5.0) {
            r.passed = false;
            r.detail += " (too slow)";
        }
        if (id == 6 && r.seconds >= 30.0) {
            r.passed = false;
            r.detail += " (too slow)";
        }
        if (opt.on_result) opt.on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

json to_json(const std::vector<CheckResult>& results, const SuiteOptions& opt) {
    json checks = json::array();
    bool all = true;
    for (const auto& r : results) {
        all &= r.passed;
        checks.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                          {"seconds", r.seconds}, {"metrics", r.metrics}});
    }
    return {{"suite", opt.quick ? "quick" : "all"}, {"passed", all}, {"checks", checks}};
}

std::string format_line(const CheckResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%s] %2d ", r.passed ? "PASS" : "FAIL", r.id);
    std::ostringstream os;
    os << buf << r.name << " -- " << r.detail << " (" << fmt("%.1f", r.seconds) << " s)";
    return os.str();
}

}  // namespace brownflow::verify
