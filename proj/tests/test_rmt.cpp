#include <doctest.h>

#include <cmath>
#include <numeric>

#include "brownflow/domains.hpp"
#include "brownflow/rmt.hpp"
#include "brownflow/rng.hpp"

using namespace brownflow;
using namespace brownflow::rmt;

namespace {

struct MeanSe {
    double mean = 0.0, se = 0.0;
};

MeanSe mean_se(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double v = 0.0;
    for (double a : x) v += (a - m) * (a - m);
    return {m, std::sqrt(v / (n - 1) / n)};
}

}  // namespace

TEST_CASE("philox known answers") {
    // reference vectors published with Random123
    CHECK(rng::philox4x32({0, 0, 0, 0}, {0, 0}) == rng::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(rng::philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          rng::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
}

TEST_CASE("streams are addressable and reproducible") {
    const rng::Stream a(5, 0), b(5, 0), c(5, 1), d(6, 0);
    std::vector<double> x(64), y(64), z(64), w(64), x2(64);
    a.normals(3, rng::kIncrementA, x.data(), 64);
    b.normals(3, rng::kIncrementA, y.data(), 64);
    c.normals(3, rng::kIncrementA, z.data(), 64);
    d.normals(3, rng::kIncrementA, w.data(), 64);
    a.normals(3, rng::kIncrementB, x2.data(), 64);
    CHECK(x == y);
    CHECK(x != z);
    CHECK(x != w);
    CHECK(x != x2);
    // a later block does not depend on whether earlier blocks were drawn
    std::vector<double> late1(8), late2(8);
    a.normals(99, rng::kIncrementA, late1.data(), 8);
    b.normals(99, rng::kIncrementA, late2.data(), 8);
    CHECK(late1 == late2);

    std::vector<double> big(200000);
    a.normals(0, rng::kOneShot, big.data(), big.size());
    const auto ms = mean_se(big);
    CHECK(std::abs(ms.mean) < 5 * ms.se);
    double var = 0.0;
    for (double v : big) var += v * v;
    CHECK(std::abs(var / big.size() - 1.0) < 0.02);
}

TEST_CASE("increments") {
    const rng::Stream st(11, 0);
    const ComplexMatrix W = sample_increment(Kind::wigner, 12, 0.01, st, 0, rng::kIncrementA);
    CHECK((W - W.adjoint()).norm() == 0.0);

    // E (1/N) tr(dC dC^*) = dt
    const int N = 8;
    const double dt = 0.05;
    std::vector<double> q;
    for (int k = 0; k < 2000; ++k) {
        const ComplexMatrix C = sample_increment(Kind::ginibre, N, dt, st, k, rng::kIncrementA);
        q.push_back((C * C.adjoint()).trace().real() / N);
    }
    const auto ms = mean_se(q);
    CHECK(std::abs(ms.mean - dt) < 4 * ms.se);
    CHECK(sample_increment(Kind::ginibre, N, 1e-12, st, 0, rng::kIncrementA).norm() < 1e-4);
    CHECK_THROWS_AS(sample_increment(Kind::ginibre, N, 0.0, st, 0, rng::kIncrementA), ValidationError);
}

TEST_CASE("unitary motion stays unitary and is reproducible") {
    EnsembleConfig cfg;
    cfg.N = 30;
    cfg.params = TimeParams::one(2.0);
    cfg.kind = Kind::unitary_bm;
    cfg.steps = 400;
    cfg.seed = 42;
    const ComplexMatrix U = simulate(cfg, 0);
    CHECK(unitarity_defect(U) <= 1e-8);
    const ComplexMatrix U2 = simulate(cfg, 0);
    CHECK((U - U2).norm() == 0.0);
    CHECK((U - simulate(cfg, 1)).norm() > 1.0);
    for (Complex l : eigenvalue_list(U)) CHECK(std::abs(std::abs(l) - 1.0) < 1e-8);

    cfg.params = TimeParams::one(1e-10);
    cfg.steps = 10;
    CHECK((simulate(cfg, 0) - ComplexMatrix::Identity(30, 30)).norm() < 1e-3);
}

TEST_CASE("too coarse a step is reported") {
    EnsembleConfig cfg;
    cfg.N = 20;
    cfg.params = TimeParams::one(400.0);
    cfg.kind = Kind::unitary_bm;
    cfg.steps = 1;
    cfg.seed = 1;
    CHECK_THROWS_AS(simulate(cfg, 0), StepSizeError);
}

TEST_CASE("first moments follow the exact Euler expectations") {
    // gl: E B = I for any step count
    EnsembleConfig gl;
    gl.N = 20;
    gl.params = TimeParams::one(1.0);
    gl.steps = 50;
    gl.seed = 77;
    std::vector<double> re;
    for (const auto& c : simulate_clouds(gl, 64)) {
        Complex m = 0.0;
        for (Complex l : c.values) m += l;
        re.push_back(m.real() / gl.N);
    }
    auto ms = mean_se(re);
    CHECK(std::abs(ms.mean - 1.0) < 4 * ms.se);

    // elliptic: each step multiplies the mean by 1 - (s-t)/(2K)
    EnsembleConfig el = gl;
    el.kind = Kind::elliptic_bm;
    el.params = {3.0, 1.0};
    std::vector<double> tr;
    for (int k = 0; k < 64; ++k) tr.push_back(trace_moment(simulate(el, k), 1).real());
    ms = mean_se(tr);
    const double exact = std::pow(1.0 - 2.0 / (2 * 50), 50);
    CHECK(std::abs(ms.mean - exact) < 4 * ms.se);
    CHECK(std::abs(exact - std::exp(-1.0)) < 0.01);
}

TEST_CASE("default step counts") {
    CHECK(default_steps(1.0) == 1000);
    CHECK(default_steps(7.5) == 1600);
    EnsembleConfig el;
    el.kind = Kind::elliptic_bm;
    el.params = {6.0, 1.0};
    CHECK(el.resolved_steps() == 1200);
    CHECK(parse_kind("gl") == Kind::gl_bm);
    CHECK_THROWS_AS(parse_kind("nope"), ValidationError);
}

TEST_CASE("eigenvalues and trace moments") {
    ComplexMatrix D = ComplexMatrix::Zero(3, 3);
    D.diagonal() << Complex(2, 0), Complex(0, 1), Complex(-0.5, 0);
    auto ev = eigenvalue_list(D);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(ev[0] + 0.5) < 1e-14);
    CHECK(std::abs(ev[2] - 2.0) < 1e-14);
    const Complex m2 = (4.0 + Complex(0, 1) * Complex(0, 1) + 0.25) / 3.0;
    CHECK(std::abs(trace_moment(D, 2) - m2) < 1e-14);
    const Complex mm1 = (0.5 + Complex(0, -1) - 2.0) / 3.0;
    CHECK(std::abs(trace_moment(D, -1) - mm1) < 1e-14);
    CHECK(trace_moment(ComplexMatrix::Identity(4, 4), 5) == Complex(1.0));
    ComplexMatrix Nil = ComplexMatrix::Zero(2, 2);
    Nil(0, 1) = 1.0;
    for (Complex l : eigenvalue_list(Nil)) CHECK(std::abs(l) < 1e-12);
    CHECK_THROWS_AS(trace_moment(Nil, -1), SingularPointError);
}

TEST_CASE("conditional expectation") {
    EnsembleConfig gl;
    gl.N = 16;
    gl.params = TimeParams::one(1.0);
    gl.steps = 100;
    gl.seed = 5;
    const ComplexMatrix B = simulate(gl, 0);
    const auto c = conditional_expectation_mc(B, 1.0, LaurentPoly::constant(2.5), 10, 1);
    CHECK((c - 2.5 * ComplexMatrix::Identity(16, 16)).norm() == 0.0);

    // E p(B U_t) for p(u) = u is e^{-t/2} B
    const auto e1 = conditional_expectation_mc(B, 1.0, LaurentPoly::monomial(1), 400, 2);
    const double rel = (e1 - std::exp(-0.5) * B).norm() / B.norm();
    CHECK(rel < 0.1);
    const auto again = conditional_expectation_mc(B, 1.0, LaurentPoly::monomial(1), 400, 2, {10, 3});
    CHECK((again - e1).norm() == 0.0);
}

TEST_CASE("containment fractions") {
    const domains::Domain one(domains::DomainSpec{{1.0, 1.0}});
    CHECK(containment_fraction({1.0, Complex(1.1, 0.1)}, one, 0.0) == 1.0);
    CHECK(containment_fraction({0.0, 1.0}, one, 0.0) == 0.5);
    EigenvalueCloud cloud;
    cloud.values = {0.0};
    CHECK(containment_stats(cloud, one, 0.05) == 0.0);
}
