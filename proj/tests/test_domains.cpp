#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "brownflow/cmaps.hpp"
#include "brownflow/domains.hpp"

using namespace brownflow;
using namespace brownflow::domains;

TEST_CASE("membership examples") {
    const DomainSpec one{{1.0, 1.0}};
    CHECK(contains(one, 1.0).verdict == Verdict::inside);
    CHECK(contains(one, 0.0).verdict == Verdict::outside);
    CHECK(contains(DomainSpec{{4.1, 4.1}}, 0.05).verdict == Verdict::outside);
    CHECK(contains(DomainSpec{{4.1, 4.1}}, -1.0).verdict == Verdict::inside);
    // band straddles the level set
    const double r = 2.0;  // T(2) ~ 0.4621
    CHECK(contains(DomainSpec{{cmaps::t_level(r), cmaps::t_level(r)}}, r).verdict == Verdict::boundary_band);
    CHECK(std::string(to_string(Verdict::boundary_band)) == "boundary_band");
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(contains(DomainSpec{{1.0, 2.5}}, 0.0), ValidationError);
    CHECK_THROWS_AS(contains(DomainSpec{{1.0, 0.0}}, 0.0), ValidationError);
    CHECK_THROWS_AS(trace_level_set(1.0, 32), ValidationError);
}

TEST_CASE("traced level sets") {
    for (double s : {0.5, 2.0, 3.5, 4.5, 6.0}) {
        const auto poly = trace_level_set(s, 512);
        REQUIRE(poly.loops.size() == (s > 4 ? 2u : 1u));
        double worst = 0.0;
        for (const auto& loop : poly.loops)
            for (Complex v : loop) worst = std::max(worst, std::abs(cmaps::t_level(v) - s));
        CHECK(worst <= 1e-6);
        CHECK(signed_area(poly.loops[0]) > 0.0);
        if (s > 4) {
            CHECK(signed_area(poly.loops[1]) < 0.0);
            CHECK_FALSE(poly.parity_inside(0.0));
        }
        CHECK(poly.parity_inside(1.0));
        // the loops are symmetric under conjugation
        CHECK(poly.distance(std::conj(poly.loops[0][3])) < 1e-3);
    }
}

TEST_CASE("unit circle crossing at +-i for s = 2") {
    // T(e^{i theta}) = |e^{i theta}-1|^2 = 2 at theta = pi/2
    const auto poly = trace_level_set(2.0, 512);
    CHECK(poly.distance(Complex(0, 1)) <= 1e-6);
    CHECK(poly.distance(Complex(0, -1)) <= 1e-6);
}

TEST_CASE("topology right at the transition") {
    // the outer loop pinches at -1 when s = 4; coarse lattices still split it
    for (int r : {64, 65, 100, 128}) {
        CHECK(trace_level_set(4.0 - 1e-9, r).loops.size() == 1);
        CHECK(trace_level_set(4.0 + 1e-9, r).loops.size() == 2);
    }
}

TEST_CASE("polygon and level-set tests agree when s == t") {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    for (double t : {1.0, 3.0, 4.5}) {
        DomainSpec spec{{t, t}};
        spec.force_polygon = true;
        const Domain poly(spec);
        int checked = 0;
        for (int k = 0; k < 1000; ++k) {
            const Complex lam(U(g), U(g));
            const auto a = contains(DomainSpec{{t, t}}, lam);
            const auto b = poly.contains(lam);
            if (a.verdict == Verdict::boundary_band || b.verdict == Verdict::boundary_band) continue;
            ++checked;
            CHECK(a.verdict == b.verdict);
        }
        CHECK(checked > 900);
    }
}

TEST_CASE("two-parameter boundary is the image of the level set") {
    const DomainSpec spec{{3.0, 1.0}};
    const auto img = boundary(spec, 256);
    REQUIRE(img.loops.size() == 1);
    const auto src = trace_level_set(3.0, 256);
    REQUIRE(src.loops[0].size() == img.loops[0].size());
    for (std::size_t j = 0; j < src.loops[0].size(); j += 17)
        CHECK(std::abs(cmaps::f_eval(2.0, src.loops[0][j]) - img.loops[0][j]) < 1e-12);
    const Domain dom(spec);
    CHECK(dom.contains(1.0).verdict == Verdict::inside);
    CHECK(dom.contains(50.0).verdict == Verdict::outside);
    CHECK(&dom.polyline() == &dom.polyline());

    // s > 4 keeps the hole
    const auto holed = boundary(DomainSpec{{5.0, 2.0}}, 256);
    CHECK(holed.loops.size() == 2);
    CHECK(Domain(DomainSpec{{5.0, 2.0}}).contains(0.0).verdict == Verdict::outside);
}
