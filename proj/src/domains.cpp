#include "brownflow/domains.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "brownflow/cmaps.hpp"

namespace brownflow::domains {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::inside: return "inside";
        case Verdict::boundary_band: return "boundary_band";
        case Verdict::outside: return "outside";
    }
    return "?";
}

std::size_t BoundaryPolyline::vertex_count() const {
    std::size_t n = 0;
    for (const auto& l : loops) n += l.size();
    return n;
}

namespace {

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double u = len2 > 0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return std::abs(p - (a + u * ab));
}

}  // namespace

double BoundaryPolyline::distance(Complex p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& l : loops)
        for (std::size_t i = 0, n = l.size(); i < n; ++i)
            d = std::min(d, segment_distance(p, l[i], l[(i + 1) % n]));
    return d;
}

bool BoundaryPolyline::parity_inside(Complex p) const {
    bool in = false;
    const double px = p.real(), py = p.imag();
    for (const auto& l : loops) {
        for (std::size_t i = 0, n = l.size(), j = n - 1; i < n; j = i++) {
            const double yi = l[i].imag(), yj = l[j].imag();
            if ((yi > py) != (yj > py)) {
                const double x = l[i].real() + (py - yi) / (yj - yi) * (l[j].real() - l[i].real());
                if (px < x) in = !in;
            }
        }
    }
    return in;
}

double signed_area(const std::vector<Complex>& loop) {
    double a = 0.0;
    for (std::size_t i = 0, n = loop.size(); i < n; ++i) {
        const Complex p = loop[i], q = loop[(i + 1) % n];
        a += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * a;
}

void DomainSpec::validate() const {
    params.validate();
    if (!(tol_band >= 0.0)) throw ValidationError("tol_band must be nonnegative");
    if (resolution < 64) throw ValidationError("resolution must be at least 64");
}

namespace {

constexpr double kHuge = 1e300;

double level(Complex z, double s) {
    const double T = cmaps::t_level(z);
    return (std::isfinite(T) ? T : kHuge) - s;
}

// root of T - s on the segment a -> b; va < 0 <= vb or the reverse
Complex refine(Complex a, Complex b, double va, double s) {
    double lo = 0.0, hi = 1.0;
    Complex p = a;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        p = a + mid * (b - a);
        const double v = level(p, s);
        if (std::abs(v) <= 1e-10 || hi - lo < 1e-16) break;
        if ((v < 0) == (va < 0))
            lo = mid;
        else
            hi = mid;
    }
    return p;
}

void orient(std::vector<std::vector<Complex>>& loops) {
    const std::size_t n = loops.size();
    std::vector<int> depth(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            BoundaryPolyline single{{loops[j]}};
            if (single.parity_inside(loops[i].front())) ++depth[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const bool want_ccw = depth[i] % 2 == 0;
        if ((signed_area(loops[i]) > 0) != want_ccw) std::reverse(loops[i].begin(), loops[i].end());
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return depth[a] < depth[b]; });
    std::vector<std::vector<Complex>> sorted;
    for (auto i : order) sorted.push_back(std::move(loops[i]));
    loops = std::move(sorted);
}

}  // namespace

BoundaryPolyline trace_level_set(double s, int resolution) {
    if (!(s > 0.0)) throw ValidationError("level must be positive");
    if (resolution < 64) throw ValidationError("resolution must be at least 64");
    // the lattice has spacing 1/q so that -1, 0 and 1 are nodes
    int R = static_cast<int>(std::ceil(1.0 + s + std::sqrt(s)));
    std::vector<double> v;
    int q = 0, n = 0;
    std::vector<double> xs;
    for (int attempt = 0;; ++attempt) {
        q = std::max(1, static_cast<int>(std::ceil(resolution / (2.0 * R))));
        n = 2 * R * q + 1;
        xs.resize(n);
        for (int i = 0; i < n; ++i) xs[i] = static_cast<double>(i - R * q) / q;
        v.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(j) * n + i] = level({xs[i], xs[j]}, s);
        bool frame_ok = true;
        for (int k = 0; k < n && frame_ok; ++k) {
            frame_ok = v[k] > 0 && v[static_cast<std::size_t>(n - 1) * n + k] > 0 &&
                       v[static_cast<std::size_t>(k) * n] > 0 && v[static_cast<std::size_t>(k) * n + n - 1] > 0;
        }
        if (frame_ok) break;
        if (attempt > 4) throw TopologyError("could not find a frame enclosing the level set");
        R *= 2;
    }
    auto at = [&](int i, int j) { return v[static_cast<std::size_t>(j) * n + i]; };
    auto inside = [&](int i, int j) { return at(i, j) < 0; };
    const long nh = static_cast<long>(n - 1) * n;
    auto hedge = [&](int i, int j) { return static_cast<long>(j) * (n - 1) + i; };
    auto vedge = [&](int i, int j) { return nh + static_cast<long>(j) * n + i; };
    const long n_edges = nh + static_cast<long>(n - 1) * n;
    std::vector<std::array<long, 2>> link(n_edges, {-1, -1});
    auto connect = [&](long a, long b) {
        for (long e : {a, b}) {
            const long other = e == a ? b : a;
            if (link[e][0] < 0)
                link[e][0] = other;
            else
                link[e][1] = other;
        }
    };
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            const bool c0 = inside(i, j), c1 = inside(i + 1, j), c2 = inside(i + 1, j + 1), c3 = inside(i, j + 1);
            const int code = c0 | (c1 << 1) | (c2 << 2) | (c3 << 3);
            if (code == 0 || code == 15) continue;
            const long e0 = hedge(i, j), e1 = vedge(i + 1, j), e2 = hedge(i, j + 1), e3 = vedge(i, j);
            if (code == 5 || code == 10) {
                const double xc = 0.5 * (xs[i] + xs[i + 1]), yc = 0.5 * (xs[j] + xs[j + 1]);
                const bool centre_in = level({xc, yc}, s) < 0;
                // isolate the corners that are not joined through the centre
                const bool cut_c0_c2 = (code == 5) != centre_in;
                if (cut_c0_c2) {
                    connect(e3, e0);
                    connect(e1, e2);
                } else {
                    connect(e0, e1);
                    connect(e2, e3);
                }
                continue;
            }
            std::array<long, 4> edges{e0, e1, e2, e3};
            std::array<bool, 4> crossed{c0 != c1, c1 != c2, c2 != c3, c3 != c0};
            long first = -1;
            for (int k = 0; k < 4; ++k) {
                if (!crossed[k]) continue;
                if (first < 0)
                    first = edges[k];
                else
                    connect(first, edges[k]);
            }
        }
    }
    auto edge_point = [&](long e) {
        int ia, ja, ib, jb;
        if (e < nh) {
            ja = jb = static_cast<int>(e / (n - 1));
            ia = static_cast<int>(e % (n - 1));
            ib = ia + 1;
        } else {
            const long r = e - nh;
            ja = static_cast<int>(r / n);
            jb = ja + 1;
            ia = ib = static_cast<int>(r % n);
        }
        return refine({xs[ia], xs[ja]}, {xs[ib], xs[jb]}, at(ia, ja), s);
    };
    BoundaryPolyline out;
    std::vector<char> seen(n_edges, 0);
    for (long e = 0; e < n_edges; ++e) {
        if (link[e][0] < 0 || seen[e]) continue;
        std::vector<Complex> loop;
        long prev = -1, cur = e;
        while (!seen[cur]) {
            seen[cur] = 1;
            loop.push_back(edge_point(cur));
            const long next = link[cur][0] != prev ? link[cur][0] : link[cur][1];
            if (next < 0) throw TopologyError("open contour while tracing the level set");
            prev = cur;
            cur = next;
        }
        if (loop.size() >= 3) out.loops.push_back(std::move(loop));
    }
    orient(out.loops);
    return out;
}

BoundaryPolyline boundary(const DomainSpec& spec, int resolution) {
    spec.validate();
    const double s = spec.params.s, t = spec.params.t;
    BoundaryPolyline poly = trace_level_set(s, resolution);
    const std::size_t expected = s > 4.0 ? 2 : 1;
    if (poly.loops.size() != expected) {
        std::ostringstream os;
        os << "traced " << poly.loops.size() << " boundary loops at s = " << s << ", expected "
           << expected << "; increase the resolution (currently " << resolution << ")";
        throw TopologyError(os.str());
    }
    if (s != t) {
        for (auto& loop : poly.loops)
            for (auto& p : loop) p = cmaps::f_eval(s - t, p);
        orient(poly.loops);
    }
    return poly;
}

Domain::Domain(DomainSpec spec) : spec_(spec) { spec_.validate(); }

const BoundaryPolyline& Domain::polyline() const {
    if (!poly_) poly_ = std::make_shared<const BoundaryPolyline>(boundary(spec_, spec_.resolution));
    return *poly_;
}

Classification Domain::contains(Complex lambda) const {
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw ValidationError("lambda must be finite");
    if (lambda == Complex(0.0)) return {Verdict::outside, std::numeric_limits<double>::infinity()};
    if (!spec_.uses_polygon()) {
        const double w = cmaps::t_level(lambda) - spec_.params.t;
        if (std::abs(w) <= spec_.tol_band) return {Verdict::boundary_band, w};
        return {w < 0 ? Verdict::inside : Verdict::outside, w};
    }
    const BoundaryPolyline& poly = polyline();
    const double d = poly.distance(lambda);
    const bool in = poly.parity_inside(lambda);
    const double w = in ? -d : d;
    if (d <= spec_.tol_band) return {Verdict::boundary_band, w};
    return {in ? Verdict::inside : Verdict::outside, w};
}

Classification contains(const DomainSpec& spec, Complex lambda) { return Domain(spec).contains(lambda); }

}  // namespace brownflow::domains
