#pragma once

#include <memory>
#include <vector>

#include "brownflow/types.hpp"

namespace brownflow::domains {

enum class Verdict { inside, boundary_band, outside };

const char* to_string(Verdict v);

// witness is a signed margin, negative inside: T(lambda) - t in the level-set
// test, signed plane distance in the polygon test.
struct Classification {
    Verdict verdict = Verdict::outside;
    double witness = 0.0;
};

// Outer loops run counterclockwise, holes clockwise. Outer loops come first.
struct BoundaryPolyline {
    std::vector<std::vector<Complex>> loops;

    std::size_t vertex_count() const;
    double distance(Complex p) const;
    bool parity_inside(Complex p) const;
};

double signed_area(const std::vector<Complex>& loop);

struct DomainSpec {
    TimeParams params;
    double tol_band = 1e-3;
    // Use the traced polygon even when s == t. Only the consistency checks
    // need this.
    bool force_polygon = false;
    int resolution = 512;

    bool uses_polygon() const { return force_polygon || !params.single(); }
    void validate() const;
};

// Traces {T = s} by marching squares and refines vertices to |T - s| <= 1e-6.
BoundaryPolyline trace_level_set(double s, int resolution);

BoundaryPolyline boundary(const DomainSpec& spec, int resolution);

// Holds the traced polyline for repeated polygon queries.
class Domain {
public:
    explicit Domain(DomainSpec spec);

    const DomainSpec& spec() const { return spec_; }
    Classification contains(Complex lambda) const;
    const BoundaryPolyline& polyline() const;

private:
    DomainSpec spec_;
    mutable std::shared_ptr<const BoundaryPolyline> poly_;
};

Classification contains(const DomainSpec& spec, Complex lambda);

}  // namespace brownflow::domains
