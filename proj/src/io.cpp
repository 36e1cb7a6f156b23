#include "brownflow/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace brownflow::io {

std::string num(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, end);
}

std::string cloud_csv(const std::vector<rmt::EigenvalueCloud>& clouds) {
    std::ostringstream os;
    os << "trial,re,im\n";
    for (const auto& c : clouds)
        for (Complex z : c.values) os << c.trial << ',' << num(z.real()) << ',' << num(z.imag()) << '\n';
    return os.str();
}

std::string polyline_csv(const domains::BoundaryPolyline& poly) {
    std::ostringstream os;
    os << "loop_id,vertex_index,re,im\n";
    for (std::size_t l = 0; l < poly.loops.size(); ++l)
        for (std::size_t v = 0; v < poly.loops[l].size(); ++v)
            os << l << ',' << v << ',' << num(poly.loops[l][v].real()) << ',' << num(poly.loops[l][v].imag()) << '\n';
    return os.str();
}

std::string field_csv(const brown::ScalarField& f) {
    std::ostringstream os;
    os << "re,im,value,mask\n";
    for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i < f.grid.nx; ++i) {
            const Complex z = f.grid.point(i, j);
            const std::size_t k = static_cast<std::size_t>(j) * f.grid.nx + i;
            os << num(z.real()) << ',' << num(z.imag()) << ',' << num(f.values[k]) << ',' << int(f.mask[k]) << '\n';
        }
    return os.str();
}

std::string measure_csv(const cmaps::SpectralMeasureGrid& g) {
    std::ostringstream os;
    os << "theta,density,weight\n";
    for (std::size_t j = 0; j < g.size(); ++j)
        os << num(g.thetas[j]) << ',' << num(g.density[j]) << ',' << num(g.weights[j]) << '\n';
    return os.str();
}

json polyline_json(const domains::BoundaryPolyline& poly, const domains::DomainSpec& spec, int resolution) {
    json loops = json::array();
    for (const auto& l : poly.loops) {
        json pts = json::array();
        for (Complex z : l) pts.push_back({z.real(), z.imag()});
        loops.push_back({{"signed_area", domains::signed_area(l)}, {"vertices", pts}});
    }
    return {{"s", spec.params.s},
            {"t", spec.params.t},
            {"resolution", resolution},
            {"tol_band", spec.tol_band},
            {"vertex_tolerance_T", 1e-6},
            {"loop_count", poly.loops.size()},
            {"loops", loops}};
}

json config_json(const rmt::EnsembleConfig& cfg) {
    return {{"kind", rmt::to_string(cfg.kind)},
            {"N", cfg.N},
            {"s", cfg.params.s},
            {"t", cfg.params.t},
            {"steps", cfg.resolved_steps()},
            {"seed", cfg.seed}};
}

json field_meta_json(const brown::ScalarField& f) {
    return {{"kind", brown::to_string(f.kind)},
            {"grid",
             {{"re_min", f.grid.re_min},
              {"re_max", f.grid.re_max},
              {"im_min", f.grid.im_min},
              {"im_max", f.grid.im_max},
              {"nx", f.grid.nx},
              {"ny", f.grid.ny}}},
            {"epsilon", f.epsilon},
            {"h", f.h},
            {"masked", f.masked()}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ValidationError("write failed for '" + path + "'");
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace brownflow::io
