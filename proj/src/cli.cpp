#include "brownflow/cli.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "brownflow/brown.hpp"
#include "brownflow/cmaps.hpp"
#include "brownflow/domains.hpp"
#include "brownflow/hall.hpp"
#include "brownflow/io.hpp"
#include "brownflow/parallel.hpp"
#include "brownflow/rmt.hpp"
#include "brownflow/verify.hpp"

namespace brownflow::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::optional<double> s, t;
    int N = 100;
    int steps = 0;
    int trials = 1;
    std::optional<std::uint64_t> seed;
    int resolution = 0;
    std::string grid;
    double epsilon_min = 1e-6;
    std::optional<double> margin;
    int threads = 0;
    std::string format = "csv";
    std::string out;

    std::string kind = "gl";
    std::string field = "brown_density";
    std::string poly = "u^2";
    std::vector<double> z;        // re,im pairs
    std::vector<double> lambda;   // re,im pairs
    int n = 2;
    std::string suite = "all";
    std::string json_path;
    std::vector<int> only;
};

TimeParams params_of(const RunConfig& rc, double default_t = 1.0) {
    TimeParams p;
    p.t = rc.t.value_or(default_t);
    p.s = rc.s.value_or(p.t);
    p.validate();
    return p;
}

std::uint64_t require_seed(const RunConfig& rc) {
    if (!rc.seed) throw ValidationError("--seed is required for stochastic commands");
    return *rc.seed;
}

std::vector<Complex> pairs(const std::vector<double>& v, const char* flag) {
    if (v.size() % 2) throw ValidationError(std::string(flag) + " takes re,im pairs");
    std::vector<Complex> out;
    for (std::size_t k = 0; k < v.size(); k += 2) out.emplace_back(v[k], v[k + 1]);
    return out;
}

void emit(const RunConfig& rc, std::ostream& out, const std::string& csv, const json& j) {
    if (rc.out.empty()) {
        out << (rc.format == "json" ? j.dump(2) + "\n" : csv);
        return;
    }
    if (rc.format == "json")
        io::write_json(rc.out, j);
    else
        io::write_text(rc.out, csv);
}

json flags_json(const RunConfig& rc);

void sidecar(const RunConfig& rc, json meta) {
    if (rc.out.empty() || rc.format != "csv") return;
    meta["flags"] = flags_json(rc);
    io::write_json(rc.out + ".json", meta);
}

json flags_json(const RunConfig& rc) {
    json j = {{"N", rc.N}, {"steps", rc.steps}, {"trials", rc.trials}, {"resolution", rc.resolution},
              {"grid", rc.grid}, {"epsilon_min", rc.epsilon_min}, {"format", rc.format}, {"out", rc.out},
              {"kind", rc.kind}};
    if (rc.s) j["s"] = *rc.s;
    if (rc.t) j["t"] = *rc.t;
    if (rc.seed) j["seed"] = *rc.seed;
    if (rc.margin) j["margin"] = *rc.margin;
    return j;
}

int cmd_simulate(const RunConfig& rc, std::ostream& out) {
    rmt::EnsembleConfig cfg;
    cfg.kind = rmt::parse_kind(rc.kind);
    cfg.N = rc.N;
    cfg.params = params_of(rc, 1.0);
    cfg.steps = rc.steps;
    cfg.seed = require_seed(rc);
    if (cfg.kind != rmt::Kind::elliptic_bm && !cfg.params.single())
        throw ValidationError("--s only applies to --kind elliptic");
    const auto t0 = std::chrono::steady_clock::now();
    const auto clouds = rmt::simulate_clouds(cfg, rc.trials, rc.threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json contain = json::array();
    const bool matrix_flow = cfg.kind == rmt::Kind::gl_bm || cfg.kind == rmt::Kind::elliptic_bm;
    if (matrix_flow) {
        const domains::Domain dom(domains::DomainSpec{cfg.params});
        const double margin = rc.margin.value_or(dom.spec().uses_polygon() ? 0.05 : 0.2);
        for (const auto& c : clouds) contain.push_back(rmt::containment_stats(c, dom, margin));
        out << "containment (margin " << margin << "):";
        for (const auto& f : contain) out << ' ' << f.get<double>();
        out << '\n';
    }
    json j = io::config_json(cfg);
    j["trials"] = rc.trials;
    j["wall_time"] = wall;
    j["containment"] = contain;
    json vals = json::array();
    if (rc.format == "json")
        for (const auto& c : clouds)
            for (Complex z : c.values) vals.push_back({c.trial, z.real(), z.imag()});
    json full = j;
    full["eigenvalues"] = vals;
    emit(rc, out, io::cloud_csv(clouds), full);
    sidecar(rc, j);
    return kOk;
}

int cmd_domain(const RunConfig& rc, std::ostream& out) {
    domains::DomainSpec spec;
    spec.params = params_of(rc, 1.0);
    spec.resolution = rc.resolution > 0 ? rc.resolution : 512;
    spec.validate();
    const auto poly = domains::boundary(spec, spec.resolution);
    const json meta = io::polyline_json(poly, spec, spec.resolution);
    emit(rc, out, io::polyline_csv(poly), meta);
    json side = meta;
    side.erase("loops");
    sidecar(rc, side);
    if (!rc.out.empty()) out << poly.loops.size() << " loop(s), " << poly.vertex_count() << " vertices\n";
    return kOk;
}

int cmd_nu(const RunConfig& rc, std::ostream& out) {
    const double t = params_of(rc, 1.0).t;
    const int n = rc.resolution > 0 ? rc.resolution : 2049;
    const auto grid = cmaps::nu_density(t, n);
    json moments = json::array();
    for (int k = 0; k <= 8; ++k) moments.push_back(cmaps::nu_moment(t, k));
    json meta = {{"t", t},
                 {"grid_size", n},
                 {"full_circle", grid.support.full_circle},
                 {"theta_max", grid.support.theta_max},
                 {"mass", grid.mass()},
                 {"moments", moments}};
    json full = meta;
    full["thetas"] = grid.thetas;
    full["density"] = grid.density;
    emit(rc, out, io::measure_csv(grid), full);
    sidecar(rc, meta);
    if (!rc.out.empty())
        out << "theta_max " << grid.support.theta_max << (grid.support.full_circle ? " (full circle)" : "")
            << ", mass " << grid.mass() << '\n';
    return kOk;
}

brown::Grid2D default_grid(const ComplexMatrix& A) {
    double r = 0.0;
    for (Complex z : rmt::eigenvalue_list(A)) r = std::max(r, std::abs(z));
    r = std::ceil(1.2 * r + 0.5);
    return {-r, r, -r, r, 121, 121};
}

int cmd_brown(const RunConfig& rc, std::ostream& out) {
    rmt::EnsembleConfig cfg;
    cfg.kind = rmt::parse_kind(rc.kind);
    cfg.N = rc.N;
    cfg.params = params_of(rc, 1.0);
    cfg.steps = rc.steps;
    cfg.seed = require_seed(rc);
    const auto kind = brown::parse_field_kind(rc.field);
    const ComplexMatrix A = rmt::simulate(cfg);
    const brown::Grid2D grid = rc.grid.empty() ? default_grid(A) : brown::Grid2D::parse(rc.grid);
    brown::ScalarField f;
    json extra = json::object();
    switch (kind) {
        case brown::FieldKind::T: f = brown::t_level_field(grid); break;
        case brown::FieldKind::fk_logdet: f = brown::fk_logdet_field(A, grid); break;
        case brown::FieldKind::reg_trace: f = brown::reg_trace_field(A, grid, rc.epsilon_min, rc.threads); break;
        case brown::FieldKind::resolvent_norm: f = brown::resolvent_norm_field(A, grid, rc.n, rc.threads); break;
        case brown::FieldKind::laplacian_count: f = brown::laplacian_counting(A, grid, grid.dx()); break;
        case brown::FieldKind::brown_density: {
            const auto sched = brown::EpsilonSchedule::geometric(1.0, rc.epsilon_min, 13);
            auto bd = brown::brown_density_grid(A, grid, sched, rc.threads);
            f = std::move(bd.field);
            extra["epsilons"] = sched.epsilons;
            extra["mass"] = f.integrate();
            break;
        }
    }
    json meta = io::field_meta_json(f);
    meta["matrix"] = io::config_json(cfg);
    meta.update(extra);
    json full = meta;
    full["values"] = f.values;
    emit(rc, out, io::field_csv(f), full);
    sidecar(rc, meta);
    if (!rc.out.empty()) out << brown::to_string(kind) << " on " << grid.nx << "x" << grid.ny << " grid, integral "
                             << f.integrate() << ", masked " << f.masked() << '\n';
    return kOk;
}

int cmd_transform(const RunConfig& rc, std::ostream& out) {
    const TimeParams p = params_of(rc, 1.0);
    const LaurentPoly poly = LaurentPoly::parse(rc.poly);
    json rep = {{"s", p.s}, {"t", p.t}, {"input", poly.str()}};
    std::optional<LaurentPoly> closed;
    try {
        closed = hall::closed_form_transform(p, poly);
        rep["closed_form"] = closed->str();
    } catch (const UnsupportedError& e) {
        rep["closed_form"] = nullptr;
        rep["closed_form_note"] = e.what();
    }
    if (p.single()) {
        std::vector<Complex> zs = pairs(rc.z, "--z");
        if (zs.empty()) zs = {1.0, {1.2, 0.3}, {0.8, -0.2}};
        const int n = rc.resolution > 0 ? rc.resolution : 2049;
        const auto measure = hall::make_measure(p.t, n);
        const auto f = hall::CircleFunctionSamples::sample(measure, poly);
        json evals = json::array();
        for (Complex z : zs) {
            const auto g = hall::gt_apply_detailed(p.t, f, z);
            json e = {{"z", {z.real(), z.imag()}}, {"value", {g.value.real(), g.value.imag()}},
                      {"error_estimate", g.error_estimate}};
            if (closed) {
                const Complex c = (*closed)(z);
                e["closed_form_value"] = {c.real(), c.imag()};
                e["abs_difference"] = std::abs(c - g.value);
            }
            evals.push_back(e);
        }
        rep["grid_size"] = n;
        rep["evaluations"] = evals;
        const auto lams = pairs(rc.lambda, "--lambda");
        if (!lams.empty()) {
            const auto ident = hall::resolvent_identity_check(p.t, lams, zs, n);
            json samples = json::array();
            for (const auto& s : ident.samples)
                samples.push_back({{"lambda", {s.lambda.real(), s.lambda.imag()}}, {"z", {s.z.real(), s.z.imag()}},
                                   {"deviation", s.deviation}});
            rep["resolvent_identity"] = {{"max_deviation", ident.max_deviation}, {"tolerance", ident.tolerance},
                                         {"passed", ident.passed}, {"samples", samples}};
        }
    }
    if (rc.out.empty())
        out << rep.dump(2) << '\n';
    else
        io::write_json(rc.out, rep);
    return kOk;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
    if (rc.suite != "all" && rc.suite != "quick") throw ValidationError("--suite must be all or quick");
    verify::SuiteOptions opt;
    opt.quick = rc.suite == "quick";
    opt.threads = rc.threads;
    opt.only = rc.only;
    opt.on_result = [&](const verify::CheckResult& r) { out << verify::format_line(r) << std::endl; };
    const auto results = verify::run_suite(opt);
    const json j = verify::to_json(results, opt);
    if (!rc.json_path.empty()) io::write_json(rc.json_path, j);
    return j["passed"].get<bool>() ? kOk : kNumeric;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"brownflow: spectral domains, matrix Brownian motions and the free Hall transform"};
    app.require_subcommand(1, 1);
    RunConfig rc;

    auto common = [&](CLI::App* c) {
        c->add_option("--s", rc.s, "outer time s (defaults to t)");
        c->add_option("--t", rc.t, "time t");
        c->add_option("--N", rc.N, "matrix size")->check(CLI::PositiveNumber);
        c->add_option("--steps", rc.steps, "SDE steps (0 = default)")->check(CLI::NonNegativeNumber);
        c->add_option("--trials", rc.trials, "independent trials")->check(CLI::PositiveNumber);
        c->add_option("--seed", rc.seed, "64-bit seed");
        c->add_option("--resolution", rc.resolution, "tracing or quadrature resolution")->check(CLI::NonNegativeNumber);
        c->add_option("--grid", rc.grid, "RE_MIN,RE_MAX,IM_MIN,IM_MAX,NX,NY");
        c->add_option("--epsilon-min", rc.epsilon_min, "smallest regularization")->check(CLI::PositiveNumber);
        c->add_option("--margin", rc.margin, "containment margin")->check(CLI::NonNegativeNumber);
        c->add_option("--threads", rc.threads, "worker threads (BROWNFLOW_THREADS fallback)")->check(CLI::NonNegativeNumber);
        c->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--out", rc.out, "output path (stdout when omitted)");
    };

    auto* sim = app.add_subcommand("simulate", "eigenvalue clouds and containment statistics");
    common(sim);
    sim->add_option("--kind", rc.kind, "gl, unitary, elliptic, ginibre or wigner");
    auto* dom = app.add_subcommand("domain", "boundary polylines of the spectral domains");
    common(dom);
    auto* nu = app.add_subcommand("nu", "support, moments and density of nu_t");
    common(nu);
    auto* br = app.add_subcommand("brown", "scalar fields over a grid");
    common(br);
    br->add_option("--kind", rc.kind, "matrix ensemble");
    br->add_option("--field", rc.field, "T, fk_logdet, reg_trace, brown_density, resolvent_norm or laplacian_count");
    br->add_option("--n", rc.n, "power for resolvent_norm")->check(CLI::PositiveNumber);
    auto* tr = app.add_subcommand("transform", "free Hall transform checks");
    common(tr);
    tr->add_option("--poly", rc.poly, "Laurent polynomial in u, e.g. u^2 or u^-1");
    tr->add_option("--z", rc.z, "evaluation points as re,im pairs")->delimiter(',');
    tr->add_option("--lambda", rc.lambda, "resolvent points as re,im pairs")->delimiter(',');
    auto* ver = app.add_subcommand("verify", "acceptance suite");
    ver->add_option("--suite", rc.suite, "all or quick");
    ver->add_option("--json", rc.json_path, "machine-readable report");
    ver->add_option("--only", rc.only, "criterion ids")->delimiter(',');
    ver->add_option("--threads", rc.threads, "worker threads")->check(CLI::NonNegativeNumber);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    try {
        if (*sim) return cmd_simulate(rc, out);
        if (*dom) return cmd_domain(rc, out);
        if (*nu) return cmd_nu(rc, out);
        if (*br) return cmd_brown(rc, out);
        if (*tr) return cmd_transform(rc, out);
        if (*ver) return cmd_verify(rc, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumeric;
    }
    return kValidation;
}

}  // namespace brownflow::cli
