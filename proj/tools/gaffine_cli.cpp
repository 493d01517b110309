// gaffine: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 domain or input error (JSON report on
// stderr), 3 integrator failure.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gaffine/abel.hpp"
#include "gaffine/catalog.hpp"
#include "gaffine/classify.hpp"
#include "gaffine/curve.hpp"
#include "gaffine/extremal.hpp"
#include "gaffine/io.hpp"
#include "gaffine/numeric.hpp"
#include "gaffine/plane.hpp"
#include "gaffine/profile.hpp"
#include "gaffine/reconstruct.hpp"
#include "gaffine/space.hpp"

using namespace gaffine;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Grid {
    double t_min = 0.0;
    double t_max = 1.0;
    std::size_t n = 201;
};

Grid parse_grid(const std::string& s) {
    Grid g;
    double a, b;
    long n;
    char tail;
    if (std::sscanf(s.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &tail) != 3)
        throw UsageError("--grid expects t_min:t_max:n, got '" + s + "'");
    if (n < 2) throw UsageError("--grid needs n >= 2");
    if (!(a < b)) throw UsageError("--grid needs t_min < t_max");
    g.t_min = a;
    g.t_max = b;
    g.n = static_cast<std::size_t>(n);
    return g;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& it : items) {
        const auto eq = it.find('=');
        char* end = nullptr;
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + it + "'");
        const std::string val = it.substr(eq + 1);
        const double v = std::strtod(val.c_str(), &end);
        if (val.empty() || *end) throw UsageError("bad value in --param '" + it + "'");
        out[it.substr(0, eq)] = v;
    }
    return out;
}

std::string output_path(const std::string& p) {
    if (p.empty() || p == "-") return p;
    const char* dir = std::getenv("GAFFINE_OUTPUT_DIR");
    if (dir && *dir && std::filesystem::path(p).is_relative()) return (std::filesystem::path(dir) / p).string();
    return p;
}

void emit(const std::string& path, const std::string& content) {
    const std::string p = output_path(path);
    if (p.empty() || p == "-")
        std::cout << content;
    else
        write_text_file(p, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Curve source shared by invariants / extremal / classify.
struct CurveArgs {
    std::string builtin;
    std::vector<std::string> params;
    std::string expr;
    std::string x, y, z, w;
    std::string samples;
    int dim = 0;

    void add(CLI::App* app) {
        app->add_option("--builtin", builtin, "Catalog curve name (see `catalog`)");
        app->add_option("--param", params, "Parameter name=value (repeatable)");
        app->add_option("--expr", expr, "Parenthesized coordinate list, e.g. \"(t, exp(t))\"");
        app->add_option("--x", x, "First coordinate expression");
        app->add_option("--y", y, "Second coordinate expression");
        app->add_option("--z", z, "Third coordinate expression");
        app->add_option("--w", w, "Fourth (homogeneous) coordinate expression");
        app->add_option("--samples", samples, "CSV file with header t,x1,x2[,x3]");
        app->add_option("--dim", dim, "Dimension (2, 3, or 4 for homogeneous coordinates)")->check(CLI::Range(2, 4));
    }
    bool given() const { return !builtin.empty() || !expr.empty() || !x.empty() || !samples.empty(); }

    CurveSpec build(const std::optional<Grid>& grid) const {
        const auto p = parse_params(params);
        CurveSpec spec;
        const int sources = !builtin.empty() + !expr.empty() + !x.empty() + !samples.empty();
        if (sources == 0) throw UsageError("missing curve: give --builtin, --expr, --x/--y[/--z] or --samples");
        if (sources > 1) throw UsageError("give exactly one curve source");
        if (!builtin.empty()) {
            if (!has_catalog_entry(builtin)) throw UsageError("unknown builtin curve '" + builtin + "'");
            spec = CurveSpec::builtin(builtin, p);
        } else if (!samples.empty()) {
            spec = CurveSpec::from_samples(samples_from_csv(read_text_file(samples)));
        } else {
            std::vector<Expr> coords;
            if (!expr.empty())
                coords = parse_vector_expression(expr);
            else
                for (const auto* c : {&x, &y, &z, &w})
                    if (!c->empty()) coords.push_back(parse_expression(*c));
            if (coords.size() < 2 || coords.size() > 4) throw UsageError("a curve needs 2, 3 or 4 coordinates");
            const Grid g = grid.value_or(Grid{});
            spec = CurveSpec::from_expressions(std::move(coords), g.t_min, g.t_max, p);
        }
        if (dim != 0 && dim != spec.dimension)
            throw UsageError("--dim " + std::to_string(dim) + " does not match a curve of dimension " +
                             std::to_string(spec.dimension));
        return spec;
    }
};

std::vector<double> grid_points(const CurveSpec& spec, const std::optional<Grid>& g) {
    if (g) return linspace(g->t_min, g->t_max, g->n);
    if (spec.is_sampled()) return spec.samples->t;
    return linspace(spec.t_min, spec.t_max, 200);
}

Json grid_json(const std::vector<double>& g) {
    return Json{{"t_min", g.front()}, {"t_max", g.back()}, {"n", g.size()}};
}

Json curve_json(const CurveArgs& a, const CurveSpec& spec) {
    Json j{{"dimension", spec.dimension}};
    if (!a.builtin.empty()) j["builtin"] = a.builtin;
    if (!a.samples.empty()) j["samples"] = a.samples;
    if (spec.source == CurveSpec::Source::Expressions) {
        std::vector<std::string> c;
        for (const auto& e : spec.exprs) c.push_back(e.to_string());
        j["coords"] = c;
    }
    Json p = Json::object();
    for (const auto& [k, v] : spec.params) p[k] = v;
    j["params"] = p;
    return j;
}

std::vector<double> position(const CurveSpec& spec, double t) {
    std::vector<double> p;
    for (const Jet& c : eval_curve(spec, t, 0)) p.push_back(c[0]);
    return p;
}

// ---------------------------------------------------------------- invariants

struct InvariantsCmd {
    CurveArgs curve;
    std::string grid, format = "json", out;
    int order = kDefaultJetOrder;
    double singular_scale = 1e-9, degenerate_scale = 1e-12, complex_tol = 1e-8, root_tol = 1e-12;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("invariants", "Scan a curve and tabulate its invariants");
        curve.add(c);
        c->add_option("--grid", grid, "t_min:t_max:n");
        c->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "svg"}));
        c->add_option("--out", out, "Output file (default stdout)");
        c->add_option("--order", order, "Jet order")->check(CLI::Range(5, 16));
        c->add_option("--singular-scale", singular_scale);
        c->add_option("--degenerate-scale", degenerate_scale);
        c->add_option("--complex-tol", complex_tol, "Linear-complex tolerance on theta3");
        c->add_option("--root-tol", root_tol, "Event bisection tolerance");
        c->callback([this] { run(); });
    }

    void run() {
        const std::optional<Grid> g = grid.empty() ? std::nullopt : std::optional<Grid>(parse_grid(grid));
        if (!g && curve.builtin.empty() && curve.samples.empty() && curve.given())
            throw UsageError("expression curves need --grid");
        const CurveSpec spec = curve.build(g);
        const auto pts = grid_points(spec, g);
        Json tol{{"order", order},
                 {"singular_scale", singular_scale},
                 {"degenerate_scale", degenerate_scale},
                 {"complex_tol", complex_tol},
                 {"root_tol", root_tol}};
        Json j{{"command", "invariants"}, {"curve", curve_json(curve, spec)}, {"grid", grid_json(pts)},
               {"tolerances", tol}};
        std::vector<ScanEvent> events;
        std::vector<bool> dotted;
        std::string csv;
        if (spec.dimension == 2) {
            ScanOptions so;
            so.plane.order = order;
            so.plane.singular_scale = singular_scale;
            so.plane.degenerate_scale = degenerate_scale;
            so.root_tol = root_tol;
            const PlaneScan scan = scan_curve(spec, pts, so);
            Json recs = Json::array();
            for (const auto& r : scan.records) {
                recs.push_back(to_json(r));
                dotted.push_back(r.eps == 1);
            }
            j["records"] = recs;
            j["total_curvature"] = scan.total_curvature.valid ? Json(scan.total_curvature.value) : Json(nullptr);
            j["periodic"] = scan.periodic;
            events = scan.events;
            csv = plane_records_csv(scan.records);
        } else if (spec.dimension == 3) {
            SpaceOptions so;
            so.order = order;
            so.singular_scale = singular_scale;
            so.degenerate_scale = degenerate_scale;
            so.complex_tol = complex_tol;
            const SpaceScan scan = scan_space_curve(spec, pts, so);
            Json recs = Json::array();
            for (const auto& r : scan.records) {
                recs.push_back(to_json(r));
                dotted.push_back(r.eps == 1);
            }
            j["records"] = recs;
            j["theta3_sup"] = scan.theta3_sup;
            j["linear_complex"] = scan.linear_complex;
            events = scan.events;
            csv = space_records_csv(scan.records);
        } else {
            Json recs = Json::array();
            std::vector<std::vector<double>> cols(6);
            for (double t : pts) {
                const Theta th = projective_space_invariants_at(spec, t, order);
                const auto abc = projective_ode_coeffs(spec, t);
                recs.push_back(Json{{"t", t}, {"a", abc[0]}, {"b", abc[1]}, {"c", abc[2]},
                                    {"theta3", th.theta3}, {"theta4", th.theta4}});
                const double row[] = {t, abc[0], abc[1], abc[2], th.theta3, th.theta4};
                for (int i = 0; i < 6; ++i) cols[i].push_back(row[i]);
            }
            j["records"] = recs;
            csv = to_csv({"t", "a", "b", "c", "theta3", "theta4"}, cols);
        }
        Json ev = Json::array();
        for (const auto& e : events) ev.push_back(to_json(e));
        j["events"] = ev;

        if (format == "json") {
            emit(out, dump(j));
        } else if (format == "csv") {
            emit(out, csv);
        } else {
            if (spec.dimension == 4) throw DomainError("SVG output needs a plane or space curve");
            std::vector<std::vector<double>> p;
            for (double t : pts) p.push_back(position(spec, t));
            std::vector<SvgMark> marks;
            for (const auto& e : events) marks.push_back({position(spec, e.t), e.kind});
            emit(out, emit_svg(p, dotted, marks));
        }
    }
};

// --------------------------------------------------------------- reconstruct

struct ReconstructCmd {
    bool plane = false, space = false;
    std::string k, M, k_samples, M_samples, grid = "0:1:201", format = "csv", out, report;
    std::vector<std::string> params;
    int eps = 1;
    double rtol = 1e-10, atol = 1e-10, pole_threshold = 1e6, complex_tol = 1e-8;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("reconstruct", "Integrate a curve from its curvature profile");
        c->add_flag("--plane", plane);
        c->add_flag("--space", space);
        c->add_option("--k", k, "Curvature k(t) as an expression");
        c->add_option("--M", M, "Second curvature M(t) (space)");
        c->add_option("--k-samples", k_samples, "CSV t,k");
        c->add_option("--M-samples", M_samples, "CSV t,M");
        c->add_option("--param", params);
        c->add_option("--eps", eps)->check(CLI::IsMember({-1, 1}));
        c->add_option("--grid", grid, "t_min:t_max:samples");
        c->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "svg"}));
        c->add_option("--out", out, "Curve output (default stdout)");
        c->add_option("--report", report, "JSON report file");
        c->add_option("--rtol", rtol);
        c->add_option("--atol", atol);
        c->add_option("--pole-threshold", pole_threshold);
        c->add_option("--complex-tol", complex_tol);
        c->callback([this] { run(); });
    }

    static ScalarProfile profile(const std::string& expr, const std::string& file,
                                 const std::map<std::string, double>& p, const char* what) {
        if (!expr.empty() && !file.empty()) throw UsageError(std::string("give --") + what + " or --" + what +
                                                             "-samples, not both");
        if (!file.empty()) {
            const CsvTable t = parse_csv(read_text_file(file));
            if (t.columns.size() != 2) throw ParseError("profile CSV needs two columns t,value", 0);
            return ScalarProfile::from_samples(t.columns[0], t.columns[1]);
        }
        if (expr.empty()) throw UsageError(std::string("missing --") + what);
        return ScalarProfile::parse(expr, p);
    }

    void run() {
        if (plane == space) throw UsageError("choose one of --plane or --space");
        const Grid g = parse_grid(grid);
        const auto p = parse_params(params);
        const ScalarProfile kp = profile(k, k_samples, p, "k");
        CurvatureProfile prof = CurvatureProfile::plane(kp, eps, g.t_min, g.t_max);
        ScalarProfile Mp;
        if (space) {
            Mp = profile(M, M_samples, p, "M");
            prof = CurvatureProfile::space(kp, Mp, eps, g.t_min, g.t_max);
        }
        ReconstructOptions ro;
        ro.ode.rtol = rtol;
        ro.ode.atol = atol;
        ro.samples = g.n;
        ro.pole_threshold = pole_threshold;
        const ReconstructionResult res = reconstruct(prof, ro);

        const auto pts = linspace(g.t_min, g.t_max, g.n);
        ExtremalOptions eo;
        eo.pole_threshold = pole_threshold;
        Json rep{{"command", "reconstruct"}, {"kind", plane ? "plane" : "space"}, {"k", kp.to_string()}};
        if (space) rep["M"] = Mp.to_string();
        rep["eps"] = eps;
        rep["grid"] = grid_json(pts);
        rep["tolerances"] = Json{{"rtol", rtol},
                                 {"atol", atol},
                                 {"pole_threshold", pole_threshold},
                                 {"complex_tol", complex_tol},
                                 {"roundtrip", res.roundtrip.tolerance}};
        Json segs = Json::array();
        for (const auto& s : res.segments) segs.push_back(Json{{"t_begin", s.t_begin}, {"t_end", s.t_end}});
        rep["segments"] = segs;
        rep["steps"] = res.stats.steps;
        rep["min_abs_det"] = res.min_abs_det;
        rep["roundtrip"] = to_json(res.roundtrip);
        if (plane) {
            const auto r = ga_plane_residual(kp, eps, pts, eo);
            rep["extremal"] = Json{{"verdict", r.verdict}, {"sup", r.sup}, {"tolerance", r.tolerance},
                                   {"equation", equation_id(r.equation)}};
        } else {
            const auto [r1, r2] = ga_space_residuals(kp, Mp, eps, pts, eo);
            rep["extremal"] = Json{{"verdict", r1.verdict && r2.verdict}, {"sup", std::max(r1.sup, r2.sup)},
                                   {"tolerance", r1.tolerance}, {"equation", "GA_SPACE"}};
            double sup = 0.0;
            std::size_t used = 0;
            for (double t : pts) {
                try {
                    const double th = std::abs(Mp(t) - eps * kp(t)) / 4.0;
                    if (!std::isfinite(th)) continue;
                    sup = std::max(sup, th);
                    ++used;
                } catch (const DomainError&) {
                }
            }
            rep["theta3_sup"] = sup;
            rep["linear_complex"] = used > 0 && sup <= complex_tol;
        }

        std::vector<std::vector<double>> coords(res.dimension);
        std::vector<std::vector<double>> pos;
        for (std::size_t i = 0; i < res.t.size(); ++i) {
            const auto x = res.x(i);
            pos.push_back(x);
            for (int d = 0; d < res.dimension; ++d) coords[d].push_back(x[d]);
        }
        std::string curve_text;
        if (format == "csv") curve_text = curve_csv(res.t, coords);
        if (format == "svg") curve_text = emit_svg(pos, std::vector<bool>(pos.size(), false), {});
        if (format == "json") {
            Json samples = Json::array();
            for (std::size_t i = 0; i < res.t.size(); ++i) samples.push_back(Json{{"t", res.t[i]}, {"x", pos[i]}});
            rep["samples"] = samples;
            emit(out, dump(rep));
            if (!report.empty()) emit(report, dump(rep));
            return;
        }
        emit(out, curve_text);
        if (!report.empty())
            emit(report, dump(rep));
        else if (out.empty() || out == "-")
            std::cerr << dump(rep);
        else
            std::cout << dump(rep);
    }
};

// ------------------------------------------------------------------ extremal

struct ExtremalCmd {
    std::string equation, k, M, k1, k2, f = "1", grid = "0:1:201", out;
    std::vector<std::string> fparams;
    CurveArgs curve;
    int eps = 1;
    std::optional<double> tol;
    double pole_threshold = 1e6;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("extremal", "Evaluate an extremality residual");
        c->add_option("--equation", equation,
                      "ga-plane | ga-plane-general | ga-space | linear-complex | equiaffine-space | proj-plane | "
                      "proj-space")
            ->required();
        c->add_option("--k", k);
        c->add_option("--M", M);
        c->add_option("--k1", k1, "Projective curvature k1 (proj-space)");
        c->add_option("--k2", k2, "Projective curvature k2 (proj-space)");
        c->add_option("--f", f, "Functional f(k) for ga-plane-general");
        c->add_option("--f-param", fparams, "Parameter of f, name=value");
        c->add_option("--eps", eps)->check(CLI::IsMember({-1, 1}));
        c->add_option("--grid", grid);
        c->add_option("--tol", tol, "Residual tolerance (default 1e-7 (1 + sup|k|)^3)");
        c->add_option("--pole-threshold", pole_threshold);
        c->add_option("--out", out);
        curve.add(c);
        c->callback([this] { run(); });
    }

    ScalarProfile need(const std::string& e, const char* name) const {
        if (e.empty()) throw UsageError(std::string("--equation ") + equation + " needs --" + name);
        return ScalarProfile::parse(e);
    }

    void run() {
        const Grid g = parse_grid(grid);
        const auto pts = linspace(g.t_min, g.t_max, g.n);
        ExtremalOptions eo;
        eo.tolerance = tol;
        eo.pole_threshold = pole_threshold;
        Json j{{"command", "extremal"}, {"equation", equation}, {"grid", grid_json(pts)}};
        Json reports = Json::array();
        bool verdict = false;
        std::string eq = equation;
        for (char& ch : eq) ch = ch == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (eq == "ga-plane") {
            const auto r = ga_plane_residual(need(k, "k"), eps, pts, eo);
            reports.push_back(to_json(r));
            verdict = r.verdict;
        } else if (eq == "ga-plane-general") {
            const auto fn = CurvatureFunctional::parse(f, parse_params(fparams));
            const auto r = ga_plane_general_residual(need(k, "k"), eps, fn, pts, eo);
            reports.push_back(to_json(r));
            verdict = r.verdict;
            j["f"] = f;
        } else if (eq == "ga-space") {
            const auto [r1, r2] = ga_space_residuals(need(k, "k"), need(M, "M"), eps, pts, eo);
            reports.push_back(to_json(r1));
            reports.push_back(to_json(r2));
            verdict = r1.verdict && r2.verdict;
        } else if (eq == "linear-complex") {
            const auto r = linear_complex_extremal_check(need(k, "k"), eps, pts, eo);
            reports.push_back(to_json(r.plane));
            reports.push_back(to_json(r.space1));
            reports.push_back(to_json(r.space2));
            j["identity_gap"] = r.identity_gap;
            j["consistent"] = r.consistent;
            verdict = r.plane.verdict;
        } else if (eq == "equiaffine-space") {
            const CurveSpec spec = curve.build(g);
            const auto r = equiaffine_space_extremal_check(spec, pts, tol.value_or(1e-8));
            j["curve"] = curve_json(curve, spec);
            j["sup_ell"] = r.sup_ell;
            j["sup_m"] = r.sup_m;
            Json rows = Json::array();
            for (std::size_t i = 0; i < r.t.size(); ++i)
                rows.push_back(Json{{"t", r.t[i]}, {"ell", r.ell[i]}, {"m", r.m[i]}});
            j["values"] = rows;
            j["tolerance"] = r.tolerance;
            verdict = r.extremal;
        } else if (eq == "proj-plane") {
            const auto r = projective_plane_residual(need(k, "k"), pts, eo);
            reports.push_back(to_json(r));
            verdict = r.verdict;
        } else if (eq == "proj-space") {
            const auto r = projective_space_residuals(need(k1, "k1"), need(k2, "k2"), pts, eo);
            reports.push_back(to_json(r.r1));
            reports.push_back(to_json(r.r2));
            j["curvatures_constant"] = r.curvatures_constant;
            j["reduction_holds"] = r.reduction_holds;
            verdict = r.extremal;
        } else {
            throw UsageError("unknown equation '" + equation + "'");
        }
        if (eq != "equiaffine-space") {
            j["eps"] = eps;
            j["reports"] = reports;
        }
        j["verdict"] = verdict ? "extremal" : "not extremal";
        j["extremal"] = verdict;
        emit(out, dump(j));
    }
};

// ------------------------------------------------------------------ classify

const char* family_description(const std::string& f) {
    static const std::map<std::string, const char*> d = {
        {"ellipse", "ellipse (conic, eps = +1)"},
        {"hyperbola", "hyperbola (conic, eps = -1)"},
        {"log-spiral", "logarithmic spiral family"},
        {"tlogt", "t*log(t) family"},
        {"exp", "exp(t) family"},
        {"power", "t^alpha family"},
        {"circular-helix", "circular helix"},
        {"hyperbolic-helix", "hyperbolic helix"},
        {"space-log-spiral", "space logarithmic spiral"},
        {"mk", "(t, e^t, t e^t) family"},
        {"row8", "cubic parabola"},
    };
    const auto it = d.find(f);
    return it == d.end() ? nullptr : it->second;
}

struct ClassifyCmd {
    bool plane = false, space = false, projective = false;
    std::optional<double> k, M, a, b, c;
    int eps = 1;
    double tol_k = 1e-7, tol_root = 1e-8;
    CurveArgs curve;
    std::string out;

    void add(CLI::App& app) {
        auto* s = app.add_subcommand("classify", "Identify the curve family for constant invariants");
        s->add_flag("--plane", plane);
        s->add_flag("--space", space);
        s->add_flag("--projective", projective);
        s->add_option("--k", k);
        s->add_option("--M", M);
        s->add_option("--a", a);
        s->add_option("--b", b);
        s->add_option("--c", c);
        s->add_option("--eps", eps)->check(CLI::IsMember({-1, 1}));
        s->add_option("--tol-k", tol_k);
        s->add_option("--tol-root", tol_root);
        s->add_option("--out", out);
        curve.add(s);
        s->callback([this] { run(); });
    }

    void run() {
        ClassifyOptions opt;
        opt.tol_k = tol_k;
        opt.tol_root = tol_root;
        Json j{{"command", "classify"}, {"tolerances", Json{{"tol_k", tol_k}, {"tol_root", tol_root}}}};
        Classification cl;
        if (curve.given()) {
            const CurveSpec spec = curve.build(std::nullopt);
            const double t = 0.5 * (spec.t_min + spec.t_max);
            j["curve"] = curve_json(curve, spec);
            j["t"] = t;
            if (spec.dimension == 2) {
                const auto r = plane_invariants_at(spec, t);
                if (!r.k) throw AffineInflectionError("no curvature at the window midpoint");
                j["input"] = Json{{"kind", "plane"}, {"k", *r.k}, {"eps", r.eps}};
                cl = classify_plane_constant(*r.k, r.eps, opt);
            } else if (spec.dimension == 3) {
                const auto co = space_ode_coeffs(spec, t);
                j["input"] = Json{{"kind", "space"}, {"a", co[0][0]}, {"b", co[1][0]}, {"c", co[2][0]}};
                cl = classify_space_ode(co[0][0], co[1][0], co[2][0], opt);
            } else {
                const auto abc = projective_ode_coeffs(spec, t);
                j["input"] = Json{{"kind", "projective"}, {"a", abc[0]}, {"b", abc[1]}, {"c", abc[2]}};
                cl = classify_projective_constant(abc[0], abc[1], abc[2], opt);
            }
        } else {
            if (plane + space + projective != 1) throw UsageError("choose one of --plane, --space, --projective");
            if (plane) {
                if (!k) throw UsageError("--plane needs --k");
                j["input"] = Json{{"kind", "plane"}, {"k", *k}, {"eps", eps}};
                cl = classify_plane_constant(*k, eps, opt);
            } else if (space) {
                if (k && M) {
                    j["input"] = Json{{"kind", "space"}, {"k", *k}, {"M", *M}, {"eps", eps}};
                    cl = classify_space_constant(*k, *M, eps, opt);
                } else if (a && b && c) {
                    j["input"] = Json{{"kind", "space"}, {"a", *a}, {"b", *b}, {"c", *c}};
                    cl = classify_space_ode(*a, *b, *c, opt);
                } else {
                    throw UsageError("--space needs --k and --M, or --a, --b and --c");
                }
            } else {
                if (!a || !b || !c) throw UsageError("--projective needs --a, --b and --c");
                j["input"] = Json{{"kind", "projective"}, {"a", *a}, {"b", *b}, {"c", *c}};
                cl = classify_projective_constant(*a, *b, *c, opt);
            }
        }
        j["classification"] = to_json(cl);
        const char* d = family_description(cl.family);
        j["description"] = d ? d : cl.family;
        emit(out, dump(j));
    }
};

// ---------------------------------------------------------------------- abel

struct AbelCmd {
    std::string k, kind = "first", format = "json", out;
    std::vector<std::string> params;
    int eps = 1, w_sign = 0;
    double x0 = 1.0, x1 = 2.0, rtol = 1e-11, atol = 1e-12;
    std::optional<double> s0;
    std::size_t samples = 201;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("abel", "Recover a graph (t, f(t)) from k through an Abel equation");
        c->add_option("--k", k, "Curvature as an expression in x (= mu)")->required();
        c->add_option("--param", params);
        c->add_option("--eps", eps)->check(CLI::IsMember({-1, 1}));
        c->add_option("--kind", kind)->check(CLI::IsMember({"first", "second"}));
        c->add_option("--x0", x0);
        c->add_option("--x1", x1);
        c->add_option("--s0", s0, "Initial value (default: closed-form branch when k is a constant)");
        c->add_option("--w-sign", w_sign, "Branch of w; 0 matches the sign of k")->check(CLI::IsMember({-1, 0, 1}));
        c->add_option("--samples", samples);
        c->add_option("--rtol", rtol);
        c->add_option("--atol", atol);
        c->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--out", out);
        c->callback([this] { run(); });
    }

    void run() {
        AbelProblem p;
        p.k = ScalarProfile::parse(k, parse_params(params), "x");
        p.eps = eps;
        p.kind = kind == "first" ? AbelKind::FirstKind : AbelKind::SecondKind;
        p.x0 = x0;
        p.x1 = x1;
        p.w_sign = w_sign;
        p.samples = samples;
        p.ode.rtol = rtol;
        p.ode.atol = atol;
        Json j{{"command", "abel"}, {"k", p.k.to_string()}, {"eps", eps}, {"kind", kind},
               {"window", Json{{"x0", x0}, {"x1", x1}}}, {"tolerances", Json{{"rtol", rtol}, {"atol", atol}}}};

        // Constant k: the first-kind closed forms give s(x) and a default s0.
        std::optional<double> kc;
        try {
            const double v0 = p.k(x0), v1 = p.k(x1), vm = p.k(0.5 * (x0 + x1));
            if (v0 == v1 && v0 == vm && p.k.jet(0.5 * (x0 + x1), 1)[1] == 0.0) kc = v0;
        } catch (const DomainError&) {
        }
        std::optional<std::function<double(double)>> closed;
        if (kc) {
            if (*kc == 0.0) {
                const double a = eps > 0 ? 2.0 * std::max(x0, x1) + 1.0 : 2.0 * std::min(x0, x1) - 1.0;
                double s_first = s0 ? *s0 : abel_zero_k_solution(a, eps, x0);
                if (s0 && p.kind == AbelKind::SecondKind) s_first = -eps / *s0;
                const double a_eff = 2.0 * x0 + eps / (s_first * s_first);
                const double sg = s_first > 0 ? 1.0 : -1.0;
                closed = [sg, a_eff, e = eps](double x) { return sg * abel_zero_k_solution(a_eff, e, x); };
                j["closed_form"] = Json{{"form", "1/sqrt(eps (a - 2x))"}, {"a", a_eff}};
            } else if (*kc * *kc - 16.0 * eps >= 0) {
                const double a = abel_constant_k_coefficient(*kc, eps, 1);
                double a_eff = a;
                if (s0) {
                    const double s_first = p.kind == AbelKind::FirstKind ? *s0 : -eps / *s0;
                    a_eff = s_first * std::sqrt(2.0 * x0);
                }
                const double other = abel_constant_k_coefficient(*kc, eps, -1);
                if (std::abs(a_eff - a) <= 1e-12 * std::abs(a) || std::abs(a_eff - other) <= 1e-12 * std::abs(other)) {
                    closed = [a_eff](double x) { return abel_constant_k_solution(a_eff, x); };
                    j["closed_form"] = Json{{"form", "a/sqrt(2x)"}, {"a", a_eff}};
                }
            }
        }
        if (!s0) {
            if (!closed) throw UsageError("--s0 is required unless k is a constant with a closed-form solution");
            const double sf = (*closed)(x0);
            s0 = p.kind == AbelKind::FirstKind ? sf : abel_compatible_initial(eps, sf);
        }
        p.s0 = *s0;
        j["s0"] = p.s0;
        const AbelSolution sol = abel_solve(p);
        j["w_sign"] = sol.problem.w_sign;
        if (closed) {
            double err = 0.0;
            for (std::size_t i = 0; i < sol.x.size(); ++i) {
                const double sf = (*closed)(sol.x[i]);
                const double want = p.kind == AbelKind::FirstKind ? sf : -eps / sf;
                err = std::max(err, std::abs(sol.s[i] - want));
            }
            j["closed_form"]["max_error"] = err;
        }
        j["roundtrip"] = to_json(sol.roundtrip);
        if (format == "csv") {
            std::vector<std::size_t> idx(sol.t.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return sol.t[a] < sol.t[b]; });
            std::vector<std::vector<double>> cols(2);
            for (auto i : idx) {
                cols[0].push_back(sol.t[i]);
                cols[1].push_back(sol.f[i]);
            }
            emit(out, to_csv({"t", "f"}, cols));
            std::cerr << dump(j);
            return;
        }
        Json rows = Json::array();
        for (std::size_t i = 0; i < sol.x.size(); ++i)
            rows.push_back(Json{{"x", sol.x[i]}, {"s", sol.s[i]}, {"t", sol.t[i]}, {"f", sol.f[i]}});
        j["samples"] = rows;
        emit(out, dump(j));
    }
};

// ------------------------------------------------------------------- catalog

struct CatalogCmd {
    bool verify = false;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("catalog", "List the builtin curves, or verify them");
        c->add_flag("--verify", verify, "Check every classified entry against its closed form");
        c->add_option("--out", out);
        c->callback([this] { run(); });
    }

    void run() {
        Json j{{"command", "catalog"}};
        if (verify) {
            const CatalogReport r = verify_catalog();
            Json checks = Json::array();
            for (const auto& c : r.checks) checks.push_back(to_json(c));
            j["checks"] = checks;
            j["all_passed"] = r.all_passed;
            emit(out, dump(j));
            if (!r.all_passed) throw DomainError("catalog verification failed");
            return;
        }
        Json entries = Json::array();
        for (const auto& e : catalog()) {
            Json p = Json::object();
            for (const auto& [k, v] : e.defaults) p[k] = v;
            const char* kind = e.kind == CatalogKind::Plane ? "plane" : e.kind == CatalogKind::Space ? "space" : "projective";
            entries.push_back(Json{{"name", e.name}, {"kind", kind}, {"family", e.family}, {"coords", e.coords},
                                   {"defaults", p}, {"t_min", e.t_min}, {"t_max", e.t_max}, {"note", e.note}});
        }
        j["entries"] = entries;
        emit(out, dump(j));
    }
};

int report_error(const std::exception& e, int code) {
    std::cerr << error_json(e, code).dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"General-affine invariants of plane and space curves"};
    app.require_subcommand(1);
    InvariantsCmd inv;
    ReconstructCmd rec;
    ExtremalCmd ext;
    ClassifyCmd cls;
    AbelCmd abl;
    CatalogCmd cat;
    inv.add(app);
    rec.add(app);
    ext.add(app);
    cls.add(app);
    abl.add(app);
    cat.add(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return 1;
    } catch (const IntegratorError& e) {
        return report_error(e, 3);
    } catch (const Error& e) {
        return report_error(e, 2);
    } catch (const std::exception& e) {
        return report_error(e, 2);
    }
    return 0;
}
