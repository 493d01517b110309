#include "gaffine/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gaffine {

namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json opt(const std::optional<double>& v) { return v ? num(*v) : Json(nullptr); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& in) {
    std::string out;
    for (char ch : in) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string opt_csv(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string join_flags(const std::vector<std::string>& f) {
    std::string s;
    for (const auto& x : f) s += (s.empty() ? "" : ";") + x;
    return s;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write to '" + path + "' failed");
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(pos, end - pos);
        const std::size_t line_start = pos;
        pos = end + 1;
        const std::string tl = trim(line);
        if (tl.empty() || tl[0] == '#') continue;
        std::vector<std::pair<std::string, std::size_t>> fields;
        std::size_t f0 = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.emplace_back(trim(line.substr(f0, i - f0)), line_start + f0);
                f0 = i + 1;
            }
        }
        if (!have_header) {
            for (auto& f : fields) t.header.push_back(f.first);
            t.columns.assign(t.header.size(), {});
            have_header = true;
            continue;
        }
        if (fields.size() != t.header.size())
            throw ParseError("expected " + std::to_string(t.header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_start);
        for (std::size_t j = 0; j < fields.size(); ++j) {
            const std::string& f = fields[j].first;
            char* endp = nullptr;
            const double v = std::strtod(f.c_str(), &endp);
            if (f.empty() || endp != f.c_str() + f.size()) throw ParseError("bad number '" + f + "'", fields[j].second);
            t.columns[j].push_back(v);
        }
    }
    if (!have_header) throw ParseError("missing CSV header", 0);
    return t;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
    std::string out;
    for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
    out += '\n';
    const std::size_t n = columns.empty() ? 0 : columns[0].size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) out += (j ? "," : "") + format_number(columns[j][i]);
        out += '\n';
    }
    return out;
}

SampledCurve samples_from_csv(const std::string& text) {
    const CsvTable t = parse_csv(text);
    if (t.header.size() < 3 || t.header.size() > 5 || t.header[0] != "t")
        throw ParseError("curve CSV header must be t,x1,x2[,x3[,x4]]", 0);
    for (std::size_t j = 1; j < t.header.size(); ++j)
        if (t.header[j] != "x" + std::to_string(j)) throw ParseError("unexpected column '" + t.header[j] + "'", 0);
    SampledCurve c;
    c.t = t.columns[0];
    c.coords.assign(t.columns.begin() + 1, t.columns.end());
    return c;
}

std::string curve_csv(const std::vector<double>& t, const std::vector<std::vector<double>>& coords) {
    std::vector<std::string> header{"t"};
    std::vector<std::vector<double>> cols{t};
    for (std::size_t j = 0; j < coords.size(); ++j) {
        header.push_back("x" + std::to_string(j + 1));
        cols.push_back(coords[j]);
    }
    return to_csv(header, cols);
}

std::string plane_records_csv(const std::vector<PlaneInvariantRecord>& records) {
    std::string out = "t,a,b,L,eps,ds_dt,k,dk_ds,k_a,P,k_p,flags\n";
    for (const auto& r : records) {
        out += format_number(r.t) + "," + format_number(r.a) + "," + format_number(r.b) + "," + format_number(r.L) +
               "," + std::to_string(r.eps) + "," + format_number(r.ds_dt) + "," + opt_csv(r.k) + "," +
               opt_csv(r.dk_ds) + "," + opt_csv(r.k_a) + "," + opt_csv(r.P) + "," + opt_csv(r.k_p) + "," +
               join_flags(r.flags) + "\n";
    }
    return out;
}

std::string space_records_csv(const std::vector<SpaceInvariantRecord>& records) {
    std::string out = "t,a,b,c,L,eps,ds_dt,k,M,dk_ds,dM_ds,theta3,theta4,ell,m,flags\n";
    for (const auto& r : records) {
        out += format_number(r.t) + "," + format_number(r.a) + "," + format_number(r.b) + "," + format_number(r.c) +
               "," + format_number(r.L) + "," + std::to_string(r.eps) + "," + format_number(r.ds_dt) + "," +
               opt_csv(r.k) + "," + opt_csv(r.M) + "," + opt_csv(r.dk_ds) + "," + opt_csv(r.dM_ds) + "," +
               opt_csv(r.theta3) + "," + opt_csv(r.theta4) + "," + format_number(r.ell_equi) + "," +
               format_number(r.m_equi) + "," + join_flags(r.flags) + "\n";
    }
    return out;
}

Json to_json(const PlaneInvariantRecord& r) {
    return Json{{"t", num(r.t)},       {"a", num(r.a)},         {"b", num(r.b)},     {"L", num(r.L)},
                {"eps", r.eps},        {"ds_dt", num(r.ds_dt)}, {"k", opt(r.k)},     {"dk_ds", opt(r.dk_ds)},
                {"k_a", opt(r.k_a)},   {"P", opt(r.P)},         {"k_p", opt(r.k_p)}, {"flags", r.flags}};
}

Json to_json(const SpaceInvariantRecord& r) {
    return Json{{"t", num(r.t)},
                {"a", num(r.a)},
                {"b", num(r.b)},
                {"c", num(r.c)},
                {"L", num(r.L)},
                {"eps", r.eps},
                {"ds_dt", num(r.ds_dt)},
                {"k", opt(r.k)},
                {"M", opt(r.M)},
                {"dk_ds", opt(r.dk_ds)},
                {"dM_ds", opt(r.dM_ds)},
                {"theta3", opt(r.theta3)},
                {"theta4", opt(r.theta4)},
                {"theta3_proj", opt(r.theta3_proj)},
                {"theta4_proj", opt(r.theta4_proj)},
                {"ell", num(r.ell_equi)},
                {"m", num(r.m_equi)},
                {"linear_complex", r.linear_complex},
                {"flags", r.flags}};
}

Json to_json(const ScanEvent& e) { return Json{{"kind", e.kind}, {"t", num(e.t)}}; }

Json to_json(const ResidualReport& r) {
    Json j{{"equation", equation_id(r.equation)},
           {"points", r.t.size()},
           {"excluded", r.excluded.size()},
           {"sup", num(r.sup)},
           {"l2", num(r.l2)},
           {"tolerance", num(r.tolerance)},
           {"verdict", r.verdict}};
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.t.size(); ++i) rows.push_back(Json{{"t", num(r.t[i])}, {"r", num(r.residual[i])}});
    j["residual"] = std::move(rows);
    return j;
}

Json to_json(const RoundtripReport& r) {
    return Json{{"checked", r.checked},         {"max_k_error", num(r.max_k_error)},
                {"max_M_error", num(r.max_M_error)}, {"max_ds_error", num(r.max_ds_error)},
                {"eps_ok", r.eps_ok},           {"tolerance", num(r.tolerance)},
                {"passed", r.passed}};
}

Json to_json(const Classification& c) {
    Json params = Json::object();
    for (const auto& [k, v] : c.parameters) params[k] = num(v);
    return Json{{"family", c.family},
                {"parameters", params},
                {"representative", c.representative_expression()},
                {"coords", c.coords},
                {"t_min", num(c.t_min)},
                {"t_max", num(c.t_max)},
                {"orientation", c.orientation},
                {"notes", c.notes},
                {"alternatives", c.alternatives}};
}

Json to_json(const CatalogCheck& c) {
    Json sig = Json::array(), exp = Json::array();
    for (double v : c.signature) sig.push_back(num(v));
    for (double v : c.expected) exp.push_back(num(v));
    return Json{{"name", c.name},           {"expected_family", c.expected_family},
                {"family", c.classified_family}, {"signature", sig},
                {"expected", exp},          {"max_error", num(c.max_error)},
                {"passed", c.passed},       {"detail", c.detail}};
}

Json to_json(const AbelRoundtrip& r) {
    return Json{{"points", r.x.size()},         {"max_k_error", num(r.max_k_error)},
                {"max_mu_residual", num(r.max_mu_residual)}, {"eps_ok", r.eps_ok},
                {"tolerance", num(r.tolerance)}, {"passed", r.passed}};
}

Json error_json(const std::exception& e, int exit_code) {
    const auto* ge = dynamic_cast<const Error*>(&e);
    Json j{{"error", ge ? ge->kind() : "internal"}, {"message", e.what()}, {"exit_code", exit_code}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) j["position"] = pe->position();
    if (const auto* ae = dynamic_cast<const AbelBreakdownError*>(&e)) j["x"] = num(ae->x());
    return j;
}

std::string emit_svg(const std::vector<std::vector<double>>& points, const std::vector<bool>& dotted,
                     const std::vector<SvgMark>& marks, const SvgOptions& o) {
    if (points.empty()) throw DomainError("no samples to draw");
    const std::size_t dim = points[0].size();
    if (dim != 2 && dim != 3) throw DomainError("SVG needs 2D or 3D samples");
    const double ca = std::cos(o.azimuth), sa = std::sin(o.azimuth);
    const double ce = std::cos(o.elevation), se = std::sin(o.elevation);
    auto project = [&](const std::vector<double>& p) -> std::pair<double, double> {
        if (p.size() != dim) throw DomainError("mixed sample dimensions");
        if (dim == 2) return {p[0], p[1]};
        const double u = ca * p[0] + sa * p[1];
        const double v = -sa * p[0] + ca * p[1];
        return {v, ce * p[2] - se * u};
    };
    std::vector<std::pair<double, double>> q;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& p : points) {
        q.push_back(project(p));
        if (!std::isfinite(q.back().first) || !std::isfinite(q.back().second)) continue;
        xmin = std::min(xmin, q.back().first);
        xmax = std::max(xmax, q.back().first);
        ymin = std::min(ymin, q.back().second);
        ymax = std::max(ymax, q.back().second);
    }
    if (!std::isfinite(xmin)) throw DomainError("no finite samples to draw");
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double scale = std::min(o.width, o.height) - 2 * o.margin;
    const double ox = (o.width - scale * (xmax - xmin) / span) / 2, oy = (o.height - scale * (ymax - ymin) / span) / 2;
    auto X = [&](double x) { return svg_num(ox + scale * (x - xmin) / span); };
    auto Y = [&](double y) { return svg_num(o.height - oy - scale * (y - ymin) / span); };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << svg_num(o.width) << "\" height=\""
      << svg_num(o.height) << "\" viewBox=\"0 0 " << svg_num(o.width) << " " << svg_num(o.height) << "\">\n";
    s << "<style>polyline{fill:none;stroke:#222;stroke-width:1.5}"
         " polyline.dotted{stroke-dasharray:2 4}"
         " circle{stroke:#000;stroke-width:0.8}"
         " circle.affine_inflection{fill:#d33} circle.flat_point{fill:#36c}"
         " circle.vertex{fill:#2a2} circle.degenerate{fill:#999}</style>\n";
    if (!o.title.empty()) s << "<title>" << xml_escape(o.title) << "</title>\n";
    // Consecutive edges with the same style share a polyline.
    std::size_t i = 0;
    while (i + 1 < q.size()) {
        const bool d = i < dotted.size() && dotted[i];
        std::size_t j = i;
        while (j + 1 < q.size() && (j < dotted.size() && dotted[j]) == d) ++j;
        s << "<polyline" << (d ? " class=\"dotted\"" : "") << " points=\"";
        for (std::size_t m = i; m <= j; ++m) {
            if (!std::isfinite(q[m].first) || !std::isfinite(q[m].second)) continue;
            s << X(q[m].first) << "," << Y(q[m].second) << (m < j ? " " : "");
        }
        s << "\"/>\n";
        i = j;
    }
    if (q.size() == 1) s << "<circle cx=\"" << X(q[0].first) << "\" cy=\"" << Y(q[0].second) << "\" r=\"1.5\"/>\n";
    for (const auto& m : marks) {
        const auto p = project(m.point);
        s << "<circle class=\"" << xml_escape(m.kind) << "\" cx=\"" << X(p.first) << "\" cy=\"" << Y(p.second)
          << "\" r=\"4\"><title>" << xml_escape(m.kind) << "</title></circle>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace gaffine
