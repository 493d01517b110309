#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gaffine/abel.hpp"
#include "gaffine/classify.hpp"
#include "gaffine/curve.hpp"
#include "gaffine/errors.hpp"
#include "gaffine/extremal.hpp"
#include "gaffine/plane.hpp"
#include "gaffine/reconstruct.hpp"
#include "gaffine/space.hpp"

namespace gaffine {

using Json = nlohmann::ordered_json;

// %.17g: enough digits for an exact text round trip.
std::string format_number(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Header "t,<name>..." then one row per sample. Blank lines and lines starting
// with '#' are skipped. Throws ParseError with the byte offset of the bad field.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};
CsvTable parse_csv(const std::string& text);
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);

// Curve samples: header t,x1,x2[,x3[,x4]].
SampledCurve samples_from_csv(const std::string& text);
std::string curve_csv(const std::vector<double>& t, const std::vector<std::vector<double>>& coords);

std::string plane_records_csv(const std::vector<PlaneInvariantRecord>& records);
std::string space_records_csv(const std::vector<SpaceInvariantRecord>& records);

Json to_json(const PlaneInvariantRecord& r);
Json to_json(const SpaceInvariantRecord& r);
Json to_json(const ScanEvent& e);
Json to_json(const ResidualReport& r);
Json to_json(const RoundtripReport& r);
Json to_json(const Classification& c);
Json to_json(const CatalogCheck& c);
Json to_json(const AbelRoundtrip& r);
Json error_json(const std::exception& e, int exit_code);

struct SvgMark {
    std::vector<double> point;  // 2 or 3 coordinates
    std::string kind;           // event kind, also used as the CSS class
};

struct SvgOptions {
    double width = 640.0;
    double height = 480.0;
    double margin = 24.0;
    // Orthographic view for 3D samples (radians).
    double azimuth = 0.6;
    double elevation = 0.35;
    std::string title;
};

// Standalone SVG 1.1 with the polyline split into solid and dotted runs
// (`dotted[i]` styles the edge from sample i to i + 1) and event marks.
// Throws DomainError on an empty sample set.
std::string emit_svg(const std::vector<std::vector<double>>& points, const std::vector<bool>& dotted,
                     const std::vector<SvgMark>& marks, const SvgOptions& opt = {});

}  // namespace gaffine
