#pragma once

#include <map>
#include <string>
#include <vector>

namespace gaffine {

enum class CatalogKind { Plane, Space, Projective };

struct CatalogEntry {
    std::string name;
    CatalogKind kind;
    // Family the classifier is expected to return for the default parameters;
    // empty for curves of non-constant curvature.
    std::string family;
    std::vector<std::string> coords;
    std::map<std::string, double> defaults;
    double t_min;
    double t_max;
    std::string note;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);
bool has_catalog_entry(const std::string& name);

}  // namespace gaffine
