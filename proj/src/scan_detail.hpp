#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaffine/curve.hpp"
#include "gaffine/plane.hpp"

namespace gaffine::detail {

// Appends an event of `kind` for every sign change of `v` between consecutive
// usable samples (zero counts as positive). `same_branch(i, j)` restricts the
// pairs that may bracket a root; `f` is refined by bisection inside the bracket.
// In periodic mode the last sample duplicates the first and the pair
// (n-2, 0) is checked across the seam.
void sign_change_events(const std::vector<double>& t, const std::vector<std::optional<double>>& v,
                        const std::function<bool(std::size_t, std::size_t)>& same_branch,
                        const std::function<double(double)>& f, bool periodic, double root_tol,
                        const std::string& kind, std::vector<ScanEvent>& out);

bool endpoints_match(const CurveSpec& spec, int order);

}  // namespace gaffine::detail
