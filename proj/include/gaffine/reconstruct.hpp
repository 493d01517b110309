#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gaffine/ode.hpp"
#include "gaffine/profile.hpp"

namespace gaffine {

struct CurvatureProfile {
    enum class Kind { Plane, Space };

    Kind kind = Kind::Plane;
    ScalarProfile k;
    ScalarProfile M;  // space only
    int eps = 1;
    double t_min = 0.0;
    double t_max = 1.0;
    // Columns x'(t_min), x''(t_min)[, x'''(t_min)]; empty means identity.
    Eigen::MatrixXd frame;
    // x(t_min); empty means the origin.
    Eigen::VectorXd origin;

    int dimension() const { return kind == Kind::Plane ? 2 : 3; }
    static CurvatureProfile plane(ScalarProfile k, int eps, double t_min, double t_max);
    static CurvatureProfile space(ScalarProfile k, ScalarProfile M, int eps, double t_min, double t_max);
};

// Errors are absolute where |k| (|M|) <= 1 and relative above.
struct RoundtripReport {
    std::size_t checked = 0;
    double max_k_error = 0.0;
    double max_M_error = 0.0;  // space only
    double max_ds_error = 0.0; // |ds/dt - 1|: t must come back as the GA arc length
    bool eps_ok = true;
    double tolerance = 1e-6;
    bool passed = false;
};

// One pole-free piece. The initial frame is placed at t_start: t_min for the
// first piece, the midpoint for pieces that begin at a pole cut.
struct ReconstructionSegment {
    double t_begin = 0.0;
    double t_end = 0.0;
    double t_start = 0.0;
    DenseSolution backward;  // t_start -> t_begin (empty when t_start == t_begin)
    DenseSolution forward;   // t_start -> t_end

    State operator()(double t) const;  // state (x, x', x''[, x'''])
};

struct ReconstructionResult {
    int dimension = 2;
    std::vector<double> t;
    // Per sample: x, x', x''[, x'''] concatenated (state layout of the ODE).
    std::vector<std::vector<double>> state;
    std::vector<ReconstructionSegment> segments;
    OdeStats stats;
    double min_abs_det = 0.0;  // min |det(x', x''[, x'''])| over the samples
    bool det_sign_constant = true;
    RoundtripReport roundtrip;

    std::vector<double> x(std::size_t i) const;  // position at sample i
};

struct ReconstructOptions {
    OdeOptions ode;
    std::size_t samples = 201;
    std::size_t roundtrip_points = 41;
    // Round-trip points with |k| above this are skipped: near a cut the
    // solution spans many orders of magnitude and the comparison is ill-conditioned.
    double roundtrip_k_limit = 1e3;
    double pole_threshold = 1e6;
    std::size_t pole_prescan = 2001;
};

ReconstructionResult reconstruct_plane(const CurvatureProfile& profile, const ReconstructOptions& opt = {});
ReconstructionResult reconstruct_space(const CurvatureProfile& profile, const ReconstructOptions& opt = {});
ReconstructionResult reconstruct(const CurvatureProfile& profile, const ReconstructOptions& opt = {});

// Intervals of [t_min, t_max] on which |k| stays below the threshold.
std::vector<std::pair<double, double>> pole_free_segments(const ScalarProfile& k, double t_min, double t_max,
                                                          double threshold = 1e6, std::size_t prescan = 2001);

// Coordinate jets of order `order` at t of a reconstruction, built from the
// stored state and the ODE's Taylor recurrence.
std::vector<Jet> solution_jets(const CurvatureProfile& profile, const ReconstructionResult& result, double t,
                               int order = 8);

struct GaAlignment {
    Eigen::MatrixXd G;
    Eigen::VectorXd v;
    double sup_distance = 0.0;
    double tolerance = 0.0;
    bool coincide = false;
};

// Affine map (G, v) taking the initial frame of `a` to that of `b`; reports the
// sup distance between G x_a + v and x_b over the shared samples.
GaAlignment ga_normalize(const ReconstructionResult& a, const ReconstructionResult& b);

}  // namespace gaffine
