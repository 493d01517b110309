#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "gaffine/numeric.hpp"
#include "gaffine/plane.hpp"
#include "gaffine/reconstruct.hpp"
#include "gaffine/space.hpp"

using namespace gaffine;
using doctest::Approx;

namespace {

std::string random_profile(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.5, 2.5);
    std::ostringstream s;
    s.precision(17);
    s << u(rng) << " + " << u(rng) << "*sin(" << w(rng) << "*t + " << u(rng) << ") + " << 0.3 * u(rng) << "*t^2";
    return s.str();
}

Eigen::MatrixXd random_frame(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        Eigen::MatrixXd F(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) F(i, j) = u(rng);
        if (std::abs(F.determinant()) > 0.2) return F;
    }
}

}  // namespace

TEST_CASE("plane round trip on random profiles") {
    std::mt19937 rng(20261016);
    for (int i = 0; i < 10; ++i) {
        const std::string k = random_profile(rng);
        const int eps = i % 2 ? -1 : 1;
        auto p = CurvatureProfile::plane(ScalarProfile::parse(k), eps, 0.0, 2.0);
        const auto r = reconstruct(p);
        INFO("k = " << k << ", eps = " << eps);
        CHECK(r.roundtrip.passed);
        CHECK(r.roundtrip.eps_ok);
        CHECK(r.roundtrip.max_k_error <= 1e-6);
        CHECK(r.det_sign_constant);
        // independent check on the sampled output: plane_invariants_at on the jets
        const auto jets = solution_jets(p, r, 1.3);
        const auto rec = plane_invariants_from_jets(jets, 1.3);
        REQUIRE(rec.k);
        CHECK(*rec.k == Approx(ScalarProfile::parse(k)(1.3)).epsilon(1e-6));
        CHECK(rec.eps == eps);
    }
}

TEST_CASE("space round trip on random profiles") {
    std::mt19937 rng(7);
    for (int i = 0; i < 5; ++i) {
        const std::string k = random_profile(rng), M = random_profile(rng);
        const int eps = i % 2 ? -1 : 1;
        auto p = CurvatureProfile::space(ScalarProfile::parse(k), ScalarProfile::parse(M), eps, 0.0, 1.5);
        const auto r = reconstruct(p);
        INFO("k = " << k << ", M = " << M);
        CHECK(r.roundtrip.passed);
        CHECK(r.roundtrip.max_k_error <= 1e-5);
        CHECK(r.roundtrip.max_M_error <= 1e-5);
    }
}

TEST_CASE("random initial frames give GA-congruent curves") {
    std::mt19937 rng(99);
    for (int dim : {2, 3}) {
        const std::string k = random_profile(rng), M = random_profile(rng);
        auto p = dim == 2 ? CurvatureProfile::plane(ScalarProfile::parse(k), 1, 0.0, 2.0)
                          : CurvatureProfile::space(ScalarProfile::parse(k), ScalarProfile::parse(M), -1, 0.0, 2.0);
        auto q = p;
        q.frame = random_frame(rng, dim);
        q.origin = Eigen::VectorXd::Random(dim);
        const auto a = reconstruct(p), b = reconstruct(q);
        const auto al = ga_normalize(a, b);
        CHECK(al.coincide);
        CHECK(al.sup_distance <= 1e-6);
    }
}

TEST_CASE("k = 0 with eps = +1 gives a conic") {
    auto p = CurvatureProfile::plane(ScalarProfile::constant(0.0), 1, 0.0, 3.0);
    const auto r = reconstruct(p);
    REQUIRE(r.roundtrip.passed);
    // five points determine the conic; every sample lies on it
    Eigen::MatrixXd A(r.t.size(), 6);
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        const auto x = r.x(i);
        A.row(static_cast<Eigen::Index>(i)) << x[0] * x[0], x[0] * x[1], x[1] * x[1], x[0], x[1], 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto sv = svd.singularValues();
    CHECK(sv(5) / sv(0) < 1e-9);
}

TEST_CASE("poles of k split the window") {
    const auto seg = pole_free_segments(ScalarProfile::parse("1/(t - 1)"), 0.0, 2.0, 1e4);
    REQUIRE(seg.size() == 2);
    CHECK(seg[0].second < 1.0);
    CHECK(seg[1].first > 1.0);
    CHECK(seg[0].second > 0.99);
    CHECK(seg[1].first < 1.01);
    const auto none = pole_free_segments(ScalarProfile::parse("sin(t)"), 0.0, 2.0);
    REQUIRE(none.size() == 1);
    CHECK(none[0].first == 0.0);
    CHECK(none[0].second == 2.0);
}

TEST_CASE("reconstruction across a pole keeps both pieces") {
    auto p = CurvatureProfile::plane(ScalarProfile::parse("1/(t - 1)"), 1, 0.0, 2.0);
    ReconstructOptions opt;
    opt.pole_threshold = 1e4;
    const auto r = reconstruct(p, opt);
    CHECK(r.segments.size() == 2);
    CHECK(r.roundtrip.passed);
}

TEST_CASE("sampled profiles reconstruct like their expressions") {
    const auto grid = linspace(0.0, 2.0, 401);
    std::vector<double> v;
    for (double t : grid) v.push_back(0.3 + 0.2 * std::sin(t));
    auto p = CurvatureProfile::plane(ScalarProfile::from_samples(grid, v), -1, 0.0, 2.0);
    const auto r = reconstruct(p);
    CHECK(r.roundtrip.max_k_error <= 1e-6);
}
