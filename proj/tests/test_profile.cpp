#include "doctest.h"

#include <cmath>

#include "iwave/functionals.hpp"
#include "iwave/profile.hpp"

using namespace iwave;

namespace {
// varrho = 1/2, d = 2 (frak_B = 1/4, beta0 = 5/6), epsilon and beta adjustable
physical_params reference_params(double eps, double beta_excess) {
    physical_params p;
    p.rho_plus = 1.0;
    p.rho_minus = 2.0;
    p.d_plus = 1.0;
    p.d_minus = 2.0;
    p.c = 1.0;
    p.g = 2.0 * (1.0 + eps * eps); // alpha0 = 1
    p.sigma = 2.0 * (5.0 / 6.0 + beta_excess);
    return p;
}
} // namespace

TEST_SUITE_BEGIN("profile");

TEST_CASE("closed-form amplitude and sech^2 ratio") {
    physical_params p = reference_params(0.1, 0.25);
    nondim_params np = nondim(p);
    REQUIRE(np.frak_B == doctest::Approx(0.25).epsilon(1e-14));
    std::vector<double> x = default_profile_grid(p);
    wave_profile wp = leading_order(p, x);
    CHECK(wp.amplitude == doctest::Approx(0.04).epsilon(1e-13)); // 0.01/0.25
    CHECK(wp.decay_scale == doctest::Approx(2.0 * std::sqrt(0.25) / 0.1).epsilon(1e-13));
    // eta(2 decay_scale)/eta(0) = sech^2(2)
    double r = 1.0 / std::cosh(2.0);
    wave_profile wp2 = leading_order(p, {0.0, 2.0 * wp.decay_scale});
    CHECK(wp2.eta[1] / wp2.eta[0] == doctest::Approx(r * r).epsilon(1e-12));
    CHECK(wp2.eta[1] / wp2.eta[0] == doctest::Approx(0.0706508).epsilon(1e-5));
}

TEST_CASE("polarity from the sign of frak_B") {
    physical_params p = reference_params(0.1, 0.25);
    CHECK(polarity(nondim(p)) == wave_polarity::elevation);

    physical_params q = p;
    q.d_minus = 1.0; // varrho=1/2, d=1: frak_B = -1/2
    nondim_params nq = nondim(q);
    CHECK(nq.frak_B == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(polarity(nq) == wave_polarity::depression);

    physical_params r = p;
    r.d_minus = std::sqrt(2.0); // 1/d^2 = 1/2 = varrho: degenerate
    CHECK(polarity(nondim(r)) == wave_polarity::degenerate);
}

TEST_CASE("profile is even and single-signed") {
    physical_params p = reference_params(0.15, 0.4);
    std::vector<double> x = default_profile_grid(p, 1024);
    wave_profile wp = leading_order(p, x);
    int n = static_cast<int>(x.size());
    for (int i = 0; i < n; i++) {
        CHECK(wp.eta[i] == doctest::Approx(wp.eta[n - 1 - i]).epsilon(1e-12));
        CHECK(wp.eta[i] > 0.0); // elevation
    }
    CHECK(std::fabs(wp.eta[0]) < 1e-8 * std::fabs(wp.amplitude)); // decayed at the grid edge
}

TEST_CASE("two routes to the profile coincide") {
    physical_params p = reference_params(0.12, 0.3);
    p.omega_plus = 0.15;
    p.omega_minus = -0.1;
    // retune alpha to keep epsilon = 0.12 with the shear-shifted alpha0
    p = with_epsilon(p, 0.12);
    nondim_params np = nondim(p);
    REQUIRE(!np.degenerate_B());
    std::vector<double> x = default_profile_grid(p, 2048);
    wave_profile a = leading_order(p, x);
    wave_profile b = profile_from_reduced(reduced_system::from_params(np), p, x);
    CHECK(a.pol == b.pol);
    double scale = std::fabs(a.amplitude);
    for (size_t i = 0; i < x.size(); i++) CHECK(std::fabs(a.eta[i] - b.eta[i]) <= 1e-14 * scale);
}

TEST_CASE("K sign flip flips polarity of the reconstruction") {
    physical_params p = reference_params(0.1, 0.25);
    nondim_params np = nondim(p);
    reduced_system sys = reduced_system::from_params(np);
    std::vector<double> x = default_profile_grid(p, 256);
    wave_profile a = profile_from_reduced(sys, p, x);
    reduced_system flipped = sys;
    flipped.K = -sys.K;
    wave_profile b = profile_from_reduced(flipped, p, x);
    CHECK(a.pol != b.pol);
    for (size_t i = 0; i < x.size(); i++) CHECK(a.eta[i] == doctest::Approx(-b.eta[i]).epsilon(1e-13));
}

TEST_CASE("scaling laws: amplitude ~ eps^2, width ~ 1/eps") {
    std::vector<double> eps = {0.4, 0.2, 0.1, 0.05};
    std::vector<double> amp(eps.size()), wid(eps.size());
    for (size_t i = 0; i < eps.size(); i++) {
        physical_params p = reference_params(eps[i], 0.25);
        std::vector<double> x = {0.0};
        wave_profile wp = leading_order(p, x);
        amp[i] = wp.amplitude;
        wid[i] = wp.decay_scale;
    }
    for (size_t i = 1; i < eps.size(); i++) {
        CHECK(amp[i - 1] / amp[i] == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(wid[i] / wid[i - 1] == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("preconditions") {
    physical_params p = reference_params(0.1, -0.5); // beta below beta0
    CHECK_THROWS_AS(leading_order(p, {0.0}), config_error);
    p = reference_params(0.7, 0.25); // epsilon too large
    CHECK_THROWS_AS(leading_order(p, {0.0}), config_error);
    // degenerate frak_B: flat profile, not an error
    physical_params r = reference_params(0.1, 0.25);
    r.d_minus = std::sqrt(2.0); // alpha0 moved with d; retune to keep epsilon = 0.1
    r = with_epsilon(r, 0.1);
    wave_profile wp = leading_order(r, {0.0, 1.0});
    CHECK(wp.pol == wave_polarity::degenerate);
    CHECK(wp.amplitude == 0.0);
}

TEST_SUITE_END();
