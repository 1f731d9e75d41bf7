#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rispls/experiment.hpp"
#include "rispls/radiation.hpp"
#include "rispls/rng.hpp"

using namespace rispls;

namespace {

Scenario pattern_scenario() {
    Scenario s = preset_by_name("loc1").scenario;
    return s;
}

}  // namespace

TEST_CASE("default angular grid covers the hemisphere at one degree") {
    const AngularGrid grid = AngularGrid::uniform_deg();
    CHECK(grid.elevation.size() == 91);
    CHECK(grid.azimuth.size() == 360);
    CHECK(grid.elevation[0] == 0.0);
    CHECK(grid.elevation[90] == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(grid.azimuth[359] == doctest::Approx(359.0 * kPi / 180.0).epsilon(1e-12));
}

TEST_CASE("angular grid validation") {
    AngularGrid grid = AngularGrid::uniform_deg(5.0, 5.0);
    CHECK_NOTHROW(grid.validate());
    grid.azimuth[3] = grid.azimuth[2];
    CHECK_THROWS_AS(grid.validate(), std::domain_error);
}

TEST_CASE("single element under plane-wave illumination radiates cos(elevation)") {
    const RisGeometry g = build_uniform_grid(1, 1, 0.03, 0.03);
    const AngularGrid grid = AngularGrid::uniform_deg(3.0, 6.0);
    const PatternMap pattern = scattered_field(g, RisConfiguration::zeros(1), pattern_scenario(), grid,
                                               state_phase_table(2), Illumination::UniformPlaneWave);
    for (Eigen::Index i = 0; i < grid.elevation.size(); ++i) {
        const Real expected = std::cos(grid.elevation[i]);
        for (Eigen::Index j = 0; j < grid.azimuth.size(); ++j) {
            CHECK(std::abs(std::abs(pattern.field(i, j)) - expected) < 1e-12);
        }
    }
}

TEST_CASE("coherent broadside sum equals the active element count") {
    const RisGeometry g = build_default_prototype(5.2e9);
    const AngularGrid grid = AngularGrid::uniform_deg(5.0, 10.0);
    const PatternMap pattern = scattered_field(g, RisConfiguration::zeros(76), pattern_scenario(), grid,
                                               state_phase_table(2), Illumination::UniformPlaneWave);
    CHECK(std::abs(pattern.field(0, 0)) == doctest::Approx(76.0).epsilon(1e-12));
}

TEST_CASE("flipping every element phase by 180 degrees leaves the magnitude unchanged") {
    const RisGeometry g = build_default_prototype(5.2e9);
    const AngularGrid grid = AngularGrid::uniform_deg(6.0, 12.0);
    Rng rng(13);
    RisConfiguration config = RisConfiguration::zeros(76);
    for (int k = 0; k < 76; ++k) config.states[k] = static_cast<int>(rng.uniform_index(2));
    RisConfiguration flipped = config;
    for (int k = 0; k < 76; ++k) flipped.states[k] = 1 - config.states[k];

    const auto table = state_phase_table(2);
    const Scenario s = pattern_scenario();
    const PatternMap a = scattered_field(g, config, s, grid, table);
    const PatternMap b = scattered_field(g, flipped, s, grid, table);
    for (Eigen::Index i = 0; i < grid.elevation.size(); ++i) {
        for (Eigen::Index j = 0; j < grid.azimuth.size(); ++j) {
            CHECK(std::abs(std::abs(a.field(i, j)) - std::abs(b.field(i, j))) < 1e-12);
        }
    }
}

TEST_CASE("scattered field is the superposition of single-element fields") {
    const Real pitch = wavelength_from_carrier(5.2e9) / 2;
    const RisGeometry full = build_uniform_grid(2, 2, pitch, pitch);
    const AngularGrid grid = AngularGrid::uniform_deg(15.0, 30.0);
    const auto table = state_phase_table(2);
    const Scenario s = pattern_scenario();

    RisConfiguration config = RisConfiguration::zeros(4);
    config.states[1] = 1;
    config.states[2] = 1;
    const PatternMap whole = scattered_field(full, config, s, grid, table);

    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> sum =
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>::Zero(grid.elevation.size(),
                                                                     grid.azimuth.size());
    for (int k = 0; k < 4; ++k) {
        RisGeometry solo = full;
        solo.active.setConstant(false);
        const auto [m, n] = full.active_elements[static_cast<std::size_t>(k)];
        solo.active(m, n) = true;
        solo.active_elements = {{m, n}};
        RisConfiguration c1 = RisConfiguration::zeros(1);
        c1.states[0] = config.states[k];
        sum += scattered_field(solo, c1, s, grid, table).field;
    }
    for (Eigen::Index i = 0; i < grid.elevation.size(); ++i) {
        for (Eigen::Index j = 0; j < grid.azimuth.size(); ++j) {
            CHECK(std::abs(whole.field(i, j) - sum(i, j)) < 1e-12);
        }
    }
}

TEST_CASE("directivity of the cos pattern peaks at the closed-form value") {
    const RisGeometry g = build_uniform_grid(1, 1, 0.03, 0.03);
    const AngularGrid grid = AngularGrid::uniform_deg(1.0, 1.0);
    const PatternMap pattern =
        directivity_dbi(scattered_field(g, RisConfiguration::zeros(1), pattern_scenario(), grid,
                                        state_phase_table(2), Illumination::UniformPlaneWave));
    // integral of cos^2(el) over the hemisphere is 2 pi / 3, so peak D = 6
    const Real expected_peak = 10 * std::log10(6.0);
    CHECK(std::abs(pattern.dbi(0, 0) - expected_peak) < 0.05);
    // the whole map should follow 6 cos^2(el)
    for (Eigen::Index i = 0; i + 1 < grid.elevation.size(); i += 10) {
        const Real analytic = 10 * std::log10(6.0 * std::pow(std::cos(grid.elevation[i]), 2));
        CHECK(std::abs(pattern.dbi(i, 100) - analytic) < 0.05);
    }
}

TEST_CASE("uniform hemisphere field has 3.01 dBi everywhere") {
    PatternMap pattern;
    pattern.grid = AngularGrid::uniform_deg(1.0, 2.0);
    pattern.field.setConstant(pattern.grid.elevation.size(), pattern.grid.azimuth.size(), Complex{1, 0});
    const PatternMap out = directivity_dbi(pattern);
    const Real expected = 10 * std::log10(2.0);  // 4 pi / 2 pi
    for (Eigen::Index i = 0; i < out.dbi.rows(); i += 13) {
        for (Eigen::Index j = 0; j < out.dbi.cols(); j += 17) {
            CHECK(std::abs(out.dbi(i, j) - expected) < 0.01);
        }
    }
}

TEST_CASE("directivity is invariant under uniform field scaling") {
    const RisGeometry g = build_default_prototype(5.2e9);
    const AngularGrid grid = AngularGrid::uniform_deg(2.0, 4.0);
    PatternMap pattern = scattered_field(g, RisConfiguration::zeros(76), pattern_scenario(), grid,
                                         state_phase_table(2));
    const PatternMap base = directivity_dbi(pattern);
    pattern.field *= Complex{2.0, 0.0};
    const PatternMap scaled = directivity_dbi(pattern);
    for (Eigen::Index i = 0; i < base.dbi.rows(); i += 7) {
        for (Eigen::Index j = 0; j < base.dbi.cols(); j += 11) {
            CHECK(scaled.dbi(i, j) == doctest::Approx(base.dbi(i, j)).epsilon(1e-9));
        }
    }
}

TEST_CASE("directivity rejects an all-zero field") {
    PatternMap pattern;
    pattern.grid = AngularGrid::uniform_deg(10.0, 20.0);
    pattern.field.setZero(pattern.grid.elevation.size(), pattern.grid.azimuth.size());
    CHECK_THROWS_AS(directivity_dbi(pattern), std::domain_error);
}

namespace {

// test-local quadrature over the hemisphere, trapezoid with periodic closure
Real integrate_directivity(const PatternMap& pattern) {
    const RealVector& el = pattern.grid.elevation;
    const RealVector& az = pattern.grid.azimuth;
    Real total = 0.0;
    for (Eigen::Index i = 0; i + 1 < el.size(); ++i) {
        for (Eigen::Index j = 0; j < az.size(); ++j) {
            const Eigen::Index jn = (j + 1) % az.size();
            const Real daz = jn == 0 ? 2 * kPi - az[j] + az[0] : az[jn] - az[j];
            const Real del = el[i + 1] - el[i];
            auto lin = [&](Eigen::Index a, Eigen::Index b) { return std::pow(10.0, pattern.dbi(a, b) / 10.0); };
            const Real corner = lin(i, j) * std::sin(el[i]) + lin(i, jn) * std::sin(el[i]) +
                                lin(i + 1, j) * std::sin(el[i + 1]) + lin(i + 1, jn) * std::sin(el[i + 1]);
            total += 0.25 * corner * daz * del;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("directivity integrates to 4 pi over the hemisphere") {
    const RisGeometry g = build_default_prototype(5.2e9);
    const AngularGrid grid = AngularGrid::uniform_deg(1.0, 1.0);
    const PatternMap pattern = directivity_dbi(
        scattered_field(g, RisConfiguration::zeros(76), pattern_scenario(), grid, state_phase_table(2)));
    const Real integral = integrate_directivity(pattern);
    CHECK(std::abs(integral - 4 * kPi) / (4 * kPi) < 0.01);
}

TEST_CASE("gain_toward returns node values exactly and interpolates in between") {
    const RisGeometry g = build_default_prototype(5.2e9);
    const AngularGrid grid = AngularGrid::uniform_deg(1.0, 1.0);
    const PatternMap pattern = directivity_dbi(
        scattered_field(g, RisConfiguration::zeros(76), pattern_scenario(), grid, state_phase_table(2)));

    const AngularDirection node{grid.elevation[30], grid.azimuth[45]};
    CHECK(gain_toward(pattern, node) == doctest::Approx(pattern.dbi(30, 45)).epsilon(1e-12));

    const AngularDirection mid{(grid.elevation[30] + grid.elevation[31]) / 2, grid.azimuth[45]};
    const Real expected = (pattern.dbi(30, 45) + pattern.dbi(31, 45)) / 2;
    CHECK(gain_toward(pattern, mid) == doctest::Approx(expected).epsilon(1e-12));

    // azimuth wrap segment between the last and first columns
    const AngularDirection wrap{grid.elevation[10], (grid.azimuth[359] + 2 * kPi) / 2};
    const Real wrap_expected = (pattern.dbi(10, 359) + pattern.dbi(10, 0)) / 2;
    CHECK(gain_toward(pattern, wrap) == doctest::Approx(wrap_expected).epsilon(1e-12));

    CHECK_THROWS_AS(gain_toward(pattern, AngularDirection{kPi / 2 + 0.1, 0.0}), std::domain_error);
}

TEST_CASE("mirrored azimuths see equal gain from an x-axis line array") {
    const Real pitch = wavelength_from_carrier(5.2e9) / 2;
    const RisGeometry g = build_uniform_grid(3, 1, pitch, pitch);
    const AngularGrid grid = AngularGrid::uniform_deg(1.0, 1.0);
    const PatternMap pattern =
        directivity_dbi(scattered_field(g, RisConfiguration::zeros(3), pattern_scenario(), grid,
                                        state_phase_table(2), Illumination::UniformPlaneWave));
    for (int el_deg = 5; el_deg <= 85; el_deg += 20) {
        for (int az_deg = 10; az_deg < 180; az_deg += 37) {
            const AngularDirection d1{el_deg * kPi / 180.0, az_deg * kPi / 180.0};
            const AngularDirection d2{el_deg * kPi / 180.0, (360 - az_deg) * kPi / 180.0};
            CHECK(gain_toward(pattern, d1) == doctest::Approx(gain_toward(pattern, d2)).epsilon(1e-9));
        }
    }
}
