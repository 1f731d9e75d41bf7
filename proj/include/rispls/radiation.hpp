#pragma once

#include <Eigen/Core>

#include "rispls/channel.hpp"
#include "rispls/geometry.hpp"
#include "rispls/ris.hpp"
#include "rispls/types.hpp"

namespace rispls {

/// Front-hemisphere sampling grid: elevation in [0, pi/2], azimuth in
/// [0, 2pi), both strictly increasing.
struct AngularGrid {
    RealVector elevation;  // radians
    RealVector azimuth;    // radians

    /// Uniform grid with the given step in degrees; elevation 0..90 deg
    /// inclusive, azimuth 0..360 deg exclusive. Default 1 deg x 1 deg.
    static AngularGrid uniform_deg(Real elevation_step_deg = 1.0, Real azimuth_step_deg = 1.0);

    void validate() const;
};

/// How the incident field on each element is modeled when computing the
/// scattered pattern.
enum class Illumination {
    NearFieldAlice,    // per-element path loss and incidence angle from Alice
    UniformPlaneWave,  // unit amplitude, zero phase, broadside incidence
};

/// Scattered far field and derived directivity over an angular grid.
/// field(i, j) = E(elevation[i], azimuth[j]).
struct PatternMap {
    AngularGrid grid;
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> field;
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> dbi;
    bool dbi_filled = false;
};

/// Sums the per-element contributions
///   illumination * Gamma e^{j phase_table[state]} * cos(el) * steering(m, n, el, az)
/// over active elements; inactive cells contribute zero.
PatternMap scattered_field(const RisGeometry& geometry, const RisConfiguration& config,
                           const Scenario& scenario, const AngularGrid& grid,
                           const std::vector<Real>& phase_table,
                           Illumination illumination = Illumination::NearFieldAlice);

/// Fills the dBi layer: D = 4 pi |E|^2 / integral_hemisphere |E|^2 dOmega,
/// with the integral taken by the trapezoid rule (periodic closure in
/// azimuth). Normalizing over the front hemisphere only matches a reflecting,
/// non-permeable surface. Throws on an all-zero field.
PatternMap directivity_dbi(const PatternMap& pattern);

/// Bilinear interpolation of the dBi layer (azimuth wraps). Throws if the
/// direction falls outside the grid's elevation range.
Real gain_toward(const PatternMap& pattern, const AngularDirection& direction);

}  // namespace rispls
