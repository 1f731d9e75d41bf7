#include "rispls/radiation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rispls {

AngularGrid AngularGrid::uniform_deg(Real elevation_step_deg, Real azimuth_step_deg) {
    if (elevation_step_deg <= 0.0 || azimuth_step_deg <= 0.0) {
        throw std::domain_error("angular grid: step must be > 0");
    }
    const int n_el = static_cast<int>(std::floor(90.0 / elevation_step_deg + 0.5)) + 1;
    const int n_az = static_cast<int>(std::floor(360.0 / azimuth_step_deg + 0.5));
    AngularGrid grid;
    grid.elevation.resize(n_el);
    for (int i = 0; i < n_el; ++i) {
        grid.elevation[i] = std::min(static_cast<Real>(i) * elevation_step_deg, 90.0) * kPi / 180.0;
    }
    grid.azimuth.resize(n_az);
    for (int j = 0; j < n_az; ++j) {
        grid.azimuth[j] = static_cast<Real>(j) * azimuth_step_deg * kPi / 180.0;
    }
    grid.validate();
    return grid;
}

void AngularGrid::validate() const {
    if (elevation.size() < 2 || azimuth.size() < 2) {
        throw std::domain_error("angular grid: need at least two samples per axis");
    }
    for (Eigen::Index i = 0; i < elevation.size(); ++i) {
        if (elevation[i] < 0.0 || elevation[i] > kPi / 2.0 + 1e-12) {
            throw std::domain_error("angular grid: elevation samples must lie in [0, pi/2]");
        }
        if (i > 0 && elevation[i] <= elevation[i - 1]) {
            throw std::domain_error("angular grid: elevation samples must be strictly increasing");
        }
    }
    for (Eigen::Index j = 0; j < azimuth.size(); ++j) {
        if (azimuth[j] < 0.0 || azimuth[j] >= 2.0 * kPi) {
            throw std::domain_error("angular grid: azimuth samples must lie in [0, 2pi)");
        }
        if (j > 0 && azimuth[j] <= azimuth[j - 1]) {
            throw std::domain_error("angular grid: azimuth samples must be strictly increasing");
        }
    }
}

PatternMap scattered_field(const RisGeometry& geometry, const RisConfiguration& config,
                           const Scenario& scenario, const AngularGrid& grid,
                           const std::vector<Real>& table, Illumination illumination) {
    grid.validate();
    if (config.size() != geometry.active_count()) {
        throw std::invalid_argument("scattered_field: configuration length does not match geometry");
    }
    const Real lambda = scenario.wavelength();
    const Real k0 = wavenumber(lambda);
    const int count = geometry.active_count();

    // Per-element complex weight: illumination * Gamma e^{j phase}.
    ComplexVector weight(count);
    for (int k = 0; k < count; ++k) {
        const auto [m, n] = geometry.active_elements[static_cast<std::size_t>(k)];
        Complex incident{1.0, 0.0};
        if (illumination == Illumination::NearFieldAlice) {
            const auto [alice_dir, r_alice] = element_angles_and_distance(geometry, m, n, scenario.alice);
            incident = path_loss(lambda, r_alice) * element_pattern(alice_dir.elevation);
        }
        const int s = config.states[k];
        if (s < 0 || s >= static_cast<int>(table.size())) {
            throw std::invalid_argument("scattered_field: state id " + std::to_string(s) +
                                        " has no phase entry");
        }
        weight[k] = incident * scenario.reflection_amplitude *
                    std::polar<Real>(1.0, table[static_cast<std::size_t>(s)]);
    }

    PatternMap map;
    map.grid = grid;
    map.field.resize(grid.elevation.size(), grid.azimuth.size());
    for (Eigen::Index i = 0; i < grid.elevation.size(); ++i) {
        const Real el = grid.elevation[i];
        const Real cos_el = std::cos(el);
        const Real sin_el = std::sin(el);
        for (Eigen::Index j = 0; j < grid.azimuth.size(); ++j) {
            const Real az = grid.azimuth[j];
            const Real ux = k0 * geometry.dx * sin_el * std::cos(az);
            const Real uy = k0 * geometry.dy * sin_el * std::sin(az);
            Complex acc{0.0, 0.0};
            for (int k = 0; k < count; ++k) {
                const auto [m, n] = geometry.active_elements[static_cast<std::size_t>(k)];
                acc += weight[k] * std::polar<Real>(1.0, static_cast<Real>(m) * ux + static_cast<Real>(n) * uy);
            }
            map.field(i, j) = acc * cos_el;
        }
    }
    return map;
}

namespace {

/// Hemisphere integral of values(i, j) * sin(elevation[i]) dOmega using the
/// trapezoid rule in elevation and a periodically closed trapezoid in azimuth.
Real hemisphere_integral(const AngularGrid& grid, const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& values) {
    const Eigen::Index n_el = grid.elevation.size();
    const Eigen::Index n_az = grid.azimuth.size();

    RealVector az_weight = RealVector::Zero(n_az);
    for (Eigen::Index j = 0; j + 1 < n_az; ++j) {
        const Real seg = grid.azimuth[j + 1] - grid.azimuth[j];
        az_weight[j] += seg / 2.0;
        az_weight[j + 1] += seg / 2.0;
    }
    const Real wrap = 2.0 * kPi - grid.azimuth[n_az - 1] + grid.azimuth[0];
    az_weight[n_az - 1] += wrap / 2.0;
    az_weight[0] += wrap / 2.0;

    RealVector el_weight = RealVector::Zero(n_el);
    for (Eigen::Index i = 0; i + 1 < n_el; ++i) {
        const Real seg = grid.elevation[i + 1] - grid.elevation[i];
        el_weight[i] += seg / 2.0;
        el_weight[i + 1] += seg / 2.0;
    }

    Real acc = 0.0;
    for (Eigen::Index i = 0; i < n_el; ++i) {
        const Real sin_el = std::sin(grid.elevation[i]);
        Real row = 0.0;
        for (Eigen::Index j = 0; j < n_az; ++j) {
            row += values(i, j) * az_weight[j];
        }
        acc += row * sin_el * el_weight[i];
    }
    return acc;
}

}  // namespace

PatternMap directivity_dbi(const PatternMap& pattern) {
    const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> power = pattern.field.cwiseAbs2();
    const Real total = hemisphere_integral(pattern.grid, power);
    if (!(total > 0.0)) {
        throw std::domain_error("directivity_dbi: field is zero everywhere; directivity undefined");
    }
    PatternMap out = pattern;
    out.dbi.resize(power.rows(), power.cols());
    const Real scale = 4.0 * kPi / total;
    for (Eigen::Index i = 0; i < power.rows(); ++i) {
        for (Eigen::Index j = 0; j < power.cols(); ++j) {
            out.dbi(i, j) = 10.0 * std::log10(scale * power(i, j));
        }
    }
    out.dbi_filled = true;
    return out;
}

Real gain_toward(const PatternMap& pattern, const AngularDirection& direction) {
    if (!pattern.dbi_filled) {
        throw std::logic_error("gain_toward: dBi layer not filled; call directivity_dbi first");
    }
    const RealVector& el = pattern.grid.elevation;
    const RealVector& az = pattern.grid.azimuth;
    if (direction.elevation < el[0] || direction.elevation > el[el.size() - 1]) {
        std::ostringstream msg;
        msg << "gain_toward: elevation " << direction.elevation << " rad outside the grid range [" << el[0]
            << ", " << el[el.size() - 1] << "]";
        throw std::domain_error(msg.str());
    }

    Eigen::Index i1 = 1;
    while (i1 < el.size() - 1 && el[i1] < direction.elevation) ++i1;
    const Eigen::Index i0 = i1 - 1;
    const Real t_el = (direction.elevation - el[i0]) / (el[i1] - el[i0]);

    Real azimuth = direction.azimuth;
    if (azimuth < 0.0 || azimuth >= 2.0 * kPi) {
        azimuth = std::fmod(std::fmod(azimuth, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
    }
    Eigen::Index j0;
    Eigen::Index j1;
    Real t_az;
    if (azimuth < az[0] || azimuth >= az[az.size() - 1]) {
        // wrap segment between the last and first azimuth samples
        j0 = az.size() - 1;
        j1 = 0;
        const Real span = 2.0 * kPi - az[j0] + az[0];
        const Real offset = azimuth >= az[j0] ? azimuth - az[j0] : azimuth + 2.0 * kPi - az[j0];
        t_az = offset / span;
    } else {
        j1 = 1;
        while (j1 < az.size() - 1 && az[j1] < azimuth) ++j1;
        j0 = j1 - 1;
        t_az = (azimuth - az[j0]) / (az[j1] - az[j0]);
    }

    const Real v00 = pattern.dbi(i0, j0);
    const Real v01 = pattern.dbi(i0, j1);
    const Real v10 = pattern.dbi(i1, j0);
    const Real v11 = pattern.dbi(i1, j1);
    return (1.0 - t_el) * ((1.0 - t_az) * v00 + t_az * v01) + t_el * ((1.0 - t_az) * v10 + t_az * v11);
}

}  // namespace rispls
