#pragma once

#include <complex>

#include <Eigen/Core>

namespace rispls {

using Real = double;
using Complex = std::complex<Real>;

using Vec3 = Eigen::Matrix<Real, 3, 1>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using IndexVector = Eigen::Matrix<int, Eigen::Dynamic, 1>;

/// Diagonal of the reflection phase matrix, one unit-modulus entry per active element.
using PhaseMatrix = ComplexVector;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Real kSpeedOfLight = 299792458.0;  // m/s

inline Real wavelength_from_carrier(Real carrier_hz) { return kSpeedOfLight / carrier_hz; }
inline Real wavenumber(Real wavelength_m) { return 2.0 * kPi / wavelength_m; }

}  // namespace rispls
