#pragma once

#include <utility>

#include "rispls/ris.hpp"
#include "rispls/types.hpp"

namespace rispls {

/// Direction in the RIS frame: elevation measured from the +z boresight axis
/// (so the cos-elevation element pattern peaks at broadside), azimuth from +x
/// toward +y, normalized to [0, 2pi).
struct AngularDirection {
    Real elevation = 0.0;  // [0, pi/2]
    Real azimuth = 0.0;    // [0, 2pi)
};

enum class FieldZone { Near, Far };

struct FieldRegion {
    FieldZone zone = FieldZone::Far;
    Real boundary_m = 0.0;  // Fraunhofer distance 2 D^2 / lambda
};

/// Direction of a point seen from the array center. The point must be in
/// front of the RIS (z > 0); the surface reflects but is not permeable.
AngularDirection direction_from_ris_center(const Vec3& point);

/// Direction and Euclidean distance from the center of element (m, n) to the
/// point. Throws if (m, n) is inactive (controller cutout) or z <= 0.
std::pair<AngularDirection, Real> element_angles_and_distance(const RisGeometry& geometry, int m, int n,
                                                              const Vec3& point);

/// Fraunhofer boundary 2 D^2 / lambda with D the grid diagonal aperture.
Real fraunhofer_boundary(const RisGeometry& geometry, Real wavelength);

/// Near iff |point - array center| < 2 D^2 / lambda.
FieldRegion classify_field_region(const RisGeometry& geometry, Real wavelength, const Vec3& point);

}  // namespace rispls
