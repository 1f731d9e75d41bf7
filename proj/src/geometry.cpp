#include "rispls/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rispls {

AngularDirection direction_from_ris_center(const Vec3& point) {
    if (!point.allFinite()) {
        throw std::domain_error("direction_from_ris_center: point has non-finite components");
    }
    if (point.z() <= 0.0) {
        std::ostringstream msg;
        msg << "direction_from_ris_center: point (" << point.x() << ", " << point.y() << ", " << point.z()
            << ") is not in front of the RIS (z must be > 0)";
        throw std::domain_error(msg.str());
    }
    const Real r = point.norm();
    AngularDirection dir;
    dir.elevation = std::acos(point.z() / r);
    Real az = std::atan2(point.y(), point.x());
    if (az < 0.0) az += 2.0 * kPi;
    if (az >= 2.0 * kPi) az = 0.0;  // guard against -0.0 rounding up to 2pi
    dir.azimuth = az;
    return dir;
}

std::pair<AngularDirection, Real> element_angles_and_distance(const RisGeometry& geometry, int m, int n,
                                                              const Vec3& point) {
    if (!geometry.in_grid(m, n)) {
        std::ostringstream msg;
        msg << "element_angles_and_distance: element (" << m << ", " << n << ") outside the "
            << geometry.m_count << "x" << geometry.n_count << " grid";
        throw std::domain_error(msg.str());
    }
    if (!geometry.is_active(m, n)) {
        std::ostringstream msg;
        msg << "element_angles_and_distance: element (" << m << ", " << n
            << ") is inactive (controller cutout)";
        throw std::domain_error(msg.str());
    }
    const Vec3 rel = point - geometry.element_center(m, n);
    AngularDirection dir = direction_from_ris_center(rel);
    return {dir, rel.norm()};
}

Real fraunhofer_boundary(const RisGeometry& geometry, Real wavelength) {
    if (wavelength <= 0.0) {
        throw std::domain_error("fraunhofer_boundary: wavelength must be > 0");
    }
    const Real d = geometry.aperture_diagonal();
    return 2.0 * d * d / wavelength;
}

FieldRegion classify_field_region(const RisGeometry& geometry, Real wavelength, const Vec3& point) {
    FieldRegion region;
    region.boundary_m = fraunhofer_boundary(geometry, wavelength);
    region.zone = point.norm() < region.boundary_m ? FieldZone::Near : FieldZone::Far;
    return region;
}

}  // namespace rispls
