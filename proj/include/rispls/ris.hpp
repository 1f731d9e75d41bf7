#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "rispls/types.hpp"

namespace rispls {

/// Planar RIS grid on the xy-plane facing +z. Element (m, n) sits at
/// ((m - (M-1)/2) dx, (n - (N-1)/2) dy, 0), so the centroid of the full
/// M x N bounding grid (controller cells included) is the origin.
struct RisGeometry {
    int m_count = 0;  // elements along x
    int n_count = 0;  // elements along y
    Real dx = 0.0;    // element pitch along x, meters
    Real dy = 0.0;    // element pitch along y, meters
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> active;  // m_count x n_count

    /// Active (m, n) pairs in row-major order (m outer, n inner). This is the
    /// canonical element ordering for channel vectors and configurations.
    std::vector<std::pair<int, int>> active_elements;

    int active_count() const { return static_cast<int>(active_elements.size()); }
    bool in_grid(int m, int n) const { return m >= 0 && m < m_count && n >= 0 && n < n_count; }
    bool is_active(int m, int n) const { return in_grid(m, n) && active(m, n); }

    /// Index of (m, n) within the active ordering; -1 if inactive.
    int active_index(int m, int n) const;

    Vec3 element_center(int m, int n) const;

    /// Diagonal of the bounding aperture, hypot(M dx, N dy).
    Real aperture_diagonal() const;

    /// True for the 8x10 grid with the 2x2 controller cutout at the
    /// left-bottom corner (76 active elements).
    bool is_default_prototype() const;
};

/// 8x10 prototype with the 2x2 left-bottom controller cutout (76 active
/// elements) and half-wavelength pitch at the given carrier.
RisGeometry build_default_prototype(Real carrier_hz);

/// Uniform grid with every cell active and the given pitch.
RisGeometry build_uniform_grid(int m_count, int n_count, Real dx, Real dy);

/// Grid with the 2x2 left-bottom controller cutout; requires at least 2x2.
RisGeometry build_grid_with_controller_cutout(int m_count, int n_count, Real dx, Real dy);

/// Per-element discrete reflection state.
struct ElementState {
    int state_id = 0;
    Real phase_rad = 0.0;
    Real amplitude = 1.0;
};

/// Discrete states of all active elements, ordered like
/// RisGeometry::active_elements.
struct RisConfiguration {
    IndexVector states;

    static RisConfiguration zeros(int active_count);
    int size() const { return static_cast<int>(states.size()); }
};

/// Reflection phases for an S-state element. S=2 gives {0, pi}. S=4 maps the
/// four diode combinations to {0, pi/2, pi, 3pi/2}; the hardware's true
/// scalar equivalent is unpublished, so this table is a documented stand-in.
std::vector<Real> state_phase_table(int s_states);

/// The full state space of one element: ids 0..S-1 with their phases and the
/// shared reflection amplitude.
std::vector<ElementState> describe_states(int s_states, Real amplitude);

/// Diagonal entries e^{j phase[state_k]} of the reflection phase matrix.
PhaseMatrix theta_matrix(const RisConfiguration& config, const std::vector<Real>& phase_table);

/// Packs a 76-element configuration into the 152-bit PIN-diode word.
/// Element k (row-major active order) occupies bits (2k, 2k+1) =
/// (horizontal diode, vertical diode), state_id = 2*bit_V + bit_H.
/// Requires the default prototype geometry and state ids < 4.
std::vector<bool> encode_pin_bits(const RisGeometry& geometry, const RisConfiguration& config);

/// Inverse of encode_pin_bits.
RisConfiguration decode_pin_bits(const RisGeometry& geometry, const std::vector<bool>& bits);

/// Parses the textual configuration form: either one state digit per active
/// element (row-major) or, for the default prototype, a 152-character bit
/// string. Throws std::invalid_argument naming the bad offset.
RisConfiguration parse_config_string(const RisGeometry& geometry, int s_states, const std::string& text);

std::string format_state_string(const RisConfiguration& config);
std::string format_bit_string(const RisGeometry& geometry, const RisConfiguration& config);

}  // namespace rispls
