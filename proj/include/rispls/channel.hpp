#pragma once

#include <utility>
#include <vector>

#include "rispls/geometry.hpp"
#include "rispls/ris.hpp"
#include "rispls/types.hpp"

namespace rispls {

/// Per-element complex channels over the active elements, row-major order.
/// h: Alice -> element, g: element -> Bob, p: element -> Eve.
struct ChannelSet {
    ComplexVector h;
    ComplexVector g;
    ComplexVector p;
};

/// Wiretap deployment: transmitter Alice, intended receiver Bob, and
/// eavesdropper Eve, all in front of the RIS with no direct link.
struct Scenario {
    Vec3 alice{0.0, 0.0, 1.0};
    Vec3 bob{0.0, 0.0, 2.0};
    Vec3 eve{0.0, 0.0, 2.0};
    Real carrier_hz = 5.2e9;
    Real tx_power_w = 1.0;
    Real noise_bob_w = 1e-15;
    Real noise_eve_w = 1e-15;
    Real reflection_amplitude = 1.0;  // shared per-element amplitude, [0, 1]

    Real wavelength() const { return wavelength_from_carrier(carrier_hz); }

    /// Throws std::domain_error if any field is out of range.
    void validate() const;
};

/// Free-space path loss (lambda / (4 pi R)) e^{-j 2 pi R / lambda}.
Complex path_loss(Real wavelength, Real distance);

/// Patch scattering pattern cos(elevation); elevation must lie in [0, pi/2].
Real element_pattern(Real elevation);

/// Array steering term e^{j k0 (m dx sin(el) cos(az) + n dy sin(el) sin(az))}.
Complex steering_factor(int m, int n, const AngularDirection& direction, Real k0, Real dx, Real dy);

/// Builds h, g, p for every active element. Alice is treated in the near
/// field (per-element incidence angles); Bob and Eve use the global
/// array-center direction for pattern and steering but per-element distances
/// for path loss.
ChannelSet build_channels(const Scenario& scenario, const RisGeometry& geometry);

/// Received powers P = |sum_mn g_mn e^{j phi_mn} h_mn|^2 Gamma^2 Pa + N for
/// Bob and Eve (the |g^H Theta h|^2 form with the receiver vector holding
/// conjugated coefficients).
std::pair<Real, Real> received_powers(const ChannelSet& channels, const PhaseMatrix& theta,
                                      const Scenario& scenario);

/// Secrecy capacity max(log2 Pb - log2 Pe + log2 Ne - log2 Nb, 0) in bps/Hz.
Real secrecy_capacity(Real p_bob, Real p_eve, Real noise_bob, Real noise_eve);

/// Mean-power level 10 log10((1/K) sum |y[k]|^2) of integer-valued complex
/// samples; components must lie in (-2047, 2048]. All-zero input returns
/// -infinity. No full-scale normalization is applied.
Real power_dbfs(const std::vector<Complex>& samples);

// dB plumbing. Linear inputs must be positive.
Real to_db(Real linear);
Real from_db(Real db);
Real watts_to_dbm(Real watts);
Real dbm_to_watts(Real dbm);

}  // namespace rispls
