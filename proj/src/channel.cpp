#include "rispls/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rispls {

void Scenario::validate() const {
    if (!(carrier_hz > 0.0)) throw std::domain_error("scenario: carrier_hz must be > 0");
    if (!(tx_power_w > 0.0)) throw std::domain_error("scenario: tx_power_w must be > 0");
    if (!(noise_bob_w > 0.0)) throw std::domain_error("scenario: noise_b_w must be > 0");
    if (!(noise_eve_w > 0.0)) throw std::domain_error("scenario: noise_e_w must be > 0");
    if (!(reflection_amplitude >= 0.0 && reflection_amplitude <= 1.0)) {
        throw std::domain_error("scenario: gamma must lie in [0, 1]");
    }
    if (!alice.allFinite() || !bob.allFinite() || !eve.allFinite()) {
        throw std::domain_error("scenario: positions must be finite");
    }
}

Complex path_loss(Real wavelength, Real distance) {
    if (wavelength <= 0.0) throw std::domain_error("path_loss: wavelength must be > 0");
    if (distance <= 0.0) throw std::domain_error("path_loss: distance must be > 0");
    const Real magnitude = wavelength / (4.0 * kPi * distance);
    return std::polar(magnitude, -2.0 * kPi * distance / wavelength);
}

Real element_pattern(Real elevation) {
    if (!(elevation >= 0.0 && elevation <= kPi / 2.0)) {
        throw std::domain_error("element_pattern: elevation must lie in [0, pi/2]");
    }
    return std::cos(elevation);
}

Complex steering_factor(int m, int n, const AngularDirection& direction, Real k0, Real dx, Real dy) {
    const Real sin_el = std::sin(direction.elevation);
    const Real phase = k0 * (static_cast<Real>(m) * dx * sin_el * std::cos(direction.azimuth) +
                             static_cast<Real>(n) * dy * sin_el * std::sin(direction.azimuth));
    return std::polar<Real>(1.0, phase);
}

ChannelSet build_channels(const Scenario& scenario, const RisGeometry& geometry) {
    scenario.validate();
    const Real lambda = scenario.wavelength();
    const Real k0 = wavenumber(lambda);

    // Throws if a terminal sits behind the surface.
    const AngularDirection bob_dir = direction_from_ris_center(scenario.bob);
    const AngularDirection eve_dir = direction_from_ris_center(scenario.eve);
    direction_from_ris_center(scenario.alice);

    const Real cos_bob = element_pattern(bob_dir.elevation);
    const Real cos_eve = element_pattern(eve_dir.elevation);

    // Receiver-side far-field phases: the steering factor already carries the
    // per-element path-length differences toward the global direction, so the
    // path-loss phase uses the array-center distance once. Per-element
    // distances still set the amplitude.
    const Complex bob_center_phase = std::polar<Real>(1.0, -2.0 * kPi * scenario.bob.norm() / lambda);
    const Complex eve_center_phase = std::polar<Real>(1.0, -2.0 * kPi * scenario.eve.norm() / lambda);

    const int count = geometry.active_count();
    ChannelSet ch;
    ch.h.resize(count);
    ch.g.resize(count);
    ch.p.resize(count);

    for (int k = 0; k < count; ++k) {
        const auto [m, n] = geometry.active_elements[static_cast<std::size_t>(k)];
        const auto [alice_dir, r_alice] = element_angles_and_distance(geometry, m, n, scenario.alice);
        ch.h[k] = path_loss(lambda, r_alice) * element_pattern(alice_dir.elevation);

        const Real r_bob = (scenario.bob - geometry.element_center(m, n)).norm();
        ch.g[k] = lambda / (4.0 * kPi * r_bob) * bob_center_phase * cos_bob *
                  steering_factor(m, n, bob_dir, k0, geometry.dx, geometry.dy);

        const Real r_eve = (scenario.eve - geometry.element_center(m, n)).norm();
        ch.p[k] = lambda / (4.0 * kPi * r_eve) * eve_center_phase * cos_eve *
                  steering_factor(m, n, eve_dir, k0, geometry.dx, geometry.dy);
    }
    return ch;
}

std::pair<Real, Real> received_powers(const ChannelSet& channels, const PhaseMatrix& theta,
                                      const Scenario& scenario) {
    if (channels.h.size() != channels.g.size() || channels.h.size() != channels.p.size()) {
        throw std::invalid_argument("received_powers: channel vectors have mismatched lengths");
    }
    if (theta.size() != channels.h.size()) {
        std::ostringstream msg;
        msg << "received_powers: phase matrix has " << theta.size() << " entries for " << channels.h.size()
            << " channel elements";
        throw std::invalid_argument(msg.str());
    }
    const Real gamma_sq = scenario.reflection_amplitude * scenario.reflection_amplitude;
    // cascade sum_mn h_mn e^{j phi_mn} g_mn: the channel vectors hold the
    // physical propagation coefficients, so the bilinear form multiplies them
    // plainly (the conjugate-transpose notation absorbs the conjugation into
    // the receiver vector instead).
    const ComplexVector reflected = theta.cwiseProduct(channels.h);
    const Real s_bob = std::norm(channels.g.cwiseProduct(reflected).sum());
    const Real s_eve = std::norm(channels.p.cwiseProduct(reflected).sum());
    return {s_bob * gamma_sq * scenario.tx_power_w + scenario.noise_bob_w,
            s_eve * gamma_sq * scenario.tx_power_w + scenario.noise_eve_w};
}

Real secrecy_capacity(Real p_bob, Real p_eve, Real noise_bob, Real noise_eve) {
    if (!(p_bob > 0.0 && p_eve > 0.0 && noise_bob > 0.0 && noise_eve > 0.0)) {
        throw std::domain_error("secrecy_capacity: powers and noise powers must be > 0");
    }
    const Real cs = std::log2(p_bob) - std::log2(p_eve) + std::log2(noise_eve) - std::log2(noise_bob);
    return cs > 0.0 ? cs : 0.0;
}

Real power_dbfs(const std::vector<Complex>& samples) {
    if (samples.empty()) throw std::invalid_argument("power_dbfs: empty sample sequence");
    Real acc = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const Real re = samples[k].real();
        const Real im = samples[k].imag();
        if (!(re > -2047.0 && re <= 2048.0 && im > -2047.0 && im <= 2048.0)) {
            std::ostringstream msg;
            msg << "power_dbfs: sample " << k << " component outside (-2047, 2048]";
            throw std::invalid_argument(msg.str());
        }
        acc += std::norm(samples[k]);
    }
    if (acc == 0.0) return -std::numeric_limits<Real>::infinity();
    return 10.0 * std::log10(acc / static_cast<Real>(samples.size()));
}

Real to_db(Real linear) {
    if (!(linear > 0.0)) throw std::domain_error("to_db: value must be > 0");
    return 10.0 * std::log10(linear);
}

Real from_db(Real db) { return std::pow(10.0, db / 10.0); }

Real watts_to_dbm(Real watts) {
    if (!(watts > 0.0)) throw std::domain_error("watts_to_dbm: power must be > 0");
    return 10.0 * std::log10(watts / 1e-3);
}

Real dbm_to_watts(Real dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

}  // namespace rispls
