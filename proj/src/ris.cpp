#include "rispls/ris.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rispls {

namespace {

void rebuild_active_list(RisGeometry& g) {
    g.active_elements.clear();
    for (int m = 0; m < g.m_count; ++m) {
        for (int n = 0; n < g.n_count; ++n) {
            if (g.active(m, n)) g.active_elements.emplace_back(m, n);
        }
    }
}

}  // namespace

int RisGeometry::active_index(int m, int n) const {
    if (!is_active(m, n)) return -1;
    int idx = 0;
    for (const auto& [em, en] : active_elements) {
        if (em == m && en == n) return idx;
        ++idx;
    }
    return -1;
}

Vec3 RisGeometry::element_center(int m, int n) const {
    const Real x = (static_cast<Real>(m) - static_cast<Real>(m_count - 1) / 2.0) * dx;
    const Real y = (static_cast<Real>(n) - static_cast<Real>(n_count - 1) / 2.0) * dy;
    return Vec3{x, y, 0.0};
}

Real RisGeometry::aperture_diagonal() const {
    return std::hypot(static_cast<Real>(m_count) * dx, static_cast<Real>(n_count) * dy);
}

bool RisGeometry::is_default_prototype() const {
    if (m_count != 8 || n_count != 10) return false;
    for (int m = 0; m < m_count; ++m) {
        for (int n = 0; n < n_count; ++n) {
            const bool cutout = m < 2 && n < 2;
            if (active(m, n) == cutout) return false;
        }
    }
    return true;
}

RisGeometry build_default_prototype(Real carrier_hz) {
    if (carrier_hz <= 0.0) {
        throw std::domain_error("build_default_prototype: carrier frequency must be > 0");
    }
    const Real pitch = wavelength_from_carrier(carrier_hz) / 2.0;
    RisGeometry g;
    g.m_count = 8;
    g.n_count = 10;
    g.dx = pitch;
    g.dy = pitch;
    g.active.setConstant(8, 10, true);
    g.active.block(0, 0, 2, 2).setConstant(false);  // left-bottom controller cells
    rebuild_active_list(g);
    return g;
}

RisGeometry build_uniform_grid(int m_count, int n_count, Real dx, Real dy) {
    if (m_count < 1 || n_count < 1) {
        throw std::domain_error("build_uniform_grid: grid dimensions must be >= 1");
    }
    if (dx <= 0.0 || dy <= 0.0) {
        throw std::domain_error("build_uniform_grid: element pitch must be > 0");
    }
    RisGeometry g;
    g.m_count = m_count;
    g.n_count = n_count;
    g.dx = dx;
    g.dy = dy;
    g.active.setConstant(m_count, n_count, true);
    rebuild_active_list(g);
    return g;
}

RisGeometry build_grid_with_controller_cutout(int m_count, int n_count, Real dx, Real dy) {
    if (m_count < 2 || n_count < 2) {
        throw std::domain_error("controller cutout needs a grid of at least 2x2");
    }
    RisGeometry g = build_uniform_grid(m_count, n_count, dx, dy);
    g.active.block(0, 0, 2, 2).setConstant(false);
    rebuild_active_list(g);
    return g;
}

RisConfiguration RisConfiguration::zeros(int active_count) {
    RisConfiguration c;
    c.states = IndexVector::Zero(active_count);
    return c;
}

std::vector<Real> state_phase_table(int s_states) {
    if (s_states == 2) return {0.0, kPi};
    if (s_states == 4) return {0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0};
    throw std::invalid_argument("state_phase_table: unsupported state count " + std::to_string(s_states) +
                                " (supported: 2, 4)");
}

std::vector<ElementState> describe_states(int s_states, Real amplitude) {
    const std::vector<Real> table = state_phase_table(s_states);
    std::vector<ElementState> states(table.size());
    for (std::size_t s = 0; s < table.size(); ++s) {
        states[s] = ElementState{static_cast<int>(s), table[s], amplitude};
    }
    return states;
}

PhaseMatrix theta_matrix(const RisConfiguration& config, const std::vector<Real>& phase_table) {
    PhaseMatrix theta(config.states.size());
    for (Eigen::Index k = 0; k < config.states.size(); ++k) {
        const int s = config.states[k];
        if (s < 0 || s >= static_cast<int>(phase_table.size())) {
            throw std::invalid_argument("theta_matrix: state id " + std::to_string(s) + " at element " +
                                        std::to_string(k) + " is outside the phase table");
        }
        theta[k] = std::polar<Real>(1.0, phase_table[static_cast<std::size_t>(s)]);
    }
    return theta;
}

std::vector<bool> encode_pin_bits(const RisGeometry& geometry, const RisConfiguration& config) {
    if (!geometry.is_default_prototype()) {
        throw std::invalid_argument("encode_pin_bits: the 152-bit word is defined for the 8x10 prototype "
                                    "with the 2x2 controller cutout only");
    }
    if (config.size() != geometry.active_count()) {
        throw std::invalid_argument("encode_pin_bits: configuration length " +
                                    std::to_string(config.size()) + " does not match the 76 active elements");
    }
    std::vector<bool> bits(static_cast<std::size_t>(2 * config.size()), false);
    for (int k = 0; k < config.size(); ++k) {
        const int s = config.states[k];
        if (s < 0 || s > 3) {
            throw std::invalid_argument("encode_pin_bits: state id " + std::to_string(s) + " at element " +
                                        std::to_string(k) + " does not fit two diode bits");
        }
        bits[static_cast<std::size_t>(2 * k)] = (s & 1) != 0;      // horizontal diode
        bits[static_cast<std::size_t>(2 * k + 1)] = (s & 2) != 0;  // vertical diode
    }
    return bits;
}

RisConfiguration decode_pin_bits(const RisGeometry& geometry, const std::vector<bool>& bits) {
    if (!geometry.is_default_prototype()) {
        throw std::invalid_argument("decode_pin_bits: the 152-bit word is defined for the 8x10 prototype "
                                    "with the 2x2 controller cutout only");
    }
    if (bits.size() != static_cast<std::size_t>(2 * geometry.active_count())) {
        throw std::invalid_argument("decode_pin_bits: expected " +
                                    std::to_string(2 * geometry.active_count()) + " bits, got " +
                                    std::to_string(bits.size()));
    }
    RisConfiguration config = RisConfiguration::zeros(geometry.active_count());
    for (int k = 0; k < config.size(); ++k) {
        const int h = bits[static_cast<std::size_t>(2 * k)] ? 1 : 0;
        const int v = bits[static_cast<std::size_t>(2 * k + 1)] ? 1 : 0;
        config.states[k] = 2 * v + h;
    }
    return config;
}

RisConfiguration parse_config_string(const RisGeometry& geometry, int s_states, const std::string& text) {
    const std::size_t active = static_cast<std::size_t>(geometry.active_count());
    if (text.size() == 2 * active && geometry.is_default_prototype()) {
        std::vector<bool> bits(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '0') {
                bits[i] = false;
            } else if (text[i] == '1') {
                bits[i] = true;
            } else {
                std::ostringstream msg;
                msg << "config string: invalid bit '" << text[i] << "' at offset " << i;
                throw std::invalid_argument(msg.str());
            }
        }
        return decode_pin_bits(geometry, bits);
    }
    if (text.size() != active) {
        std::ostringstream msg;
        msg << "config string: expected " << active << " state digits"
            << (geometry.is_default_prototype() ? " or 152 bits" : "") << ", got " << text.size()
            << " characters";
        throw std::invalid_argument(msg.str());
    }
    RisConfiguration config = RisConfiguration::zeros(static_cast<int>(active));
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c < '0' || c >= '0' + s_states) {
            std::ostringstream msg;
            msg << "config string: invalid state digit '" << c << "' at offset " << i << " (states 0.."
                << s_states - 1 << ")";
            throw std::invalid_argument(msg.str());
        }
        config.states[static_cast<Eigen::Index>(i)] = c - '0';
    }
    return config;
}

std::string format_state_string(const RisConfiguration& config) {
    std::string out;
    out.reserve(static_cast<std::size_t>(config.size()));
    for (int k = 0; k < config.size(); ++k) {
        out.push_back(static_cast<char>('0' + config.states[k]));
    }
    return out;
}

std::string format_bit_string(const RisGeometry& geometry, const RisConfiguration& config) {
    const std::vector<bool> bits = encode_pin_bits(geometry, config);
    std::string out;
    out.reserve(bits.size());
    for (bool b : bits) out.push_back(b ? '1' : '0');
    return out;
}

}  // namespace rispls
