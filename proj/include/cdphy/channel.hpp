#pragma once

#include "cdphy/modem.hpp"

#include <cmath>
#include <cstdint>
#include <span>

namespace cdphy {

struct ChannelSpec {
    double es_over_n0_db = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Log-distance path loss: SNR(d) = snr_ref_db - 10 alpha log10(d / d_ref).
struct PathLossModel {
    double alpha = 2.0;
    double d_ref_m = 1.0;
    double snr_ref_db = 0.0;
};

/// N0 for unit symbol energy.
inline double noise_density(double es_over_n0_db) { return std::pow(10.0, -es_over_n0_db / 10.0); }

/// Adds complex Gaussian noise with per-axis variance N0/2 (Es = 1).
/// Throws std::invalid_argument for a non-finite SNR.
SymbolStream add_awgn(std::span<const ComplexPoint> symbols, const ChannelSpec& spec);

/// Throws std::invalid_argument if d < d_ref or the model is invalid.
double snr_at_distance(const PathLossModel& model, double distance_m);

void validate(const PathLossModel& model);

} // namespace cdphy
