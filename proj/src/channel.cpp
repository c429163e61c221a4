#include "cdphy/channel.hpp"

#include "cdphy/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdphy {

SymbolStream add_awgn(std::span<const ComplexPoint> symbols, const ChannelSpec& spec)
{
    if (!std::isfinite(spec.es_over_n0_db))
        throw std::invalid_argument("add_awgn: SNR must be finite");
    const double sigma = std::sqrt(noise_density(spec.es_over_n0_db) / 2.0);
    GaussianSource rng(spec.rng_seed);
    SymbolStream out;
    out.reserve(symbols.size());
    for (auto x : symbols) {
        const auto [nr, ni] = rng.normal_pair();
        out.push_back({x.re + sigma * nr, x.im + sigma * ni});
    }
    return out;
}

void validate(const PathLossModel& model)
{
    if (!(model.alpha > 0.0) || !std::isfinite(model.alpha))
        throw std::invalid_argument("path loss: alpha must be positive");
    if (!(model.d_ref_m > 0.0) || !std::isfinite(model.d_ref_m))
        throw std::invalid_argument("path loss: reference distance must be positive");
    if (!std::isfinite(model.snr_ref_db))
        throw std::invalid_argument("path loss: reference SNR must be finite");
}

double snr_at_distance(const PathLossModel& model, double distance_m)
{
    validate(model);
    if (!(distance_m >= model.d_ref_m))
        throw std::invalid_argument("snr_at_distance: distance " + std::to_string(distance_m) +
                                    " m is below the reference distance " + std::to_string(model.d_ref_m) + " m");
    return model.snr_ref_db - 10.0 * model.alpha * std::log10(distance_m / model.d_ref_m);
}

} // namespace cdphy
