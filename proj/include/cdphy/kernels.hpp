#pragma once

#include "cdphy/constellation.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cdphy {

struct LinkCounts {
    std::uint64_t symbols = 0;
    std::uint64_t tx_bits = 0;
    std::uint64_t compared_bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t symbol_errors = 0;

    LinkCounts& operator+=(const LinkCounts& o)
    {
        symbols += o.symbols;
        tx_bits += o.tx_bits;
        compared_bits += o.compared_bits;
        bit_errors += o.bit_errors;
        symbol_errors += o.symbol_errors;
        return *this;
    }
    friend bool operator==(const LinkCounts&, const LinkCounts&) = default;
};

/// One transmitter/receiver pair at one receive-side SNR.
struct LinkJob {
    const ConstellationScheme* tx = nullptr;
    const ConstellationScheme* rx = nullptr;
    double snr_db = 0.0;
    std::uint64_t symbols = 0;
    std::uint64_t seed = 0;
    /// Bit values the transmitter draws from, uniformly. Empty means all M
    /// values, i.e. uniform random bits.
    std::span<const std::uint32_t> tx_alphabet{};
};

/// Symbols are processed in fixed blocks, each with its own RNG substream
/// derived from (seed, block index). Results therefore depend only on the
/// job, never on how blocks are scheduled.
inline constexpr std::uint64_t kBlockSymbols = 1u << 16;

/// Draws symbols, adds AWGN, decodes with rx and scores the first
/// rx.bits_per_symbol() bits of each transmitted group.
LinkCounts simulate_block(const LinkJob& job, std::uint64_t block);

/// Reference: blocks in order on the calling thread.
LinkCounts simulate_link_serial(const LinkJob& job);

/// OpenMP over the flattened (job, block) grid. threads <= 0 uses the
/// OpenMP default. Bit-identical to simulate_link_serial per job.
std::vector<LinkCounts> simulate_links(std::span<const LinkJob> jobs, int threads = 0);

LinkCounts simulate_link(const LinkJob& job, int threads = 0);

/// Throws std::invalid_argument for missing schemes, rx wider than tx, a
/// non-finite SNR or out-of-range alphabet entries.
void validate(const LinkJob& job);

} // namespace cdphy
