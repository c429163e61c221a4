#pragma once

#include "cdphy/constellation.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cdphy {

using BitStream = std::vector<std::uint8_t>;
using SymbolStream = std::vector<ComplexPoint>;

/// m bits starting at offset, MSB first.
inline std::uint32_t group_value(std::span<const std::uint8_t> bits, std::size_t offset, unsigned m)
{
    std::uint32_t v = 0;
    for (unsigned i = 0; i < m; ++i)
        v = (v << 1) | (bits[offset + i] & 1u);
    return v;
}

inline void append_group(std::uint32_t value, unsigned m, BitStream& out)
{
    for (unsigned i = m; i-- > 0;)
        out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

/// Throws std::invalid_argument if bits.size() is not a multiple of bits_per_symbol.
SymbolStream modulate(std::span<const std::uint8_t> bits, const ConstellationScheme& scheme);

/// Minimum-distance decision per symbol.
BitStream demodulate(std::span<const ComplexPoint> symbols, const ConstellationScheme& scheme);

struct CrossDecodeResult {
    BitStream rx_bits;
    std::size_t compared = 0;
    std::size_t errors = 0;
};

/// Compares received symbols decoded with rx against the transmitted bits.
/// A receiver with m' < m bits per symbol is scored on the first m' bits of
/// each transmitted m-bit group. m' > m throws std::invalid_argument.
CrossDecodeResult cross_decode_symbols(std::span<const std::uint8_t> tx_bits, unsigned tx_bits_per_symbol,
                                       std::span<const ComplexPoint> received, const ConstellationScheme& rx);

/// Noiseless: modulate with tx, decode with rx.
CrossDecodeResult cross_decode_bits(std::span<const std::uint8_t> tx_bits, const ConstellationScheme& tx,
                                    const ConstellationScheme& rx);

} // namespace cdphy
