#include "cdphy/modem.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace cdphy {

SymbolStream modulate(std::span<const std::uint8_t> bits, const ConstellationScheme& scheme)
{
    const unsigned m = scheme.bits_per_symbol();
    if (bits.size() % m != 0)
        throw std::invalid_argument("modulate: " + std::to_string(bits.size()) +
                                    " bits is not a multiple of " + std::to_string(m));
    SymbolStream out;
    out.reserve(bits.size() / m);
    for (std::size_t i = 0; i < bits.size(); i += m)
        out.push_back(scheme.point_for(group_value(bits, i, m)));
    return out;
}

BitStream demodulate(std::span<const ComplexPoint> symbols, const ConstellationScheme& scheme)
{
    const unsigned m = scheme.bits_per_symbol();
    BitStream out;
    out.reserve(symbols.size() * m);
    for (auto y : symbols)
        append_group(scheme.nearest(y), m, out);
    return out;
}

CrossDecodeResult cross_decode_symbols(std::span<const std::uint8_t> tx_bits, unsigned tx_bits_per_symbol,
                                       std::span<const ComplexPoint> received, const ConstellationScheme& rx)
{
    const unsigned m = tx_bits_per_symbol;
    const unsigned mr = rx.bits_per_symbol();
    if (mr > m)
        throw std::invalid_argument("cross_decode: receiver bits per symbol (" + std::to_string(mr) +
                                    ") exceeds transmitter (" + std::to_string(m) + ")");
    if (tx_bits.size() != received.size() * m)
        throw std::invalid_argument("cross_decode: bit count does not match symbol count");

    CrossDecodeResult r;
    r.rx_bits.reserve(received.size() * mr);
    for (std::size_t s = 0; s < received.size(); ++s) {
        const std::uint32_t got = rx.nearest(received[s]);
        const std::uint32_t sent_prefix = group_value(tx_bits, s * m, m) >> (m - mr);
        append_group(got, mr, r.rx_bits);
        r.compared += mr;
        r.errors += static_cast<std::size_t>(std::popcount(got ^ sent_prefix));
    }
    return r;
}

CrossDecodeResult cross_decode_bits(std::span<const std::uint8_t> tx_bits, const ConstellationScheme& tx,
                                    const ConstellationScheme& rx)
{
    if (rx.bits_per_symbol() > tx.bits_per_symbol())
        throw std::invalid_argument("cross_decode: receiver bits per symbol exceeds transmitter");
    const auto symbols = modulate(tx_bits, tx);
    return cross_decode_symbols(tx_bits, tx.bits_per_symbol(), symbols, rx);
}

} // namespace cdphy
