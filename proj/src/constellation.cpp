#include "cdphy/constellation.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cdphy {

namespace {

bool is_bijection(std::span<const std::uint32_t> perm)
{
    std::vector<bool> seen(perm.size(), false);
    for (auto v : perm) {
        if (v >= perm.size() || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

} // namespace

const std::array<ComplexPoint, 16> kQam16RectTable = {{
    {-3, 3}, {-1, 3}, {3, 3}, {1, 3},      // 0000 0001 0010 0011
    {-3, 1}, {-1, 1}, {3, 1}, {1, 1},      // 0100 0101 0110 0111
    {-3, -3}, {-1, -3}, {3, -3}, {1, -3},  // 1000 1001 1010 1011
    {-3, -1}, {-1, -1}, {3, -1}, {1, -1},  // 1100 1101 1110 1111
}};

const std::array<ComplexPoint, 16> kQam16CircTable = {{
    {1.53, -3.69}, {0.76, -1.84}, {-1.53, 3.69}, {-0.76, 1.84},
    {3.69, -1.53}, {1.84, -0.76}, {-3.69, 1.53}, {-1.84, 0.76},
    {1.53, 3.69}, {0.76, 1.84}, {-1.53, -3.69}, {-0.76, -1.84},
    {3.69, 1.53}, {1.84, 0.76}, {-3.69, -1.53}, {-1.84, -0.76},
}};

MappingKey::MappingKey(std::vector<std::uint32_t> perm) : perm_(std::move(perm))
{
    if (perm_.empty())
        throw std::invalid_argument("mapping key: empty permutation");
    if (!is_bijection(perm_))
        throw std::invalid_argument("mapping key: not a permutation of 0..M-1");
}

MappingKey MappingKey::identity(std::size_t order)
{
    std::vector<std::uint32_t> p(order);
    std::iota(p.begin(), p.end(), 0u);
    return MappingKey(std::move(p));
}

MappingKey MappingKey::inverse() const
{
    std::vector<std::uint32_t> inv(perm_.size());
    for (std::uint32_t b = 0; b < perm_.size(); ++b)
        inv[perm_[b]] = b;
    return MappingKey(std::move(inv));
}

MappingKey compose(const MappingKey& outer, const MappingKey& inner)
{
    if (outer.order() != inner.order())
        throw std::invalid_argument("compose: key orders differ");
    std::vector<std::uint32_t> p(inner.order());
    for (std::size_t b = 0; b < p.size(); ++b)
        p[b] = outer[inner[b]];
    return MappingKey(std::move(p));
}

MappingKey random_key(std::size_t order, std::uint64_t seed)
{
    if (order == 0)
        throw std::invalid_argument("random_key: order must be positive");
    std::vector<std::uint32_t> p(order);
    std::iota(p.begin(), p.end(), 0u);
    std::mt19937_64 rng(seed);
    // Fisher-Yates, descending. Unbiased draw in [0, i] by rejection.
    for (std::size_t i = order - 1; i > 0; --i) {
        const std::uint64_t bound = i + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = rng();
        } while (r >= limit);
        std::swap(p[i], p[r % bound]);
    }
    return MappingKey(std::move(p));
}

std::string serialize_key(const MappingKey& key)
{
    std::string out;
    for (std::size_t i = 0; i < key.order(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(key[i]);
    }
    return out;
}

MappingKey parse_key(std::string_view text)
{
    std::vector<std::uint32_t> perm;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        auto field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!field.empty() && field.front() == ' ')
            field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ')
            field.remove_suffix(1);
        std::uint32_t v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
            throw std::invalid_argument("parse_key: bad entry '" + std::string(field) + "'");
        perm.push_back(v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    if (!is_bijection(perm))
        throw std::invalid_argument("parse_key: '" + std::string(text) +
                                    "' is not a permutation (duplicate or out-of-range index)");
    return MappingKey(std::move(perm));
}

MappingKey parse_key(std::string_view text, std::size_t expected_order)
{
    auto key = parse_key(text);
    if (key.order() != expected_order)
        throw std::invalid_argument("parse_key: key has " + std::to_string(key.order()) +
                                    " entries, scheme order is " + std::to_string(expected_order));
    return key;
}

std::optional<StandardScheme> parse_scheme_name(std::string_view name)
{
    if (name == "bpsk")
        return StandardScheme::bpsk;
    if (name == "qpsk")
        return StandardScheme::qpsk;
    if (name == "qam16_rect")
        return StandardScheme::qam16_rect;
    if (name == "qam16_circ")
        return StandardScheme::qam16_circ;
    return std::nullopt;
}

std::string_view scheme_name(StandardScheme s)
{
    switch (s) {
    case StandardScheme::bpsk: return "bpsk";
    case StandardScheme::qpsk: return "qpsk";
    case StandardScheme::qam16_rect: return "qam16_rect";
    case StandardScheme::qam16_circ: return "qam16_circ";
    }
    return "?";
}

ConstellationScheme::ConstellationScheme(std::string label, std::vector<ComplexPoint> points, MappingKey key)
    : label_(std::move(label)), points_(std::move(points)), key_(std::move(key))
{
    const auto m = points_.size();
    if (m < 2 || !std::has_single_bit(m))
        throw std::invalid_argument("constellation: order must be a power of two >= 2");
    if (key_.order() != m)
        throw std::invalid_argument("constellation: key length " + std::to_string(key_.order()) +
                                    " does not match order " + std::to_string(m));
    for (auto p : points_)
        if (!std::isfinite(p.re) || !std::isfinite(p.im))
            throw std::invalid_argument("constellation: non-finite point");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (points_[i] == points_[j])
                throw std::invalid_argument("constellation: duplicate points");

    double energy = 0.0;
    for (auto p : points_)
        energy += norm2(p);
    energy /= static_cast<double>(m);
    if (!(energy > 0.0))
        throw std::invalid_argument("constellation: zero energy");
    // Already-normalized input is left bit-exact so re-keying preserves geometry.
    if (std::abs(energy - 1.0) > 1e-12) {
        const double scale = 1.0 / std::sqrt(energy);
        for (auto& p : points_) {
            p.re *= scale;
            p.im *= scale;
        }
    }

    bits_per_symbol_ = static_cast<unsigned>(std::countr_zero(m));
    by_bits_.resize(m);
    for (std::uint32_t b = 0; b < m; ++b)
        by_bits_[b] = points_[key_[b]];
}

double ConstellationScheme::mean_energy() const
{
    double e = 0.0;
    for (auto p : points_)
        e += norm2(p);
    return e / static_cast<double>(points_.size());
}

ConstellationScheme ConstellationScheme::rebased() const
{
    return ConstellationScheme(label_, by_bits_, MappingKey::identity(order()));
}

ConstellationScheme make_standard_scheme(StandardScheme which)
{
    std::vector<ComplexPoint> pts;
    switch (which) {
    case StandardScheme::bpsk:
        pts = {{1.0, 0.0}, {-1.0, 0.0}};
        break;
    case StandardScheme::qpsk: {
        // MSB picks the in-phase sign, LSB the quadrature sign (Gray).
        const double s = 1.0 / std::sqrt(2.0);
        pts = {{s, s}, {s, -s}, {-s, s}, {-s, -s}};
        break;
    }
    case StandardScheme::qam16_rect:
        pts.assign(kQam16RectTable.begin(), kQam16RectTable.end());
        break;
    case StandardScheme::qam16_circ:
        pts.assign(kQam16CircTable.begin(), kQam16CircTable.end());
        break;
    }
    const auto m = pts.size();
    return ConstellationScheme(std::string(scheme_name(which)), std::move(pts), MappingKey::identity(m));
}

ConstellationScheme make_standard_scheme(std::string_view name)
{
    const auto which = parse_scheme_name(name);
    if (!which)
        throw std::invalid_argument("unknown scheme '" + std::string(name) +
                                    "' (expected bpsk, qpsk, qam16_rect or qam16_circ)");
    return make_standard_scheme(*which);
}

ConstellationScheme make_keyed_scheme(const ConstellationScheme& base, const MappingKey& key)
{
    if (key.order() != base.order())
        throw std::invalid_argument("make_keyed_scheme: key length " + std::to_string(key.order()) +
                                    " does not match scheme order " + std::to_string(base.order()));
    return ConstellationScheme(base.label(), std::vector<ComplexPoint>(base.points().begin(), base.points().end()),
                               key);
}

} // namespace cdphy
