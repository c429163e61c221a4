#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdphy {

struct ComplexPoint {
    double re = 0.0;
    double im = 0.0;

    friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;
};

inline double norm2(ComplexPoint p) { return p.re * p.re + p.im * p.im; }

inline double distance2(ComplexPoint a, ComplexPoint b)
{
    const double dr = a.re - b.re;
    const double di = a.im - b.im;
    return dr * dr + di * di;
}

/// Secret assignment of m-bit values to constellation point indices:
/// perm()[b] is the index of the point that carries bit value b.
class MappingKey {
public:
    /// Throws std::invalid_argument unless perm is a bijection on {0..M-1}.
    explicit MappingKey(std::vector<std::uint32_t> perm);

    static MappingKey identity(std::size_t order);

    std::size_t order() const { return perm_.size(); }
    std::uint32_t operator[](std::size_t bit_value) const { return perm_[bit_value]; }
    std::span<const std::uint32_t> perm() const { return perm_; }

    MappingKey inverse() const;

    friend bool operator==(const MappingKey&, const MappingKey&) = default;

private:
    std::vector<std::uint32_t> perm_;
};

/// compose(outer, inner)[b] == outer[inner[b]].
MappingKey compose(const MappingKey& outer, const MappingKey& inner);

/// Uniform permutation of {0..order-1} by Fisher-Yates over a seeded
/// mt19937_64. Deterministic for a given (order, seed).
MappingKey random_key(std::size_t order, std::uint64_t seed);

/// "i0,i1,...,iM-1"
std::string serialize_key(const MappingKey& key);
MappingKey parse_key(std::string_view text);
MappingKey parse_key(std::string_view text, std::size_t expected_order);

enum class StandardScheme { bpsk, qpsk, qam16_rect, qam16_circ };

std::optional<StandardScheme> parse_scheme_name(std::string_view name);
std::string_view scheme_name(StandardScheme s);

// Raw 16QAM coordinates indexed by bit value (MSB-first), in units of the
// grid amplitude a = sqrt(Es/10).
extern const std::array<ComplexPoint, 16> kQam16RectTable;
extern const std::array<ComplexPoint, 16> kQam16CircTable;

class ConstellationScheme {
public:
    /// Points are rescaled to unit mean energy. Throws std::invalid_argument
    /// for a non-power-of-two order, duplicate or non-finite points, or a key
    /// of the wrong length.
    ConstellationScheme(std::string label, std::vector<ComplexPoint> points, MappingKey key);

    std::size_t order() const { return points_.size(); }
    unsigned bits_per_symbol() const { return bits_per_symbol_; }
    std::span<const ComplexPoint> points() const { return points_; }
    const MappingKey& key() const { return key_; }
    const std::string& label() const { return label_; }

    ComplexPoint point_for(std::uint32_t bit_value) const { return by_bits_[bit_value]; }

    /// Bit value whose point is nearest to y; ties go to the lowest bit value.
    std::uint32_t nearest(ComplexPoint y) const
    {
        std::uint32_t best = 0;
        double best_d = distance2(y, by_bits_[0]);
        for (std::uint32_t b = 1; b < by_bits_.size(); ++b) {
            const double d = distance2(y, by_bits_[b]);
            if (d < best_d) {
                best_d = d;
                best = b;
            }
        }
        return best;
    }

    double mean_energy() const;

    /// Same bit-to-point map, expressed as points ordered by bit value with
    /// the identity key.
    ConstellationScheme rebased() const;

    /// Pointwise equality of the bit-to-point map and geometry.
    friend bool operator==(const ConstellationScheme& a, const ConstellationScheme& b)
    {
        return a.points_ == b.points_ && a.key_ == b.key_;
    }

private:
    std::string label_;
    std::vector<ComplexPoint> points_;
    MappingKey key_;
    std::vector<ComplexPoint> by_bits_;
    unsigned bits_per_symbol_ = 0;
};

ConstellationScheme make_standard_scheme(StandardScheme which);
ConstellationScheme make_standard_scheme(std::string_view name);

/// Same geometry as base, bit assignment replaced by key.
ConstellationScheme make_keyed_scheme(const ConstellationScheme& base, const MappingKey& key);

} // namespace cdphy
