#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cdphy {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct KeyspaceReport {
    std::size_t order = 0;
    BigInt keyspace_size;            // M!
    double key_entropy_bits = 0.0;   // log2(M!)
    unsigned shannon_bound_max_symbols = 0; // largest n with M^n <= M!
};

/// 2 <= order <= 64.
KeyspaceReport keyspace_report(std::size_t order);

struct UnicityResult {
    double entropy_bits = 0.0;
    double redundancy = 0.0;
    std::optional<double> distance; // nullopt: infinite

    bool infinite() const { return !distance.has_value(); }
};

/// U = H / D; infinite when D = 0 and H > 0, zero when H = 0.
UnicityResult unicity(double entropy_bits, double redundancy);

class BinaryMatrix {
public:
    BinaryMatrix() = default;
    /// Row-major n*n entries, each 0 or 1.
    BinaryMatrix(std::size_t n, std::vector<std::uint8_t> entries);

    static BinaryMatrix identity(std::size_t n);
    static BinaryMatrix all_ones(std::size_t n);

    std::size_t size() const { return n_; }
    bool at(std::size_t r, std::size_t c) const { return entries_[r * n_ + c] != 0; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> entries_;
};

/// Whitespace- or comma-separated 0/1 rows, one row per line; '#' starts a comment.
BinaryMatrix parse_binary_matrix(const std::string& text);

inline constexpr std::size_t kMaxPermanentOrder = 20;

/// Ryser inclusion-exclusion in Gray-code order, split into independent
/// chunks run under OpenMP. n > 20 throws std::invalid_argument.
std::uint64_t permanent(const BinaryMatrix& m);

/// Single-threaded Ryser, same arithmetic.
std::uint64_t permanent_serial(const BinaryMatrix& m);

struct SecrecyVerdict {
    std::size_t order = 0;
    std::uint64_t keys_enumerated = 0;
    std::vector<Rational> prior;
    std::vector<Rational> ciphertext_marginal; // prob(C = c)
    // posterior[p][c] = prob(P = p | C = c)
    std::vector<std::vector<Rational>> posterior;
    bool perfect = false;
};

inline constexpr std::size_t kMaxSecrecyOrder = 6;

/// Enumerates every key with probability 1/M!, forms the exact joint law of
/// plaintext symbol and keyed point index, and checks prob(P=p | C=c) == prob(P=p)
/// for all pairs. The prior must have M entries, be non-negative and sum to 1.
SecrecyVerdict verify_perfect_secrecy(std::size_t order, const std::vector<Rational>& prior);
SecrecyVerdict verify_perfect_secrecy(std::size_t order);

/// "1/2,1/4,1/8,1/8"
std::vector<Rational> parse_prior(const std::string& text);

} // namespace cdphy
