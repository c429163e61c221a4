#pragma once

#include "cdphy/constellation.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace cdphy {

/// Complementary error function. Negative arguments follow erfc(-x) = 2 - erfc(x).
double erfc(double x);

struct SnrPoint {
    double es_over_n0 = 0.0; // linear

    static SnrPoint from_db(double db);
    double db() const;
};

struct SymbolCondProb {
    std::uint32_t symbol = 0;
    double prob_correct = 0.0;
};

// Coefficients of the circular->rectangular closed forms, in units of
// a = sqrt(Es/10). Each argument of erfc is the distance from a circular
// coordinate to a rectangular decision boundary (at 0 or +-2a).
namespace coeff {
inline constexpr double boundary = 2.0;
inline constexpr double outer_near = 1.53; // |Re| or |Im| of outer-ring points
inline constexpr double outer_far = 3.69;
inline constexpr double inner_near = 0.76; // inner ring
inline constexpr double inner_far = 1.84;

inline constexpr double c153 = outer_near;
inline constexpr double c353 = outer_near + boundary;
inline constexpr double c569 = outer_far + boundary;
inline constexpr double c076 = inner_near;
inline constexpr double c276 = inner_near + boundary;
inline constexpr double c184 = inner_far;
inline constexpr double c384 = inner_far + boundary;
} // namespace coeff

/// Bit values of the four representative circular symbols S0..S3:
/// 0000, 0100, 0101, 0001.
inline constexpr std::array<std::uint32_t, 4> kRepresentativeSymbols = {0b0000, 0b0100, 0b0101, 0b0001};

/// P(rectangular decoder outputs S_i | circular S_i sent), closed form.
/// i in 0..3; throws std::invalid_argument otherwise or for snr < 0, and
/// ConsistencyError if the result leaves [-1e-12, 1 + 1e-12].
SymbolCondProb p_correct_symbol(int i, SnrPoint snr);

/// S1 with the sign slip erfc(+1.53u) where the Gaussian integral gives
/// erfc(-1.53u). Other i match p_correct_symbol.
double p_correct_symbol_as_printed(int i, SnrPoint snr);

/// 1/4 * sum of the four symbol probabilities.
double p_correct_symbol_sum(SnrPoint snr);

/// Expanded single-expression form of the aggregate.
double p_correct_expanded(SnrPoint snr);
double p_correct_expanded_as_printed(SnrPoint snr);

/// Aggregate P(C); throws ConsistencyError if the symbol-sum and expanded
/// forms disagree beyond 1e-9.
double p_correct_total(SnrPoint snr);

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

struct Region {
    Interval re;
    Interval im;
};

/// P(Y in region) for Y = tx + complex Gaussian noise with per-axis variance n0/2.
double p_correct_numeric(ComplexPoint tx_point, const Region& region, double n0);

/// Rectangular-grid decision cell of a raw grid coordinate (+-1, +-3) scaled by a.
Interval rect_cell(double grid_coordinate, double a);

struct OracleCase {
    std::uint32_t symbol;
    ComplexPoint tx_mean;
    Region region;
};

/// Mean and decision region behind the i-th closed form (Es = 1).
OracleCase representative_case(int i);

/// Average correct-decode probability over all 16 bit values of tx, decoded
/// with the standard unit-energy rectangular 16QAM grid.
double p_correct_rect_receiver(const ConstellationScheme& tx, SnrPoint snr);

struct AnalyticPoint {
    double snr_db;
    double p_correct;
    double p_error;
};

std::vector<AnalyticPoint> analytic_sweep(const std::vector<double>& snr_db);

} // namespace cdphy
