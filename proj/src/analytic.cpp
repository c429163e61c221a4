#include "cdphy/analytic.hpp"

#include "cdphy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cdphy {

double erfc(double x) { return std::erfc(x); }

SnrPoint SnrPoint::from_db(double db) { return {std::pow(10.0, db / 10.0)}; }

double SnrPoint::db() const { return 10.0 * std::log10(es_over_n0); }

namespace {

void check_snr(SnrPoint snr)
{
    if (!(snr.es_over_n0 >= 0.0) || std::isnan(snr.es_over_n0))
        throw std::invalid_argument("SNR must be non-negative");
}

double checked_probability(double p, const char* what)
{
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12))
        throw ConsistencyError(std::string(what) + ": probability " + std::to_string(p) + " outside [0, 1]");
    return std::clamp(p, 0.0, 1.0);
}

// erfc(c * u), u = sqrt(Es / (10 N0)).
struct Terms {
    double u;
    double operator()(double c) const { return erfc(c * u); }
};

Terms terms(SnrPoint snr) { return {std::sqrt(snr.es_over_n0 / 10.0)}; }

double symbol_closed_form(int i, const Terms& E)
{
    using namespace coeff;
    switch (i) {
    case 0: // 0000: Y_R < -2a, Y_I > 2a
        return 0.25 * E(c353) * E(c569);
    case 1: // 0100: Y_R < -2a, 0 < Y_I < 2a
        return 0.5 * E(c569) - 0.25 * E(c569) * E(-c153) - 0.25 * E(c569) * E(c353);
    case 2: // 0101: -2a < Y_R < 0, 0 < Y_I < 2a
        return (1.0 - 0.5 * E(c384) - 0.5 * E(-c184)) * (1.0 - 0.5 * E(-c076) - 0.5 * E(c276));
    case 3: // 0001: -2a < Y_R < 0, Y_I > 2a
        return 0.5 * E(c384) - 0.25 * E(c384) * E(c276) - 0.25 * E(c384) * E(-c076);
    default:
        throw std::invalid_argument("representative symbol index must be 0..3, got " + std::to_string(i));
    }
}

} // namespace

SymbolCondProb p_correct_symbol(int i, SnrPoint snr)
{
    check_snr(snr);
    const double p = symbol_closed_form(i, terms(snr));
    return {kRepresentativeSymbols[static_cast<std::size_t>(i)], checked_probability(p, "p_correct_symbol")};
}

double p_correct_symbol_as_printed(int i, SnrPoint snr)
{
    check_snr(snr);
    const auto E = terms(snr);
    if (i == 1) {
        using namespace coeff;
        return 0.5 * E(c569) - 0.25 * E(c569) * E(c153) - 0.25 * E(c569) * E(c353);
    }
    return symbol_closed_form(i, E);
}

double p_correct_symbol_sum(SnrPoint snr)
{
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += p_correct_symbol(i, snr).prob_correct;
    // P(S_k) = 1/16, four symbols per class.
    return s / 4.0;
}

namespace {

double expanded(const Terms& E, double first_outer_arg)
{
    using namespace coeff;
    return 0.25 * (-0.25 * E(c569) * E(first_outer_arg) + 0.25 * E(-c184) * E(c276) + 0.25 * E(-c184) * E(-c076) -
                   0.5 * E(-c076) - 0.5 * E(c276) + 0.5 * E(c569) - 0.5 * E(-c184) + 1.0);
}

} // namespace

double p_correct_expanded(SnrPoint snr)
{
    check_snr(snr);
    return expanded(terms(snr), -coeff::c153);
}

double p_correct_expanded_as_printed(SnrPoint snr)
{
    check_snr(snr);
    return expanded(terms(snr), coeff::c153);
}

double p_correct_total(SnrPoint snr)
{
    const double by_symbol = p_correct_symbol_sum(snr);
    const double by_expansion = p_correct_expanded(snr);
    if (std::abs(by_symbol - by_expansion) > 1e-9)
        throw ConsistencyError("p_correct_total: symbol sum " + std::to_string(by_symbol) +
                               " disagrees with expanded form " + std::to_string(by_expansion));
    return checked_probability(by_symbol, "p_correct_total");
}

namespace {

// P(lo < X < hi) for X ~ N(mean, n0/2). Picks the tail differences that
// avoid cancellation when the interval lies entirely on one side of the mean.
double interval_probability(double mean, Interval iv, double n0)
{
    if (!(iv.lo < iv.hi))
        return 0.0;
    const double s = std::sqrt(n0);
    if (iv.lo >= mean)
        return 0.5 * erfc((iv.lo - mean) / s) - 0.5 * erfc((iv.hi - mean) / s);
    if (iv.hi <= mean)
        return 0.5 * erfc((mean - iv.hi) / s) - 0.5 * erfc((mean - iv.lo) / s);
    return 1.0 - 0.5 * erfc((mean - iv.lo) / s) - 0.5 * erfc((iv.hi - mean) / s);
}

} // namespace

double p_correct_numeric(ComplexPoint tx_point, const Region& region, double n0)
{
    if (!(n0 > 0.0))
        throw std::invalid_argument("p_correct_numeric: n0 must be positive");
    if (std::isnan(region.re.lo) || std::isnan(region.re.hi) || std::isnan(region.im.lo) ||
        std::isnan(region.im.hi))
        throw std::invalid_argument("p_correct_numeric: NaN region bound");
    return interval_probability(tx_point.re, region.re, n0) * interval_probability(tx_point.im, region.im, n0);
}

Interval rect_cell(double grid_coordinate, double a)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (grid_coordinate < -2.0)
        return {-inf, -2.0 * a};
    if (grid_coordinate < 0.0)
        return {-2.0 * a, 0.0};
    if (grid_coordinate < 2.0)
        return {0.0, 2.0 * a};
    return {2.0 * a, inf};
}

OracleCase representative_case(int i)
{
    if (i < 0 || i > 3)
        throw std::invalid_argument("representative symbol index must be 0..3");
    const double a = std::sqrt(1.0 / 10.0);
    const auto sym = kRepresentativeSymbols[static_cast<std::size_t>(i)];
    const auto c = kQam16CircTable[sym];
    const auto r = kQam16RectTable[sym];
    return {sym, {c.re * a, c.im * a}, {rect_cell(r.re, a), rect_cell(r.im, a)}};
}

double p_correct_rect_receiver(const ConstellationScheme& tx, SnrPoint snr)
{
    if (!(snr.es_over_n0 > 0.0))
        throw std::invalid_argument("p_correct_rect_receiver: SNR must be positive");
    if (tx.order() != 16)
        throw std::invalid_argument("p_correct_rect_receiver: transmitter must have 16 points");
    const double a = std::sqrt(1.0 / 10.0);
    const double n0 = 1.0 / snr.es_over_n0;
    double total = 0.0;
    for (std::uint32_t b = 0; b < 16; ++b) {
        const auto r = kQam16RectTable[b];
        total += p_correct_numeric(tx.point_for(b), {rect_cell(r.re, a), rect_cell(r.im, a)}, n0);
    }
    return total / 16.0;
}

std::vector<AnalyticPoint> analytic_sweep(const std::vector<double>& snr_db)
{
    std::vector<AnalyticPoint> out;
    out.reserve(snr_db.size());
    for (double db : snr_db) {
        const double pc = p_correct_total(SnrPoint::from_db(db));
        out.push_back({db, pc, 1.0 - pc});
    }
    return out;
}

} // namespace cdphy
