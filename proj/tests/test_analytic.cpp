#include "cdphy/analytic.hpp"
#include "cdphy/errors.hpp"
#include "cdphy/kernels.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace cdphy;

namespace {

struct Frozen {
    double x;
    double value;
};

// 20-digit reference values (mpmath, 50-digit working precision).
const Frozen kErfcTable[] = {
    {-3.0, 1.9999779095030014146},    {-1.84, 1.990735947553362618},   {-0.5, 1.5204998778130465377},
    {0.1, 0.8875370839817151078},     {0.5, 0.47950012218695346232},   {1.0, 0.15729920705028513066},
    {1.5, 0.033894853524689272933},   {2.0, 0.0046777349810472658379}, {3.0, 2.2090496998585441373e-5},
    {5.0, 1.5374597944280348502e-12}, {10.0, 2.088487583762544757e-45}, {20.0, 5.3958656116079009289e-176},
    {26.0, 5.6631924088561428465e-296},
};

std::vector<double> grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 50; ++i)
        g.push_back(0.5 * i);
    return g;
}

double quadrature_case(int i, double n0)
{
    const auto c = representative_case(i);
    return oracle::gaussian_interval_quadrature(c.tx_mean.re, c.region.re.lo, c.region.re.hi, n0) *
           oracle::gaussian_interval_quadrature(c.tx_mean.im, c.region.im.lo, c.region.im.hi, n0);
}

} // namespace

TEST_CASE("erfc against high-precision references")
{
    CHECK(cdphy::erfc(0.0) == 1.0);
    for (const auto& f : kErfcTable)
        CHECK(std::abs(cdphy::erfc(f.x) / f.value - 1.0) <= 1e-12);
    CHECK(cdphy::erfc(40.0) <= 1e-300);
}

TEST_CASE("erfc reflection")
{
    for (double x = 0.0; x <= 6.0; x += 0.125)
        CHECK(std::abs(cdphy::erfc(-x) - (2.0 - cdphy::erfc(x))) <= 1e-12);
}

TEST_CASE("closed-form limits")
{
    // u = 50 means Es/N0 = 10 * 2500.
    const SnrPoint huge{25'000.0};
    CHECK(p_correct_symbol(0, huge).prob_correct < 1e-300);
    CHECK(p_correct_total(huge) < 1e-300);
    CHECK(p_correct_symbol(2, SnrPoint{0.0}).prob_correct == 0.0);
    CHECK(p_correct_symbol(0, SnrPoint{0.0}).prob_correct == doctest::Approx(0.25));
    CHECK(p_correct_symbol(1, SnrPoint{1.0}).symbol == 0b0100);
    CHECK_THROWS_AS(p_correct_symbol(4, SnrPoint{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(p_correct_symbol(0, SnrPoint{-1.0}), std::invalid_argument);
}

TEST_CASE("symbol 0100 at 0 dB against the Gaussian oracles")
{
    const double n0 = 1.0;
    const double a = std::sqrt(0.1);
    const Region region{{-std::numeric_limits<double>::infinity(), -2 * a}, {0.0, 2 * a}};
    // The 0100 representative sits at (3.69a, -1.53a).
    const ComplexPoint mean{3.69 * a, -1.53 * a};
    const double closed = p_correct_symbol(1, SnrPoint{1.0}).prob_correct;
    CHECK(std::abs(closed - p_correct_numeric(mean, region, n0)) < 1e-9);
    const double quad = oracle::gaussian_interval_quadrature(mean.re, region.re.lo, region.re.hi, n0) *
                        oracle::gaussian_interval_quadrature(mean.im, region.im.lo, region.im.hi, n0);
    CHECK(std::abs(closed - quad) < 1e-9);
}

TEST_CASE("printed S1 disagrees with the integral, corrected S1 agrees")
{
    const double printed = p_correct_symbol_as_printed(1, SnrPoint{1.0});
    const double fixed = p_correct_symbol(1, SnrPoint{1.0}).prob_correct;
    CHECK(std::abs(printed - quadrature_case(1, 1.0)) > 1e-4);
    CHECK(std::abs(fixed - quadrature_case(1, 1.0)) < 1e-9);
    for (int i : {0, 2, 3})
        CHECK(p_correct_symbol_as_printed(i, SnrPoint{1.0}) == p_correct_symbol(i, SnrPoint{1.0}).prob_correct);

    // The printed expansion is an exact rewrite of the printed symbol sum.
    for (double db : grid()) {
        const auto snr = SnrPoint::from_db(db);
        double printed_sum = 0.0;
        for (int i = 0; i < 4; ++i)
            printed_sum += p_correct_symbol_as_printed(i, snr);
        CHECK(std::abs(printed_sum / 4.0 - p_correct_expanded_as_printed(snr)) < 1e-12);
    }
}

TEST_CASE("closed forms equal both oracles across 0..25 dB")
{
    for (double db : grid()) {
        const auto snr = SnrPoint::from_db(db);
        const double n0 = 1.0 / snr.es_over_n0;
        double sum_q = 0.0;
        for (int i = 0; i < 4; ++i) {
            const auto c = representative_case(i);
            const double closed = p_correct_symbol(i, snr).prob_correct;
            CHECK(std::abs(closed - p_correct_numeric(c.tx_mean, c.region, n0)) < 1e-9);
            const double q = quadrature_case(i, n0);
            CHECK(std::abs(closed - q) < 1e-9);
            sum_q += q;
        }
        CHECK(std::abs(p_correct_total(snr) - sum_q / 4.0) < 1e-9);
        CHECK(std::abs(p_correct_symbol_sum(snr) - p_correct_expanded(snr)) < 1e-9);
    }
}

TEST_CASE("P(C) is bounded and strictly decreasing over the grid")
{
    double prev = 2.0;
    for (double db : grid()) {
        const double p = p_correct_total(SnrPoint::from_db(db));
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("headline values")
{
    CHECK(std::abs(p_correct_total(SnrPoint::from_db(0.0)) - 0.015) <= 0.005);
    // Reference value from an independent Python evaluation; the 10 dB headline is not reproduced.
    CHECK(p_correct_total(SnrPoint::from_db(10.0)) == doctest::Approx(1.6349e-4).epsilon(1e-3));
}

TEST_CASE("interval oracle basics")
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const Region plane{{-inf, inf}, {-inf, inf}};
    CHECK(p_correct_numeric({0.3, -0.2}, plane, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    const Region half{{0.3, inf}, {-inf, inf}};
    CHECK(p_correct_numeric({0.3, -0.2}, half, 0.7) == doctest::Approx(0.5).epsilon(1e-15));
    const Region empty{{0.1, 0.1}, {-inf, inf}};
    CHECK(p_correct_numeric({0.0, 0.0}, empty, 1.0) == 0.0);
    CHECK_THROWS_AS(p_correct_numeric({0.0, 0.0}, plane, 0.0), std::invalid_argument);

    // Tail accuracy: far interval compared against quadrature in relative terms.
    const double tail = p_correct_numeric({0.0, 0.0}, {{3.0, 4.0}, {-inf, inf}}, 0.1);
    const double q = oracle::gaussian_interval_quadrature(0.0, 3.0, 4.0, 0.1);
    CHECK(std::abs(tail / q - 1.0) < 1e-9);
}

TEST_CASE("representative S0 equals its cell probability")
{
    for (double db : {0.0, 7.5, 15.0}) {
        const auto snr = SnrPoint::from_db(db);
        const auto c = representative_case(0);
        CHECK(std::abs(p_correct_numeric(c.tx_mean, c.region, 1.0 / snr.es_over_n0) -
                       p_correct_symbol(0, snr).prob_correct) < 1e-12);
    }
}

TEST_CASE("analytic sweep complements")
{
    for (const auto& p : analytic_sweep(grid())) {
        CHECK(p.p_error == 1.0 - p.p_correct);
    }
}

TEST_CASE("small Monte Carlo agrees with P(C) on the representative alphabet")
{
    const auto circ = make_standard_scheme("qam16_circ");
    const auto rect = make_standard_scheme("qam16_rect");
    const std::uint64_t n = 1'000'000;
    for (double db : {0.0, 5.0}) {
        const LinkJob job{&circ, &rect, db, n, 99, kRepresentativeSymbols};
        const auto c = simulate_link(job);
        const double rate = 1.0 - static_cast<double>(c.symbol_errors) / static_cast<double>(n);
        const double p = p_correct_total(SnrPoint::from_db(db));
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
        CHECK(std::abs(rate - p) < 4 * sigma);
    }
}

TEST_CASE("exact 16-symbol circular-to-rectangular rate")
{
    // Independent Python evaluation of the same 16 cell probabilities.
    const auto circ = make_standard_scheme("qam16_circ");
    CHECK(p_correct_rect_receiver(circ, SnrPoint::from_db(0.0)) == doctest::Approx(0.034772).epsilon(1e-3));
    CHECK(p_correct_rect_receiver(circ, SnrPoint::from_db(10.0)) == doctest::Approx(0.0078004).epsilon(1e-3));
    // Matched rectangular receiver: per-axis Gray decision, 1 - SER.
    const auto rect = make_standard_scheme("qam16_rect");
    for (double db : {0.0, 10.0, 20.0}) {
        const double u = std::sqrt(std::pow(10.0, db / 10.0) / 10.0);
        const double ser = 1.0 - std::pow(1.0 - 0.75 * std::erfc(u), 2);
        CHECK(p_correct_rect_receiver(rect, SnrPoint::from_db(db)) == doctest::Approx(1.0 - ser).epsilon(1e-12));
    }
}
