#include "cdphy/channel.hpp"
#include "cdphy/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace cdphy;

namespace {

SymbolStream zeros(std::size_t n) { return SymbolStream(n, ComplexPoint{0.0, 0.0}); }

} // namespace

TEST_CASE("vanishing noise at 200 dB")
{
    const auto s = make_standard_scheme("qam16_circ");
    SymbolStream x;
    for (std::uint32_t b = 0; b < 16; ++b)
        x.push_back(s.point_for(b));
    const auto y = add_awgn(x, {200.0, 5});
    REQUIRE(y.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(y[i].re - x[i].re) < 1e-8);
        CHECK(std::abs(y[i].im - x[i].im) < 1e-8);
    }
}

TEST_CASE("noise statistics at 10 dB over 1e6 symbols")
{
    const std::size_t n = 1'000'000;
    const auto y = add_awgn(zeros(n), {10.0, 42});
    double sr = 0, si = 0, srr = 0, sii = 0, sri = 0;
    for (auto p : y) {
        sr += p.re;
        si += p.im;
        srr += p.re * p.re;
        sii += p.im * p.im;
        sri += p.re * p.im;
    }
    const double N = static_cast<double>(n);
    const double mr = sr / N, mi = si / N;
    const double vr = srr / N - mr * mr;
    const double vi = sii / N - mi * mi;

    // N0/2 = 10^-1 / 2
    CHECK(std::abs(vr / 0.05 - 1.0) < 0.01);
    CHECK(std::abs(vi / 0.05 - 1.0) < 0.01);

    const double sigma = std::sqrt(0.05);
    CHECK(std::abs(mr) < 4 * sigma / std::sqrt(N));
    CHECK(std::abs(mi) < 4 * sigma / std::sqrt(N));

    const double corr = (sri / N - mr * mi) / std::sqrt(vr * vi);
    CHECK(std::abs(corr) < 0.005);
}

TEST_CASE("fixed seed is reproducible, different seeds differ")
{
    const auto a = add_awgn(zeros(1000), {3.0, 77});
    const auto b = add_awgn(zeros(1000), {3.0, 77});
    const auto c = add_awgn(zeros(1000), {3.0, 78});
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("noise scales with SNR")
{
    const auto lo = add_awgn(zeros(200'000), {0.0, 9});
    double v = 0;
    for (auto p : lo)
        v += p.re * p.re;
    CHECK(v / 200'000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("non-finite SNR")
{
    CHECK_THROWS_AS(add_awgn(zeros(4), {std::numeric_limits<double>::quiet_NaN(), 1}), std::invalid_argument);
    CHECK_THROWS_AS(add_awgn(zeros(4), {std::numeric_limits<double>::infinity(), 1}), std::invalid_argument);
}

TEST_CASE("log-distance path loss")
{
    CHECK(snr_at_distance({2.0, 1.0, 30.0}, 1.0) == 30.0);
    CHECK(snr_at_distance({2.0, 1.0, 30.0}, 10.0) == doctest::Approx(10.0));
    CHECK(snr_at_distance({1.4, 1.0, 30.0}, 100.0) == doctest::Approx(2.0));
    CHECK(snr_at_distance({3.0, 2.0, 0.0}, 20.0) == doctest::Approx(-30.0));
    CHECK_THROWS_AS(snr_at_distance({2.0, 1.0, 0.0}, 0.5), std::invalid_argument);
}

TEST_CASE("path loss is strictly decreasing in distance and exponent")
{
    double prev = snr_at_distance({2.0, 1.0, 25.0}, 1.0);
    for (double d = 1.5; d <= 200.0; d *= 1.5) {
        const double cur = snr_at_distance({2.0, 1.0, 25.0}, d);
        CHECK(cur < prev);
        prev = cur;
        CHECK(snr_at_distance({2.5, 1.0, 25.0}, d) < snr_at_distance({2.0, 1.0, 25.0}, d));
        CHECK(snr_at_distance({2.0, 1.0, 25.0}, d) < snr_at_distance({1.4, 1.0, 25.0}, d));
    }
}

TEST_CASE("invalid path-loss models")
{
    CHECK_THROWS_AS(validate(PathLossModel{0.0, 1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(PathLossModel{2.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(PathLossModel{2.0, 1.0, std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
    CHECK_NOTHROW(validate(PathLossModel{1.4, 1.0, 10.0}));
}

TEST_CASE("derived seeds")
{
    CHECK(derive_seed(1, {0, 0}) == derive_seed(1, {0, 0}));
    CHECK(derive_seed(1, {0, 1}) != derive_seed(1, {1, 0}));
    CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
    CHECK(derive_seed(1, {}) != derive_seed(1, {0}));
}

TEST_CASE("uniform_below covers its range evenly")
{
    GaussianSource g(3);
    for (std::uint32_t n : {2u, 3u, 4u, 5u, 16u}) {
        std::vector<int> counts(n, 0);
        const int draws = 60'000;
        for (int i = 0; i < draws; ++i) {
            const auto v = g.uniform_below(n);
            REQUIRE(v < n);
            ++counts[v];
        }
        const double p = 1.0 / n;
        const double sigma = std::sqrt(draws * p * (1 - p));
        for (int c : counts)
            CHECK(std::abs(c - draws * p) < 5 * sigma);
    }
}
