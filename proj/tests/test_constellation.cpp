#include "cdphy/constellation.hpp"
#include "cdphy/errors.hpp"
#include "cdphy/scheme_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <stdexcept>

using namespace cdphy;

namespace {

const double kA = std::sqrt(1.0 / 10.0);

// Mean |p|^2 of the raw circular table, in units of a^2.
double raw_circular_energy()
{
    double e = 0.0;
    for (auto p : kQam16CircTable)
        e += p.re * p.re + p.im * p.im;
    return e / 16.0;
}

const std::vector<StandardScheme> kAll = {StandardScheme::bpsk, StandardScheme::qpsk, StandardScheme::qam16_rect,
                                          StandardScheme::qam16_circ};

} // namespace

TEST_CASE("qam16_rect follows the tabulated grid scaled by sqrt(1/10)")
{
    const auto s = make_standard_scheme("qam16_rect");
    CHECK(s.order() == 16);
    CHECK(s.bits_per_symbol() == 4);
    // 0111 -> 1 + 1j
    CHECK(s.point_for(0b0111).re == doctest::Approx(kA).epsilon(1e-15));
    CHECK(s.point_for(0b0111).im == doctest::Approx(kA).epsilon(1e-15));
    // 0000 -> -3 + 3j
    CHECK(s.point_for(0b0000).re == doctest::Approx(-3 * kA).epsilon(1e-15));
    CHECK(s.point_for(0b0000).im == doctest::Approx(3 * kA).epsilon(1e-15));
}

TEST_CASE("qam16_circ keeps the tabulated coordinates up to exact unit-energy rescaling")
{
    const auto s = make_standard_scheme("qam16_circ");
    // Raw table mean energy is 9.9601 a^2, so points are scaled by sqrt(10 / 9.9601).
    CHECK(raw_circular_energy() == doctest::Approx(9.9601).epsilon(1e-12));
    const double k = kA * std::sqrt(10.0 / raw_circular_energy());
    const auto p0 = s.point_for(0b0000);
    CHECK(p0.re == doctest::Approx(1.53 * k).epsilon(1e-14));
    CHECK(p0.im == doctest::Approx(-3.69 * k).epsilon(1e-14));
    // Within 0.25% of the unrescaled 1.53a - 3.69aj.
    CHECK(std::abs(p0.re / (1.53 * kA) - 1.0) < 2.5e-3);
    CHECK(std::abs(p0.im / (-3.69 * kA) - 1.0) < 2.5e-3);
    const auto p4 = s.point_for(0b0100);
    CHECK(p4.re == doctest::Approx(3.69 * k).epsilon(1e-14));
    CHECK(p4.im == doctest::Approx(-1.53 * k).epsilon(1e-14));
}

TEST_CASE("bpsk and qpsk geometries")
{
    const auto b = make_standard_scheme("bpsk");
    CHECK(b.point_for(0) == ComplexPoint{1, 0});
    CHECK(b.point_for(1) == ComplexPoint{-1, 0});
    const auto q = make_standard_scheme("qpsk");
    const double s = 1 / std::sqrt(2.0);
    CHECK(q.point_for(0b00).re == doctest::Approx(s));
    CHECK(q.point_for(0b00).im == doctest::Approx(s));
    CHECK(q.point_for(0b01).im == doctest::Approx(-s));
    CHECK(q.point_for(0b10).re == doctest::Approx(-s));
    // Gray: neighbours on the square differ in one bit.
    for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t y = 0; y < 4; ++y) {
            const double d = std::sqrt(distance2(q.point_for(x), q.point_for(y)));
            if (std::abs(d - std::sqrt(2.0)) < 1e-12)
                CHECK(std::popcount(x ^ y) == 1);
        }
}

TEST_CASE("unknown scheme name")
{
    CHECK_THROWS_AS(make_standard_scheme("qam64"), std::invalid_argument);
    CHECK_FALSE(parse_scheme_name("8psk").has_value());
}

TEST_CASE("every produced scheme has unit mean energy")
{
    for (auto which : kAll) {
        const auto s = make_standard_scheme(which);
        CHECK(s.mean_energy() == doctest::Approx(1.0).epsilon(1e-9));
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto k = make_keyed_scheme(s, random_key(s.order(), seed));
            CHECK(std::abs(k.mean_energy() - 1.0) < 1e-9);
        }
    }
    const ConstellationScheme custom("custom", {{5, 0}, {0, 7}, {-2, 0}, {0, -1}}, MappingKey::identity(4));
    CHECK(std::abs(custom.mean_energy() - 1.0) < 1e-9);
}

TEST_CASE("make_keyed_scheme")
{
    const auto rect = make_standard_scheme("qam16_rect");

    SUBCASE("identity key reproduces the base")
    {
        for (auto which : kAll) {
            const auto s = make_standard_scheme(which);
            CHECK(make_keyed_scheme(s, MappingKey::identity(s.order())) == s);
        }
    }
    SUBCASE("reverse permutation sends 0000 to the point of 1111")
    {
        std::vector<std::uint32_t> rev(16);
        for (std::uint32_t i = 0; i < 16; ++i)
            rev[i] = 15 - i;
        const auto k = make_keyed_scheme(rect, MappingKey(rev));
        CHECK(k.point_for(0b0000) == rect.point_for(0b1111));
        CHECK(k.point_for(0b0000).re == doctest::Approx(kA));
        CHECK(k.point_for(0b0000).im == doctest::Approx(-kA));
    }
    SUBCASE("same seed twice gives identical schemes")
    {
        CHECK(make_keyed_scheme(rect, random_key(16, 99)) == make_keyed_scheme(rect, random_key(16, 99)));
    }
    SUBCASE("key length mismatch")
    {
        CHECK_THROWS_AS(make_keyed_scheme(rect, MappingKey::identity(4)), std::invalid_argument);
    }
}

TEST_CASE("re-keying a rebased scheme composes keys")
{
    const auto circ = make_standard_scheme("qam16_circ");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto k1 = random_key(16, seed);
        const auto k2 = random_key(16, seed + 1000);
        const auto twice = make_keyed_scheme(make_keyed_scheme(circ, k1).rebased(), k2);
        const auto once = make_keyed_scheme(circ, compose(k1, k2));
        for (std::uint32_t b = 0; b < 16; ++b)
            CHECK(twice.point_for(b) == once.point_for(b));
    }
}

TEST_CASE("random_key")
{
    SUBCASE("deterministic per seed")
    {
        CHECK(random_key(4, 7) == random_key(4, 7));
        CHECK(random_key(16, 7) == random_key(16, 7));
    }
    SUBCASE("always a bijection")
    {
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            const auto k = random_key(16, seed);
            std::vector<std::uint32_t> sorted(k.perm().begin(), k.perm().end());
            std::sort(sorted.begin(), sorted.end());
            for (std::uint32_t i = 0; i < 16; ++i)
                REQUIRE(sorted[i] == i);
        }
    }
    SUBCASE("uniform over S4")
    {
        // 24000 draws, expected 1000 per permutation, binomial sigma = sqrt(24000 * 1/24 * 23/24).
        std::map<std::vector<std::uint32_t>, int> freq;
        for (std::uint64_t seed = 0; seed < 24000; ++seed) {
            const auto k = random_key(4, seed);
            ++freq[std::vector<std::uint32_t>(k.perm().begin(), k.perm().end())];
        }
        REQUIRE(freq.size() == 24);
        const double sigma = std::sqrt(24000.0 * (1.0 / 24) * (23.0 / 24));
        double chi2 = 0.0;
        for (const auto& [perm, n] : freq) {
            CHECK(std::abs(n - 1000.0) <= 3 * sigma);
            chi2 += (n - 1000.0) * (n - 1000.0) / 1000.0;
        }
        // chi-square, 23 dof: 99.9th percentile is 49.73.
        CHECK(chi2 < 49.73);
    }
    SUBCASE("order zero")
    {
        CHECK_THROWS_AS(random_key(0, 1), std::invalid_argument);
    }
}

TEST_CASE("key text format")
{
    CHECK(serialize_key(parse_key("2,0,3,1")) == "2,0,3,1");
    CHECK_THROWS_AS(parse_key("0,0,1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_key("0,1,4,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_key("0,1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_key("0,1,x,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_key("0,1,2", 4), std::invalid_argument);
    CHECK(parse_key(" 1, 0 ", 2) == MappingKey({1, 0}));

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto k = random_key(16, seed);
        CHECK(parse_key(serialize_key(k), 16) == k);
    }
}

TEST_CASE("mapping key inverse")
{
    const auto k = random_key(16, 5);
    CHECK(compose(k, k.inverse()) == MappingKey::identity(16));
    CHECK(compose(k.inverse(), k) == MappingKey::identity(16));
}

TEST_CASE("scheme construction rejects invalid geometry")
{
    CHECK_THROWS_AS(ConstellationScheme("x", {{1, 0}, {0, 1}, {-1, 0}}, MappingKey::identity(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ConstellationScheme("x", {{1, 0}, {1, 0}}, MappingKey::identity(2)), std::invalid_argument);
    CHECK_THROWS_AS(ConstellationScheme("x", {{1, 0}, {NAN, 0}}, MappingKey::identity(2)), std::invalid_argument);
    CHECK_THROWS_AS(ConstellationScheme("x", {{1, 0}, {-1, 0}}, MappingKey::identity(4)), std::invalid_argument);
    CHECK_THROWS_AS(MappingKey({0, 2}), std::invalid_argument);
}

TEST_CASE("scheme file round trip")
{
    const auto s = make_keyed_scheme(make_standard_scheme("qam16_circ"), random_key(16, 3));
    const auto back = scheme_from_text(scheme_to_text(s));
    CHECK(back == s);
    CHECK(back.label() == "qam16_circ");

    const auto path = std::filesystem::temp_directory_path() / "cdphy_scheme_roundtrip.json";
    write_scheme_file(s, path);
    CHECK(read_scheme_file(path) == s);
    std::filesystem::remove(path);
}

TEST_CASE("malformed scheme files")
{
    CHECK_THROWS_AS(scheme_from_text("{"), DataError);
    CHECK_THROWS_AS(scheme_from_text(R"({"label":"x","order":2,"points":[[1,0]],"key":"0,1"})"), DataError);
    CHECK_THROWS_AS(scheme_from_text(R"({"label":"x","order":2,"points":[[1,0],[-1,0]],"key":"0,0"})"), DataError);
    CHECK_THROWS_AS(scheme_from_text(R"({"label":"x","order":2,"points":[[1,0],[-1,0]],"key":"0,1,2"})"), DataError);
    CHECK_THROWS_AS(read_scheme_file("/nonexistent/scheme.json"), DataError);
}
