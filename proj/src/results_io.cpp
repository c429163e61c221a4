#include "cdphy/harness.hpp"

#include "cdphy/errors.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cdphy {

namespace {

std::string fmt_double(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string utc_timestamp()
{
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    const auto days = std::chrono::floor<std::chrono::days>(now);
    const std::chrono::year_month_day ymd(days);
    const std::chrono::hh_mm_ss hms(now - days);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long>(hms.seconds().count()));
    return buf;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

template <typename T>
T parse_field(std::string_view field, std::size_t lineno, const char* name)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw DataError("line " + std::to_string(lineno) + ": bad " + name + " '" + std::string(field) + "'");
    return v;
}

bool rate_matches(double stored, std::uint64_t num, std::uint64_t den)
{
    const double expect = den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    return std::abs(stored - expect) <= 1e-12 * std::max(1.0, std::abs(expect));
}

} // namespace

std::string results_to_csv(const std::vector<BerRecord>& records, const std::vector<std::string>& metadata,
                           bool timestamp)
{
    std::string out;
    if (timestamp)
        out += std::string(kTimestampPrefix) + " " + utc_timestamp() + "\n";
    for (const auto& m : metadata)
        out += "# " + m + "\n";
    out += kResultsHeader;
    out += '\n';
    for (const auto& r : records) {
        out += r.receiver_label + ',' + fmt_double(r.snr_db) + ',' + std::to_string(r.tx_bits) + ',' +
               std::to_string(r.compared_bits) + ',' + std::to_string(r.bit_errors) + ',' + fmt_double(r.ber) + ',' +
               std::to_string(r.symbol_errors) + ',' + fmt_double(r.ser) + '\n';
    }
    return out;
}

std::vector<BerRecord> results_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::vector<BerRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen) {
            if (line != kResultsHeader)
                throw DataError("line " + std::to_string(lineno) + ": expected header '" +
                                std::string(kResultsHeader) + "'");
            header_seen = true;
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 8)
            throw DataError("line " + std::to_string(lineno) + ": expected 8 fields, got " +
                            std::to_string(f.size()));
        BerRecord r;
        r.receiver_label = std::string(f[0]);
        if (r.receiver_label.empty())
            throw DataError("line " + std::to_string(lineno) + ": empty receiver label");
        r.snr_db = parse_field<double>(f[1], lineno, "snr_db");
        r.tx_bits = parse_field<std::uint64_t>(f[2], lineno, "tx_bits");
        r.compared_bits = parse_field<std::uint64_t>(f[3], lineno, "compared_bits");
        r.bit_errors = parse_field<std::uint64_t>(f[4], lineno, "bit_errors");
        r.ber = parse_field<double>(f[5], lineno, "ber");
        r.symbol_errors = parse_field<std::uint64_t>(f[6], lineno, "symbol_errors");
        r.ser = parse_field<double>(f[7], lineno, "ser");

        const auto bad = [&](const std::string& why) {
            return DataError("line " + std::to_string(lineno) + ": integrity error: " + why);
        };
        if (r.compared_bits > r.tx_bits)
            throw bad("compared_bits exceeds tx_bits");
        if (r.bit_errors > r.compared_bits)
            throw bad("bit_errors exceeds compared_bits");
        if (!rate_matches(r.ber, r.bit_errors, r.compared_bits))
            throw bad("ber " + std::string(f[5]) + " != bit_errors/compared_bits");
        if (!(r.ser >= 0.0 && r.ser <= 1.0))
            throw bad("ser outside [0, 1]");
        if (r.symbol_errors > r.bit_errors)
            throw bad("symbol_errors exceeds bit_errors");
        if ((r.symbol_errors == 0) != (r.ser == 0.0))
            throw bad("ser inconsistent with symbol_errors");
        out.push_back(std::move(r));
    }
    if (!header_seen)
        throw DataError("results file has no header");
    return out;
}

void write_results(const std::vector<BerRecord>& records, const std::filesystem::path& path,
                   const std::vector<std::string>& metadata, bool timestamp)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open " + path.string() + " for writing");
    out << results_to_csv(records, metadata, timestamp);
    if (!out)
        throw DataError("write to " + path.string() + " failed");
}

std::vector<BerRecord> read_results(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return results_from_csv(ss.str());
}

} // namespace cdphy
