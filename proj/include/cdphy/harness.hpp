#pragma once

#include "cdphy/channel.hpp"
#include "cdphy/constellation.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cdphy {

/// A standard scheme name or a scheme file, optionally re-keyed. key is
/// "identity", "random:<seed>" or an explicit "i0,i1,..." permutation; empty
/// keeps the scheme's own key.
struct SchemeRef {
    std::string scheme;
    std::string file;
    std::string key;
};

ConstellationScheme resolve_scheme(const SchemeRef& ref);

struct ReceiverSpec {
    std::string label;
    SchemeRef scheme;
    double distance_m = 1.0;
};

enum class SweepMode {
    receive,   // swept values are the SNR at the first receiver's distance
    reference, // swept values are the SNR at the path-loss reference distance
};

struct ExperimentConfig {
    std::string name;
    SchemeRef sender;
    std::vector<ReceiverSpec> receivers;
    double alpha = 2.0;
    double d_ref_m = 1.0;
    SweepMode sweep_mode = SweepMode::receive;
    std::vector<double> snr_sweep_db;
    std::uint64_t symbols_per_point = 1'000'000;
    std::uint64_t seed = 1;
};

inline constexpr std::uint64_t kMinSymbolsPerPoint = 10'000;

/// Structural checks and scheme resolution; throws std::invalid_argument.
void validate(const ExperimentConfig& cfg);

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_text(const ExperimentConfig& cfg);

/// "A:B:STEP", inclusive of B when it falls on the grid.
std::vector<double> parse_range(std::string_view text);

struct BerRecord {
    std::string receiver_label;
    double snr_db = 0.0;
    std::uint64_t tx_bits = 0;
    std::uint64_t compared_bits = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    std::uint64_t symbol_errors = 0;
    double ser = 0.0;

    friend bool operator==(const BerRecord&, const BerRecord&) = default;
};

/// Receive-side SNR of each receiver at one sweep value.
std::vector<double> effective_snr_db(const ExperimentConfig& cfg, double swept_db);

/// Records ordered by receiver (roster order), then sweep order.
/// Deterministic in cfg alone: thread count does not change the output.
std::vector<BerRecord> run_experiment(const ExperimentConfig& cfg, int threads = 0);

/// Metadata lines describing a run, written as '#' comments ahead of the CSV header.
std::vector<std::string> run_metadata(const ExperimentConfig& cfg);

inline constexpr std::string_view kResultsHeader =
    "receiver_label,snr_db,tx_bits,compared_bits,bit_errors,ber,symbol_errors,ser";
inline constexpr std::string_view kTimestampPrefix = "# generated_at:";

std::string results_to_csv(const std::vector<BerRecord>& records, const std::vector<std::string>& metadata = {},
                           bool timestamp = true);
/// Throws DataError naming the offending line.
std::vector<BerRecord> results_from_csv(const std::string& text);

void write_results(const std::vector<BerRecord>& records, const std::filesystem::path& path,
                   const std::vector<std::string>& metadata = {}, bool timestamp = true);
std::vector<BerRecord> read_results(const std::filesystem::path& path);

enum class FigureId { fig5, fig7, fig8, fig9, fig10, fig11, fig12, fig13 };

FigureId parse_figure_id(std::string_view text);
std::string_view figure_name(FigureId id);

/// Receiver labels every BER-vs-SNR figure must contain.
inline constexpr std::string_view kIntendedLabel = "intended";
inline const std::vector<std::string> kFigureRoster = {"intended", "eve_qam16_rect", "eve_qpsk", "eve_bpsk"};

/// Labels with this prefix are pooled as eavesdroppers.
inline constexpr std::string_view kEavesdropperPrefix = "eve_";

struct BerSummary {
    std::size_t count = 0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Linear-interpolation quartiles; empty input throws std::invalid_argument.
BerSummary summarize(std::vector<double> values);

/// CSV for one figure. fig5 is computed from the analytic model over
/// fig5_sweep_db (records ignored); figs 7-12 need the full roster; fig13
/// pools every eavesdropper record. Missing series throw DataError.
std::string emit_figure_data(const std::vector<BerRecord>& records, FigureId id,
                             const std::vector<double>& fig5_sweep_db = {});

} // namespace cdphy
