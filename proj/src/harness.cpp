#include "cdphy/harness.hpp"

#include "cdphy/errors.hpp"
#include "cdphy/kernels.hpp"
#include "cdphy/rng.hpp"
#include "cdphy/scheme_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cdphy {

using nlohmann::json;

ConstellationScheme resolve_scheme(const SchemeRef& ref)
{
    if (ref.scheme.empty() == ref.file.empty())
        throw std::invalid_argument("scheme reference needs exactly one of 'scheme' or 'file'");
    ConstellationScheme base = ref.file.empty() ? make_standard_scheme(ref.scheme) : read_scheme_file(ref.file);
    if (ref.key.empty())
        return base;
    if (ref.key == "identity")
        return make_keyed_scheme(base, MappingKey::identity(base.order()));
    if (ref.key.starts_with("random:")) {
        const auto digits = std::string_view(ref.key).substr(7);
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
            throw std::invalid_argument("bad key seed in '" + ref.key + "'");
        return make_keyed_scheme(base, random_key(base.order(), seed));
    }
    return make_keyed_scheme(base, parse_key(ref.key, base.order()));
}

std::vector<double> parse_range(std::string_view text)
{
    std::vector<double> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto colon = std::min(text.find(':', pos), text.size());
        const auto field = text.substr(pos, colon - pos);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
            throw std::invalid_argument("range '" + std::string(text) + "': expected A:B:STEP");
        parts.push_back(v);
        pos = colon + 1;
    }
    if (parts.size() != 3)
        throw std::invalid_argument("range '" + std::string(text) + "': expected A:B:STEP");
    const double a = parts[0], b = parts[1], step = parts[2];
    if (!(step > 0.0) || !(b >= a))
        throw std::invalid_argument("range '" + std::string(text) + "': need B >= A and STEP > 0");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::round((a + static_cast<double>(i) * step) * 1e9) / 1e9);
    return out;
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.receivers.empty())
        throw std::invalid_argument("config: at least one receiver is required");
    if (cfg.snr_sweep_db.empty())
        throw std::invalid_argument("config: SNR sweep is empty");
    for (std::size_t i = 0; i < cfg.snr_sweep_db.size(); ++i) {
        if (!std::isfinite(cfg.snr_sweep_db[i]))
            throw std::invalid_argument("config: non-finite SNR in sweep");
        if (i > 0 && !(cfg.snr_sweep_db[i] > cfg.snr_sweep_db[i - 1]))
            throw std::invalid_argument("config: SNR sweep must be strictly increasing");
    }
    if (cfg.symbols_per_point < kMinSymbolsPerPoint)
        throw std::invalid_argument("config: symbols_per_point must be at least " +
                                    std::to_string(kMinSymbolsPerPoint));
    cdphy::validate(PathLossModel{cfg.alpha, cfg.d_ref_m, 0.0});

    const auto sender = resolve_scheme(cfg.sender);
    std::set<std::string> labels;
    for (const auto& r : cfg.receivers) {
        if (r.label.empty() || r.label.find_first_of(",\"\n\r") != std::string::npos)
            throw std::invalid_argument("config: receiver label '" + r.label +
                                        "' must be non-empty without commas, quotes or newlines");
        if (!labels.insert(r.label).second)
            throw std::invalid_argument("config: duplicate receiver label '" + r.label + "'");
        if (!(r.distance_m >= cfg.d_ref_m))
            throw std::invalid_argument("config: receiver '" + r.label + "' is closer than the reference distance");
        const auto rx = resolve_scheme(r.scheme);
        if (rx.bits_per_symbol() > sender.bits_per_symbol())
            throw std::invalid_argument("config: receiver '" + r.label +
                                        "' decodes more bits per symbol than the sender sends");
    }
}

namespace {

SchemeRef scheme_ref_from_json(const json& j)
{
    SchemeRef r;
    r.scheme = j.value("scheme", std::string());
    r.file = j.value("file", std::string());
    r.key = j.value("key", std::string());
    return r;
}

json scheme_ref_to_json(const SchemeRef& r)
{
    json j = json::object();
    if (!r.scheme.empty())
        j["scheme"] = r.scheme;
    if (!r.file.empty())
        j["file"] = r.file;
    if (!r.key.empty())
        j["key"] = r.key;
    return j;
}

std::string describe(const SchemeRef& r)
{
    std::string s = r.file.empty() ? r.scheme : "file:" + r.file;
    if (!r.key.empty())
        s += " key=" + r.key;
    return s;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text)
{
    ExperimentConfig cfg;
    try {
        const auto j = json::parse(json_text, nullptr, true, true);
        cfg.name = j.value("name", std::string());
        cfg.sender = scheme_ref_from_json(j.at("sender"));
        for (const auto& r : j.at("receivers")) {
            ReceiverSpec spec;
            spec.label = r.at("label").get<std::string>();
            spec.scheme = scheme_ref_from_json(r);
            spec.distance_m = r.at("distance_m").get<double>();
            cfg.receivers.push_back(std::move(spec));
        }
        const auto& pl = j.at("path_loss");
        cfg.alpha = pl.at("alpha").get<double>();
        cfg.d_ref_m = pl.value("d_ref_m", 1.0);
        const auto& sweep = j.at("snr_sweep");
        const auto mode = sweep.value("mode", std::string("receive"));
        if (mode == "receive")
            cfg.sweep_mode = SweepMode::receive;
        else if (mode == "reference")
            cfg.sweep_mode = SweepMode::reference;
        else
            throw std::invalid_argument("config: snr_sweep.mode must be 'receive' or 'reference'");
        if (sweep.contains("range"))
            cfg.snr_sweep_db = parse_range(sweep.at("range").get<std::string>());
        else
            cfg.snr_sweep_db = sweep.at("db").get<std::vector<double>>();
        cfg.symbols_per_point = j.value("symbols_per_point", cfg.symbols_per_point);
        cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    auto cfg = parse_config(ss.str());
    // Scheme files are resolved relative to the config's directory.
    const auto base = path.parent_path();
    auto fix = [&](SchemeRef& r) {
        if (!r.file.empty() && std::filesystem::path(r.file).is_relative())
            r.file = (base / r.file).string();
    };
    fix(cfg.sender);
    for (auto& r : cfg.receivers)
        fix(r.scheme);
    return cfg;
}

std::string config_to_text(const ExperimentConfig& cfg)
{
    json j;
    j["name"] = cfg.name;
    j["sender"] = scheme_ref_to_json(cfg.sender);
    json rs = json::array();
    for (const auto& r : cfg.receivers) {
        json rj = scheme_ref_to_json(r.scheme);
        rj["label"] = r.label;
        rj["distance_m"] = r.distance_m;
        rs.push_back(std::move(rj));
    }
    j["receivers"] = std::move(rs);
    j["path_loss"] = {{"alpha", cfg.alpha}, {"d_ref_m", cfg.d_ref_m}};
    j["snr_sweep"] = {{"mode", cfg.sweep_mode == SweepMode::receive ? "receive" : "reference"},
                      {"db", cfg.snr_sweep_db}};
    j["symbols_per_point"] = cfg.symbols_per_point;
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

std::vector<double> effective_snr_db(const ExperimentConfig& cfg, double swept_db)
{
    std::vector<double> out;
    out.reserve(cfg.receivers.size());
    if (cfg.sweep_mode == SweepMode::reference) {
        const PathLossModel model{cfg.alpha, cfg.d_ref_m, swept_db};
        for (const auto& r : cfg.receivers)
            out.push_back(snr_at_distance(model, r.distance_m));
        return out;
    }
    const double anchor = cfg.receivers.front().distance_m;
    for (const auto& r : cfg.receivers) {
        if (!(r.distance_m >= cfg.d_ref_m))
            throw std::invalid_argument("receiver '" + r.label + "' is closer than the reference distance");
        out.push_back(swept_db - 10.0 * cfg.alpha * std::log10(r.distance_m / anchor));
    }
    return out;
}

std::vector<BerRecord> run_experiment(const ExperimentConfig& cfg, int threads)
{
    validate(cfg);
    const auto sender = resolve_scheme(cfg.sender);
    std::vector<ConstellationScheme> rx;
    rx.reserve(cfg.receivers.size());
    for (const auto& r : cfg.receivers)
        rx.push_back(resolve_scheme(r.scheme));

    const std::size_t nr = cfg.receivers.size();
    const std::size_t np = cfg.snr_sweep_db.size();
    // Job index: receiver-major, then sweep point.
    std::vector<LinkJob> jobs(nr * np);
    std::vector<double> snr(nr * np);
    for (std::size_t p = 0; p < np; ++p) {
        const auto eff = effective_snr_db(cfg, cfg.snr_sweep_db[p]);
        for (std::size_t r = 0; r < nr; ++r) {
            auto& job = jobs[r * np + p];
            job.tx = &sender;
            job.rx = &rx[r];
            job.snr_db = eff[r];
            job.symbols = cfg.symbols_per_point;
            job.seed = derive_seed(cfg.seed, {p, r});
            snr[r * np + p] = eff[r];
        }
    }

    const auto counts = simulate_links(jobs, threads);
    std::vector<BerRecord> out;
    out.reserve(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& c = counts[i];
        BerRecord rec;
        rec.receiver_label = cfg.receivers[i / np].label;
        rec.snr_db = snr[i];
        rec.tx_bits = c.tx_bits;
        rec.compared_bits = c.compared_bits;
        rec.bit_errors = c.bit_errors;
        rec.ber = c.compared_bits ? static_cast<double>(c.bit_errors) / static_cast<double>(c.compared_bits) : 0.0;
        rec.symbol_errors = c.symbol_errors;
        rec.ser = c.symbols ? static_cast<double>(c.symbol_errors) / static_cast<double>(c.symbols) : 0.0;
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<std::string> run_metadata(const ExperimentConfig& cfg)
{
    std::vector<std::string> md;
    md.push_back("config: " + (cfg.name.empty() ? std::string("(unnamed)") : cfg.name));
    md.push_back("seed: " + std::to_string(cfg.seed));
    md.push_back("symbols_per_point: " + std::to_string(cfg.symbols_per_point));
    md.push_back("block_symbols: " + std::to_string(kBlockSymbols));
    md.push_back(std::string("sweep_mode: ") + (cfg.sweep_mode == SweepMode::receive ? "receive" : "reference"));
    std::ostringstream pl;
    pl << "path_loss: alpha=" << cfg.alpha << " d_ref_m=" << cfg.d_ref_m;
    md.push_back(pl.str());
    md.push_back("sender: " + describe(cfg.sender));
    // snr_ref_db = snr_db + path_loss_db for every record of that receiver.
    for (const auto& r : cfg.receivers) {
        std::ostringstream line;
        line.precision(12);
        line << "receiver: label=" << r.label << " scheme=" << describe(r.scheme) << " distance_m=" << r.distance_m
             << " path_loss_db=" << 10.0 * cfg.alpha * std::log10(r.distance_m / cfg.d_ref_m);
        md.push_back(line.str());
    }
    return md;
}

} // namespace cdphy
