#include "cdphy/analytic.hpp"
#include "cdphy/errors.hpp"
#include "cdphy/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <stdexcept>

namespace cdphy {

namespace {

struct FigureInfo {
    FigureId id;
    std::string_view name;
    double alpha;
    double distance_m;
};

constexpr std::array<FigureInfo, 8> kFigures = {{
    {FigureId::fig5, "fig5", 0.0, 0.0},
    {FigureId::fig7, "fig7", 2.0, 10.0},
    {FigureId::fig8, "fig8", 2.0, 50.0},
    {FigureId::fig9, "fig9", 2.0, 100.0},
    {FigureId::fig10, "fig10", 1.4, 10.0},
    {FigureId::fig11, "fig11", 1.4, 50.0},
    {FigureId::fig12, "fig12", 1.4, 100.0},
    {FigureId::fig13, "fig13", 0.0, 0.0},
}};

const FigureInfo& info(FigureId id)
{
    for (const auto& f : kFigures)
        if (f.id == id)
            return f;
    throw std::invalid_argument("unknown figure");
}

std::string num(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

double quantile(const std::vector<double>& sorted, double q)
{
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::string ber_vs_snr(const std::vector<BerRecord>& records, const FigureInfo& fig)
{
    std::map<std::string, std::vector<const BerRecord*>> series;
    for (const auto& r : records)
        series[r.receiver_label].push_back(&r);

    std::string missing;
    for (const auto& label : kFigureRoster)
        if (!series.contains(label))
            missing += (missing.empty() ? "" : ", ") + label;
    if (!missing.empty())
        throw DataError(std::string(fig.name) + ": missing receiver series: " + missing);

    const auto& x = series.at(std::string(kIntendedLabel));
    for (const auto& label : kFigureRoster)
        if (series.at(label).size() != x.size())
            throw DataError(std::string(fig.name) + ": series '" + label + "' has " +
                            std::to_string(series.at(label).size()) + " points, intended receiver has " +
                            std::to_string(x.size()));

    std::string out = "# " + std::string(fig.name) + ": BER vs SNR, alpha=" + num(fig.alpha) +
                      ", d=" + num(fig.distance_m) + " m\nsnr_db";
    for (const auto& label : kFigureRoster)
        out += "," + label;
    out += '\n';
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += num(x[i]->snr_db);
        for (const auto& label : kFigureRoster)
            out += "," + num(series.at(label)[i]->ber);
        out += '\n';
    }
    return out;
}

std::string eavesdropper_summary(const std::vector<BerRecord>& records)
{
    std::map<std::string, std::vector<double>> groups;
    std::vector<double> pooled;
    for (const auto& r : records) {
        if (!r.receiver_label.starts_with(kEavesdropperPrefix))
            continue;
        groups[r.receiver_label].push_back(r.ber);
        pooled.push_back(r.ber);
    }
    if (pooled.empty())
        throw DataError("fig13: no eavesdropper series (labels starting with '" + std::string(kEavesdropperPrefix) +
                        "')");
    std::string out = "# fig13: eavesdropper BER pooled across scenarios\ngroup,count,min,q1,median,q3,max\n";
    auto row = [&](const std::string& name, std::vector<double> values) {
        const auto s = summarize(std::move(values));
        out += name + ',' + std::to_string(s.count) + ',' + num(s.min) + ',' + num(s.q1) + ',' + num(s.median) + ',' +
               num(s.q3) + ',' + num(s.max) + '\n';
    };
    row("all", pooled);
    for (auto& [label, values] : groups)
        row(label, values);
    return out;
}

} // namespace

FigureId parse_figure_id(std::string_view text)
{
    for (const auto& f : kFigures)
        if (f.name == text)
            return f.id;
    throw std::invalid_argument("unknown figure id '" + std::string(text) + "' (expected fig5, fig7..fig13)");
}

std::string_view figure_name(FigureId id) { return info(id).name; }

BerSummary summarize(std::vector<double> values)
{
    if (values.empty())
        throw std::invalid_argument("summarize: no values");
    std::sort(values.begin(), values.end());
    BerSummary s;
    s.count = values.size();
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.q3 = quantile(values, 0.75);
    return s;
}

std::string emit_figure_data(const std::vector<BerRecord>& records, FigureId id,
                             const std::vector<double>& fig5_sweep_db)
{
    const auto& fig = info(id);
    switch (id) {
    case FigureId::fig5: {
        if (fig5_sweep_db.empty())
            throw std::invalid_argument("fig5: empty SNR sweep");
        std::string out = "# fig5: eavesdropper (16QAM rectangular) decoding 16QAM circular\nsnr_db,p_correct,p_error\n";
        for (const auto& p : analytic_sweep(fig5_sweep_db))
            out += num(p.snr_db) + ',' + num(p.p_correct) + ',' + num(p.p_error) + '\n';
        return out;
    }
    case FigureId::fig13:
        return eavesdropper_summary(records);
    default:
        return ber_vs_snr(records, fig);
    }
}

} // namespace cdphy
