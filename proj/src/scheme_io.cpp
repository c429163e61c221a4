#include "cdphy/scheme_io.hpp"

#include "cdphy/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cdphy {

using nlohmann::json;

std::string scheme_to_text(const ConstellationScheme& scheme)
{
    json j;
    j["label"] = scheme.label();
    j["order"] = scheme.order();
    json pts = json::array();
    for (auto p : scheme.points())
        pts.push_back({p.re, p.im});
    j["points"] = std::move(pts);
    j["key"] = serialize_key(scheme.key());
    return j.dump(2) + "\n";
}

ConstellationScheme scheme_from_text(const std::string& text)
{
    try {
        const auto j = json::parse(text);
        const auto order = j.at("order").get<std::size_t>();
        std::vector<ComplexPoint> pts;
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw DataError("scheme file: each point must be a [re, im] pair");
            pts.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        if (pts.size() != order)
            throw DataError("scheme file: order " + std::to_string(order) + " but " + std::to_string(pts.size()) +
                            " points");
        auto key = parse_key(j.at("key").get<std::string>(), order);
        return ConstellationScheme(j.value("label", std::string("custom")), std::move(pts), std::move(key));
    } catch (const json::exception& e) {
        throw DataError(std::string("scheme file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("scheme file: ") + e.what());
    }
}

void write_scheme_file(const ConstellationScheme& scheme, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot open " + path.string() + " for writing");
    out << scheme_to_text(scheme);
}

ConstellationScheme read_scheme_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return scheme_from_text(ss.str());
}

} // namespace cdphy
