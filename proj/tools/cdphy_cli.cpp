// cdphy: command-line front end for constellation-diversity experiments.
//
// Exit codes: 0 success, 1 usage error, 2 data/integrity error.

#include "cdphy/analytic.hpp"
#include "cdphy/errors.hpp"
#include "cdphy/harness.hpp"
#include "cdphy/scheme_io.hpp"
#include "cdphy/secrecy.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw cdphy::DataError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw cdphy::DataError("cannot open " + out_path + " for writing");
    out << text;
}

// Loading errors from user-supplied files are data errors, not usage errors.
template <typename F>
auto loading(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw cdphy::DataError(e.what());
    }
}

json to_json(const cdphy::KeyspaceReport& r, const cdphy::UnicityResult& u)
{
    json j;
    j["order"] = r.order;
    j["keyspace_size"] = r.keyspace_size.str();
    j["key_entropy_bits"] = r.key_entropy_bits;
    j["shannon_bound_max_symbols"] = r.shannon_bound_max_symbols;
    j["unicity"] = {{"entropy_bits", u.entropy_bits},
                    {"redundancy", u.redundancy},
                    {"distance", u.infinite() ? json("INFINITE") : json(*u.distance)}};
    return j;
}

json to_json(const cdphy::SecrecyVerdict& v)
{
    auto strs = [](const std::vector<cdphy::Rational>& xs) {
        json a = json::array();
        for (const auto& x : xs)
            a.push_back(x.str());
        return a;
    };
    json j;
    j["order"] = v.order;
    j["keys_enumerated"] = v.keys_enumerated;
    j["prior"] = strs(v.prior);
    j["ciphertext_marginal"] = strs(v.ciphertext_marginal);
    json post = json::array();
    for (const auto& row : v.posterior)
        post.push_back(strs(row));
    j["posterior_given_ciphertext"] = std::move(post);
    j["perfect_secrecy"] = v.perfect;
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constellation-diversity physical-layer security toolkit"};
    app.require_subcommand(1);

    // scheme
    auto* scheme = app.add_subcommand("scheme", "Constellation schemes and mapping keys");
    scheme->require_subcommand(1);
    auto* show = scheme->add_subcommand("show", "Print a scheme in scheme-file format");
    std::string show_name, show_file, show_key, show_out;
    auto* name_opt = show->add_option("--name", show_name, "bpsk, qpsk, qam16_rect or qam16_circ");
    auto* file_opt = show->add_option("--file", show_file, "Scheme file");
    name_opt->excludes(file_opt);
    show->add_option("--key", show_key, "identity, random:SEED or i0,i1,...");
    show->add_option("--out", show_out, "Output file (default stdout)");

    auto* make_key = scheme->add_subcommand("make-key", "Draw a uniformly random mapping key");
    std::size_t key_order = 16;
    std::uint64_t key_seed = 0;
    make_key->add_option("--order", key_order, "Constellation order M")->required();
    make_key->add_option("--seed", key_seed, "RNG seed")->required();

    // analytic
    auto* analytic = app.add_subcommand("analytic", "Closed-form eavesdropper decoding probability");
    analytic->require_subcommand(1);
    auto* sweep = analytic->add_subcommand("sweep", "P_correct / P_error of 16QAM circular -> rectangular");
    std::string sweep_range = "0:25:0.5", sweep_out;
    sweep->add_option("--snr-db", sweep_range, "A:B:STEP in dB")->capture_default_str();
    sweep->add_option("--out", sweep_out, "Output CSV (default stdout)");

    // secrecy
    auto* secrecy = app.add_subcommand("secrecy", "Keyspace and perfect-secrecy analytics");
    secrecy->require_subcommand(1);
    auto* report = secrecy->add_subcommand("report", "Keyspace size, entropy, Shannon bound, unicity distance");
    std::size_t report_order = 16;
    double redundancy = 0.0;
    report->add_option("--order", report_order, "Constellation order M")->required();
    report->add_option("--redundancy", redundancy, "Message redundancy D (bits/symbol)")->capture_default_str();
    auto* verify = secrecy->add_subcommand("verify", "Exhaustive exact perfect-secrecy check");
    std::size_t verify_order = 4;
    std::string prior_text;
    verify->add_option("--order", verify_order, "Constellation order M (<= 6)")->required();
    verify->add_option("--prior", prior_text, "Plaintext prior, e.g. 1/2,1/4,1/8,1/8 (default uniform)");

    // permanent
    auto* perm = app.add_subcommand("permanent", "Exact permanent of a 0/1 matrix (Ryser)");
    std::string matrix_file;
    perm->add_option("--matrix", matrix_file, "Matrix file: rows of 0/1")->required();

    // sim
    auto* sim = app.add_subcommand("sim", "Monte Carlo BER experiments");
    sim->require_subcommand(1);
    auto* run = sim->add_subcommand("run", "Run an experiment config");
    std::string config_file, results_out;
    int threads = 0;
    run->add_option("--config", config_file, "Experiment config (JSON)")->required();
    run->add_option("--out", results_out, "Results CSV")->required();
    run->add_option("--threads", threads, "Worker threads (0 = OpenMP default)");
    auto* figure = sim->add_subcommand("figure", "Emit plot data for one figure");
    std::string figure_id, figure_out, fig5_range = "0:25:0.5";
    std::vector<std::string> figure_in;
    figure->add_option("--id", figure_id, "fig5, fig7..fig13")->required();
    figure->add_option("--in", figure_in, "Results CSV (repeatable; fig13 pools them)");
    figure->add_option("--out", figure_out, "Output CSV (default stdout)");
    figure->add_option("--snr-db", fig5_range, "fig5 sweep A:B:STEP")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    }

    try {
        if (*show) {
            if (show_name.empty() && show_file.empty())
                throw std::invalid_argument("scheme show: need --name or --file");
            cdphy::SchemeRef ref{show_name, show_file, show_key};
            const auto s = show_file.empty() ? cdphy::resolve_scheme(ref) : loading([&] { return cdphy::resolve_scheme(ref); });
            emit(cdphy::scheme_to_text(s), show_out);
        } else if (*make_key) {
            std::cout << cdphy::serialize_key(cdphy::random_key(key_order, key_seed)) << "\n";
        } else if (*sweep) {
            const auto grid = cdphy::parse_range(sweep_range);
            std::string out = "snr_db,p_correct,p_error\n";
            for (const auto& p : cdphy::analytic_sweep(grid)) {
                std::ostringstream line;
                line.precision(17);
                line << p.snr_db << ',' << p.p_correct << ',' << p.p_error << '\n';
                out += line.str();
            }
            emit(out, sweep_out);
        } else if (*report) {
            const auto r = cdphy::keyspace_report(report_order);
            const auto u = cdphy::unicity(r.key_entropy_bits, redundancy);
            std::cout << to_json(r, u).dump(2) << "\n";
        } else if (*verify) {
            const auto v = prior_text.empty() ? cdphy::verify_perfect_secrecy(verify_order)
                                              : cdphy::verify_perfect_secrecy(verify_order, cdphy::parse_prior(prior_text));
            std::cout << to_json(v).dump(2) << "\n";
            if (!v.perfect)
                return kDataError;
        } else if (*perm) {
            const auto m = loading([&] { return cdphy::parse_binary_matrix(slurp(matrix_file)); });
            std::cout << cdphy::permanent(m) << "\n";
        } else if (*run) {
            const auto cfg = loading([&] {
                auto c = cdphy::load_config(config_file);
                cdphy::validate(c);
                return c;
            });
            const auto records = cdphy::run_experiment(cfg, threads);
            cdphy::write_results(records, results_out, cdphy::run_metadata(cfg));
        } else if (*figure) {
            const auto id = cdphy::parse_figure_id(figure_id);
            std::vector<cdphy::BerRecord> records;
            if (id != cdphy::FigureId::fig5) {
                if (figure_in.empty())
                    throw std::invalid_argument("sim figure: --in is required for " + figure_id);
                for (const auto& path : figure_in) {
                    auto more = cdphy::read_results(path);
                    records.insert(records.end(), more.begin(), more.end());
                }
            }
            emit(cdphy::emit_figure_data(records, id, cdphy::parse_range(fig5_range)), figure_out);
        }
    } catch (const cdphy::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const cdphy::ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    return 0;
}
