#include "cdphy/kernels.hpp"

#include "cdphy/channel.hpp"
#include "cdphy/rng.hpp"

#include <omp.h>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cdphy {

void validate(const LinkJob& job)
{
    if (job.tx == nullptr || job.rx == nullptr)
        throw std::invalid_argument("link job: missing scheme");
    if (job.rx->bits_per_symbol() > job.tx->bits_per_symbol())
        throw std::invalid_argument("link job: receiver bits per symbol exceeds transmitter");
    if (!std::isfinite(job.snr_db))
        throw std::invalid_argument("link job: SNR must be finite");
    for (auto v : job.tx_alphabet)
        if (v >= job.tx->order())
            throw std::invalid_argument("link job: alphabet entry out of range");
}

LinkCounts simulate_block(const LinkJob& job, std::uint64_t block)
{
    const std::uint64_t begin = block * kBlockSymbols;
    if (begin >= job.symbols)
        return {};
    const std::uint64_t count = std::min(kBlockSymbols, job.symbols - begin);

    const ConstellationScheme& tx = *job.tx;
    const ConstellationScheme& rx = *job.rx;
    const unsigned m = tx.bits_per_symbol();
    const unsigned mr = rx.bits_per_symbol();
    const unsigned shift = m - mr;
    const auto alphabet = job.tx_alphabet;
    const auto alphabet_size = static_cast<std::uint32_t>(alphabet.empty() ? tx.order() : alphabet.size());
    const double sigma = std::sqrt(noise_density(job.snr_db) / 2.0);

    GaussianSource rng(derive_seed(job.seed, {block}));
    LinkCounts c;
    c.symbols = count;
    c.tx_bits = count * m;
    c.compared_bits = count * mr;
    for (std::uint64_t s = 0; s < count; ++s) {
        const std::uint32_t draw = rng.uniform_below(alphabet_size);
        const std::uint32_t sent = alphabet.empty() ? draw : alphabet[draw];
        const ComplexPoint x = tx.point_for(sent);
        const auto [nr, ni] = rng.normal_pair();
        const std::uint32_t got = rx.nearest({x.re + sigma * nr, x.im + sigma * ni});
        const std::uint32_t diff = got ^ (sent >> shift);
        c.bit_errors += static_cast<std::uint64_t>(std::popcount(diff));
        c.symbol_errors += diff != 0;
    }
    return c;
}

namespace {

std::uint64_t block_count(const LinkJob& job) { return (job.symbols + kBlockSymbols - 1) / kBlockSymbols; }

} // namespace

LinkCounts simulate_link_serial(const LinkJob& job)
{
    validate(job);
    LinkCounts total;
    for (std::uint64_t b = 0; b < block_count(job); ++b)
        total += simulate_block(job, b);
    return total;
}

std::vector<LinkCounts> simulate_links(std::span<const LinkJob> jobs, int threads)
{
    struct Task {
        std::size_t job;
        std::uint64_t block;
    };
    std::vector<Task> tasks;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        validate(jobs[j]);
        for (std::uint64_t b = 0; b < block_count(jobs[j]); ++b)
            tasks.push_back({j, b});
    }

    std::vector<LinkCounts> per_task(tasks.size());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
    const auto ntasks = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::int64_t t = 0; t < ntasks; ++t) {
        const auto& task = tasks[static_cast<std::size_t>(t)];
        per_task[static_cast<std::size_t>(t)] = simulate_block(jobs[task.job], task.block);
    }

    std::vector<LinkCounts> out(jobs.size());
    for (std::size_t t = 0; t < tasks.size(); ++t)
        out[tasks[t].job] += per_task[t];
    return out;
}

LinkCounts simulate_link(const LinkJob& job, int threads)
{
    return simulate_links(std::span<const LinkJob>(&job, 1), threads).front();
}

} // namespace cdphy
