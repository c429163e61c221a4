#include "cdphy/secrecy.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cdphy {

KeyspaceReport keyspace_report(std::size_t order)
{
    if (order < 2 || order > 64)
        throw std::invalid_argument("keyspace_report: order must be in [2, 64], got " + std::to_string(order));
    KeyspaceReport r;
    r.order = order;
    r.keyspace_size = 1;
    for (std::size_t k = 2; k <= order; ++k) {
        r.keyspace_size *= k;
        r.key_entropy_bits += std::log2(static_cast<double>(k));
    }
    BigInt power = 1;
    unsigned n = 0;
    while (power * order <= r.keyspace_size) {
        power *= order;
        ++n;
    }
    r.shannon_bound_max_symbols = n;
    return r;
}

UnicityResult unicity(double entropy_bits, double redundancy)
{
    if (!(entropy_bits >= 0.0) || !(redundancy >= 0.0))
        throw std::invalid_argument("unicity: entropy and redundancy must be non-negative");
    UnicityResult r{entropy_bits, redundancy, std::nullopt};
    if (entropy_bits == 0.0)
        r.distance = 0.0;
    else if (redundancy > 0.0)
        r.distance = entropy_bits / redundancy;
    return r;
}

BinaryMatrix::BinaryMatrix(std::size_t n, std::vector<std::uint8_t> entries) : n_(n), entries_(std::move(entries))
{
    if (entries_.size() != n * n)
        throw std::invalid_argument("binary matrix: expected " + std::to_string(n * n) + " entries");
    for (auto v : entries_)
        if (v > 1)
            throw std::invalid_argument("binary matrix: entries must be 0 or 1");
}

BinaryMatrix BinaryMatrix::identity(std::size_t n)
{
    std::vector<std::uint8_t> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        e[i * n + i] = 1;
    return BinaryMatrix(n, std::move(e));
}

BinaryMatrix BinaryMatrix::all_ones(std::size_t n) { return BinaryMatrix(n, std::vector<std::uint8_t>(n * n, 1)); }

BinaryMatrix parse_binary_matrix(const std::string& text)
{
    std::vector<std::vector<std::uint8_t>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::vector<std::uint8_t> row;
        std::string tok;
        while (ls >> tok) {
            if (tok != "0" && tok != "1")
                throw std::invalid_argument("matrix line " + std::to_string(lineno) + ": entry '" + tok +
                                            "' is not 0 or 1");
            row.push_back(tok == "1");
        }
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    const auto n = rows.size();
    std::vector<std::uint8_t> entries;
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n)
            throw std::invalid_argument("matrix is not square: row " + std::to_string(r + 1) + " has " +
                                        std::to_string(rows[r].size()) + " entries, expected " + std::to_string(n));
        entries.insert(entries.end(), rows[r].begin(), rows[r].end());
    }
    return BinaryMatrix(n, std::move(entries));
}

namespace {

using Wide = __int128;

void check_permanent_order(const BinaryMatrix& m)
{
    if (m.size() > kMaxPermanentOrder)
        throw std::invalid_argument("permanent: order " + std::to_string(m.size()) + " exceeds limit " +
                                    std::to_string(kMaxPermanentOrder));
}

// Ryser over Gray-code steps [first, last). Step k visits subset gray(k);
// row sums are rebuilt from scratch at the chunk start so chunks are
// independent. Returns the signed partial sum of (-1)^|S| prod_i rowsum_i(S).
Wide ryser_chunk(const BinaryMatrix& m, std::uint64_t first, std::uint64_t last)
{
    const std::size_t n = m.size();
    std::vector<std::int64_t> rowsum(n, 0);
    const std::uint64_t start_subset = first ^ (first >> 1);
    for (std::size_t c = 0; c < n; ++c)
        if (start_subset >> c & 1u)
            for (std::size_t r = 0; r < n; ++r)
                rowsum[r] += m.at(r, c);

    auto term = [&](std::uint64_t subset) -> Wide {
        Wide prod = 1;
        for (std::size_t r = 0; r < n && prod != 0; ++r)
            prod *= rowsum[r];
        return (std::popcount(subset) & 1) ? -prod : prod;
    };

    Wide acc = 0;
    std::uint64_t subset = start_subset;
    for (std::uint64_t k = first; k < last; ++k) {
        if (k != first) {
            const auto c = static_cast<std::size_t>(std::countr_zero(k));
            subset ^= std::uint64_t{1} << c;
            const std::int64_t sign = (subset >> c & 1u) ? 1 : -1;
            for (std::size_t r = 0; r < n; ++r)
                rowsum[r] += sign * m.at(r, c);
        }
        if (subset != 0)
            acc += term(subset);
    }
    return acc;
}

std::uint64_t finish(const BinaryMatrix& m, Wide acc)
{
    // perm = (-1)^n * sum_{S != {}} (-1)^|S| prod rowsum
    if (m.size() & 1)
        acc = -acc;
    if (acc < 0)
        throw std::logic_error("permanent: negative result");
    return static_cast<std::uint64_t>(acc);
}

} // namespace

std::uint64_t permanent_serial(const BinaryMatrix& m)
{
    check_permanent_order(m);
    if (m.size() == 0)
        return 1;
    return finish(m, ryser_chunk(m, 0, std::uint64_t{1} << m.size()));
}

std::uint64_t permanent(const BinaryMatrix& m)
{
    check_permanent_order(m);
    const std::size_t n = m.size();
    if (n < 12)
        return permanent_serial(m);
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::int64_t chunks = 64;
    const std::uint64_t step = total / chunks;
    std::vector<Wide> partial(chunks, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c)
        partial[static_cast<std::size_t>(c)] =
            ryser_chunk(m, static_cast<std::uint64_t>(c) * step, static_cast<std::uint64_t>(c + 1) * step);
    Wide acc = 0;
    for (auto p : partial)
        acc += p;
    return finish(m, acc);
}

SecrecyVerdict verify_perfect_secrecy(std::size_t order, const std::vector<Rational>& prior)
{
    if (order < 2 || order > kMaxSecrecyOrder)
        throw std::invalid_argument("verify_perfect_secrecy: order must be in [2, " +
                                    std::to_string(kMaxSecrecyOrder) + "] for exhaustive enumeration");
    if (prior.size() != order)
        throw std::invalid_argument("verify_perfect_secrecy: prior has " + std::to_string(prior.size()) +
                                    " entries, expected " + std::to_string(order));
    Rational sum = 0;
    for (const auto& p : prior) {
        if (p < 0)
            throw std::invalid_argument("verify_perfect_secrecy: negative prior entry");
        sum += p;
    }
    if (sum != 1)
        throw std::invalid_argument("verify_perfect_secrecy: prior sums to " + sum.str() + ", not 1");

    SecrecyVerdict v;
    v.order = order;
    v.prior = prior;

    std::vector<std::uint32_t> perm(order);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<std::vector<std::uint64_t>> count(order, std::vector<std::uint64_t>(order, 0));
    do {
        ++v.keys_enumerated;
        for (std::size_t p = 0; p < order; ++p)
            ++count[p][perm[p]];
    } while (std::next_permutation(perm.begin(), perm.end()));

    const Rational key_prob(1, static_cast<long long>(v.keys_enumerated));
    // joint[p][c] = prob(P = p) * prob(K maps p to c)
    std::vector<std::vector<Rational>> joint(order, std::vector<Rational>(order));
    v.ciphertext_marginal.assign(order, Rational(0));
    for (std::size_t p = 0; p < order; ++p)
        for (std::size_t c = 0; c < order; ++c) {
            joint[p][c] = prior[p] * key_prob * count[p][c];
            v.ciphertext_marginal[c] += joint[p][c];
        }

    v.perfect = true;
    v.posterior.assign(order, std::vector<Rational>(order));
    for (std::size_t p = 0; p < order; ++p)
        for (std::size_t c = 0; c < order; ++c) {
            v.posterior[p][c] = joint[p][c] / v.ciphertext_marginal[c];
            if (v.posterior[p][c] != prior[p])
                v.perfect = false;
        }
    return v;
}

SecrecyVerdict verify_perfect_secrecy(std::size_t order)
{
    if (order < 2 || order > kMaxSecrecyOrder)
        throw std::invalid_argument("verify_perfect_secrecy: order must be in [2, " +
                                    std::to_string(kMaxSecrecyOrder) + "]");
    return verify_perfect_secrecy(order, std::vector<Rational>(order, Rational(1, static_cast<long long>(order))));
}

std::vector<Rational> parse_prior(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(' '));
        tok.erase(tok.find_last_not_of(' ') + 1);
        try {
            const auto slash = tok.find('/');
            if (slash == std::string::npos)
                out.emplace_back(BigInt(tok));
            else
                out.emplace_back(BigInt(tok.substr(0, slash)), BigInt(tok.substr(slash + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("prior: bad rational '" + tok + "'");
        }
    }
    if (out.empty())
        throw std::invalid_argument("prior: empty");
    return out;
}

} // namespace cdphy
