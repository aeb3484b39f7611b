#include "leadership/infodyn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "leadership/errors.hpp"

namespace leadership {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;

double wrap_two_pi(double a)
{
    double w = std::fmod(a, 2.0 * std::numbers::pi);
    if (w < 0.0) {
        w += 2.0 * std::numbers::pi;
    }
    return w >= 2.0 * std::numbers::pi ? 0.0 : w;
}

// Sum of c log2 c over the counts of a symbol sequence.
double count_term(std::span<const std::uint32_t> symbols, std::size_t alphabet)
{
    double acc = 0.0;
    if (alphabet <= kDenseLimit && alphabet <= 8 * symbols.size() + 4096) {
        std::vector<std::uint32_t> counts(alphabet, 0);
        for (const auto s : symbols) {
            ++counts[s];
        }
        for (const auto c : counts) {
            if (c > 1) {
                acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
            }
        }
        return acc;
    }
    std::vector<std::uint32_t> sorted(symbols.begin(), symbols.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size();) {
        std::size_t e = k;
        while (e < sorted.size() && sorted[e] == sorted[k]) {
            ++e;
        }
        const auto c = static_cast<double>(e - k);
        acc += c * std::log2(c);
        k = e;
    }
    return acc;
}

double series_entropy(std::span<const std::uint32_t> symbols, std::size_t alphabet)
{
    if (symbols.empty()) {
        return 0.0;
    }
    const auto n = static_cast<double>(symbols.size());
    return std::max(0.0, std::log2(n) - count_term(symbols, alphabet) / n);
}

SymbolSeries compact(std::vector<std::uint64_t> keys)
{
    std::vector<std::uint64_t> distinct = keys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    SymbolSeries out;
    out.alphabet = distinct.size();
    out.symbols.reserve(keys.size());
    for (const auto k : keys) {
        out.symbols.push_back(
            static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), k) - distinct.begin()));
    }
    return out;
}

SymbolSeries combine_two(const SymbolSeries& a, const SymbolSeries& b)
{
    const std::uint64_t product = static_cast<std::uint64_t>(a.alphabet) * b.alphabet;
    std::vector<std::uint64_t> keys(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
        keys[t] = static_cast<std::uint64_t>(a.symbols[t]) * b.alphabet + b.symbols[t];
    }
    if (product <= kDenseLimit) {
        SymbolSeries out;
        out.alphabet = static_cast<std::size_t>(product);
        out.symbols.assign(keys.begin(), keys.end());
        return out;
    }
    return compact(std::move(keys));
}

void require_same_length(std::span<const SymbolSeries> s)
{
    for (const auto& x : s) {
        if (x.size() != s.front().size()) {
            throw InputMismatch("series lengths differ");
        }
    }
}

}  // namespace

void SymbolSeries::validate() const
{
    for (const auto s : symbols) {
        if (s >= alphabet) {
            throw std::invalid_argument("symbol outside alphabet");
        }
    }
}

void EmbeddingSpec::validate(std::size_t series_length) const
{
    if (lag < 1 || history < 1) {
        throw std::invalid_argument("embedding lag and history must be >= 1");
    }
    if (span() >= series_length) {
        throw InsufficientData("series of length " + std::to_string(series_length) +
                               " too short for lag " + std::to_string(lag) + " x history " +
                               std::to_string(history));
    }
}

SymbolSeries discretize(std::span<const double> series, std::size_t bins, Binning method)
{
    if (bins < 2) {
        throw std::invalid_argument("discretize needs at least two bins");
    }
    for (const double v : series) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("discretize needs a finite series");
        }
    }
    SymbolSeries out;
    out.alphabet = bins;
    out.symbols.assign(series.size(), 0);
    if (series.empty()) {
        return out;
    }
    const auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
        return out;
    }
    if (method == Binning::equal_width) {
        const double width = (hi - lo) / static_cast<double>(bins);
        for (std::size_t t = 0; t < series.size(); ++t) {
            const auto b = static_cast<std::size_t>(std::floor((series[t] - lo) / width));
            out.symbols[t] = static_cast<std::uint32_t>(std::min(b, bins - 1));
        }
        return out;
    }
    std::vector<std::size_t> order(series.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return series[a] < series[b]; });
    const std::size_t n = series.size();
    for (std::size_t rank = 0; rank < n; ++rank) {
        out.symbols[order[rank]] = static_cast<std::uint32_t>(rank * bins / n);
    }
    return out;
}

SymbolSeries discretize_angles(std::span<const double> angles, std::size_t bins)
{
    if (bins < 2) {
        throw std::invalid_argument("discretize needs at least two bins");
    }
    SymbolSeries out;
    out.alphabet = bins;
    out.symbols.reserve(angles.size());
    const double width = 2.0 * std::numbers::pi / static_cast<double>(bins);
    for (const double a : angles) {
        if (!std::isfinite(a)) {
            throw std::invalid_argument("discretize needs a finite series");
        }
        const auto b = static_cast<std::size_t>(std::floor(wrap_two_pi(a) / width));
        out.symbols.push_back(static_cast<std::uint32_t>(std::min(b, bins - 1)));
    }
    return out;
}

JointHistogram::JointHistogram(std::vector<std::size_t> alphabets) : alphabets_(std::move(alphabets))
{
    if (alphabets_.empty()) {
        throw std::invalid_argument("histogram needs at least one dimension");
    }
}

JointHistogram JointHistogram::from_series(std::span<const SymbolSeries> series)
{
    require_same_length(series);
    std::vector<std::size_t> alph;
    for (const auto& s : series) {
        alph.push_back(s.alphabet);
    }
    JointHistogram h(std::move(alph));
    const std::size_t n = series.empty() ? 0 : series.front().size();
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<std::uint32_t> cell;
        cell.reserve(series.size());
        for (const auto& s : series) {
            cell.push_back(s.symbols[t]);
        }
        h.add(std::move(cell));
    }
    return h;
}

void JointHistogram::add(std::vector<std::uint32_t> cell, std::uint64_t count)
{
    if (cell.size() != alphabets_.size()) {
        throw std::invalid_argument("histogram cell has the wrong dimension");
    }
    for (std::size_t k = 0; k < cell.size(); ++k) {
        if (cell[k] >= alphabets_[k]) {
            throw std::invalid_argument("histogram cell outside alphabet");
        }
    }
    if (count == 0) {
        return;
    }
    counts_[std::move(cell)] += count;
    total_ += count;
}

JointHistogram JointHistogram::marginal(std::span<const std::size_t> vars) const
{
    std::vector<std::size_t> alph;
    for (const auto v : vars) {
        if (v >= alphabets_.size()) {
            throw std::out_of_range("marginal variable out of range");
        }
        alph.push_back(alphabets_[v]);
    }
    if (alph.empty()) {
        JointHistogram h({1});
        if (total_ > 0) {
            h.add({0}, total_);
        }
        return h;
    }
    JointHistogram h(std::move(alph));
    for (const auto& [cell, count] : counts_) {
        std::vector<std::uint32_t> sub;
        sub.reserve(vars.size());
        for (const auto v : vars) {
            sub.push_back(cell[v]);
        }
        h.add(std::move(sub), count);
    }
    return h;
}

double entropy(const JointHistogram& h)
{
    if (h.total() == 0) {
        throw std::invalid_argument("entropy of an empty histogram");
    }
    const auto n = static_cast<double>(h.total());
    double acc = 0.0;
    for (const auto& [cell, count] : h.cells()) {
        const double p = static_cast<double>(count) / n;
        acc -= p * std::log2(p);
    }
    return std::max(0.0, acc);
}

double entropy(const SymbolSeries& s)
{
    if (s.size() == 0) {
        throw std::invalid_argument("entropy of an empty series");
    }
    return series_entropy(s.symbols, s.alphabet);
}

namespace {

std::vector<std::size_t> join(std::span<const std::size_t> a, std::span<const std::size_t> b)
{
    std::vector<std::size_t> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

double mutual_information(const JointHistogram& h, std::span<const std::size_t> x, std::span<const std::size_t> y)
{
    const double v = entropy(h.marginal(x)) + entropy(h.marginal(y)) - entropy(h.marginal(join(x, y)));
    return std::max(0.0, v);
}

double conditional_mutual_information(const JointHistogram& h, std::span<const std::size_t> x,
                                      std::span<const std::size_t> y, std::span<const std::size_t> z)
{
    const auto xz = join(x, z);
    const auto yz = join(y, z);
    const auto xyz = join(join(x, y), z);
    const double v = entropy(h.marginal(xz)) + entropy(h.marginal(yz)) - entropy(h.marginal(xyz)) -
                     entropy(h.marginal(z));
    return std::max(0.0, v);
}

SymbolSeries combine(std::span<const SymbolSeries> parts)
{
    if (parts.empty()) {
        throw std::invalid_argument("combine needs at least one series");
    }
    require_same_length(parts);
    SymbolSeries acc = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) {
        acc = combine_two(acc, parts[k]);
    }
    return acc;
}

double mutual_information(const SymbolSeries& xs, const SymbolSeries& ys)
{
    return conditional_mutual_information(xs, ys, {});
}

double conditional_mutual_information(const SymbolSeries& xs, const SymbolSeries& ys,
                                      std::span<const SymbolSeries> zs)
{
    if (xs.size() != ys.size()) {
        throw InputMismatch("series lengths differ");
    }
    if (xs.size() == 0) {
        throw InsufficientData("empty series");
    }
    const auto n = static_cast<double>(xs.size());
    // Each H = log2 N - term / N.
    if (zs.empty()) {
        const auto xy = combine_two(xs, ys);
        const double v = std::log2(n) + (count_term(xy.symbols, xy.alphabet) - count_term(xs.symbols, xs.alphabet) -
                                         count_term(ys.symbols, ys.alphabet)) / n;
        return std::max(0.0, v);
    }
    const SymbolSeries z = combine(zs);
    if (z.size() != xs.size()) {
        throw InputMismatch("conditioning series length differs");
    }
    const auto xz = combine_two(xs, z);
    const auto yz = combine_two(ys, z);
    const auto xyz = combine_two(xz, ys);
    const double v = (count_term(xyz.symbols, xyz.alphabet) + count_term(z.symbols, z.alphabet) -
                      count_term(xz.symbols, xz.alphabet) - count_term(yz.symbols, yz.alphabet)) / n;
    return std::max(0.0, v);
}

bool sparse_joint(std::span<const SymbolSeries> series)
{
    if (series.empty()) {
        return false;
    }
    double log_alphabet = 0.0;
    for (const auto& s : series) {
        log_alphabet += std::log2(static_cast<double>(std::max<std::size_t>(s.alphabet, 1)));
    }
    const auto n = static_cast<double>(series.front().size());
    if (n < 2.0) {
        return true;
    }
    return log_alphabet > std::log2(n * std::log2(n));
}

SymbolSeries history_series(const SymbolSeries& s, const EmbeddingSpec& spec)
{
    spec.validate(s.size());
    const std::size_t n = s.size() - spec.span();
    std::vector<SymbolSeries> parts(spec.history);
    for (std::size_t h = 0; h < spec.history; ++h) {
        parts[h].alphabet = s.alphabet;
        parts[h].symbols.resize(n);
        const std::size_t back = (h + 1) * spec.lag;
        for (std::size_t t = 0; t < n; ++t) {
            parts[h].symbols[t] = s.symbols[t + spec.span() - back];
        }
    }
    return combine(parts);
}

SymbolSeries present_series(const SymbolSeries& s, const EmbeddingSpec& spec)
{
    spec.validate(s.size());
    SymbolSeries out;
    out.alphabet = s.alphabet;
    out.symbols.assign(s.symbols.begin() + static_cast<std::ptrdiff_t>(spec.span()), s.symbols.end());
    return out;
}

double transfer_entropy(const SymbolSeries& source, const SymbolSeries& target, const EmbeddingSpec& spec)
{
    if (source.size() != target.size()) {
        throw InputMismatch("series lengths differ");
    }
    const auto src_hist = history_series(source, spec);
    const auto tgt_hist = history_series(target, spec);
    const auto tgt_now = present_series(target, spec);
    const SymbolSeries cond[] = {tgt_hist};
    return conditional_mutual_information(tgt_now, src_hist, cond);
}

LaggedCorrelation lagged_direction_correlation(std::span<const Vec2> vi, std::span<const Vec2> vj,
                                               std::size_t tau_max)
{
    if (vi.size() != vj.size()) {
        throw InputMismatch("heading series lengths differ");
    }
    if (vi.size() <= tau_max) {
        throw InsufficientData("heading series shorter than tau_max + 1");
    }
    const auto n = static_cast<std::ptrdiff_t>(vi.size());
    const auto m = static_cast<std::ptrdiff_t>(tau_max);
    LaggedCorrelation out;
    out.profile.reserve(static_cast<std::size_t>(2 * m + 1));
    for (std::ptrdiff_t tau = -m; tau <= m; ++tau) {
        double acc = 0.0;
        std::size_t count = 0;
        for (std::ptrdiff_t t = std::max<std::ptrdiff_t>(0, -tau); t < n && t + tau < n; ++t) {
            acc += dot(vi[static_cast<std::size_t>(t)], vj[static_cast<std::size_t>(t + tau)]);
            ++count;
        }
        out.profile.push_back(acc / static_cast<double>(count));
    }
    // Candidates visited in tie-break order: 0, -1, +1, -2, +2, ...
    constexpr double kTie = 1e-12;
    double best = out.profile[static_cast<std::size_t>(m)];
    out.best_lag = 0;
    for (std::ptrdiff_t a = 1; a <= m; ++a) {
        for (const std::ptrdiff_t tau : {-a, a}) {
            const double v = out.profile[static_cast<std::size_t>(tau + m)];
            if (v > best + kTie) {
                best = v;
                out.best_lag = static_cast<int>(tau);
            }
        }
    }
    return out;
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SymbolSeries circular_shift(const SymbolSeries& s, std::size_t offset)
{
    SymbolSeries out = s;
    if (s.size() > 0) {
        std::rotate(out.symbols.begin(), out.symbols.begin() + static_cast<std::ptrdiff_t>(offset % s.size()),
                    out.symbols.end());
    }
    return out;
}

std::vector<std::size_t> surrogate_offsets(std::size_t n, const SurrogateSettings& settings, std::uint64_t salt)
{
    std::vector<std::size_t> out;
    if (n < 3) {
        return out;
    }
    std::mt19937_64 rng(settings.seed ^ (salt * 0x9e3779b97f4a7c15ULL));
    const std::size_t lo = std::max<std::size_t>(1, n / 10);
    const std::size_t hi = std::max(lo, n - lo);
    std::uniform_int_distribution<std::size_t> pick(lo, hi);
    out.reserve(settings.shifts);
    for (std::size_t k = 0; k < settings.shifts; ++k) {
        out.push_back(pick(rng));
    }
    return out;
}

}  // namespace leadership
