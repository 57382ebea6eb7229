#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace rcm {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

inline constexpr std::size_t kDefaultBatches = 50;

/// Sample mean with a batch-means standard error. Short series (fewer than
/// two samples per batch) fall back to the i.i.d. formula.
inline Estimate batch_means(std::span<const double> xs, std::size_t batches = kDefaultBatches) {
    Estimate out;
    out.samples = xs.size();
    if (xs.empty()) return out;
    double sum = 0;
    for (double x : xs) sum += x;
    out.value = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    if (xs.size() < 2 * batches) {
        double ss = 0;
        for (double x : xs) ss += (x - out.value) * (x - out.value);
        out.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
        return out;
    }
    const std::size_t per = xs.size() / batches;
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        double s = 0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) s += xs[i];
        means[b] = s / static_cast<double>(per);
    }
    double grand = 0;
    for (double m : means) grand += m;
    grand /= static_cast<double>(batches);
    double ss = 0;
    for (double m : means) ss += (m - grand) * (m - grand);
    out.std_error = std::sqrt(ss / static_cast<double>(batches - 1) / static_cast<double>(batches));
    return out;
}

/// Ratio of means with a delta-method standard error; numerators and
/// denominators are paired per sample and batched together.
inline Estimate ratio_of_means(std::span<const double> num, std::span<const double> den,
                               std::size_t batches = kDefaultBatches) {
    Estimate out;
    out.samples = num.size();
    if (num.empty() || num.size() != den.size()) return out;
    const std::size_t n = num.size();
    double sn = 0, sd = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sn += num[i];
        sd += den[i];
    }
    if (sd == 0) {
        out.value = std::nan("");
        out.std_error = std::nan("");
        return out;
    }
    out.value = sn / sd;
    // Linearized residuals z_i = (a_i - R b_i) / mean(b).
    const double mean_den = sd / static_cast<double>(n);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (num[i] - out.value * den[i]) / mean_den;
    out.std_error = batch_means(z, batches).std_error;
    return out;
}

} // namespace rcm
