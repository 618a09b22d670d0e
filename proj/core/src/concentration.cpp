#include "ebitsim/concentration.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ebitsim {

std::vector<ConcentrationOutcome> schmidt_projection_distribution(const BaseSpectrum& base,
                                                                  std::int64_t N) {
    base.validate();
    if (!base.is_binary())
        throw std::invalid_argument("schmidt_projection_distribution: binary base required");
    if (N <= 0) throw std::invalid_argument("schmidt_projection_distribution: N must be positive");

    const double p1 = base.probs[0], p2 = base.probs[1];
    const double l1 = p1 > 0 ? std::log2(p1) : 0.0;
    const double l2 = p2 > 0 ? std::log2(p2) : 0.0;

    std::vector<ConcentrationOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(N) + 1);
    BigInt binom = 1;
    for (std::int64_t k = 0; k <= N; ++k) {
        ConcentrationOutcome o;
        o.k = k;
        o.yield_ebits = log2_big(binom);
        if ((p1 == 0.0 && k > 0) || (p2 == 0.0 && k < N)) {
            o.probability = 0.0;
        } else {
            const double log2w = static_cast<double>(k) * l1 + static_cast<double>(N - k) * l2;
            o.probability = std::exp2(o.yield_ebits + log2w);
        }
        outcomes.push_back(o);
        if (k < N) {
            binom *= N - k;
            binom /= k + 1;
        }
    }
    return outcomes;
}

double expected_yield(const BaseSpectrum& base, std::int64_t N) {
    double mean = 0.0;
    for (const auto& o : schmidt_projection_distribution(base, N))
        mean += o.probability * o.yield_ebits;
    return mean / static_cast<double>(N);
}

double procrustean_success(const BaseSpectrum& base) {
    base.validate();
    if (!base.is_binary())
        throw std::invalid_argument("procrustean_success: binary base required");
    const double p_max = std::max(base.probs[0], base.probs[1]);
    return 2.0 * (1.0 - p_max);
}

std::vector<ConcentrationSample> sample_outcomes(const BaseSpectrum& base, std::int64_t N,
                                                 std::size_t count, std::uint64_t seed,
                                                 ProtocolTranscript& transcript) {
    auto dist = schmidt_projection_distribution(base, N);
    std::vector<double> probs;
    probs.reserve(dist.size());
    for (const auto& o : dist) probs.push_back(o.probability);
    std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
    std::mt19937_64 rng(seed);

    std::vector<ConcentrationSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        // collective local measurements on perfectly correlated halves:
        // both parties read off the same k, nothing is transmitted
        const auto k = static_cast<std::int64_t>(pick(rng));
        samples.push_back({k, k});
    }
    (void)transcript;  // concentration appends no messages
    return samples;
}

}  // namespace ebitsim
