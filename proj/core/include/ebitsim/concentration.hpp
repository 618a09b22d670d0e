#pragma once

#include <cstdint>
#include <vector>

#include "ebitsim/spectra.hpp"
#include "ebitsim/transcript.hpp"

namespace ebitsim {

/// One outcome of the Schmidt-projection measurement on psi^N: result k
/// leaves a maximally entangled state of rank C(N,k). No classical
/// communication is ever needed.
struct ConcentrationOutcome {
    std::int64_t k = 0;
    double probability = 0.0;
    double yield_ebits = 0.0;  // log2 C(N,k)
    std::int64_t cbits = 0;    // identically zero
};

std::vector<ConcentrationOutcome> schmidt_projection_distribution(const BaseSpectrum& base,
                                                                  std::int64_t N);

/// E[log2 C(N,k)] / N, the concentration rate in ebits per copy.
double expected_yield(const BaseSpectrum& base, std::int64_t N);

/// Success probability 2*(1 - p_max) of the single-copy procrustean
/// filter producing a singlet.
double procrustean_success(const BaseSpectrum& base);

/// Sample outcomes of the collective measurement. Alice's and Bob's
/// local results always agree, and the transcript carries no messages.
struct ConcentrationSample {
    std::int64_t alice_k = 0;
    std::int64_t bob_k = 0;
};
std::vector<ConcentrationSample> sample_outcomes(const BaseSpectrum& base, std::int64_t N,
                                                 std::size_t count, std::uint64_t seed,
                                                 ProtocolTranscript& transcript);

}  // namespace ebitsim
