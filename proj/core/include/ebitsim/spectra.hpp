#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ebitsim/bigmath.hpp"

namespace ebitsim {

enum class PrecisionMode { Exact, Log };

/// Schmidt probabilities of a single copy of a bipartite pure state.
/// For the canonical qubit state a|00> + b|11>, probs = {a^2, b^2}.
struct BaseSpectrum {
    std::vector<double> probs;

    static BaseSpectrum qubit(double a2);
    static BaseSpectrum from_probs(std::vector<double> probs);

    bool is_binary() const { return probs.size() == 2; }
    void validate(double tol = 1e-9) const;
};

/// One degeneracy class of a Schmidt spectrum: all terms of this class
/// carry probability weight 2^log2_weight and there are `multiplicity`
/// of them. `exact_weight` is populated in exact-rational mode.
struct SpectrumClass {
    std::int64_t k = -1;  // originating type-class index, -1 when merged
    double log2_weight = 0.0;
    BigInt multiplicity = 1;
    std::optional<BigRat> exact_weight;
};

struct SchmidtSpectrum {
    std::vector<SpectrumClass> classes;
    PrecisionMode mode = PrecisionMode::Log;

    /// Total term count, sum of multiplicities.
    BigInt dimension() const;
};

/// One k-class of psi^N for a binary base: weight p1^k p2^(N-k) with
/// multiplicity C(N, k). For a general m-entry base, k indexes the
/// composition list and the multiplicity is the multinomial.
struct TypeClass {
    std::int64_t k = 0;
    std::vector<std::int64_t> composition;  // counts per Schmidt branch
    double log2_weight = 0.0;
    BigInt multiplicity = 1;
    double log2_multiplicity = 0.0;
    std::optional<BigRat> exact_weight;
};

/// von Neumann entropy -sum p log2 p in ebits per copy; p = 0 terms
/// contribute zero.
double entropy(const BaseSpectrum& base);

/// All degeneracy classes of psi^N. Binary bases produce N+1 classes
/// keyed by k; general bases produce one class per composition of N.
/// Exact mode attaches exact rational weights.
std::vector<TypeClass> tensor_power_classes(const BaseSpectrum& base, std::int64_t N,
                                            PrecisionMode mode = PrecisionMode::Log);

/// log2 C(N, k), exact big-integer route below `exact_threshold`,
/// log-gamma above; the two agree within 1e-9 at the crossover.
double log2_multiplicity(std::int64_t N, std::int64_t k,
                         std::int64_t exact_threshold = 1024);

/// log2 of the multinomial coefficient for a composition of N.
double log2_multiplicity(std::int64_t N, const std::vector<std::int64_t>& composition);

/// |1 - sum multiplicity * 2^log2_weight|; exact-rational classes are
/// summed exactly.
double normalization_check(const SchmidtSpectrum& spectrum);

/// View a list of type classes as a SchmidtSpectrum.
SchmidtSpectrum to_spectrum(const std::vector<TypeClass>& classes,
                            PrecisionMode mode = PrecisionMode::Log);

/// Merge classes with equal weight (within tol in log2 space; exactly
/// when both carry rational weights) into single classes. Explicit on
/// purpose: tensor-power classes stay keyed by k until merged.
SchmidtSpectrum merge_equal_weights(const SchmidtSpectrum& spectrum, double tol = 1e-9);

}  // namespace ebitsim
