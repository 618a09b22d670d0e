#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ebitsim/spectra.hpp"

namespace ebitsim {

/// The binned decomposition psi^N = Phi^d (x) Delta + u2 together with
/// its communication and entanglement cost accounting.
///
/// For every typical k: n_k * 2^d <= C(N,k) < (n_k + 1) * 2^d, with
/// exact integers throughout. u2 collects the atypical classes plus the
/// partial bins discarded from typical classes.
struct DilutionPlan {
    BaseSpectrum base;
    std::int64_t N = 0;
    double c = 0.0;
    double S = 0.0;
    PrecisionMode mode = PrecisionMode::Log;

    std::int64_t d = 0;   // singlet exponent, max(0, ceil(NS - 2c sqrt(N)))
    BigInt bin_size = 1;  // 2^d

    std::vector<std::int64_t> typical_k;
    std::vector<double> log2_weight_k;      // per typical k
    std::vector<BigInt> full_bins_k;        // n_k
    std::vector<BigInt> discarded_terms_k;  // C(N,k) - n_k * 2^d

    double atypical_mass = 0.0;
    double u1_norm_sq = 1.0;
    double u2_norm_sq = 0.0;
    std::optional<BigRat> u1_norm_sq_exact;
    std::optional<BigRat> u2_norm_sq_exact;

    BigInt delta_dim = 1;  // sum of n_k over typical k
    std::int64_t cbits = 0;
    std::int64_t singlets_consumed = 0;
    double bits_per_ebit = 0.0;

    bool trivial = false;          // S = 0 degenerate plan
    bool degenerate_fast_path = false;  // exact global 2^r degeneracy, no binning
};

/// Residual of factoring r singlets out of a degenerate spectrum:
/// input = uniform-2^r (x) gamma.
struct FactorizationResult {
    std::int64_t r = 0;
    SchmidtSpectrum gamma;
    BigInt gamma_dim = 1;
};

struct LemmaCost {
    std::int64_t cbits = 0;
    std::int64_t singlets_used = 0;
};

struct DilutionCost {
    std::int64_t cbits = 0;
    std::int64_t singlets_consumed = 0;
    double bits_per_ebit = 0.0;
};

struct Decomposition {
    SchmidtSpectrum u1;      // classes (log2_weight_k, n_k * 2^d)
    SchmidtSpectrum delta;   // u1 multiplicities / 2^d, weights * 2^d, normalized
    double u2_norm_sq = 0.0;
};

struct SweepRow {
    std::int64_t N = 0;
    double c = 0.0;
    double S = 0.0;
    std::int64_t d = 0;
    BigInt delta_dim = 1;
    std::int64_t cbits = 0;
    std::int64_t singlets = 0;
    double fidelity = 1.0;
    double bits_per_ebit = 0.0;
};

/// Build the full plan for a binary base. Exact mode keeps the norm
/// split as exact rationals. A product state (S = 0) yields the trivial
/// plan; an exactly uniform base takes the degenerate fast path and
/// never bins.
DilutionPlan plan_dilution(const BaseSpectrum& base, std::int64_t N, double c,
                           PrecisionMode mode = PrecisionMode::Log);

Decomposition decompose(const DilutionPlan& plan);

/// Squared overlap between psi^N and the normalized kept piece; equals
/// ||u1||^2 since u1 is an orthogonal projection of psi^N.
double fidelity(const DilutionPlan& plan);

/// r = min over classes of the 2-adic valuation of the multiplicity;
/// gamma multiplicities are divided by 2^r and weights scaled by 2^r.
/// Re-tensoring the uniform 2^r spectrum with gamma recovers the input.
FactorizationResult factorize_degenerate(const SchmidtSpectrum& spectrum);

/// Cost of sharing a 2^n-dimensional degenerate state given its
/// factorization: teleport only gamma, qubit-granular.
LemmaCost lemma_cost(std::int64_t n_singlets_available, const FactorizationResult& f);

DilutionCost dilution_cost(const DilutionPlan& plan);

/// Baseline: teleport a Schumacher-compressed half, 2*ceil(N*S) cbits.
std::int64_t standard_dilution_cost(const BaseSpectrum& base, std::int64_t N);

std::vector<SweepRow> sweep(const BaseSpectrum& base, const std::vector<std::int64_t>& N_list,
                            double c);

}  // namespace ebitsim
