#include "ebitsim/dilution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebitsim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log2(1.0 + std::exp2(b - a));
}

bool uniform_base(const BaseSpectrum& base) {
    for (double p : base.probs)
        if (p != base.probs.front()) return false;
    return true;
}

DilutionPlan trivial_plan(const BaseSpectrum& base, std::int64_t N, double c,
                          PrecisionMode mode) {
    DilutionPlan plan;
    plan.base = base;
    plan.N = N;
    plan.c = c;
    plan.S = 0.0;
    plan.mode = mode;
    plan.trivial = true;
    plan.u1_norm_sq = 1.0;
    plan.u2_norm_sq = 0.0;
    if (mode == PrecisionMode::Exact) {
        plan.u1_norm_sq_exact = BigRat(1);
        plan.u2_norm_sq_exact = BigRat(0);
    }
    return plan;
}

// Exact global 2^N degeneracy: psi^N is already Phi^N up to local
// unitaries, no binning and no communication.
DilutionPlan fast_path_plan(const BaseSpectrum& base, std::int64_t N, double c,
                            PrecisionMode mode) {
    DilutionPlan plan;
    plan.base = base;
    plan.N = N;
    plan.c = c;
    plan.S = entropy(base);
    plan.mode = mode;
    plan.degenerate_fast_path = true;

    // uniform binary base: the merged spectrum is a single class of
    // multiplicity 2^N, so r = N and gamma is trivial
    FactorizationResult f;
    f.r = N;
    f.gamma_dim = 1;
    {
        SpectrumClass gc;
        gc.k = -1;
        gc.log2_weight = 0.0;
        gc.multiplicity = 1;
        if (mode == PrecisionMode::Exact) gc.exact_weight = BigRat(1);
        f.gamma.classes.push_back(gc);
    }
    plan.d = f.r;
    plan.bin_size = BigInt(1) << f.r;
    plan.delta_dim = f.gamma_dim;
    std::int64_t m = f.gamma_dim == 1 ? 0 : ceil_log2(f.gamma_dim);
    plan.cbits = 2 * m;
    plan.singlets_consumed = plan.d + m;
    plan.u1_norm_sq = 1.0;
    plan.u2_norm_sq = 0.0;
    if (mode == PrecisionMode::Exact) {
        plan.u1_norm_sq_exact = BigRat(1);
        plan.u2_norm_sq_exact = BigRat(0);
    }
    plan.bits_per_ebit =
        plan.S > 0.0 ? static_cast<double>(plan.cbits) / (static_cast<double>(N) * plan.S) : 0.0;
    return plan;
}

}  // namespace

DilutionPlan plan_dilution(const BaseSpectrum& base, std::int64_t N, double c,
                           PrecisionMode mode) {
    base.validate();
    if (!base.is_binary())
        throw std::invalid_argument("plan_dilution: binary base spectrum required");
    if (N <= 0) throw std::invalid_argument("plan_dilution: N must be positive");
    if (c <= 0.0) throw std::invalid_argument("plan_dilution: c must be positive");

    const double S = entropy(base);
    if (S == 0.0) return trivial_plan(base, N, c, mode);
    if (uniform_base(base)) return fast_path_plan(base, N, c, mode);

    DilutionPlan plan;
    plan.base = base;
    plan.N = N;
    plan.c = c;
    plan.S = S;
    plan.mode = mode;

    const double sqrtN = std::sqrt(static_cast<double>(N));
    const double NS = static_cast<double>(N) * S;
    plan.d = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(NS - 2.0 * c * sqrtN)));
    plan.bin_size = BigInt(1) << plan.d;

    const double window_lo = NS - c * sqrtN;
    const double window_hi = NS + c * sqrtN;

    const double p1 = base.probs[0], p2 = base.probs[1];
    const double l1 = std::log2(p1), l2 = std::log2(p2);

    // Exact mode works over a fixed common denominator to avoid per-step
    // rational normalization: with p1 = A/D and p2 = B/D (D = A + B, so the
    // weights partition unity even when the two doubles do not sum to
    // exactly 1 as rationals), weight_k = A^k B^(N-k) / D^N and only the
    // integer numerators are streamed.
    const bool exact = mode == PrecisionMode::Exact;
    BigInt wa, wb;      // A, B
    BigInt apow, bpow;  // A^k, B^(N-k)
    BigInt u2_num = 0;  // u2 numerator over D^N
    if (exact) {
        const BigRat p1r = rational_from_double(p1);
        const BigRat p2r = rational_from_double(p2);
        wa = numerator(p1r) * denominator(p2r);
        wb = numerator(p2r) * denominator(p1r);
        apow = 1;
        bpow = 1;
        for (std::int64_t i = 0; i < N; ++i) bpow *= wb;
    }

    double log2_atyp = kNegInf;     // atypical mass
    double log2_discard = kNegInf;  // partial-bin mass from typical classes
    double log2_u1 = kNegInf;       // kept mass, recomputed as a cross-check

    BigInt binom = 1;
    plan.delta_dim = 0;
    for (std::int64_t k = 0; k <= N; ++k) {
        const double log2C = log2_big(binom);
        const double log2w =
            static_cast<double>(k) * l1 + static_cast<double>(N - k) * l2;
        if (log2C >= window_lo && log2C <= window_hi) {
            BigInt n_k = binom >> plan.d;
            BigInt disc = binom - (n_k << plan.d);
            if (n_k > 0) {
                log2_u1 = log2_add(log2_u1, log2_big(n_k) + static_cast<double>(plan.d) + log2w);
                plan.delta_dim += n_k;
            }
            if (disc > 0) log2_discard = log2_add(log2_discard, log2_big(disc) + log2w);
            if (exact && (disc > 0)) u2_num += disc * apow * bpow;
            plan.typical_k.push_back(k);
            plan.log2_weight_k.push_back(log2w);
            plan.full_bins_k.push_back(std::move(n_k));
            plan.discarded_terms_k.push_back(std::move(disc));
        } else {
            log2_atyp = log2_add(log2_atyp, log2C + log2w);
            if (exact) u2_num += binom * apow * bpow;
        }
        if (k < N) {
            binom *= N - k;
            binom /= k + 1;
            if (exact) {
                apow *= wa;
                bpow /= wb;  // exact: bpow is a power of wb
            }
        }
    }

    plan.atypical_mass = std::exp2(log2_atyp);
    plan.u2_norm_sq = std::exp2(log2_add(log2_atyp, log2_discard));
    plan.u1_norm_sq = 1.0 - plan.u2_norm_sq;
    if (exact) {
        BigInt dpow = 1;
        const BigInt denom_base = wa + wb;
        for (std::int64_t i = 0; i < N; ++i) dpow *= denom_base;
        const BigRat u2_exact(u2_num, dpow);
        plan.u2_norm_sq_exact = u2_exact;
        plan.u1_norm_sq_exact = BigRat(1) - u2_exact;
        plan.u2_norm_sq = u2_exact.convert_to<double>();
        plan.u1_norm_sq = plan.u1_norm_sq_exact->convert_to<double>();
    } else {
        // independent kept-mass accumulation must agree with 1 - u2
        const double u1_direct = std::exp2(log2_u1);
        if (std::abs(u1_direct - plan.u1_norm_sq) > 1e-9)
            throw std::runtime_error("plan_dilution: norm split cross-check failed");
    }

    if (plan.delta_dim > 0) {
        const std::int64_t m = plan.delta_dim == 1 ? 0 : ceil_log2(plan.delta_dim);
        plan.cbits = 2 * m;
        plan.singlets_consumed = plan.d + m;
    } else {
        // window caught no full bin; nothing to send
        plan.cbits = 0;
        plan.singlets_consumed = 0;
        plan.u1_norm_sq = 0.0;
        plan.u2_norm_sq = 1.0;
        if (exact) {
            plan.u1_norm_sq_exact = BigRat(0);
            plan.u2_norm_sq_exact = BigRat(1);
        }
    }
    plan.bits_per_ebit = static_cast<double>(plan.cbits) / (static_cast<double>(N) * S);
    return plan;
}

Decomposition decompose(const DilutionPlan& plan) {
    Decomposition out;
    out.u1.mode = plan.mode;
    out.delta.mode = plan.mode;
    out.u2_norm_sq = plan.u2_norm_sq;

    if (plan.trivial) {
        SpectrumClass c;
        c.k = 0;
        c.log2_weight = 0.0;
        c.multiplicity = 1;
        if (plan.mode == PrecisionMode::Exact) c.exact_weight = BigRat(1);
        out.u1.classes.push_back(c);
        out.delta.classes.push_back(c);
        return out;
    }
    if (plan.degenerate_fast_path) {
        SpectrumClass c;
        c.k = -1;
        c.log2_weight = -static_cast<double>(plan.d);
        c.multiplicity = plan.bin_size;
        if (plan.mode == PrecisionMode::Exact)
            c.exact_weight = BigRat(1) / BigRat(plan.bin_size);
        out.u1.classes.push_back(c);
        SpectrumClass dc;
        dc.k = -1;
        dc.log2_weight = 0.0;
        dc.multiplicity = 1;
        if (plan.mode == PrecisionMode::Exact) dc.exact_weight = BigRat(1);
        out.delta.classes.push_back(dc);
        return out;
    }

    const bool exact = plan.mode == PrecisionMode::Exact && plan.u1_norm_sq_exact.has_value();
    BigRat p1r, p2r;
    if (exact) {
        p1r = rational_from_double(plan.base.probs[0]);
        p2r = rational_from_double(plan.base.probs[1]);
        const BigRat total = p1r + p2r;
        if (total != 1) {
            p1r /= total;
            p2r /= total;
        }
    }
    const double log2_u1 = std::log2(plan.u1_norm_sq);
    for (std::size_t i = 0; i < plan.typical_k.size(); ++i) {
        if (plan.full_bins_k[i] == 0) continue;
        const std::int64_t k = plan.typical_k[i];
        SpectrumClass c;
        c.k = k;
        c.log2_weight = plan.log2_weight_k[i];
        c.multiplicity = plan.full_bins_k[i] * plan.bin_size;
        if (exact) {
            BigRat w = 1;
            for (std::int64_t j = 0; j < k; ++j) w *= p1r;
            for (std::int64_t j = 0; j < plan.N - k; ++j) w *= p2r;
            c.exact_weight = w;
        }
        out.u1.classes.push_back(c);

        SpectrumClass dc;
        dc.k = k;
        dc.log2_weight = plan.log2_weight_k[i] + static_cast<double>(plan.d) - log2_u1;
        dc.multiplicity = plan.full_bins_k[i];
        if (exact)
            dc.exact_weight =
                *out.u1.classes.back().exact_weight * BigRat(plan.bin_size) / *plan.u1_norm_sq_exact;
        out.delta.classes.push_back(dc);
    }
    return out;
}

double fidelity(const DilutionPlan& plan) { return plan.u1_norm_sq; }

FactorizationResult factorize_degenerate(const SchmidtSpectrum& spectrum) {
    if (spectrum.classes.empty())
        throw std::invalid_argument("factorize_degenerate: empty spectrum");
    FactorizationResult f;
    std::int64_t r = std::numeric_limits<std::int64_t>::max();
    for (const auto& c : spectrum.classes) r = std::min(r, twoadic_valuation(c.multiplicity));
    f.r = r;
    f.gamma.mode = spectrum.mode;
    f.gamma_dim = 0;
    for (const auto& c : spectrum.classes) {
        SpectrumClass gc;
        gc.k = c.k;
        gc.multiplicity = c.multiplicity >> r;
        gc.log2_weight = c.log2_weight + static_cast<double>(r);
        if (c.exact_weight) gc.exact_weight = *c.exact_weight * BigRat(BigInt(1) << r);
        f.gamma_dim += gc.multiplicity;
        f.gamma.classes.push_back(std::move(gc));
    }
    return f;
}

LemmaCost lemma_cost(std::int64_t n_singlets_available, const FactorizationResult& f) {
    if (f.gamma_dim < 1) throw std::invalid_argument("lemma_cost: gamma_dim must be >= 1");
    LemmaCost cost;
    const std::int64_t m = f.gamma_dim == 1 ? 0 : ceil_log2(f.gamma_dim);
    cost.cbits = 2 * m;
    cost.singlets_used = f.r + m;
    if (cost.singlets_used > n_singlets_available)
        throw std::invalid_argument("lemma_cost: not enough shared singlets");
    return cost;
}

DilutionCost dilution_cost(const DilutionPlan& plan) {
    return {plan.cbits, plan.singlets_consumed, plan.bits_per_ebit};
}

std::int64_t standard_dilution_cost(const BaseSpectrum& base, std::int64_t N) {
    const double S = entropy(base);
    if (S == 0.0) return 0;
    return 2 * static_cast<std::int64_t>(std::ceil(static_cast<double>(N) * S));
}

std::vector<SweepRow> sweep(const BaseSpectrum& base, const std::vector<std::int64_t>& N_list,
                            double c) {
    if (N_list.empty()) throw std::invalid_argument("sweep: empty N list");
    if (!std::is_sorted(N_list.begin(), N_list.end()))
        throw std::invalid_argument("sweep: N list must be ascending");
    std::vector<SweepRow> rows;
    rows.reserve(N_list.size());
    for (std::int64_t N : N_list) {
        auto plan = plan_dilution(base, N, c);
        SweepRow row;
        row.N = N;
        row.c = c;
        row.S = plan.S;
        row.d = plan.d;
        row.delta_dim = plan.delta_dim;
        row.cbits = plan.cbits;
        row.singlets = plan.singlets_consumed;
        row.fidelity = fidelity(plan);
        row.bits_per_ebit = plan.bits_per_ebit;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ebitsim
