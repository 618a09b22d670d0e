#include "ebitsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebitsim {

BaseSpectrum BaseSpectrum::qubit(double a2) {
    return from_probs({a2, 1.0 - a2});
}

BaseSpectrum BaseSpectrum::from_probs(std::vector<double> probs) {
    BaseSpectrum base{std::move(probs)};
    base.validate();
    return base;
}

void BaseSpectrum::validate(double tol) const {
    if (probs.empty()) throw std::invalid_argument("BaseSpectrum: empty probability list");
    double sum = 0.0;
    for (double p : probs) {
        if (p < -tol || p > 1.0 + tol)
            throw std::invalid_argument("BaseSpectrum: probability outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("BaseSpectrum: probabilities do not sum to 1");
}

BigInt SchmidtSpectrum::dimension() const {
    BigInt total = 0;
    for (const auto& c : classes) total += c.multiplicity;
    return total;
}

double entropy(const BaseSpectrum& base) {
    double s = 0.0;
    for (double p : base.probs)
        if (p > 0.0) s -= p * std::log2(p);
    return std::max(s, 0.0);
}

double log2_multiplicity(std::int64_t N, std::int64_t k, std::int64_t exact_threshold) {
    if (k < 0 || k > N) throw std::out_of_range("log2_multiplicity: require 0 <= k <= N");
    if (N <= exact_threshold) return (k == 0 || k == N) ? 0.0 : log2_big(binomial(N, k));
    static const double ln2 = std::log(2.0);
    return (std::lgamma(static_cast<double>(N) + 1) - std::lgamma(static_cast<double>(k) + 1) -
            std::lgamma(static_cast<double>(N - k) + 1)) /
           ln2;
}

double log2_multiplicity(std::int64_t N, const std::vector<std::int64_t>& composition) {
    std::int64_t total = 0;
    for (auto c : composition) {
        if (c < 0) throw std::out_of_range("log2_multiplicity: negative composition entry");
        total += c;
    }
    if (total != N) throw std::out_of_range("log2_multiplicity: composition does not sum to N");
    static const double ln2 = std::log(2.0);
    double r = std::lgamma(static_cast<double>(N) + 1);
    for (auto c : composition) r -= std::lgamma(static_cast<double>(c) + 1);
    return r / ln2;
}

namespace {

BigInt multinomial(std::int64_t N, const std::vector<std::int64_t>& composition) {
    BigInt result = 1;
    std::int64_t remaining = N;
    for (auto c : composition) {
        result *= binomial(remaining, c);
        remaining -= c;
    }
    return result;
}

void enumerate_compositions(const BaseSpectrum& base, std::int64_t N, PrecisionMode mode,
                            std::vector<std::int64_t>& partial, std::int64_t left,
                            std::vector<TypeClass>& out) {
    const std::size_t m = base.probs.size();
    if (partial.size() == m - 1) {
        partial.push_back(left);
        TypeClass tc;
        tc.k = static_cast<std::int64_t>(out.size());
        tc.composition = partial;
        tc.log2_weight = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (partial[i] > 0) {
                if (base.probs[i] == 0.0) { tc.log2_weight = -std::numeric_limits<double>::infinity(); }
                else tc.log2_weight += static_cast<double>(partial[i]) * std::log2(base.probs[i]);
            }
        }
        tc.multiplicity = multinomial(N, partial);
        tc.log2_multiplicity = log2_big(tc.multiplicity);
        if (mode == PrecisionMode::Exact) {
            BigRat total = 0;
            for (double p : base.probs) total += rational_from_double(p);
            BigRat w = 1;
            for (std::size_t i = 0; i < m; ++i) {
                const BigRat p = rational_from_double(base.probs[i]) / total;
                for (std::int64_t j = 0; j < partial[i]; ++j) w *= p;
            }
            tc.exact_weight = w;
        }
        out.push_back(std::move(tc));
        partial.pop_back();
        return;
    }
    for (std::int64_t c = left; c >= 0; --c) {
        partial.push_back(c);
        enumerate_compositions(base, N, mode, partial, left - c, out);
        partial.pop_back();
    }
}

}  // namespace

std::vector<TypeClass> tensor_power_classes(const BaseSpectrum& base, std::int64_t N,
                                            PrecisionMode mode) {
    base.validate();
    if (N <= 0) throw std::invalid_argument("tensor_power_classes: N must be positive");

    std::vector<TypeClass> classes;
    if (base.is_binary()) {
        const double p1 = base.probs[0], p2 = base.probs[1];
        const double l1 = p1 > 0 ? std::log2(p1) : 0.0;
        const double l2 = p2 > 0 ? std::log2(p2) : 0.0;
        classes.reserve(static_cast<std::size_t>(N) + 1);
        BigInt binom = 1;
        BigRat p1r, p2r, weight;
        if (mode == PrecisionMode::Exact) {
            p1r = rational_from_double(p1);
            p2r = rational_from_double(p2);
            // the doubles may not sum to exactly 1 as rationals; the
            // exact semantics normalize so the weights partition unity
            const BigRat total = p1r + p2r;
            if (total != 1) {
                p1r /= total;
                p2r /= total;
            }
            weight = 1;
            for (std::int64_t i = 0; i < N; ++i) weight *= p2r;
        }
        for (std::int64_t k = 0; k <= N; ++k) {
            TypeClass tc;
            tc.k = k;
            tc.composition = {k, N - k};
            if ((p1 == 0.0 && k > 0) || (p2 == 0.0 && k < N))
                tc.log2_weight = -std::numeric_limits<double>::infinity();
            else
                tc.log2_weight = static_cast<double>(k) * l1 + static_cast<double>(N - k) * l2;
            tc.multiplicity = binom;
            tc.log2_multiplicity = log2_big(binom);
            if (mode == PrecisionMode::Exact) tc.exact_weight = weight;
            classes.push_back(std::move(tc));
            if (k < N) {
                binom *= N - k;
                binom /= k + 1;
                if (mode == PrecisionMode::Exact) {
                    weight *= p1r;
                    if (p2r != 0) weight /= p2r;
                    else weight = 0;
                }
            }
        }
    } else {
        // general spin: one class per composition of N into m parts
        std::vector<std::int64_t> partial;
        enumerate_compositions(base, N, mode, partial, N, classes);
    }
    return classes;
}

double normalization_check(const SchmidtSpectrum& spectrum) {
    bool all_exact = !spectrum.classes.empty();
    for (const auto& c : spectrum.classes)
        if (!c.exact_weight) { all_exact = false; break; }
    if (all_exact) {
        BigRat sum = 0;
        for (const auto& c : spectrum.classes) sum += BigRat(c.multiplicity) * *c.exact_weight;
        BigRat defect = sum - 1;
        if (defect < 0) defect = -defect;
        return defect.convert_to<double>();
    }
    double sum = 0.0;
    for (const auto& c : spectrum.classes)
        sum += std::exp2(log2_big(c.multiplicity) + c.log2_weight);
    return std::abs(1.0 - sum);
}

SchmidtSpectrum to_spectrum(const std::vector<TypeClass>& classes, PrecisionMode mode) {
    SchmidtSpectrum s;
    s.mode = mode;
    s.classes.reserve(classes.size());
    for (const auto& tc : classes) {
        SpectrumClass c;
        c.k = tc.k;
        c.log2_weight = tc.log2_weight;
        c.multiplicity = tc.multiplicity;
        c.exact_weight = tc.exact_weight;
        s.classes.push_back(std::move(c));
    }
    return s;
}

SchmidtSpectrum merge_equal_weights(const SchmidtSpectrum& spectrum, double tol) {
    SchmidtSpectrum merged;
    merged.mode = spectrum.mode;
    std::vector<SpectrumClass> sorted = spectrum.classes;
    std::sort(sorted.begin(), sorted.end(),
              [](const SpectrumClass& a, const SpectrumClass& b) {
                  return a.log2_weight > b.log2_weight;
              });
    for (const auto& c : sorted) {
        bool same = false;
        if (!merged.classes.empty()) {
            auto& last = merged.classes.back();
            if (last.exact_weight && c.exact_weight)
                same = *last.exact_weight == *c.exact_weight;
            else
                same = std::abs(last.log2_weight - c.log2_weight) <= tol;
        }
        if (same) {
            merged.classes.back().multiplicity += c.multiplicity;
        } else {
            SpectrumClass nc = c;
            nc.k = -1;
            merged.classes.push_back(std::move(nc));
        }
    }
    return merged;
}

}  // namespace ebitsim
