#include <doctest.h>

#include <random>

#include "ebitsim/dilution.hpp"
#include "ebitsim/scaling.hpp"
#include "oracles.hpp"

using namespace ebitsim;

TEST_CASE("plan a2=0.25 N=4 c=1: d clamps, everything typical is kept whole") {
    auto plan = plan_dilution(BaseSpectrum::qubit(0.25), 4, 1.0, PrecisionMode::Exact);
    CHECK(plan.d == 0);  // ceil(3.245 - 4) < 0
    CHECK(plan.bin_size == 1);
    REQUIRE(plan.typical_k == std::vector<std::int64_t>{1, 2, 3});
    CHECK(plan.full_bins_k[0] == 4);
    CHECK(plan.full_bins_k[1] == 6);
    CHECK(plan.full_bins_k[2] == 4);
    CHECK(plan.delta_dim == 14);
    CHECK(plan.cbits == 8);
    CHECK(plan.singlets_consumed == 4);
    // exact rational norm split: u2 = 41/128
    REQUIRE(plan.u2_norm_sq_exact.has_value());
    CHECK(*plan.u2_norm_sq_exact == BigRat(41, 128));
    CHECK(*plan.u1_norm_sq_exact == BigRat(87, 128));
    CHECK(plan.u2_norm_sq == doctest::Approx(0.3203125).epsilon(1e-15));
}

TEST_CASE("product state yields the trivial plan") {
    auto plan = plan_dilution(BaseSpectrum::qubit(1.0), 8, 3.0);
    CHECK(plan.trivial);
    CHECK(plan.d == 0);
    CHECK(plan.delta_dim == 1);
    CHECK(plan.cbits == 0);
    CHECK(plan.singlets_consumed == 0);
    CHECK(fidelity(plan) == 1.0);
}

TEST_CASE("plan a2=0.25 N=10^4 c=3") {
    auto plan = plan_dilution(BaseSpectrum::qubit(0.25), 10000, 3.0);
    CHECK(plan.d == 7513);  // ceil(8112.78 - 600)
    CHECK(plan.u2_norm_sq < 1e-3);
    CHECK(fidelity(plan) >= 0.999);
    // independent direct-summation oracle over all k
    const double ref = static_cast<double>(oracles::oracle_fidelity(0.25, 10000, 3.0));
    CHECK(fidelity(plan) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("decompose: fast path for the uniform base") {
    auto plan = plan_dilution(BaseSpectrum::qubit(0.5), 2, 3.0);
    CHECK(plan.degenerate_fast_path);
    CHECK(plan.cbits == 0);
    auto dec = decompose(plan);
    CHECK(dec.u2_norm_sq == 0.0);
    REQUIRE(dec.u1.classes.size() == 1);
    CHECK(dec.u1.classes[0].multiplicity == 4);  // the full psi^2 spectrum, merged
    CHECK(dec.u1.classes[0].log2_weight == doctest::Approx(-2.0));
    REQUIRE(dec.delta.classes.size() == 1);
    CHECK(dec.delta.classes[0].multiplicity == 1);
}

TEST_CASE("decompose a2=0.25 N=4 c=1") {
    auto plan = plan_dilution(BaseSpectrum::qubit(0.25), 4, 1.0);
    CHECK(plan.u1_norm_sq == doctest::Approx(0.6796875).epsilon(1e-12));
    auto dec = decompose(plan);
    // u1 plus u2 mass is a partition of unity
    double total = dec.u2_norm_sq;
    for (const auto& c : dec.u1.classes)
        total += c.multiplicity.convert_to<double>() * std::exp2(c.log2_weight);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // every u1 multiplicity divisible by the bin size; delta normalized
    for (const auto& c : dec.u1.classes) CHECK(c.multiplicity % plan.bin_size == 0);
    CHECK(normalization_check(dec.delta) <= 1e-12);
}

TEST_CASE("fidelity examples") {
    CHECK(fidelity(plan_dilution(BaseSpectrum::qubit(1.0), 5, 3.0)) == 1.0);
    CHECK(fidelity(plan_dilution(BaseSpectrum::qubit(0.25), 4, 1.0)) ==
          doctest::Approx(0.6796875).epsilon(1e-12));
}

TEST_CASE("factorize_degenerate") {
    SUBCASE("Phi^2 spectrum factors completely") {
        SchmidtSpectrum s;
        s.classes.push_back({-1, -2.0, 4, std::nullopt});
        auto f = factorize_degenerate(s);
        CHECK(f.r == 2);
        CHECK(f.gamma_dim == 1);
        REQUIRE(f.gamma.classes.size() == 1);
        CHECK(f.gamma.classes[0].multiplicity == 1);
        CHECK(f.gamma.classes[0].log2_weight == doctest::Approx(0.0));
    }
    SUBCASE("mixed valuations") {
        SchmidtSpectrum s;
        s.classes.push_back({-1, std::log2(1.0 / 8.0), 4, std::nullopt});
        s.classes.push_back({-1, std::log2(1.0 / 16.0), 8, std::nullopt});
        auto f = factorize_degenerate(s);
        CHECK(f.r == 2);  // valuations 2 and 3
        CHECK(f.gamma_dim == 3);
        CHECK(f.gamma.classes[0].multiplicity == 1);
        CHECK(std::exp2(f.gamma.classes[0].log2_weight) == doctest::Approx(0.5));
        CHECK(f.gamma.classes[1].multiplicity == 2);
        CHECK(std::exp2(f.gamma.classes[1].log2_weight) == doctest::Approx(0.25));
    }
    SUBCASE("odd multiplicity blocks factorization") {
        SchmidtSpectrum s;
        s.classes.push_back({-1, std::log2(1.0 / 6.0), 3, std::nullopt});
        s.classes.push_back({-1, std::log2(1.0 / 4.0), 2, std::nullopt});
        auto f = factorize_degenerate(s);
        CHECK(f.r == 0);
        CHECK(f.gamma_dim == 5);
        CHECK(f.gamma.classes[0].multiplicity == 3);
    }
    SUBCASE("round trip: re-tensoring with the uniform 2^r spectrum") {
        SchmidtSpectrum s;
        s.classes.push_back({-1, std::log2(1.0 / 8.0), 4, std::nullopt});
        s.classes.push_back({-1, std::log2(1.0 / 16.0), 8, std::nullopt});
        auto f = factorize_degenerate(s);
        for (std::size_t i = 0; i < s.classes.size(); ++i) {
            CHECK(f.gamma.classes[i].multiplicity * (BigInt(1) << f.r) ==
                  s.classes[i].multiplicity);
            CHECK(f.gamma.classes[i].log2_weight - f.r ==
                  doctest::Approx(s.classes[i].log2_weight).epsilon(1e-12));
        }
        // r is maximal: some gamma multiplicity is odd
        bool any_odd = false;
        for (const auto& c : f.gamma.classes) any_odd |= (c.multiplicity & 1) == 1;
        CHECK(any_odd);
    }
}

TEST_CASE("lemma_cost") {
    SUBCASE("n=3, r=2, gamma_dim=2 needs 2 cbits") {
        FactorizationResult f;
        f.r = 2;
        f.gamma_dim = 2;
        auto cost = lemma_cost(3, f);
        CHECK(cost.cbits == 2);
        CHECK(cost.singlets_used == 3);
    }
    SUBCASE("Pi = Phi^n exactly is free") {
        FactorizationResult f;
        f.r = 5;
        f.gamma_dim = 1;
        auto cost = lemma_cost(5, f);
        CHECK(cost.cbits == 0);
        CHECK(cost.singlets_used == 5);
    }
    SUBCASE("gamma_dim=3 rounds up to 2 qubits") {
        FactorizationResult f;
        f.r = 0;
        f.gamma_dim = 3;
        auto cost = lemma_cost(2, f);
        CHECK(cost.cbits == 4);
        CHECK(cost.singlets_used == 2);
    }
    SUBCASE("insufficient singlets rejected") {
        FactorizationResult f;
        f.r = 2;
        f.gamma_dim = 4;
        CHECK_THROWS(lemma_cost(3, f));
    }
}

TEST_CASE("dilution_cost and the standard baseline") {
    auto trivial = dilution_cost(plan_dilution(BaseSpectrum::qubit(1.0), 10, 3.0));
    CHECK(trivial.cbits == 0);
    CHECK(trivial.singlets_consumed == 0);
    CHECK(trivial.bits_per_ebit == 0.0);

    auto cost = dilution_cost(plan_dilution(BaseSpectrum::qubit(0.25), 4, 1.0));
    CHECK(cost.cbits == 8);
    CHECK(cost.singlets_consumed == 4);
    CHECK(cost.bits_per_ebit == doctest::Approx(8.0 / 3.2451).epsilon(1e-4));

    CHECK(standard_dilution_cost(BaseSpectrum::qubit(0.25), 100) == 164);  // 2*ceil(81.128)
    CHECK(standard_dilution_cost(BaseSpectrum::qubit(0.5), 10) == 20);
    CHECK(standard_dilution_cost(BaseSpectrum::qubit(1.0), 1000) == 0);
}

TEST_CASE("sweep scaling: slope of log2(bits_per_ebit) vs log2(N) is -1/2") {
    auto rows = sweep(BaseSpectrum::qubit(0.25), {1000, 10000, 100000}, 3.0);
    REQUIRE(rows.size() == 3);
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(static_cast<double>(r.N), r.bits_per_ebit);
    auto fit = fit_log2_slope(pts);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.2));
    CHECK(std::abs(fit.slope + 0.5) <= 0.1);
}

TEST_CASE("sweep single row matches plan_dilution") {
    auto rows = sweep(BaseSpectrum::qubit(0.25), {4}, 1.0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].cbits == 8);
    CHECK(rows[0].singlets == 4);
    CHECK(rows[0].delta_dim == 14);
    CHECK(rows[0].fidelity == doctest::Approx(0.6796875));
}

TEST_CASE("sweep of a product state is all-zero cost") {
    auto rows = sweep(BaseSpectrum::qubit(1.0), {10, 100}, 3.0);
    for (const auto& r : rows) {
        CHECK(r.cbits == 0);
        CHECK(r.singlets == 0);
        CHECK(r.bits_per_ebit == 0.0);
    }
}

TEST_CASE("sweep input validation") {
    CHECK_THROWS(sweep(BaseSpectrum::qubit(0.25), {}, 3.0));
    CHECK_THROWS(sweep(BaseSpectrum::qubit(0.25), {100, 10}, 3.0));
}

TEST_CASE("bin inequality holds exactly for random instances") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> a2_dist(0.05, 0.95);
    std::uniform_int_distribution<std::int64_t> n_dist(2, 400);
    std::uniform_real_distribution<double> c_dist(0.5, 5.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double a2 = a2_dist(rng);
        const std::int64_t N = n_dist(rng);
        const double c = c_dist(rng);
        auto plan = plan_dilution(BaseSpectrum::qubit(a2), N, c, PrecisionMode::Exact);
        if (plan.trivial || plan.degenerate_fast_path) continue;
        for (std::size_t i = 0; i < plan.typical_k.size(); ++i) {
            const BigInt binom = oracles::pascal_binomial(N, plan.typical_k[i]);
            CHECK(plan.full_bins_k[i] * plan.bin_size <= binom);
            CHECK(binom < (plan.full_bins_k[i] + 1) * plan.bin_size);
            CHECK(plan.discarded_terms_k[i] >= 0);
            CHECK(plan.discarded_terms_k[i] < plan.bin_size);
            CHECK(plan.full_bins_k[i] * plan.bin_size + plan.discarded_terms_k[i] == binom);
        }
        // exact partition of unity
        REQUIRE(plan.u1_norm_sq_exact.has_value());
        CHECK(*plan.u1_norm_sq_exact + *plan.u2_norm_sq_exact == 1);
    }
}

TEST_CASE("u1 multiplicities divide by 2^d and re-factorize with r >= d") {
    auto plan = plan_dilution(BaseSpectrum::qubit(0.25), 300, 1.0);
    REQUIRE(plan.d > 0);
    auto dec = decompose(plan);
    for (const auto& c : dec.u1.classes) CHECK(c.multiplicity % plan.bin_size == 0);
    // normalize u1 and factor its degeneracies
    auto f = factorize_degenerate(dec.u1);
    CHECK(f.r >= plan.d);
}

TEST_CASE("per-k discard fraction shrinks as bins fill") {
    for (std::int64_t N : {100, 1000, 10000}) {
        auto plan = plan_dilution(BaseSpectrum::qubit(0.25), N, 3.0);
        for (std::size_t i = 0; i < plan.typical_k.size(); ++i) {
            REQUIRE(plan.full_bins_k[i] >= 1);
            const BigInt binom =
                plan.full_bins_k[i] * plan.bin_size + plan.discarded_terms_k[i];
            // discarded/C(N,k) < 1/n_k
            CHECK(plan.discarded_terms_k[i] * plan.full_bins_k[i] < binom);
        }
    }
    // min_k n_k grows without bound along the sweep
    BigInt prev_min = 0;
    for (std::int64_t N : {100, 1000, 10000}) {
        auto plan = plan_dilution(BaseSpectrum::qubit(0.25), N, 3.0);
        BigInt min_bins = plan.full_bins_k.front();
        for (const auto& n : plan.full_bins_k)
            if (n < min_bins) min_bins = n;
        CHECK(min_bins > prev_min);
        prev_min = min_bins;
    }
}

TEST_CASE("singlet consumption rate approaches the entropy") {
    const double S = entropy(BaseSpectrum::qubit(0.25));
    for (std::int64_t N : {1000, 10000, 100000}) {
        auto plan = plan_dilution(BaseSpectrum::qubit(0.25), N, 3.0);
        const double rate = static_cast<double>(plan.singlets_consumed) / static_cast<double>(N);
        CHECK(std::abs(rate - S) <= 10.0 * 3.0 / std::sqrt(static_cast<double>(N)));
    }
}

TEST_CASE("fast path equivalence with the lemma cost") {
    for (std::int64_t N : {1, 2, 5, 12}) {
        auto plan = plan_dilution(BaseSpectrum::qubit(0.5), N, 3.0);
        REQUIRE(plan.degenerate_fast_path);
        auto merged =
            merge_equal_weights(to_spectrum(tensor_power_classes(BaseSpectrum::qubit(0.5), N)));
        auto f = factorize_degenerate(merged);
        auto cost = lemma_cost(N, f);
        CHECK(plan.cbits <= cost.cbits);
        CHECK(plan.cbits == 0);
        CHECK(plan.singlets_consumed == N);
    }
}

TEST_CASE("plan input validation") {
    CHECK_THROWS(plan_dilution(BaseSpectrum::qubit(0.25), 0, 3.0));
    CHECK_THROWS(plan_dilution(BaseSpectrum::qubit(0.25), 10, 0.0));
    CHECK_THROWS(plan_dilution(BaseSpectrum::from_probs({0.5, 0.25, 0.25}), 10, 3.0));
}
