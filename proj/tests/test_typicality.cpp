#include <doctest.h>

#include "ebitsim/typicality.hpp"
#include "oracles.hpp"

using namespace ebitsim;

namespace {

TypicalityPartition classify_base(double a2, std::int64_t N, double c) {
    const auto base = BaseSpectrum::qubit(a2);
    return classify(tensor_power_classes(base, N), entropy(base), c);
}

}  // namespace

TEST_CASE("wide window marks everything typical") {
    auto part = classify_base(0.25, 4, 10.0);
    for (bool t : part.typical) CHECK(t);
    CHECK(part.atypical_mass == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(atypical_mass(part) == part.atypical_mass);
}

TEST_CASE("a2=0.25 N=4 c=1: typical {1,2,3}, atypical mass 0.3203125") {
    auto part = classify_base(0.25, 4, 1.0);
    REQUIRE(part.typical.size() == 5);
    CHECK_FALSE(part.typical[0]);
    CHECK(part.typical[1]);
    CHECK(part.typical[2]);
    CHECK(part.typical[3]);
    CHECK_FALSE(part.typical[4]);
    // 0.75^4 + 0.25^4
    CHECK(part.atypical_mass == doctest::Approx(0.3203125).epsilon(1e-12));
    CHECK(part.typical_mass + part.atypical_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a2=0.25 N=10^4 c=3: small atypical mass, matches direct summation") {
    const double S = entropy(BaseSpectrum::qubit(0.25));
    auto part = classify_base(0.25, 10000, 3.0);
    CHECK(part.atypical_mass < 1e-4);
    const double NS = 10000.0 * S;
    const double w = 3.0 * std::sqrt(10000.0);
    const auto ref = oracles::direct_mass(0.25, 10000, [&](std::int64_t, double log2C) {
        return log2C < NS - w || log2C > NS + w;
    });
    CHECK(part.atypical_mass ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-6));
}

TEST_CASE("a2=0.25 N=100 c=1: nontrivial mass, matches direct summation") {
    const double S = entropy(BaseSpectrum::qubit(0.25));
    auto part = classify_base(0.25, 100, 1.0);
    CHECK(part.atypical_mass > 0.0);
    CHECK(part.atypical_mass < 0.5);
    const double NS = 100.0 * S;
    const auto ref = oracles::direct_mass(0.25, 100, [&](std::int64_t, double log2C) {
        return log2C < NS - 10.0 || log2C > NS + 10.0;
    });
    CHECK(part.atypical_mass == doctest::Approx(static_cast<double>(ref)).epsilon(1e-9));
}

TEST_CASE("monotonicity in c: larger windows never lose typical classes") {
    for (double a2 : {0.15, 0.25, 0.4, 0.6}) {
        for (std::int64_t N : {10, 50, 200}) {
            const auto base = BaseSpectrum::qubit(a2);
            auto classes = tensor_power_classes(base, N);
            const double S = entropy(base);
            double prev_mass = 2.0;
            TypicalityPartition prev;
            bool have_prev = false;
            for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
                auto part = classify(classes, S, c);
                CHECK(part.atypical_mass <= prev_mass + 1e-15);
                if (have_prev) {
                    for (std::size_t k = 0; k < part.typical.size(); ++k)
                        if (prev.typical[k]) CHECK(part.typical[k]);
                }
                prev_mass = part.atypical_mass;
                prev = part;
                have_prev = true;
            }
        }
    }
}

TEST_CASE("atypical mass decays strictly along N = 10^2, 10^3, 10^4") {
    const double m100 = classify_base(0.25, 100, 3.0).atypical_mass;
    const double m1000 = classify_base(0.25, 1000, 3.0).atypical_mass;
    const double m10000 = classify_base(0.25, 10000, 3.0).atypical_mass;
    CHECK(m100 > m1000);
    CHECK(m1000 > m10000);
    CHECK(m10000 > 0.0);
}

TEST_CASE("uniform base still classifies per k") {
    auto part = classify_base(0.5, 8, 1.0);
    CHECK(part.typical.size() == 9);
    CHECK(part.typical_mass + part.atypical_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("classification rejects bad input") {
    CHECK_THROWS(classify({}, 1.0, 1.0));
    CHECK_THROWS(classify_base(0.25, 4, 0.0));
}
