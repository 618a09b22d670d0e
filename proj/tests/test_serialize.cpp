#include <doctest.h>

#include <algorithm>

#include "ebitsim/serialize.hpp"
#include "ebitsim/statevector.hpp"

using namespace ebitsim;

TEST_CASE("format_double is shortest round-trip and stable") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.0625) == "-0.0625");
    for (double v : {0.811278124459133, 1e-300, 3.0e21, 0.30000000000000004}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
        CHECK(format_double(v) == s);
    }
}

TEST_CASE("spectrum json schema") {
    auto spec = to_spectrum(tensor_power_classes(BaseSpectrum::qubit(0.25), 2));
    auto j = spectrum_to_json(spec);
    CHECK(j["mode"] == "log");
    REQUIRE(j["classes"].size() == 3);
    CHECK(j["classes"][0]["k"] == 0);
    CHECK(j["classes"][1]["multiplicity"] == "2");
    CHECK(j["classes"][1]["log2_weight"].get<double>() ==
          doctest::Approx(std::log2(0.1875)).epsilon(1e-12));
}

TEST_CASE("partition json and csv row") {
    const auto base = BaseSpectrum::qubit(0.25);
    auto part = classify(tensor_power_classes(base, 4), entropy(base), 1.0);
    auto j = partition_to_json(part);
    CHECK(j["N"] == 4);
    CHECK(j["labels"].size() == 5);
    CHECK(j["labels"][0]["typical"] == false);
    CHECK(j["labels"][2]["typical"] == true);
    CHECK(j["atypical_mass"].get<double>() == doctest::Approx(0.3203125));
    CHECK(partition_to_csv_row(part) == "4,1,3,0.3203125");
}

TEST_CASE("plan json carries big integers as decimal strings") {
    auto plan = plan_dilution(BaseSpectrum::qubit(0.25), 4, 1.0, PrecisionMode::Exact);
    auto j = plan_to_json(plan);
    CHECK(j["N"] == 4);
    CHECK(j["d"] == 0);
    CHECK(j["bin_size"] == "1");
    CHECK(j["delta_dim"] == "14");
    CHECK(j["cbits"] == 8);
    CHECK(j["singlets_consumed"] == 4);
    CHECK(j["mode"] == "exact");
    CHECK(j["fidelity"].get<double>() == doctest::Approx(87.0 / 128.0).epsilon(1e-12));
    REQUIRE(j["typical_classes"].size() == 3);
    CHECK(j["typical_classes"][0]["full_bins"] == "4");
    CHECK(j["typical_classes"][0]["discarded_terms"] == "0");
}

TEST_CASE("transcript json") {
    ProtocolTranscript t;
    teleport({0.6, 0.8}, t, 0);
    auto j = transcript_to_json(t);
    REQUIRE(j["messages"].size() == 1);
    CHECK(j["messages"][0]["direction"] == "A->B");
    CHECK(j["messages"][0]["kind"] == "classical");
    CHECK(j["messages"][0]["payload_bits"] == 2);
    CHECK(j["cbits_sent"] == 2);
    CHECK(j["ebits_consumed"] == 1);
}

TEST_CASE("ledger and report json") {
    ResourceLedger l;
    l.ebits_created = 2;
    l.qubits_sent = 1;
    auto report = check_quantum_comm_bound(l);
    auto j = report_to_json(report);
    CHECK(j["check"] == "quantum_comm_bound");
    CHECK(j["pass"] == false);
    CHECK(ledger_to_json(l)["ebits_created"] == 2);
}

TEST_CASE("sweep csv has the fixed header and LF endings") {
    auto rows = sweep(BaseSpectrum::qubit(0.25), {100, 1000}, 3.0);
    const std::string csv = sweep_to_csv(rows);
    CHECK(csv.rfind("N,c,S,d,delta_dim,cbits,singlets,fidelity,bits_per_ebit\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("\n100,3,") != std::string::npos);
    // byte-identical across repeated serialization
    CHECK(sweep_to_csv(sweep(BaseSpectrum::qubit(0.25), {100, 1000}, 3.0)) == csv);

    auto j = sweep_to_json(rows);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["N"] == 100);
    CHECK(j[1]["delta_dim"].is_string());
}

TEST_CASE("concentration csv and json") {
    auto dist = schmidt_projection_distribution(BaseSpectrum::qubit(0.25), 2);
    const std::string csv = concentration_to_csv(dist);
    CHECK(csv.rfind("k,probability,yield_ebits\n", 0) == 0);
    CHECK(csv.find("0,0.5625,0\n") != std::string::npos);
    CHECK(csv.find("1,0.375,1\n") != std::string::npos);
    auto j = concentration_to_json(dist);
    CHECK(j[1]["probability"].get<double>() == doctest::Approx(0.375));
    CHECK(j[1]["cbits"] == 0);
}
