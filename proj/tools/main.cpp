// Command-line front end: single computations, sweeps, and circuit
// demos. All numerics live in the core library; this file only parses
// flags and formats output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ebitsim/concentration.hpp"
#include "ebitsim/dilution.hpp"
#include "ebitsim/ledger.hpp"
#include "ebitsim/scaling.hpp"
#include "ebitsim/serialize.hpp"
#include "ebitsim/spectra.hpp"
#include "ebitsim/statevector.hpp"
#include "ebitsim/typicality.hpp"

namespace {

using ebitsim::json;

struct CommonOpts {
    double a2 = -1.0;
    std::vector<double> probs;
    std::vector<std::int64_t> N_list;
    double c = 3.0;
    std::string mode = "log";
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_N = true) {
    cmd->add_option("--a2", opts.a2, "Larger-branch Schmidt probability a^2 of a|00>+b|11>")
        ->envname("EBITSIM_A2");
    cmd->add_option("--probs", opts.probs, "Full Schmidt probability list (overrides --a2)")
        ->delimiter(',')
        ->envname("EBITSIM_PROBS");
    if (with_N)
        cmd->add_option("--N", opts.N_list, "Copy count (comma list for sweeps)")
            ->delimiter(',')
            ->envname("EBITSIM_N");
    cmd->add_option("--c", opts.c, "Typicality window coefficient (multiplies sqrt(N))")
        ->envname("EBITSIM_C");
    cmd->add_option("--mode", opts.mode, "Arithmetic mode: exact|log")
        ->check(CLI::IsMember({"exact", "log"}))
        ->envname("EBITSIM_MODE");
    cmd->add_option("--seed", opts.seed, "RNG seed for sampling demos")->envname("EBITSIM_SEED");
    cmd->add_option("--format", opts.format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("EBITSIM_FORMAT");
    cmd->add_option("--out", opts.out_path, "Write output to PATH instead of stdout")
        ->envname("EBITSIM_OUT");
}

ebitsim::BaseSpectrum make_base(const CommonOpts& opts) {
    if (!opts.probs.empty()) return ebitsim::BaseSpectrum::from_probs(opts.probs);
    if (opts.a2 >= 0.0) return ebitsim::BaseSpectrum::qubit(opts.a2);
    throw CLI::ValidationError("--a2 or --probs is required");
}

std::int64_t single_N(const CommonOpts& opts) {
    if (opts.N_list.size() != 1)
        throw CLI::ValidationError("--N must be a single value for this command");
    return opts.N_list.front();
}

ebitsim::PrecisionMode mode_of(const CommonOpts& opts) {
    return opts.mode == "exact" ? ebitsim::PrecisionMode::Exact : ebitsim::PrecisionMode::Log;
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream f(opts.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + opts.out_path);
        f << text;
    }
}

int run_entropy(const CommonOpts& opts) {
    const double S = ebitsim::entropy(make_base(opts));
    if (opts.format == "json")
        emit(opts, json{{"entropy", S}}.dump());
    else
        emit(opts, ebitsim::format_double(S));
    return 0;
}

int run_dilute(const CommonOpts& opts) {
    auto plan = ebitsim::plan_dilution(make_base(opts), single_N(opts), opts.c, mode_of(opts));
    if (opts.format == "json") {
        emit(opts, ebitsim::plan_to_json(plan).dump(2));
    } else {
        auto rows = std::vector<ebitsim::SweepRow>{{plan.N, plan.c, plan.S, plan.d,
                                                    plan.delta_dim, plan.cbits,
                                                    plan.singlets_consumed,
                                                    ebitsim::fidelity(plan),
                                                    plan.bits_per_ebit}};
        emit(opts, ebitsim::sweep_to_csv(rows));
    }
    return 0;
}

int run_concentrate(const CommonOpts& opts, std::size_t samples) {
    const auto base = make_base(opts);
    const auto N = single_N(opts);
    auto dist = ebitsim::schmidt_projection_distribution(base, N);
    if (opts.format == "csv") {
        emit(opts, ebitsim::concentration_to_csv(dist));
    } else {
        json out{{"distribution", ebitsim::concentration_to_json(dist)},
                 {"expected_yield_per_copy", ebitsim::expected_yield(base, N)}};
        if (samples > 0) {
            ebitsim::ProtocolTranscript t;
            auto drawn = ebitsim::sample_outcomes(base, N, samples, opts.seed, t);
            json s = json::array();
            for (const auto& d : drawn) s.push_back({{"alice_k", d.alice_k}, {"bob_k", d.bob_k}});
            out["samples"] = s;
            out["transcript"] = ebitsim::transcript_to_json(t);
        }
        emit(opts, out.dump(2));
    }
    return 0;
}

int run_sweep(const CommonOpts& opts) {
    if (opts.N_list.empty()) throw CLI::ValidationError("--N list is required");
    const auto base = make_base(opts);
    auto rows = ebitsim::sweep(base, opts.N_list, opts.c);

    std::vector<std::pair<double, double>> points;
    for (const auto& r : rows)
        if (r.bits_per_ebit > 0.0)
            points.emplace_back(static_cast<double>(r.N), r.bits_per_ebit);

    if (opts.format == "csv") {
        emit(opts, ebitsim::sweep_to_csv(rows));
        if (points.size() >= 2) {
            auto fit = ebitsim::fit_log2_slope(points);
            std::cerr << "# fitted slope of log2(bits_per_ebit) vs log2(N): "
                      << ebitsim::format_double(fit.slope) << '\n';
        }
    } else {
        json out{{"rows", ebitsim::sweep_to_json(rows)}};
        if (points.size() >= 2) {
            auto fit = ebitsim::fit_log2_slope(points);
            out["fit"] = {{"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"residuals", fit.residuals}};
        }
        emit(opts, out.dump(2));
    }
    return 0;
}

int run_teleport_demo(const CommonOpts& opts) {
    ebitsim::ProtocolTranscript transcript;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double theta = uni(rng) * 3.14159265358979323846;
    ebitsim::QubitState in{std::cos(theta), std::sin(theta)};

    json branches = json::array();
    for (int branch = 0; branch < 4; ++branch) {
        auto out = ebitsim::teleport(in, transcript, branch);
        branches.push_back({{"branch", branch},
                            {"output_zero_re", out.zero.real()},
                            {"output_one_re", out.one.real()}});
    }
    auto ledger = ebitsim::ResourceLedger::from_transcript(transcript);
    json out{{"input_zero", in.zero.real()},
             {"input_one", in.one.real()},
             {"branches", branches},
             {"transcript", ebitsim::transcript_to_json(transcript)},
             {"checks",
              {ebitsim::report_to_json(ebitsim::check_teleport_identity(ledger)),
               ebitsim::report_to_json(ebitsim::check_quantum_comm_bound(ledger))}}};
    emit(opts, out.dump(2));
    return 0;
}

int run_densecode_demo(const CommonOpts& opts) {
    ebitsim::ProtocolTranscript transcript;
    json rounds = json::array();
    bool all_ok = true;
    for (int hi = 0; hi < 2; ++hi)
        for (int lo = 0; lo < 2; ++lo) {
            auto [dhi, dlo] = ebitsim::dense_code(hi, lo, transcript);
            all_ok = all_ok && dhi == hi && dlo == lo;
            rounds.push_back({{"sent", {hi, lo}}, {"decoded", {dhi, dlo}}});
        }
    auto ledger = ebitsim::ResourceLedger::from_transcript(transcript);
    json out{{"rounds", rounds},
             {"all_decoded", all_ok},
             {"transcript", ebitsim::transcript_to_json(transcript)},
             {"checks",
              {ebitsim::report_to_json(ebitsim::check_densecoding_identity(ledger)),
               ebitsim::report_to_json(ebitsim::check_quantum_comm_bound(ledger))}}};
    emit(opts, out.dump(2));
    return 0;
}

int run_lemma_demo(const CommonOpts& opts, std::int64_t n, std::uint64_t scramble_seed,
                   bool scramble) {
    const double a2 = opts.a2 >= 0.0 ? opts.a2 : 0.8;
    // Pi = Phi^(n-1) (x) (sqrt(a2)|00> + sqrt(1-a2)|11>)
    ebitsim::DenseState gamma = ebitsim::build_psi_n(ebitsim::BaseSpectrum::qubit(a2), 1);
    ebitsim::DenseState pi = gamma;
    if (n > 1) {
        const int total = 2 * static_cast<int>(n);
        std::vector<ebitsim::Complex> amp(std::size_t(1) << total);
        const double r = std::exp2(-static_cast<double>(n - 1) / 2.0);
        // Alice qubits 0..n-1: qubit 0 = gamma half, 1..n-1 = singlet halves
        for (std::size_t s = 0; s < (std::size_t(1) << (n - 1)); ++s)
            for (int g = 0; g < 2; ++g) {
                const double coeff = (g == 0 ? std::sqrt(a2) : std::sqrt(1.0 - a2)) * r;
                const std::size_t a_bits = static_cast<std::size_t>(g) | (s << 1);
                const std::size_t x = a_bits | (a_bits << n);
                amp[x] = coeff;
            }
        std::vector<int> alice;
        for (int q = 0; q < n; ++q) alice.push_back(q);
        pi = ebitsim::DenseState::from_amplitudes(std::move(amp), alice);
    }
    if (scramble) pi = ebitsim::scramble_bilocal(pi, scramble_seed);

    ebitsim::ProtocolTranscript transcript;
    auto result = ebitsim::lemma_demo(pi, n, transcript, opts.seed);
    auto ledger = ebitsim::ResourceLedger::from_transcript(transcript);
    json out{{"n", n},
             {"r", result.factorization.r},
             {"gamma_dim", ebitsim::to_decimal_string(result.factorization.gamma_dim)},
             {"fidelity", result.fidelity},
             {"cbits", result.cbits},
             {"transcript", ebitsim::transcript_to_json(transcript)},
             {"checks",
              {ebitsim::report_to_json(ebitsim::check_teleport_identity(ledger)),
               ebitsim::report_to_json(ebitsim::check_quantum_comm_bound(ledger))}}};
    emit(opts, out.dump(2));
    return 0;
}

int run_oracle_check(const CommonOpts& opts) {
    const auto base = make_base(opts);
    const auto N = single_N(opts);
    auto classes = ebitsim::tensor_power_classes(base, N);
    auto dense = ebitsim::schmidt_spectrum_dense(ebitsim::build_psi_n(base, N));

    // compare nonzero classes, largest weight first
    std::vector<std::pair<double, ebitsim::BigInt>> expected;
    for (const auto& tc : classes)
        if (std::isfinite(tc.log2_weight) &&
            (base.probs[0] > 0.0 || tc.k == 0) && (base.probs[1] > 0.0 || tc.k == N))
            expected.emplace_back(tc.log2_weight, tc.multiplicity);
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    double max_dev = 0.0;
    bool ok = dense.classes.size() == expected.size();
    if (ok)
        for (std::size_t i = 0; i < expected.size(); ++i) {
            max_dev = std::max(max_dev, std::abs(std::exp2(dense.classes[i].log2_weight) -
                                                 std::exp2(expected[i].first)));
            ok = ok && dense.classes[i].multiplicity == expected[i].second;
        }
    ok = ok && max_dev <= 1e-10;

    json out{{"N", N},
             {"classes_expected", expected.size()},
             {"classes_dense", dense.classes.size()},
             {"max_weight_deviation", max_dev},
             {"pass", ok}};
    emit(opts, out.dump(2));
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic simulator for entanglement concentration and dilution "
                 "with classical-communication accounting"};
    app.require_subcommand(1);

    CommonOpts entropy_opts, dilute_opts, conc_opts, sweep_opts, tele_opts, dense_opts,
        lemma_opts, oracle_opts;
    std::size_t conc_samples = 0;
    std::int64_t lemma_n = 2;
    std::uint64_t scramble_seed = 0;
    bool lemma_scramble = false;

    add_common(app.add_subcommand("entropy", "Entanglement entropy of a base spectrum"),
               entropy_opts, false);
    add_common(app.add_subcommand("dilute", "Plan the binned dilution of psi^N"), dilute_opts);
    auto* conc = app.add_subcommand("concentrate", "Schmidt-projection outcome distribution");
    add_common(conc, conc_opts);
    conc->add_option("--samples", conc_samples, "Also draw this many seeded outcome samples");
    add_common(app.add_subcommand("sweep", "Dilution cost table over a list of N"), sweep_opts);
    add_common(app.add_subcommand("teleport-demo", "Teleport a random qubit, all 4 branches"),
               tele_opts, false);
    add_common(app.add_subcommand("densecode-demo", "Send all four 2-bit messages"), dense_opts,
               false);
    auto* lemma = app.add_subcommand("lemma-demo",
                                     "Share a degenerate state, teleporting only its residual");
    add_common(lemma, lemma_opts, false);
    lemma->add_option("--n", lemma_n, "Singlets shared / qubits per side");
    lemma->add_option("--scramble-seed", scramble_seed, "Seed for bi-local scrambling")
        ->expected(1);
    lemma->add_flag("--scramble", lemma_scramble, "Scramble Pi by bi-local unitaries first");
    add_common(app.add_subcommand("oracle-check",
                                  "Compare tensor-power classes against the dense oracle"),
               oracle_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("entropy")) return run_entropy(entropy_opts);
        if (app.got_subcommand("dilute")) return run_dilute(dilute_opts);
        if (app.got_subcommand("concentrate")) return run_concentrate(conc_opts, conc_samples);
        if (app.got_subcommand("sweep")) return run_sweep(sweep_opts);
        if (app.got_subcommand("teleport-demo")) return run_teleport_demo(tele_opts);
        if (app.got_subcommand("densecode-demo")) return run_densecode_demo(dense_opts);
        if (app.got_subcommand("lemma-demo"))
            return run_lemma_demo(lemma_opts, lemma_n, scramble_seed, lemma_scramble);
        if (app.got_subcommand("oracle-check")) return run_oracle_check(oracle_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
