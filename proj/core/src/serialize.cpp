#include "ebitsim/serialize.hpp"

#include <charconv>
#include <sstream>

namespace ebitsim {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

json spectrum_to_json(const SchmidtSpectrum& spectrum) {
    json classes = json::array();
    for (const auto& c : spectrum.classes) {
        classes.push_back({{"k", c.k},
                           {"log2_weight", c.log2_weight},
                           {"multiplicity", to_decimal_string(c.multiplicity)}});
    }
    return {{"classes", classes},
            {"mode", spectrum.mode == PrecisionMode::Exact ? "exact" : "log"}};
}

json partition_to_json(const TypicalityPartition& partition) {
    json labels = json::array();
    for (std::size_t k = 0; k < partition.typical.size(); ++k)
        labels.push_back({{"k", k}, {"typical", static_cast<bool>(partition.typical[k])}});
    return {{"N", partition.N},
            {"S", partition.S},
            {"c", partition.c},
            {"labels", labels},
            {"typical_mass", partition.typical_mass},
            {"atypical_mass", partition.atypical_mass}};
}

std::string partition_to_csv_row(const TypicalityPartition& partition) {
    std::int64_t typical_count = 0;
    for (bool t : partition.typical) typical_count += t ? 1 : 0;
    std::ostringstream os;
    os << partition.N << ',' << format_double(partition.c) << ',' << typical_count << ','
       << format_double(partition.atypical_mass);
    return os.str();
}

json plan_to_json(const DilutionPlan& plan) {
    json typical = json::array();
    for (std::size_t i = 0; i < plan.typical_k.size(); ++i) {
        typical.push_back({{"k", plan.typical_k[i]},
                           {"log2_weight", plan.log2_weight_k[i]},
                           {"full_bins", to_decimal_string(plan.full_bins_k[i])},
                           {"discarded_terms", to_decimal_string(plan.discarded_terms_k[i])}});
    }
    return {{"N", plan.N},
            {"c", plan.c},
            {"S", plan.S},
            {"d", plan.d},
            {"bin_size", to_decimal_string(plan.bin_size)},
            {"typical_classes", typical},
            {"atypical_mass", plan.atypical_mass},
            {"u1_norm_sq", plan.u1_norm_sq},
            {"u2_norm_sq", plan.u2_norm_sq},
            {"delta_dim", to_decimal_string(plan.delta_dim)},
            {"cbits", plan.cbits},
            {"singlets_consumed", plan.singlets_consumed},
            {"bits_per_ebit", plan.bits_per_ebit},
            {"fidelity", plan.u1_norm_sq},
            {"trivial", plan.trivial},
            {"degenerate_fast_path", plan.degenerate_fast_path},
            {"mode", plan.mode == PrecisionMode::Exact ? "exact" : "log"}};
}

json transcript_to_json(const ProtocolTranscript& transcript) {
    json messages = json::array();
    for (const auto& m : transcript.messages) {
        messages.push_back(
            {{"direction", m.direction == Direction::AliceToBob ? "A->B" : "B->A"},
             {"payload_bits", m.payload_bits},
             {"kind", m.kind == MessageKind::Classical ? "classical" : "quantum"}});
    }
    return {{"messages", messages},
            {"cbits_sent", transcript.cbits_sent()},
            {"qubits_sent", transcript.qubits_sent()},
            {"ebits_consumed", transcript.ebits_consumed},
            {"ebits_created", transcript.ebits_created},
            {"qubits_teleported", transcript.qubits_teleported},
            {"bits_via_densecoding", transcript.bits_via_densecoding}};
}

json report_to_json(const CheckReport& report) {
    return {{"check", report.check}, {"pass", report.pass}, {"details", report.details}};
}

json ledger_to_json(const ResourceLedger& ledger) {
    return {{"ebits_consumed", ledger.ebits_consumed},
            {"ebits_created", ledger.ebits_created},
            {"cbits_sent", ledger.cbits_sent},
            {"qubits_sent", ledger.qubits_sent},
            {"qubits_teleported", ledger.qubits_teleported},
            {"bits_via_densecoding", ledger.bits_via_densecoding}};
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "N,c,S,d,delta_dim,cbits,singlets,fidelity,bits_per_ebit\n";
    for (const auto& r : rows) {
        os << r.N << ',' << format_double(r.c) << ',' << format_double(r.S) << ',' << r.d << ','
           << to_decimal_string(r.delta_dim) << ',' << r.cbits << ',' << r.singlets << ','
           << format_double(r.fidelity) << ',' << format_double(r.bits_per_ebit) << '\n';
    }
    return os.str();
}

json sweep_to_json(const std::vector<SweepRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"N", r.N},
                       {"c", r.c},
                       {"S", r.S},
                       {"d", r.d},
                       {"delta_dim", to_decimal_string(r.delta_dim)},
                       {"cbits", r.cbits},
                       {"singlets", r.singlets},
                       {"fidelity", r.fidelity},
                       {"bits_per_ebit", r.bits_per_ebit}});
    }
    return out;
}

std::string concentration_to_csv(const std::vector<ConcentrationOutcome>& outcomes) {
    std::ostringstream os;
    os << "k,probability,yield_ebits\n";
    for (const auto& o : outcomes)
        os << o.k << ',' << format_double(o.probability) << ',' << format_double(o.yield_ebits)
           << '\n';
    return os.str();
}

json concentration_to_json(const std::vector<ConcentrationOutcome>& outcomes) {
    json out = json::array();
    for (const auto& o : outcomes)
        out.push_back({{"k", o.k},
                       {"probability", o.probability},
                       {"yield_ebits", o.yield_ebits},
                       {"cbits", o.cbits}});
    return out;
}

}  // namespace ebitsim
