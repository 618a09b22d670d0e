#pragma once

#include <cstdint>
#include <string>

#include "ebitsim/transcript.hpp"

namespace ebitsim {

/// Resource counters derived from a completed protocol transcript.
struct ResourceLedger {
    std::int64_t ebits_consumed = 0;
    std::int64_t ebits_created = 0;
    std::int64_t cbits_sent = 0;
    std::int64_t qubits_sent = 0;
    std::int64_t qubits_teleported = 0;
    std::int64_t bits_via_densecoding = 0;

    static ResourceLedger from_transcript(const ProtocolTranscript& t) {
        ResourceLedger l;
        l.ebits_consumed = t.ebits_consumed;
        l.ebits_created = t.ebits_created;
        l.cbits_sent = t.cbits_sent();
        l.qubits_sent = t.qubits_sent();
        l.qubits_teleported = t.qubits_teleported;
        l.bits_via_densecoding = t.bits_via_densecoding;
        return l;
    }
};

struct CheckReport {
    std::string check;
    bool pass = false;
    std::string details;
};

/// Teleportation needs 1 ebit + 2 cbits per qubit moved.
CheckReport check_teleport_identity(const ResourceLedger& ledger);

/// Dense coding yields at most 2 bits per (ebit, qubit) pair.
CheckReport check_densecoding_identity(const ResourceLedger& ledger);

/// N qubits of quantum communication create at most N ebits.
CheckReport check_quantum_comm_bound(const ResourceLedger& ledger);

}  // namespace ebitsim
