#include "ebitsim/ledger.hpp"

#include <algorithm>
#include <sstream>

namespace ebitsim {

CheckReport check_teleport_identity(const ResourceLedger& ledger) {
    CheckReport report;
    report.check = "teleport_identity";
    const std::int64_t ebit_deficit = ledger.qubits_teleported - ledger.ebits_consumed;
    const std::int64_t cbit_deficit = 2 * ledger.qubits_teleported - ledger.cbits_sent;
    report.pass = ebit_deficit <= 0 && cbit_deficit <= 0;
    std::ostringstream os;
    if (report.pass) {
        os << "teleported " << ledger.qubits_teleported << " qubit(s) with "
           << ledger.ebits_consumed << " ebit(s) and " << ledger.cbits_sent << " cbit(s)";
    } else {
        if (ebit_deficit > 0) os << "ebit deficit of " << ebit_deficit << "; ";
        if (cbit_deficit > 0) os << "cbit deficit of " << cbit_deficit << "; ";
        os << "need 1 ebit + 2 cbits per teleported qubit";
    }
    report.details = os.str();
    return report;
}

CheckReport check_densecoding_identity(const ResourceLedger& ledger) {
    CheckReport report;
    report.check = "densecoding_identity";
    const std::int64_t capacity =
        2 * std::min(ledger.ebits_consumed, ledger.qubits_sent);
    report.pass = ledger.bits_via_densecoding <= capacity;
    std::ostringstream os;
    if (report.pass) {
        os << ledger.bits_via_densecoding << " bit(s) within the capacity of " << capacity;
    } else {
        os << "claimed " << ledger.bits_via_densecoding << " bit(s) but only " << capacity
           << " supported by " << ledger.ebits_consumed << " ebit(s) and " << ledger.qubits_sent
           << " qubit(s) sent";
    }
    report.details = os.str();
    return report;
}

CheckReport check_quantum_comm_bound(const ResourceLedger& ledger) {
    CheckReport report;
    report.check = "quantum_comm_bound";
    report.pass = ledger.ebits_created <= ledger.qubits_sent;
    std::ostringstream os;
    if (report.pass) {
        os << ledger.ebits_created << " ebit(s) created with " << ledger.qubits_sent
           << " qubit(s) of quantum communication";
    } else {
        os << "created " << ledger.ebits_created << " ebit(s) from only " << ledger.qubits_sent
           << " qubit(s) sent, excess of " << (ledger.ebits_created - ledger.qubits_sent);
    }
    report.details = os.str();
    return report;
}

}  // namespace ebitsim
