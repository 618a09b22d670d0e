#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ebitsim {

enum class MessageKind { Classical, Quantum };

enum class Direction { AliceToBob, BobToAlice };

struct Message {
    Direction direction = Direction::AliceToBob;
    std::int64_t payload_bits = 0;
    MessageKind kind = MessageKind::Classical;
};

/// Ordered record of everything exchanged during a protocol run, plus
/// the entanglement bookkeeping the messages alone cannot carry.
struct ProtocolTranscript {
    std::vector<Message> messages;
    std::int64_t ebits_consumed = 0;
    std::int64_t ebits_created = 0;
    std::int64_t qubits_teleported = 0;
    std::int64_t bits_via_densecoding = 0;

    std::int64_t cbits_sent() const {
        std::int64_t total = 0;
        for (const auto& m : messages)
            if (m.kind == MessageKind::Classical) total += m.payload_bits;
        return total;
    }
    std::int64_t qubits_sent() const {
        std::int64_t total = 0;
        for (const auto& m : messages)
            if (m.kind == MessageKind::Quantum) total += m.payload_bits;
        return total;
    }
    std::int64_t classical_message_count() const {
        std::int64_t n = 0;
        for (const auto& m : messages)
            if (m.kind == MessageKind::Classical) ++n;
        return n;
    }

    void record_classical(Direction dir, std::int64_t bits) {
        messages.push_back({dir, bits, MessageKind::Classical});
    }
    void record_quantum(Direction dir, std::int64_t qubits) {
        messages.push_back({dir, qubits, MessageKind::Quantum});
    }
};

}  // namespace ebitsim
