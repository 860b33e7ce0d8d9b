#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dtn::netsim {

using NodeId = int;
using MessageId = std::int64_t;
using InterfaceId = int;

constexpr int kMaxInterfaces = 4;

enum class Role { Honest, BlackHole, Flooder };
std::string_view toString(Role role);

struct RadioInterface {
    std::string name;
    double range = 0.0;      // metres
    double bandwidth = 0.0;  // bytes per second
    bool vehicleOnly = false;
};

// Bluetooth: 15 m at 250 kB/s. High-speed: 100 m at 10 MB/s.
RadioInterface bluetooth();
RadioInterface highSpeed();

struct NodeSpec {
    NodeId id = 0;
    Role role = Role::Honest;
    std::string movementClass;
    std::vector<InterfaceId> interfaces;
    double bufferCapacity = 0.0;  // bytes
};

struct Message {
    MessageId id = 0;
    NodeId source = 0;
    NodeId destination = 0;
    double size = 0.0;
    double createdAt = 0.0;
    double ttl = 0.0;
    bool honest = true;
};

enum class MessageFate { Live, Delivered, DroppedByBlackHole, Expired, DroppedAtSource };

struct ContactEvent {
    NodeId nodeA = 0;  // nodeA < nodeB
    NodeId nodeB = 0;
    double start = 0.0;
    double end = 0.0;
    InterfaceId interface = 0;
    bool operator==(const ContactEvent&) const = default;
};

enum class TraceKind { Create, TransferStart, Relay, Deliver, BlackHoleDrop, Expire, Abort, Reject, SourceDrop };
std::string_view toString(TraceKind kind);

struct TraceEvent {
    double time = 0.0;
    TraceKind kind = TraceKind::Create;
    NodeId nodeA = -1;
    NodeId nodeB = -1;
    MessageId message = -1;
    bool operator==(const TraceEvent&) const = default;
};

struct SimResult {
    std::int64_t honestCreated = 0;
    std::int64_t honestDelivered = 0;
    std::vector<double> deliveryLatencies;  // honest messages, delivery order
    std::vector<MessageId> deliveredIds;    // honest messages, delivery order
    double ddr = 1.0;
    double meanLatency = 0.0;

    std::int64_t floodCreated = 0;
    std::int64_t floodDelivered = 0;
    std::int64_t droppedByBlackhole = 0;  // all messages
    std::int64_t honestDroppedByBlackhole = 0;
    std::int64_t expired = 0;
    std::int64_t droppedAtSource = 0;
    std::int64_t rejectedTransfers = 0;
    std::int64_t abortedTransfers = 0;

    std::vector<ContactEvent> contactTrace;  // filled when recording contacts
    std::vector<TraceEvent> events;          // filled when recording events

    bool operator==(const SimResult&) const = default;
};

}  // namespace dtn::netsim
