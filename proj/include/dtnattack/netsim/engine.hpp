#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "dtnattack/netsim/types.hpp"

namespace dtn::netsim {

/// A radio link live during the current tick. a < b.
struct Link {
    NodeId a = 0;
    NodeId b = 0;
    InterfaceId interface = 0;
    auto operator<=>(const Link&) const = default;
};

struct MessageRecord {
    Message message;
    MessageFate fate = MessageFate::Live;
    double deliveredAt = 0.0;
    std::uint64_t arrivalSeq = 0;  // orders each node's buffer FIFO
};

struct Transfer {
    MessageId message = 0;
    NodeId from = 0;
    NodeId to = 0;
    InterfaceId interface = 0;
    double startedAt = 0.0;
    double duration = 0.0;
    double remaining = 0.0;  // seconds of link time still needed
};

struct NodeState {
    NodeSpec spec;
    std::uint8_t interfaceMask = 0;
    std::vector<MessageId> buffer;  // FIFO; excludes messages being sent
    double used = 0.0;              // bytes held, including outgoing transfers
    double reserved = 0.0;          // bytes promised to incoming transfers
    std::array<int, kMaxInterfaces> outgoing{-1, -1, -1, -1};  // index into transfers
};

/// Complete mutable network state, exposed read-only to tick observers.
struct NetworkState {
    double time = 0.0;
    std::vector<NodeState> nodes;
    std::vector<MessageRecord> messages;  // index == MessageId
    std::vector<Transfer> transfers;      // in flight
};

using TickObserver = std::function<void(const NetworkState&)>;

/// A message to create this tick.
struct Injection {
    NodeId source = 0;
    NodeId destination = 0;
    double size = 0.0;
    bool honest = true;
};

/// First Contact forwarding over externally supplied per-tick links.
///
/// Each step: abort transfers whose link broke, purge expired messages,
/// create injections, let every node start at most one transfer per free
/// interface, then advance transfers by one tick. Direct delivery is tried
/// first; otherwise the buffer head goes to a uniformly random contact on
/// that interface. Contact choices are keyed on (seed, message, node, tick,
/// interface), so one message's fate does not shift another's draws.
class Engine {
public:
    Engine(std::vector<NodeSpec> nodes, std::vector<RadioInterface> interfaces, double tick, double ttl,
           std::uint64_t seed, bool recordEvents);

    /// `links` must be sorted and deduplicated; `tickIndex` numbers ticks.
    void step(std::int64_t tickIndex, double time, const std::vector<Link>& links,
              const std::vector<Injection>& injections);

    const NetworkState& state() const { return state_; }
    SimResult result() const;

private:
    void abortBrokenTransfers(const std::vector<Link>& links);
    void purgeExpired();
    void inject(const Injection& inj);
    void forward(std::int64_t tickIndex);
    void progressTransfers();
    bool startTransfer(NodeId from, NodeId to, InterfaceId iface, MessageId m);
    void returnToBuffer(NodeId node, MessageId m);
    void trace(TraceKind kind, NodeId a, NodeId b, MessageId m, double time);
    bool canFinishInTime(const Message& m, InterfaceId iface) const;
    void countDestination(NodeId holder, MessageId m, int delta);
    int destinationCount(NodeId holder, NodeId dest) const;

    std::vector<RadioInterface> interfaces_;
    double tick_;
    double ttl_;
    std::uint64_t seed_;
    bool recordEvents_;
    std::uint64_t nextArrival_ = 0;

    NetworkState state_;
    // neighbours_[node * kMaxInterfaces + iface], rebuilt every step
    std::vector<std::vector<NodeId>> neighbours_;
    std::vector<std::size_t> touched_;
    std::size_t oldestLive_ = 0;
    std::vector<int> destCount_;  // [holder * n + destination], buffered messages

    SimResult stats_;
};

}  // namespace dtn::netsim
