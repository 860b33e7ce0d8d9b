#include "dtnattack/netsim/engine.hpp"

#include <algorithm>
#include <numeric>
#include <span>

#include "dtnattack/common/error.hpp"
#include "dtnattack/common/random.hpp"

namespace dtn::netsim {

namespace {

constexpr double kEpsilon = 1e-9;
constexpr std::uint64_t kForwardSalt = 0x6677;

}  // namespace

std::string_view toString(Role role) {
    switch (role) {
        case Role::Honest:
            return "honest";
        case Role::BlackHole:
            return "blackhole";
        case Role::Flooder:
            return "flooder";
    }
    return "unknown";
}

std::string_view toString(TraceKind kind) {
    switch (kind) {
        case TraceKind::Create:
            return "create";
        case TraceKind::TransferStart:
            return "transfer-start";
        case TraceKind::Relay:
            return "relay";
        case TraceKind::Deliver:
            return "deliver";
        case TraceKind::BlackHoleDrop:
            return "blackhole-drop";
        case TraceKind::Expire:
            return "expire";
        case TraceKind::Abort:
            return "abort";
        case TraceKind::Reject:
            return "reject";
        case TraceKind::SourceDrop:
            return "source-drop";
    }
    return "unknown";
}

RadioInterface bluetooth() { return {"bluetooth", 15.0, 250'000.0, false}; }
RadioInterface highSpeed() { return {"highspeed", 100.0, 10'000'000.0, true}; }

Engine::Engine(std::vector<NodeSpec> nodes, std::vector<RadioInterface> interfaces, double tick, double ttl,
               std::uint64_t seed, bool recordEvents)
    : interfaces_(std::move(interfaces)), tick_(tick), ttl_(ttl), seed_(seed), recordEvents_(recordEvents) {
    if (interfaces_.size() > kMaxInterfaces) throw ValidationError("too many radio interfaces");
    for (const auto& iface : interfaces_)
        if (!(iface.range > 0.0) || !(iface.bandwidth > 0.0))
            throw ValidationError("interface " + iface.name + " needs positive range and bandwidth");
    if (!(tick_ > 0.0)) throw ValidationError("tick must be positive");
    if (!(ttl_ > 0.0)) throw ValidationError("ttl must be positive");

    state_.nodes.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto& spec = nodes[i];
        if (spec.id != static_cast<NodeId>(i)) throw ValidationError("node ids must be 0..n-1 in order");
        NodeState st;
        for (const auto iface : spec.interfaces) {
            if (iface < 0 || iface >= static_cast<int>(interfaces_.size()))
                throw ValidationError("node " + std::to_string(i) + " uses an unknown interface");
            st.interfaceMask |= static_cast<std::uint8_t>(1u << iface);
        }
        std::sort(spec.interfaces.begin(), spec.interfaces.end());
        st.spec = std::move(spec);
        state_.nodes.push_back(std::move(st));
    }
    neighbours_.resize(state_.nodes.size() * kMaxInterfaces);
    destCount_.assign(state_.nodes.size() * state_.nodes.size(), 0);
}

void Engine::trace(TraceKind kind, NodeId a, NodeId b, MessageId m, double time) {
    if (recordEvents_) stats_.events.push_back({time, kind, a, b, m});
}

void Engine::countDestination(NodeId holder, MessageId m, int delta) {
    const auto dest = state_.messages[static_cast<std::size_t>(m)].message.destination;
    destCount_[static_cast<std::size_t>(holder) * state_.nodes.size() + static_cast<std::size_t>(dest)] += delta;
}

int Engine::destinationCount(NodeId holder, NodeId dest) const {
    return destCount_[static_cast<std::size_t>(holder) * state_.nodes.size() + static_cast<std::size_t>(dest)];
}

bool Engine::canFinishInTime(const Message& m, InterfaceId iface) const {
    const double duration = m.size / interfaces_[static_cast<std::size_t>(iface)].bandwidth;
    return state_.time + duration <= m.createdAt + m.ttl + kEpsilon;
}

void Engine::step(std::int64_t tickIndex, double time, const std::vector<Link>& links,
                  const std::vector<Injection>& injections) {
    state_.time = time;
    for (const auto i : touched_) neighbours_[i].clear();
    touched_.clear();
    // Links are sorted by (a, b), so every list below fills in ascending order.
    for (const auto& l : links) {
        for (const auto [self, other] : {std::pair{l.a, l.b}, std::pair{l.b, l.a}}) {
            const auto i = static_cast<std::size_t>(self) * kMaxInterfaces + static_cast<std::size_t>(l.interface);
            if (neighbours_[i].empty()) touched_.push_back(i);
            neighbours_[i].push_back(other);
        }
    }

    abortBrokenTransfers(links);
    purgeExpired();
    for (const auto& inj : injections) inject(inj);
    forward(tickIndex);
    progressTransfers();
}

void Engine::returnToBuffer(NodeId node, MessageId m) {
    auto& buf = state_.nodes[static_cast<std::size_t>(node)].buffer;
    const auto seq = state_.messages[static_cast<std::size_t>(m)].arrivalSeq;
    const auto at = std::lower_bound(buf.begin(), buf.end(), seq, [&](MessageId x, std::uint64_t s) {
        return state_.messages[static_cast<std::size_t>(x)].arrivalSeq < s;
    });
    buf.insert(at, m);
    countDestination(node, m, +1);
}

void Engine::abortBrokenTransfers(const std::vector<Link>& links) {
    std::vector<Transfer> kept;
    kept.reserve(state_.transfers.size());
    for (const auto& t : state_.transfers) {
        const Link key{std::min(t.from, t.to), std::max(t.from, t.to), t.interface};
        if (std::binary_search(links.begin(), links.end(), key)) {
            kept.push_back(t);
            continue;
        }
        // Partial data is discarded; the sender keeps its copy.
        auto& to = state_.nodes[static_cast<std::size_t>(t.to)];
        to.reserved -= state_.messages[static_cast<std::size_t>(t.message)].message.size;
        returnToBuffer(t.from, t.message);
        ++stats_.abortedTransfers;
        trace(TraceKind::Abort, t.from, t.to, t.message, state_.time);
    }
    state_.transfers = std::move(kept);
    for (auto& n : state_.nodes) n.outgoing.fill(-1);
    for (std::size_t i = 0; i < state_.transfers.size(); ++i) {
        const auto& t = state_.transfers[i];
        state_.nodes[static_cast<std::size_t>(t.from)].outgoing[static_cast<std::size_t>(t.interface)] =
            static_cast<int>(i);
    }
}

void Engine::purgeExpired() {
    // Every message shares one TTL, so nothing expires before the oldest
    // live message does.
    auto& msgs = state_.messages;
    while (oldestLive_ < msgs.size() && msgs[oldestLive_].fate != MessageFate::Live) ++oldestLive_;
    if (oldestLive_ == msgs.size() || state_.time - msgs[oldestLive_].message.createdAt < ttl_ - kEpsilon) return;
    for (auto& node : state_.nodes) {
        auto& buf = node.buffer;
        auto keep = buf.begin();
        for (auto it = buf.begin(); it != buf.end(); ++it) {
            auto& rec = state_.messages[static_cast<std::size_t>(*it)];
            if (state_.time - rec.message.createdAt >= rec.message.ttl - kEpsilon) {
                rec.fate = MessageFate::Expired;
                node.used -= rec.message.size;
                countDestination(node.spec.id, *it, -1);
                ++stats_.expired;
                trace(TraceKind::Expire, node.spec.id, -1, rec.message.id, state_.time);
            } else {
                *keep++ = *it;
            }
        }
        buf.erase(keep, buf.end());
    }
}

void Engine::inject(const Injection& inj) {
    const auto n = static_cast<NodeId>(state_.nodes.size());
    if (inj.source < 0 || inj.source >= n || inj.destination < 0 || inj.destination >= n ||
        inj.source == inj.destination)
        throw ValidationError("injection with invalid endpoints");
    if (!(inj.size > 0.0)) throw ValidationError("message size must be positive");

    const auto id = static_cast<MessageId>(state_.messages.size());
    MessageRecord rec;
    rec.message = {id, inj.source, inj.destination, inj.size, state_.time, ttl_, inj.honest};
    rec.arrivalSeq = nextArrival_++;
    auto& src = state_.nodes[static_cast<std::size_t>(inj.source)];
    (inj.honest ? stats_.honestCreated : stats_.floodCreated) += 1;
    trace(TraceKind::Create, inj.source, inj.destination, id, state_.time);
    if (src.used + src.reserved + inj.size > src.spec.bufferCapacity + kEpsilon) {
        rec.fate = MessageFate::DroppedAtSource;
        ++stats_.droppedAtSource;
        trace(TraceKind::SourceDrop, inj.source, -1, id, state_.time);
        state_.messages.push_back(rec);
        return;
    }
    src.used += inj.size;
    src.buffer.push_back(id);
    state_.messages.push_back(rec);
    countDestination(inj.source, id, +1);
}

bool Engine::startTransfer(NodeId from, NodeId to, InterfaceId iface, MessageId m) {
    auto& sender = state_.nodes[static_cast<std::size_t>(from)];
    auto& receiver = state_.nodes[static_cast<std::size_t>(to)];
    const auto& msg = state_.messages[static_cast<std::size_t>(m)].message;
    const bool consumes = to == msg.destination || receiver.spec.role == Role::BlackHole;
    if (!consumes && receiver.spec.bufferCapacity - receiver.used - receiver.reserved < msg.size - kEpsilon) {
        ++stats_.rejectedTransfers;
        trace(TraceKind::Reject, from, to, m, state_.time);
        return false;
    }
    sender.buffer.erase(std::find(sender.buffer.begin(), sender.buffer.end(), m));
    countDestination(from, m, -1);
    receiver.reserved += msg.size;
    const double duration = msg.size / interfaces_[static_cast<std::size_t>(iface)].bandwidth;
    state_.transfers.push_back({m, from, to, iface, state_.time, duration, duration});
    sender.outgoing[static_cast<std::size_t>(iface)] = static_cast<int>(state_.transfers.size() - 1);
    trace(TraceKind::TransferStart, from, to, m, state_.time);
    return true;
}

void Engine::forward(std::int64_t tickIndex) {
    for (auto& node : state_.nodes) {
        if (node.spec.role == Role::BlackHole) continue;
        for (const auto iface : node.spec.interfaces) {
            if (node.buffer.empty()) break;
            if (node.outgoing[static_cast<std::size_t>(iface)] >= 0) continue;
            const auto& contacts =
                neighbours_[static_cast<std::size_t>(node.spec.id) * kMaxInterfaces + static_cast<std::size_t>(iface)];
            if (contacts.empty()) continue;

            // Direct delivery has priority over relaying.
            bool anyDirect = false;
            for (const auto c : contacts) anyDirect = anyDirect || destinationCount(node.spec.id, c) > 0;
            MessageId direct = -1;
            for (const auto m : anyDirect ? std::span<const MessageId>(node.buffer) : std::span<const MessageId>()) {
                const auto& msg = state_.messages[static_cast<std::size_t>(m)].message;
                if (std::binary_search(contacts.begin(), contacts.end(), msg.destination) &&
                    canFinishInTime(msg, iface)) {
                    direct = m;
                    break;
                }
            }
            if (direct >= 0) {
                const auto dest = state_.messages[static_cast<std::size_t>(direct)].message.destination;
                startTransfer(node.spec.id, dest, iface, direct);
                continue;
            }

            MessageId head = -1;
            for (const auto m : node.buffer) {
                if (canFinishInTime(state_.messages[static_cast<std::size_t>(m)].message, iface)) {
                    head = m;
                    break;
                }
            }
            if (head < 0) continue;
            const auto key = deriveSeed(seed_, kForwardSalt, static_cast<std::uint64_t>(head),
                                        static_cast<std::uint64_t>(node.spec.id),
                                        static_cast<std::uint64_t>(tickIndex), static_cast<std::uint64_t>(iface));
            const auto pick = static_cast<std::size_t>(unitFromBits(mix64(key)) * static_cast<double>(contacts.size()));
            startTransfer(node.spec.id, contacts[std::min(pick, contacts.size() - 1)], iface, head);
        }
    }
}

void Engine::progressTransfers() {
    std::vector<Transfer> pending;
    pending.reserve(state_.transfers.size());
    for (auto& t : state_.transfers) {
        t.remaining -= tick_;
        if (t.remaining > kEpsilon) {
            pending.push_back(t);
            continue;
        }
        auto& rec = state_.messages[static_cast<std::size_t>(t.message)];
        auto& sender = state_.nodes[static_cast<std::size_t>(t.from)];
        auto& receiver = state_.nodes[static_cast<std::size_t>(t.to)];
        const double doneAt = t.startedAt + t.duration;
        sender.used -= rec.message.size;
        receiver.reserved -= rec.message.size;
        if (t.to == rec.message.destination) {
            rec.fate = MessageFate::Delivered;
            rec.deliveredAt = doneAt;
            if (rec.message.honest) {
                ++stats_.honestDelivered;
                stats_.deliveredIds.push_back(rec.message.id);
                stats_.deliveryLatencies.push_back(doneAt - rec.message.createdAt);
            } else {
                ++stats_.floodDelivered;
            }
            trace(TraceKind::Deliver, t.from, t.to, t.message, doneAt);
        } else if (receiver.spec.role == Role::BlackHole) {
            rec.fate = MessageFate::DroppedByBlackHole;
            ++stats_.droppedByBlackhole;
            if (rec.message.honest) ++stats_.honestDroppedByBlackhole;
            trace(TraceKind::BlackHoleDrop, t.from, t.to, t.message, doneAt);
        } else {
            receiver.used += rec.message.size;
            rec.arrivalSeq = nextArrival_++;
            receiver.buffer.push_back(t.message);
            countDestination(t.to, t.message, +1);
            trace(TraceKind::Relay, t.from, t.to, t.message, doneAt);
        }
    }
    state_.transfers = std::move(pending);
    for (auto& n : state_.nodes) n.outgoing.fill(-1);
    for (std::size_t i = 0; i < state_.transfers.size(); ++i) {
        const auto& t = state_.transfers[i];
        state_.nodes[static_cast<std::size_t>(t.from)].outgoing[static_cast<std::size_t>(t.interface)] =
            static_cast<int>(i);
    }
}

SimResult Engine::result() const {
    SimResult r = stats_;
    r.ddr = r.honestCreated == 0 ? 1.0 : static_cast<double>(r.honestDelivered) / static_cast<double>(r.honestCreated);
    r.meanLatency = r.deliveryLatencies.empty()
                        ? 0.0
                        : std::accumulate(r.deliveryLatencies.begin(), r.deliveryLatencies.end(), 0.0) /
                              static_cast<double>(r.deliveryLatencies.size());
    return r;
}

}  // namespace dtn::netsim
