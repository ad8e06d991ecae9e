#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "octopia/civ.hpp"
#include "octopia/filter.hpp"
#include "octopia/scot.hpp"

namespace octopia {

/// Simulated time in microseconds.
using SimTime = std::int64_t;
constexpr SimTime kMillisecond = 1000;

using ClientId = std::uint32_t;

/// Advertisement, subscription and notification ids are (issuing client,
/// per-client sequence) pairs, unique without coordination.
struct MessageId {
  ClientId client = 0;
  std::uint32_t seq = 0;

  std::string str() const;
  friend auto operator<=>(const MessageId&, const MessageId&) = default;
};

using AdvId = MessageId;
using SubId = MessageId;
using NotifId = MessageId;

/// Baseline advertisement-tree id.
using Tid = std::uint64_t;

/// Where a message came from or goes to: a broker or a local client.
struct Hop {
  bool is_client = false;
  std::uint64_t id = 0;

  static Hop broker(BrokerIndex b) { return {false, b}; }
  static Hop client(ClientId c) { return {true, c}; }
  BrokerIndex broker_index() const { return static_cast<BrokerIndex>(id); }
  ClientId client_id() const { return static_cast<ClientId>(id); }

  friend auto operator<=>(const Hop&, const Hop&) = default;
};

struct Advertisement {
  AdvId id;
  ClientId publisher = 0;
  Filter filter;
};

struct Subscription {
  SubId id;
  ClientId subscriber = 0;
  Filter filter;
};

struct Notification {
  NotifId id;
  ClientId publisher = 0;
  AdvId adv;
  std::shared_ptr<const Payload> payload;
  std::optional<Civ> civ;  // present only on a CIV-N
  std::optional<Tid> tid;  // baseline only
  std::uint32_t hops = 0;
  SimTime published_at = 0;
};

struct AdvertiseMsg {
  Advertisement adv;
  std::optional<Civ> civ;  // S_cxt vector carried to secondary brokers
  std::optional<Tid> tid;
  std::uint32_t hops = 0;
};

struct SubscribeMsg {
  Subscription sub;
  std::vector<Tid> tids;  // baseline only
  std::uint32_t hops = 0;
};

struct UnsubscribeMsg {
  SubId sub_id;
};

struct CibSetMsg {
  AdvId adv_id;
  ClusterIndex from_ci = 0;
  Subscription carried_sub;
};

struct CibClearMsg {
  AdvId adv_id;
  ClusterIndex from_ci = 0;
};

struct PublishMsg {
  Notification notif;
};

/// Synthetic load injected on a link; dropped by the receiving broker.
struct BackgroundMsg {};

using Message = std::variant<AdvertiseMsg, SubscribeMsg, UnsubscribeMsg, CibSetMsg, CibClearMsg,
                             PublishMsg, BackgroundMsg>;

enum class MessageKind {
  Advertisement,
  Subscription,
  Unsubscription,
  CibSet,
  CibClear,
  Notification,
  CivNotification,
  Background,
};
constexpr std::size_t kMessageKindCount = 8;

MessageKind kind_of(const Message& m);
std::string_view to_string(MessageKind k);
bool is_notification(MessageKind k);

}  // namespace octopia
