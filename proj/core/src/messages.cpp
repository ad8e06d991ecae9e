#include "octopia/messages.hpp"

#include <fmt/format.h>

namespace octopia {

std::string MessageId::str() const { return fmt::format("{}.{}", client, seq); }

MessageKind kind_of(const Message& m) {
  struct Visitor {
    MessageKind operator()(const AdvertiseMsg&) const { return MessageKind::Advertisement; }
    MessageKind operator()(const SubscribeMsg&) const { return MessageKind::Subscription; }
    MessageKind operator()(const UnsubscribeMsg&) const { return MessageKind::Unsubscription; }
    MessageKind operator()(const CibSetMsg&) const { return MessageKind::CibSet; }
    MessageKind operator()(const CibClearMsg&) const { return MessageKind::CibClear; }
    MessageKind operator()(const PublishMsg& p) const {
      return p.notif.civ ? MessageKind::CivNotification : MessageKind::Notification;
    }
    MessageKind operator()(const BackgroundMsg&) const { return MessageKind::Background; }
  };
  return std::visit(Visitor{}, m);
}

std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::Advertisement: return "advertisement";
    case MessageKind::Subscription: return "subscription";
    case MessageKind::Unsubscription: return "unsubscription";
    case MessageKind::CibSet: return "cib_set";
    case MessageKind::CibClear: return "cib_clear";
    case MessageKind::Notification: return "notification";
    case MessageKind::CivNotification: return "civ_notification";
    case MessageKind::Background: return "background";
  }
  return "?";
}

bool is_notification(MessageKind k) {
  return k == MessageKind::Notification || k == MessageKind::CivNotification;
}

}  // namespace octopia
