#include "octopia/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace octopia {

std::uint64_t MetricsReport::total_ims() const {
  return total_sent() - ims_of(MessageKind::Background);
}

std::uint64_t MetricsReport::notification_ims() const {
  return ims_of(MessageKind::Notification) + ims_of(MessageKind::CivNotification);
}

std::uint64_t MetricsReport::total_sent() const {
  return std::accumulate(ims.begin(), ims.end(), std::uint64_t{0});
}

std::size_t MetricsReport::srt_total() const {
  return std::accumulate(srt_sizes.begin(), srt_sizes.end(), std::size_t{0});
}

std::size_t MetricsReport::prt_total() const {
  return std::accumulate(prt_sizes.begin(), prt_sizes.end(), std::size_t{0});
}

std::uint64_t MetricsReport::max_queue_at(BrokerIndex broker) const {
  std::uint64_t best = 0;
  for (const auto& [link, q] : max_q_len) {
    if (link.first == broker) best = std::max(best, q);
  }
  return best;
}

std::map<NotifId, std::set<ClientId>> MetricsReport::delivered_sets() const {
  std::map<NotifId, std::set<ClientId>> out;
  for (const auto& [id, rec] : notifications) {
    out[id].insert(rec.delivered.begin(), rec.delivered.end());
  }
  return out;
}

std::size_t MetricsReport::duplicate_deliveries() const {
  std::size_t dups = 0;
  for (const auto& [id, rec] : notifications) {
    std::set<ClientId> unique(rec.delivered.begin(), rec.delivered.end());
    dups += rec.delivered.size() - unique.size();
  }
  return dups;
}

Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  auto rank = [&](double q) {
    const auto i = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size()))) ;
    return values[std::min(values.size() - 1, i == 0 ? 0 : i - 1)];
  };
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.p50 = rank(0.5);
  s.p95 = rank(0.95);
  s.max = values.back();
  return s;
}

}  // namespace octopia
