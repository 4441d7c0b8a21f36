#include "capifqos/nef/notifications.hpp"

#include "capifqos/nef/json.hpp"
#include "capifqos/wire.hpp"

#include <iostream>

namespace capifqos::nef {

void InProcessTransport::register_receiver(const std::string& uri, Receiver receiver) {
  std::lock_guard lock(mutex_);
  receivers_[uri] = std::move(receiver);
}

bool InProcessTransport::deliver(const std::string& uri, const Notification& notification) {
  Receiver receiver;
  {
    std::lock_guard lock(mutex_);
    auto it = receivers_.find(uri);
    if (it == receivers_.end()) return false;
    receiver = it->second;
  }
  return receiver(notification);
}

bool HttpTransport::deliver(const std::string& uri, const Notification& notification) {
  try {
    auto url = wire::parse_url(uri);
    httplib::Client client(url.host, url.port);
    const auto sec = static_cast<time_t>(timeoutSeconds_);
    const auto usec = static_cast<time_t>((timeoutSeconds_ - static_cast<double>(sec)) * 1e6);
    client.set_connection_timeout(sec, usec);
    client.set_read_timeout(sec, usec);
    auto res = client.Post(url.path.empty() ? "/" : url.path,
                           nlohmann::json(notification).dump(), "application/json");
    return res && res->status >= 200 && res->status < 300;
  } catch (const std::exception&) {
    return false;
  }
}

NotificationDispatcher::NotificationDispatcher(std::shared_ptr<NotificationTransport> transport,
                                               RetryPolicy policy, Logger logger)
    : transport_(std::move(transport)), policy_(std::move(policy)), logger_(std::move(logger)) {
  if (!logger_) {
    logger_ = [](const std::string& line) { std::clog << line << '\n'; };
  }
}

NotificationDispatcher::~NotificationDispatcher() { stop(); }

void NotificationDispatcher::enqueue(const Notification& notification, const std::string& uri) {
  {
    std::lock_guard lock(mutex_);
    queues_[notification.subscriptionId].push_back({notification, uri});
  }
  wake_.notify_all();
}

std::vector<DeliveryOutcome> NotificationDispatcher::pump(double now) {
  std::lock_guard pumpLock(pumpMutex_);
  std::vector<DeliveryOutcome> finished;

  std::vector<std::string> ids;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, queue] : queues_) {
      if (!queue.empty()) ids.push_back(id);
    }
  }

  for (const auto& id : ids) {
    while (true) {
      Pending head;
      {
        std::lock_guard lock(mutex_);
        auto& queue = queues_[id];
        if (queue.empty() || queue.front().nextAttemptAt > now) break;
        head = queue.front();
      }

      // Transport runs without the queue lock so enqueue never waits on I/O.
      const bool ok = transport_->deliver(head.uri, head.notification);
      ++head.attempts;

      std::lock_guard lock(mutex_);
      auto& queue = queues_[id];
      if (ok || head.attempts >= policy_.max_attempts()) {
        DeliveryOutcome outcome{head.notification, head.uri, ok, head.attempts};
        if (!ok) {
          exhausted_.push_back(outcome);
          logger_("DELIVERY_EXHAUSTED subscription=" + id +
                  " seq=" + std::to_string(head.notification.sequenceNumber) +
                  " uri=" + head.uri + " attempts=" + std::to_string(head.attempts));
        }
        finished.push_back(std::move(outcome));
        queue.pop_front();
        continue;
      }
      queue.front().attempts = head.attempts;
      queue.front().nextAttemptAt = now + policy_.backoff[head.attempts - 1];
      break;
    }
  }
  return finished;
}

void NotificationDispatcher::start(std::chrono::milliseconds period) {
  if (running_.exchange(true)) return;
  worker_ = std::thread([this, period] {
    const auto origin = std::chrono::steady_clock::now();
    while (running_) {
      const double now =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - origin).count();
      pump(now);
      std::unique_lock lock(mutex_);
      wake_.wait_for(lock, period, [this] { return !running_; });
    }
  });
}

void NotificationDispatcher::stop() {
  if (!running_.exchange(false)) return;
  wake_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::size_t NotificationDispatcher::pending() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& [id, queue] : queues_) n += queue.size();
  return n;
}

std::vector<DeliveryOutcome> NotificationDispatcher::exhausted() const {
  std::lock_guard lock(mutex_);
  return exhausted_;
}

}  // namespace capifqos::nef
