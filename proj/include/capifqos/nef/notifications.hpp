#pragma once

#include "capifqos/nef/types.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace capifqos::nef {

// Sends one notification to a callback URI; false means the attempt failed.
class NotificationTransport {
 public:
  virtual ~NotificationTransport() = default;
  virtual bool deliver(const std::string& uri, const Notification& notification) = 0;
};

// Routes URIs to in-process receivers. Unregistered URIs fail delivery.
class InProcessTransport : public NotificationTransport {
 public:
  using Receiver = std::function<bool(const Notification&)>;

  void register_receiver(const std::string& uri, Receiver receiver);
  bool deliver(const std::string& uri, const Notification& notification) override;

 private:
  std::mutex mutex_;
  std::map<std::string, Receiver> receivers_;
};

// POSTs the notification record as JSON to http:// callback URIs.
class HttpTransport : public NotificationTransport {
 public:
  explicit HttpTransport(double timeoutSeconds = 1.0) : timeoutSeconds_(timeoutSeconds) {}
  bool deliver(const std::string& uri, const Notification& notification) override;

 private:
  double timeoutSeconds_;
};

// Delay before each retry, in the dispatcher's time unit. Three retries
// after the first attempt give four attempts in total.
struct RetryPolicy {
  std::vector<double> backoff;

  static RetryPolicy virtual_ticks() { return {{1.0, 1.0, 1.0}}; }
  static RetryPolicy wall_clock() { return {{0.5, 1.0, 2.0}}; }
  std::size_t max_attempts() const { return backoff.size() + 1; }
};

struct DeliveryOutcome {
  Notification notification;
  std::string uri;
  bool delivered = false;
  std::size_t attempts = 0;
};

// At-least-once delivery with per-subscription ordering: a queue's head
// blocks later notifications of the same subscription until it is delivered
// or exhausts its retries. Queues of different subscriptions are independent.
//
// Time is whatever the caller passes to pump(): ticks in simulation,
// seconds in live mode (see start()).
class NotificationDispatcher {
 public:
  using Logger = std::function<void(const std::string&)>;

  NotificationDispatcher(std::shared_ptr<NotificationTransport> transport, RetryPolicy policy,
                         Logger logger = {});
  ~NotificationDispatcher();

  NotificationDispatcher(const NotificationDispatcher&) = delete;
  NotificationDispatcher& operator=(const NotificationDispatcher&) = delete;

  void enqueue(const Notification& notification, const std::string& uri);

  // Attempts every due queue head; returns finished deliveries (successes
  // and exhaustions) in attempt order.
  std::vector<DeliveryOutcome> pump(double now);

  // Live mode: a background thread pumps with steady-clock seconds.
  void start(std::chrono::milliseconds period = std::chrono::milliseconds(20));
  void stop();

  std::size_t pending() const;
  std::vector<DeliveryOutcome> exhausted() const;

 private:
  struct Pending {
    Notification notification;
    std::string uri;
    std::size_t attempts = 0;
    double nextAttemptAt = -1e300;
  };

  std::shared_ptr<NotificationTransport> transport_;
  RetryPolicy policy_;
  Logger logger_;

  mutable std::mutex mutex_;
  std::mutex pumpMutex_;
  std::map<std::string, std::deque<Pending>> queues_;
  std::vector<DeliveryOutcome> exhausted_;

  std::thread worker_;
  std::atomic<bool> running_{false};
  std::condition_variable wake_;
};

}  // namespace capifqos::nef
