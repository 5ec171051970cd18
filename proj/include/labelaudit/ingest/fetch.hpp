#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "labelaudit/ingest/document.hpp"

namespace labelaudit::ingest {

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Transport interface; the production client wraps cpp-httplib, tests
// script responses. Implementations throw NetworkError when the host cannot
// be resolved or connected.
class HttpClient {
 public:
  virtual ~HttpClient() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

std::unique_ptr<HttpClient> make_httplib_client(
    std::chrono::seconds timeout = std::chrono::seconds(30));

using SleepFn = std::function<void(std::chrono::milliseconds)>;

struct FetchPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{1000};
};

// 403/429/5xx are retryable with waits of base_delay * 2^attempt; other
// non-200 statuses are recorded and returned as-is. Throws RetriesExhausted
// once max_retries retryable failures pile up.
RawDocument fetch_with_backoff(HttpClient& client, const std::string& url,
                               const FetchPolicy& policy,
                               const SleepFn& sleep);

bool is_retryable_status(int status);

// Global per-host pacing: wait() blocks until min_interval has passed since
// the previous request to the same host.
class HostRateLimiter {
 public:
  HostRateLimiter(std::chrono::milliseconds min_interval, SleepFn sleep);

  void wait(const std::string& url);

 private:
  std::chrono::milliseconds min_interval_;
  SleepFn sleep_;
  std::mutex mutex_;
  std::unordered_map<std::string, std::chrono::steady_clock::time_point> last_;
};

// Scheme-stripped host portion of a URL; empty when the URL is malformed.
std::string url_host(const std::string& url);

}  // namespace labelaudit::ingest
