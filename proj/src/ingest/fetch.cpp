#include "labelaudit/ingest/fetch.hpp"

#include <thread>

#include <httplib.h>

#include "labelaudit/errors.hpp"

namespace labelaudit::ingest {

std::string url_host(const std::string& url) {
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) return "";
  size_t start = scheme + 3;
  size_t end = url.find_first_of("/?#", start);
  if (end == std::string::npos) end = url.size();
  return url.substr(start, end - start);
}

bool is_retryable_status(int status) {
  return status == 403 || status == 429 || (status >= 500 && status < 600);
}

RawDocument fetch_with_backoff(HttpClient& client, const std::string& url,
                               const FetchPolicy& policy,
                               const SleepFn& sleep) {
  if (url_host(url).empty()) {
    throw NetworkError("malformed url: " + url);
  }
  for (int attempt = 0;; ++attempt) {
    HttpResponse response = client.get(url);
    RawDocument doc;
    doc.url = url;
    doc.body = std::move(response.body);
    doc.status = response.status;
    doc.fetched_at = std::chrono::system_clock::now();
    if (!is_retryable_status(doc.status)) {
      // Success or a fatal status; either way the final status is recorded.
      return doc;
    }
    if (attempt >= policy.max_retries) {
      throw RetriesExhausted("gave up on " + url + " after " +
                             std::to_string(attempt + 1) + " attempts, last status " +
                             std::to_string(doc.status));
    }
    sleep(policy.base_delay * (1LL << attempt));
  }
}

namespace {

class HttplibClient : public HttpClient {
 public:
  explicit HttplibClient(std::chrono::seconds timeout) : timeout_(timeout) {}

  HttpResponse get(const std::string& url) override {
    std::string host = url_host(url);
    if (host.empty()) throw NetworkError("malformed url: " + url);
    size_t path_start = url.find(host) + host.size();
    std::string path = path_start < url.size() ? url.substr(path_start) : "/";
    if (path.empty()) path = "/";

    std::string origin = url.substr(0, path_start);
    httplib::Client cli(origin);
    cli.set_connection_timeout(timeout_.count(), 0);
    cli.set_read_timeout(timeout_.count(), 0);
    cli.set_follow_location(true);
    auto result = cli.Get(path);
    if (!result) {
      throw NetworkError("request to " + url + " failed: " +
                         httplib::to_string(result.error()));
    }
    return {result->status, result->body};
  }

 private:
  std::chrono::seconds timeout_;
};

}  // namespace

std::unique_ptr<HttpClient> make_httplib_client(std::chrono::seconds timeout) {
  return std::make_unique<HttplibClient>(timeout);
}

HostRateLimiter::HostRateLimiter(std::chrono::milliseconds min_interval,
                                 SleepFn sleep)
    : min_interval_(min_interval), sleep_(std::move(sleep)) {
  if (!sleep_) {
    sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

void HostRateLimiter::wait(const std::string& url) {
  std::string host = url_host(url);
  std::chrono::milliseconds delay{0};
  auto now = std::chrono::steady_clock::now();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = last_.find(host);
    if (it != last_.end()) {
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          now - it->second);
      if (elapsed < min_interval_) delay = min_interval_ - elapsed;
    }
    last_[host] = now + delay;
  }
  if (delay.count() > 0) sleep_(delay);
}

}  // namespace labelaudit::ingest
