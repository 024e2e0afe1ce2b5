#include "http_transport.hpp"

#include <httplib.h>

#include "veritas/error.hpp"

namespace veritas::detail {

HttpEndpoint parse_endpoint(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (url.substr(0, kScheme.size()) != kScheme) {
    throw ValidationError("unsupported endpoint URL (http:// expected): " + std::string(url));
  }
  const auto path_start = url.find('/', kScheme.size());
  HttpEndpoint endpoint;
  endpoint.origin = std::string(url.substr(0, path_start));
  if (path_start != std::string_view::npos) {
    endpoint.base_path = std::string(url.substr(path_start));
    while (!endpoint.base_path.empty() && endpoint.base_path.back() == '/') {
      endpoint.base_path.pop_back();
    }
  }
  if (endpoint.origin.size() == kScheme.size()) {
    throw ValidationError("endpoint URL has no host: " + std::string(url));
  }
  return endpoint;
}

std::string post_json(const HttpEndpoint& endpoint, std::string_view path,
                      const std::string& body, std::chrono::seconds timeout) {
  httplib::Client client(endpoint.origin);
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const std::string full_path = endpoint.base_path + std::string(path);
  auto result = client.Post(full_path, body, "application/json");
  if (!result) {
    throw TransportError("POST " + endpoint.origin + full_path + " failed: " +
                         httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    constexpr std::size_t kExcerpt = 512;
    throw ProviderError(result->status, result->body.substr(0, kExcerpt));
  }
  return result->body;
}

}  // namespace veritas::detail
