#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace veritas::detail {

struct HttpEndpoint {
  std::string origin;     // scheme://host[:port]
  std::string base_path;  // without trailing slash, may be empty
};

// Throws ValidationError for anything that is not an http:// URL.
HttpEndpoint parse_endpoint(std::string_view url);

// POSTs a JSON body and returns the response body. Connection-level
// failures throw TransportError; non-2xx statuses throw ProviderError.
std::string post_json(const HttpEndpoint& endpoint, std::string_view path,
                      const std::string& body, std::chrono::seconds timeout);

}  // namespace veritas::detail
