#pragma once

#include <string>

#include "eclipse/oracle.hpp"

namespace eclipse {

// Wire contract:
//   POST <path>  {"image_b64": "<base64 PNG>", "top_k": <int>}
//   200          {"scores": {"<label>": <float in [0,1]>, ...}}
struct OracleEndpointConfig {
  std::string url;           // http://host[:port][/path]
  int timeout_ms = 10000;
  std::string auth_header;   // header name, e.g. "Authorization"; empty = none
  std::string auth_value;    // e.g. "Bearer <token>"
  int top_k = 0;             // 0 asks for the full distribution
};

class RemoteOracle : public Oracle {
 public:
  explicit RemoteOracle(OracleEndpointConfig config);

  // Throws TransportError/HttpStatusError/SchemaError; retrying is the
  // caller's decision.
  ConfidenceResult classify(const Image& image) const override;

  const OracleEndpointConfig& config() const { return config_; }

 private:
  OracleEndpointConfig config_;
  std::string host_part_;  // scheme://host[:port]
  std::string path_;
};

// Validates a response body against the wire contract. Exposed separately
// so the schema rules are testable without a live endpoint.
ConfidenceResult parse_oracle_response(const std::string& body);

std::string base64_encode(const std::uint8_t* data, std::size_t size);
std::vector<std::uint8_t> base64_decode(const std::string& text);

}  // namespace eclipse
