#include "eclipse/remote_oracle.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "eclipse/codec.hpp"
#include "eclipse/errors.hpp"

namespace eclipse {

namespace {

constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

}  // namespace

std::string base64_encode(const std::uint8_t* data, std::size_t size) {
  std::string out;
  out.reserve((size + 2) / 3 * 4);
  for (std::size_t i = 0; i < size; i += 3) {
    std::uint32_t chunk = data[i] << 16;
    if (i + 1 < size) chunk |= data[i + 1] << 8;
    if (i + 2 < size) chunk |= data[i + 2];
    out.push_back(kB64Alphabet[(chunk >> 18) & 0x3f]);
    out.push_back(kB64Alphabet[(chunk >> 12) & 0x3f]);
    out.push_back(i + 1 < size ? kB64Alphabet[(chunk >> 6) & 0x3f] : '=');
    out.push_back(i + 2 < size ? kB64Alphabet[chunk & 0x3f] : '=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<std::uint8_t> out;
  std::uint32_t chunk = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    const int v = value_of(c);
    if (v < 0) throw SchemaError("base64_decode: invalid character");
    chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((chunk >> bits) & 0xff));
    }
  }
  return out;
}

ConfidenceResult parse_oracle_response(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("oracle response: invalid JSON: ") + e.what());
  }
  if (!j.contains("scores") || !j["scores"].is_object()) {
    throw SchemaError("oracle response: missing \"scores\" object");
  }
  ConfidenceResult result;
  for (const auto& [label, value] : j["scores"].items()) {
    if (!value.is_number()) {
      throw SchemaError("oracle response: score for \"" + label + "\" is not a number");
    }
    const double score = value.get<double>();
    if (score < 0.0 || score > 1.0) {
      throw SchemaError("oracle response: score for \"" + label +
                        "\" outside [0,1]: " + std::to_string(score));
    }
    result.scores[label] = score;
  }
  if (result.scores.empty()) {
    throw SchemaError("oracle response: empty score map");
  }
  return result;
}

RemoteOracle::RemoteOracle(OracleEndpointConfig config) : config_(std::move(config)) {
  const std::string& url = config_.url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InvalidArgument("RemoteOracle: url must start with http://");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    host_part_ = url;
    path_ = "/";
  } else {
    host_part_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
}

ConfidenceResult RemoteOracle::classify(const Image& image) const {
  const auto png = encode_png(image);
  nlohmann::json request{{"image_b64", base64_encode(png.data(), png.size())},
                         {"top_k", config_.top_k}};

  // A fresh client per call keeps concurrent attack runs independent.
  httplib::Client client(host_part_);
  client.set_connection_timeout(0, config_.timeout_ms * 1000LL);
  client.set_read_timeout(0, config_.timeout_ms * 1000LL);
  client.set_write_timeout(0, config_.timeout_ms * 1000LL);
  httplib::Headers headers;
  if (!config_.auth_header.empty()) {
    headers.emplace(config_.auth_header, config_.auth_value);
  }

  auto res = client.Post(path_, headers, request.dump(), "application/json");
  if (!res) {
    throw TransportError("RemoteOracle: " + httplib::to_string(res.error()) +
                         " contacting " + config_.url);
  }
  if (res->status < 200 || res->status >= 300) {
    throw HttpStatusError(res->status, "RemoteOracle: HTTP " +
                                           std::to_string(res->status) +
                                           " from " + config_.url);
  }
  return parse_oracle_response(res->body);
}

}  // namespace eclipse
