#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "visualenv/env.hpp"

// JSON-lines wire protocol. Every message is one JSON object on one
// LF-terminated line, discriminated by its "type" field.
namespace visualenv::protocol {

struct Hello {
  std::string env;
  std::optional<std::uint64_t> seed;
  bool operator==(const Hello&) const = default;
};
struct Reset {
  std::optional<std::uint64_t> seed;
  bool operator==(const Reset&) const = default;
};
struct Step {
  std::int64_t action = 0;
  bool operator==(const Step&) const = default;
};
struct Close {
  bool operator==(const Close&) const = default;
};

using Request = std::variant<Hello, Reset, Step, Close>;

struct HelloAck {
  std::string env;
  ObservationSpec spec;
  int actions = 0;
  bool operator==(const HelloAck&) const = default;
};
struct Obs {
  double reward = 0.0;
  bool done = false;
  Reason reason = Reason::Running;
  int step = 0;
  std::string obs_b64;
  bool operator==(const Obs&) const = default;
};
struct Error {
  std::string code;
  std::string message;
  bool operator==(const Error&) const = default;
};
struct Bye {
  bool operator==(const Bye&) const = default;
};

using Response = std::variant<HelloAck, Obs, Error, Bye>;

std::string encode(const Request& r);
std::string encode(const Response& r);

/// On failure the Error carries the code to send back ("bad_json",
/// "bad_request" or "unknown_type").
std::variant<Request, Error> decode_request(std::string_view line);
std::variant<Response, Error> decode_response(std::string_view line);

}  // namespace visualenv::protocol
