#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <json.hpp>

#include "visualenv/digest.hpp"
#include "visualenv/protocol.hpp"
#include "visualenv/registry.hpp"
#include "visualenv/rng.hpp"

using namespace visualenv;
using namespace visualenv::protocol;

namespace {

// Valid UTF-8 mixing ASCII, escapes and multi-byte code points.
std::string random_text(SplitMix64& rng) {
  static const std::vector<std::string> pieces = {"a", "Z", "0", " ", "\"", "\\", "\n", "\t",
                                                  "/", "{", "}", "\xc3\xa9", "\xe2\x82\xac",
                                                  "\xf0\x9f\x8e\xaf", "\x01", "cartpole"};
  std::string s;
  const int n = static_cast<int>(rng.below(24));
  for (int i = 0; i < n; ++i) s += pieces[rng.below(pieces.size())];
  return s;
}

std::optional<std::uint64_t> random_seed(SplitMix64& rng) {
  if (rng.below(3) == 0) return std::nullopt;
  return rng.next();
}

double random_reward(SplitMix64& rng) {
  switch (rng.below(4)) {
    case 0: return static_cast<double>(static_cast<int>(rng.below(41)) - 20);
    case 1: return rng.uniform(-1e6, 1e6);
    case 2: return std::ldexp(rng.next_double(), static_cast<int>(rng.below(200)) - 100);
    default: return -rng.next_double();
  }
}

Request random_request(SplitMix64& rng) {
  switch (rng.below(4)) {
    case 0: return Hello{random_text(rng), random_seed(rng)};
    case 1: return Reset{random_seed(rng)};
    case 2: return Step{static_cast<std::int64_t>(rng.next())};
    default: return Close{};
  }
}

Response random_response(SplitMix64& rng) {
  switch (rng.below(4)) {
    case 0:
      return HelloAck{random_text(rng),
                      ObservationSpec{static_cast<int>(rng.below(500)) + 1,
                                      static_cast<int>(rng.below(500)) + 1,
                                      static_cast<int>(rng.below(8)) + 1},
                      static_cast<int>(rng.below(10)) + 1};
    case 1: {
      std::vector<std::uint8_t> bytes(rng.below(64));
      for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.below(256));
      const auto reason = static_cast<Reason>(rng.below(7));
      return Obs{random_reward(rng), rng.below(2) == 1, reason, static_cast<int>(rng.below(1000)),
                 base64_encode(bytes)};
    }
    case 2: return Error{random_text(rng), random_text(rng)};
    default: return Bye{};
  }
}

template <class T, class V>
T expect_ok(const V& decoded) {
  if (const auto* e = std::get_if<Error>(&decoded)) {
    ADD_FAILURE() << e->code << ": " << e->message;
    return T{};
  }
  return std::get<T>(decoded);
}

std::string decode_error_code(std::string_view line) {
  const auto d = decode_request(line);
  const auto* e = std::get_if<Error>(&d);
  return e ? e->code : "";
}

}  // namespace

TEST(ProtocolRoundTrip, RandomRequests) {
  SplitMix64 rng(0xabcdef);
  for (int i = 0; i < 5000; ++i) {
    const Request r = random_request(rng);
    const std::string line = encode(r);
    ASSERT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(expect_ok<Request>(decode_request(line)), r) << line;
  }
}

TEST(ProtocolRoundTrip, RandomResponses) {
  SplitMix64 rng(0x1234);
  for (int i = 0; i < 5000; ++i) {
    const Response r = random_response(rng);
    const std::string line = encode(r);
    ASSERT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(expect_ok<Response>(decode_response(line)), r) << line;
  }
}

TEST(ProtocolRoundTrip, ExtremeValues) {
  for (const Request& r : std::vector<Request>{
           Hello{"goalie", std::numeric_limits<std::uint64_t>::max()}, Hello{"", 0},
           Step{std::numeric_limits<std::int64_t>::min()},
           Step{std::numeric_limits<std::int64_t>::max()}, Reset{0}})
    EXPECT_EQ(expect_ok<Request>(decode_request(encode(r))), r);
  const Response obs = Obs{-0.1, true, Reason::OutOfBounds, 7, ""};
  EXPECT_EQ(expect_ok<Response>(decode_response(encode(obs))), obs);
}

TEST(ProtocolFormat, FieldNames) {
  const auto ack = nlohmann::json::parse(
      encode(Response{HelloAck{"goalie", ObservationSpec{}, 2}}));
  EXPECT_EQ(ack["type"], "hello_ack");
  EXPECT_EQ(ack["spec"]["height"], 100);
  EXPECT_EQ(ack["spec"]["width"], 100);
  EXPECT_EQ(ack["spec"]["depth"], 4);
  EXPECT_EQ(ack["action_space"]["n"], 2);

  const auto obs = nlohmann::json::parse(encode(Response{Obs{10.0, true, Reason::Caught, 21, "AAAA"}}));
  EXPECT_EQ(obs["type"], "obs");
  EXPECT_EQ(obs["reward"], 10.0);
  EXPECT_EQ(obs["done"], true);
  EXPECT_EQ(obs["reason"], "caught");
  EXPECT_EQ(obs["step"], 21);
  EXPECT_EQ(obs["obs_b64"], "AAAA");

  EXPECT_EQ(encode(Request{Close{}}), R"({"type":"close"})");
  EXPECT_EQ(encode(Request{Reset{}}), R"({"type":"reset"})");
}

TEST(ProtocolDecode, AcceptsCrLfAndNullSeed) {
  EXPECT_EQ(expect_ok<Request>(decode_request("{\"type\":\"step\",\"action\":1}\r")), Request{Step{1}});
  EXPECT_EQ(expect_ok<Request>(decode_request(R"({"type":"reset","seed":null})")), Request{Reset{}});
  EXPECT_EQ(expect_ok<Request>(decode_request(R"({"action":0,"type":"step","extra":[1]})")),
            Request{Step{0}});
}

TEST(ProtocolDecode, ErrorCodes) {
  EXPECT_EQ(decode_error_code(""), "bad_json");
  EXPECT_EQ(decode_error_code("{"), "bad_json");
  EXPECT_EQ(decode_error_code("[1,2]"), "bad_json");
  EXPECT_EQ(decode_error_code("\"step\""), "bad_json");
  EXPECT_EQ(decode_error_code("{}"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":3})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"hello"})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"hello","env":1})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"reset","seed":-1})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"reset","seed":1.5})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"step"})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"step","action":0.5})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"step","action":"1"})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"step","action":18446744073709551615})"), "bad_request");
  EXPECT_EQ(decode_error_code(R"({"type":"jump"})"), "unknown_type");
}

TEST(ProtocolDecode, ResponseErrors) {
  auto code = [](std::string_view line) {
    const auto d = decode_response(line);
    const auto* e = std::get_if<Error>(&d);
    return e ? e->code : "";
  };
  EXPECT_EQ(code(R"({"type":"obs","reward":1})"), "bad_request");
  EXPECT_EQ(code(R"({"type":"obs","reward":1,"done":false,"reason":"nope","step":0,"obs_b64":""})"),
            "bad_request");
  EXPECT_EQ(code(R"({"type":"hello_ack","env":"x"})"), "bad_request");
  EXPECT_EQ(code(R"({"type":"welcome"})"), "unknown_type");
}

TEST(ObsPayload, LengthAndDecodedSize) {
  for (const std::string& name : env_names()) {
    auto env = make_env(name);
    const auto tensor = stack_to_tensor(env->reset(11));
    const ObservationSpec spec = env->observation_spec();
    const std::size_t n = static_cast<std::size_t>(spec.height) * spec.width * spec.depth;
    ASSERT_EQ(tensor.size(), n);
    const std::string b64 = base64_encode(tensor);
    EXPECT_EQ(b64.size(), (n + 2) / 3 * 4) << name;
    std::vector<std::uint8_t> back;
    ASSERT_TRUE(base64_decode(b64, back));
    EXPECT_EQ(back, tensor);
  }
}

TEST(ObsPayload, NonMultipleOfThreeLengths) {
  for (std::size_t n = 0; n < 20; ++n) {
    std::vector<std::uint8_t> bytes(n);
    for (std::size_t i = 0; i < n; ++i) bytes[i] = static_cast<std::uint8_t>(i * 37 + 5);
    const std::string b64 = base64_encode(bytes);
    EXPECT_EQ(b64.size(), (n + 2) / 3 * 4);
    std::vector<std::uint8_t> back;
    ASSERT_TRUE(base64_decode(b64, back));
    EXPECT_EQ(back, bytes);
  }
}
