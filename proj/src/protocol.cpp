#include "visualenv/protocol.hpp"

#include <json.hpp>

namespace visualenv::protocol {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Error bad_request(std::string message) { return {"bad_request", std::move(message)}; }

std::variant<json, Error> parse_object(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  json j = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return Error{"bad_json", "line is not valid JSON"};
  if (!j.is_object()) return Error{"bad_json", "message must be a JSON object"};
  const auto it = j.find("type");
  if (it == j.end() || !it->is_string()) return bad_request("missing string field 'type'");
  return j;
}

// Optional unsigned 64-bit field; error text on type mismatch.
std::variant<std::optional<std::uint64_t>, Error> optional_seed(const json& j) {
  const auto it = j.find("seed");
  if (it == j.end() || it->is_null()) return std::optional<std::uint64_t>{};
  if (!it->is_number_unsigned()) return bad_request("'seed' must be a non-negative integer");
  return std::optional<std::uint64_t>{it->get<std::uint64_t>()};
}

}  // namespace

std::string encode(const Request& r) {
  json j = std::visit(overloaded{
                          [](const Hello& m) -> json {
                            json o{{"type", "hello"}, {"env", m.env}};
                            if (m.seed) o["seed"] = *m.seed;
                            return o;
                          },
                          [](const Reset& m) -> json {
                            json o{{"type", "reset"}};
                            if (m.seed) o["seed"] = *m.seed;
                            return o;
                          },
                          [](const Step& m) -> json {
                            return {{"type", "step"}, {"action", m.action}};
                          },
                          [](const Close&) -> json { return {{"type", "close"}}; },
                      },
                      r);
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string encode(const Response& r) {
  json j = std::visit(
      overloaded{
          [](const HelloAck& m) -> json {
            return {{"type", "hello_ack"},
                    {"env", m.env},
                    {"spec", {{"height", m.spec.height}, {"width", m.spec.width}, {"depth", m.spec.depth}}},
                    {"action_space", {{"n", m.actions}}}};
          },
          [](const Obs& m) -> json {
            return {{"type", "obs"},
                    {"reward", m.reward},
                    {"done", m.done},
                    {"reason", std::string(reason_name(m.reason))},
                    {"step", m.step},
                    {"obs_b64", m.obs_b64}};
          },
          [](const Error& m) -> json {
            return {{"type", "error"}, {"code", m.code}, {"message", m.message}};
          },
          [](const Bye&) -> json { return {{"type", "bye"}}; },
      },
      r);
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::variant<Request, Error> decode_request(std::string_view line) {
  auto parsed = parse_object(line);
  if (auto* e = std::get_if<Error>(&parsed)) return *e;
  const json& j = std::get<json>(parsed);
  const std::string type = j.at("type").get<std::string>();

  if (type == "hello") {
    const auto env = j.find("env");
    if (env == j.end() || !env->is_string()) return bad_request("hello requires string 'env'");
    auto seed = optional_seed(j);
    if (auto* e = std::get_if<Error>(&seed)) return *e;
    return Request{Hello{env->get<std::string>(), std::get<0>(seed)}};
  }
  if (type == "reset") {
    auto seed = optional_seed(j);
    if (auto* e = std::get_if<Error>(&seed)) return *e;
    return Request{Reset{std::get<0>(seed)}};
  }
  if (type == "step") {
    const auto action = j.find("action");
    if (action == j.end() || !action->is_number_integer())
      return bad_request("step requires integer 'action'");
    if (action->is_number_unsigned() &&
        action->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      return bad_request("'action' out of range");
    return Request{Step{action->get<std::int64_t>()}};
  }
  if (type == "close") return Request{Close{}};
  return Error{"unknown_type", "unknown request type '" + type + "'"};
}

std::variant<Response, Error> decode_response(std::string_view line) {
  auto parsed = parse_object(line);
  if (auto* e = std::get_if<Error>(&parsed)) return *e;
  const json& j = std::get<json>(parsed);
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "hello_ack") {
      const json& spec = j.at("spec");
      return Response{HelloAck{j.at("env").get<std::string>(),
                               ObservationSpec{spec.at("height").get<int>(),
                                               spec.at("width").get<int>(),
                                               spec.at("depth").get<int>()},
                               j.at("action_space").at("n").get<int>()}};
    }
    if (type == "obs") {
      const auto reason = parse_reason(j.at("reason").get<std::string>());
      if (!reason) return bad_request("unknown reason");
      return Response{Obs{j.at("reward").get<double>(), j.at("done").get<bool>(), *reason,
                          j.at("step").get<int>(), j.at("obs_b64").get<std::string>()}};
    }
    if (type == "error")
      return Response{Error{j.at("code").get<std::string>(), j.at("message").get<std::string>()}};
    if (type == "bye") return Response{Bye{}};
  } catch (const json::exception& e) {
    return bad_request(e.what());
  }
  return Error{"unknown_type", "unknown response type '" + type + "'"};
}

}  // namespace visualenv::protocol
