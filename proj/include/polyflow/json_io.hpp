#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "polyflow/channels.hpp"
#include "polyflow/netmodel.hpp"

namespace polyflow {

inline constexpr int kSchemaVersion = 1;

// Doubles are serialized with 12 significant digits so that determinism
// checks on report files stay meaningful.
nlohmann::json jnum(double v);

struct NetworkFile {
  PolyNet net;
  std::optional<ReversalMap> tau;
  std::optional<TrafficPattern> traffic;
};

NetworkFile parse_network_json(const nlohmann::json& j);
nlohmann::json network_to_json(const PolyNet& net, const ReversalMap* tau,
                               const TrafficPattern* traffic);

nlohmann::json oracle_to_json(const SubmodularOracle& oracle, bool with_ground = true);
SubmodularOracle oracle_from_json(const nlohmann::json& j,
                                  std::optional<GroundSet> ground = std::nullopt);

TrafficPattern traffic_from_json(const nlohmann::json& j);
nlohmann::json traffic_to_json(const TrafficPattern& traffic);

WirelessSpec parse_wireless_json(const nlohmann::json& j);

FadingModel fading_from_json(const nlohmann::json& j);
nlohmann::json fading_to_json(const FadingModel& model);

// 64-bit FNV-1a of the raw bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);
// Write via a temp file in the same directory followed by a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace polyflow
