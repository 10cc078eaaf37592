#include "polyflow/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace polyflow {

using nlohmann::json;

nlohmann::json jnum(double v) {
  if (!std::isfinite(v)) throw InvalidInputError("cannot serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return json(std::strtod(buf, nullptr));
}

namespace {

const json& need(const json& j, const char* field, const std::string& where) {
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(where + ": missing field \"" + field + "\"");
  return *it;
}

double need_num(const json& j, const char* field, const std::string& where) {
  const json& v = need(j, field, where);
  if (!v.is_number()) throw ParseError(where + ": \"" + field + "\" must be a number");
  return v.get<double>();
}

std::string need_str(const json& j, const char* field, const std::string& where) {
  const json& v = need(j, field, where);
  if (!v.is_string()) throw ParseError(where + ": \"" + field + "\" must be a string");
  return v.get<std::string>();
}

std::vector<std::string> str_list(const json& j, const char* field, const std::string& where) {
  const json& v = need(j, field, where);
  if (!v.is_array()) throw ParseError(where + ": \"" + field + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ParseError(where + ": \"" + field + "\" must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<double> num_list(const json& j, const char* field, const std::string& where) {
  const json& v = need(j, field, where);
  if (!v.is_array()) throw ParseError(where + ": \"" + field + "\" must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError(where + ": \"" + field + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

GfMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": matrix must be a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  GfMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[static_cast<size_t>(r)].is_array() ||
        static_cast<int>(j[static_cast<size_t>(r)].size()) != cols)
      throw ParseError(where + ": ragged matrix");
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = j[static_cast<size_t>(r)][static_cast<size_t>(c)].get<int>();
  }
  return m;
}

json matrix_to_json(const GfMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json oracle_to_json(const SubmodularOracle& oracle, bool with_ground) {
  json j;
  j["family"] = family_name(oracle.family());
  json p;
  switch (oracle.family()) {
    case OracleFamily::Modular: {
      json w = json::array();
      for (double v : oracle.weights()) w.push_back(jnum(v));
      p["weights"] = std::move(w);
      break;
    }
    case OracleFamily::CutErasure:
      p["epsilon"] = jnum(oracle.epsilon());
      break;
    case OracleFamily::GaussianMacLog: {
      json g = json::array();
      for (double v : oracle.gains_sq()) g.push_back(jnum(v));
      p["gainsSq"] = std::move(g);
      p["power"] = jnum(oracle.power());
      p["logBase"] = jnum(oracle.log_base());
      break;
    }
    case OracleFamily::RankGf: {
      p["q"] = oracle.q();
      json mats = json::array();
      for (const auto& m : oracle.matrices()) mats.push_back(matrix_to_json(m));
      p["matrices"] = std::move(mats);
      break;
    }
    case OracleFamily::UniformCap:
      p["rate"] = jnum(oracle.rate());
      break;
    case OracleFamily::Scaled:
      p["factor"] = jnum(oracle.factor());
      p["inner"] = oracle_to_json(oracle.inner(), false);
      break;
    case OracleFamily::Truncation:
      p["cap"] = jnum(oracle.cap());
      p["inner"] = oracle_to_json(oracle.inner(), false);
      break;
    case OracleFamily::Table: {
      json vals = json::array();
      for (double v : oracle.table_values()) vals.push_back(jnum(v));
      p["values"] = std::move(vals);
      break;
    }
  }
  j["params"] = std::move(p);
  if (with_ground) j["ground"] = oracle.ground().elements();
  return j;
}

SubmodularOracle oracle_from_json(const json& j, std::optional<GroundSet> ground) {
  const std::string where = "oracle";
  const std::string family = need_str(j, "family", where);
  const json& p = need(j, "params", where);
  GroundSet g = ground ? std::move(*ground) : GroundSet(str_list(j, "ground", where));

  if (family == "modular") return SubmodularOracle::modular(std::move(g), num_list(p, "weights", where));
  if (family == "cutErasure") return SubmodularOracle::cut_erasure(std::move(g), need_num(p, "epsilon", where));
  if (family == "gaussianMacLog") {
    const double base = p.contains("logBase") ? p["logBase"].get<double>() : 2.0;
    return SubmodularOracle::gaussian_mac_log(std::move(g), num_list(p, "gainsSq", where),
                                              need_num(p, "power", where), base);
  }
  if (family == "rankGf") {
    const json& mats = need(p, "matrices", where);
    std::vector<GfMatrix> ms;
    for (const auto& m : mats) ms.push_back(matrix_from_json(m, where));
    return SubmodularOracle::rank_gf(std::move(g), static_cast<int>(need_num(p, "q", where)),
                                     std::move(ms));
  }
  if (family == "uniformCap") return SubmodularOracle::uniform_cap(std::move(g), need_num(p, "rate", where));
  if (family == "scaled")
    return SubmodularOracle::scaled(oracle_from_json(need(p, "inner", where), g),
                                    need_num(p, "factor", where));
  if (family == "truncation")
    return SubmodularOracle::truncation(oracle_from_json(need(p, "inner", where), g),
                                        need_num(p, "cap", where));
  if (family == "table") return SubmodularOracle::table(std::move(g), num_list(p, "values", where));
  throw ParseError("unknown oracle family \"" + family + "\"");
}

TrafficPattern traffic_from_json(const json& j) {
  const std::string where = "traffic";
  const std::string kind = need_str(j, "kind", where);
  if (kind == "multipleUnicast") {
    std::vector<Commodity> cs;
    for (const auto& c : need(j, "commodities", where)) {
      Commodity com;
      com.source = need_str(c, "source", where);
      com.sink = need_str(c, "sink", where);
      com.demand = c.contains("demand") ? c["demand"].get<double>() : 1.0;
      cs.push_back(std::move(com));
    }
    return TrafficPattern::multiple_unicast(std::move(cs));
  }
  if (kind == "broadcast")
    return TrafficPattern::broadcast(need_str(j, "source", where), str_list(j, "sinks", where));
  if (kind == "xTraffic")
    return TrafficPattern::x_traffic(str_list(j, "sources", where), str_list(j, "sinks", where));
  if (kind == "group") return TrafficPattern::group(str_list(j, "nodes", where));
  throw ParseError("unknown traffic kind \"" + kind + "\"");
}

json traffic_to_json(const TrafficPattern& traffic) {
  json j;
  switch (traffic.kind()) {
    case TrafficKind::MultipleUnicast: {
      j["kind"] = "multipleUnicast";
      json cs = json::array();
      for (const auto& c : traffic.commodities())
        cs.push_back({{"source", c.source}, {"sink", c.sink}, {"demand", jnum(c.demand)}});
      j["commodities"] = std::move(cs);
      break;
    }
    case TrafficKind::Broadcast: {
      j["kind"] = "broadcast";
      j["source"] = traffic.commodities().front().source;
      json sinks = json::array();
      for (const auto& c : traffic.commodities()) sinks.push_back(c.sink);
      j["sinks"] = std::move(sinks);
      break;
    }
    case TrafficKind::XTraffic:
      j["kind"] = "xTraffic";
      j["sources"] = traffic.x_sources();
      j["sinks"] = traffic.x_sinks();
      break;
    case TrafficKind::Group:
      j["kind"] = "group";
      j["nodes"] = traffic.group_nodes();
      break;
  }
  return j;
}

NetworkFile parse_network_json(const json& j) {
  const std::string where = "network";
  if (!j.is_object()) throw ParseError("network file must be a JSON object");
  const int version = static_cast<int>(need_num(j, "schemaVersion", where));
  if (version != kSchemaVersion)
    throw ParseError("unsupported schemaVersion " + std::to_string(version));

  std::vector<std::string> nodes = str_list(j, "nodes", where);
  std::vector<Edge> edges;
  for (const auto& e : need(j, "edges", where))
    edges.push_back({need_str(e, "id", "edge"), need_str(e, "tail", "edge"), need_str(e, "head", "edge")});

  auto parse_caps = [&](const char* field) {
    std::map<std::string, SideCap> caps;
    if (!j.contains(field)) return caps;
    const json& m = j[field];
    if (!m.is_object()) throw ParseError(std::string(field) + " must be an object");
    for (auto it = m.begin(); it != m.end(); ++it) {
      SideCap cap;
      const json& rec = it.value();
      if (rec.contains("family")) cap.oracle = oracle_from_json(rec);
      if (rec.contains("free")) cap.free_edges = str_list(rec, "free", field);
      caps[it.key()] = std::move(cap);
    }
    return caps;
  };

  NetworkFile out{PolyNet(std::move(nodes), std::move(edges), parse_caps("inCap"), parse_caps("outCap")),
                  std::nullopt, std::nullopt};
  if (j.contains("tau")) {
    std::map<std::string, std::string> pairs;
    for (const auto& pair : j["tau"]) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("tau entries must be pairs");
      pairs[pair[0].get<std::string>()] = pair[1].get<std::string>();
    }
    out.tau = ReversalMap(std::move(pairs));
  }
  if (j.contains("traffic")) out.traffic = traffic_from_json(j["traffic"]);
  return out;
}

json network_to_json(const PolyNet& net, const ReversalMap* tau, const TrafficPattern* traffic) {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["nodes"] = net.nodes();
  json edges = json::array();
  for (const auto& e : net.edges())
    edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  j["edges"] = std::move(edges);

  auto caps_to_json = [&](const std::map<std::string, SideCap>& caps) {
    json m = json::object();
    for (const auto& [node, cap] : caps) {
      json rec = cap.oracle ? oracle_to_json(*cap.oracle) : json::object();
      if (!cap.free_edges.empty()) rec["free"] = cap.free_edges;
      m[node] = std::move(rec);
    }
    return m;
  };
  j["inCap"] = caps_to_json(net.in_caps());
  j["outCap"] = caps_to_json(net.out_caps());

  if (tau) {
    json pairs = json::array();
    std::set<std::string> seen;
    for (const auto& [a, b] : tau->pairs()) {
      if (seen.count(a)) continue;
      seen.insert(a);
      seen.insert(b);
      pairs.push_back({a, b});
    }
    j["tau"] = std::move(pairs);
  }
  if (traffic) j["traffic"] = traffic_to_json(*traffic);
  return j;
}

FadingModel fading_from_json(const json& j) {
  const std::string kind = need_str(j, "kind", "fading");
  if (kind == "rayleigh") return FadingModel::rayleigh_unit_variance();
  if (kind == "discreteSymmetric") {
    std::vector<FadingPoint> points;
    for (const auto& p : need(j, "points", "fading"))
      points.push_back({need_num(p, "value", "fading"), need_num(p, "prob", "fading")});
    return FadingModel::discrete_symmetric(std::move(points));
  }
  throw ParseError("unknown fading kind \"" + kind + "\"");
}

json fading_to_json(const FadingModel& model) {
  json j;
  if (model.is_rayleigh()) {
    j["kind"] = "rayleigh";
  } else {
    j["kind"] = "discreteSymmetric";
    json points = json::array();
    for (const auto& p : model.points())
      points.push_back({{"value", jnum(p.value)}, {"prob", jnum(p.prob)}});
    j["points"] = std::move(points);
  }
  return j;
}

WirelessSpec parse_wireless_json(const json& j) {
  const std::string where = "wireless";
  if (!j.is_object()) throw ParseError("wireless file must be a JSON object");
  const int version = static_cast<int>(need_num(j, "schemaVersion", where));
  if (version != kSchemaVersion)
    throw ParseError("unsupported schemaVersion " + std::to_string(version));

  WirelessSpec spec;
  const std::string mode = j.contains("mode") ? j["mode"].get<std::string>() : "color";
  if (mode == "color")
    spec.mode = CompileMode::Color;
  else if (mode == "snapshot")
    spec.mode = CompileMode::Snapshot;
  else if (mode == "antenna")
    spec.mode = CompileMode::Antenna;
  else
    throw ParseError("unknown compile mode \"" + mode + "\"");
  spec.reciprocal = j.contains("reciprocal") && j["reciprocal"].get<bool>();

  auto edge_pairs = [&](const json& ch) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& e : need(ch, "edges", "channel")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("channel edges must be pairs");
      pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return pairs;
  };

  for (const auto& ch : need(j, "channels", where)) {
    const std::string kind = need_str(ch, "kind", "channel");
    if (kind == "gaussianMac") {
      spec.channels.push_back(GaussianMacSpec{need_str(ch, "color", kind), need_str(ch, "receiver", kind),
                                              str_list(ch, "sources", kind), num_list(ch, "gains", kind),
                                              need_num(ch, "power", kind)});
    } else if (kind == "gaussianBc") {
      spec.channels.push_back(GaussianBcSpec{need_str(ch, "color", kind), need_str(ch, "transmitter", kind),
                                             str_list(ch, "receivers", kind), num_list(ch, "gains", kind),
                                             need_num(ch, "power", kind)});
    } else if (kind == "erasureBc" || kind == "erasureBcFb") {
      ErasureBcSpec e;
      e.color = need_str(ch, "color", kind);
      e.transmitter = need_str(ch, "transmitter", kind);
      e.receivers = str_list(ch, "receivers", kind);
      e.epsilon = need_num(ch, "epsilon", kind);
      e.feedback = kind == "erasureBcFb" || (ch.contains("feedback") && ch["feedback"].get<bool>());
      spec.channels.push_back(std::move(e));
    } else if (kind == "linDetMac" || kind == "linDetBc") {
      std::vector<GfMatrix> mats;
      for (const auto& m : need(ch, "matrices", kind)) mats.push_back(matrix_from_json(m, kind));
      const int q = static_cast<int>(need_num(ch, "q", kind));
      if (kind == "linDetMac")
        spec.channels.push_back(LinDetMacSpec{need_str(ch, "color", kind), need_str(ch, "receiver", kind),
                                              str_list(ch, "sources", kind), q, std::move(mats)});
      else
        spec.channels.push_back(LinDetBcSpec{need_str(ch, "color", kind), need_str(ch, "transmitter", kind),
                                             str_list(ch, "receivers", kind), q, std::move(mats)});
    } else if (kind == "delayedCsitBc") {
      DelayedCsitBcSpec d;
      d.color = need_str(ch, "color", kind);
      d.transmitter = need_str(ch, "transmitter", kind);
      d.receivers = str_list(ch, "receivers", kind);
      d.tx_antennas = static_cast<int>(need_num(ch, "txAntennas", kind));
      for (double m : num_list(ch, "rxAntennas", kind)) d.rx_antennas.push_back(static_cast<int>(m));
      spec.channels.push_back(std::move(d));
    } else if (kind == "fadingX") {
      XChannelSpec x;
      x.flavor = XFlavor::FadingX;
      x.edges = edge_pairs(ch);
      x.power = need_num(ch, "power", kind);
      x.fading = fading_from_json(need(ch, "fading", kind));
      spec.channels.push_back(std::move(x));
    } else if (kind == "fixedXdof") {
      XChannelSpec x;
      x.flavor = XFlavor::FixedXdof;
      x.edges = edge_pairs(ch);
      spec.channels.push_back(std::move(x));
    } else if (kind == "fadingLdX") {
      XChannelSpec x;
      x.flavor = XFlavor::FadingLdX;
      x.edges = edge_pairs(ch);
      x.q = static_cast<int>(need_num(ch, "q", kind));
      spec.channels.push_back(std::move(x));
    } else {
      throw ParseError("unknown channel kind \"" + kind + "\"");
    }
  }

  if (j.contains("antennas"))
    for (auto it = j["antennas"].begin(); it != j["antennas"].end(); ++it)
      spec.antenna_counts[it.key()] = it.value().get<int>();
  if (j.contains("extraNodes")) spec.extra_nodes = str_list(j, "extraNodes", where);
  if (j.contains("traffic")) spec.traffic = traffic_from_json(j["traffic"]);
  return spec;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace polyflow
