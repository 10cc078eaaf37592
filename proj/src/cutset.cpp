#include "polyflow/cutset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyflow/lp.hpp"
#include "polyflow/rng.hpp"

namespace polyflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One chargeable side of a crossing edge.
struct ChargeSide {
  bool free = false;
  int node = -1;
  bool in_side = false;
  int pos = -1;  // position in the side oracle's ground
};

struct EngineResult {
  double cost = 0;
  bool unbounded = false;
  bool exact = true;
  std::vector<char> to_head;  // per crossing edge
};

// Assignment machinery over an explicit crossing edge list.
class AssignmentEngine {
 public:
  AssignmentEngine(const PolyNet& net, std::vector<int> crossing)
      : net_(net), crossing_(std::move(crossing)) {
    tail_.reserve(crossing_.size());
    head_.reserve(crossing_.size());
    for (int e : crossing_) {
      tail_.push_back(side_of(e, /*at_head=*/false));
      head_.push_back(side_of(e, /*at_head=*/true));
    }
  }

  EngineResult run(const CutOptions& opts) {
    const int f = static_cast<int>(crossing_.size());
    if (f == 0) return {};

    for (int i = 0; i < f; ++i)
      if (tail_[static_cast<size_t>(i)].free && head_[static_cast<size_t>(i)].free) {
        EngineResult r;
        r.unbounded = true;
        return r;
      }

    if (all_uniform_cap()) return uniform_cap_cover();
    if (f <= std::min(opts.assignment_cap, 30)) return exhaustive();
    if (opts.greedy_fallback) return greedy();
    throw SizeCapError("cut with " + std::to_string(f) + " crossing edges exceeds the assignment cap " +
                       std::to_string(opts.assignment_cap) + "; enable the greedy fallback");
  }

  const std::vector<int>& crossing() const { return crossing_; }

 private:
  ChargeSide side_of(int e, bool at_head) const {
    ChargeSide s;
    s.node = at_head ? net_.head_of(e) : net_.tail_of(e);
    s.in_side = at_head;
    if (net_.edge_free_at(e, at_head)) {
      s.free = true;
      return s;
    }
    const auto& ground = net_.ground_edges(s.node, s.in_side);
    for (int p = 0; p < static_cast<int>(ground.size()); ++p)
      if (ground[static_cast<size_t>(p)] == e) {
        s.pos = p;
        break;
      }
    return s;
  }

  const SubmodularOracle& oracle_at(const ChargeSide& s) const {
    return *net_.cap(s.node, s.in_side)->oracle;
  }

  bool all_uniform_cap() const {
    for (size_t i = 0; i < crossing_.size(); ++i)
      for (const ChargeSide* s : {&tail_[i], &head_[i]})
        if (!s->free && oracle_at(*s).family() != OracleFamily::UniformCap) return false;
    return true;
  }

  // nu(F) over UniformCap sides is a minimum-weight vertex cover on the
  // bipartite bucket graph (out-buckets vs in-buckets), solved by max-flow.
  EngineResult uniform_cap_cover();

  EngineResult exhaustive();
  EngineResult greedy();

  const PolyNet& net_;
  std::vector<int> crossing_;
  std::vector<ChargeSide> tail_, head_;
};

// Tiny max-flow (Dinic) for the vertex-cover reduction.
class Dinic {
 public:
  explicit Dinic(int n) : adj_(static_cast<size_t>(n)) {}
  void add(int a, int b, double cap) {
    adj_[static_cast<size_t>(a)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({b, cap});
    adj_[static_cast<size_t>(b)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({a, 0.0});
  }
  double max_flow(int s, int t) {
    double total = 0;
    while (bfs(s, t)) {
      iter_.assign(adj_.size(), 0);
      double f;
      while ((f = dfs(s, t, kInf)) > 1e-12) total += f;
    }
    return total;
  }
  bool reachable(int v) const { return level_[static_cast<size_t>(v)] >= 0; }

 private:
  struct Arc {
    int to;
    double cap;
  };
  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::vector<int> q{s};
    level_[static_cast<size_t>(s)] = 0;
    for (size_t qi = 0; qi < q.size(); ++qi) {
      const int v = q[qi];
      for (int id : adj_[static_cast<size_t>(v)]) {
        const Arc& a = arcs_[static_cast<size_t>(id)];
        if (a.cap > 1e-12 && level_[static_cast<size_t>(a.to)] < 0) {
          level_[static_cast<size_t>(a.to)] = level_[static_cast<size_t>(v)] + 1;
          q.push_back(a.to);
        }
      }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }
  double dfs(int v, int t, double pushed) {
    if (v == t) return pushed;
    for (size_t& i = iter_[static_cast<size_t>(v)]; i < adj_[static_cast<size_t>(v)].size(); ++i) {
      const int id = adj_[static_cast<size_t>(v)][i];
      Arc& a = arcs_[static_cast<size_t>(id)];
      if (a.cap <= 1e-12 || level_[static_cast<size_t>(a.to)] != level_[static_cast<size_t>(v)] + 1)
        continue;
      const double got = dfs(a.to, t, std::min(pushed, a.cap));
      if (got > 1e-12) {
        a.cap -= got;
        arcs_[static_cast<size_t>(id ^ 1)].cap += got;
        return got;
      }
    }
    return 0;
  }
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<size_t> iter_;
};

EngineResult AssignmentEngine::uniform_cap_cover() {
  const int f = static_cast<int>(crossing_.size());

  // Bucket = a chargeable (node, side). Forced edges (other side free) choose
  // their bucket up front at full price; the rest is a min-weight cover.
  std::map<std::pair<int, bool>, int> bucket_id;
  std::vector<double> weight;
  std::vector<std::pair<int, bool>> bucket_key;
  auto bucket = [&](const ChargeSide& s) {
    auto [it, fresh] = bucket_id.emplace(std::make_pair(s.node, s.in_side),
                                         static_cast<int>(weight.size()));
    if (fresh) {
      weight.push_back(oracle_at(s).rate());
      bucket_key.emplace_back(s.node, s.in_side);
    }
    return it->second;
  };

  std::vector<char> chosen;
  std::vector<int> tb(static_cast<size_t>(f), -1), hb(static_cast<size_t>(f), -1);
  for (int i = 0; i < f; ++i) {
    if (!tail_[static_cast<size_t>(i)].free) tb[static_cast<size_t>(i)] = bucket(tail_[static_cast<size_t>(i)]);
    if (!head_[static_cast<size_t>(i)].free) hb[static_cast<size_t>(i)] = bucket(head_[static_cast<size_t>(i)]);
  }
  chosen.assign(weight.size(), 0);

  EngineResult res;
  res.to_head.assign(static_cast<size_t>(f), 0);
  for (int i = 0; i < f; ++i) {
    if (tb[static_cast<size_t>(i)] < 0) {  // tail free: must charge the head
      if (!chosen[static_cast<size_t>(hb[static_cast<size_t>(i)])]) {
        chosen[static_cast<size_t>(hb[static_cast<size_t>(i)])] = 1;
        res.cost += weight[static_cast<size_t>(hb[static_cast<size_t>(i)])];
      }
    } else if (hb[static_cast<size_t>(i)] < 0) {
      if (!chosen[static_cast<size_t>(tb[static_cast<size_t>(i)])]) {
        chosen[static_cast<size_t>(tb[static_cast<size_t>(i)])] = 1;
        res.cost += weight[static_cast<size_t>(tb[static_cast<size_t>(i)])];
      }
    }
  }

  // Cover the remaining both-sided edges: source -> out bucket -> in bucket
  // -> sink, with already-chosen buckets at zero residual price.
  const int nb = static_cast<int>(weight.size());
  Dinic flow(nb + 2);
  const int S = nb, T = nb + 1;
  std::vector<char> on_left(static_cast<size_t>(nb), 0);
  for (int b = 0; b < nb; ++b) on_left[static_cast<size_t>(b)] = !bucket_key[static_cast<size_t>(b)].second;
  for (int b = 0; b < nb; ++b) {
    const double w = chosen[static_cast<size_t>(b)] ? 0.0 : weight[static_cast<size_t>(b)];
    if (on_left[static_cast<size_t>(b)])
      flow.add(S, b, w);
    else
      flow.add(b, T, w);
  }
  for (int i = 0; i < f; ++i)
    if (tb[static_cast<size_t>(i)] >= 0 && hb[static_cast<size_t>(i)] >= 0)
      flow.add(tb[static_cast<size_t>(i)], hb[static_cast<size_t>(i)], kInf);
  res.cost += flow.max_flow(S, T);

  // Min cut: left buckets unreachable from S, right buckets reachable.
  for (int b = 0; b < nb; ++b) {
    const bool in_cover = on_left[static_cast<size_t>(b)] ? !flow.reachable(b) : flow.reachable(b);
    if (in_cover) chosen[static_cast<size_t>(b)] = 1;
  }
  for (int i = 0; i < f; ++i) {
    if (tb[static_cast<size_t>(i)] >= 0 && chosen[static_cast<size_t>(tb[static_cast<size_t>(i)])])
      res.to_head[static_cast<size_t>(i)] = 0;
    else
      res.to_head[static_cast<size_t>(i)] = 1;
  }
  return res;
}

EngineResult AssignmentEngine::exhaustive() {
  const int f = static_cast<int>(crossing_.size());
  std::uint32_t must_head = 0, must_tail = 0;
  for (int i = 0; i < f; ++i) {
    if (tail_[static_cast<size_t>(i)].free) must_head |= 1u << i;
    if (head_[static_cast<size_t>(i)].free) must_tail |= 1u << i;
  }

  // Bucket bookkeeping with memoized oracle evaluations.
  std::map<std::pair<int, bool>, int> bucket_id;
  std::vector<const SubmodularOracle*> bucket_oracle;
  std::vector<std::map<Mask, double>> memo;
  auto bucket = [&](const ChargeSide& s) {
    auto [it, fresh] = bucket_id.emplace(std::make_pair(s.node, s.in_side),
                                         static_cast<int>(bucket_oracle.size()));
    if (fresh) {
      bucket_oracle.push_back(&oracle_at(s));
      memo.emplace_back();
    }
    return it->second;
  };
  std::vector<int> tb(static_cast<size_t>(f), -1), hb(static_cast<size_t>(f), -1);
  for (int i = 0; i < f; ++i) {
    if (!tail_[static_cast<size_t>(i)].free) tb[static_cast<size_t>(i)] = bucket(tail_[static_cast<size_t>(i)]);
    if (!head_[static_cast<size_t>(i)].free) hb[static_cast<size_t>(i)] = bucket(head_[static_cast<size_t>(i)]);
  }
  const int nb = static_cast<int>(bucket_oracle.size());

  EngineResult best;
  best.cost = kInf;
  std::vector<Mask> group(static_cast<size_t>(nb));
  for (std::uint32_t a = 0; a < (1u << f); ++a) {
    if ((a & must_head) != must_head || (a & must_tail) != 0) continue;
    std::fill(group.begin(), group.end(), 0);
    for (int i = 0; i < f; ++i) {
      const bool to_head = (a >> i) & 1u;
      const ChargeSide& s = to_head ? head_[static_cast<size_t>(i)] : tail_[static_cast<size_t>(i)];
      group[static_cast<size_t>(to_head ? hb[static_cast<size_t>(i)] : tb[static_cast<size_t>(i)])] |=
          Mask(1) << s.pos;
    }
    double cost = 0;
    for (int b = 0; b < nb && cost < best.cost; ++b) {
      const Mask m = group[static_cast<size_t>(b)];
      if (m == 0) continue;
      auto [it, fresh] = memo[static_cast<size_t>(b)].try_emplace(m, 0.0);
      if (fresh) it->second = bucket_oracle[static_cast<size_t>(b)]->eval(m);
      cost += it->second;
    }
    if (cost < best.cost) {
      best.cost = cost;
      best.to_head.assign(static_cast<size_t>(f), 0);
      for (int i = 0; i < f; ++i) best.to_head[static_cast<size_t>(i)] = (a >> i) & 1u;
    }
  }
  return best;
}

EngineResult AssignmentEngine::greedy() {
  const int f = static_cast<int>(crossing_.size());
  // Sequential in edge-id order; approximate by construction.
  std::vector<int> order(static_cast<size_t>(f));
  for (int i = 0; i < f; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return net_.edge(crossing_[static_cast<size_t>(a)]).id < net_.edge(crossing_[static_cast<size_t>(b)]).id;
  });

  std::map<std::pair<int, bool>, Mask> group;
  EngineResult res;
  res.exact = false;
  res.to_head.assign(static_cast<size_t>(f), 0);
  double total = 0;
  for (int i : order) {
    const ChargeSide& t = tail_[static_cast<size_t>(i)];
    const ChargeSide& h = head_[static_cast<size_t>(i)];
    auto marginal = [&](const ChargeSide& s) {
      if (s.free) return kInf;
      const Mask cur = group[{s.node, s.in_side}];
      const auto& fo = oracle_at(s);
      return fo.eval(cur | (Mask(1) << s.pos)) - fo.eval(cur);
    };
    const double mt = marginal(t), mh = marginal(h);
    if (mt <= mh) {
      group[{t.node, t.in_side}] |= Mask(1) << t.pos;
      total += mt;
      res.to_head[static_cast<size_t>(i)] = 0;
    } else {
      group[{h.node, h.in_side}] |= Mask(1) << h.pos;
      total += mh;
      res.to_head[static_cast<size_t>(i)] = 1;
    }
  }
  res.cost = total;
  return res;
}

std::vector<int> crossing_edges(const PolyNet& net, const std::vector<char>& in_omega) {
  std::vector<int> f;
  for (int e = 0; e < net.num_edges(); ++e)
    if (in_omega[static_cast<size_t>(net.tail_of(e))] && !in_omega[static_cast<size_t>(net.head_of(e))])
      f.push_back(e);
  return f;
}

CutCertificate make_certificate(const PolyNet& net, const std::vector<char>& in_omega,
                                const std::vector<int>& crossing, const EngineResult& er,
                                const TrafficPattern* traffic) {
  CutCertificate cert;
  for (int v = 0; v < net.num_nodes(); ++v)
    if (in_omega[static_cast<size_t>(v)]) cert.omega.push_back(net.nodes()[static_cast<size_t>(v)]);
  for (int e : crossing) cert.crossing.push_back(net.edge(e).id);
  cert.cost = er.unbounded ? kInf : er.cost;
  cert.unbounded = er.unbounded;
  cert.exact = er.exact;
  if (!er.unbounded)
    for (size_t i = 0; i < crossing.size(); ++i) {
      const Edge& e = net.edge(crossing[i]);
      cert.assignment[e.id] = er.to_head[i] ? e.head : e.tail;
    }
  if (traffic)
    for (int i = 0; i < traffic->size(); ++i) {
      const auto& c = traffic->commodities()[static_cast<size_t>(i)];
      const int s = net.node_index(c.source), t = net.node_index(c.sink);
      if (s >= 0 && t >= 0 && in_omega[static_cast<size_t>(s)] && !in_omega[static_cast<size_t>(t)])
        cert.separated.push_back(i);
    }
  return cert;
}

}  // namespace

CutCertificate cut_cost(const PolyNet& net, const std::set<std::string>& omega,
                        const CutOptions& opts, const TrafficPattern* traffic) {
  net.require_consistent();
  std::vector<char> in_omega(static_cast<size_t>(net.num_nodes()), 0);
  for (const auto& id : omega) {
    const int v = net.node_index(id);
    if (v < 0) throw InvalidInputError("cut_cost: unknown node " + id);
    in_omega[static_cast<size_t>(v)] = 1;
  }
  const auto crossing = crossing_edges(net, in_omega);
  AssignmentEngine engine(net, crossing);
  return make_certificate(net, in_omega, crossing, engine.run(opts), traffic);
}

double CutRegionReport::scalar_min_cut() const {
  double best = kInf;
  for (const auto& e : entries) best = std::min(best, e.bound);
  return best;
}

double CutRegionReport::support(const std::vector<double>& w) const {
  if (static_cast<int>(w.size()) != num_commodities)
    throw InvalidInputError("support: direction dimension mismatch");
  std::uint32_t covered = 0;
  for (const auto& e : entries) covered |= e.separated;
  for (int i = 0; i < num_commodities; ++i)
    if (w[static_cast<size_t>(i)] > 0 && !(covered & (1u << i))) return kInf;

  LinearProgram lp;
  for (int i = 0; i < num_commodities; ++i) lp.add_variable(std::max(w[static_cast<size_t>(i)], 0.0));
  for (const auto& e : entries) {
    const int row = lp.add_row('<', e.bound);
    for (int i = 0; i < num_commodities; ++i)
      if (e.separated & (1u << i)) lp.add_term(row, i, 1.0);
  }
  auto sol = solve_lp(lp);
  if (sol.status == LpStatus::Unbounded) return kInf;
  if (sol.status != LpStatus::Optimal) throw SolverError("cut support LP failed");
  return sol.objective;
}

double CutRegionReport::concurrent_upper(const std::vector<double>& demands) const {
  double best = kInf;
  for (const auto& e : entries) {
    double d = 0;
    for (int i = 0; i < num_commodities; ++i)
      if (e.separated & (1u << i)) d += demands[static_cast<size_t>(i)];
    if (d > 0) best = std::min(best, e.bound / d);
  }
  return best;
}

CutRegionReport min_cut(const PolyNet& net, const TrafficPattern& traffic, const CutOptions& opts) {
  net.require_consistent();
  if (net.num_nodes() > opts.vertex_cap)
    throw SizeCapError("min_cut: " + std::to_string(net.num_nodes()) + " nodes exceed the vertex cap " +
                       std::to_string(opts.vertex_cap));
  if (traffic.size() > 31) throw SizeCapError("min_cut: too many commodities for mask bookkeeping");

  std::vector<int> src, dst;
  for (const auto& c : traffic.commodities()) {
    const int s = net.node_index(c.source), t = net.node_index(c.sink);
    if (s < 0 || t < 0) throw InvalidInputError("min_cut: traffic names unknown node");
    src.push_back(s);
    dst.push_back(t);
  }

  std::map<std::uint32_t, CutEntry> best;
  const int n = net.num_nodes();
  std::vector<char> in_omega(static_cast<size_t>(n), 0);
  const std::uint64_t limit = std::uint64_t(1) << n;
  for (std::uint64_t mask = 1; mask + 1 < limit; ++mask) {
    std::uint32_t separated = 0;
    for (int i = 0; i < traffic.size(); ++i) {
      const bool s_in = (mask >> src[static_cast<size_t>(i)]) & 1u;
      const bool t_in = (mask >> dst[static_cast<size_t>(i)]) & 1u;
      if (s_in && !t_in) separated |= 1u << i;
    }
    if (separated == 0) continue;
    for (int v = 0; v < n; ++v) in_omega[static_cast<size_t>(v)] = (mask >> v) & 1u;

    const auto crossing = crossing_edges(net, in_omega);
    AssignmentEngine engine(net, crossing);
    EngineResult er = engine.run(opts);
    if (er.unbounded) continue;  // non-binding

    auto it = best.find(separated);
    if (it == best.end() || er.cost < it->second.bound - 1e-15) {
      CutEntry entry;
      entry.separated = separated;
      entry.bound = er.cost;
      entry.cert = make_certificate(net, in_omega, crossing, er, &traffic);
      best[separated] = std::move(entry);
    }
  }

  CutRegionReport report;
  report.num_commodities = traffic.size();
  std::uint32_t covered = 0;
  for (auto& [sep, entry] : best) {
    covered |= sep;
    report.entries.push_back(std::move(entry));
  }
  for (int i = 0; i < traffic.size(); ++i)
    if (!(covered & (1u << i))) report.all_separable = false;
  return report;
}

GapReport flow_cut_gap(const PolyNet& net, const TrafficPattern& traffic, const GapOptions& opts) {
  const int k = traffic.size();
  CutRegionReport cut = min_cut(net, traffic, opts.cut);

  std::vector<std::vector<double>> directions;
  for (int i = 0; i < k; ++i) {
    std::vector<double> w(static_cast<size_t>(k), 0.0);
    w[static_cast<size_t>(i)] = 1.0;
    directions.push_back(std::move(w));
  }
  directions.emplace_back(static_cast<size_t>(k), 1.0);
  Rng rng(opts.seed);
  for (int r = 0; r < opts.random_directions; ++r) {
    std::vector<double> w(static_cast<size_t>(k));
    for (auto& v : w) v = rng.uniform();
    directions.push_back(std::move(w));
  }

  GapReport report;
  for (auto& w : directions) {
    GapReport::Row row;
    row.w = w;
    row.h_cut = cut.support(w);
    row.h_flow = max_weighted_sum(net, traffic, w, opts.flow).objective;
    const bool cut_inf = std::isinf(row.h_cut), flow_inf = std::isinf(row.h_flow);
    if (cut_inf && flow_inf) {
      row.ratio = 1.0;
    } else if (flow_inf) {
      row.ratio = 0.0;  // finite cut below an unbounded flow: a genuine violation
    } else if (cut_inf || row.h_flow < 1e-9) {
      row.ratio = row.h_cut < 1e-9 ? 1.0 : kInf;
    } else {
      row.ratio = row.h_cut / row.h_flow;
    }
    if (row.ratio < 1.0 - 1e-6) report.flow_within_cut = false;
    report.gap = std::max(report.gap, row.ratio);
    report.rows.push_back(std::move(row));
  }
  return report;
}

DecompositionCheck decomposition_check(const PolyNet& net,
                                       const std::map<std::string, std::string>& edge_channel,
                                       const std::set<std::string>& omega, const CutOptions& opts) {
  net.require_consistent();
  std::vector<char> in_omega(static_cast<size_t>(net.num_nodes()), 0);
  for (const auto& id : omega) {
    const int v = net.node_index(id);
    if (v < 0) throw InvalidInputError("decomposition_check: unknown node " + id);
    in_omega[static_cast<size_t>(v)] = 1;
  }
  const auto crossing = crossing_edges(net, in_omega);

  std::map<std::string, std::vector<int>> per_channel;
  for (int e : crossing) {
    auto it = edge_channel.find(net.edge(e).id);
    if (it == edge_channel.end())
      throw InvalidInputError("decomposition_check: crossing edge " + net.edge(e).id +
                              " carries no channel label");
    per_channel[it->second].push_back(e);
  }

  DecompositionCheck out;
  {
    AssignmentEngine whole(net, crossing);
    EngineResult er = whole.run(opts);
    out.whole_unbounded = er.unbounded;
    out.whole = er.unbounded ? kInf : er.cost;
  }
  for (auto& [channel, edges] : per_channel) {
    AssignmentEngine part(net, edges);
    EngineResult er = part.run(opts);
    if (er.unbounded) out.parts_unbounded = true;
    out.sum_parts += er.unbounded ? 0 : er.cost;
  }
  if (out.parts_unbounded) out.sum_parts = kInf;
  out.holds = out.whole <= out.sum_parts + 1e-9;
  return out;
}

}  // namespace polyflow
