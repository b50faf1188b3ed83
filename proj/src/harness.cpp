#include "leader/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "leader/colored_map.hpp"
#include "leader/unbounded.hpp"

namespace leader {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Unbounded: return "unbounded";
    case Scheme::Bounded: return "bounded";
    default: return "colored-map";
  }
}

Scheme parse_scheme(const std::string& s) {
  if (s == "unbounded") return Scheme::Unbounded;
  if (s == "bounded") return Scheme::Bounded;
  if (s == "colored-map") return Scheme::ColoredMap;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

Elector make_elector(Scheme s, int tau, const SchemeParams* params) {
  switch (s) {
    case Scheme::Unbounded:
      return [tau](const LabeledBall& b) { return elect_unbounded(b, tau); };
    case Scheme::Bounded: {
      if (!params) throw std::invalid_argument("bounded elector needs scheme parameters");
      SchemeParams p = *params;
      return [p](const LabeledBall& b) { return bounded_valency_election(b, p); };
    }
    default:
      return [](const LabeledBall& b) { return elect_colored_map(b); };
  }
}

int thread_count() {
  if (const char* e = std::getenv("LEADER_THREADS")) {
    int v = std::atoi(e);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> ts;
  for (std::size_t w = 0; w < workers; ++w) ts.emplace_back(work);
  for (auto& t : ts) t.join();
  if (err) std::rethrow_exception(err);
}

VerifyFlags verify_outputs(const PortLabeledTree& t, const std::vector<PathCode>& outputs,
                           const std::vector<char>& missing) {
  VerifyFlags f;
  f.all_simple = true;
  std::set<NodeId> ends;
  for (NodeId v = 0; v < t.size(); ++v) {
    if ((v < static_cast<NodeId>(missing.size()) && missing[v]) || v >= static_cast<NodeId>(outputs.size())) {
      f.all_simple = false;
      f.bad_nodes.push_back(v);
      continue;
    }
    try {
      ends.insert(follow_path(t, v, outputs[v]));
    } catch (const TreeError&) {
      f.all_simple = false;
      f.bad_nodes.push_back(v);
    }
  }
  f.common_endpoint = ends.size() == 1 && f.bad_nodes.empty();
  if (f.all_simple && f.common_endpoint) f.endpoint = *ends.begin();
  return f;
}

AdviceMeasure measure_advice(const AdviceAssignment& a) { return {a.size(), a.valency()}; }

int ElectionOutcome::error_count() const {
  return static_cast<int>(std::count_if(errors.begin(), errors.end(), [](auto& e) { return !e.empty(); }));
}

ElectionOutcome run_election(const PortLabeledTree& t, const AdviceAssignment& a, const Elector& elector, int tau,
                             NodeId expected_root) {
  auto start = std::chrono::steady_clock::now();
  ElectionOutcome o;
  int n = t.size();
  o.outputs.assign(n, {});
  o.errors.assign(n, "");
  auto m = measure_advice(a);
  o.advice_size = m.size;
  o.valency = m.valency;
  if (static_cast<int>(a.per_node.size()) != n) {
    std::fill(o.errors.begin(), o.errors.end(), "advice does not match the tree");
  } else {
    AdviceIndex idx(a);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
      NodeId v = static_cast<NodeId>(i);
      try {
        o.outputs[v] = elector(extract_ball(t, idx, v, tau));
      } catch (const std::exception& e) {
        o.errors[v] = e.what()[0] ? e.what() : "error";
      }
    });
  }
  std::vector<char> missing(n, 0);
  for (NodeId v = 0; v < n; ++v) missing[v] = !o.errors[v].empty();
  auto f = verify_outputs(t, o.outputs, missing);
  o.all_simple = f.all_simple;
  o.common_endpoint = f.common_endpoint;
  o.elected = f.endpoint;
  if (n > 0) {
    NodeId want = expected_root >= 0 ? expected_root : diameter_and_center(t).root;
    o.equals_root = o.elected && *o.elected == want;
  }
  o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

std::string outcome_report(const ElectionOutcome& o) {
  std::ostringstream s;
  s << "all_simple " << o.all_simple << "\n";
  s << "common_endpoint " << o.common_endpoint << "\n";
  s << "equals_root " << o.equals_root << "\n";
  s << "elected " << (o.elected ? std::to_string(*o.elected) : "none") << "\n";
  s << "advice_size " << o.advice_size << "\nvalency " << o.valency << "\n";
  for (std::size_t v = 0; v < o.outputs.size(); ++v) {
    s << v << ":";
    if (!o.errors[v].empty()) {
      s << " error " << o.errors[v] << "\n";
      continue;
    }
    for (int p : o.outputs[v]) s << " " << p;
    s << "\n";
  }
  return s.str();
}

PortLabeledTree shuffle_ports(const PortLabeledTree& t, Rng& rng) {
  std::vector<std::vector<int>> perm(t.size());
  for (NodeId v = 0; v < t.size(); ++v) {
    perm[v].resize(t.degree(v));
    for (int p = 0; p < t.degree(v); ++p) perm[v][p] = p;
    std::shuffle(perm[v].begin(), perm[v].end(), rng);
  }
  auto es = t.edges();
  for (auto& e : es) {
    e.pu = perm[e.u][e.pu];
    e.pv = perm[e.v][e.pv];
  }
  return build_tree(es, t.size());
}

namespace {

PortLabeledTree from_pairs(const std::vector<std::pair<NodeId, NodeId>>& pairs, int n) {
  std::vector<int> deg(n, 0);
  std::vector<Edge> es;
  for (auto [u, v] : pairs) es.push_back({u, deg[u]++, v, deg[v]++});
  return build_tree(es, n);
}

}  // namespace

PortLabeledTree random_tree(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n == 1) return build_tree({}, 1);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (n == 2) {
    pairs.push_back({0, 1});
  } else {
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> seq(n - 2), deg(n, 1);
    for (int& x : seq) x = pick(rng), ++deg[x];
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) leaves.push(v);
    for (int x : seq) {
      int l = leaves.top();
      leaves.pop();
      pairs.push_back({l, x});
      if (--deg[x] == 1) leaves.push(x);
    }
    int a = leaves.top();
    leaves.pop();
    pairs.push_back({a, leaves.top()});
  }
  return shuffle_ports(from_pairs(pairs, n), rng);
}

PortLabeledTree random_tree_with_diameter(int n, int D, Rng& rng, int max_branch) {
  if (D < 0 || D > n - 1 || (n > 1 && D < 1) || (n > 2 && D < 2))
    throw std::invalid_argument("no tree with n=" + std::to_string(n) + " and D=" + std::to_string(D));
  if (n == 1) return build_tree({}, 1);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<int> spine(n, 0), hang(n, 0);  // spine index and distance from the spine
  for (int i = 1; i <= D; ++i) pairs.push_back({i - 1, i}), spine[i] = i;
  std::vector<NodeId> eligible;
  for (int i = 1; i < D; ++i) eligible.push_back(i);
  auto room = [&](NodeId x) { return std::min(spine[x], D - spine[x]) - hang[x]; };
  for (NodeId v = D + 1; v < n;) {
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    NodeId x = eligible[pick(rng)];
    int len = 1;
    if (max_branch > 1) {
      int cap = std::min({max_branch, room(x), n - v});
      len = std::uniform_int_distribution<int>(1, std::max(1, cap))(rng);
    }
    for (int s = 0; s < len; ++s, ++v) {
      pairs.push_back({x, v});
      spine[v] = spine[x];
      hang[v] = hang[x] + 1;
      if (room(v) >= 1) eligible.push_back(v);
      x = v;
    }
  }
  return shuffle_ports(from_pairs(pairs, n), rng);
}

double unbounded_bound(int n, int D, int tau) {
  if (tau == 0) return D > 0 ? D * std::log2(static_cast<double>(n) / D) : 1.0;
  double r = D - 2.0 * tau;
  if (r <= 0) return 1.0;
  return std::max(1.0, (r / tau) * std::log2((n - 2.0 * tau) / r));
}

namespace {

int resolve(const std::string& s, const char* var, int value) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.substr(0, slash) != var) throw std::invalid_argument("expected " + std::string(var) + "/K, got " + s);
    int k = std::stoi(s.substr(slash + 1));
    if (k <= 0) throw std::invalid_argument("divisor must be positive in " + s);
    return value / k;
  }
  return std::stoi(s);
}

int resolve_ceil(const std::string& s, int n) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return std::stoi(s);
  int k = std::stoi(s.substr(slash + 1));
  if (k <= 0) throw std::invalid_argument("divisor must be positive in " + s);
  return (n + k - 1) / k;
}

std::string json_str(const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

ExperimentDescriptor parse_descriptor(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  ExperimentDescriptor d;
  d.generator = j.value("generator", d.generator);
  d.scheme = j.value("scheme", d.scheme);
  for (auto& v : j.at("n")) d.n.push_back(v.get<int>());
  if (j.contains("D"))
    for (auto& v : j["D"]) d.D.push_back(json_str(v));
  if (j.contains("tau")) {
    if (j["tau"].is_array())
      for (auto& v : j["tau"]) d.tau.push_back(json_str(v));
    else
      d.tau.push_back(json_str(j["tau"]));
  }
  if (d.tau.empty()) d.tau.push_back("all");
  d.trees = j.value("trees", d.trees);
  d.seed = j.value("seed", d.seed);
  d.lambda = j.value("lambda", d.lambda);
  d.c = j.value("c", d.c);
  d.k = j.value("k", d.k);
  if (d.generator != "random" && d.generator != "diameter")
    throw std::invalid_argument("generator must be random or diameter");
  if (d.scheme != "unbounded" && d.scheme != "bounded") throw std::invalid_argument("scheme must be unbounded or bounded");
  if (d.generator == "diameter" && d.D.empty()) throw std::invalid_argument("diameter generator needs D");
  return d;
}

std::vector<ExperimentRecord> sweep(const ExperimentDescriptor& d) {
  struct Cell {
    int n, D_req, index;
  };
  std::vector<Cell> cells;
  for (int n : d.n) {
    if (d.generator == "random") {
      for (int i = 0; i < d.trees; ++i) cells.push_back({n, -1, i});
    } else {
      std::vector<int> Ds;
      for (auto& s : d.D) {
        int D = resolve_ceil(s, n);
        if (std::find(Ds.begin(), Ds.end(), D) == Ds.end()) Ds.push_back(D);
      }
      for (int D : Ds)
        for (int i = 0; i < d.trees; ++i) cells.push_back({n, D, i});
    }
  }
  std::vector<ExperimentRecord> out;
  for (auto& cell : cells) {
    std::seed_seq ss{static_cast<std::uint32_t>(d.seed), static_cast<std::uint32_t>(d.seed >> 32),
                     static_cast<std::uint32_t>(cell.n), static_cast<std::uint32_t>(cell.D_req + 1),
                     static_cast<std::uint32_t>(cell.index)};
    Rng rng(ss);
    ExperimentRecord base;
    base.scheme = d.scheme;
    base.n = cell.n;
    base.lambda = d.scheme == "unbounded" ? 2 : d.lambda;
    PortLabeledTree t;
    try {
      t = cell.D_req < 0 ? random_tree(cell.n, rng) : random_tree_with_diameter(cell.n, cell.D_req, rng);
    } catch (const std::exception& e) {
      base.D = cell.D_req;
      base.error = e.what();
      out.push_back(base);
      continue;
    }
    auto ci = diameter_and_center(t);
    base.D = ci.diameter;
    std::vector<int> taus;
    for (auto& s : d.tau) {
      if (s == "all") {
        for (int x = 0; x <= (base.D + 1) / 2; ++x) taus.push_back(x);
      } else {
        taus.push_back(resolve(s, "D", base.D));
      }
    }
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    for (int tau : taus) {
      ExperimentRecord r = base;
      r.tau = tau;
      r.bound = unbounded_bound(r.n, r.D, tau);
      try {
        if (d.scheme == "unbounded") {
          auto a = advice_unbounded(t, tau);
          auto o = run_election(t, a, make_elector(Scheme::Unbounded, tau), tau);
          r.size = o.advice_size;
          r.valency = o.valency;
          r.pass = o.ok();
          if (!r.pass) r.error = o.error_count() ? "node errors" : "verification failed";
        } else {
          BoundedReport rep;
          BoundedOptions opt;
          opt.k_override = d.k;
          auto a = bounded_valency_advice(t, tau, d.lambda, d.c, &rep, opt);
          auto o = run_election(t, a, make_elector(Scheme::Bounded, tau, &rep.params), tau, rep.leader);
          r.size = o.advice_size;
          r.valency = o.valency;
          r.pass = o.ok();
          if (!r.pass) r.error = o.error_count() ? "node errors" : "verification failed";
        }
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      out.push_back(r);
    }
  }
  return out;
}

std::string records_csv(const std::vector<ExperimentRecord>& rs) {
  std::ostringstream s;
  s << "scheme,n,D,tau,lambda,size,valency,pass,bound,error\n";
  for (auto& r : rs) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    s << r.scheme << ',' << r.n << ',' << r.D << ',' << r.tau << ',' << r.lambda << ',' << r.size << ','
      << r.valency << ',' << (r.pass ? 1 : 0) << ',' << r.bound << ',' << err << "\n";
  }
  return s.str();
}

}  // namespace leader
