#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "leader/betas.hpp"
#include "leader/bounded.hpp"
#include "leader/colored_map.hpp"
#include "leader/families.hpp"
#include "leader/harness.hpp"
#include "leader/unbounded.hpp"

using namespace leader;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  return f;
}

// "-" means stdout
void emit(const std::string& path, const std::function<void(std::ostream&)>& w) {
  if (path.empty() || path == "-") {
    w(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  w(f);
}

PortLabeledTree load_tree(const std::string& path) {
  auto f = open_in(path);
  return read_tree(f);
}

// one line per node: id then comma-separated ports, "-" for the empty path
void write_outputs(std::ostream& out, const std::vector<PathCode>& o, const std::vector<std::string>& errors) {
  for (std::size_t v = 0; v < o.size(); ++v) {
    out << v << ' ';
    if (!errors.empty() && !errors[v].empty())
      out << "?";
    else if (o[v].empty())
      out << "-";
    else
      out << member_descriptor(o[v]);
    out << "\n";
  }
}

std::pair<std::vector<PathCode>, std::vector<char>> read_outputs(std::istream& in, int n) {
  std::vector<PathCode> o(n);
  std::vector<char> missing(n, 1);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int v;
    std::string s;
    if (!(ls >> v >> s) || v < 0 || v >= n) throw std::runtime_error("bad output line: " + line);
    if (s == "?") continue;
    o[v] = s == "-" ? PathCode{} : parse_member_descriptor(s);
    missing[v] = 0;
  }
  return {o, missing};
}

std::vector<int> parse_colors(const std::string& s, int n, int lambda) {
  auto c = parse_member_descriptor(s);
  if (static_cast<int>(c.size()) != n) throw std::runtime_error("need one color per node");
  for (int x : c)
    if (x < 0 || x >= lambda) throw std::runtime_error("color out of range");
  return c;
}

struct AdviseArgs {
  std::string scheme = "unbounded";
  int tau = 0;
  int lambda = 2;
  double c = 0;
  int k = 0;
  std::string colors;
};

// shared by advise and elect so the bounded elector sees the parameters the advice was built with
struct Built {
  AdviceAssignment advice;
  BoundedReport rep;
  NodeId leader = -1;
};

Built build_advice(const PortLabeledTree& t, const AdviseArgs& a) {
  Built b;
  switch (parse_scheme(a.scheme)) {
    case Scheme::Unbounded:
      b.advice = advice_unbounded(t, a.tau);
      break;
    case Scheme::Bounded: {
      BoundedOptions opt;
      opt.k_override = a.k;
      b.advice = bounded_valency_advice(t, a.tau, a.lambda, a.c, &b.rep, opt);
      b.leader = b.rep.used_pipeline ? -1 : b.rep.leader;
      break;
    }
    case Scheme::ColoredMap: {
      std::vector<int> colors;
      NodeId leader = -1;
      if (!a.colors.empty()) {
        colors = parse_colors(a.colors, t.size(), a.lambda);
      } else {
        auto cert = find_certificate(t, a.lambda, a.tau);
        if (!cert) throw std::runtime_error("no " + std::to_string(a.lambda) + "-coloring works at this tau");
        colors = cert->colors;
        leader = cert->leader;
      }
      b.advice = colored_map_advice(t, colors, a.tau, a.lambda, leader);
      b.leader = leader;
      break;
    }
  }
  return b;
}

void add_advise_opts(CLI::App* s, AdviseArgs& a) {
  s->add_option("--scheme", a.scheme, "unbounded | bounded | colored-map")->capture_default_str();
  s->add_option("--tau", a.tau, "rounds")->required();
  s->add_option("--lambda", a.lambda, "advice alphabet for bounded and colored-map")->capture_default_str();
  s->add_option("--c", a.c, "bounded scheme constant; 0 uses D/n")->capture_default_str();
  s->add_option("--k", a.k, "bounded scheme: force k instead of the gamma condition");
  s->add_option("--colors", a.colors, "colored-map: comma-separated node colors; default searches for one");
}

// --- xi helpers ----------------------------------------------------------

PortLabeledTree tree_from_pruefer(const std::vector<int>& seq, int n) {
  std::vector<int> deg(n, 1);
  for (int x : seq) ++deg[x];
  std::vector<std::pair<int, int>> es;
  for (int x : seq)
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) {
        es.push_back({v, x});
        --deg[v], --deg[x];
        break;
      }
  std::vector<int> last;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) last.push_back(v);
  es.push_back({last[0], last[1]});
  std::vector<int> port(n, 0);
  std::vector<Edge> out;
  for (auto [a, b] : es) out.push_back({a, port[a]++, b, port[b]++});
  return build_tree(out, n);
}

std::string shape_key(const PortLabeledTree& t) {
  std::function<std::string(NodeId, NodeId)> enc = [&](NodeId v, NodeId p) {
    std::vector<std::string> ch;
    for (int q = 0; q < t.degree(v); ++q)
      if (t.neighbor(v, q) != p) ch.push_back(enc(t.neighbor(v, q), v));
    std::sort(ch.begin(), ch.end());
    std::string s = "(";
    for (auto& c : ch) s += c;
    return s + ")";
  };
  auto ci = diameter_and_center(t);
  std::string a = enc(ci.center_a, -1);
  if (ci.center_b >= 0) a = std::min(a, enc(ci.center_b, -1));
  return a;
}

std::vector<PortLabeledTree> all_shapes(int n) {
  if (n == 1) return {build_tree({}, 1)};
  std::map<std::string, PortLabeledTree> uniq;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    auto t = tree_from_pruefer(seq, n);
    uniq.emplace(shape_key(t), t);
    int i = 0;
    while (i < n - 2 && ++seq[i] == n) seq[i++] = 0;
    if (i == n - 2) break;
  }
  std::vector<PortLabeledTree> out;
  for (auto& [k, t] : uniq) out.push_back(t);
  return out;
}

// every port labeling: each node's ports permuted independently
std::vector<PortLabeledTree> all_labelings(const PortLabeledTree& t) {
  int n = t.size();
  std::vector<std::vector<int>> perm(n);
  for (int v = 0; v < n; ++v) {
    perm[v].resize(t.degree(v));
    for (int p = 0; p < t.degree(v); ++p) perm[v][p] = p;
  }
  auto base = t.edges();
  std::vector<PortLabeledTree> out;
  while (true) {
    std::vector<Edge> es = base;
    for (auto& e : es) e.pu = perm[e.u][e.pu], e.pv = perm[e.v][e.pv];
    out.push_back(build_tree(es, n));
    int v = 0;
    while (v < n && !std::next_permutation(perm[v].begin(), perm[v].end())) ++v;
    if (v == n) break;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leader election with advice in anonymous trees"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for every random choice")->capture_default_str();
  int rc = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "write a tree file");
  std::string gen_kind = "random", gen_out = "-", regime = "large", member, colors_out;
  int n = 0, D = 0, tau = 0, k1 = 1, k2 = 2, z = 2, zp = 0, branch = 1;
  gen->add_option("kind", gen_kind, "random | diameter | line-family | general-family")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "output file")->capture_default_str();
  gen->add_option("--n", n, "nodes (random, diameter) or n' (line-family)");
  gen->add_option("--D", D, "diameter");
  gen->add_option("--tau", tau, "family time bound");
  gen->add_option("--branch", branch, "diameter generator: longest hanging chain")->capture_default_str();
  gen->add_option("--regime", regime, "general family: small | medium | large")->capture_default_str();
  gen->add_option("--k1", k1)->capture_default_str();
  gen->add_option("--k2", k2)->capture_default_str();
  gen->add_option("--z", z)->capture_default_str();
  gen->add_option("--zp", zp)->capture_default_str();
  gen->add_option("--colors-out", colors_out, "general family: write the witness coloring for advise --colors");
  gen->add_option("--member", member, "family member on side X, comma-separated choices; default the base tree");
  gen->callback([&] {
    Rng rng(seed);
    PortLabeledTree t;
    TreeFamily fam;
    bool family = false;
    if (gen_kind == "random") {
      t = random_tree(n, rng);
    } else if (gen_kind == "diameter") {
      t = random_tree_with_diameter(n, D, rng, branch);
    } else if (gen_kind == "line-family") {
      fam = build_line_family({n, D, tau});
      family = true;
    } else if (gen_kind == "general-family") {
      GeneralFamilyParams p;
      std::map<std::string, Regime> rs{{"small", Regime::Small}, {"medium", Regime::Medium}, {"large", Regime::Large}};
      if (!rs.count(regime)) throw CLI::ValidationError("--regime", "unknown regime " + regime);
      p.regime = rs[regime];
      p.D = D, p.tau = tau, p.k1 = k1, p.k2 = k2, p.z = z, p.zp = zp;
      fam = build_general_family(p);
      family = true;
      if (!colors_out.empty())
        emit(colors_out, [&](std::ostream& o) { o << member_descriptor(witness_coloring(fam, p, 2)) << "\n"; });
    } else {
      throw CLI::ValidationError("kind", "unknown generator " + gen_kind);
    }
    if (family) t = member.empty() ? fam.base : fam.member(0, parse_member_descriptor(member));
    emit(gen_out, [&](std::ostream& o) {
      if (family) o << "# root " << fam.root << "\n";
      write_tree(o, t);
    });
  });

  // advise
  auto* adv = app.add_subcommand("advise", "compute advice for a tree");
  std::string tree_path, adv_out = "-";
  AdviseArgs aa;
  adv->add_option("tree", tree_path, "tree file")->required();
  adv->add_option("-o,--out", adv_out, "advice file")->capture_default_str();
  add_advise_opts(adv, aa);
  adv->callback([&] {
    auto t = load_tree(tree_path);
    auto b = build_advice(t, aa);
    emit(adv_out, [&](std::ostream& o) { write_advice(o, b.advice); });
    std::cerr << "size " << b.advice.size() << " valency " << b.advice.valency() << "\n";
  });

  // elect
  auto* el = app.add_subcommand("elect", "run the election and print the outcome report");
  std::string advice_path, report_out = "-", outputs_out;
  AdviseArgs ea;
  el->add_option("tree", tree_path, "tree file")->required();
  el->add_option("advice", advice_path, "advice file")->required();
  el->add_option("-o,--out", report_out, "report file")->capture_default_str();
  el->add_option("--outputs", outputs_out, "also write per-node outputs for verify");
  add_advise_opts(el, ea);
  el->callback([&] {
    auto t = load_tree(tree_path);
    auto fa = open_in(advice_path);
    auto a = read_advice(fa);
    if (static_cast<int>(a.per_node.size()) != t.size()) throw std::runtime_error("advice and tree sizes differ");
    auto s = parse_scheme(ea.scheme);
    // rebuilding is deterministic and recovers the parameters and the fallback leader
    NodeId expect = -1;
    SchemeParams params;
    if (s != Scheme::Unbounded) {
      auto b = build_advice(t, ea);
      expect = b.leader;
      params = b.rep.params;
    }
    auto o = run_election(t, a, make_elector(s, ea.tau, s == Scheme::Bounded ? &params : nullptr), ea.tau, expect);
    emit(report_out, [&](std::ostream& f) { f << outcome_report(o); });
    if (!outputs_out.empty()) emit(outputs_out, [&](std::ostream& f) { write_outputs(f, o.outputs, o.errors); });
    rc = o.ok() ? 0 : 1;
  });

  // verify
  auto* ver = app.add_subcommand("verify", "check that outputs trace simple paths to one node");
  std::string outputs_path;
  int expect_root = -2;
  ver->add_option("tree", tree_path, "tree file")->required();
  ver->add_option("outputs", outputs_path, "outputs file")->required();
  ver->add_option("--root", expect_root, "expected leader; -1 for the center root; default any common node");
  ver->callback([&] {
    auto t = load_tree(tree_path);
    auto f = open_in(outputs_path);
    auto [o, missing] = read_outputs(f, t.size());
    auto flags = verify_outputs(t, o, missing);
    bool ok = flags.all_simple && flags.common_endpoint;
    NodeId want = expect_root == -1 ? diameter_and_center(t).root : expect_root;
    if (ok && expect_root >= -1) ok = flags.endpoint && *flags.endpoint == want;
    std::cout << "all_simple " << flags.all_simple << "\ncommon_endpoint " << flags.common_endpoint << "\nendpoint "
              << (flags.endpoint ? std::to_string(*flags.endpoint) : "-") << "\nbad_nodes " << flags.bad_nodes.size()
              << "\npass " << ok << "\n";
    rc = ok ? 0 : 1;
  });

  // xi
  auto* xic = app.add_subcommand("xi", "brute-force election index");
  int max_n = 10, lambda = 2, labelings = 0, upto = 0;
  xic->add_option("tree", tree_path, "tree file; omit with --upto");
  xic->add_option("--upto", upto, "enumerate every shape with up to this many nodes");
  xic->add_option("--labelings", labelings, "random port labelings per shape; -1 for all of them")->capture_default_str();
  xic->add_option("--max-n", max_n, "refuse larger trees")->capture_default_str();
  xic->add_option("--lambda", lambda)->capture_default_str();
  xic->callback([&] {
    if (!tree_path.empty()) {
      auto t = load_tree(tree_path);
      if (t.size() > max_n) throw std::runtime_error("tree exceeds --max-n");
      auto cert = election_index(t, lambda, t.size());
      if (!cert) {
        std::cout << "xi none\n";
        rc = 1;
        return;
      }
      std::cout << "xi " << cert->tau << "\nleader " << cert->leader << "\ncolors " << member_descriptor(cert->colors)
                << "\n";
      return;
    }
    if (upto < 1 || upto > max_n) throw CLI::ValidationError("--upto", "need 1 <= upto <= max-n");
    Rng rng(seed);
    std::cout << "n,shape,labeling,xi\n";
    for (int m = 1; m <= upto; ++m) {
      auto shapes = all_shapes(m);
      for (std::size_t s = 0; s < shapes.size(); ++s) {
        std::vector<PortLabeledTree> ts;
        if (labelings < 0) {
          ts = all_labelings(shapes[s]);
        } else {
          ts.push_back(shapes[s]);
          for (int r = 0; r < labelings; ++r) ts.push_back(shuffle_ports(shapes[s], rng));
        }
        std::vector<int> xs(ts.size(), -1);
        parallel_for(ts.size(), [&](std::size_t i) {
          if (auto c = election_index(ts[i], lambda, m)) xs[i] = c->tau;
        });
        for (std::size_t i = 0; i < ts.size(); ++i) std::cout << m << ',' << s << ',' << i << ',' << xs[i] << "\n";
      }
    }
  });

  // betas
  auto* bet = app.add_subcommand("betas", "fixed-point grid as CSV");
  std::vector<int> lambdas{2};
  int grid = 99;
  bet->add_option("--lambda", lambdas, "one or more alphabet sizes")->capture_default_str();
  bet->add_option("--c-grid", grid, "grid points in (0,1)")->capture_default_str();
  bet->callback([&] {
    std::printf("c,lambda,beta1,beta2,gap\n");
    for (int l : lambdas)
      for (auto& r : beta_grid(l, grid))
        std::printf("%.6f,%d,%.10f,%.10f,%.10f\n", r.c, r.lambda, r.pair.beta1, r.pair.beta2, r.pair.gap());
  });

  // sweep
  auto* sw = app.add_subcommand("sweep", "run an experiment descriptor and write CSV");
  std::string desc_path, csv_out = "-";
  sw->add_option("descriptor", desc_path, "JSON descriptor")->required();
  sw->add_option("-o,--out", csv_out, "CSV file")->capture_default_str();
  sw->callback([&] {
    auto f = open_in(desc_path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto d = parse_descriptor(ss.str());
    if (app.count("--seed")) d.seed = seed;
    auto rs = sweep(d);
    emit(csv_out, [&](std::ostream& o) { o << records_csv(rs); });
    rc = std::all_of(rs.begin(), rs.end(), [](auto& r) { return r.pass; }) ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
