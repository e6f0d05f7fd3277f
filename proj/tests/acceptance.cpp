// Acceptance gate: one line per criterion, PASS or FAIL, exit 0 only if all
// pass.  Everything is exact arithmetic; numbers quoted in the details are
// computed here, never asserted from memory.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cluskit/cli.hpp"

namespace {

using namespace cluskit;

const std::string kData = std::string(CLUSKIT_DATA_DIR) + "/seeds/";
const std::string kBin = CLUSKIT_CLI_BIN;
int g_threads = 3;

struct Fail {
  std::string why;
};

void require_c(bool ok, const std::string& why) {
  if (!ok) throw Fail{why};
}

Seed seed(const std::string& name) { return load_seed(kData + name); }

void require_verified(const Report& rep, const std::string& label) {
  if (rep.status() == "verified") return;
  std::string first;
  for (const auto& inst : rep.instances)
    if (inst.status != "verified") {
      first = inst.name + (inst.witness.empty() ? "" : " -- " + inst.witness);
      break;
    }
  throw Fail{label + " " + rep.status() + ": " + first};
}

// ---------------------------------------------------------------------------

std::string c1_worked_example() {
  const Seed s = seed("one_frozen.json");
  const std::vector<int> F{0};
  const LaurentElement x1p = mutate_state(initial_state(s), 0).vars[0];
  require_c(x1p.to_string() == "x^(-1,0) + x^(-1,1)",
            "one-step expansion is " + x1p.to_string());
  const LaurentElement frozen = freeze_pointed(x1p, s, F);
  require_c(frozen.to_string() == "x^(-1,0)",
            "frozen image is " + frozen.to_string());

  const PointedSet S = make_cluster_monomial_set(s, 4);
  int pairs = 0;
  for (const auto& m1 : degree_box(2, 1))
    for (const auto& m2 : degree_box(2, 1)) {
      const auto &z1 = S.at(m1), &z2 = S.at(m2);
      if (!z1 || !z2) continue;
      ++pairs;
      require_c(check_multiplicativity(*z1, *z2, s, F),
                "freezing not multiplicative at " + vec_to_string(m1) + ", " +
                    vec_to_string(m2));
    }
  require_c(pairs >= 9, "too few degree pairs in the fan");

  const LaurentElement x1 =
      LaurentElement::monomial(2, {1, 0}, VCoeff::one(), s.id);
  const LaurentElement prod = twisted_mul(x1, x1p, s.lambda);
  const LaurentElement through = freeze_along_basis(prod, S, F);
  const LaurentElement memberwise =
      twisted_mul(freeze_pointed(x1, s, F), frozen, s.lambda);
  require_c(through.to_string() == "1 + x^(0,1)",
            "family-level image is " + through.to_string());
  require_c(memberwise.to_string() == "1",
            "memberwise image is " + memberwise.to_string());
  require_c(through != memberwise, "counterexample collapsed");
  std::ostringstream os;
  os << pairs << " multiplicative pairs; family-level 1 + x2 vs memberwise 1";
  return os.str();
}

std::string c2_positivity() {
  long long states = 0;
  for (const char* f : {"a2.json", "a3_principal.json", "kronecker.json"}) {
    cli::Opts o;
    o.depth = 8;
    const Report rep = cli::verify_positivity(seed(f), o);
    require_verified(rep, f);
    for (const auto& inst : rep.instances) {
      const auto lp = inst.name.rfind('(');
      states += std::stoll(inst.name.substr(lp + 1));
    }
  }
  return std::to_string(states) + " mutation states over words to length 8";
}

std::string c3_quantum() {
  for (const char* f : {"a2_quantum.json", "a3_principal_quantum.json"}) {
    cli::Opts o;
    o.depth = 8;
    require_verified(cli::verify_quantum(seed(f), o), f);
  }
  return "bar-invariance, v=1 specialization, equal exponent supports";
}

std::string c4_graphs() {
  const ExchangeGraph g2 = build_graph(seed("a2.json"), 8);
  require_c(g2.complete && g2.nodes.size() == 5 && g2.edge_count() == 5,
            "two-vertex walk is not a pentagon");
  for (const auto& nd : g2.nodes)
    require_c(nd.edges.size() == 2, "pentagon node degree != 2");

  const Seed a3 = seed("a3_principal.json");
  const ExchangeGraph g3 = build_graph(a3, 8);
  require_c(g3.complete && g3.nodes.size() == 14 && g3.edge_count() == 21,
            "three-vertex walk has " + std::to_string(g3.nodes.size()) +
                " nodes, " + std::to_string(g3.edge_count()) + " edges");
  for (const auto& nd : g3.nodes)
    require_c(nd.edges.size() == 3, "associahedron node degree != 3");

  const Seed a2 = seed("a2.json");
  require_c(find_injective_reachable(a2, 8).found, "A2 witness missing");
  require_c(find_injective_reachable(a3, 8).found, "A3 witness missing");
  int freezings = 0;
  for (const auto& F :
       {std::vector<int>{0}, {1}})
    require_c(find_injective_reachable(a2.freeze(F), 8).found,
              "A2 witness lost by freezing"),
        ++freezings;
  for (const auto& F :
       {std::vector<int>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}})
    require_c(find_injective_reachable(a3.freeze(F), 8).found,
              "A3 witness lost by freezing " + cli::freeze_label(F)),
        ++freezings;
  return "pentagon, 14-seed walk, witnesses kept under " +
         std::to_string(freezings) + " freezings";
}

std::string c5_freeze_monomials() {
  const Seed a3 = seed("a3_principal.json");
  const ExchangeGraph g = build_graph(a3, 8);
  const auto degrees = degree_box(a3.n, 2);
  long long identified = 0;
  for (const auto& F :
       {std::vector<int>{0}, {1}, {2}, {0, 2}}) {
    const ExchangeGraph fg = build_graph(a3.freeze(F), 8);
    std::vector<int> status(degrees.size(), 0);
    parallel_for(degrees.size(), g_threads, [&](std::size_t i) {
      const ChamberTheta ct = theta_cluster_chamber(a3, degrees[i], g);
      if (!ct.found) {
        status[i] = 1;
        return;
      }
      status[i] =
          identify_frozen_cluster_monomial(ct.value, a3, F, fg).found ? 0 : 2;
    });
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      require_c(status[i] != 1, "degree " + vec_to_string(degrees[i]) +
                                    " is not a localized cluster monomial");
      require_c(status[i] != 2, "no frozen identification at degree " +
                                    vec_to_string(degrees[i]) + " for F=" +
                                    cli::freeze_label(F));
      ++identified;
    }
  }
  return std::to_string(identified) + " identifications over four freezings";
}

std::string c6_scattering() {
  const ScatteringDiagram D8 = complete_rank2(seed("a2.json"), 8);
  int outgoing = 0;
  YSeries fn;
  for (const Wall& w : D8.walls)
    if (!w.incoming && !w.trivial(D8.K)) {
      ++outgoing;
      fn = w.fn(D8.K);
    }
  require_c(outgoing == 1,
            std::to_string(outgoing) + " nontrivial outgoing walls");
  YSeries expect = YSeries::one(2);
  expect.add({1, 1}, 1, D8.K);
  require_c(fn == expect, "outgoing wall is " + fn.to_string());
  for (const LatticeVec& s0 : cli::loop_starts())
    require_c(consistent_loop(D8, s0, D8.K),
              "A2 loop failed at " + vec_to_string(s0));

  const ScatteringDiagram DK = complete_rank2(seed("kronecker.json"), 6);
  int loops = 0;
  for (const LatticeVec& s0 : cli::loop_starts()) {
    require_c(consistent_loop(DK, s0, DK.K),
              "Kronecker loop failed at " + vec_to_string(s0));
    ++loops;
  }
  require_c(loops >= 20, "too few generic loops");
  return "one outgoing wall 1 + y^(1,1) at order 8; " + std::to_string(loops) +
         " Kronecker loops at order 6";
}

std::string c7_pushforward() {
  int compared = 0;
  const std::vector<LatticeVec> starts = {{2, 1}, {1, 2}, {3, 1}, {1, 3},
                                          {5, 2}, {2, 5}, {7, 3}, {3, 7}};
  for (const char* f : {"a2.json", "kronecker.json"}) {
    const Seed s = seed(f);
    const ScatteringDiagram D = complete_rank2(s, 6);
    for (const auto& F : cli::nonempty_subsets(s.uf)) {
      const ScatteringDiagram P = freeze_pushforward(D, F);
      const ScatteringDiagram C = complete_rank2(s.freeze(F), 6);
      for (const LatticeVec& s0 : starts)
        require_c(diagram_transfer(P, s0) == diagram_transfer(C, s0),
                  std::string(f) + " F=" + cli::freeze_label(F) +
                      " transfer differs at " + vec_to_string(s0));
      ++compared;
    }
  }
  return std::to_string(compared) + " freezings, " +
         std::to_string(starts.size()) + " transfer directions each";
}

std::string c8_theta() {
  cli::Opts o;
  o.order = 8;
  o.depth = 8;
  o.threads = g_threads;
  const Seed a2 = seed("a2.json");
  require_verified(cli::verify_theta_monomial(a2, o), "positive chamber");
  require_verified(cli::verify_theta_expansion(a2, o), "chamber expansion");
  require_verified(cli::verify_theta_freezing(a2, o), "freezing");
  return "positive-chamber monomials, chamber expansions, frozen comparisons";
}

std::string c9_bases() {
  cli::Opts o;
  o.order = 8;
  o.depth = 8;
  o.box = 2;
  o.d_max = 8;
  o.threads = g_threads;
  const Seed a2 = seed("a2.json");

  o.basis = "cluster";
  o.freeze = {1};
  require_verified(cli::bases_report(a2, o), "cluster family");
  o.basis = "theta";
  require_verified(cli::bases_report(a2, o), "theta family");
  o.basis = "cluster";
  require_verified(cli::bases_report(seed("one_frozen.json"), o),
                   "two-vertex family");
  o.freeze.clear();
  require_verified(cli::verify_property_s(a2, o), "shift search");
  return "decomposition, local support, shift searches, localization = "
         "freezing, independence";
}

struct RunOut {
  int code = -1;
  std::string bytes;
};

RunOut run_cli(const std::string& args) {
  RunOut r;
  const std::string cmd = kBin + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  require_c(p != nullptr, "popen failed");
  char buf[8192];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.bytes.append(buf, got);
  const int rc = pclose(p);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string c10_determinism() {
  const std::vector<std::string> repeated = {
      "expand " + kData + "a2.json --word 1,2,1,2 --var 1",
      "scatter " + kData + "kronecker.json --order 6 --format json",
      "theta " + kData + "a2.json --m -1,1 --order 8 --format json",
      "verify exchange-graph " + kData + "a2.json --depth 8",
  };
  const std::vector<std::string> threaded = {
      "verify property-s " + kData + "a2.json --order 8 --box 2",
      "verify theta-freezing " + kData + "a2.json --order 8",
      "verify freeze-cluster-monomial " + kData +
          "a3_principal.json --freeze 2 --box 1 --depth 8",
  };
  int checks = 0;
  for (const std::string& args : repeated) {
    const RunOut a = run_cli(args);
    const RunOut b = run_cli(args);
    require_c(a.code == 0 && b.code == 0, "nonzero exit: " + args);
    require_c(a.bytes == b.bytes, "rerun bytes differ: " + args);
    ++checks;
  }
  for (const std::string& args : threaded) {
    const RunOut a = run_cli(args + " --threads 1");
    const RunOut b = run_cli(args + " --threads " + std::to_string(g_threads));
    require_c(a.code == 0 && b.code == 0, "nonzero exit: " + args);
    require_c(a.bytes == b.bytes, "thread-count bytes differ: " + args);
    ++checks;
  }
  return std::to_string(checks) + " artifact comparisons";
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--threads") g_threads = std::atoi(argv[i + 1]);

  const std::vector<std::pair<std::string, std::function<std::string()>>>
      criteria = {
          {"two-vertex worked example, exact", c1_worked_example},
          {"Laurent positivity on A2, A3, Kronecker", c2_positivity},
          {"quantum expansions consistent with classical", c3_quantum},
          {"exchange graphs and injective-reachability", c4_graphs},
          {"cluster monomials freeze to frozen-seed monomials", c5_freeze_monomials},
          {"scattering completions pass loop checks", c6_scattering},
          {"pushforward matches frozen completion", c7_pushforward},
          {"theta functions: chamber values and freezing", c8_theta},
          {"pointed families: decomposition and transitions", c9_bases},
          {"byte-identical artifacts across runs and threads", c10_determinism},
      };

  bool all_ok = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = criteria[i].second();
    } catch (const Fail& f) {
      ok = false;
      detail = f.why;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("%s [%2zu] %s: %s (%lld ms)\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), detail.c_str(),
                static_cast<long long>(ms));
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
