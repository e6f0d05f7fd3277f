#pragma once

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cluskit/bases.hpp"
#include "cluskit/parallel.hpp"
#include "cluskit/report.hpp"
#include "cluskit/seed_json.hpp"
#include "cluskit/tropical.hpp"

namespace cluskit::cli {

struct Opts {
  std::string seed_path;
  std::string output;
  std::string format = "text";
  std::string word_str;
  std::string m_str;
  std::string q_str;
  std::string basis = "cluster";
  std::string id;
  std::vector<int> freeze;  // 1-based, as typed
  int var = 1;              // 1-based
  int order = 6;
  int depth = 8;
  int threads = 1;
  long long box = 2;
  long long d_max = 8;
};

// ---------------------------------------------------------------------------
// parsing and formatting

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

inline long long parse_ll(const std::string& tok) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError("not an integer: '" + tok + "'");
  return v;
}

inline std::vector<int> parse_word(const std::string& s, const Seed& seed) {
  std::vector<int> w;
  if (s.empty()) return w;
  for (const auto& tok : split_commas(s)) {
    const long long v = parse_ll(tok);
    if (v < 1 || v > seed.n)
      throw ParseError("mutation vertex " + tok + " out of range 1.." +
                       std::to_string(seed.n));
    if (!seed.is_unfrozen(static_cast<int>(v - 1)))
      throw ParseError("mutation vertex " + tok + " is frozen");
    w.push_back(static_cast<int>(v - 1));
  }
  return w;
}

inline LatticeVec parse_vec(const std::string& s, int n) {
  const auto toks = split_commas(s);
  if (static_cast<int>(toks.size()) != n)
    throw ParseError("expected " + std::to_string(n) + " components, got " +
                     std::to_string(toks.size()));
  LatticeVec m;
  for (const auto& t : toks) m.push_back(parse_ll(t));
  return m;
}

inline RVec parse_rvec(const std::string& s, int n) {
  const auto toks = split_commas(s);
  if (static_cast<int>(toks.size()) != n)
    throw ParseError("expected " + std::to_string(n) + " components, got " +
                     std::to_string(toks.size()));
  RVec q;
  for (const auto& t : toks) {
    const auto slash = t.find('/');
    if (slash == std::string::npos) {
      q.emplace_back(parse_ll(t));
    } else {
      const long long num = parse_ll(t.substr(0, slash));
      const long long den = parse_ll(t.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + t + "'");
      q.emplace_back(Rat(num) / Rat(den));
    }
  }
  return q;
}

inline std::vector<int> freeze_0based(const std::vector<int>& raw,
                                      const Seed& s) {
  std::vector<int> F;
  for (int v : raw) {
    if (v < 1 || v > s.n)
      throw ParseError("freeze vertex " + std::to_string(v) +
                       " out of range 1.." + std::to_string(s.n));
    if (!s.is_unfrozen(v - 1))
      throw ParseError("freeze vertex " + std::to_string(v) +
                       " is not unfrozen");
    F.push_back(v - 1);
  }
  std::sort(F.begin(), F.end());
  F.erase(std::unique(F.begin(), F.end()), F.end());
  return F;
}

inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline nlohmann::json vec_json(const LatticeVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (long long x : v) a.push_back(x);
  return a;
}

inline nlohmann::json word_json(const std::vector<int>& w) {
  nlohmann::json a = nlohmann::json::array();
  for (int k : w) a.push_back(k + 1);
  return a;
}

inline std::string fmt_fpoly(const PointedElement& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [nvec, c] : p.f) {
    if (!first) os << " + ";
    first = false;
    std::string cs;
    if (c.is_monomial() && c.is_one()) {
      if (vec_is_zero(nvec)) cs = "1";
    } else if (c.is_monomial()) {
      cs = c.to_string();
    } else {
      cs = "(" + c.to_string() + ")";
    }
    if (!vec_is_zero(nvec)) {
      if (!cs.empty()) os << cs << " * ";
      os << "y^" << vec_to_string(nvec);
    } else {
      os << cs;
    }
  }
  if (first) os << "0";
  return os.str();
}

inline std::string subject_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

inline void emit(const Opts& o, const std::string& payload) {
  if (o.output.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw Error("cannot open output file " + o.output);
  f << payload;
}

// Generic starting rays for loop checks, away from every small root.
inline const std::vector<LatticeVec>& loop_starts() {
  static const std::vector<LatticeVec> s = {
      {97, 13},  {13, 97},  {89, 21},  {21, 89},  {83, 29},  {29, 83},
      {79, 37},  {37, 79},  {73, 41},  {41, 73},  {71, 43},  {43, 71},
      {67, 47},  {47, 67},  {101, 53}, {53, 101}, {103, 59}, {59, 103},
      {107, 61}, {61, 107}, {109, 71}};
  return s;
}

// ---------------------------------------------------------------------------
// plain subcommands

inline int run_mutate(const Seed& s, const Opts& o) {
  Seed t = s;
  for (int k : parse_word(o.word_str, s)) t = t.mutate(k);
  emit(o, seed_to_json(t).dump(2) + "\n");
  return 0;
}

inline int check_var(const Seed& s, int var1) {
  if (var1 < 1 || var1 > s.n)
    throw ParseError("--var " + std::to_string(var1) + " out of range 1.." +
                     std::to_string(s.n));
  return var1 - 1;
}

inline std::string expand_payload(const Seed& s, const Opts& o) {
  const int i = check_var(s, o.var);
  const std::vector<int> w = parse_word(o.word_str, s);
  const SeedState st = mutate_word(initial_state(s), w);
  const LaurentElement& z = st.vars[static_cast<std::size_t>(i)];
  if (o.format == "text") return z.to_string() + "\n";
  if (o.format == "json") {
    const PointedElement pe = extract_pointed(z, s);
    nlohmann::json j;
    j["word"] = word_json(w);
    j["var"] = o.var;
    j["laurent"] = z.to_string();
    j["g"] = vec_json(pe.g);
    j["fpoly"] = fmt_fpoly(pe);
    return j.dump(2) + "\n";
  }
  throw ParseError("expand supports --format text|json");
}

inline int run_expand(const Seed& s, const Opts& o) {
  const char* cache_env = std::getenv("CLUSKIT_CACHE_DIR");
  if (cache_env && *cache_env) {
    std::ostringstream key;
    key << s.serialize() << "|w=" << o.word_str << "|v=" << o.var
        << "|f=" << o.format;
    const std::filesystem::path p =
        std::filesystem::path(cache_env) /
        ("expand-" + hex_id(fnv1a64(key.str())) + ".txt");
    if (std::filesystem::exists(p)) {
      std::ifstream f(p, std::ios::binary);
      std::ostringstream buf;
      buf << f.rdbuf();
      emit(o, buf.str());
      return 0;
    }
    const std::string payload = expand_payload(s, o);
    std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    f << payload;
    emit(o, payload);
    return 0;
  }
  emit(o, expand_payload(s, o));
  return 0;
}

inline int run_gvec(const Seed& s, const Opts& o) {
  const int i = check_var(s, o.var);
  const SeedState st = mutate_word(initial_state(s), parse_word(o.word_str, s));
  const LatticeVec g = g_vector(st, i);
  if (o.format == "json")
    emit(o, vec_json(g).dump() + "\n");
  else
    emit(o, vec_to_string(g) + "\n");
  return 0;
}

inline int run_fpoly(const Seed& s, const Opts& o) {
  const int i = check_var(s, o.var);
  const SeedState st = mutate_word(initial_state(s), parse_word(o.word_str, s));
  const PointedElement pe =
      extract_pointed(st.vars[static_cast<std::size_t>(i)], s);
  if (o.format == "json") {
    nlohmann::json j;
    j["g"] = vec_json(pe.g);
    j["fpoly"] = fmt_fpoly(pe);
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, fmt_fpoly(pe) + "\n");
  }
  return 0;
}

inline int run_cvec(const Seed& s, const Opts& o) {
  const SeedState st = mutate_word(initial_state(s), parse_word(o.word_str, s));
  const int r = s.rank_uf();
  if (o.format == "json") {
    nlohmann::json cols = nlohmann::json::array();
    for (int q = 0; q < r; ++q) {
      LatticeVec c(static_cast<std::size_t>(r));
      for (int p = 0; p < r; ++p)
        c[static_cast<std::size_t>(p)] =
            st.cmat[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
      cols.push_back(vec_json(c));
    }
    emit(o, cols.dump() + "\n");
    return 0;
  }
  std::ostringstream os;
  for (int q = 0; q < r; ++q) {
    LatticeVec c(static_cast<std::size_t>(r));
    for (int p = 0; p < r; ++p)
      c[static_cast<std::size_t>(p)] =
          st.cmat[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
    os << "c" << s.uf[static_cast<std::size_t>(q)] + 1 << " = "
       << vec_to_string(c) << "\n";
  }
  emit(o, os.str());
  return 0;
}

inline int run_graph(const Seed& s, const Opts& o) {
  const ExchangeGraph g = build_graph(s, o.depth);
  if (o.format == "dot") {
    emit(o, graph_dot(g));
    return 0;
  }
  if (o.format == "json") {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (std::size_t u = 0; u < g.nodes.size(); ++u) {
      nlohmann::json jn;
      jn["index"] = u;
      jn["word"] = word_json(g.nodes[u].word);
      jn["depth"] = g.nodes[u].depth;
      j["nodes"].push_back(jn);
    }
    j["edges"] = nlohmann::json::array();
    for (std::size_t u = 0; u < g.nodes.size(); ++u)
      for (const GraphEdge& e : g.nodes[u].edges)
        if (static_cast<int>(u) < e.to)
          j["edges"].push_back({{"a", u}, {"b", e.to}, {"k", e.k + 1}});
    j["complete"] = g.complete;
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "nodes " << g.nodes.size() << "\nedges " << g.edge_count()
     << "\ncomplete " << (g.complete ? "yes" : "no") << "\n";
  emit(o, os.str());
  return 0;
}

inline int run_freeze(const Seed& s, const Opts& o) {
  const std::vector<int> F = freeze_0based(o.freeze, s);
  if (o.word_str.empty() && o.var == 0) {
    emit(o, seed_to_json(s.freeze(F)).dump(2) + "\n");
    return 0;
  }
  if (o.var == 0) throw ParseError("freeze with --word also needs --var");
  const int i = check_var(s, o.var);
  const SeedState st = mutate_word(initial_state(s), parse_word(o.word_str, s));
  const LaurentElement zf =
      freeze_pointed(st.vars[static_cast<std::size_t>(i)], s, F);
  emit(o, zf.to_string() + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// scattering and theta output

inline nlohmann::json wall_json(const Wall& w) {
  nlohmann::json j;
  j["n0"] = vec_json(w.n0);
  j["dir"] = vec_json(w.dir);
  j["line"] = w.line;
  j["incoming"] = w.incoming;
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, a] : w.coeff) {
    std::ostringstream os;
    os << a;
    c[std::to_string(k)] = os.str();
  }
  j["coeff"] = c;
  return j;
}

inline std::string scatter_text(const ScatteringDiagram& D) {
  std::ostringstream os;
  os << "order " << D.K << "\n";
  for (const Wall& w : D.walls) {
    os << (w.line ? "line" : "ray ") << " n0=" << vec_to_string(w.n0)
       << " dir=" << vec_to_string(w.dir)
       << (w.incoming ? " incoming" : " outgoing") << " f="
       << w.fn(D.K).to_string() << "\n";
  }
  return os.str();
}

inline std::string scatter_svg(const ScatteringDiagram& D) {
  std::ostringstream os;
  const double cx = 220, cy = 220, len = 200;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" "
        "height=\"440\" viewBox=\"0 0 440 440\">\n";
  os << "  <rect width=\"440\" height=\"440\" fill=\"white\"/>\n";
  char buf[160];
  for (const Wall& w : D.walls) {
    double dx = 0, dy = -1;
    if (w.dir.size() == 2) {
      const double nx = static_cast<double>(w.dir[0]);
      const double ny = static_cast<double>(w.dir[1]);
      const double nn = std::sqrt(nx * nx + ny * ny);
      if (nn > 0) {
        dx = nx / nn;
        dy = ny / nn;
      }
    }
    const double fx = cx + dx * len;
    const double fy = cy - dy * len;
    const double bx = w.line ? cx - dx * len : cx;
    const double by = w.line ? cy + dy * len : cy;
    const char* color = w.incoming ? "#444444" : "#b03030";
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"%s\" stroke-width=\"2\">",
                  bx, by, fx, fy, color);
    os << buf << "<title>n0=" << vec_to_string(w.n0) << " f="
       << w.fn(D.K).to_string() << "</title></line>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline int run_scatter(const Seed& s, const Opts& o) {
  const ScatteringDiagram D = complete_rank2(s, o.order);
  if (o.format == "svg") {
    emit(o, scatter_svg(D));
    return 0;
  }
  if (o.format == "json") {
    nlohmann::json j;
    j["order"] = D.K;
    nlohmann::json sl = nlohmann::json::array();
    for (int v : D.slice) sl.push_back(v + 1);
    j["slice"] = sl;
    j["walls"] = nlohmann::json::array();
    for (const Wall& w : D.walls) j["walls"].push_back(wall_json(w));
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  emit(o, scatter_text(D));
  return 0;
}

inline nlohmann::json broken_line_json(const BrokenLine& bl) {
  nlohmann::json j;
  j["final"] = vec_json(bl.final_exponent());
  std::ostringstream cs;
  cs << bl.coeff();
  j["coeff"] = cs.str();
  j["segments"] = nlohmann::json::array();
  for (const BLSegment& seg : bl.segs) {
    nlohmann::json js;
    js["m"] = vec_json(seg.m);
    std::ostringstream c2;
    c2 << seg.c;
    js["c"] = c2.str();
    if (seg.wall >= 0) {
      js["wall"] = seg.wall;
      nlohmann::json b = nlohmann::json::array();
      for (const Rat& r : seg.bend) b.push_back(rat_str(r));
      js["bend"] = b;
    }
    j["segments"].push_back(js);
  }
  return j;
}

inline int run_theta(const Seed& s, const Opts& o) {
  if (o.m_str.empty()) throw ParseError("theta needs --m");
  const LatticeVec m = parse_vec(o.m_str, s.n);
  if (s.rank_uf() > 2) {
    const ChamberTheta ct = theta_cluster_chamber(s, m, o.depth);
    if (!ct.found) {
      std::cerr << "inconclusive: degree not reached within depth "
                << o.depth << "\n";
      return 2;
    }
    if (o.format == "json") {
      nlohmann::json j;
      j["mode"] = "chamber";
      j["m"] = vec_json(m);
      j["word"] = word_json(ct.word);
      j["exponent"] = vec_json(ct.a);
      j["theta"] = ct.value.to_string();
      emit(o, j.dump(2) + "\n");
    } else {
      emit(o, ct.value.to_string() + "\n");
    }
    return 0;
  }
  const ScatteringDiagram D = complete_rank2(s, o.order);
  RVec Q;
  LaurentElement th(s.n, s.id);
  std::vector<BrokenLine> lines;
  if (!o.q_str.empty()) {
    Q = parse_rvec(o.q_str, static_cast<int>(D.slice.size()));
    lines = enumerate_broken_lines(m, Q, D, o.order);
    th = theta(m, Q, D, o.order);
  } else {
    const LatticeVec target(D.slice.size(), 1);
    bool done = false;
    for (int a = 0; a < 8 && !done; ++a) {
      try {
        Q = sample_base_point(target, a);
        lines = enumerate_broken_lines(m, Q, D, o.order);
        th = theta(m, Q, D, o.order);
        done = true;
      } catch (const BadBasePoint&) {
      }
    }
    if (!done) throw Error("no generic base point found");
  }
  if (o.format == "json") {
    nlohmann::json j;
    j["mode"] = "diagram";
    j["m"] = vec_json(m);
    j["order"] = o.order;
    nlohmann::json qb = nlohmann::json::array();
    for (const Rat& r : Q) qb.push_back(rat_str(r));
    j["base"] = qb;
    j["theta"] = th.to_string();
    j["broken_lines"] = nlohmann::json::array();
    for (const BrokenLine& bl : lines)
      j["broken_lines"].push_back(broken_line_json(bl));
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, th.to_string() + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verification harnesses

// Words over the unfrozen vertices with no immediate repetition, each one
// mutation away from its parent, visited depth-first in vertex order.
template <typename Fn>
inline void walk_words(const SeedState& st, int last, int depth, Fn&& fn) {
  if (depth == 0) return;
  for (int k : st.initial().uf) {
    if (k == last) continue;
    SeedState nx = mutate_state(st, k);
    fn(nx);
    walk_words(nx, k, depth - 1, fn);
  }
}

inline Report verify_positivity(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "laurent-positivity";
  rep.parameters["depth"] = o.depth;
  std::vector<long long> per_len(static_cast<std::size_t>(o.depth) + 1, 0);
  std::string witness;
  walk_words(initial_state(s), -1, o.depth, [&](const SeedState& st) {
    for (int i = 0; i < s.n; ++i) {
      const LaurentElement& z = st.vars[static_cast<std::size_t>(i)];
      if (!laurent_nonneg(z) && witness.empty())
        witness = "word " + word_to_string(st.word) + " var " +
                  std::to_string(i + 1) + ": " + z.to_string();
    }
    ++per_len[st.word.size()];
  });
  for (int L = 1; L <= o.depth; ++L)
    rep.add("expansions at word length " + std::to_string(L) +
                " nonnegative (" +
                std::to_string(per_len[static_cast<std::size_t>(L)]) +
                " states)",
            witness.empty(), witness);
  return rep;
}

inline Report verify_quantum(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "quantum-consistency";
  rep.parameters["depth"] = o.depth;
  if (!s.is_quantum()) {
    rep.add_inconclusive("quantization", "seed carries no compatible form");
    return rep;
  }
  Seed c = s;
  c.lambda = SkewForm();
  c.init();
  std::string bar_w, spec_w, newton_w;
  // Mirror walks: the classical state takes the same mutation word.
  std::function<void(const SeedState&, const SeedState&, int, int)> rec =
      [&](const SeedState& qs, const SeedState& cs, int last, int depth) {
        if (depth == 0) return;
        for (int k : s.uf) {
          if (k == last) continue;
          SeedState qn = mutate_state(qs, k);
          SeedState cn = mutate_state(cs, k);
          for (int i = 0; i < s.n; ++i) {
            const LaurentElement& zq = qn.vars[static_cast<std::size_t>(i)];
            const LaurentElement& zc = cn.vars[static_cast<std::size_t>(i)];
            if (zq.bar() != zq && bar_w.empty())
              bar_w = "word " + word_to_string(qn.word) + " var " +
                      std::to_string(i + 1);
            if (zq.eval_v_one() != zc && spec_w.empty())
              spec_w = "word " + word_to_string(qn.word) + " var " +
                       std::to_string(i + 1);
            auto keys = [](const LaurentElement& z) {
              std::vector<LatticeVec> k2;
              for (const auto& [g, cc] : z.t) k2.push_back(g);
              return k2;
            };
            if (keys(zq) != keys(zc) && newton_w.empty())
              newton_w = "word " + word_to_string(qn.word) + " var " +
                         std::to_string(i + 1);
          }
          rec(qn, cn, k, depth - 1);
        }
      };
  rec(initial_state(s), initial_state(c), -1, o.depth);
  rep.add("bar-invariant coefficient tables", bar_w.empty(), bar_w);
  rep.add("v=1 specialization matches the classical expansion", spec_w.empty(),
          spec_w);
  rep.add("same exponent supports with and without v", newton_w.empty(),
          newton_w);
  return rep;
}

inline std::vector<std::vector<int>> nonempty_subsets(const std::vector<int>& u) {
  std::vector<std::vector<int>> out;
  const std::size_t n = u.size();
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> f;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) f.push_back(u[i]);
    out.push_back(std::move(f));
  }
  return out;
}

inline std::string freeze_label(const std::vector<int>& F) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < F.size(); ++i)
    os << (i ? "," : "") << F[i] + 1;
  os << "}";
  return os.str();
}

inline Report verify_graph(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "exchange-graph";
  rep.parameters["depth"] = o.depth;
  const ExchangeGraph g = build_graph(s, o.depth);
  {
    std::ostringstream os;
    os << "nodes=" << g.nodes.size() << " edges=" << g.edge_count();
    if (g.complete)
      rep.add("mutation walk closes", true, os.str());
    else
      rep.add_inconclusive("mutation walk closes",
                           os.str() + " (depth cap reached)");
  }
  bool regular = true;
  std::string reg_w;
  for (std::size_t u = 0; u < g.nodes.size(); ++u)
    if (g.complete &&
        g.nodes[u].edges.size() != static_cast<std::size_t>(s.rank_uf())) {
      regular = false;
      reg_w = "node " + std::to_string(u);
    }
  rep.add("every seed has one neighbor per unfrozen vertex", regular, reg_w);
  const InjectiveReachable ir = find_injective_reachable(s, o.depth);
  if (ir.found)
    rep.add("injective-reachable witness", true,
            "word " + word_to_string(ir.word));
  else
    rep.add_inconclusive("injective-reachable witness",
                         "not found within depth");
  const auto subsets =
      o.freeze.empty() ? nonempty_subsets(s.uf)
                       : std::vector<std::vector<int>>{freeze_0based(o.freeze, s)};
  for (const auto& F : subsets) {
    if (F.size() == s.uf.size()) continue;  // nothing left to mutate
    const InjectiveReachable fr = find_injective_reachable(s.freeze(F), o.depth);
    if (fr.found)
      rep.add("injective-reachable preserved by freezing " + freeze_label(F),
              true, "word " + word_to_string(fr.word));
    else
      rep.add_inconclusive(
          "injective-reachable preserved by freezing " + freeze_label(F),
          "not found within depth");
  }
  return rep;
}

inline Report verify_freeze_monomial(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "freeze-cluster-monomial";
  rep.parameters["depth"] = o.depth;
  rep.parameters["box"] = o.box;
  const std::vector<int> F =
      o.freeze.empty() ? std::vector<int>{s.uf[0]} : freeze_0based(o.freeze, s);
  rep.parameters["freeze"] = freeze_label(F);
  const ExchangeGraph g = build_graph(s, o.depth);
  const ExchangeGraph fg = build_graph(s.freeze(F), o.depth);
  const auto degrees = degree_box(s.n, o.box);
  std::vector<int> status(degrees.size(), 0);  // 0 skip, 1 ok, 2 miss
  parallel_for(degrees.size(), o.threads, [&](std::size_t i) {
    const ChamberTheta ct = theta_cluster_chamber(s, degrees[i], g);
    if (!ct.found) {
      status[i] = 0;
      return;
    }
    const FrozenMonomialId id =
        identify_frozen_cluster_monomial(ct.value, s, F, fg);
    status[i] = id.found ? 1 : 2;
  });
  long long ok = 0, miss = 0, skipped = 0;
  std::string w;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (status[i] == 1) ++ok;
    if (status[i] == 0) ++skipped;
    if (status[i] == 2) {
      ++miss;
      if (w.empty()) w = "degree " + vec_to_string(degrees[i]);
    }
  }
  std::ostringstream os;
  os << ok << " identified, " << skipped << " degrees outside the fan";
  if (miss == 0)
    rep.add("frozen images are localized cluster monomials", true, os.str());
  else
    rep.add_inconclusive("frozen images are localized cluster monomials",
                         std::to_string(miss) + " unmatched within depth, first at " + w);
  return rep;
}

inline Report verify_worked_example(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "freeze-worked-example";
  const std::vector<int> F =
      o.freeze.empty() ? std::vector<int>{s.uf[0]} : freeze_0based(o.freeze, s);
  rep.parameters["freeze"] = freeze_label(F);
  const int k = F[0];
  const SeedState st1 = mutate_state(initial_state(s), k);
  const LaurentElement& xkp = st1.vars[static_cast<std::size_t>(k)];
  const LatticeVec gp = degree_of(xkp, s);
  const LatticeVec ek = unit_vec(s.rank_uf(),
                                 s.uf_pos[static_cast<std::size_t>(k)]);
  const LatticeVec shift = s.p_star(ek);
  const LaurentElement expected =
      LaurentElement::monomial(s.n, gp, VCoeff::one(), s.id) +
      LaurentElement::monomial(s.n, vec_add(gp, shift),
                               VCoeff::vpow(s.lambda(gp, shift)), s.id);
  rep.add("one-step variable is a two-term dressed monomial", xkp == expected,
          xkp.to_string());
  rep.add("freezing keeps only the bare monomial",
          freeze_pointed(xkp, s, F) ==
              LaurentElement::monomial(s.n, gp, VCoeff::one(), s.id),
          "");

  const PointedSet S = make_cluster_monomial_set(s, o.depth);
  const auto box = degree_box(s.n, 1);
  long long pairs = 0;
  std::string mul_w;
  for (std::size_t i = 0; i < box.size() && pairs < 12; ++i) {
    const auto& m1 = box[i];
    const auto& m2 = box[box.size() - 1 - i];
    const auto &z1 = S.at(m1), &z2 = S.at(m2);
    if (!z1 || !z2) continue;
    ++pairs;
    if (!check_multiplicativity(*z1, *z2, s, F) && mul_w.empty())
      mul_w = vec_to_string(m1) + " * " + vec_to_string(m2);
  }
  rep.add("degreewise freezing is multiplicative on " +
              std::to_string(pairs) + " sampled pairs",
          mul_w.empty(), mul_w);

  // Against the family: freezing memberwise differs from freezing the
  // product's decomposition.
  const LaurentElement xk =
      LaurentElement::monomial(s.n, unit_vec(s.n, k), VCoeff::one(), s.id);
  const LaurentElement prod = twisted_mul(xk, xkp, s.lambda);
  const LaurentElement through = freeze_along_basis(prod, S, F);
  const LaurentElement memberwise = twisted_mul(
      freeze_pointed(xk, s, F), freeze_pointed(xkp, s, F), s.lambda);
  rep.add("basis-wise freezing differs from memberwise freezing",
          through != memberwise && through.t.size() >= 2,
          through.to_string() + "  vs  " + memberwise.to_string());
  return rep;
}

inline Report verify_scatter(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "scattering-consistency";
  rep.parameters["order"] = o.order;
  const ScatteringDiagram D = complete_rank2(s, o.order);
  long long nontrivial = 0;
  for (const Wall& w : D.walls)
    if (!w.trivial(D.K)) ++nontrivial;
  rep.add("completion terminated", true,
          std::to_string(nontrivial) + " nontrivial walls");
  if (D.slice.size() == 2) {
    std::string w;
    const auto& starts = loop_starts();
    std::vector<char> ok(starts.size(), 1);
    parallel_for(starts.size(), o.threads, [&](std::size_t i) {
      ok[i] = consistent_loop(D, starts[i], o.order) ? 1 : 0;
    });
    for (std::size_t i = 0; i < starts.size(); ++i)
      if (!ok[i] && w.empty()) w = "start " + vec_to_string(starts[i]);
    rep.add("path-ordered products around " + std::to_string(starts.size()) +
                " generic loops are trivial",
            w.empty(), w);
  } else {
    rep.add("single wall needs no completion", D.walls.size() <= 1, "");
  }
  return rep;
}

inline Report verify_pushforward(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "scattering-pushforward";
  rep.parameters["order"] = o.order;
  const ScatteringDiagram D = complete_rank2(s, o.order);
  const auto subsets =
      o.freeze.empty() ? nonempty_subsets(s.uf)
                       : std::vector<std::vector<int>>{freeze_0based(o.freeze, s)};
  for (const auto& F : subsets) {
    const ScatteringDiagram P = freeze_pushforward(D, F);
    const ScatteringDiagram C = complete_rank2(s.freeze(F), o.order);
    bool same = true;
    for (const LatticeVec& s0 :
         {LatticeVec{2, 1}, LatticeVec{1, 2}, LatticeVec{3, 1}})
      if (!(diagram_transfer(P, s0) == diagram_transfer(C, s0))) same = false;
    rep.add("pushforward matches the frozen completion for F=" +
                freeze_label(F),
            same, "");
  }
  return rep;
}

inline std::vector<LatticeVec> theta_samples(const Seed& s, bool positive) {
  // Ten fixed degrees; slice coordinates positive when asked, frozen
  // coordinates cycling through 0 and +-1.
  static const long long pat[10][2] = {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3},
                                       {2, 3}, {3, 2}, {4, 1}, {2, 2}, {1, 4}};
  std::vector<LatticeVec> out;
  const std::vector<int>& uf = s.uf;
  std::vector<int> frozen;
  for (int i = 0; i < s.n; ++i)
    if (!s.is_unfrozen(i)) frozen.push_back(i);
  for (int t = 0; t < 10; ++t) {
    LatticeVec m(static_cast<std::size_t>(s.n), 0);
    for (std::size_t p = 0; p < uf.size() && p < 2; ++p) {
      long long v = pat[t][p];
      if (!positive && (t + static_cast<int>(p)) % 2) v = -v;
      m[static_cast<std::size_t>(uf[p])] = v;
    }
    if (!frozen.empty()) m[static_cast<std::size_t>(frozen[0])] = (t % 3) - 1;
    out.push_back(std::move(m));
  }
  return out;
}

inline Report verify_theta_monomial(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "theta-monomial";
  rep.parameters["order"] = o.order;
  const ScatteringDiagram D = complete_rank2(s, o.order);
  const LatticeVec target(D.slice.size(), 1);
  const auto samples = theta_samples(s, true);
  std::vector<char> ok(samples.size(), 0);
  parallel_for(samples.size(), o.threads, [&](std::size_t i) {
    const LaurentElement th = theta_resampled(samples[i], target, D, o.order);
    ok[i] = (th == LaurentElement::monomial(s.n, samples[i], VCoeff::one(),
                                            s.id))
                ? 1
                : 0;
  });
  std::string w;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!ok[i] && w.empty()) w = "m=" + vec_to_string(samples[i]);
  rep.add("theta at " + std::to_string(samples.size()) +
              " positive-chamber degrees is the bare monomial",
          w.empty(), w);
  return rep;
}

inline Report verify_theta_expansion(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "theta-cluster-expansion";
  rep.parameters["order"] = o.order;
  rep.parameters["depth"] = o.depth;
  const ScatteringDiagram D = complete_rank2(s, o.order);
  const LatticeVec target(D.slice.size(), 1);
  const ExchangeGraph g = build_graph(s, o.depth);
  long long matched = 0, skipped = 0;
  std::string w;
  for (const auto& node : g.nodes) {
    for (int k : s.uf) {
      const LaurentElement& z = node.state.vars[static_cast<std::size_t>(k)];
      const PointedElement pe = extract_pointed(z, s);
      long long fdeg = 0;
      for (const auto& [nv, c] : pe.f) fdeg = std::max(fdeg, total_order(nv));
      if (fdeg > o.order) {
        ++skipped;
        continue;
      }
      const LaurentElement th = theta_resampled(pe.g, target, D, o.order);
      if (th == z)
        ++matched;
      else if (w.empty())
        w = "word " + word_to_string(node.word) + " var " + std::to_string(k + 1);
    }
  }
  std::ostringstream os;
  os << matched << " expansions matched, " << skipped
     << " beyond the truncation order";
  rep.add("chamber theta functions equal cluster expansions", w.empty(),
          w.empty() ? os.str() : w);
  if (skipped > 0)
    rep.add_inconclusive("expansions beyond the truncation order",
                         std::to_string(skipped) + " skipped");
  return rep;
}

inline Report verify_theta_freezing(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "theta-freezing";
  rep.parameters["order"] = o.order;
  const ScatteringDiagram D = complete_rank2(s, o.order);
  const LatticeVec target(D.slice.size(), 1);
  const auto subsets =
      o.freeze.empty() ? nonempty_subsets(s.uf)
                       : std::vector<std::vector<int>>{freeze_0based(o.freeze, s)};
  const auto samples = theta_samples(s, false);
  for (const auto& F : subsets) {
    std::vector<char> ok(samples.size(), 0);
    parallel_for(samples.size(), o.threads, [&](std::size_t i) {
      for (int a = 0; a < 8; ++a) {
        try {
          ok[i] = freeze_theta_check(D, F, samples[i],
                                     sample_base_point(target, a), o.order)
                      ? 1
                      : 0;
          return;
        } catch (const BadBasePoint&) {
        }
      }
    });
    std::string w;
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (!ok[i] && w.empty()) w = "m=" + vec_to_string(samples[i]);
    rep.add("frozen theta equals pushed-diagram theta for F=" +
                freeze_label(F) + " on " + std::to_string(samples.size()) +
                " degrees",
            w.empty(), w);
  }
  return rep;
}

inline Report verify_property_s(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "property-s";
  rep.parameters["order"] = o.order;
  rep.parameters["box"] = o.box;
  rep.parameters["d_max"] = o.d_max;
  const ScatteringDiagram D = complete_rank2(s, o.order);
  const auto degrees = degree_box(s.n, o.box);
  const std::vector<int> ks =
      o.freeze.empty() ? s.uf : freeze_0based(o.freeze, s);
  for (int k : ks) {
    std::vector<long long> dfound(degrees.size(), -1);
    std::vector<char> bounded(degrees.size(), 1);
    parallel_for(degrees.size(), o.threads, [&](std::size_t i) {
      const PropertySResult r =
          property_s_search(D, degrees[i], k, o.order, o.d_max);
      dfound[i] = r.found ? r.d : -1;
      bounded[i] = (!r.found || r.d <= r.predicted) ? 1 : 0;
    });
    long long worst = -1;
    std::string miss, unbound;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      if (dfound[i] < 0 && miss.empty())
        miss = "degree " + vec_to_string(degrees[i]);
      worst = std::max(worst, dfound[i]);
      if (!bounded[i] && unbound.empty())
        unbound = "degree " + vec_to_string(degrees[i]);
    }
    if (miss.empty())
      rep.add("support clears at vertex " + std::to_string(k + 1) +
                  " across the box",
              true, "max d = " + std::to_string(worst));
    else
      rep.add_inconclusive("support clears at vertex " + std::to_string(k + 1) +
                               " across the box",
                           miss + " within d_max " + std::to_string(o.d_max));
    rep.add("found shifts at vertex " + std::to_string(k + 1) +
                " within the certified threshold",
            unbound.empty(), unbound);
  }
  return rep;
}

using HarnessFn = Report (*)(const Seed&, const Opts&);

struct HarnessInfo {
  const char* id;
  const char* what;
  HarnessFn fn;
};

inline const std::vector<HarnessInfo>& registry() {
  static const std::vector<HarnessInfo> r = {
      {"freeze-worked-example",
       "one-step expansion, its freezing, multiplicativity samples, and the "
       "basis-wise counterexample",
       &verify_worked_example},
      {"laurent-positivity",
       "all expansions along words up to --depth have nonnegative "
       "coefficients",
       &verify_positivity},
      {"quantum-consistency",
       "bar-invariance, v=1 specialization, and exponent supports of quantum "
       "expansions",
       &verify_quantum},
      {"exchange-graph",
       "walk closure, regularity, and injective-reachability, also under "
       "freezing",
       &verify_graph},
      {"freeze-cluster-monomial",
       "frozen localized cluster monomials are identified in the frozen "
       "seed's walk",
       &verify_freeze_monomial},
      {"scattering-consistency",
       "order-truncated completion passes generic loop checks",
       &verify_scatter},
      {"scattering-pushforward",
       "coefficientwise freezing of the completed diagram matches the frozen "
       "seed's completion",
       &verify_pushforward},
      {"theta-monomial",
       "theta functions in the positive chamber are bare monomials",
       &verify_theta_monomial},
      {"theta-cluster-expansion",
       "theta functions at chamber degrees equal cluster expansions",
       &verify_theta_expansion},
      {"theta-freezing",
       "freezing a theta function equals the pushed diagram's theta",
       &verify_theta_freezing},
      {"property-s",
       "shifting a degree along a vertex eventually clears it from theta "
       "supports",
       &verify_property_s},
  };
  return r;
}

inline int emit_report(const Report& rep, const Opts& o) {
  if (o.format == "text")
    emit(o, rep.to_text());
  else
    emit(o, rep.to_json().dump(2) + "\n");
  return rep.exit_code();
}

inline int run_verify(const Seed& s, Opts& o) {
  for (const HarnessInfo& h : registry()) {
    if (o.id == h.id) {
      Report rep = h.fn(s, o);
      rep.subject = subject_of(o.seed_path);
      return emit_report(rep, o);
    }
  }
  std::ostringstream os;
  os << "unknown verification id '" << o.id << "'; available:";
  for (const HarnessInfo& h : registry()) os << ' ' << h.id;
  throw ParseError(os.str());
}

inline Report bases_report(const Seed& s, const Opts& o) {
  Report rep;
  rep.id = "bases-suite";
  rep.parameters["basis"] = o.basis;
  rep.parameters["box"] = o.box;
  PointedSet S;
  if (o.basis == "theta") {
    if (s.rank_uf() > 2 || s.is_quantum())
      throw ParseError("--basis theta needs a classical seed of rank <= 2");
    S = make_theta_set(complete_rank2(s, o.order));
    rep.parameters["order"] = o.order;
  } else if (o.basis == "cluster") {
    S = make_cluster_monomial_set(s, o.depth);
    rep.parameters["depth"] = o.depth;
  } else {
    throw ParseError("--basis must be cluster or theta");
  }

  const auto box = degree_box(s.n, o.box);
  long long missing = 0;
  std::string miss_w;
  for (const auto& g : box)
    if (!S.at(g)) {
      ++missing;
      if (miss_w.empty()) miss_w = vec_to_string(g);
    }
  if (missing == 0)
    rep.add("family members exist across the box", true,
            std::to_string(box.size()) + " degrees");
  else
    rep.add_inconclusive("family members exist across the box",
                         std::to_string(missing) + " missing, first " + miss_w);

  std::vector<std::pair<LatticeVec, LatticeVec>> pairs;
  if (s.n == 2) {
    for (const auto& g1 : degree_box(2, 1))
      for (const auto& g2 : degree_box(2, 1)) pairs.emplace_back(g1, g2);
  } else {
    for (const auto& g : degree_box(s.n, 1)) {
      LatticeVec neg = g;
      for (auto& x : neg) x = -x;
      pairs.emplace_back(g, neg);
    }
  }
  try {
    const CheckReport ls = check_local_support(S, pairs);
    rep.add("products decompose with local support (" +
                std::to_string(ls.checked) + " pairs, " +
                std::to_string(ls.fast_path) + " by positivity)",
            ls.ok, ls.ok ? "" : ls.witnesses.front());
  } catch (const NotInSpanError& e) {
    rep.add_inconclusive("products decompose with local support", e.what());
  }

  if (!s.is_quantum() && s.rank_uf() <= 2) {
    const PointedSet C = o.basis == "theta"
                             ? make_cluster_monomial_set(s, o.depth)
                             : make_theta_set(complete_rank2(s, o.order));
    CheckReport tr = check_local_transition(S, C, box);
    rep.add("transition to the companion family is unitriangular and local",
            tr.ok, tr.ok ? "" : tr.witnesses.front());
  } else {
    rep.add_inconclusive("transition to the companion family",
                         "companion requires a classical seed of rank <= 2");
  }

  if (!o.freeze.empty()) {
    const std::vector<int> F = freeze_0based(o.freeze, s);
    rep.parameters["freeze"] = freeze_label(F);
    const PointedSet ZF = basis_by_freezing(S, F);
    const PointedSet ZL = basis_by_localization(S, F, o.d_max);
    std::string w;
    long long incon = 0;
    for (const auto& g : box) {
      const auto& a = ZF.at(g);
      const auto& b = ZL.at(g);
      if (!a || !b) {
        ++incon;
        continue;
      }
      if (!(*a == *b) && w.empty()) w = "degree " + vec_to_string(g);
    }
    if (!w.empty())
      rep.add("freezing image equals shift localization", false, w);
    else if (incon > 0)
      rep.add_inconclusive("freezing image equals shift localization",
                           std::to_string(incon) + " degrees not settled");
    else
      rep.add("freezing image equals shift localization", true, "");

    // Change of pointed family upstream does not change the frozen span.
    PointedSet P = S;
    P.cache = std::make_shared<
        std::map<LatticeVec, std::optional<LaurentElement>>>();
    const auto base = S.gen;
    const LatticeVec g0 = box.front();
    const LatticeVec g1 =
        vec_add(g0, s.p_star(unit_vec(s.rank_uf(), 0)));
    P.gen = [base, g0, g1](const LatticeVec& g)
        -> std::optional<LaurentElement> {
      if (g == g0) {
        auto z = base(g0);
        auto w2 = base(g1);
        if (z && w2) *z += *w2;
        return z;
      }
      return base(g);
    };
    try {
      const CheckReport sp = equal_spans_on_box(basis_by_freezing(P, F), ZF, box);
      rep.add("frozen span is independent of the upstream family", sp.ok,
              sp.ok ? "" : sp.witnesses.front());
    } catch (const Error& e) {
      rep.add_inconclusive("frozen span is independent of the upstream family",
                           e.what());
    }
  }
  return rep;
}

inline int run_bases_verify(const Seed& s, Opts& o) {
  Report rep = bases_report(s, o);
  rep.subject = subject_of(o.seed_path);
  return emit_report(rep, o);
}

// ---------------------------------------------------------------------------

inline int run(int argc, char** argv) {
  Opts o;
  CLI::App app{"exact cluster-algebra toolkit: mutation, expansions, "
               "freezing, scattering diagrams, theta functions"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* c, bool needs_seed = true) {
    if (needs_seed)
      c->add_option("seed", o.seed_path, "seed JSON file")->required();
    c->add_option("--output", o.output, "write output to this file");
    c->add_option("--threads", o.threads, "worker threads (default 1)");
  };
  o.format.clear();
  const auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "output format");
  };

  auto* mut = app.add_subcommand("mutate", "apply a mutation word to a seed");
  add_common(mut);
  mut->add_option("--word", o.word_str, "comma-separated 1-based vertices");

  auto* exp = app.add_subcommand("expand", "Laurent expansion of a variable");
  add_common(exp);
  add_format(exp);
  exp->add_option("--word", o.word_str, "mutation word");
  exp->add_option("--var", o.var, "1-based variable index")->required();

  auto* gv = app.add_subcommand("gvec", "degree of a variable");
  add_common(gv);
  add_format(gv);
  gv->add_option("--word", o.word_str, "mutation word");
  gv->add_option("--var", o.var, "1-based variable index")->required();

  auto* fp = app.add_subcommand("fpoly", "coefficient table of a variable");
  add_common(fp);
  add_format(fp);
  fp->add_option("--word", o.word_str, "mutation word");
  fp->add_option("--var", o.var, "1-based variable index")->required();

  auto* cv = app.add_subcommand("cvec", "chamber normals after a word");
  add_common(cv);
  add_format(cv);
  cv->add_option("--word", o.word_str, "mutation word");

  auto* gr = app.add_subcommand("graph", "breadth-first mutation walk");
  add_common(gr);
  add_format(gr);
  gr->add_option("--depth", o.depth, "walk depth cap");

  auto* fz = app.add_subcommand("freeze", "freeze vertices, or apply the "
                                          "freezing operator to an expansion");
  add_common(fz);
  fz->add_option("--freeze", o.freeze, "1-based vertices to freeze")
      ->delimiter(',')
      ->required();
  fz->add_option("--word", o.word_str, "mutation word");
  o.var = 0;
  fz->add_option("--var", o.var, "1-based variable index");

  auto* sc = app.add_subcommand("scatter", "order-truncated consistent "
                                           "diagram for rank <= 2");
  add_common(sc);
  add_format(sc);
  sc->add_option("--order", o.order, "truncation order");

  auto* th = app.add_subcommand("theta", "broken-line theta function");
  add_common(th);
  add_format(th);
  th->add_option("--m", o.m_str, "degree, comma-separated")->required();
  th->add_option("--order", o.order, "truncation order");
  th->add_option("--depth", o.depth, "chamber search depth for rank > 2");
  th->add_option("--q", o.q_str, "base point in slice coordinates");

  auto* ve = app.add_subcommand("verify", "run a verification harness");
  ve->add_option("id", o.id, "harness id")->required();
  add_common(ve);
  add_format(ve);
  ve->add_option("--word", o.word_str, "mutation word");
  ve->add_option("--freeze", o.freeze, "1-based vertices")->delimiter(',');
  ve->add_option("--order", o.order, "truncation order");
  ve->add_option("--depth", o.depth, "walk/word depth");
  ve->add_option("--box", o.box, "degree box radius");
  ve->add_option("--d-max", o.d_max, "shift search cap");

  auto* ba = app.add_subcommand("bases", "pointed-family laboratory");
  ba->require_subcommand(1);
  auto* bv = ba->add_subcommand("verify", "decomposition, local support, "
                                          "freezing and localization checks");
  add_common(bv);
  add_format(bv);
  bv->add_option("--basis", o.basis, "cluster or theta");
  bv->add_option("--freeze", o.freeze, "1-based vertices")->delimiter(',');
  bv->add_option("--box", o.box, "degree box radius");
  bv->add_option("--order", o.order, "truncation order for theta");
  bv->add_option("--depth", o.depth, "chamber search depth");
  bv->add_option("--d-max", o.d_max, "shift search cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (o.format.empty()) o.format = (*ve || *bv) ? "json" : "text";

  try {
    const Seed s = load_seed(o.seed_path);
    if (*mut) return run_mutate(s, o);
    if (*exp) return run_expand(s, o);
    if (*gv) return run_gvec(s, o);
    if (*fp) return run_fpoly(s, o);
    if (*cv) return run_cvec(s, o);
    if (*gr) return run_graph(s, o);
    if (*fz) return run_freeze(s, o);
    if (*sc) return run_scatter(s, o);
    if (*th) return run_theta(s, o);
    if (*ve) return run_verify(s, o);
    if (*bv) return run_bases_verify(s, o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cluskit::cli
