#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qlskit/errors.hpp"
#include "qlskit/verify.hpp"

using namespace qlskit;
using nlohmann::ordered_json;

namespace {

struct CommonArgs {
  std::string type;
  int rank = 0;
  std::string format = "text";
};

std::string type_label(const CommonArgs& c) {
  if (c.rank > 0) {
    check_arg(c.type.size() == 1, "with --rank the type must be a single letter");
    return c.type + std::to_string(c.rank);
  }
  return c.type;
}

std::vector<Int> parse_coords(const std::string& text) {
  check_arg(!text.empty(), "empty coordinate list");
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    check_arg(!piece.empty(), "empty coordinate");
    std::size_t used = 0;
    Int v = std::stoll(piece, &used);
    check_arg(used == piece.size(), "bad coordinate: " + piece);
    out.push_back(v);
  }
  return out;
}

WeightVec parse_weight(const RootDatum& d, const std::string& text) {
  std::vector<Int> coords = parse_coords(text);
  check_arg(static_cast<int>(coords.size()) == d.rank,
            "weight needs " + std::to_string(d.rank) + " coordinates");
  return WeightVec(std::move(coords));
}

std::vector<WeylElt> parse_twists(const WeylGroup& W, const std::string& sel) {
  if (sel == "all") return W.elements();
  return {W.parse(sel)};
}

template <class C>
ordered_json coords_json(const C& c) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < c.rank(); ++i) a.push_back(c[i]);
  return a;
}

void emit(const std::string& text) { std::cout << text; }

void emit_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_roots(const CommonArgs& c) {
  RootDatum d = RootDatum::build(type_label(c));
  if (c.format == "json") {
    ordered_json j;
    j["type"] = d.type_label();
    j["rank"] = d.rank;
    j["cartan"] = d.cartan;
    j["symmetrizer"] = d.symmetrizer;
    ordered_json roots = ordered_json::array();
    for (std::size_t k = 0; k < d.pos_roots.size(); ++k) {
      ordered_json r;
      r["label"] = d.root_str(d.pos_roots[k]);
      r["root"] = coords_json(d.pos_roots[k]);
      r["coroot"] = coords_json(d.pos_coroots[k]);
      r["height"] = RootDatum::height(d.pos_roots[k]);
      roots.push_back(std::move(r));
    }
    j["positive_roots"] = std::move(roots);
    j["theta"] = coords_json(d.theta);
    j["theta_dual"] = coords_json(d.theta_dual);
    emit_json(j);
    return 0;
  }
  check_arg(c.format == "text", "roots supports text or json output");
  std::ostringstream os;
  os << "type=" << d.type_label() << " rank=" << d.rank << "\n";
  os << "cartan:\n";
  for (const std::vector<Int>& row : d.cartan) {
    os << " ";
    for (Int v : row) os << " " << v;
    os << "\n";
  }
  os << "symmetrizer: " << join(d.symmetrizer, ",", [](Int v) { return std::to_string(v); })
     << "\n";
  os << "positive roots (" << d.pos_roots.size() << "):\n";
  for (std::size_t k = 0; k < d.pos_roots.size(); ++k)
    os << "  " << d.root_str(d.pos_roots[k]) << " = " << coords_str(d.pos_roots[k])
       << "  dual=" << coords_str(d.pos_coroots[k])
       << "  height=" << RootDatum::height(d.pos_roots[k]) << "\n";
  os << "theta=" << coords_str(d.theta) << " theta_dual=" << coords_str(d.theta_dual) << "\n";
  emit(os.str());
  return 0;
}

int cmd_weyl(const CommonArgs& c, const std::string& wsel) {
  RootDatum d = RootDatum::build(type_label(c));
  WeylGroup W(d);
  if (!wsel.empty() && wsel != "all") {
    WeylElt w = W.parse(wsel);
    if (c.format == "json") {
      ordered_json j;
      j["word"] = w.str();
      j["length"] = w.length();
      j["inverse"] = w.inv().str();
      emit_json(j);
    } else {
      check_arg(c.format == "text", "weyl supports text or json output");
      emit("w=" + w.str() + " len=" + std::to_string(w.length()) + " inv=" + w.inv().str() +
           "\n");
    }
    return 0;
  }
  if (c.format == "json") {
    ordered_json j;
    j["type"] = d.type_label();
    j["order"] = W.size();
    ordered_json els = ordered_json::array();
    for (const WeylElt& w : W.elements()) {
      ordered_json e;
      e["word"] = w.str();
      e["length"] = w.length();
      e["inverse"] = w.inv().str();
      els.push_back(std::move(e));
    }
    j["elements"] = std::move(els);
    emit_json(j);
    return 0;
  }
  check_arg(c.format == "text", "weyl supports text or json output");
  std::ostringstream os;
  os << "type=" << d.type_label() << " order=" << W.size() << "\n";
  for (const WeylElt& w : W.elements())
    os << "  " << w.str() << " len=" << w.length() << " inv=" << w.inv().str() << "\n";
  emit(os.str());
  return 0;
}

int cmd_qbg(const CommonArgs& c, const std::string& parabolic_from) {
  RootDatum d = RootDatum::build(type_label(c));
  WeylGroup W(d);
  std::vector<int> J;
  if (!parabolic_from.empty()) J = derive_J(parse_weight(d, parabolic_from));
  QBGraph g(W, J);
  if (c.format == "dot") {
    emit(g.export_dot());
    return 0;
  }
  if (c.format == "json") {
    ordered_json j;
    j["type"] = d.type_label();
    j["J"] = index_set_str(g.J());
    ordered_json nodes = ordered_json::array();
    for (const WeylElt& v : g.vertices()) nodes.push_back(v.str());
    j["nodes"] = std::move(nodes);
    ordered_json edges = ordered_json::array();
    for (const QBGEdge& e : g.edges()) {
      ordered_json je;
      je["src"] = g.vertices()[static_cast<std::size_t>(e.src)].str();
      je["dst"] = g.vertices()[static_cast<std::size_t>(e.dst)].str();
      je["root"] = d.root_str(e.label);
      je["coroot"] = coords_json(e.label_dual);
      je["quantum"] = e.quantum;
      edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    ordered_json pairs = ordered_json::array();
    for (int a = 0; a < g.num_vertices(); ++a)
      for (int b = 0; b < g.num_vertices(); ++b) {
        ordered_json jp;
        jp["w"] = g.vertices()[static_cast<std::size_t>(a)].str();
        jp["v"] = g.vertices()[static_cast<std::size_t>(b)].str();
        jp["length"] = g.distance(a, b);
        jp["weight"] = coords_json(g.shortest_weight(a, b));
        pairs.push_back(std::move(jp));
      }
    j["pairs"] = std::move(pairs);
    emit_json(j);
    return 0;
  }
  check_arg(c.format == "text", "unknown output format");
  std::ostringstream os;
  os << "qbg type=" << d.type_label() << " J=" << index_set_str(g.J()) << ": "
     << g.num_vertices() << " nodes, " << g.edges().size() << " edges\n";
  os << "edges:\n";
  for (const QBGEdge& e : g.edges())
    os << "  " << g.vertices()[static_cast<std::size_t>(e.src)].str() << " -> "
       << g.vertices()[static_cast<std::size_t>(e.dst)].str() << "  root=" << d.root_str(e.label)
       << " coroot=" << coords_str(e.label_dual) << (e.quantum ? "  quantum" : "  bruhat")
       << "\n";
  os << "pairs (w, v, length, weight):\n";
  for (int a = 0; a < g.num_vertices(); ++a)
    for (int b = 0; b < g.num_vertices(); ++b)
      os << "  " << g.vertices()[static_cast<std::size_t>(a)].str() << "  "
         << g.vertices()[static_cast<std::size_t>(b)].str() << "  " << g.distance(a, b) << "  "
         << coords_str(g.shortest_weight(a, b)) << "\n";
  emit(os.str());
  return 0;
}

int cmd_qls(const CommonArgs& c, const std::string& weight, bool crystal, Int cap) {
  RootDatum d = RootDatum::build(type_label(c));
  WeylGroup W(d);
  WeightVec lam = parse_weight(d, weight);
  QBGraph g(W, derive_J(lam));
  QLSModel M(W, lam, g, cap);
  const std::vector<QLSPath>& ps = M.paths();
  if (c.format == "dot") {
    emit(M.export_crystal_dot());
    return 0;
  }
  if (c.format == "json") {
    ordered_json j;
    j["type"] = d.type_label();
    j["lambda"] = coords_json(lam);
    j["J"] = index_set_str(M.J());
    j["count"] = ps.size();
    ordered_json arr = ordered_json::array();
    for (const QLSPath& p : ps) {
      ordered_json jp;
      jp["path"] = p.str();
      ordered_json dirs = ordered_json::array();
      for (const WeylElt& v : p.dirs) dirs.push_back(v.str());
      jp["dirs"] = std::move(dirs);
      ordered_json times = ordered_json::array();
      for (const Rat& t : p.times) times.push_back(str(t));
      jp["times"] = std::move(times);
      jp["weight"] = coords_json(M.wt(p));
      arr.push_back(std::move(jp));
    }
    j["paths"] = std::move(arr);
    if (crystal) {
      ordered_json arrows = ordered_json::array();
      for (std::size_t k = 0; k < ps.size(); ++k)
        for (int a = 0; a <= W.rank(); ++a)
          if (auto q = M.f(ps[k], a)) {
            ordered_json ja;
            ja["index"] = a;
            ja["src"] = k;
            std::size_t dst = 0;
            while (dst < ps.size() && !(ps[dst] == *q)) ++dst;
            ja["dst"] = dst;
            arrows.push_back(std::move(ja));
          }
      j["arrows"] = std::move(arrows);
    }
    emit_json(j);
    return 0;
  }
  check_arg(c.format == "text", "unknown output format");
  std::ostringstream os;
  os << "qls type=" << d.type_label() << " lambda=" << coords_str(lam)
     << " J=" << index_set_str(M.J()) << ": " << ps.size() << " paths\n";
  for (const QLSPath& p : ps) os << "  " << p.str() << "  wt=" << coords_str(M.wt(p)) << "\n";
  if (crystal) {
    os << "arrows:\n";
    for (const QLSPath& p : ps)
      for (int a = 0; a <= W.rank(); ++a)
        if (auto q = M.f(p, a))
          os << "  f" << a << ": " << p.str() << " -> " << q->str() << "\n";
  }
  emit(os.str());
  return 0;
}

int cmd_gch(const CommonArgs& c, const std::string& weight, const std::string& wsel, Int cap) {
  RootDatum d = RootDatum::build(type_label(c));
  WeylGroup W(d);
  WeightVec lam = parse_weight(d, weight);
  QBGraph g(W, derive_J(lam));
  QLSModel M(W, lam, g, cap);
  std::vector<WeylElt> twists = parse_twists(W, wsel);
  if (c.format == "json") {
    ordered_json j;
    j["type"] = d.type_label();
    j["lambda"] = coords_json(lam);
    ordered_json chars = ordered_json::array();
    for (const WeylElt& w : twists) {
      GradedCharacter ch = M.gch(w);
      ordered_json jc;
      jc["w"] = w.str();
      jc["str"] = ch.str();
      ordered_json terms = ordered_json::array();
      for (const auto& [key, coef] : ch.terms()) {
        ordered_json t;
        t["weight"] = coords_json(key.first);
        t["q"] = key.second;
        t["coeff"] = coef;
        terms.push_back(std::move(t));
      }
      jc["terms"] = std::move(terms);
      chars.push_back(std::move(jc));
    }
    j["characters"] = std::move(chars);
    emit_json(j);
    return 0;
  }
  check_arg(c.format == "text", "gch supports text or json output");
  std::ostringstream os;
  for (const WeylElt& w : twists) os << "w=" << w.str() << ": " << M.gch(w).str() << "\n";
  emit(os.str());
  return 0;
}

int cmd_verify(const CommonArgs& c, const std::string& suite, const std::string& lambda_text,
               const std::string& mu_text, const std::string& wsel, int depth, int jobs) {
  check_arg(c.format == "text" || c.format == "json", "verify supports text or json output");
  Workspace ws(type_label(c));
  const RootDatum& d = ws.datum();
  std::vector<WeylElt> twists = parse_twists(ws.group(), wsel);
  bool has_lam = !lambda_text.empty();
  bool has_mu = !mu_text.empty();
  WeightVec lam = has_lam ? parse_weight(d, lambda_text) : WeightVec::zero(d.rank);
  WeightVec mu = has_mu ? parse_weight(d, mu_text) : WeightVec::zero(d.rank);
  constexpr int kSamples = 100;
  constexpr unsigned kSeed = 2024u;

  std::vector<Report> reports;
  auto need_lam = [&] { check_arg(has_lam, "suite '" + suite + "' needs --lambda"); };
  auto need_mu = [&] { check_arg(has_mu, "suite '" + suite + "' needs --mu"); };
  auto similarity_order = [&]() -> Int {
    Int N = stretch_factor(ws.qls(lam));
    return N > 1 ? N : 2;
  };

  if (suite == "theorem") {
    need_lam();
    need_mu();
    reports.push_back(verify_main_theorem(ws, lam, mu, twists, depth, jobs));
  } else if (suite == "degree") {
    need_lam();
    if (has_mu)
      reports.push_back(verify_degree_identity(ws, lam, mu, twists, jobs));
    else
      reports.push_back(verify_degree_routes(ws, lam, jobs));
  } else if (suite == "corollary") {
    need_lam();
    need_mu();
    reports.push_back(verify_character_identity(ws, lam, mu, twists, jobs));
  } else if (suite == "lemmas") {
    reports.push_back(verify_graph_lemmas(ws, jobs));
  } else if (suite == "diagrams") {
    need_lam();
    reports.push_back(verify_similarity(ws, lam, similarity_order(), kSamples, kSeed, depth, jobs));
  } else if (suite == "all") {
    reports.push_back(verify_graph_lemmas(ws, jobs));
    if (has_lam) {
      reports.push_back(verify_crystal_axioms(ws, lam));
      reports.push_back(verify_degree_routes(ws, lam, jobs));
      reports.push_back(verify_level_zero_samples(ws, lam, kSamples, kSeed));
      reports.push_back(verify_similarity(ws, lam, similarity_order(), kSamples, kSeed, depth, jobs));
    }
    if (has_lam && has_mu) {
      reports.push_back(verify_main_theorem(ws, lam, mu, twists, depth, jobs));
      reports.push_back(verify_degree_identity(ws, lam, mu, twists, jobs));
      reports.push_back(verify_character_identity(ws, lam, mu, twists, jobs));
      reports.push_back(verify_final_directions(ws, lam, mu));
      reports.push_back(verify_composition(ws, {lam, mu}, twists, depth, jobs));
    }
  } else {
    check_arg(false, "unknown suite: " + suite);
  }

  bool pass = true;
  for (const Report& r : reports) pass = pass && r.all_pass();
  if (c.format == "json") {
    ordered_json out = ordered_json::array();
    for (const Report& r : reports) out.push_back(ordered_json::parse(r.json()));
    emit_json(out);
  } else {
    for (const Report& r : reports) emit(r.str());
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Bruhat graphs, path crystals, and identity verification"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, CommonArgs& c) {
    sub->add_option("--type", c.type, "root system type, e.g. A2 (or a letter with --rank)")
        ->required();
    sub->add_option("--rank", c.rank, "rank, combined with a bare letter --type");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
  };

  CommonArgs roots_args;
  CLI::App* roots = app.add_subcommand("roots", "print the root datum");
  add_common(roots, roots_args);

  CommonArgs weyl_args;
  std::string weyl_w;
  CLI::App* weyl = app.add_subcommand("weyl", "list group elements or describe one");
  add_common(weyl, weyl_args);
  weyl->add_option("--w", weyl_w, "reduced word, e for the identity");

  CommonArgs qbg_args;
  std::string qbg_pf;
  CLI::App* qbg = app.add_subcommand("qbg", "build the quantum Bruhat graph");
  add_common(qbg, qbg_args);
  qbg->add_option("--parabolic-from", qbg_pf,
                  "weight whose zero coordinates select the parabolic quotient");

  CommonArgs qls_args;
  std::string qls_weight;
  bool qls_crystal = false;
  Int qls_cap = 1000000;
  CLI::App* qls = app.add_subcommand("qls", "enumerate the path crystal of a shape");
  add_common(qls, qls_args);
  qls->add_option("--weight", qls_weight, "dominant shape in fundamental-weight coordinates")
      ->required();
  qls->add_flag("--crystal", qls_crystal, "include crystal arrows");
  qls->add_option("--cap", qls_cap, "enumeration size cap");

  CommonArgs gch_args;
  std::string gch_weight;
  std::string gch_w = "all";
  Int gch_cap = 1000000;
  CLI::App* gch = app.add_subcommand("gch", "print graded characters");
  add_common(gch, gch_args);
  gch->add_option("--weight", gch_weight, "dominant shape in fundamental-weight coordinates")
      ->required();
  gch->add_option("--w", gch_w, "twist as a reduced word, or all");
  gch->add_option("--cap", gch_cap, "enumeration size cap");

  CommonArgs verify_args;
  std::string verify_suite;
  std::string verify_lambda;
  std::string verify_mu;
  std::string verify_w = "all";
  int verify_depth = 64;
  int verify_jobs = 1;
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, verify_args);
  verify->add_option("suite", verify_suite, "what to verify")
      ->required()
      ->check(CLI::IsMember({"theorem", "degree", "corollary", "lemmas", "diagrams", "all"}));
  verify->add_option("--lambda", verify_lambda, "first shape");
  verify->add_option("--mu", verify_mu, "second shape");
  verify->add_option("--w", verify_w, "twist as a reduced word, or all");
  verify->add_option("--depth", verify_depth, "operator word search depth");
  verify->add_option("--jobs", verify_jobs, "worker thread count")->envname("QLSKIT_JOBS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (roots->parsed()) return cmd_roots(roots_args);
    if (weyl->parsed()) return cmd_weyl(weyl_args, weyl_w);
    if (qbg->parsed()) return cmd_qbg(qbg_args, qbg_pf);
    if (qls->parsed()) return cmd_qls(qls_args, qls_weight, qls_crystal, qls_cap);
    if (gch->parsed()) return cmd_gch(gch_args, gch_weight, gch_w, gch_cap);
    if (verify->parsed())
      return cmd_verify(verify_args, verify_suite, verify_lambda, verify_mu, verify_w,
                        verify_depth, verify_jobs);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DepthExceeded& e) {
    std::cerr << "error: " << e.what() << "; raise --depth\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
