#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idxcode/idxcode.hpp"

using namespace idxcode;

namespace {

struct RunConfig {
  std::uint64_t budget = kDefaultSearchBudget;
  std::uint64_t seed = 0;
  std::string format = "json";
};

Json config_json(const RunConfig& cfg) {
  Json j;
  j["budget"] = cfg.budget;
  j["seed"] = cfg.seed;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

/// Graph files hold either the plain edge-list format or its JSON mirror;
/// a leading '{' selects JSON.
Digraph load_digraph(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return digraph_from_json(parse_json_text(text, path));
  return parse_digraph(text);
}

Json load_json(const std::string& path) { return parse_json_text(read_file(path), path); }

void emit(const Json& out) { std::cout << json_text(out); }

int emit_error(const std::string& type, const std::string& message, int code) {
  Json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  std::cerr << json_text(j);
  return code;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const BudgetExceededError& e) {
    return emit_error("budget", e.what(), 2);
  } catch (const Error& e) {
    return emit_error("invalid-input", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 1);
  }
}

std::string decoder_line(const Decoder& d) {
  std::ostringstream s;
  s << "alpha=[";
  for (std::size_t i = 0; i < d.alpha.size(); ++i) s << (i ? "," : "") << int(d.alpha[i]);
  s << "] beta={";
  bool first = true;
  for (const auto& [v, c] : d.beta) {
    s << (first ? "" : ",") << v << ":" << int(c);
    first = false;
  }
  s << "}";
  return s.str();
}

int cmd_bounds(const RunConfig& cfg, const std::string& graph_path, std::vector<int> qs, bool exact) {
  const Digraph g = load_digraph(graph_path);
  BoundsReport rep = bounds_report(g, qs, exact, cfg.budget);
  rep.graph_id = graph_path;
  if (cfg.format == "table") {
    std::cout << "graph " << graph_path << " (order " << rep.order << ")\n";
    if (rep.chi_f_complement)
      std::cout << "chi_f(complement) = " << rational_string(*rep.chi_f_complement) << " (context)\n";
    for (const QBoundEntry& e : rep.entries) {
      std::cout << "q=" << e.q << ": lower=" << e.lower_min_k << " upper=" << e.chi_complement;
      if (e.exact) std::cout << " exact=" << *e.exact;
      if (e.exact_skipped) std::cout << " exact-skipped=" << *e.exact_skipped;
      for (const auto& [from_q, fc] : e.field_change)
        std::cout << " via-q" << from_q << "<=" << fc.bound;
      std::cout << "\n";
    }
    return 0;
  }
  Json out = bounds_report_to_json(rep);
  out["config"] = config_json(cfg);
  emit(out);
  return 0;
}

int cmd_lind(const RunConfig& cfg, const std::string& graph_path, int q, int kmax) {
  const Digraph g = load_digraph(graph_path);
  const int cap = kmax > 0 ? kmax : g.order();
  const auto r = lind(g, q, cap, cfg.budget);
  if (cfg.format == "table") {
    if (r)
      std::cout << "lind = " << r->k << "\n";
    else
      std::cout << "none within kmax=" << cap << "\n";
    return 0;
  }
  Json out;
  out["config"] = config_json(cfg);
  out["graph"] = graph_path;
  out["q"] = q;
  out["kmax"] = cap;
  if (r) {
    out["k"] = r->k;
    out["code"] = linear_code_to_json(r->code);
  } else {
    out["k"] = nullptr;
  }
  emit(out);
  return 0;
}

int cmd_hk(const RunConfig& cfg, int q, int k, bool with_code) {
  const HkGraph hk = build_hk(q, k);
  if (cfg.format == "table") {
    std::cout << serialize_digraph(hk.graph);
    return 0;
  }
  Json out;
  out["config"] = config_json(cfg);
  out["q"] = q;
  out["k"] = k;
  out["graph"] = digraph_to_json(hk.graph);
  out["text"] = serialize_digraph(hk.graph);
  if (with_code) out["code"] = linear_code_to_json(explicit_code_hk(q, k));
  emit(out);
  return 0;
}

int cmd_hom(const RunConfig& cfg, const std::string& g_path, const std::string& h_path,
            bool on_complements) {
  const Digraph g = load_digraph(g_path);
  const Digraph h = load_digraph(h_path);
  const std::optional<VertexMap> w =
      on_complements ? precedes(g, h, cfg.budget) : find_homomorphism(g, h, cfg.budget);
  if (cfg.format == "table") {
    if (!w) {
      std::cout << "none\n";
    } else {
      for (std::size_t i = 0; i < w->map.size(); ++i)
        std::cout << (i ? " " : "") << w->map[i];
      std::cout << "\n";
    }
    return 0;
  }
  Json out;
  out["config"] = config_json(cfg);
  out["complement"] = on_complements;
  out["verdict"] = w ? "found" : "none";
  out["witness"] = w ? vertex_map_to_json(*w) : Json(nullptr);
  emit(out);
  return 0;
}

int cmd_verify_code(const RunConfig& cfg, const std::string& graph_path, const std::string& code_path) {
  const Digraph g = load_digraph(graph_path);
  LinearCode code = linear_code_from_json(load_json(code_path));
  const auto decoders = is_valid_linear_code(g, code.encoder());
  if (cfg.format == "table") {
    std::cout << (decoders ? "valid" : "invalid") << "\n";
    if (decoders)
      for (const Decoder& d : *decoders) std::cout << decoder_line(d) << "\n";
    return 0;
  }
  Json out;
  out["config"] = config_json(cfg);
  out["valid"] = decoders.has_value();
  if (decoders) {
    code.decoders = decoders;
    out["code"] = linear_code_to_json(code);
  }
  emit(out);
  return 0;
}

int cmd_translate(const RunConfig& cfg, const std::string& g_path, const std::string& h_path,
                  const std::string& map_path, const std::string& code_path) {
  const Digraph g = load_digraph(g_path);
  const Digraph h = load_digraph(h_path);
  const VertexMap phi = vertex_map_from_json(load_json(map_path), g.order(), h.order());
  const LinearCode code_h = linear_code_from_json(load_json(code_path));
  const LinearCode code_g = translate_linear(g, h, phi, code_h);
  if (cfg.format == "table") {
    std::cout << "length " << code_g.length() << " code for " << g_path << "\n";
    return 0;
  }
  Json out;
  out["config"] = config_json(cfg);
  out["code"] = linear_code_to_json(code_g);
  emit(out);
  return 0;
}

int cmd_extract_hom(const RunConfig& cfg, const std::string& graph_path, const std::string& code_path) {
  const Digraph g = load_digraph(graph_path);
  const LinearCode code = linear_code_from_json(load_json(code_path));
  const VertexMap phi = extract_homomorphism(g, code);
  const HkGraph hk = build_hk(code.field().order(), code.length());
  const bool certified = verify_homomorphism(complement(g), complement(hk.graph), phi);
  if (cfg.format == "table") {
    for (std::size_t i = 0; i < phi.map.size(); ++i) std::cout << (i ? " " : "") << phi.map[i];
    std::cout << "\n" << (certified ? "certified" : "NOT certified") << "\n";
    return 0;
  }
  Json out;
  out["config"] = config_json(cfg);
  out["q"] = code.field().order();
  out["k"] = code.length();
  out["map"] = vertex_map_to_json(phi);
  out["certified"] = certified;
  emit(out);
  return 0;
}

int cmd_classify(const RunConfig& cfg, int m, int k) {
  const HkGraph hk = build_hk(2, k);
  DigraphEnumerator en(m);
  std::uint64_t total = 0, consistent = 0;
  Json counterexamples = Json::array();
  while (auto g = en.next()) {
    ++total;
    const bool code_ok = lind(*g, 2, k, cfg.budget).has_value();
    const bool hom_ok = precedes(*g, hk.graph, cfg.budget).has_value();
    if (code_ok == hom_ok) {
      ++consistent;
    } else if (counterexamples.size() < 16) {
      Json c;
      c["graph"] = digraph_to_json(*g);
      c["code_within_k"] = code_ok;
      c["hom_witness"] = hom_ok;
      counterexamples.push_back(std::move(c));
    }
  }
  const bool ok = consistent == total;
  if (cfg.format == "table") {
    std::cout << consistent << "/" << total << " graphs consistent\n";
  } else {
    Json out;
    out["config"] = config_json(cfg);
    out["m"] = m;
    out["k"] = k;
    out["graphs"] = total;
    out["consistent"] = consistent;
    out["counterexamples"] = std::move(counterexamples);
    out["verdict"] = ok ? "consistent" : "counterexample";
    emit(out);
  }
  if (!ok)
    return emit_error("property-violation",
                      "classification mismatch on " + std::to_string(total - consistent) + " graph(s)", 4);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scalar linear index coding toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--budget", cfg.budget, "search node budget")
      ->envname("IDXCODE_BUDGET")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed echoed into reports");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));

  auto* bounds_cmd = app.add_subcommand("bounds", "bound report for a graph");
  std::string bounds_graph;
  std::vector<int> bounds_qs{2};
  bool bounds_exact = false;
  bounds_cmd->add_option("graph", bounds_graph, "graph file (edge list or JSON)")->required();
  bounds_cmd->add_option("--q", bounds_qs, "field orders")->delimiter(',');
  bounds_cmd->add_flag("--exact", bounds_exact, "also run the exact search");

  auto* lind_cmd = app.add_subcommand("lind", "exact index with witness code");
  std::string lind_graph;
  int lind_q = 2, lind_kmax = 0;
  lind_cmd->add_option("graph", lind_graph, "graph file")->required();
  lind_cmd->add_option("--q", lind_q, "field order")->required();
  lind_cmd->add_option("--kmax", lind_kmax, "largest length to try (default: graph order)");

  auto* hk_cmd = app.add_subcommand("hk", "universal graph for (q, k)");
  int hk_q = 2, hk_k = 1;
  bool hk_code = false;
  hk_cmd->add_option("--q", hk_q, "field order")->required();
  hk_cmd->add_option("--k", hk_k, "code length")->required();
  hk_cmd->add_flag("--code", hk_code, "include the explicit code");

  auto* hom_cmd = app.add_subcommand("hom", "complete homomorphism search");
  std::string hom_g, hom_h;
  bool hom_complement = false;
  hom_cmd->add_option("G", hom_g, "source graph file")->required();
  hom_cmd->add_option("H", hom_h, "target graph file")->required();
  hom_cmd->add_flag("--complement", hom_complement, "search between the complements");

  auto* verify_cmd = app.add_subcommand("verify-code", "check a code against a graph");
  std::string verify_graph, verify_code_path;
  verify_cmd->add_option("graph", verify_graph, "graph file")->required();
  verify_cmd->add_option("code", verify_code_path, "code JSON file")->required();

  auto* translate_cmd = app.add_subcommand("translate", "pull a code back along a witness map");
  std::string tr_g, tr_h, tr_map, tr_code;
  translate_cmd->add_option("G", tr_g, "source graph file")->required();
  translate_cmd->add_option("H", tr_h, "target graph file")->required();
  translate_cmd->add_option("map", tr_map, "vertex map JSON file")->required();
  translate_cmd->add_option("codeH", tr_code, "code JSON file for H")->required();

  auto* extract_cmd = app.add_subcommand("extract-hom", "read a witness map out of a valid code");
  std::string ex_graph, ex_code;
  extract_cmd->add_option("graph", ex_graph, "graph file")->required();
  extract_cmd->add_option("code", ex_code, "code JSON file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "solvability vs embeddability sweep");
  int cl_m = 3, cl_k = 1;
  classify_cmd->add_option("--m", cl_m, "graph order to sweep")->required()->check(CLI::Range(1, 5));
  classify_cmd->add_option("--k", cl_k, "code length to test")->required()->check(CLI::Range(1, 7));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what(), 3);
  }

  if (*bounds_cmd)
    return run_guarded([&] { return cmd_bounds(cfg, bounds_graph, bounds_qs, bounds_exact); });
  if (*lind_cmd) return run_guarded([&] { return cmd_lind(cfg, lind_graph, lind_q, lind_kmax); });
  if (*hk_cmd) return run_guarded([&] { return cmd_hk(cfg, hk_q, hk_k, hk_code); });
  if (*hom_cmd) return run_guarded([&] { return cmd_hom(cfg, hom_g, hom_h, hom_complement); });
  if (*verify_cmd)
    return run_guarded([&] { return cmd_verify_code(cfg, verify_graph, verify_code_path); });
  if (*translate_cmd)
    return run_guarded([&] { return cmd_translate(cfg, tr_g, tr_h, tr_map, tr_code); });
  if (*extract_cmd) return run_guarded([&] { return cmd_extract_hom(cfg, ex_graph, ex_code); });
  if (*classify_cmd) return run_guarded([&] { return cmd_classify(cfg, cl_m, cl_k); });
  return emit_error("usage", "no subcommand selected", 3);
}
