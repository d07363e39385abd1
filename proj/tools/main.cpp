// plogic: command-line workbench for probabilistic belief logic over
// introspective (Harsanyi) type spaces.
//
// Exit codes: 0 success; 1 semantic "no" (unsat / invalid); 2 usage or
// input error; 3 enumeration budget exceeded.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "plogic/algebra.hpp"
#include "plogic/bisequence.hpp"
#include "plogic/canon.hpp"
#include "plogic/errors.hpp"
#include "plogic/model.hpp"
#include "plogic/rewrite.hpp"

using namespace plogic;
using nlohmann::json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

Logic parse_logic(const std::string& name) {
  if (name == "sigma-h") return Logic::SigmaH;
  if (name == "sigma-plus") return Logic::SigmaPlus;
  throw std::invalid_argument("unknown logic '" + name + "' (sigma-h | sigma-plus)");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw ModelError("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

std::vector<int> letter_range(int w) {
  std::vector<int> letters;
  for (int i = 1; i <= w; ++i) letters.push_back(i);
  return letters;
}

int run_parse(const std::string& text, bool as_json) {
  Formula f = parse(text);
  if (as_json) {
    json j;
    j["formula"] = render(f);
    j["depth"] = depth(f);
    j["accuracy"] = accuracy(f).str();
    json ls = json::array(), as = json::array();
    for (int id : letters(f)) ls.push_back("p" + std::to_string(id));
    for (int a : agents(f)) as.push_back(a);
    j["letters"] = std::move(ls);
    j["agents"] = std::move(as);
    j["normal"] = is_normal(f);
    emit(j, "");
  } else {
    std::cout << render(f) << "\n";
    std::cout << "depth " << depth(f) << ", accuracy " << accuracy(f)
              << (is_normal(f) ? ", normal" : "") << "\n";
  }
  return kExitYes;
}

int run_sat(const std::string& text, const std::string& logic_name, bool as_json) {
  Formula f = parse(text);
  SatResult result = sat(f, parse_logic(logic_name));
  if (as_json) {
    json j;
    j["formula"] = render(f);
    j["logic"] = logic_name;
    j["satisfiable"] = result.satisfiable;
    if (result.satisfiable) {
      j["witness"] = {{"state", result.state}, {"label", result.witness_label}};
    }
    emit(j, "");
  } else if (result.satisfiable) {
    std::cout << "sat\nwitness state " << result.state << ": "
              << result.witness_label << "\n";
  } else {
    std::cout << "unsat\n";
  }
  return result.satisfiable ? kExitYes : kExitNo;
}

int run_valid(const std::string& text, const std::string& logic_name, bool as_json) {
  Formula f = parse(text);
  ValidityResult result = valid(f, parse_logic(logic_name));
  if (as_json) {
    json j;
    j["formula"] = render(f);
    j["logic"] = logic_name;
    j["valid"] = result.is_valid;
    if (!result.is_valid)
      j["counterexample"] = {{"state", result.counterexample.state},
                             {"label", result.counterexample.witness_label}};
    emit(j, "");
  } else if (result.is_valid) {
    std::cout << "valid\n";
  } else {
    std::cout << "invalid\ncounterexample state " << result.counterexample.state
              << ": " << result.counterexample.witness_label << "\n";
  }
  return result.is_valid ? kExitYes : kExitNo;
}

int run_denest(const std::string& text, bool as_json) {
  Formula f = parse(text);
  Formula g = denest(f);
  if (as_json) {
    json j;
    j["input"] = render(f);
    j["output"] = render(g);
    j["depth"] = depth(g);
    emit(j, "");
  } else {
    std::cout << render(g) << "\n";
  }
  return kExitYes;
}

int run_atoms(int q, int w, bool as_json) {
  auto model = build_canonical_model(q, letter_range(w));
  if (as_json) {
    emit(atoms_to_json(*model), "");
  } else {
    for (int i = 0; i < (int)model->atoms.size(); ++i)
      std::cout << i << ": " << model->atom_label(i) << "\n";
  }
  return kExitYes;
}

int run_canonical(int q, int w, const std::string& out, const std::string& atoms_out) {
  auto model = build_canonical_model(q, letter_range(w));
  emit(space_to_json(model->space), out);
  if (!atoms_out.empty()) emit(atoms_to_json(*model), atoms_out);
  return kExitYes;
}

int run_cardinality(int q, int d, int w, bool as_json) {
  long count = cardinality(q, d, w);
  if (as_json)
    emit(json{{"q", q}, {"d", d}, {"w", w}, {"cardinality", count}}, "");
  else
    std::cout << count << "\n";
  return kExitYes;
}

int run_bisim(int horizon, const std::string& r_text, int list_length, bool count,
              bool coordinate_lemma, bool check_harsanyi, int threads, bool as_json) {
  Rat r = rat_from_string(r_text);
  if (!is_probability(r)) throw std::invalid_argument("r must lie in [0,1]");
  auto space = build_space(horizon);
  json j;
  j["horizon"] = horizon;
  j["r"] = rat_fraction_string(r);
  bool all_ok = true;

  if (count) {
    if (list_length <= 0) throw std::invalid_argument("--count needs --list-length");
    uint64_t n = count_consistent_jlists(space, list_length, r, threads);
    j["lists"] = {{"m", list_length}, {"consistent", n}};
    if (!as_json) std::cout << n << "\n";
  }
  if (coordinate_lemma) {
    auto report = verify_coordinate_lemma(space, r);
    j["coordinate_lemma"] = {{"passed", report.all_passed()},
                             {"failures", report.failures}};
    all_ok = all_ok && report.all_passed();
    if (!as_json)
      std::cout << "coordinate lemma: "
                << (report.all_passed() ? "pass" : "fail") << "\n";
  }
  if (check_harsanyi) {
    auto m = export_type_space(space);
    bool ok = is_harsanyi(m, 0) && is_harsanyi(m, 1);
    j["harsanyi"] = ok;
    all_ok = all_ok && ok;
    if (!as_json) std::cout << "harsanyi: " << (ok ? "yes" : "no") << "\n";
  }
  if (as_json) emit(j, "");
  return all_ok ? kExitYes : kExitNo;
}

int run_algebra(bool use_counterexample, const std::string& model_path, int agent,
                int grid, bool check_laws, bool do_search, bool do_closure,
                bool do_reducibility, int threads, bool as_json) {
  ModalAlgebra a;
  if (use_counterexample) {
    a = counterexample_algebra();
  } else if (!model_path.empty()) {
    auto j = load_json_file(model_path);
    if (j.contains("atoms") && j.contains("belief")) {
      a = algebra_from_json(j);
    } else if (j.contains("partitions")) {
      a = make_powerset_algebra(kb_from_json(j), agent - 1, grid);
    } else {
      a = make_powerset_algebra(space_from_json(j), agent - 1, grid);
    }
  } else {
    throw std::invalid_argument("need --counterexample or --model FILE");
  }

  json j = algebra_to_json(a);
  bool all_ok = true;
  if (check_laws) {
    auto report = check_sigma_h_laws(a, grid);
    json violations = json::array();
    for (const auto& v : report.violations)
      violations.push_back(v.law + ": " + v.detail);
    j["laws"] = {{"passed", report.all_passed()}, {"violations", violations}};
    all_ok = all_ok && report.all_passed();
    if (!as_json)
      std::cout << "laws: " << (report.all_passed() ? "pass" : "fail") << "\n";
  }
  if (do_search || do_reducibility) {
    auto ks = search_knowledge_ops(a, threads);
    json ops = json::array();
    for (const auto& k : ks) {
      json table = json::array();
      for (AlgElem e : k) table.push_back((int)e);
      ops.push_back(std::move(table));
    }
    j["knowledge_ops"] = std::move(ops);
    if (!as_json) std::cout << "knowledge operators: " << ks.size() << "\n";
    if (do_reducibility) {
      auto closure = operator_closure(a, false);
      json inside = json::array();
      for (const auto& k : ks) inside.push_back(closure.count(k) > 0);
      j["closure_size"] = closure.size();
      j["knowledge_in_closure"] = std::move(inside);
      if (!as_json)
        for (size_t i = 0; i < ks.size(); ++i)
          std::cout << "operator " << i << " in belief closure: "
                    << (operator_closure(a, false).count(ks[i]) ? "yes" : "no")
                    << "\n";
    }
  }
  if (do_closure) {
    auto closure = operator_closure(a, a.knowledge.has_value());
    j["closure_size"] = closure.size();
    if (!as_json) std::cout << "closure size: " << closure.size() << "\n";
  }
  if (as_json) emit(j, "");
  return all_ok ? kExitYes : kExitNo;
}

int run_check_model(const std::string& path, int grid, bool laws, bool as_json) {
  auto j_in = load_json_file(path);
  json j;
  bool all_ok = true;
  bool has_partitions = j_in.contains("partitions");
  FiniteTypeSpace m;
  KnowledgeBeliefSpace kb;
  if (has_partitions) {
    kb = kb_from_json(j_in);
    m = kb.base;
    auto report = validate_kb_space(kb);
    json checks = json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"condition", c.condition},
                        {"passed", c.passed},
                        {"witness", c.witness}});
      all_ok = all_ok && c.passed;
    }
    j["kb_checks"] = std::move(checks);
  } else {
    m = space_from_json(j_in);
  }
  json harsanyi = json::array();
  for (int a = 0; a < m.num_agents(); ++a) harsanyi.push_back(is_harsanyi(m, a));
  j["harsanyi"] = harsanyi;
  if (laws) {
    json agent_reports = json::array();
    for (int a = 0; a < m.num_agents(); ++a) {
      auto report = has_partitions ? check_operator_laws(kb, a, grid)
                                   : check_operator_laws(m, a, grid);
      json violations = json::array();
      for (const auto& v : report.violations)
        violations.push_back(v.law + ": " + v.detail);
      agent_reports.push_back({{"agent", a + 1},
                               {"passed", report.all_passed()},
                               {"violations", violations}});
    }
    j["laws"] = std::move(agent_reports);
  }
  if (as_json)
    emit(j, "");
  else
    std::cout << j.dump(2) << "\n";
  return all_ok ? kExitYes : kExitNo;
}

int run_kb_extend(const std::string& path, const std::string& out) {
  auto m = space_from_json(load_json_file(path));
  auto kb = extend_to_kb(m);
  emit(kb_to_json(kb), out);
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for probabilistic belief logic over introspective type spaces"};
  app.require_subcommand(1);

  std::string formula_text, logic_name = "sigma-h", model_path, out_path, atoms_out;
  std::string r_text = "1/1";
  bool as_json = false;
  int q = 1, d = 1, w = 1, horizon = 4, list_length = 0, agent = 1, grid = 2;
  int threads = 1;
  bool count = false, coordinate_lemma = false, check_harsanyi = false;
  bool use_counterexample = false, check_laws = false, do_search = false;
  bool do_closure = false, do_reducibility = false, laws = false;

  auto* cmd_parse = app.add_subcommand("parse", "parse and reprint a formula");
  cmd_parse->add_option("formula", formula_text)->required();
  cmd_parse->add_flag("--json", as_json);

  auto* cmd_sat = app.add_subcommand("sat", "decide satisfiability");
  cmd_sat->add_option("formula", formula_text)->required();
  cmd_sat->add_option("--logic", logic_name, "sigma-h | sigma-plus");
  cmd_sat->add_flag("--json", as_json);

  auto* cmd_valid = app.add_subcommand("valid", "decide validity");
  cmd_valid->add_option("formula", formula_text)->required();
  cmd_valid->add_option("--logic", logic_name, "sigma-h | sigma-plus");
  cmd_valid->add_flag("--json", as_json);

  auto* cmd_denest = app.add_subcommand("denest", "rewrite a normal formula to depth <= 1");
  cmd_denest->add_option("formula", formula_text)->required();
  cmd_denest->add_flag("--json", as_json);

  auto* cmd_atoms = app.add_subcommand("atoms", "list the atoms of L(q,1,w)");
  cmd_atoms->add_option("--q", q, "accuracy")->required();
  cmd_atoms->add_option("--letters,--w", w, "letter count (default 1)");
  cmd_atoms->add_flag("--json", as_json);

  auto* cmd_canonical = app.add_subcommand("canonical", "export the canonical model");
  cmd_canonical->add_option("--q", q, "accuracy")->required();
  cmd_canonical->add_option("--letters,--w", w, "letter count (default 1)");
  cmd_canonical->add_option("--out", out_path, "model JSON path (default stdout)");
  cmd_canonical->add_option("--atoms-out", atoms_out, "atom index JSON path");

  auto* cmd_card = app.add_subcommand("cardinality", "count the atoms of L(q,d,w)");
  cmd_card->add_option("--q", q)->required();
  cmd_card->add_option("--d", d)->required();
  cmd_card->add_option("--w", w)->required();
  cmd_card->add_flag("--json", as_json);

  auto* cmd_bisim = app.add_subcommand("bisim", "finite-horizon bi-sequence experiments");
  cmd_bisim->add_option("--horizon", horizon)->required();
  cmd_bisim->add_option("--r", r_text, "threshold, e.g. 3/4");
  cmd_bisim->add_option("--list-length", list_length);
  cmd_bisim->add_flag("--count", count, "count consistent lists");
  cmd_bisim->add_flag("--coordinate-lemma", coordinate_lemma);
  cmd_bisim->add_flag("--check-harsanyi", check_harsanyi);
  cmd_bisim->add_option("--threads", threads);
  cmd_bisim->add_flag("--json", as_json);

  auto* cmd_algebra = app.add_subcommand("algebra", "modal-algebra checks");
  cmd_algebra->add_flag("--counterexample", use_counterexample);
  cmd_algebra->add_option("--model", model_path, "model or algebra JSON");
  cmd_algebra->add_option("--agent", agent);
  cmd_algebra->add_option("--grid", grid);
  cmd_algebra->add_flag("--check-laws", check_laws);
  cmd_algebra->add_flag("--search-k", do_search);
  cmd_algebra->add_flag("--closure", do_closure);
  cmd_algebra->add_flag("--reducibility", do_reducibility);
  cmd_algebra->add_option("--threads", threads);
  cmd_algebra->add_flag("--json", as_json);

  auto* cmd_check = app.add_subcommand("check-model", "validate a model file");
  cmd_check->add_option("file", model_path)->required();
  cmd_check->add_option("--grid", grid);
  cmd_check->add_flag("--laws", laws);
  cmd_check->add_flag("--json", as_json);

  auto* cmd_kb = app.add_subcommand("kb-extend", "extend a Harsanyi model by partitions");
  cmd_kb->add_option("file", model_path)->required();
  cmd_kb->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_parse->parsed()) return run_parse(formula_text, as_json);
    if (cmd_sat->parsed()) return run_sat(formula_text, logic_name, as_json);
    if (cmd_valid->parsed()) return run_valid(formula_text, logic_name, as_json);
    if (cmd_denest->parsed()) return run_denest(formula_text, as_json);
    if (cmd_atoms->parsed()) return run_atoms(q, w, as_json);
    if (cmd_canonical->parsed()) return run_canonical(q, w, out_path, atoms_out);
    if (cmd_card->parsed()) return run_cardinality(q, d, w, as_json);
    if (cmd_bisim->parsed())
      return run_bisim(horizon, r_text, list_length, count, coordinate_lemma,
                       check_harsanyi, threads, as_json);
    if (cmd_algebra->parsed())
      return run_algebra(use_counterexample, model_path, agent, grid, check_laws,
                         do_search, do_closure, do_reducibility, threads, as_json);
    if (cmd_check->parsed()) return run_check_model(model_path, grid, laws, as_json);
    if (cmd_kb->parsed()) return run_kb_extend(model_path, out_path);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
