// endatlas: classification tables, equivalence queries and verification
// suites for endoscopic data of quasi-split groups in a finite Galois model.
//
// Exit codes: 0 success or equivalent, 1 inequivalent or falsified,
// 2 input error, 3 cap exceeded, 4 internal error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "endatlas/endatlas.hpp"

namespace {

using namespace endatlas;

struct RunConfig {
  std::string type;
  std::string galois = "trivial";
  std::string format = "json";
  std::string out;
  int max_order = 0;
  std::size_t cap = 0;  // 0: defaults
  std::string suite;
  std::string places;
  std::vector<std::string> files;
};

void emit(const RunConfig& cfg, const Json& report, const std::string& title) {
  std::string text = cfg.format == "md" ? render_markdown(report, title) : report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write output file \"" + cfg.out + "\"");
  f << text;
}

std::vector<std::size_t> parse_places(const std::string& text, std::size_t count) {
  std::vector<std::size_t> out;
  if (text == "all") {
    for (std::size_t k = 0; k < count; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("--places expects \"all\" or comma-separated place indices, got \"" + text + "\"");
    std::size_t k = std::stoul(item);
    if (k >= count) throw InputError("place index " + item + " out of range (" + std::to_string(count) + " places)");
    out.push_back(k);
  }
  return out;
}

int cmd_classify(const RunConfig& cfg) {
  SettingPtr st = make_setting(cfg.type, cfg.galois);
  ClassificationReport rep = classify_elliptic(st);
  emit(cfg, classification_json(st, rep), "Elliptic data of " + rep.type + " / " + rep.galois);
  return 0;
}

int cmd_equiv(const RunConfig& cfg) {
  EndoscopicDatum d1 = read_datum_file(cfg.files.at(0));
  EndoscopicDatum d2 = read_datum_file(cfg.files.at(1));
  EquivalenceOptions opt;
  if (cfg.cap) opt.orbit_cap = cfg.cap;
  auto w = equivalent(d1, d2, opt);
  if (w) {
    emit(cfg, witness_json(d1, *w), "Equivalence");
    return 0;
  }
  emit(cfg, Json{{"equivalent", false}, {"verdict", "inequivalent"}}, "Equivalence");
  std::cerr << "inequivalent\n";
  return 1;
}

int cmd_verify(const RunConfig& cfg) {
  SuiteResult res;
  SuiteCaps caps;
  if (cfg.cap) caps.group_cap = caps.orbit_cap = cfg.cap;
  try {
    if (cfg.suite == "bijection") {
      res = run_bijection_suite(make_setting(cfg.type, cfg.galois), cfg.max_order, caps);
    } else if (cfg.suite == "local-global") {
      SettingPtr st = make_setting(cfg.type, cfg.galois);
      std::optional<std::vector<std::size_t>> subset;
      if (!cfg.places.empty()) subset = parse_places(cfg.places, places(*st->galois).size());
      res = run_local_global_suite(st, cfg.max_order > 0 ? cfg.max_order : 4, subset);
    } else if (cfg.suite == "reduction") {
      res = run_reduction_suite(make_setting(cfg.type, cfg.galois));
    } else if (cfg.suite == "shapiro") {
      res = run_shapiro_suite(make_root_system(cfg.type), cfg.max_order > 0 ? cfg.max_order : 4);
    } else {
      throw InputError("unknown suite \"" + cfg.suite + "\" (expected bijection, local-global, reduction or shapiro)");
    }
  } catch (const CapExceeded& e) {
    emit(cfg, Json{{"suite", cfg.suite}, {"type", cfg.type}, {"galois", cfg.galois}, {"complete", false}, {"error", e.what()}},
         "Verification " + cfg.suite);
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  }
  res.report["complete"] = true;
  emit(cfg, res.report, "Verification " + cfg.suite);
  return res.falsifiers == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Endoscopic data of quasi-split groups: classification and verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "md"}));
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
  };

  CLI::App* classify = app.add_subcommand("classify", "Table of elliptic data up to equivalence");
  classify->add_option("--type", cfg.type, "Cartan type, e.g. A2 or C3")->required();
  classify->add_option("--galois", cfg.galois, "Galois preset or table:PATH");
  add_output(classify);

  CLI::App* equiv = app.add_subcommand("equiv", "Decide whether two data are equivalent");
  equiv->add_option("files", cfg.files, "Two datum JSON files")->required()->expected(2);
  equiv->add_option("--cap-orbit", cfg.cap, "Cap on W-orbit sizes");
  add_output(equiv);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", cfg.suite, "bijection, local-global, reduction or shapiro")
      ->required()
      ->check(CLI::IsMember({"bijection", "local-global", "reduction", "shapiro"}));
  verify->add_option("--type", cfg.type, "Cartan type (base type for shapiro)")->required();
  verify->add_option("--galois", cfg.galois, "Galois preset or table:PATH");
  verify->add_option("--max-order", cfg.max_order, "Order bound on s")->check(CLI::PositiveNumber);
  verify->add_option("--cap-orbit", cfg.cap, "Cap on group and orbit enumeration");
  verify->add_option("--places", cfg.places, "Place family for the counterexample search: all or i,j,...");
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) return cmd_classify(cfg);
    if (*equiv) return cmd_equiv(cfg);
    return cmd_verify(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
