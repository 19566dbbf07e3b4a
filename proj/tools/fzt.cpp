// fzt: command-line front end. See `fzt --help` and README.md.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fzt/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fzt::cli::UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fzt::cli::UsageError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy ALC with typicality: model checking, bounded entailment, KLM postulates, MLP bridge"};
  app.require_subcommand(1);

  fzt::cli::Options opt;
  std::string logic_name, format_name = "human";
  std::size_t max_domain = 0;
  std::int64_t denominator = 0;

  const std::map<std::string, fzt::Logic> logics = {{"zadeh", fzt::Logic::zadeh},
                                                    {"godel", fzt::Logic::godel},
                                                    {"lukasiewicz", fzt::Logic::lukasiewicz},
                                                    {"product", fzt::Logic::product}};

  auto common = [&](CLI::App* sub, bool search) {
    sub->add_option("--logic", logic_name, "zadeh | godel | lukasiewicz | product")
        ->check(CLI::IsMember({"zadeh", "godel", "lukasiewicz", "product"}));
    sub->add_option("--format", format_name, "human | records")->check(CLI::IsMember({"human", "records"}));
    if (!search) return;
    sub->add_option("--max-domain", max_domain, "largest domain size")->check(CLI::PositiveNumber);
    sub->add_option("--denominator", denominator, "grid denominator q")->check(CLI::PositiveNumber);
    sub->add_option("--budget", opt.budget, "interpretations examined at most")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "seed (0: identity grid order)");
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  std::string kb_path, fint_path, goal, net_path, stimuli_path, out_dir, postulate;

  auto* parse = app.add_subcommand("parse", "syntax and validation check of a .fkb file");
  parse->add_option("kb", kb_path, ".fkb file")->required();
  parse->add_option("--interpretation", fint_path, ".fint file to check against the KB signature");
  common(parse, false);

  auto* check = app.add_subcommand("check-model", "strict part, weights, faithfulness, coherence, fm-modelhood");
  check->add_option("kb", kb_path, ".fkb file")->required();
  check->add_option("interpretation", fint_path, ".fint file")->required();
  common(check, false);

  auto* entail = app.add_subcommand("entail", "bounded countermodel search for an axiom");
  entail->add_option("kb", kb_path, ".fkb file")->required();
  entail->add_option("axiom", goal, "goal axiom in .fkb syntax")->required();
  entail->add_option("--mode", opt.mode, "plain | fm")->check(CLI::IsMember({"plain", "fm"}));
  common(entail, true);

  auto* klm = app.add_subcommand("klm-test", "check a KLM postulate");
  klm->add_option("--postulate", postulate, "REFL1 ... CM1, REFL0 ... CM0, CMSTAR")->required();
  klm->add_option("--mode", opt.mode, "verify | find-counterexample")
      ->check(CLI::IsMember({"verify", "find-counterexample"}));
  klm->add_option("--trials", opt.trials, "random trials");
  klm->add_option("--depth", opt.depth, "concept depth bound")->check(CLI::NonNegativeNumber);
  common(klm, true);

  auto* mlp = app.add_subcommand("mlp", "translate a network and check faithfulness over stimuli");
  mlp->add_option("net", net_path, ".fnet file")->required();
  mlp->add_option("stimuli", stimuli_path, "stimuli file")->required();
  mlp->add_option("--out", out_dir, "directory for network.fkb, network.fint and report.txt");
  common(mlp, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : fzt::cli::kUsage;
  }

  if (!logic_name.empty()) opt.logic = logics.at(logic_name);
  if (max_domain) opt.max_domain = max_domain;
  if (denominator) opt.denominator = denominator;
  opt.format = format_name == "records" ? fzt::cli::Format::records : fzt::cli::Format::human;

  try {
    if (*parse) {
      std::optional<std::string> fint;
      if (!fint_path.empty()) fint = read_file(fint_path);
      return fzt::cli::cmd_parse(read_file(kb_path), fint, opt, std::cout, std::cerr);
    }
    if (*check) return fzt::cli::cmd_check_model(read_file(kb_path), read_file(fint_path), opt, std::cout, std::cerr);
    if (*entail) return fzt::cli::cmd_entail(read_file(kb_path), goal, opt, std::cout, std::cerr);
    if (*klm) return fzt::cli::cmd_klm(postulate, opt, std::cout, std::cerr);
    if (*mlp) {
      fzt::cli::MlpArtifacts art;
      int rc = fzt::cli::cmd_mlp(read_file(net_path), read_file(stimuli_path), opt, std::cout, std::cerr, &art);
      if (rc != fzt::cli::kUsage && !out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "network.fkb", art.kb);
        write_file(std::filesystem::path(out_dir) / "network.fint", art.interpretation);
        write_file(std::filesystem::path(out_dir) / "report.txt", art.report);
      }
      return rc;
    }
  } catch (const fzt::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fzt::cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fzt::cli::kUsage;
  }
  return fzt::cli::kUsage;
}
