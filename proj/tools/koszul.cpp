// Command-line front end: parses a model file and dispatches one command.
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "koszul/report.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw koszul::kernel_error("cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact symbolic calculus for multigraded commutative algebras"};
  app.require_subcommand(1);

  std::string model_path;
  bool json = false;
  koszul::CommandFlags flags;

  const std::vector<std::string> commands = {
      "print",        "check-q",  "jacobi",     "psm-lift",       "hamiltonian",
      "bracket",      "master",   "berezin",    "measure-check",  "top-cohomology",
      "odd-lift",     "susy-expand", "cs-extend", "defect",       "gauge-var",
      "gauge-fix"};

  std::vector<CLI::App*> subs;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--model", model_path, "model file")->required();
    sub->add_flag("--json", json, "machine-readable report");
    sub->add_option("--der", flags.der, "derivation name");
    sub->add_option("--poly", flags.poly, "polynomial name");
    sub->add_option("--poly2", flags.poly2, "second polynomial name");
    sub->add_option("--form", flags.form, "symplectic form name");
    sub->add_option("--const", flags.table, "structure-constant table name");
    sub->add_option("--bivec", flags.bivec, "bivector name");
    sub->add_option("--gens", flags.gens, "comma-separated generator names");
    sub->add_option("--m", flags.m, "number of odd source directions");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string cmd;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) cmd = commands[i];

  try {
    const auto t0 = std::chrono::steady_clock::now();
    koszul::ModelFile model = koszul::parse_model(slurp(model_path));
    koszul::Report rep = koszul::run_command(cmd, model, flags);
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    std::cout << (json ? koszul::report_json(rep) : koszul::report_text(rep));
    return rep.exit_code();
  } catch (const koszul::parse_error& e) {
    std::cerr << "error: " << model_path << ":" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
