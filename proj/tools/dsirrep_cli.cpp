#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dsirrep/cli.hpp"

using namespace dsirrep;

int main(int argc, char **argv) {
  CLI::App app{"Finite representations of the de Sitter and anti-de Sitter algebras"};
  app.require_subcommand(1);

  cli::Options opt;
  std::string algebra = "ds", format = "pretty";
  const std::map<std::string, cli::Format> formats{{"json", cli::Format::Json}, {"pretty", cli::Format::Pretty}};
  auto common = [&](CLI::App *sub) {
    sub->add_option("--tolerance", opt.tolerance, "Residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out_path, "Output file");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "pretty"}));
  };

  std::string family;
  int n = 0;
  auto *gen = app.add_subcommand("generate", "Write the canonical irrep of family a or b with N blocks");
  gen->add_option("family", family, "a (slope +1) or b (slope -1)")->required()->check(CLI::IsMember({"a", "b"}));
  gen->add_option("N", n, "Number of blocks")->required();
  gen->add_option("--algebra", algebra, "ds or ads")->check(CLI::IsMember({"ds", "ads"}));
  common(gen);

  std::string input;
  auto *ver = app.add_subcommand("verify", "Check relations, Hermiticity and Casimirs of a representation document");
  ver->add_option("input", input, "Representation document")->required();
  common(ver);

  auto *tab = app.add_subcommand("tables", "Print the computed backbone, t and Casimir tables");
  common(tab);

  auto *val = app.add_subcommand("validate", "Decide whether a backbone document carries a representation");
  val->add_option("input", input, "Backbone document")->required();
  common(val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitUsage;
  }
  opt.algebra = algebra == "ads" ? Algebra::AdS : Algebra::dS;
  opt.format = formats.at(format);

  try {
    if (*gen) return cli::cmd_generate(family, n, opt, std::cout, std::cerr);
    if (*ver) return cli::cmd_verify(input, opt, std::cout, std::cerr);
    if (*tab) return cli::cmd_tables(opt, std::cout);
    return cli::cmd_validate(input, opt, std::cout, std::cerr);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
}
