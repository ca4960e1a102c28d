// hre: rank alternatives from a decision-model document.
//
//   hre solve <file> [--format text|json]
//   hre validate <file>
//   hre inspect <file> --criterion <id> --index ci|koczkodaj
//
// Exit status: 0 success, 1 input error, 2 mathematical infeasibility.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hre/hre.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hre::Error(hre::ErrorKind::SchemaError, "cannot open file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_error(const hre::Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return e.is_infeasibility() ? kInfeasible : kInputError;
}

void print_warnings(const hre::DecisionModel& model) {
  for (const auto& w : hre::collect_warnings(model)) std::cerr << "warning: " << w.path << ": " << w.message << "\n";
}

int cmd_solve(const std::string& path, const std::string& format) {
  const auto model = hre::parse_model(read_file(path));
  print_warnings(model);
  const auto report = hre::aggregate(model);
  std::cout << hre::render_report(report, format == "json" ? hre::ReportFormat::Json : hre::ReportFormat::Text);
  return kOk;
}

void describe_matrix(const std::string& name, const hre::PCMatrix& c) {
  const auto violations = hre::reciprocity_violations(c);
  std::cout << name << ": order " << c.order() << ", reciprocal " << (violations.empty() ? "yes" : "no")
            << ", CI " << hre::io_detail::fixed4(hre::saaty_ci(c)) << ", Koczkodaj "
            << hre::io_detail::fixed4(hre::koczkodaj_index(c)) << "\n";
}

void describe_node(const hre::CriterionNode& node, const std::string& prefix) {
  const std::string name = prefix.empty() ? node.id : prefix + "." + node.id;
  if (node.matrix) describe_matrix("criterion " + name, *node.matrix);
  for (const auto& c : node.subcriteria) describe_node(c, name);
}

int cmd_validate(const std::string& path) {
  const auto model = hre::parse_model(read_file(path));
  print_warnings(model);
  for (const auto& node : model.criteria) describe_node(node, "");
  if (model.criteria_matrix) describe_matrix("criteria matrix", *model.criteria_matrix);
  std::cout << "valid: " << model.alternatives.size() << " alternatives, " << model.criteria.size() << " criteria\n";
  return kOk;
}

int cmd_inspect(const std::string& path, const std::string& criterion, const std::string& index) {
  const auto model = hre::parse_model(read_file(path));
  const auto* node = hre::find_criterion(model, criterion);
  if (!node) throw hre::Error(hre::ErrorKind::UnknownLabel, "no criterion with this id", criterion);
  if (!node->matrix)
    throw hre::Error(hre::ErrorKind::SchemaError, "criterion has sub-criteria and no comparison matrix", criterion);
  const double value = index == "ci" ? hre::saaty_ci(*node->matrix) : hre::koczkodaj_index(*node->matrix);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::cout << buf << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heuristic rating estimation and AHP-style ranking of alternatives"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  auto* solve = app.add_subcommand("solve", "rank the alternatives and print the report");
  solve->add_option("file", file, "model document")->required();
  solve->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* validate = app.add_subcommand("validate", "check a model and print matrix diagnostics");
  validate->add_option("file", file, "model document")->required();

  std::string criterion;
  std::string index;
  auto* inspect = app.add_subcommand("inspect", "print one inconsistency index of one criterion");
  inspect->add_option("file", file, "model document")->required();
  inspect->add_option("--criterion", criterion, "criterion id")->required();
  inspect->add_option("--index", index, "ci or koczkodaj")->required()->check(CLI::IsMember({"ci", "koczkodaj"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return cmd_solve(file, format);
    if (*validate) return cmd_validate(file);
    if (*inspect) return cmd_inspect(file, criterion, index);
  } catch (const hre::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
