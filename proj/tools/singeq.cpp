#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "singeq/workspace.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Singular equivalences of Morita type with level for elementary algebras"};
  std::string input = "-";
  std::string json_path;
  std::optional<int> cutoff;
  std::optional<std::uint64_t> seed;
  std::string field;
  std::vector<std::string> tasks;
  bool parallel = false, timing = false, print = false;
  app.add_option("workspace", input, "workspace file, - for stdin");
  app.add_option("--json", json_path, "write the JSON report array here");
  app.add_option("--cutoff", cutoff, "cutoff for tasks that set none (default 50)");
  app.add_option("--seed", seed, "seed for tasks that set none (default 0)");
  app.add_option("--field", field, "override FIELD: 'rational', 'prime <p>' or '<p>'");
  app.add_option("--task", tasks, "run only this task (index or AS name); repeatable");
  app.add_flag("--parallel", parallel, "run independent tasks concurrently");
  app.add_flag("--timing", timing, "record wall-clock seconds per task");
  app.add_flag("--serialize", print, "print the workspace in normal form and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    std::string text;
    if (input == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(input);
      if (!in) {
        std::cerr << "error: cannot read " << input << "\n";
        return 3;
      }
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    std::optional<singeq::FieldSpec> override;
    if (!field.empty()) override = singeq::parse_field(field);
    auto ws = singeq::parse_workspace(text, override);
    if (print) {
      std::cout << singeq::serialize(ws);
      return 0;
    }

    singeq::RunOptions opt;
    opt.cutoff = cutoff;
    opt.seed = seed;
    opt.parallel = parallel;
    opt.timing = timing;
    std::vector<singeq::TaskReport> reports;
    if (tasks.empty())
      reports = singeq::run_all(ws, opt);
    else
      for (const auto& t : tasks) reports.push_back(singeq::run_task(ws, t, opt));

    for (const auto& r : reports) std::cout << r.text();
    if (!json_path.empty()) {
      std::ofstream out(json_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return 3;
      }
      out << singeq::reports_json(ws, reports);
    }
    return singeq::exit_code(reports);
  } catch (const singeq::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
