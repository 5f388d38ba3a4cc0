#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>

#include "skewlab/experiment.hpp"
#include "skewlab/parallel.hpp"
#include "skewlab/verify/acceptance.hpp"
#include "skewlab/verify/golden.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Transfer-operator experiments for random partially expanding skew products"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: SKEWLAB_THREADS or 1)")->check(CLI::NonNegativeNumber);

  auto* run = app.add_subcommand("run", "Run one experiment command from a JSON config");
  std::string command, config, out_dir;
  std::optional<std::uint64_t> seed;
  run->add_option("command", command, "Experiment command")
      ->required()
      ->check(CLI::IsMember(skewlab::command_names()));
  run->add_option("--config", config, "Config file (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed-override", seed, "Replace the noise seed");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run the acceptance battery");
  std::string suite = "fast", golden;
  bool no_create = false;
  std::vector<int> only;
  verify->add_option("suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--golden", golden, "Golden baseline directory");
  verify->add_flag("--no-create", no_create, "Fail on missing golden files instead of writing them");
  verify->add_option("--only", only, "Restrict to these criterion ids")->delimiter(',');
  verify->add_option("--threads", threads, "Worker threads")->check(CLI::NonNegativeNumber);

  app.add_subcommand("version", "Print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (threads > 0) skewlab::set_default_threads(threads);

  if (app.got_subcommand("version")) {
    std::cout << skewlab::library_version() << "\n";
    return 0;
  }

  if (app.got_subcommand("run")) {
    std::string message;
    const int code = skewlab::run_command(command, config, out_dir, seed, &message);
    if (code == 1) std::cerr << "config error: " << message << "\n";
    if (code == 2) std::cerr << "numerical failure: " << message << " (partial report written)\n";
    return code;
  }

  namespace sv = skewlab::verify;
  const auto results = sv::run_acceptance(suite == "full" ? sv::Suite::Full : sv::Suite::Fast,
                                          [](const sv::CriterionResult& r) { std::cout << sv::format_result(r) << std::endl; },
                                          only);
  bool ok = true;
  int passed = 0;
  for (const auto& r : results) {
    ok = ok && r.passed;
    passed += r.passed ? 1 : 0;
  }
  if (!golden.empty()) {
    const auto rep = sv::check_golden(golden, !no_create);
    for (const auto& line : rep.lines) std::cout << line << "\n";
    ok = ok && rep.passed;
  }
  std::cout << "SUMMARY " << passed << "/" << results.size() << " criteria passed" << std::endl;
  return ok ? 0 : 1;
}
