#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dilatest/cli.hpp"
#include "dilatest/error.hpp"
#include "dilatest/parallel.hpp"

int main(int argc, char** argv) {
  namespace cli = dilatest::cli;
  CLI::App app{"dilatest: weighted Besov / Triebel-Lizorkin dilation experiments"};
  std::string command, config_path, out_path, format = "json";
  int threads = 1;
  app.add_option("command", command, "norm | ap | xclass | dilate | maximal | equiv")
      ->required()
      ->check(CLI::IsMember(cli::kCommands));
  app.add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "report file (stdout when omitted)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  dilatest::set_threads(threads);
  cli::RunConfig config;
  try {
    std::ifstream in(config_path);
    config = cli::parse_config(cli::Json::parse(in), command);
  } catch (const cli::Json::parse_error& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
    return 3;
  } catch (const dilatest::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  }

  const auto start = std::chrono::steady_clock::now();
  const cli::Report report = cli::run(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string text = format == "json" ? cli::emit_json(report.body) : cli::emit_csv(report.table);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 3;
    }
    out << text;
  }
  if (report.failed) std::cerr << "error: " << report.body["error"]["kind"].get<std::string>() << ": "
                               << report.body["error"]["message"].get<std::string>() << "\n";
  std::cerr << command << ": " << dilatest::to_string(report.verdict) << " in " << seconds << " s\n";
  return cli::exit_code(report);
}
