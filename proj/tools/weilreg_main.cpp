#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>

#include "weilreg/errors.hpp"
#include "weilreg/exactalg.hpp"
#include "weilreg/session.hpp"

namespace {

std::mutex log_mutex;

void log_line(const std::string& s) {
  std::lock_guard lock(log_mutex);
  std::cerr << "[weilreg] " << s << "\n";
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("WEILREG_MAX_STEPS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "weilreg: ignoring invalid WEILREG_MAX_STEPS='" << env << "'\n";
  }
  return weilreg::kDefaultMaxGroebnerSteps;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact regularization of rational group actions"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a session file and print its report");
  std::string session_file, format = "json", out_path;
  std::uint64_t max_steps = default_budget();
  bool parallel = false, verbose = false;
  run->add_option("session-file", session_file, "Session file")->required()->check(CLI::ExistingFile);
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--out", out_path, "Write the report to a file instead of stdout");
  run->add_option("--max-groebner-steps", max_steps, "Step budget per Groebner basis")
      ->check(CLI::PositiveNumber);
  run->add_flag("--parallel", parallel, "Run commands concurrently");
  run->add_flag("--verbose", verbose, "Log progress to stderr");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(session_file, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();

  namespace s = weilreg::session;
  s::SessionAST ast;
  try {
    ast = s::parse_session(buffer.str());
  } catch (const weilreg::Error& e) {
    std::cerr << session_file << ":" << e.what() << "\n";
    return 2;
  }
  s::RunOptions options;
  options.max_groebner_steps = max_steps;
  options.parallel = parallel;
  if (verbose) options.log = log_line;
  s::Report report = s::run_session(ast, options);
  std::string text = s::emit_report(report, format == "text" ? s::Format::Text : s::Format::Json);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "weilreg: cannot write " << out_path << "\n";
      return 2;
    }
    out << text;
  }
  return report.has_error() ? 1 : 0;
}
