// dercat: exact derived-category computations over computable commutative
// rings. `dercat run <file>` executes a session script; `dercat verify
// <suite>` runs a named theorem-verification suite.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dercat/error.hpp"
#include "dercat/session.hpp"
#include "dercat/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitConditionDisagreement = 4;

int run_file(const std::string& path, const std::string& format, std::uint64_t seed, int bound,
             bool print_canonical) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return kExitUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  dercat::SessionOptions opts;
  opts.format = format == "structured" ? dercat::OutputFormat::structured : dercat::OutputFormat::text;
  opts.seed = seed;
  opts.bound = bound;
  try {
    auto doc = dercat::SessionDocument::parse(ss.str());
    if (print_canonical) {
      std::cout << doc.print();
      return kExitOk;
    }
    auto res = doc.run(opts);
    std::cout << res.output;
    return res.exit_code;
  } catch (const dercat::error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == dercat::errc::syntax_error || e.code() == dercat::errc::semantic_error)
      return kExitUsage;
    if (e.code() == dercat::errc::condition_disagreement) return kExitConditionDisagreement;
    return kExitComputation;
  }
}

int run_verify(const std::string& suite, std::uint64_t seed, int count, const std::string& format) {
  dercat::VerifyOptions vo;
  vo.seed = seed;
  vo.count = count;
  std::vector<std::string> names;
  if (suite == "all") {
    names = dercat::verify_suite_names();
  } else {
    names.push_back(suite);
  }
  bool all_pass = true;
  try {
    for (const auto& name : names) {
      auto rep = dercat::run_verify_suite(name, vo);
      if (format == "structured") {
        for (const auto& e : rep.entries)
          std::cout << "{\"suite\": \"" << rep.suite << "\", \"check\": \"" << e.name
                    << "\", \"pass\": " << (e.pass ? "true" : "false") << "}\n";
      } else {
        std::cout << dercat::render_report_text(rep);
      }
      all_pass = all_pass && rep.pass();
    }
  } catch (const dercat::error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == dercat::errc::condition_disagreement) return kExitConditionDisagreement;
    return kExitComputation;
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dercat: exact support, co-support and adic-finiteness computations"};
  app.require_subcommand(1);

  std::string file, format = "text", suite;
  std::uint64_t seed = 42;
  int count = 0, bound = 0;
  bool print_canonical = false;

  auto* run = app.add_subcommand("run", "run a session file");
  run->add_option("file", file, "session script")->required();
  run->add_option("--format", format, "text|structured")->check(CLI::IsMember({"text", "structured"}));
  run->add_option("--seed", seed, "default seed for verify commands");
  run->add_option("--bound", bound, "default Ext window bound");
  run->add_flag("--print", print_canonical, "print the canonical form of the session and exit");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name, or 'all'")->required();
  verify->add_option("--seed", seed, "corpus seed");
  verify->add_option("--count", count, "corpus size (0 = suite default)");
  verify->add_option("--format", format, "text|structured")->check(CLI::IsMember({"text", "structured"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) return run_file(file, format, seed, bound, print_canonical);
  return run_verify(suite, seed, count, format);
}
