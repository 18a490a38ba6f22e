// Command-line front end: structure constants, check suites and record summaries.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lielab/chevalley.hpp"
#include "lielab/errors.hpp"
#include "lielab/records.hpp"
#include "lielab/suites.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw lielab::IoError("cannot write " + path.string());
}

std::string out_dir_or_env(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LIELAB_OUT_DIR")) return env;
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restricted Lie algebras of types A and C: structure constants, reduced enveloping algebras, checks"};
  app.require_subcommand(1);

  std::string family;
  int rank = 1;
  std::uint32_t p = 7;
  std::string algebra_out;
  auto* algebra = app.add_subcommand("algebra", "Write the structure constants and print n, l, m");
  algebra->add_option("family", family, "A or C")->required();
  algebra->add_option("rank", rank, "rank l")->required()->check(CLI::Range(1, 8));
  algebra->add_option("p", p, "characteristic, a prime >= 7")->required();
  algebra->add_option("--out", algebra_out, "structure-constant file");

  std::string suite;
  lielab::SuiteParams sp;
  std::string check_family = "A";
  std::string check_out;
  auto* check = app.add_subcommand("check", "Run a check suite and emit one JSON record per verdict");
  check->add_option("suite", suite, "jacobi, casimir, g, basis, modules or all")
      ->required()
      ->check(CLI::IsMember(lielab::suite_names()));
  check->add_option("--family", check_family, "A or C");
  check->add_option("--rank", sp.rank, "rank l")->check(CLI::Range(1, 8));
  check->add_option("--p", sp.p, "characteristic, a prime >= 7");
  check->add_option("--chi", sp.chi, "character as label=value pairs, e.g. h1=1 or x(e2-e1)=1");
  check->add_option("--seed", sp.seed, "seed for randomized steps");
  check->add_option("--budget", sp.budget, "max products and max module dimension");
  check->add_option("--out", check_out, "directory for the record file (default: $LIELAB_OUT_DIR)");
  check->add_flag("--timing", sp.timing, "add wall time to records");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Summarize the records of a run directory");
  report->add_option("dir", report_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*algebra) {
      const auto alg = lielab::make_algebra(lielab::parse_family(family), rank, p);
      if (!algebra_out.empty()) write_file(algebra_out, lielab::export_text(alg.table()));
      std::cout << alg.name() << " over GF(" << alg.p() << "): n = " << alg.n() << ", l = " << alg.l()
                << ", m = " << alg.m() << "\n";
      if (!alg.warning().empty()) std::cerr << "warning: " << alg.warning() << "\n";
      return kOk;
    }
    if (*check) {
      sp.family = lielab::parse_family(check_family);
      const auto records = lielab::run_suite(suite, sp);
      const auto text = lielab::to_jsonl(records);
      std::cout << text;
      if (const auto dir = out_dir_or_env(check_out); !dir.empty()) {
        const auto name = suite + "-" + std::string(1, lielab::family_letter(sp.family)) + std::to_string(sp.rank) +
                          "-p" + std::to_string(sp.p) + "-s" + std::to_string(sp.seed) + ".jsonl";
        write_file(std::filesystem::path(dir) / name, text);
      }
      for (const auto& r : records)
        if (r.status == lielab::Status::Fail) return kCheckFailed;
      return kOk;
    }
    const auto summary = lielab::summarize(lielab::load_records(report_dir));
    std::cout << lielab::format_summary(summary);
    for (const auto& s : summary)
      if (s.fail) return kCheckFailed;
    return kOk;
  } catch (const lielab::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const lielab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return *report ? kInternal : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
