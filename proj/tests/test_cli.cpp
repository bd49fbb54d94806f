#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + SIXBQ_CLI + "\" " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("sixbq_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("exit codes") {
  const fs::path out = fs::temp_directory_path() / "sixbq_cli_out";
  fs::remove_all(out);
  const std::string o = " --quiet --out \"" + out.string() + "\"";

  CHECK(run("simulate --config \"" + std::string(SIXBQ_EXAMPLE) + "\"" + o) == 0);
  CHECK(fs::exists(out / "report.md"));
  CHECK(fs::exists(out / "summary.json"));
  CHECK(run("report" + o) == 0);

  auto focusing = write("focus.ini",
                        "[grid]\nlength = 64pi\nn = 256\n[model]\nsign = focusing\n[data]\namplitude = 4\n"
                        "[run]\nT = 20\nsnapshot_every = 10\n");
  CHECK(run("simulate --config \"" + focusing.string() + "\"" + o + "_f") == 1);

  auto k1 = write("k1.ini", "[grid]\nlength = 2pi\nn = 16\n[model]\nk = 1\n");
  CHECK(run("simulate --config \"" + k1.string() + "\"" + o) == 2);
  auto junk = write("junk.ini", "[grid]\nlength = 2pi\nn = sixteen\n");
  CHECK(run("simulate --config \"" + junk.string() + "\"" + o) == 2);
  CHECK(run("simulate --config /nonexistent/file.ini" + o) == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("growth-check") == 2);

  // the subcommand overrides the kind in the file
  auto g = write("g.ini", "[grid]\nlength = 16pi\nn = 64\n[model]\ns = 1.8\nN = 4\n[run]\nT = 5\n");
  CHECK(run("growth-check --config \"" + g.string() + "\"" + o + "_g") == 0);
  CHECK(fs::exists(out.string() + "_g/index.json"));

  fs::remove_all(out);
  fs::remove_all(out.string() + "_f");
  fs::remove_all(out.string() + "_g");
}

TEST_CASE("output root from the environment") {
  const fs::path out = fs::temp_directory_path() / "sixbq_cli_env";
  fs::remove_all(out);
  ::setenv("SIXBQ_OUTPUT_ROOT", out.c_str(), 1);
  CHECK(run("simulate --quiet --config \"" + std::string(SIXBQ_EXAMPLE) + "\"") == 0);
  ::unsetenv("SIXBQ_OUTPUT_ROOT");
  CHECK(fs::exists(out / "index.json"));
  fs::remove_all(out);
}
