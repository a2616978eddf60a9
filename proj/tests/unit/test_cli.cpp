#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "figures.hpp"
#include "fracspace/service.hpp"

using namespace fracspace;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(FRACSPACE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, FigureCommandsMatchTheService) {
  const Service service(std::nullopt, WorkBudget());
  for (const auto& fig : figures::kFigures) {
    const auto path = figures::config_path(fig.name);
    const auto cli = run_cli(std::string(command_name(fig.command)) + " " + quoted(path));
    ASSERT_EQ(cli.exit_code, 0) << fig.name;
    const auto http = service.handle("POST", "/api/v1/" + std::string(command_name(fig.command)),
                                     *figures::read_file(path));
    ASSERT_EQ(http.status, 200) << fig.name;
    EXPECT_EQ(cli.out, http.body) << fig.name;
  }
}

TEST(Cli, WritesTheOutFileAtomically) {
  const auto dir = fs::temp_directory_path() / "fracspace_cli_test";
  fs::create_directories(dir);
  const auto out = dir / "tree.svg";
  fs::remove(out);
  const auto res = run_cli("tree " + quoted(figures::config_path("fig1")) + " --out " + quoted(out));
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(res.out.empty());
  EXPECT_TRUE(fs::exists(out));
  EXPECT_FALSE(fs::exists(dir / "tree.svg.tmp"));
  fs::remove_all(dir);
}

TEST(Cli, OverridesAndExitCodes) {
  const auto fig1 = quoted(figures::config_path("fig1"));
  const auto fig2 = quoted(figures::config_path("fig2"));
  const auto fig3 = quoted(figures::config_path("fig3"));
  EXPECT_EQ(run_cli("tree " + fig1 + " --generations 2").exit_code, 0);
  EXPECT_EQ(run_cli("tree " + fig1 + " --generations 30").exit_code, 1);
  EXPECT_EQ(run_cli("grid " + fig2 + " --spacing 0").exit_code, 1);
  EXPECT_EQ(run_cli("grid " + fig2 + " --spacing 0.5 --x1 0,2 --x2 -0.5,0.5").exit_code, 0);
  EXPECT_EQ(run_cli("grid " + fig2 + " --x1 nope").exit_code, 1);
  EXPECT_EQ(run_cli("grid " + fig2 + " --all-branches --generations 2").exit_code, 0);
  EXPECT_EQ(run_cli("project " + fig3 +
                    " --shape '{\"kind\":\"circle\",\"center\":[9,0],\"radius\":1}'")
                .exit_code,
            2);
  EXPECT_EQ(run_cli("project " + fig3 + " --canonical").exit_code, 0);
  EXPECT_EQ(run_cli("tree /nonexistent.json").exit_code, 1);
  EXPECT_EQ(run_cli("").exit_code, 1);
}

TEST(Cli, PolylineFormat) {
  const auto res = run_cli("tree " + quoted(figures::config_path("fig1")) + " --format polyline");
  ASSERT_EQ(res.exit_code, 0);
  EXPECT_EQ(res.out.rfind("{\"command\":\"tree\"", 0), 0u) << res.out.substr(0, 40);
}
