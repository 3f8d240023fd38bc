#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>

#include "subpack/codefile.hpp"
#include "subpack/ilp.hpp"

#ifndef SUBPACK_CLI
#error "SUBPACK_CLI must name the command-line binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SUBPACK_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "subpack_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::optional<long long> method_value(const json& j, const std::string& name) {
  for (const auto& m : j.at("methods"))
    if (m.at("method") == name && m.at("side") == "upper" && m.at("applied") == true) return m.at("value").get<long long>();
  return std::nullopt;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bound reports the improved Johnson chain") {
  auto r = run("--json bound 2 9 4 2 1");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.at("upper") == 1156);
  CHECK(method_value(j, "classic-johnson") == 1158);
  CHECK(method_value(j, "improved-johnson") == 1156);

  auto free = json::parse(run("--json --paper-free bound 2 9 4 2 1").out);
  CHECK(free.at("upper").get<long long>() >= 1156);
}

TEST_CASE("bound names the quadratic method") {
  auto j = json::parse(run("--json bound 2 6 4 3 2").out);
  CHECK(j.at("upper") == 126);
  CHECK(method_value(j, "quadratic") == 126);
  CHECK(method_value(j, "improved-johnson") == 132);
  CHECK(method_value(j, "classic-johnson") == 134);
  auto text = run("bound 2 6 4 3 2");
  CHECK(text.out.find("quadratic: 126") != std::string::npos);
}

TEST_CASE("trivial cells close") {
  auto j = json::parse(run("--json bound 2 6 5 5 2").out);
  CHECK(j.at("lower") == 63);
  CHECK(j.at("upper") == 63);
  j = json::parse(run("--json bound 2 8 2 2 2").out);
  CHECK(j.at("lower") == 10795);
  CHECK(j.at("upper") == 10795);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("bound 2 6 4 3 0").code == 2);
  CHECK(run("bound 6 6 4 3 1").code == 2);
  CHECK(run("bound 2 6 4 5 1").code == 2);
  CHECK(run("bound 2 6 4").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("ilp --format xml 2 4 2 1 1").code == 2);
}

TEST_CASE("construct writes a code that verify accepts") {
  const auto path = scratch("linkage.code");
  auto r = run("construct --method linkage 2 7 3 2 2 -o " + path.string());
  REQUIRE(r.code == 0);
  auto code = subpack::read_code_file(path);
  CHECK(code.size() == 64);
  auto v = run("verify " + path.string() + " --delta 2 --alpha 2");
  CHECK(v.code == 0);
  CHECK(v.out.find("valid") != std::string::npos);
  // asking for distance 3 fails verification
  CHECK(run("verify " + path.string() + " --delta 3 --alpha 2").code == 1);

  auto lifted = json::parse(run("--json construct --method lifted-mrd 2 4 2 2 3").out);
  CHECK(lifted.at("size") == 8);
  CHECK(lifted.at("formula") == 8);
  CHECK(lifted.at("verified") == true);

  const auto dual = scratch("dual.code");
  REQUIRE(run("construct --method dual-linkage 2 6 4 3 2 -o " + dual.string()).code == 0);
  CHECK(subpack::read_code_file(dual).size() == 65);
  CHECK(run("verify " + dual.string() + " --t 3 --lambda 2").code == 0);
  CHECK(run("verify " + dual.string() + " --t 3 --lambda 1").code == 1);
}

TEST_CASE("verify rejects malformed code files") {
  const auto dup = scratch("dup.code");
  {
    std::ofstream out(dup);
    out << "2 3 1 2\n100\n\n100\n";
  }
  CHECK(run("verify " + dup.string() + " --t 1 --lambda 1").code == 1);
  CHECK(run("verify " + scratch("missing.code").string() + " --t 1 --lambda 1").code == 2);
  const auto points = scratch("points.code");
  {
    std::ofstream out(points);
    out << "2 3 1 7\n";
    for (int v = 1; v < 8; ++v) out << ((v >> 2) & 1) << ((v >> 1) & 1) << (v & 1) << "\n\n";
  }
  CHECK(run("verify " + points.string() + " --t 1 --lambda 1").code == 0);
}

TEST_CASE("table prints every cell and flags the known contradiction") {
  auto t6 = run("table 2 6 2 --compare");
  CHECK(t6.code == 0);
  CHECK(t6.out.find("14 of 14 cells identical") != std::string::npos);
  auto t7 = run("table 2 7 2 --compare");
  CHECK(t7.out.find("CONTRADICTION") != std::string::npos);
  CHECK(t7.out.find("2667") != std::string::npos);
}

TEST_CASE("ilp export in both formats") {
  const auto lp = scratch("m.lp"), mps = scratch("m.mps");
  auto r = run("ilp 2 4 2 1 1 -o " + lp.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("variables: 35") != std::string::npos);
  CHECK(r.out.find("rows: 15") != std::string::npos);
  REQUIRE(run("ilp --format mps 2 4 2 1 1 -o " + mps.string()).code == 0);
  auto read = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(subpack::parse_lp(read(lp)) == subpack::parse_mps(read(mps)));
  CHECK(fs::exists(lp.string() + ".index"));
  auto big = run("ilp 2 9 4 2 1");
  CHECK(big.code == 3);
  CHECK(big.out.find("3309747") != std::string::npos);
}

TEST_CASE("search subcommands") {
  auto e = run("search exhaustive 2 4 2 1 1");
  CHECK(e.code == 0);
  CHECK(e.out.find("= 5") != std::string::npos);
  auto g1 = run("--seed 7 search greedy 2 5 2 1 1");
  auto g2 = run("--seed 7 search greedy 2 5 2 1 1");
  CHECK(g1.code == 0);
  CHECK(g1.out == g2.out);
  CHECK(run("--paper-free --budget 10 search exhaustive 2 5 3 2 2").code == 3);
}

}  // TEST_SUITE
