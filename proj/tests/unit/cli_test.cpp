#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support.hpp"

namespace {

struct RunResult {
  int rc = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  std::string cmd = std::string("\"") + OSSYNTH_CLI + "\" " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const char* name) { return std::string("\"") + OSSYNTH_TEST_DATA + "/" + name + "\""; }

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "ossynth_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, ToyamaTerminates) {
  auto r = run_cli(data("toyama.maude"));
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_NE(r.out.find("A(S2) = {0}"), std::string::npos);
  EXPECT_NE(r.out.find("verdict: MODEL_FOUND_TERMINATING"), std::string::npos);
}

TEST(Cli, DumpTheory) {
  auto r = run_cli("--dump-theory " + data("toyama.maude"));
  ASSERT_EQ(r.rc, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["sentences"].size(), 12u);
}

TEST(Cli, SeveralDumpsAreKeyed) {
  auto r = run_cli("--dump-theory --dump-constraints " + data("toyama.maude"));
  ASSERT_EQ(r.rc, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("theory"));
  EXPECT_TRUE(j.contains("constraints"));
  EXPECT_FALSE(j.contains("derived"));
}

TEST(Cli, Errors) {
  EXPECT_EQ(run_cli("/nonexistent/module.maude").rc, 2);
  EXPECT_EQ(run_cli("--coeff-domain 3..1 " + data("toyama.maude")).rc, 2);
  EXPECT_EQ(run_cli("--coeff-domain x " + data("toyama.maude")).rc, 2);
  EXPECT_EQ(run_cli("--delta 0 " + data("toyama.maude")).rc, 2);
  EXPECT_EQ(run_cli("--no-such-flag " + data("toyama.maude")).rc, 2);
  auto bad = scratch() / "bad.maude";
  std::ofstream(bad) << "mod BAD is\n  sort S .\n  op f : S -> S\nendm\n";
  auto r = run_cli("\"" + bad.string() + "\"");
  EXPECT_EQ(r.rc, 2);
  EXPECT_NE(r.out.find("4"), std::string::npos) << r.out;
}

TEST(Cli, MergedVariantUnknown) {
  auto r = run_cli(data("toyama_merged.maude"));
  EXPECT_EQ(r.rc, 1) << r.out;
  EXPECT_NE(r.out.find("verdict: UNKNOWN"), std::string::npos);
}

TEST(Cli, JsonIsDeterministic) {
  auto a = run_cli("--json " + data("toyama.maude"));
  auto b = run_cli("--json " + data("toyama.maude"));
  ASSERT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["verdict"], "MODEL_FOUND_TERMINATING");
  EXPECT_EQ(j["solver"]["status"], "sat");
}

TEST(Cli, SmtRoundTrip) {
  auto dir = scratch();
  auto script = dir / "out.smt2";
  auto r = run_cli("--smtlib-out \"" + script.string() + "\" " + data("toyama.maude"));
  ASSERT_EQ(r.rc, 0) << r.out;
  std::ifstream in(script);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "(set-logic QF_NRA)");
  // Feed back the reference values as if an external solver had found them.
  auto pb = ossynth::build_problem(ossynth::fixtures::toyama());
  auto pub = ossynth::fixtures::reference_assignment(pb.system);
  ASSERT_TRUE(pub.missing.empty());
  auto model = dir / "model.txt";
  {
    std::ofstream out(model);
    out << "sat\n(model\n";
    for (const auto& [p, v] : pub.assignment) {
      out << "  (define-fun |" << pb.system.reg.name(p) << "| () Real ";
      if (v < 0) {
        out << "(- " << ossynth::Rational(-v).get_str() << ")";
      } else if (v.get_den() != 1) {
        out << "(/ " << v.get_num().get_str() << " " << v.get_den().get_str() << ")";
      } else {
        out << v.get_str();
      }
      out << ")\n";
    }
    out << ")\n";
  }
  auto m = run_cli("--smt-model-in \"" + model.string() + "\" " + data("toyama.maude"));
  EXPECT_EQ(m.rc, 0) << m.out;
  EXPECT_NE(m.out.find("g(x,y) = x + y + 1"), std::string::npos);
}
