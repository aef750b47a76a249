#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "support.hpp"

using namespace ainf;
namespace fs = std::filesystem;

namespace {

struct Exec {
  int code = -1;
  std::string out;
};

Exec run(const std::string& args, const std::string& stdin_text = "") {
  fs::path in;
  std::string cmd = std::string(AINF_CLI) + " " + args;
  if (!stdin_text.empty()) {
    in = fs::temp_directory_path() / ("ainf-cli-in-" + std::to_string(::getpid()) + ".json");
    std::ofstream(in) << stdin_text;
    cmd += " < " + in.string();
  }
  cmd += " 2>/dev/null";
  Exec r;
  FILE* p = ::popen(cmd.c_str(), "r");
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = ::pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  if (!in.empty()) fs::remove(in);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path fixture(const std::string& name) { return fs::path(AINF_FIXTURES) / (name + ".json"); }

std::string in(const std::string& name) { return " -i " + fixture(name).string(); }

fs::path scratch(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("ainf-cli-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, CanonicalizeIsIdentityOnEveryFixture) {
  size_t n = 0;
  for (const auto& e : fs::directory_iterator(AINF_FIXTURES)) {
    Exec r = run("canonicalize -i " + e.path().string());
    EXPECT_EQ(r.code, 0) << e.path();
    EXPECT_EQ(r.out, slurp(e.path())) << e.path();
    ++n;
  }
  EXPECT_GE(n, 30u);
}

TEST(Cli, ExportMatchesCommittedFixturesAndIsDeterministic) {
  fs::path a = scratch("a"), b = scratch("b");
  ASSERT_EQ(run("export-fixtures -o " + a.string()).code, 0);
  ASSERT_EQ(run("export-fixtures -o " + b.string()).code, 0);
  size_t n = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    std::string name = e.path().filename().string();
    EXPECT_EQ(slurp(e.path()), slurp(b / name)) << name;
    EXPECT_EQ(slurp(e.path()), slurp(fs::path(AINF_FIXTURES) / name)) << name;
    ++n;
  }
  EXPECT_EQ(n, static_cast<size_t>(std::distance(fs::directory_iterator(AINF_FIXTURES), fs::directory_iterator())));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, ChecksPassOnValidFixtures) {
  EXPECT_EQ(run("check-algebra" + in("fix-d")).code, 0);
  EXPECT_EQ(run("check-algebra" + in("fix-t2")).code, 0);
  EXPECT_EQ(run("check-module" + in("heisenberg-module")).code, 0);
  EXPECT_EQ(run("bar-check" + in("heisenberg-module")).code, 0);
  EXPECT_EQ(run("check-morphism" + in("fix-d-minimal-morphism")).code, 0);
  EXPECT_EQ(run("check-morphism" + in("heisenberg-pair-morphism")).code, 0);
  EXPECT_EQ(run("check-morphism" + in("formal-witness")).code, 0);
  Exec r = run("check-algebra" + in("fix-d"));
  Json rep = parse_document(r.out);
  EXPECT_EQ(document_kind(rep), "report");
  EXPECT_EQ(rep["status"], "pass");
}

TEST(Cli, BrokenAlgebraFailsWithExitOne) {
  Json d = parse_document(slurp(fixture("fix-d")));
  d["ops"]["2"].push_back({{"in", {"e1e2", "e1"}}, {"out", {{"e1e2e3", "1"}}}});
  Exec r = run("check-algebra -i -", serialize(d));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(parse_document(r.out)["status"], "fail");
}

TEST(Cli, ProveFormality) {
  Exec h = run("prove-formality" + in("heisenberg-module"));
  EXPECT_EQ(h.code, 1);
  Json c = parse_document(h.out);
  EXPECT_EQ(document_kind(c), "certificate");
  EXPECT_EQ(c["verdict"], "not_formal");
  EXPECT_EQ(c["stage"], 2);
  EXPECT_EQ(run("prove-formality" + in("heisenberg-module")).out, h.out);
  for (int i = 0; i < 20; i += 4) {
    Exec f = run("prove-formality" + in("formal-dual-" + std::to_string(i)));
    EXPECT_EQ(f.code, 0) << i;
    EXPECT_EQ(parse_document(f.out)["verdict"], "formal");
  }
  Exec o = run("obstruct --up-to 2" + in("heisenberg-module"));
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(parse_document(o.out)["details"]["failing_stage"], 2);
}

TEST(Cli, CertificateTamperingDetected) {
  EXPECT_EQ(run("verify-certificate" + in("formal-certificate")).code, 0);
  EXPECT_EQ(run("verify-certificate" + in("heisenberg-certificate")).code, 0);
  EXPECT_EQ(run("prove-formality --verify-only" + in("formal-certificate")).code, 0);
  Json c = parse_document(slurp(fixture("formal-certificate")));
  Json& comps = c["witness"]["comps"];
  ASSERT_TRUE(comps.contains("2"));
  Json& out = comps["2"][0]["out"];
  std::string key = out.begin().key();
  out[key] = "7";
  Exec r = run("verify-certificate -i -", serialize(c));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(parse_document(r.out)["status"], "fail");

  Json v = parse_document(slurp(fixture("heisenberg-certificate")));
  v["verdict"] = "formal";
  EXPECT_NE(run("verify-certificate -i -", serialize(v)).code, 0);
}

TEST(Cli, InputErrorsExitTwo) {
  Exec g = run("check-algebra -i -", "{ not json");
  EXPECT_EQ(g.code, 2);
  EXPECT_EQ(parse_document(g.out)["status"], "input_error");
  Json d = parse_document(slurp(fixture("fix-t2")));
  d["shape"] = "round";
  Exec u = run("check-algebra -i -", serialize(d));
  EXPECT_EQ(u.code, 2);
  EXPECT_NE(parse_document(u.out)["details"]["message"].get<std::string>().find("shape"), std::string::npos);
  Json v = d;
  v.erase("shape");
  v["format_version"] = "0.9.0";
  EXPECT_EQ(run("check-algebra -i -", serialize(v)).code, 2);
  EXPECT_EQ(run("check-module" + in("fix-t2")).code, 2);
  EXPECT_EQ(run("check-algebra -i /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
}

TEST(Cli, ProducingCommands) {
  Exec t = run("transfer" + in("heisenberg-dg-module"));
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(document_kind(parse_document(t.out)), "module");
  EXPECT_EQ(run("check-module -i -", t.out).code, 0);

  Exec c = run("cohomology" + in("fix-d"));
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(payload_of(parse_document(c.out))["space"].size(), 4u);

  Exec nc = run("normal-cone" + in("heisenberg-module"));
  ASSERT_EQ(nc.code, 0);
  Exec f1 = run("fibre --at 1 -i -", nc.out);
  ASSERT_EQ(f1.code, 0);
  EXPECT_EQ(f1.out, slurp(fixture("heisenberg-module")));

  Exec rs = run("rees" + in("rees-cubic"));
  ASSERT_EQ(rs.code, 0);
  EXPECT_EQ(run("check-algebra -i -", rs.out).code, 0);

  EXPECT_EQ(run("snf" + in("diag-h-h2")).code, 0);
  Exec fr = run("freeness" + in("times-h"));
  EXPECT_EQ(fr.code, 1);
  EXPECT_EQ(run("freeness" + in("zero-differential")).code, 0);
  Exec hh = run("hochschild --p 1 --q 0" + in("dual-numbers-on-ground"));
  ASSERT_EQ(hh.code, 0);
  EXPECT_GE(parse_document(hh.out)["details"]["groups"][0]["dim"].get<int>(), 1);
}

TEST(Cli, OutputFileMatchesStdout) {
  fs::path d = scratch("o");
  fs::path o = d / "out.json";
  Exec a = run("transfer" + in("fix-d"));
  ASSERT_EQ(run("transfer" + in("fix-d") + " -o " + o.string()).code, 0);
  EXPECT_EQ(slurp(o), a.out);
  fs::remove_all(d);
}
