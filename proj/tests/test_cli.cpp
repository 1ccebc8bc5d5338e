#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#ifndef BJLAB_CLI_PATH
#define BJLAB_CLI_PATH "./bjlab"
#endif

namespace {

struct CmdResult {
  int status;
  std::string out;
};

CmdResult run_cmd(const std::string& args) {
  std::string cmd = std::string(BJLAB_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 512> buf{};
  CmdResult r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string write_tmp(const std::string& name, const std::string& content) {
  std::string path = std::string("cli_fixture_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("run prints answers and exits 0") {
  auto p = write_tmp("p1.pl",
                     "sat_cl([Pol-Pol|_]).\n"
                     "sat_cl([_|Pairs]) :- sat_cl(Pairs).\n"
                     "sat_cnf([]).\n"
                     "sat_cnf([C|Cs]) :- sat_cl(C), sat_cnf(Cs).\n");
  auto r = run_cmd("run " + p + " -q 'sat_cnf([[true-X]])'");
  CHECK(r.status == 0);
  CHECK(r.out == "X=true\n");
}

TEST_CASE("run exits 1 when there is no answer") {
  auto p = write_tmp("none.pl", "p(1).\n");
  auto r = run_cmd("run " + p + " -q 'p(2)'");
  CHECK(r.status == 1);
}

TEST_CASE("run reports an uncaught ball with exit 2") {
  auto p = write_tmp("throw.pl", "boom :- throw(7).\n");
  auto r = run_cmd("run " + p + " -q 'boom'");
  CHECK(r.status == 2);
  CHECK(r.out.find("7") != std::string::npos);
}

TEST_CASE("run enforces --max-steps with exit 2") {
  auto p = write_tmp("loop.pl", "loop :- loop.\n");
  auto r = run_cmd("run " + p + " -q 'loop' --max-steps 10");
  CHECK(r.status == 2);
  CHECK(r.out.find("step limit") != std::string::npos);
}

TEST_CASE("run writes a JSON-lines trace") {
  auto p = write_tmp("tr.pl", "p(1).\n");
  auto r = run_cmd("run " + p + " -q 'p(X)' --trace cli_trace_a.jsonl");
  CHECK(r.status == 0);
  std::ifstream f("cli_trace_a.jsonl");
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line.find("\"port\":\"Call\"") != std::string::npos);
  CHECK(line.find("\"goal\":") != std::string::npos);
}

TEST_CASE("transform emits parseable source and honors the flag syntax") {
  auto p = write_tmp("p2.pl",
                     "sat_cnf([], _L).\n"
                     "sat_cnf([Clause|Clauses], L) :- sat_cl(Clause, L, -1), Lnew is L + 1, "
                     "sat_cnf(Clauses, Lnew).\n");
  auto r = run_cmd("transform " + p + " -a 2 --split sat_cnf/2:2:2 --id-from-arg 2");
  CHECK(r.status == 0);
  CHECK(r.out.find("catch(sat_cnf(Clauses,Lnew),L,fail)") != std::string::npos);
}

TEST_CASE("transform dbsim output defines catch/1") {
  auto p = write_tmp("pdb.pl", "p(X) :- q(X).\nq(1).\n");
  auto r = run_cmd("transform " + p + " -a dbsim --target p/1");
  CHECK(r.status == 0);
  CHECK(r.out.find("catch(Id) :- target(") != std::string::npos);
  CHECK(r.out.find("->retract(target(Id));true.") != std::string::npos);
  CHECK(r.out.find(":- dynamic(target/1).") != std::string::npos);
}

TEST_CASE("transform 1a with differing heads exits 2") {
  auto p = write_tmp("heads.pl", "p(a) :- q.\np(b) :- r.\n");
  auto r = run_cmd("transform " + p + " -a 1a --target p/1");
  CHECK(r.status == 2);
}

TEST_CASE("diff-traces compares with projection") {
  auto prog = write_tmp("d.pl", "p(1). p(2).\nq(1).\n");
  run_cmd("run " + prog + " -q 'p(X), q(X)' --trace cli_trace_b.jsonl");
  run_cmd("run " + prog + " -q 'p(X), q(X)' --trace cli_trace_c.jsonl");
  auto r = run_cmd("diff-traces cli_trace_b.jsonl cli_trace_c.jsonl");
  CHECK(r.status == 0);
  CHECK(r.out.find("equal") != std::string::npos);

  run_cmd("run " + prog + " -q 'p(X)' --trace cli_trace_d.jsonl");
  r = run_cmd("diff-traces cli_trace_b.jsonl cli_trace_d.jsonl --project p/1");
  CHECK(r.status == 1);
  CHECK(r.out.find("divergence") != std::string::npos);
}

TEST_CASE("usage errors exit nonzero") {
  auto r = run_cmd("run");
  CHECK(r.status != 0);
  r = run_cmd("transform missing_file.pl -a 1");
  CHECK(r.status == 2);
}
