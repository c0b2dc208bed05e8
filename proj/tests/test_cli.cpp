#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "incb/constructions.hpp"
#include "incb/cumulants.hpp"
#include "incb/io.hpp"

#ifndef INCB_CLI_PATH
#define INCB_CLI_PATH "./incb"
#endif

using namespace incb;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(INCB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("nc and ncb text commands") {
  RunResult enumerate = run("nc enumerate --n 3");
  CHECK(enumerate.exit_code == 0);
  CHECK(count_lines(enumerate.out) == 5);

  RunResult kr = run("nc kreweras --p \"{1,2}{3}\"");
  CHECK(kr.exit_code == 0);
  CHECK(kr.out == "{1}{2,3}\n");

  RunResult mob = run("nc mobius --p \"{1}{2}{3}\" --q \"{1,2,3}\"");
  CHECK(mob.exit_code == 0);
  CHECK(mob.out == "2\n");

  RunResult ncb = run("ncb enumerate --n 2");
  CHECK(ncb.exit_code == 0);
  CHECK(count_lines(ncb.out) == 6);
  RunResult ncz = run("ncb enumerate --n 2 --zero-only");
  CHECK(count_lines(ncz.out) == 3);
  RunResult fib = run("ncb fiber --p \"{1,2}\"");
  CHECK(count_lines(fib.out) == 3);
  RunResult bkr = run("ncb kreweras --t \"{1,-1}{2}{-2}\"");
  CHECK(bkr.out == "{1,2}{-1,-2}\n");
}

TEST_CASE("exit codes") {
  CHECK(run("nc enumerate --n 3").exit_code == 0);
  CHECK(run("nc enumerate --n 99").exit_code == 1);    // domain error
  CHECK(run("nc enumerate").exit_code == 2);           // missing required flag
  CHECK(run("totally-bogus").exit_code == 2);          // unknown subcommand
  CHECK(run("nc enumerate --n 3 --bogus").exit_code == 2);
}

TEST_CASE("state JSON round-trip") {
  Alphabet a = make_alphabet({{"X1", Relation::free}, {"X2", Relation::involution}});
  State s = make_random_state(a, 4, 42);
  std::string path = tmp_path("incb_state_rt.json");
  save_json(path, to_json(s));
  State back = state_from_json(load_json(path));
  CHECK(back.degree == s.degree);
  CHECK(back.alphabet == s.alphabet);
  for (const Word& w : enumerate_words(a, 4))
    CHECK(g_dist(back.word_moment(w), s.word_moment(w)) <= 1e-15);
  // the emitted JSON re-serializes identically
  CHECK(to_json(back) == load_json(path));
}

TEST_CASE("cumulant spec and derivation JSON round-trips") {
  State s = make_random_state(make_alphabet({{"x", Relation::free}}), 4, 7);
  CumulantSpec spec = extract_cumulants(s, 4);
  std::string path = tmp_path("incb_spec_rt.json");
  save_json(path, to_json(spec));
  CumulantSpec back = spec_from_json(load_json(path));
  CHECK(back.degree == spec.degree);
  for (const auto& [tuple, v] : spec.kappa) CHECK(g_dist(back.value(tuple), v) <= 1e-15);

  Alphabet a2 = make_alphabet({{"X1", Relation::free}, {"X2", Relation::free}});
  Derivation d = number_derivation(a2);
  Derivation dback = derivation_from_json(to_json(d));
  CHECK(dback.alphabet == a2);
  for (std::size_t i = 0; i < d.images.size(); ++i)
    CHECK(dback.images[i].terms == d.images[i].terms);
}

TEST_CASE("report JSON carries a witness exactly when failing") {
  Report pass{"demo", true, 0.0, "", 1e-9};
  CHECK_FALSE(to_json(pass).contains("witness"));
  Report fail{"demo", false, 0.5, "(u1,u2)", 1e-9};
  CHECK(to_json(fail).at("witness") == "(u1,u2)");
}

TEST_CASE("semicircular law pipeline") {
  std::string semi = tmp_path("incb_cli_semi.json");
  CHECK(run("build law semicircular -o " + semi).exit_code == 0);
  RunResult k4 = run("cum kappa --state " + semi + " --tuple \"x,x,x,x\"");
  CHECK(k4.exit_code == 0);
  json j = json::parse(k4.out);
  CHECK(std::abs(j.at("body")[0].get<double>()) <= 1e-12);
  CHECK(std::abs(j.at("soul")[0].get<double>()) <= 1e-12);
  // the emitted state matches the library construction
  State lib = moments_from_cumulants(semicircular_spec(0.0, 0.0, 8));
  State cli = state_from_json(load_json(semi));
  for (const Word& w : enumerate_words(lib.alphabet, 8))
    CHECK(g_dist(cli.word_moment(w), lib.word_moment(w)) <= 1e-12);
}

TEST_CASE("z2 then check-inf-freeness passes") {
  std::string z2 = tmp_path("incb_cli_z2.json");
  CHECK(run("build z2 --k 2 --alphas 1,1 -o " + z2).exit_code == 0);
  RunResult rep = run("cum check-inf-freeness --state " + z2 + " --groups \"1;2\" --max-n 4");
  CHECK(rep.exit_code == 0);
  json j = json::parse(rep.out);
  CHECK(j.at("pass") == true);
  // a random state over the same alphabet fails with a witness
  State bad = make_random_state(state_from_json(load_json(z2)).alphabet, 3, 5);
  std::string bad_path = tmp_path("incb_cli_bad.json");
  save_json(bad_path, to_json(bad));
  RunResult rep2 = run("cum check-inf-freeness --state " + bad_path + " --groups \"1;2\" --max-n 3");
  CHECK(rep2.exit_code == 1);
  json j2 = json::parse(rep2.out);
  CHECK(j2.at("pass") == false);
  CHECK(j2.contains("witness"));
}

TEST_CASE("free-product command matches the library") {
  State s1 = make_random_state(make_alphabet({{"X1", Relation::free}}), 4, 91);
  State s2 = make_random_state(make_alphabet({{"X2", Relation::free}}), 4, 92);
  std::string p1 = tmp_path("incb_cli_fp1.json"), p2 = tmp_path("incb_cli_fp2.json");
  std::string out = tmp_path("incb_cli_fp.json");
  save_json(p1, to_json(s1));
  save_json(p2, to_json(s2));
  CHECK(run("build free-product " + p1 + " " + p2 + " -o " + out).exit_code == 0);
  State cli = state_from_json(load_json(out));
  State lib = free_product({s1, s2}, 4);
  for (const Word& w : enumerate_words(cli.alphabet, 4))
    CHECK(g_dist(cli.word_moment(w), lib.word_moment(w)) <= 1e-11);
  // colliding alphabets are a domain error
  CHECK(run("build free-product " + p1 + " " + p1 + " -o " + out).exit_code == 1);
}

TEST_CASE("compress, conv-power, inf-limit, soul-companion commands") {
  std::string semi = tmp_path("incb_cli_semi2.json");
  CHECK(run("build law semicircular --params 0,0 --degree 6 -o " + semi).exit_code == 0);
  std::string comp = tmp_path("incb_cli_comp.json");
  CHECK(run("build compress --state " + semi +
            " --alpha 0.5 --alpha-prime 0.1 --degree 3 -o " + comp)
            .exit_code == 0);
  State c = state_from_json(load_json(comp));
  Dual k2 = kappa_n(c, {Poly::gen(c.alphabet, 0), Poly::gen(c.alphabet, 0)});
  CHECK(g_dist(k2, Dual{cplx{0.5, 0.0}, cplx{0.1, 0.0}}) <= 1e-10);

  // spec pipeline: poisson cumulants, doubled body via t=1, then the limit law
  CumulantSpec pois = free_poisson_spec(1.0, 0.0, 0.0, 4);
  std::string spec_path = tmp_path("incb_cli_pois.json");
  save_json(spec_path, to_json(pois));
  std::string doubled = tmp_path("incb_cli_pois2.json");
  CHECK(run("build conv-power --spec " + spec_path + " --t 1 -o " + doubled).exit_code == 0);
  CumulantSpec d2 = spec_from_json(load_json(doubled));
  CHECK(std::abs(d2.value({0, 0}).body - cplx{2.0, 0.0}) <= 1e-14);
  std::string lim = tmp_path("incb_cli_lim.json");
  CHECK(run("build inf-limit --spec " + spec_path + " -o " + lim).exit_code == 0);
  State lim_state = state_from_json(load_json(lim));
  Poly y = Poly::gen(lim_state.alphabet, 0);
  CHECK(std::abs(kappa_n(lim_state, {y, y}).soul - cplx{1.0, 0.0}) <= 1e-10);

  std::string soul = tmp_path("incb_cli_soul.json");
  CHECK(run("build soul-companion --state " + semi + " --derivation number -o " + soul)
            .exit_code == 0);
  State sc = state_from_json(load_json(soul));
  Poly x = Poly::gen(sc.alphabet, 0);
  CHECK(std::abs(kappa_n(sc, {x, x}).soul - cplx{2.0, 0.0}) <= 1e-10);
}
