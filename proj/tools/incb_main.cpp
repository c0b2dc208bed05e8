// incb: command-line front end for the truncated infinitesimal free
// probability library. JSON in, JSON (or plain text) out.
//
// Exit codes: 0 success / passing check, 1 domain error or failing check,
// 2 usage error.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "incb/constructions.hpp"
#include "incb/cumulants.hpp"
#include "incb/dds.hpp"
#include "incb/dual.hpp"
#include "incb/errors.hpp"
#include "incb/freealg.hpp"
#include "incb/io.hpp"
#include "incb/nc_a.hpp"
#include "incb/nc_b.hpp"

namespace {

using namespace incb;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Tuple parse_tuple(const State& s, const std::string& text) {
  Tuple t;
  for (const std::string& piece : split(text, ',')) {
    std::string name = trim(piece);
    if (name.empty()) throw ParseError("tuple: empty entry in '" + text + "'");
    t.push_back(Poly::gen(s.alphabet, s.alphabet.index_of(name)));
  }
  if (t.empty()) throw ParseError("tuple: no entries in '" + text + "'");
  return t;
}

std::vector<int> parse_groups(const Alphabet& alph, const std::string& text) {
  std::vector<int> groups;
  for (const std::string& piece : split(text, ';')) {
    std::string g = trim(piece);
    if (g.empty()) throw ParseError("groups: empty entry in '" + text + "'");
    groups.push_back(std::stoi(g));
  }
  if (static_cast<int>(groups.size()) != alph.size())
    throw DimensionMismatch("groups: one label per generator required");
  return groups;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const std::string& piece : split(text, ',')) out.push_back(std::stod(trim(piece)));
  return out;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json(out_path, j);
}

int emit_report(const Report& rep, const std::string& out_path) {
  emit(to_json(rep), out_path);
  return rep.pass ? 0 : 1;
}

struct Options {
  double tol = kDefaultTol;
  std::uint64_t seed = 12345;  // reserved for commands that sample random states
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incb: truncated infinitesimal free probability toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--tol", opt.tol, "tolerance for checks (default 1e-9)");
  app.add_option("--seed", opt.seed, "seed for commands that sample random states");

  int exit_code = 0;
  std::string out_path;

  // ---- nc ----------------------------------------------------------------
  auto* nc = app.add_subcommand("nc", "non-crossing partitions of {1..n}");
  nc->require_subcommand(1);
  {
    auto* cmd = nc->add_subcommand("enumerate", "list NC(n), one partition per line");
    auto n = std::make_shared<int>(0);
    cmd->add_option("--n", *n, "size of the ground set")->required();
    cmd->callback([n]() {
      for (const auto& p : enumerate_nc(*n)) std::cout << to_text(p) << "\n";
    });
  }
  {
    auto* cmd = nc->add_subcommand("kreweras", "Kreweras complement of a partition");
    auto p = std::make_shared<std::string>();
    cmd->add_option("--p", *p, "partition, e.g. \"{1,2}{3}\"")->required();
    cmd->callback([p]() { std::cout << to_text(kreweras(parse_partition(*p))) << "\n"; });
  }
  {
    auto* cmd = nc->add_subcommand("mobius", "Mobius function on an interval of NC(n)");
    auto p = std::make_shared<std::string>(), q = std::make_shared<std::string>();
    cmd->add_option("--p", *p, "lower partition")->required();
    cmd->add_option("--q", *q, "upper partition")->required();
    cmd->callback([p, q]() {
      std::cout << mobius_a(parse_partition(*p), parse_partition(*q)) << "\n";
    });
  }

  // ---- ncb ---------------------------------------------------------------
  auto* ncb = app.add_subcommand("ncb", "symmetric non-crossing partitions of {+-1..+-n}");
  ncb->require_subcommand(1);
  {
    auto* cmd = ncb->add_subcommand("enumerate", "list the type-B lattice");
    auto n = std::make_shared<int>(0);
    auto zero_only = std::make_shared<bool>(false);
    cmd->add_option("--n", *n, "half-size of the ground set")->required();
    cmd->add_flag("--zero-only", *zero_only, "only partitions with a zero-block");
    cmd->callback([n, zero_only]() {
      const auto& all = *zero_only ? enumerate_ncz(*n) : enumerate_ncb(*n);
      for (const auto& t : all) std::cout << to_text(t) << "\n";
    });
  }
  {
    auto* cmd = ncb->add_subcommand("fiber", "the n+1 lifts of a type-A partition");
    auto p = std::make_shared<std::string>();
    cmd->add_option("--p", *p, "type-A partition")->required();
    cmd->callback([p]() {
      for (const auto& t : fiber(parse_partition(*p))) std::cout << to_text(t) << "\n";
    });
  }
  {
    auto* cmd = ncb->add_subcommand("kreweras", "type-B Kreweras complement");
    auto t = std::make_shared<std::string>();
    cmd->add_option("--t", *t, "type-B partition, e.g. \"{1,-1}{2}{-2}\"")->required();
    cmd->callback([t]() { std::cout << to_text(kreweras_b(parse_bpartition(*t))) << "\n"; });
  }

  // ---- cum ---------------------------------------------------------------
  auto* cum = app.add_subcommand("cum", "cumulants and freeness checks on a state");
  cum->require_subcommand(1);
  {
    auto* cmd = cum->add_subcommand("kappa", "G-valued free cumulant of a generator tuple");
    auto state = std::make_shared<std::string>(), tuple = std::make_shared<std::string>();
    cmd->add_option("--state", *state, "state JSON file")->required();
    cmd->add_option("--tuple", *tuple, "comma-separated generator names")->required();
    cmd->callback([state, tuple]() {
      State s = state_from_json(load_json(*state));
      Dual k = kappa_n(s, parse_tuple(s, *tuple));
      std::cout << to_json(k).dump(2) << "\n";
    });
  }
  {
    auto* cmd = cum->add_subcommand("inf-kappa", "infinitesimal cumulant of a tuple");
    auto state = std::make_shared<std::string>(), tuple = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("formal");
    cmd->add_option("--state", *state, "state JSON file")->required();
    cmd->add_option("--tuple", *tuple, "comma-separated generator names")->required();
    cmd->add_option("--method", *method, "formal|typeb|soul|numeric")
        ->check(CLI::IsMember({"formal", "typeb", "soul", "numeric"}));
    cmd->callback([state, tuple, method]() {
      State s = state_from_json(load_json(*state));
      Tuple t = parse_tuple(s, *tuple);
      cplx v;
      if (*method == "formal")
        v = inf_cumulant_formal(s, t);
      else if (*method == "typeb")
        v = inf_cumulant_typeb(s, t);
      else if (*method == "soul")
        v = inf_cumulant_soul(s, t);
      else
        v = inf_cumulant_numeric(s, t);
      std::cout << json{{"value", to_json(v)}}.dump(2) << "\n";
    });
  }
  auto add_check = [&](const std::string& name, const std::string& help, auto runner) {
    auto* cmd = cum->add_subcommand(name, help);
    auto state = std::make_shared<std::string>(), groups = std::make_shared<std::string>();
    auto max_n = std::make_shared<int>(4);
    auto local_out = std::make_shared<std::string>();
    cmd->add_option("--state", *state, "state JSON file")->required();
    cmd->add_option("--groups", *groups, "semicolon-separated group label per generator")
        ->required();
    cmd->add_option("--max-n", *max_n, "largest tuple length scanned (default 4)");
    cmd->add_option("-o,--output", *local_out, "write the report to this file");
    cmd->callback([&exit_code, &opt, state, groups, max_n, local_out, runner]() {
      State s = state_from_json(load_json(*state));
      Report rep = runner(s, parse_groups(s.alphabet, *groups), *max_n, opt.tol);
      exit_code = emit_report(rep, *local_out);
    });
  };
  add_check("check-freeness", "vanishing of mixed body cumulants",
            [](const State& s, const std::vector<int>& g, int n, double tol) {
              return check_freeness(s, g, n, tol);
            });
  add_check("check-inf-freeness", "vanishing of mixed body and infinitesimal cumulants",
            [](const State& s, const std::vector<int>& g, int n, double tol) {
              return check_inf_freeness(s, g, n, tol);
            });
  {
    auto* cmd = cum->add_subcommand("check-traciality", "rotation invariance of the table");
    auto state = std::make_shared<std::string>();
    auto local_out = std::make_shared<std::string>();
    cmd->add_option("--state", *state, "state JSON file")->required();
    cmd->add_option("-o,--output", *local_out, "write the report to this file");
    cmd->callback([&exit_code, &opt, state, local_out]() {
      State s = state_from_json(load_json(*state));
      exit_code = emit_report(check_traciality(s, opt.tol), *local_out);
    });
  }

  // ---- build -------------------------------------------------------------
  auto* build = app.add_subcommand("build", "construct states and cumulant specs");
  build->require_subcommand(1);
  {
    auto* cmd = build->add_subcommand("free-product", "free product of input states");
    auto inputs = std::make_shared<std::vector<std::string>>();
    auto degree = std::make_shared<int>(0);
    cmd->add_option("inputs", *inputs, "state JSON files")->required()->expected(-2);
    cmd->add_option("--degree", *degree, "truncation degree (default: min input degree)");
    cmd->add_option("-o,--output", out_path, "output state JSON file");
    cmd->callback([&out_path, inputs, degree]() {
      std::vector<State> states;
      for (const auto& path : *inputs) states.push_back(state_from_json(load_json(path)));
      int d = *degree;
      if (d == 0) {
        d = states.front().degree;
        for (const auto& s : states) d = std::min(d, s.degree);
      }
      emit(to_json(free_product(states, d)), out_path);
    });
  }
  {
    auto* cmd = build->add_subcommand("z2", "group-algebra state of (Z2)*k");
    auto k = std::make_shared<int>(0);
    auto alphas = std::make_shared<std::string>();
    auto degree = std::make_shared<int>(7);
    cmd->add_option("--k", *k, "number of involution generators")->required();
    cmd->add_option("--alphas", *alphas, "comma-separated alpha' per generator")->required();
    cmd->add_option("--degree", *degree, "truncation degree (default 7)");
    cmd->add_option("-o,--output", out_path, "output state JSON file");
    cmd->callback([&out_path, k, alphas, degree]() {
      emit(to_json(z2_state(*k, parse_doubles(*alphas), *degree)), out_path);
    });
  }
  {
    auto* cmd = build->add_subcommand("compress", "free compression by an idempotent");
    auto state = std::make_shared<std::string>(), spec = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(0.0), alpha_prime = std::make_shared<double>(0.0);
    auto degree = std::make_shared<int>(0);
    cmd->add_option("--state", *state, "state JSON (compressed via the p-model)");
    cmd->add_option("--spec", *spec, "cumulant-spec JSON (cumulants rescaled directly)");
    cmd->add_option("--alpha", *alpha, "phi(p)")->required();
    cmd->add_option("--alpha-prime", *alpha_prime, "phi'(p)")->required();
    cmd->add_option("--degree", *degree, "output degree for the p-model route");
    cmd->add_option("-o,--output", out_path, "output JSON file");
    cmd->callback([&out_path, state, spec, alpha, alpha_prime, degree]() {
      CompressionParams params{cplx{*alpha, 0.0}, cplx{*alpha_prime, 0.0}};
      if (state->empty() == spec->empty())
        throw ParseError("compress: exactly one of --state / --spec is required");
      if (!spec->empty()) {
        emit(to_json(compress_cumulants(spec_from_json(load_json(*spec)), params)), out_path);
        return;
      }
      State x = state_from_json(load_json(*state));
      int d = *degree > 0 ? *degree : std::min(x.degree, (kMaxNcN - 1) / 2);
      emit(to_json(compress_state_model(x, params, d)), out_path);
    });
  }
  {
    auto* cmd = build->add_subcommand("law", "named infinitesimal laws as states");
    auto kind = std::make_shared<std::string>();
    auto params = std::make_shared<std::string>("");
    auto degree = std::make_shared<int>(8);
    cmd->add_option("kind", *kind, "semicircular | poisson")
        ->required()
        ->check(CLI::IsMember({"semicircular", "poisson"}));
    cmd->add_option("--params", *params,
                    "semicircular: a1',a2' (default 0,0); poisson: lambda,beta',gamma' "
                    "(default 1,0,0)");
    cmd->add_option("--degree", *degree, "truncation degree (default 8)");
    cmd->add_option("-o,--output", out_path, "output state JSON file");
    cmd->callback([&out_path, kind, params, degree]() {
      CumulantSpec spec;
      if (*kind == "semicircular") {
        std::vector<double> v = params->empty() ? std::vector<double>{0.0, 0.0}
                                                : parse_doubles(*params);
        if (v.size() != 2) throw ParseError("law semicircular: expected a1',a2'");
        spec = semicircular_spec(v[0], v[1], *degree);
      } else {
        std::vector<double> v = params->empty() ? std::vector<double>{1.0, 0.0, 0.0}
                                                : parse_doubles(*params);
        if (v.size() != 3) throw ParseError("law poisson: expected lambda,beta',gamma'");
        spec = free_poisson_spec(v[0], v[1], v[2], *degree);
      }
      emit(to_json(moments_from_cumulants(spec)), out_path);
    });
  }
  {
    auto* cmd = build->add_subcommand("soul-companion",
                                      "body state plus derivation-induced soul");
    auto state = std::make_shared<std::string>(), deriv = std::make_shared<std::string>();
    cmd->add_option("--state", *state, "body state JSON (souls ignored)")->required();
    cmd->add_option("--derivation", *deriv, "removal | number | derivation JSON file")
        ->required();
    cmd->add_option("-o,--output", out_path, "output state JSON file");
    cmd->callback([&out_path, state, deriv]() {
      State in = state_from_json(load_json(*state));
      std::map<Word, Dual> body_table;
      for (const Word& w : enumerate_words(in.alphabet, in.degree))
        body_table[w] = Dual{in.word_moment(w).body, cplx{}};
      State body = make_state(in.alphabet, in.degree, std::move(body_table));
      Derivation d = *deriv == "removal"  ? removal_derivation(body.alphabet)
                     : *deriv == "number" ? number_derivation(body.alphabet)
                                          : derivation_from_json(load_json(*deriv));
      emit(to_json(soul_companion(body, d)), out_path);
    });
  }
  {
    auto* cmd = build->add_subcommand("conv-power", "boxplus convolution power of a spec");
    auto spec = std::make_shared<std::string>();
    auto t = std::make_shared<double>(0.0);
    cmd->add_option("--spec", *spec, "cumulant-spec JSON file")->required();
    cmd->add_option("--t", *t, "power parameter, must exceed -1")->required();
    cmd->add_option("-o,--output", out_path, "output cumulant-spec JSON file");
    cmd->callback([&out_path, spec, t]() {
      emit(to_json(convolution_power(spec_from_json(load_json(*spec)), *t)), out_path);
    });
  }
  {
    auto* cmd = build->add_subcommand("inf-limit",
                                      "infinitesimal law of the boxplus-power derivative");
    auto spec = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec, "cumulant-spec JSON file")->required();
    cmd->add_option("-o,--output", out_path, "output state JSON file");
    cmd->callback([&out_path, spec]() {
      emit(to_json(inf_limit_of_powers(spec_from_json(load_json(*spec)))), out_path);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
