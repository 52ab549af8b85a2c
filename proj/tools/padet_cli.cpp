// padet: batch front end for the counting pipeline and the verification
// suites. Reports go to stdout (or --out) as JSON, or CSV where it is flat.
//
// Exit codes: 0 success, 1 usage error, 2 falsification or bound violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "padet/padet.hpp"

namespace {

using padet::io::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFinding = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  unsigned long p = 2;
  unsigned d = 1;
  long h = 1;
  std::vector<long> h_list;
  long n = 0;
  unsigned r = 1;
  std::string f;
  std::string c = "0";
  std::string m = "1";
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t budget = 256;
  std::string suite;
  std::string check = "tr";
  std::string ball_center = "0";
  std::int64_t ball_radius = -1;
  std::size_t trials = 0;
};

padet::Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return padet::parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

padet::Integer positive_integer_arg(const std::string& text, const char* flag) {
  auto q = rational_arg(text, flag);
  if (q.get_den() != 1 || q <= 0) throw UsageError(std::string(flag) + " must be a positive integer");
  return q.get_num();
}

padet::FunctionModel model_arg(const Args& a) {
  if (a.f.empty()) throw UsageError("--f <model.json> is required");
  try {
    return padet::io::load_model(a.f, a.p);
  } catch (const padet::DomainError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("--f: " + std::string(e.what()));
  }
}

json with_schema(json body) {
  body["schema"] = padet::io::kSchema;
  return body;
}

json outcome_json(const padet::suites::Outcome& o) {
  return with_schema({{"suite", o.name},
                      {"trials", o.trials},
                      {"violations", o.violations},
                      {"indeterminate", o.indeterminate},
                      {"witnesses", o.witnesses},
                      {"ok", o.ok()}});
}

std::string outcome_csv(const padet::suites::Outcome& o) {
  return "suite,trials,violations,indeterminate,ok\n" + o.name + ',' + std::to_string(o.trials) + ',' +
         std::to_string(o.violations) + ',' + std::to_string(o.indeterminate) + ',' + (o.ok() ? "true" : "false") + '\n';
}

struct Result {
  std::string text;
  int code = kOk;
};

Result json_result(const json& j, bool ok) { return {j.dump(2) + "\n", ok ? kOk : kFinding}; }

void require_json(const Args& a, const char* command) {
  if (a.format != "json") throw UsageError(std::string(command) + " supports --format json only");
}

Result cmd_constants(const Args& a, bool have_p, bool have_h) {
  auto k = padet::constants(a.d);
  json out = padet::io::constants(k);
  if (have_p) {
    padet::require_prime(a.p);
    out["p"] = a.p;
    out["m"] = padet::io::m_constant(padet::constant_m(a.d, a.p));
    if (have_h) {
      out["H"] = a.h;
      out["N"] = padet::threshold_N(a.d, a.h, a.p);
    }
  }
  if (a.format == "csv")
    return {"d,r,e,epsilon\n" + std::to_string(k.d) + ',' + std::to_string(k.r) + ',' + std::to_string(k.e) + ',' +
                padet::format_rational(k.epsilon) + '\n',
            kOk};
  return json_result(with_schema(out), true);
}

Result cmd_census(const Args& a) {
  require_json(a, "census");
  auto c = rational_arg(a.c, "--c");
  auto m = positive_integer_arg(a.m, "--M");
  auto rep = padet::ball_census(c, m, a.n, a.h, a.p);
  json out = padet::io::census(rep);
  out["input"] = {{"p", a.p}, {"c", a.c}, {"M", m.get_str()}, {"N", a.n}, {"H", a.h}};
  return json_result(with_schema(out), rep.ok);
}

Result cmd_trcheck(const Args& a) {
  require_json(a, "trcheck");
  auto f = model_arg(a);
  padet::Ball ball{rational_arg(a.ball_center, "--center"), a.ball_radius};
  padet::Sampling s{16, a.budget, a.seed, 1000};
  padet::Report rep;
  if (a.check == "tr") {
    rep = padet::check_Tr(f, ball, a.r, s);
  } else if (a.check == "jacobian") {
    rep = padet::check_jacobian_property(f, ball, positive_integer_arg(a.m, "--M"), s);
  } else if (a.check == "taylor") {
    rep = padet::check_taylor_order(f, ball, a.r, s);
  } else if (a.check == "parametrizing") {
    auto c = rational_arg(a.c, "--c");
    auto m = positive_integer_arg(a.m, "--M");
    padet::ParametrizationData data{f, c, m, padet::prepared_domain(c, m, a.h, a.p), a.r};
    rep = padet::check_r_parametrizing(data, s);
  } else {
    throw UsageError("--check must be tr, jacobian, taylor or parametrizing");
  }
  json out = padet::io::report(rep);
  out["check"] = a.check;
  out["ball"] = padet::io::ball(ball);
  return json_result(with_schema(out), rep.ok());
}

Result cmd_catch(const Args& a) {
  require_json(a, "catch");
  auto f = model_arg(a);
  auto c = rational_arg(a.c, "--c");
  auto m = positive_integer_arg(a.m, "--M");
  auto k = padet::constants(a.d);
  padet::ParametrizationData data{f, c, m, padet::prepared_domain(c, m, a.h, a.p), k.r};
  auto rep = padet::catch_curves(data, a.d, a.h, a.jobs);
  return json_result(with_schema(padet::io::catch_report(rep)), rep.coverage_ok && rep.bound.holds);
}

Result cmd_count(const Args& a) {
  require_json(a, "count");
  auto f = model_arg(a);
  padet::CountOptions opt;
  opt.jobs = a.jobs;
  opt.strict = false;
  opt.verification.seed = a.seed;
  auto cert = padet::count_points(f, rational_arg(a.c, "--c"), positive_integer_arg(a.m, "--M"), a.d, a.h, opt);
  return json_result(padet::io::certificate(cert), cert.ok());
}

Result cmd_scaling(const Args& a) {
  auto f = model_arg(a);
  if (a.h_list.empty()) throw UsageError("--H-list is required");
  padet::CountOptions opt;
  opt.jobs = a.jobs;
  opt.strict = false;
  opt.verification.seed = a.seed;
  auto rows = padet::scaling_table(f, rational_arg(a.c, "--c"), positive_integer_arg(a.m, "--M"), a.d, a.h_list, opt);
  bool ok = std::all_of(rows.begin(), rows.end(), [](const padet::ScalingRow& r) { return r.ok; });
  if (a.format == "csv") return {padet::io::scaling_csv(rows), ok ? kOk : kFinding};
  return json_result(with_schema({{"rows", padet::io::scaling(rows)}, {"ok", ok}}), ok);
}

Result cmd_verify(const Args& a, bool have_p) {
  namespace s = padet::suites;
  std::vector<padet::Prime> primes;
  if (have_p) {
    padet::require_prime(a.p);
    primes = {a.p};
  }
  auto pick = [&](std::vector<padet::Prime> fallback) { return primes.empty() ? fallback : primes; };
  auto trials = [&](std::size_t fallback) { return a.trials ? a.trials : fallback; };

  s::Outcome o;
  if (a.suite == "census") {
    o = s::census(trials(500), a.seed);
  } else if (a.suite == "determinant") {
    o = s::determinant(trials(500), a.seed);
  } else if (a.suite == "separation") {
    o = s::separation(pick({2, 3}), a.n, a.h, nullptr);
  } else if (a.suite == "scaling") {
    o = s::scaling_lemma(trials(100), a.seed);
  } else if (a.suite == "jacobian") {
    o = s::jacobian_taylor(pick({2, 3}), a.h, a.seed);
  } else if (a.suite == "threshold") {
    o = s::threshold(3, a.h, pick({2, 3, 5}));
  } else if (a.suite == "determinism") {
    o = s::determinism(std::max(a.jobs, 2u));
  } else if (a.suite == "oracle") {
    auto sweep = s::oracle(a.jobs);
    json out = with_schema({{"suite", "oracle"},
                            {"equivalence", outcome_json(sweep.equivalence)},
                            {"coverage", outcome_json(sweep.coverage)},
                            {"curve_bound", outcome_json(sweep.curve_bound)}});
    bool ok = sweep.equivalence.ok() && sweep.coverage.ok() && sweep.curve_bound.ok();
    out["violations"] = sweep.equivalence.violations + sweep.coverage.violations + sweep.curve_bound.violations;
    out["ok"] = ok;
    require_json(a, "verify --suite oracle");
    return json_result(out, ok);
  } else {
    throw UsageError("unknown suite '" + a.suite +
                     "' (census, determinant, separation, scaling, jacobian, threshold, oracle, determinism)");
  }
  if (a.format == "csv") return {outcome_csv(o), o.ok() ? kOk : kFinding};
  return json_result(outcome_json(o), o.ok());
}

json failure_json(const char* kind, const std::exception& e) {
  return with_schema({{"error", kind}, {"message", e.what()}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic determinant method: rational points of bounded height on graphs"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", a.p, "prime")->default_val(2);
    sub->add_option("--out", a.out, "write the report to this path instead of stdout");
    sub->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", a.seed, "sampling seed")->default_val(0);
    sub->add_option("--jobs", a.jobs, "worker threads")->default_val(1)->check(CLI::PositiveNumber);
  };
  auto pipeline = [&](CLI::App* sub) {
    sub->add_option("--d", a.d, "curve degree bound")->default_val(1)->check(CLI::PositiveNumber);
    sub->add_option("--f", a.f, "function model JSON");
    sub->add_option("--c", a.c, "centre c")->default_val("0");
    sub->add_option("--M", a.m, "integer M")->default_val("1");
  };

  auto* constants = app.add_subcommand("constants", "r, e, epsilon for degree d; with --p also m and N");
  common(constants);
  constants->add_option("--d", a.d)->required()->check(CLI::PositiveNumber);
  auto* constants_h = constants->add_option("--H", a.h, "height bound for the threshold N")->check(CLI::PositiveNumber);

  auto* census = app.add_subcommand("census", "RV classes met by height <= H rationals");
  common(census);
  census->add_option("--c", a.c)->default_val("0");
  census->add_option("--M", a.m)->default_val("1");
  census->add_option("--N", a.n)->default_val(0)->check(CLI::NonNegativeNumber);
  census->add_option("--H", a.h)->required()->check(CLI::PositiveNumber);

  auto* trcheck = app.add_subcommand("trcheck", "sampled analytic checks on one ball");
  common(trcheck);
  trcheck->add_option("--f", a.f)->required();
  trcheck->add_option("--r", a.r)->default_val(1);
  trcheck->add_option("--check", a.check, "tr, jacobian, taylor or parametrizing")->default_val("tr");
  trcheck->add_option("--center", a.ball_center, "ball centre")->default_val("0");
  trcheck->add_option("--radius", a.ball_radius, "ball is {x : v(x - centre) > radius}")->default_val(-1);
  trcheck->add_option("--c", a.c)->default_val("0");
  trcheck->add_option("--M", a.m)->default_val("1");
  trcheck->add_option("--H", a.h, "height for the prepared domain (parametrizing)")->default_val(8);
  trcheck->add_option("--budget", a.budget, "random sample pairs")->default_val(256);

  auto* catch_cmd = app.add_subcommand("catch", "catch graph points on curves of degree <= d");
  common(catch_cmd);
  pipeline(catch_cmd);
  catch_cmd->add_option("--H", a.h)->required()->check(CLI::PositiveNumber);

  auto* count = app.add_subcommand("count", "count points with certificate and oracle comparison");
  common(count);
  pipeline(count);
  count->add_option("--H", a.h)->required()->check(CLI::PositiveNumber);

  auto* scaling = app.add_subcommand("scaling", "counts against c' H^epsilon over several heights");
  common(scaling);
  pipeline(scaling);
  scaling->add_option("--H-list", a.h_list, "heights")->required()->delimiter(',');

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", a.suite)->required();
  verify->add_option("--N", a.n, "largest N (separation)")->default_val(2);
  verify->add_option("--H", a.h, "height bound")->default_val(32);
  verify->add_option("--trials", a.trials, "number of randomized trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Result res;
  try {
    bool have_p = false;
    for (auto* sub : app.get_subcommands()) have_p = sub->count("--p") > 0;
    if (constants->parsed()) {
      res = cmd_constants(a, have_p, constants_h->count() > 0);
    } else {
      padet::require_prime(a.p);
      if (census->parsed()) res = cmd_census(a);
      else if (trcheck->parsed()) res = cmd_trcheck(a);
      else if (catch_cmd->parsed()) res = cmd_catch(a);
      else if (count->parsed()) res = cmd_count(a);
      else if (scaling->parsed()) res = cmd_scaling(a);
      else res = cmd_verify(a, have_p);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const padet::Falsification& e) {
    res = {failure_json("falsification", e).dump(2) + "\n", kFinding};
  } catch (const padet::IndeterminateBound& e) {
    res = {failure_json("indeterminate_bound", e).dump(2) + "\n", kFinding};
  } catch (const padet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (a.out.empty()) {
    std::cout << res.text;
  } else {
    std::ofstream file(a.out);
    if (!file) {
      std::cerr << "error: cannot write '" << a.out << "'\n";
      return kUsage;
    }
    file << res.text;
  }
  return res.code;
}
