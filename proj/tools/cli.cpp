#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fthresh/constancy.hpp"
#include "fthresh/errors.hpp"
#include "fthresh/parse.hpp"
#include "verify.hpp"

namespace fthresh::cli {

namespace {

using nlohmann::ordered_json;

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json ideal_json(const Ideal& ideal) { return ordered_json::parse(ideal.to_json()); }

// Left-aligned columns, two spaces apart.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  }
  return out.str();
}

struct Context {
  RingPtr ring;
  Polynomial f;
};

RingPtr make_ring(const Command& cmd) {
  if (cmd.prime == 0) throw DomainError("--char is required");
  return Ring::make(Prime(cmd.prime), cmd.variables);
}

Context load(const Command& cmd) {
  RingPtr ring = make_ring(cmd);
  if (cmd.polynomial.empty()) throw DomainError("a polynomial is required");
  Polynomial f = parse_polynomial(cmd.polynomial, ring);
  return {ring, std::move(f)};
}

std::uint64_t bound_for(const Command& cmd, const Polynomial& f) {
  if (cmd.bound) {
    if (*cmd.bound == 0) throw DomainError("--bound must be positive");
    return *cmd.bound;
  }
  return default_bound(f).bound;
}

Ideal ideal_for(const Command& cmd, const RingPtr& ring) {
  if (!cmd.ideal) return Ideal::maximal(ring);
  return Ideal(ring, parse_generators(*cmd.ideal, ring));
}

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("window must look like lo:hi", 0);
  Window w;
  w.lo = Rational::parse(text.substr(0, colon));
  const std::string hi = text.substr(colon + 1);
  if (hi.empty()) {
    w.hi.reset();
  } else {
    w.hi = Rational::parse(hi);
  }
  return w;
}

std::string ms(std::chrono::nanoseconds d) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << std::chrono::duration<double, std::milli>(d).count() << " ms";
  return out.str();
}

Outcome do_fpt(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  if (!f.in_maximal_ideal()) throw DomainError("fpt needs f(0) = 0");
  const std::uint64_t bound = bound_for(cmd, f);
  TestIdealEngine engine(f, bound);
  const auto& report = engine.jumping_numbers();
  Outcome o;
  if (cmd.json) {
    ordered_json doc;
    doc["prime"] = cmd.prime;
    doc["poly"] = f.to_string();
    doc["bound"] = bound;
    doc["fpt"] = report.fpt->to_string();
    doc["elapsedMs"] = cmd.timing ? ordered_json(std::chrono::duration<double, std::milli>(report.elapsed).count())
                                  : ordered_json(nullptr);
    o.out = dump(doc);
  } else {
    o.out = report.fpt->to_string() + "\n";
    if (cmd.timing) o.err = "bound " + std::to_string(bound) + ", " + ms(report.elapsed) + "\n";
  }
  return o;
}

Outcome do_jn(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  const std::uint64_t bound = bound_for(cmd, f);
  TestIdealEngine engine(f, bound);
  const auto& report = engine.jumping_numbers();
  Outcome o;
  if (cmd.json) {
    o.out = report.to_json(cmd.timing) + "\n";
    return o;
  }
  std::vector<std::vector<std::string>> rows{{"lambda", "test ideal"}};
  for (std::size_t i = 0; i < report.jumping_numbers.size(); ++i) {
    rows.push_back({report.jumping_numbers[i].to_string(), report.test_ideals[i].to_string()});
  }
  std::ostringstream out;
  out << "f = " << f.to_string() << " over F_" << cmd.prime << ", B = " << bound << ", "
      << report.candidate_count << " candidates\n"
      << table(rows);
  if (report.fpt) out << "fpt = " << report.fpt->to_string() << '\n';
  if (cmd.timing) out << "elapsed " << ms(report.elapsed) << '\n';
  o.out = out.str();
  return o;
}

Outcome do_tau(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  if (!cmd.lambda) throw DomainError("--lambda is required");
  const Rational lambda = Rational::parse(*cmd.lambda);
  const std::uint64_t bound = bound_for(cmd, f);
  TestIdealEngine engine(f, bound);
  std::uint64_t s = 0;
  Ideal ideal = Ideal::unit(ring);
  if (cmd.left_limit) {
    ideal = engine.left_limit(lambda);
    s = lambda.is_zero() ? 0 : stabilization_exponent(lambda, bound, ring->prime());
  } else {
    const auto result = engine.test_ideal(lambda);
    ideal = result.ideal;
    s = result.stabilization_exponent;
  }
  Outcome o;
  if (cmd.json) {
    ordered_json doc;
    doc["prime"] = cmd.prime;
    doc["poly"] = f.to_string();
    doc["lambda"] = lambda.to_string();
    doc["bound"] = bound;
    doc["leftLimit"] = cmd.left_limit;
    doc["stabilizationExponent"] = s;
    doc["ideal"] = ideal_json(ideal);
    o.out = dump(doc);
  } else {
    o.out = ideal.to_string() + "\n";
  }
  return o;
}

Outcome do_nu(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  if (!cmd.e) throw DomainError("--e is required");
  const Ideal b = ideal_for(cmd, ring);
  const std::uint64_t value = nu(f, b, *cmd.e);
  Outcome o;
  if (cmd.json) {
    ordered_json doc;
    doc["prime"] = cmd.prime;
    doc["poly"] = f.to_string();
    doc["ideal"] = ideal_json(b);
    doc["e"] = *cmd.e;
    doc["nu"] = value;
    o.out = dump(doc);
  } else {
    o.out = std::to_string(value) + "\n";
  }
  return o;
}

Outcome do_ft(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  const Ideal b = ideal_for(cmd, ring);
  const std::uint64_t bound = bound_for(cmd, f);
  const Rational cap = cmd.cap ? Rational::parse(*cmd.cap) : Rational(static_cast<long>(ring->dimension()));
  const Rational value = f_threshold(f, b, bound, cap);
  Outcome o;
  if (cmd.json) {
    ordered_json doc;
    doc["prime"] = cmd.prime;
    doc["poly"] = f.to_string();
    doc["ideal"] = ideal_json(b);
    doc["bound"] = bound;
    doc["cap"] = cap.to_string();
    doc["ft"] = value.to_string();
    o.out = dump(doc);
  } else {
    o.out = value.to_string() + "\n";
  }
  return o;
}

Outcome do_candidates(const Command& cmd) {
  if (cmd.prime == 0) throw DomainError("--char is required");
  if (!cmd.bound) throw DomainError("--bound is required");
  const Window window = cmd.window ? parse_window(*cmd.window) : Window{};
  const CandidateSet set = candidate_set(Prime(cmd.prime), *cmd.bound, window);
  Outcome o;
  if (cmd.json) {
    ordered_json doc;
    doc["prime"] = cmd.prime;
    doc["bound"] = *cmd.bound;
    doc["window"] = window.to_string();
    doc["count"] = set.size();
    doc["candidates"] = ordered_json::parse(candidates_to_json(set));
    o.out = dump(doc);
  } else {
    std::string line;
    for (const auto& v : set.values) line += (line.empty() ? "" : ", ") + v.to_string();
    o.out = line + "\n";
  }
  return o;
}

Outcome do_profile(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  const SingularityProfile prof = singularity_profile(f);
  const BoundChoice choice = default_bound(f);
  Outcome o;
  if (cmd.json) {
    ordered_json doc;
    doc["prime"] = cmd.prime;
    doc["poly"] = f.to_string();
    doc["jacobian"] = ideal_json(prof.jacobian);
    doc["isIsolated"] = prof.is_isolated;
    doc["ell"] = prof.is_isolated ? ordered_json(prof.ell) : ordered_json(nullptr);
    doc["boundN"] = prof.bound_n ? ordered_json(prof.bound_n->get_str()) : ordered_json(nullptr);
    doc["boundM"] = prof.bound_m ? ordered_json(prof.bound_m->get_str()) : ordered_json(nullptr);
    doc["defaultBound"] = choice.bound;
    o.out = dump(doc);
    return o;
  }
  std::vector<std::vector<std::string>> rows{
      {"f", f.to_string()},
      {"Jac(f)", prof.jacobian.to_string()},
      {"isolated", prof.is_isolated ? "yes" : "no"},
  };
  if (prof.is_isolated) {
    rows.push_back({"ell", std::to_string(prof.ell)});
    rows.push_back({"N", prof.bound_n->get_str()});
    rows.push_back({"M", prof.bound_m->get_str()});
  }
  rows.push_back({"default B", std::to_string(choice.bound)});
  o.out = table(rows);
  return o;
}

Outcome do_constancy(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  ConstancyReport report = [&] {
    if (!cmd.perturbations.empty()) {
      if (!cmd.exponents.empty() && cmd.exponents.size() != cmd.perturbations.size()) {
        throw DomainError("--exponents must match --perturbation one to one");
      }
      std::vector<Perturbation> perts;
      for (std::size_t i = 0; i < cmd.perturbations.size(); ++i) {
        Polynomial h = parse_polynomial(cmd.perturbations[i], ring);
        const std::uint64_t k = cmd.exponents.empty() ? h.order() : cmd.exponents[i];
        perts.push_back({std::move(h), k, 0});
      }
      return constancy_report(f, perts, cmd.seed);
    }
    if (cmd.exponents.empty()) throw DomainError("--exponents is required");
    ConstancyOptions opts;
    opts.exponents = cmd.exponents;
    opts.samples = cmd.samples;
    opts.seed = cmd.seed;
    return constancy_report(f, opts);
  }();
  Outcome o;
  if (cmd.json) {
    o.out = report.to_json() + "\n";
  } else if (cmd.csv) {
    o.out = report.to_csv();
  } else {
    std::vector<std::vector<std::string>> rows{{"k", "sample", "fpt(f+h)", "gap", "n/k", "fpt=", "JN=", "tau=", "Jac="}};
    auto yn = [](bool b) { return std::string(b ? "yes" : "NO"); };
    for (const auto& r : report.records) {
      rows.push_back({std::to_string(r.perturbation.k), std::to_string(r.perturbation.sample), r.fpt_fh.to_string(),
                      r.fpt_gap.to_string(), r.gap_bound.to_string(), yn(r.fpt_equal), yn(r.jumping_numbers_equal),
                      yn(r.test_ideals_equal_locally), yn(r.jacobian_stable)});
    }
    std::ostringstream out;
    out << "f = " << f.to_string() << ", ell = " << report.profile.ell << ", N = " << report.profile.bound_n->get_str()
        << ", M = " << report.profile.bound_m->get_str() << ", seed = " << report.seed << '\n'
        << "fpt(f) = " << (report.records.empty() ? std::string("-") : report.records.front().fpt_f.to_string())
        << '\n'
        << table(rows) << "violations: " << report.violation_count() << '\n';
    o.out = out.str();
  }
  if (report.violation_count() > 0) o.exit_code = kCheckFailed;
  return o;
}

Outcome do_verify(const Command& cmd) {
  const auto [ring, f] = load(cmd);
  const std::uint64_t bound = bound_for(cmd, f);
  const auto checks = verify_invariants(f, bound);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  Outcome o;
  if (cmd.json) {
    ordered_json doc;
    doc["prime"] = cmd.prime;
    doc["poly"] = f.to_string();
    doc["bound"] = bound;
    auto& arr = doc["checks"] = ordered_json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    doc["passed"] = ok;
    o.out = dump(doc);
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : checks) rows.push_back({c.passed ? "PASS" : "FAIL", c.name, c.detail});
    o.out = table(rows);
  }
  o.exit_code = ok ? kOk : kCheckFailed;
  return o;
}

}  // namespace

Outcome execute(const Command& cmd) {
  try {
    if (cmd.subcommand == "fpt") return do_fpt(cmd);
    if (cmd.subcommand == "jn") return do_jn(cmd);
    if (cmd.subcommand == "tau") return do_tau(cmd);
    if (cmd.subcommand == "nu") return do_nu(cmd);
    if (cmd.subcommand == "ft") return do_ft(cmd);
    if (cmd.subcommand == "candidates") return do_candidates(cmd);
    if (cmd.subcommand == "profile") return do_profile(cmd);
    if (cmd.subcommand == "constancy") return do_constancy(cmd);
    if (cmd.subcommand == "verify") return do_verify(cmd);
    return {kParse, "", "unknown subcommand '" + cmd.subcommand + "'\n"};
  } catch (const ParseError& e) {
    return {kParse, "", std::string("parse error: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    return {kDomain, "", std::string("error: ") + e.what() + "\n"};
  } catch (const InfeasibleError& e) {
    return {kInfeasible, "", std::string("infeasible: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kInternal, "", std::string("internal error: ") + e.what() + "\n"};
  }
}

Outcome run(const std::vector<std::string>& args) {
  Command cmd;
  std::string input_file;
  std::vector<std::string> perturbation_files;

  CLI::App app{"F-pure thresholds, F-jumping numbers and test ideals over F_p", "fthresh"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_poly) {
    sub->add_option("--char", cmd.prime, "characteristic p")->required();
    sub->add_flag("--json", cmd.json, "emit one JSON document");
    sub->add_flag("--timing", cmd.timing, "include wall-clock timings");
    if (!needs_poly) return;
    sub->add_option("--vars", [&](const CLI::results_t& r) {
      cmd.variables = parse_variable_list(r.front());
      return true;
    }, "comma-separated variable names (default x,y)");
    sub->add_option("poly", cmd.polynomial, "polynomial, e.g. \"x^4 + y^3 + x^2*y^2\"");
    sub->add_option("--input-file", input_file, "read the polynomial from a file");
  };

  auto* fpt = app.add_subcommand("fpt", "F-pure threshold");
  common(fpt, true);
  fpt->add_option("--bound", cmd.bound, "bound B on jumping numbers in [0,1)");

  auto* jn = app.add_subcommand("jn", "F-jumping numbers in [0,1) and their test ideals");
  common(jn, true);
  jn->add_option("--bound", cmd.bound);

  auto* tau = app.add_subcommand("tau", "test ideal at one parameter");
  common(tau, true);
  tau->add_option("--lambda", cmd.lambda)->required();
  tau->add_option("--bound", cmd.bound);
  tau->add_flag("--left", cmd.left_limit, "left limit instead of the value");

  auto* nu_cmd = app.add_subcommand("nu", "max N with f^N outside b^[p^e]");
  common(nu_cmd, true);
  nu_cmd->add_option("--e", cmd.e)->required();
  nu_cmd->add_option("--ideal", cmd.ideal, "generators \"g1; g2\" (default: the maximal ideal)");

  auto* ft = app.add_subcommand("ft", "F-threshold of f with respect to an ideal");
  common(ft, true);
  ft->add_option("--ideal", cmd.ideal);
  ft->add_option("--bound", cmd.bound);
  ft->add_option("--cap", cmd.cap, "search limit (default: number of variables)");

  auto* cand = app.add_subcommand("candidates", "candidate jumping numbers");
  common(cand, false);
  cand->add_option("--bound", cmd.bound)->required();
  cand->add_option("--window", cmd.window, "lo:hi (default 0:1)");

  auto* prof = app.add_subcommand("profile", "Jacobian length and perturbation exponents");
  common(prof, true);

  auto* cons = app.add_subcommand("constancy", "compare f with perturbations f+h");
  common(cons, true);
  cons->add_option("--exponents", cmd.exponents, "k values, h in m^k")->delimiter(',');
  cons->add_option("--samples", cmd.samples);
  cons->add_option("--seed", cmd.seed);
  cons->add_option("--perturbation", cmd.perturbations, "explicit h (repeatable)");
  cons->add_option("--perturbation-file", perturbation_files, "explicit h read from a file (repeatable)");
  cons->add_flag("--csv", cmd.csv);

  auto* ver = app.add_subcommand("verify", "run the invariant suite on f");
  common(ver, true);
  ver->add_option("--bound", cmd.bound);

  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {code == 0 ? kOk : kParse, out.str(), err.str()};
  } catch (const fthresh::Error& e) {  // --vars callback
    return {kParse, "", std::string("parse error: ") + e.what() + "\n"};
  }
  cmd.subcommand = app.get_subcommands().front()->get_name();

  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  try {
    if (!input_file.empty()) {
      if (!cmd.polynomial.empty()) throw DomainError("give the polynomial inline or with --input-file, not both");
      cmd.polynomial = slurp(input_file);
    }
    for (const auto& path : perturbation_files) cmd.perturbations.push_back(slurp(path));
  } catch (const DomainError& e) {
    return {kDomain, "", std::string("error: ") + e.what() + "\n"};
  }
  return execute(cmd);
}

}  // namespace fthresh::cli
