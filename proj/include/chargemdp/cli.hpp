#pragma once

// Command-line front end. Exit codes: 0 success, 1 failed verification or
// evaluation error, 2 bad input (usage, parse or validation errors).

#include "chargemdp/blackwell.hpp"
#include "chargemdp/cases.hpp"
#include "chargemdp/charge.hpp"
#include "chargemdp/expr.hpp"
#include "chargemdp/mdp_io.hpp"
#include "chargemdp/search.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace chargemdp::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kBadInput = 2;

namespace detail {

class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto with_context(const std::string& what, F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline Mdp load_mdp(const std::string& path) {
  auto mdp = with_context(path, [&] { return parse_mdp(read_file(path)); });
  auto issues = validate(mdp);
  if (!issues.empty()) throw InputError(path + ": " + InvalidMdp(issues).what());
  return mdp;
}

inline void print_value(std::ostream& out, const CValue& v, const Charge& mu, const RationalStream& f) {
  out << v.str() << "\n";
  if (!v.is_exact()) out << "# cycle-mean selection: " << to_string(integrate_cycle_mean(mu, f)) << "\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact evaluation of finite MDPs under finitely additive aggregation charges", "chargemdp"};
  app.require_subcommand(1);

  std::string set_expr, charge_expr, stream_expr, mdp_path, strategy_path;
  std::uint64_t horizon = kDefaultHorizon;
  std::size_t max_period = 1, max_preperiod = 0, top = 10;
  cases::SuiteOptions suite;

  auto* density = app.add_subcommand("density", "Natural density of a set expression");
  density->add_option("set", set_expr, "set expression")->required();

  auto* charge_eval = app.add_subcommand("charge-eval", "Charge of a set");
  charge_eval->add_option("charge", charge_expr, "charge expression")->required();
  charge_eval->add_option("set", set_expr, "set expression")->required();

  auto* integ = app.add_subcommand("integrate", "Integral of a stream against a charge");
  integ->add_option("charge", charge_expr, "charge expression")->required();
  integ->add_option("stream", stream_expr, "stream([pre...];[cycle...])")->required();

  auto* mdp_eval = app.add_subcommand("mdp-eval", "Payoff of a strategy");
  mdp_eval->add_option("--mdp", mdp_path, "MDP file")->required();
  mdp_eval->add_option("--strategy", strategy_path, "strategy file")->required();
  mdp_eval->add_option("--charge", charge_expr, "charge expression")->required();
  mdp_eval->add_option("--horizon", horizon, "stages searched for a recurrence")->check(CLI::PositiveNumber);

  auto* blackwell = app.add_subcommand("blackwell", "Blackwell-optimal pure stationary policy");
  blackwell->add_option("--mdp", mdp_path, "MDP file")->required();

  auto* search = app.add_subcommand("search", "Best pure periodic Markov strategy within bounds");
  search->add_option("--mdp", mdp_path, "MDP file")->required();
  search->add_option("--charge", charge_expr, "charge expression")->required();
  search->add_option("--max-period", max_period, "largest period")->required()->check(CLI::PositiveNumber);
  search->add_option("--max-preperiod", max_preperiod, "largest preperiod")->required();
  search->add_option("--top", top, "ranking entries to print");
  search->add_option("--horizon", horizon, "stages searched for a recurrence")->check(CLI::PositiveNumber);

  auto* paper = app.add_subcommand("paper", "Reference counterexamples");
  paper->require_subcommand(1);
  auto* verify_all = paper->add_subcommand("verify-all", "Run every reference verification");
  verify_all->add_option("--nmax", suite.n_max, "largest n for the sigma_n and B^n families")
      ->check(CLI::Range(1u, 62u));
  verify_all->add_option("--sweep-period", suite.sweep_period, "period bound of the exhaustive sweep")
      ->check(CLI::PositiveNumber);
  verify_all->add_option("--sweep-preperiod", suite.sweep_preperiod, "preperiod bound of the exhaustive sweep");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (*density) {
      auto s = detail::with_context("set", [&] { return parse_set(set_expr); });
      out << to_string(s.density()) << "\n";
    } else if (*charge_eval) {
      auto mu = detail::with_context("charge", [&] { return parse_charge(charge_expr); });
      auto s = detail::with_context("set", [&] { return parse_set(set_expr); });
      auto f = RationalStream::indicator(s);
      detail::print_value(out, integrate(mu, f), mu, f);
    } else if (*integ) {
      auto mu = detail::with_context("charge", [&] { return parse_charge(charge_expr); });
      auto f = detail::with_context("stream", [&] { return parse_stream(stream_expr); });
      detail::print_value(out, integrate(mu, f), mu, f);
    } else if (*mdp_eval) {
      auto mdp = detail::load_mdp(mdp_path);
      auto strategy = detail::with_context(strategy_path, [&] { return parse_strategy(detail::read_file(strategy_path), mdp); });
      auto mu = detail::with_context("charge", [&] { return parse_charge(charge_expr); });
      auto f = std::visit([&](const auto& s) { return expected_reward_stream(mdp, s, horizon); }, strategy);
      detail::print_value(out, integrate(mu, f), mu, f);
    } else if (*blackwell) {
      auto mdp = detail::load_mdp(mdp_path);
      auto pi = blackwell_policy(mdp);
      out << "policy: " << to_text(mdp, pi) << "\n";
      auto v = discounted_value(mdp, pi);
      auto g = average_value(mdp, pi);
      for (std::size_t s = 0; s < mdp.num_states(); ++s)
        out << "state " << mdp.states[s] << ": discounted " << v[s].str() << "  average " << to_string(g[s]) << "\n";
    } else if (*search) {
      auto mdp = detail::load_mdp(mdp_path);
      auto mu = detail::with_context("charge", [&] { return parse_charge(charge_expr); });
      auto result = best_periodic(mdp, mu, max_period, max_preperiod, kDefaultSearchBudget, horizon);
      const auto& best = result.best();
      out << "best: " << to_text(mdp, best.strategy.to_strategy(mdp)) << "  value " << best.value.str() << "\n";
      out << "evaluated " << result.ranking.size() << " strategies\n";
      for (std::size_t i = 0; i < std::min(top, result.ranking.size()); ++i) {
        const auto& r = result.ranking[i];
        out << "rank " << (i + 1) << ": " << r.value.str() << "  " << to_text(mdp, r.strategy.to_strategy(mdp)) << "\n";
      }
    } else if (*verify_all) {
      auto reports = cases::verify_all(suite);
      bool ok = true;
      for (const auto& r : reports) {
        cases::write_table(out, r);
        ok = ok && r.passed();
      }
      for (const auto& r : reports) cases::write_machine_lines(out, r);
      out << (ok ? "all cases pass" : "SOME CASES FAIL") << "\n";
      return ok ? kOk : kFailed;
    }
  } catch (const detail::InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}

}  // namespace chargemdp::cli
