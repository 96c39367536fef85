#include "chargemdp/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = chargemdp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CHARGEMDP_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, Density) {
  auto r = run({"density", "odds"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1/2\n");
  EXPECT_EQ(run({"density", "nat"}).out, "1\n");
}

TEST(Cli, ChargeEvalAndIntegrate) {
  EXPECT_EQ(run({"charge-eval", "dyadiclimit", "multiples(8)"}).out, "1\n");
  EXPECT_EQ(run({"charge-eval", "restrict(frequency, odds)", "ap(3,4)"}).out, "1/2\n");
  EXPECT_EQ(run({"integrate", "geometric(1/2)", "stream([0];[3/2])"}).out, "3/4\n");
}

TEST(Cli, MdpEval) {
  auto r = run({"mdp-eval", "--mdp", data("even_or_odd.mdp"), "--strategy", data("sigma3.strategy"), "--charge",
                "mix(1/2: restrict(frequency, odds), 1/2: dyadiclimit)"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "7/8\n");
  r = run({"mdp-eval", "--mdp", data("delayed_switch.mdp"), "--strategy", data("switch_at_1.strategy"), "--charge",
           "mix(1/2: geometric(1/2), 1/2: frequency)"});
  EXPECT_EQ(r.out, "9/8\n");
  // the sigma_3 stream needs 8 stages
  r = run({"mdp-eval", "--mdp", data("even_or_odd.mdp"), "--strategy", data("sigma3.strategy"), "--charge",
           "frequency", "--horizon", "4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("recurrence"), std::string::npos);
}

TEST(Cli, Blackwell) {
  auto r = run({"blackwell", "--mdp", data("delayed_switch.mdp")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("policy: stationary { 1: B 2: stay }"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("state 1: discounted"), std::string::npos);
  EXPECT_NE(r.out.find("average 3/2"), std::string::npos);
  r = run({"blackwell", "--mdp", data("even_or_odd.mdp")});
  EXPECT_NE(r.out.find("policy: stationary { 1: T"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("state 1: discounted (-1)/(-1 + 1*b^2)  average 1/2"), std::string::npos) << r.out;
}

TEST(Cli, Search) {
  auto r = run({"search", "--mdp", data("even_or_odd.mdp"), "--charge",
                "mix(1/2: restrict(frequency, odds), 1/2: dyadiclimit)", "--max-period", "8", "--max-preperiod", "0",
                "--top", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("best: periodic preperiod=0 period=8 { phase 7 state 1: B }  value 7/8"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("rank 3:"), std::string::npos);
  EXPECT_EQ(r.out.find("rank 4:"), std::string::npos);
  r = run({"search", "--mdp", data("even_or_odd.mdp"), "--charge", "frequency", "--max-period", "30",
           "--max-preperiod", "30"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, VerifyAll) {
  auto r = run({"paper", "verify-all", "--nmax", "6", "--sweep-period", "4", "--sweep-preperiod", "4"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("CASE sigma-family.1 EXPECT 1 GOT 1 PASS"), std::string::npos);
  EXPECT_EQ(r.out.find(" FAIL\n"), std::string::npos);
  EXPECT_NE(r.out.find("all cases pass"), std::string::npos);
}

TEST(Cli, InputErrorsExitWithTwo) {
  auto r = run({"density", "odds &"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 1, column 7"), std::string::npos) << r.err;
  EXPECT_EQ(run({"charge-eval", "geometric(2)", "odds"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"density", "odds", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"blackwell", "--mdp", data("missing.mdp")}).code, 2);
  EXPECT_EQ(run({"mdp-eval", "--mdp", data("even_or_odd.mdp"), "--strategy", data("even_or_odd.mdp"), "--charge",
                 "frequency"})
                .code,
            2);
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args = {"search", "--mdp", data("delayed_switch.mdp"), "--charge",
                                   "mix(1/2: geometric(1/2), 1/2: frequency)", "--max-period", "2",
                                   "--max-preperiod", "3"};
  EXPECT_EQ(run(args).out, run(args).out);
}
