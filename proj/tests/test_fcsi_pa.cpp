#include <gtest/gtest.h>

#include "jrjs/fcsi_pa.hpp"
#include "jrjs/oracle.hpp"
#include "support.hpp"

using namespace jrjs;

namespace {

void expect_valid(const FcsiCandidateInput& in, const PowerAllocation& a) {
  EXPECT_GE(a.p_s, 0.0);
  EXPECT_GE(a.p_r, 0.0);
  EXPECT_GE(a.p_z, 0.0);
  EXPECT_NEAR(a.total(), in.p_total, 1e-9 * in.p_total);
  EXPECT_GE(std::log2(1 + in.h_sr_sq * a.p_s / in.noise), in.rd - 1e-9);
  EXPECT_NEAR(in.h_sr_sq * a.p_s, in.h_rd_sq * a.p_r, 1e-9 * in.h_sr_sq * a.p_s);
}

}  // namespace

TEST(Bounds, Examples) {
  FcsiCandidateInput in{1.3, 0.6, 0, 0, 0, 10, 1, 0};
  auto b = bounds(in);
  EXPECT_EQ(b.p_b1, 0.0);
  EXPECT_EQ(b.p_b3, 0.0);
  in = {0.8, 0.8, 0, 0, 0, 10, 1, 2};
  b = bounds(in);
  EXPECT_DOUBLE_EQ(b.p_b2, 5.0);
  EXPECT_DOUBLE_EQ(b.p_b4, 5.0);
  in = {2, 1, 0, 0, 0, 10, 1, 1};
  EXPECT_DOUBLE_EQ(bounds(in).p_b1, 0.5);
}

TEST(Bounds, ZeroGainThrows) {
  try {
    bounds(FcsiCandidateInput{0, 1, 0, 0, 0, 1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateChannel);
  }
}

TEST(Feasible, Examples) {
  EXPECT_TRUE(feasible(FcsiCandidateInput{1e-6, 3, 0, 0, 0, 1, 1, 0}));
  EXPECT_FALSE(feasible(FcsiCandidateInput{5, 5, 0, 0, 0, 25.1, 1, 60}));
  // P_b1 = P_b2: hsr = 1, hrd = 1, P = 2 -> P_b2 = 1; rd = 1 -> P_b1 = 1
  EXPECT_TRUE(feasible(FcsiCandidateInput{1, 1, 0, 0, 0, 2, 1, 1}));
  EXPECT_FALSE(feasible(FcsiCandidateInput{1, 1, 0, 0, 0, 2 - 1e-9, 1, 1}));
  EXPECT_FALSE(feasible(FcsiCandidateInput{0, 1, 0, 0, 0, 2, 1, 0}));
}

TEST(FcsiAllocate, InfeasibleThrows) {
  try {
    fcsi_allocate({0.1, 0.1, 1, 1, 1, 1, 1, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleRate);
  }
}

TEST(FcsiAllocate, SymmetricGains) {
  const FcsiCandidateInput in{1.7, 1.7, 0.4, 0.3, 0.2, 25.1, 1, 2};
  const auto r = fcsi_allocate(in);
  EXPECT_NEAR(r.allocation.p_s, r.allocation.p_r, 1e-12 * in.p_total);
  EXPECT_NEAR(r.source_max.value, r.relay_max.value, 1e-12 * r.source_max.value);
  expect_valid(in, r.allocation);
}

TEST(FcsiAllocate, ZeroLeakageMatchesLineOracle) {
  const FcsiCandidateInput in{2.2, 0.9, 0.3, 0.6, 0.0, 25.12, 1, 1};
  const auto r = fcsi_allocate(in);
  const auto o = oracle::restricted_line_search(in);
  EXPECT_NEAR(r.allocation.p_s, o.p_s, 1e-6 * in.p_total);
  EXPECT_NEAR(r.objective, o.value, 1e-6 * o.value);
  expect_valid(in, r.allocation);
}

TEST(FcsiAllocate, RandomInstancesAgainstOracles) {
  Rng rng(31);
  const auto p = testsupport::default_params();
  int done = 0;
  while (done < 150) {
    const auto cv = testsupport::random_candidate(rng, p);
    if (!cv) continue;
    const auto in = fcsi_input(*cv, p);
    const auto r = fcsi_allocate(in);
    expect_valid(in, r.allocation);
    EXPECT_NEAR(r.objective, fcsi_objective(in, r.allocation.p_s, r.allocation.p_r), 1e-12 * r.objective);
    const auto line = oracle::restricted_line_search(in);
    EXPECT_LE(std::abs(r.objective - line.value), 1e-6 * line.value);
    const auto tri = oracle::grid_search_triangle(in);
    EXPECT_LE(r.objective, tri.value + 1e-9 * std::max(1.0, tri.value));
    ++done;
  }
}

TEST(FcsiAllocate, LinesComparedTiesToSource) {
  const FcsiCandidateInput in{1.0, 1.0, 0.2, 0.2, 0.5, 10, 1, 1};
  EXPECT_EQ(fcsi_allocate(in).line, AllocationLine::Source);
}

TEST(LineProblems, AgreeWithObjectiveOnTheLines) {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0.05, 3);
  for (int t = 0; t < 500; ++t) {
    const FcsiCandidateInput in{u(rng), u(rng), u(rng), u(rng), u(rng), 25.12, 1, 0};
    const auto lp = fcsi_line_problems(in);
    const auto b = bounds(in);
    const double k = in.h_sr_sq / in.h_rd_sq;
    for (double f : {0.1, 0.5, 0.9}) {
      const double ps = b.p_b2 * f, pr = b.p_b4 * f;
      const double src = fcsi_objective(in, ps, k * ps);
      const double rel = fcsi_objective(in, pr / k, pr);
      EXPECT_NEAR(evaluate(lp.source_line, ps), src, 1e-10 * src);
      EXPECT_NEAR(evaluate(lp.relay_line, pr), rel, 1e-10 * rel);
    }
  }
}
