#include "polygeo/path_straighten.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "polygeo/geodesic.hpp"
#include "support.hpp"

using namespace polygeo;
using namespace polygeo::testing;

namespace {
const MetricSpec kS2{2, MetricVariant::ScaleInvariant};

double gnorm(const DiscreteCurve& c, const TangentField& v,
             const MetricSpec& spec) {
  return std::sqrt(gm_inner(c, v, v, spec));
}
}  // namespace

TEST(PathEnergyGradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(151);
  const DiscreteCurve c0 = random_curve(rng, 4, 2);
  const DiscreteCurve c1 =
      DiscreteCurve(c0.vertices() + 0.1 * random_field(rng, c0).components);
  const detail::PathEnergy problem(c0, c1, kS2, 3);

  Eigen::VectorXd x(problem.dof());
  for (int t = 1; t <= 3; ++t) {
    const double s = t / 4.0;
    Eigen::Map<Eigen::MatrixXd>(x.data() + (t - 1) * 8, 2, 4) =
        (1.0 - s) * c0.vertices() + s * c1.vertices();
  }
  const Eigen::VectorXd g = problem.gradient(x);
  const double step = 1e-6;
  for (int p = 0; p < x.size(); ++p) {
    Eigen::VectorXd xp = x, xm = x;
    xp[p] += step;
    xm[p] -= step;
    const double fd = (*problem.energy(xp) - *problem.energy(xm)) / (2 * step);
    EXPECT_NEAR(g[p], fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(LogMap, EqualEndpointsGiveConstantPath) {
  std::mt19937_64 rng(157);
  const DiscreteCurve c = random_curve(rng, 5, 2);
  const BvpResult res = log_map(c, c, kS2, {.interior_frames = 6});
  EXPECT_LE(res.final_energy, 1e-20);
  EXPECT_LE(res.initial_velocity.components.cwiseAbs().maxCoeff(), 1e-12);
  for (const DiscreteCurve& f : res.path.frames)
    EXPECT_LE(max_vertex_distance(f, c), 1e-12);
  EXPECT_EQ(res.restarts, 0);
}

TEST(LogMap, RoundtripRecoversSmallVelocity) {
  std::mt19937_64 rng(163);
  const DiscreteCurve c0 = right_triangle();
  TangentField v = random_field(rng, c0);
  v.components *= 0.08 / gnorm(c0, v, kS2);

  const CurvePath shot = exp_map(c0, v, kS2, {.steps = 200});
  const BvpResult res = log_map(c0, shot.endpoint(), kS2, {.interior_frames = 20});

  TangentField diff{res.initial_velocity.components - v.components};
  EXPECT_LE(gnorm(c0, diff, kS2) / gnorm(c0, v, kS2), 1e-3);
}

TEST(LogMap, EnergyTraceIsMonotone) {
  std::mt19937_64 rng(167);
  const DiscreteCurve c0 = random_curve(rng, 4, 2);
  const DiscreteCurve c1 =
      DiscreteCurve(c0.vertices() + 0.2 * random_field(rng, c0).components);
  const BvpResult res = log_map(c0, c1, kS2, {.interior_frames = 10});
  for (size_t i = 1; i < res.energy_trace.size(); ++i)
    EXPECT_LE(res.energy_trace[i], res.energy_trace[i - 1] * (1.0 + 1e-15));
  EXPECT_GT(res.energy_trace.size(), 1u);
}

TEST(LogMap, OptimizedPathIsNearConstantSpeed) {
  std::mt19937_64 rng(173);
  const DiscreteCurve c0 = random_curve(rng, 4, 2);
  const DiscreteCurve c1 =
      DiscreteCurve(c0.vertices() + 0.3 * random_field(rng, c0).components);
  const BvpResult res = log_map(c0, c1, kS2, {.interior_frames = 12});
  const double L = path_length(res.path, kS2);
  const double E = res.final_energy;
  EXPECT_LE(L * L, E * (1.0 + 1e-12));
  EXPECT_LE(E, L * L * 1.02);
}

TEST(LogMap, TranslatedEndpointsBeatLinearInterpolation) {
  const DiscreteCurve c0 = unit_square();
  const Eigen::Vector2d u(0.8, 0.3);
  const DiscreteCurve c1 = DiscreteCurve(c0.vertices().colwise() + u);
  const BvpResult res = log_map(c0, c1, kS2, {.interior_frames = 10});

  // Energy of the straight-line path with the same frame count.
  std::vector<DiscreteCurve> lin;
  for (int t = 0; t <= 11; ++t)
    lin.push_back(
        DiscreteCurve(c0.vertices().colwise() + (t / 11.0 * u).eval()));
  const double e_lin = path_energy(make_path(std::move(lin)), kS2);
  EXPECT_LE(res.final_energy, e_lin * (1.0 + 1e-12));

  // The recovered velocity points roughly along the translation.
  const Eigen::VectorXd mean_v = res.initial_velocity.components.rowwise().mean();
  EXPECT_GT(mean_v.dot(u) / (mean_v.norm() * u.norm()), 0.95);
}

TEST(LogMap, ValidatesInputs) {
  const DiscreteCurve a = unit_square();
  const DiscreteCurve b = right_triangle();
  EXPECT_THROW(log_map(a, b, kS2), ValidationError);
}
