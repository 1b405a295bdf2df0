#include "polygeo/path.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace polygeo;
using namespace polygeo::testing;

namespace {

CurvePath translation_path(const DiscreteCurve& c, const Eigen::VectorXd& v,
                           int steps) {
  std::vector<DiscreteCurve> frames;
  for (int t = 0; t <= steps; ++t) {
    const double s = static_cast<double>(t) / steps;
    frames.push_back(DiscreteCurve(c.vertices().colwise() + (s * v).eval()));
  }
  return make_path(std::move(frames));
}

}  // namespace

TEST(PathLength, ConstantPathIsZero) {
  const DiscreteCurve c = unit_square();
  const CurvePath p = make_path({c, c, c, c});
  const MetricSpec spec{2, MetricVariant::ScaleInvariant};
  EXPECT_DOUBLE_EQ(path_length(p, spec), 0.0);
  EXPECT_DOUBLE_EQ(path_energy(p, spec), 0.0);
  for (double s : geodesic_speed_profile(p, spec)) EXPECT_DOUBLE_EQ(s, 0.0);
}

TEST(PathLength, TranslationClosedForm) {
  const DiscreteCurve c = unit_square();
  const Eigen::Vector2d v(1.0, 0.0);
  const CurvePath p = translation_path(c, v, 16);
  // The metric is constant along a translation: L = sqrt(sum |v|^2 mu / l^3)
  // = sqrt(4/64) = 0.25 for any order >= 1.
  for (int m = 1; m <= 3; ++m) {
    const MetricSpec spec{m, MetricVariant::ScaleInvariant};
    EXPECT_NEAR(path_length(p, spec), 0.25, 1e-13);
  }
}

TEST(PathLength, TranslationHasExactlyConstantProfile) {
  std::mt19937_64 rng(67);
  const DiscreteCurve c = random_curve(rng, 7, 2);
  const CurvePath p = translation_path(c, random_vector(rng, 2), 20);
  const MetricSpec spec{2, MetricVariant::ScaleInvariant};
  const std::vector<double> speeds = geodesic_speed_profile(p, spec);
  for (double s : speeds) EXPECT_NEAR(s, speeds.front(), 1e-13 * speeds.front());
}

TEST(PathLength, CauchySchwarz) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const DiscreteCurve a = random_curve(rng, 6, 2);
    // Random nearby frames; skip trials where a midpoint degenerates.
    std::vector<DiscreteCurve> frames{a};
    try {
      for (int t = 0; t < 8; ++t)
        frames.push_back(DiscreteCurve(frames.back().vertices() +
                                    0.05 * random_field(rng, a).components));
      const CurvePath p = make_path(std::move(frames));
      const MetricSpec spec{trial % 4, MetricVariant::ScaleInvariant};
      const double L = path_length(p, spec), E = path_energy(p, spec);
      EXPECT_LE(L * L, E * (1.0 + 1e-12));
    } catch (const DegenerateCurve&) {
      continue;
    }
  }
}

TEST(PathLength, DegenerateMidpointThrows) {
  // Two regular frames whose vertex-wise midpoint pinches vertex 0 onto
  // vertex 1.
  const DiscreteCurve a = make_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const DiscreteCurve b = make_curve({{2, 0}, {1, 0}, {1, 1}, {0, 1}});
  const CurvePath p = make_path({a, b});
  EXPECT_THROW(path_length(p, {2, MetricVariant::ScaleInvariant}),
               DegenerateCurve);
}

TEST(MakePath, ValidatesFrames) {
  const DiscreteCurve a = unit_square();
  EXPECT_THROW(make_path({a}), ValidationError);
  const DiscreteCurve b = right_triangle();
  EXPECT_THROW(make_path({a, b}), ValidationError);
}
