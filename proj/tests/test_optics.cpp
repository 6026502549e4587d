#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "povatlas/errors.hpp"
#include "povatlas/optics.hpp"

using namespace povatlas;

TEST_CASE("projection geometry") {
  Pose pose{0, 0, 0};

  auto ahead = project_source(pose, {2.0, 0.0});
  REQUIRE(ahead.has_value());
  CHECK(ahead->p_l == doctest::Approx(0.0));
  CHECK(ahead->d_l == doctest::Approx(2.0));

  // 45 degrees off axis projects to tan(45) = 1 at focal length 1
  auto diag = project_source(pose, {1.0, 1.0});
  REQUIRE(diag.has_value());
  CHECK(diag->p_l == doctest::Approx(1.0));
  CHECK(diag->d_l == doctest::Approx(std::sqrt(2.0)));

  CHECK_FALSE(project_source(pose, {-1.0, 0.5}).has_value());  // behind the lens
  CHECK_FALSE(project_source(pose, {0.0, 1.0}).has_value());   // in the lens plane
}

TEST_CASE("projection follows the sensor frame") {
  // sensor at (1, 1) looking along +y: a source straight ahead projects to 0
  Pose pose{1.0, 1.0, M_PI / 2};
  auto p = project_source(pose, {1.0, 3.0});
  REQUIRE(p.has_value());
  CHECK(p->p_l == doctest::Approx(0.0));
  CHECK(p->d_l == doctest::Approx(2.0));

  // source to the left of the axis keeps a signed image position
  auto q = project_source(pose, {0.5, 2.0});
  REQUIRE(q.has_value());
  CHECK(q->p_l == doctest::Approx(0.5));
}

TEST_CASE("source on the lens center is degenerate") {
  CHECK_THROWS_AS(project_source(Pose{0, 0, 0}, {0.0, 0.0}), DegenerateSource);
}

TEST_CASE("intensity formula and superposition") {
  Retina retina{{-0.4, 0.0, 0.7}};
  Pose pose{0, 0, 0};
  std::vector<Eigen::Vector2d> a = {{2.0, 0.0}};
  std::vector<Eigen::Vector2d> b = {{1.0, 1.0}};

  SensoryState sa = sense(retina, pose, a);
  REQUIRE(sa.size() == 3);
  for (int r = 0; r < 3; ++r) {
    double expected = std::exp(-retina.receptors[static_cast<std::size_t>(r)] *
                               retina.receptors[static_cast<std::size_t>(r)]) /
                      2.0;
    CHECK(sa[r] == doctest::Approx(expected));
  }

  SensoryState sb = sense(retina, pose, b);
  std::vector<Eigen::Vector2d> both = {{2.0, 0.0}, {1.0, 1.0}};
  SensoryState sboth = sense(retina, pose, both);
  for (int r = 0; r < 3; ++r) CHECK(sboth[r] == doctest::Approx(sa[r] + sb[r]));
}

TEST_CASE("invisible sources contribute nothing") {
  Retina retina{{0.0, 0.25}};
  Pose pose{0, 0, 0};
  std::vector<Eigen::Vector2d> front = {{1.5, 0.2}};
  std::vector<Eigen::Vector2d> with_back = {{1.5, 0.2}, {-3.0, 0.0}};
  SensoryState s1 = sense(retina, pose, front);
  SensoryState s2 = sense(retina, pose, with_back);
  for (int r = 0; r < 2; ++r) CHECK(s1[r] == s2[r]);
}

TEST_CASE("sensory state depends only on relative geometry") {
  Retina retina{{-0.3, 0.1, 0.5, -0.05}};
  Pose pose{0.4, -0.2, 0.3};
  std::vector<Eigen::Vector2d> sources = {{2.0, 0.5}, {1.5, -1.0}, {3.0, 0.0}};
  SensoryState s0 = sense(retina, pose, sources);

  // rotate and translate everything rigidly
  double rot = 1.1;
  Eigen::Vector2d shift(-0.7, 2.3);
  Eigen::Rotation2Dd R(rot);
  Pose moved{(R * Eigen::Vector2d(pose.x, pose.y) + shift).x(),
             (R * Eigen::Vector2d(pose.x, pose.y) + shift).y(), pose.alpha + rot};
  std::vector<Eigen::Vector2d> moved_sources;
  for (const auto& s : sources) moved_sources.push_back(R * s + shift);

  SensoryState s1 = sense(retina, moved, moved_sources);
  for (int r = 0; r < 4; ++r) CHECK(s1[r] == doctest::Approx(s0[r]).epsilon(1e-12));
}
