// Copyright 2026 The otlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "otlab/measure.hpp"

#include <cmath>

#include "doctest.h"
#include "otlab/error.hpp"
#include "otlab/point.hpp"
#include "otlab/rational.hpp"

using namespace otlab;

TEST_CASE("point ordering, equality, and distances") {
  Point a{0.0, 0.0}, b{3.0, 4.0};
  CHECK(dist(a, b) == 5.0);
  CHECK(dist2(a, b) == 25.0);
  CHECK(a < b);
  CHECK(a == (Point{0.0, 0.0}));
  // Negative zero must collapse so merged atoms compare equal.
  Point z{-0.0};
  z.normalize();
  CHECK(z == (Point{0.0}));
}

TEST_CASE("make_discrete normalizes total mass to one") {
  DiscreteMeasure m = make_discrete({{{0.0}}}, std::vector<double>{2.0});
  REQUIRE(m.size() == 1);
  CHECK(m.atom(0).w == Rat(1));
  CHECK(m.atom(0).wd == 1.0);
}

TEST_CASE("make_discrete merges duplicate points exactly") {
  DiscreteMeasure m =
      make_discrete({{{0.0}}, {{0.0}}}, std::vector<double>{0.3, 0.7});
  REQUIRE(m.size() == 1);
  CHECK(m.atom(0).p == (Point{0.0}));
  CHECK(m.atom(0).w == Rat(1));
}

TEST_CASE("make_discrete splits equal weights over distinct points") {
  DiscreteMeasure m =
      make_discrete({{{0.0, 0.0}}, {{1.0, 1.0}}}, std::vector<double>{1.0, 1.0});
  REQUIRE(m.size() == 2);
  CHECK(m.atom(0).w == Rat(1, 2));
  CHECK(m.atom(1).w == Rat(1, 2));
  CHECK(m.dim() == 2);
}

TEST_CASE("make_discrete rejects bad input") {
  CHECK_THROWS_AS(make_discrete({}, std::vector<double>{}), ConfigError);
  CHECK_THROWS_AS(make_discrete({{{0.0}}}, std::vector<double>{-1.0}), ConfigError);
  CHECK_THROWS_AS(make_discrete({{{0.0}}, {{1.0}}}, std::vector<double>{1.0}), ConfigError);
  CHECK_THROWS_AS(make_discrete({{{0.0}}, {{1.0, 2.0}}}, std::vector<double>{1.0, 1.0}),
                  ConfigError);
  CHECK_THROWS_AS(make_discrete({{{0.0}}}, std::vector<double>{0.0}), ConfigError);
}

TEST_CASE("construction is idempotent on an already-normalized measure") {
  DiscreteMeasure m =
      make_discrete({{{2.0}}, {{-1.0}}, {{0.5}}}, std::vector<double>{3.0, 1.0, 2.0});
  std::vector<Point> pts;
  std::vector<Rat> ws;
  for (const Atom& a : m.atoms()) {
    pts.push_back(a.p);
    ws.push_back(a.w);
  }
  CHECK(make_discrete(pts, ws) == m);
}

TEST_CASE("find and mass_in_box") {
  DiscreteMeasure m =
      make_discrete({{{0.0}}, {{1.0}}, {{2.0}}}, std::vector<double>{1.0, 1.0, 2.0});
  REQUIRE(m.find(Point{1.0}).has_value());
  CHECK(*m.find(Point{1.0}) == 1);
  CHECK(!m.find(Point{3.0}).has_value());
  // Half-open box [0, 2) catches the first two atoms only.
  CHECK(m.mass_in_box(Point{0.0}, Point{2.0}) == Rat(1, 2));
  CHECK(m.mass_in_box(Point{0.0}, Point{3.0}) == Rat(1));
}

TEST_CASE("pushforward under the identity map returns the measure itself") {
  DiscreteMeasure m =
      make_discrete({{{0.25}}, {{1.5}}, {{-2.0}}}, std::vector<double>{1.0, 2.0, 1.0});
  CHECK(pushforward(m, identity_map(m)) == m);
}

TEST_CASE("pushforward collapses mass under a constant map") {
  DiscreteMeasure m = make_discrete({{{0.0}}, {{1.0}}}, std::vector<double>{0.5, 0.5});
  DeterministicMap map;
  map.assignment = {{Point{0.0}, Point{2.0}}, {Point{1.0}, Point{2.0}}};
  DiscreteMeasure out = pushforward(m, map);
  REQUIRE(out.size() == 1);
  CHECK(out.atom(0).p == (Point{2.0}));
  CHECK(out.atom(0).w == Rat(1));
}

TEST_CASE("pushforward relabels atoms under a bijection") {
  DiscreteMeasure m = make_discrete({{{0.0}}, {{1.0}}}, std::vector<double>{0.5, 0.5});
  DeterministicMap map;
  map.assignment = {{Point{0.0}, Point{2.0}}, {Point{1.0}, Point{3.0}}};
  DiscreteMeasure out = pushforward(m, map);
  REQUIRE(out.size() == 2);
  CHECK(out.atom(0).p == (Point{2.0}));
  CHECK(out.atom(1).p == (Point{3.0}));
  CHECK(out.atom(0).w == Rat(1, 2));
  CHECK(out.atom(1).w == Rat(1, 2));
}

TEST_CASE("pushforward rejects a map that misses an atom") {
  DiscreteMeasure m = make_discrete({{{0.0}}, {{1.0}}}, std::vector<double>{0.5, 0.5});
  DeterministicMap map;
  map.assignment = {{Point{0.0}, Point{2.0}}};
  CHECK_THROWS_AS(pushforward(m, map), InstanceError);
}

TEST_CASE("pushforward preserves total mass exactly on random clouds") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    DistSpec d;
    d.kind = DistSpec::Kind::Gaussian;
    d.mean = {0.0, 0.0};
    d.sd = 2.0;
    DiscreteMeasure m = sample_cloud(d, 9, seed);
    CHECK(pushforward(m, identity_map(m)) == m);
    Rat total;
    for (const Atom& a : m.atoms()) total += a.w;
    CHECK(total == Rat(1));
  }
}

TEST_CASE("sample_cloud uniform box stays inside the box") {
  DistSpec d;
  d.kind = DistSpec::Kind::UniformBox;
  d.lo = {0.0};
  d.hi = {1.0};
  DiscreteMeasure one = sample_cloud(d, 1, 7);
  REQUIRE(one.size() == 1);
  CHECK(one.atom(0).p[0] >= 0.0);
  CHECK(one.atom(0).p[0] < 1.0);
  CHECK(one.atom(0).w == Rat(1));

  DistSpec d2;
  d2.kind = DistSpec::Kind::UniformBox;
  d2.lo = {0.0, 0.0};
  d2.hi = {1.0, 1.0};
  DiscreteMeasure m = sample_cloud(d2, 50, 3);
  double mx = 0.0, my = 0.0;
  for (const Atom& a : m.atoms()) {
    CHECK(a.p[0] >= 0.0);
    CHECK(a.p[0] < 1.0);
    CHECK(a.p[1] >= 0.0);
    CHECK(a.p[1] < 1.0);
    mx += a.wd * a.p[0];
    my += a.wd * a.p[1];
  }
  CHECK(mx >= 0.0);
  CHECK(mx <= 1.0);
  CHECK(my >= 0.0);
  CHECK(my <= 1.0);
}

TEST_CASE("sample_cloud is deterministic per seed") {
  DistSpec d;
  d.kind = DistSpec::Kind::Gaussian;
  d.mean = {0.0};
  d.sd = 1.0;
  CHECK(sample_cloud(d, 100, 1) == sample_cloud(d, 100, 1));
  CHECK(sample_cloud(d, 100, 1) != sample_cloud(d, 100, 2));
}

TEST_CASE("sample_cloud two-point mixture lands on the two support points") {
  DistSpec d;
  d.kind = DistSpec::Kind::TwoPointMixture;
  d.a = Point{0.0};
  d.b = Point{5.0};
  d.pa = 0.25;
  DiscreteMeasure m = sample_cloud(d, 40, 9);
  for (const Atom& a : m.atoms())
    CHECK((a.p == d.a || a.p == d.b));
  CHECK(m.size() <= 2);
}

TEST_CASE("distribution descriptors validate their parameters") {
  DistSpec d;
  d.kind = DistSpec::Kind::UniformBox;
  d.lo = {1.0};
  d.hi = {0.0};
  CHECK_THROWS_AS(d.validate(), ConfigError);
  d.hi = {2.0};
  CHECK_NOTHROW(d.validate());
  CHECK_THROWS_AS(sample_cloud(d, 0, 1), ConfigError);
}

TEST_CASE("translate and scale move atoms but not weights") {
  DiscreteMeasure m = make_discrete({{{0.0}}, {{1.0}}}, std::vector<double>{0.5, 0.5});
  DiscreteMeasure t = translate(m, Point{5.0});
  CHECK(t.atom(0).p == (Point{5.0}));
  CHECK(t.atom(1).p == (Point{6.0}));
  CHECK(t.atom(0).w == Rat(1, 2));
  DiscreteMeasure s = scale(m, 2.0);
  CHECK(s.atom(1).p == (Point{2.0}));
}

TEST_CASE("parameter family validation") {
  DiscreteMeasure m = make_discrete({{{0.0}}, {{1.0}}}, std::vector<double>{0.5, 0.5});
  ParamFamily fam;
  fam.p = 2.0;
  fam.params.push_back({"a", Rat(1), 1.0, m, m});
  CHECK_NOTHROW(fam.validate());
  CHECK(fam.mE() == 1.0);
  CHECK(fam.dim() == 1);

  fam.params.push_back({"a", Rat(1), 1.0, m, m});
  CHECK_THROWS_AS(fam.validate(), ConfigError);  // duplicate label
  fam.params[1].label = "b";
  CHECK_NOTHROW(fam.validate());
  fam.p = 0.0;
  CHECK_THROWS_AS(fam.validate(), ConfigError);
  fam.p = 2.0;
  fam.params[1].mu = make_discrete({{{0.0, 0.0}}}, std::vector<double>{1.0});
  CHECK_THROWS_AS(fam.validate(), ConfigError);  // mixed dimensions
}
