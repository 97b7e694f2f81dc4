#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "generators.hpp"
#include "tgraph/projective.hpp"

using namespace tgraph;

namespace {
ProjectiveSystem fan_system() {
  return ProjectiveSystem::make_stationary(fx::fan_graph(), fx::fan_collapse());
}

BratteliData car_prefix(std::size_t levels) {
  BratteliData b;
  std::uint64_t k = 1;
  for (std::size_t n = 0; n < levels; ++n) {
    b.levels.push_back({k});
    k *= 2;
  }
  for (std::size_t n = 0; n + 1 < levels; ++n) b.multiplicities.push_back({{2}});
  return b;
}
}  // namespace

TEST_CASE("validating the fan system") {
  auto report = validate_system(fan_system());
  CHECK(report.regular);
  CHECK_FALSE(report.surjective);
}

TEST_CASE("validating the identity system") {
  auto g = fx::line_graph(3);
  auto s = ProjectiveSystem::make_stationary(g, identity_map(g));
  auto report = validate_system(s);
  CHECK(report.regular);
  CHECK(report.surjective);
}

TEST_CASE("system validation reports the failing stage") {
  auto m = fx::fan_collapse();
  m.edge_map.erase("e0");  // empty fiber over e0 at v
  auto s = ProjectiveSystem::make_stationary(fx::fan_graph(), m);
  try {
    validate_system(s);
    FAIL("expected ConditionIIViolation");
  } catch (const Error& e) {
    CHECK(e.name() == "ConditionIIViolation");
    CHECK(std::string(e.what()).find("stage 0") != std::string::npos);
  }
}

TEST_CASE("validating the doubling chain") {
  auto s = bratteli_to_system(car_prefix(4));
  auto report = validate_system(s);
  CHECK(report.regular);
  CHECK(report.surjective);
}

TEST_CASE("stationary limit of the fan system") {
  auto limit = stationary_limit(fx::fan_graph(), fx::fan_collapse());
  REQUIRE(limit.has_value());
  CHECK(limit->vertices() == std::set<std::string>{"v", "w"});
  REQUIRE(limit->classes().size() == 1);
  CHECK(limit->class_at("e0").dom == "v");
  CHECK(limit->class_at("e0").ran == "w");
}

TEST_CASE("stationary limit of an identity system is the graph itself") {
  gen::Rng rng(61);
  for (int round = 0; round < 30; ++round) {
    auto g = gen::random_graph(rng, 6, 8, 3, 0.2);
    auto limit = stationary_limit(g, identity_map(g));
    REQUIRE(limit.has_value());
    CHECK(*limit == g);
  }
}

TEST_CASE("coordinate projections are regular factor maps") {
  gen::Rng rng(62);
  for (int round = 0; round < 100; ++round) {
    auto [f, m] = gen::random_rotation_system(rng);
    REQUIRE(stationary_limit(f, m).has_value());
    for (std::size_t k = 0; k <= 3; ++k) {
      auto proj = coordinate_projection(f, m, k);
      CHECK_NOTHROW(validate(proj));
      CHECK(is_regular(proj));
    }
  }
}

TEST_CASE("projection of the fan system is the inclusion of the limit") {
  auto proj = coordinate_projection(fx::fan_graph(), fx::fan_collapse(), 2);
  CHECK_NOTHROW(validate(proj));
  CHECK(proj.vertex_map ==
        std::map<std::string, std::string>{{"v", "v"}, {"w", "w"}});
}

TEST_CASE("thread approximation at depth zero lists the base stage plus infinity") {
  auto t = thread_approximation(fan_system(), 0);
  std::set<std::vector<std::string>> got(t.vertex_threads.begin(),
                                         t.vertex_threads.end());
  std::set<std::vector<std::string>> expected = {
      {"infinity"}, {"v"}, {"v'"}, {"w"}};
  CHECK(got == expected);
}

TEST_CASE("fan system threads at depth three") {
  auto t = thread_approximation(fan_system(), 3);
  std::set<std::vector<std::string>> got(t.vertex_threads.begin(),
                                         t.vertex_threads.end());
  std::set<std::vector<std::string>> expected = {
      {"infinity", "infinity", "infinity", "infinity"},
      {"infinity", "infinity", "infinity", "v'"},
      {"v", "v", "v", "v"},
      {"w", "w", "w", "w"}};
  CHECK(got == expected);
  CHECK(t.real_vertex_threads == 2);
}

TEST_CASE("explicit systems bound the thread depth") {
  auto s = bratteli_to_system(car_prefix(3));
  CHECK_NOTHROW(thread_approximation(s, 2));
  try {
    thread_approximation(s, 3);
    FAIL("expected DepthExceedsStages");
  } catch (const Error& e) {
    CHECK(e.name() == "DepthExceedsStages");
  }
}

TEST_CASE("chain thread counts match backward-reachable vertices") {
  auto s = bratteli_to_system(car_prefix(3));
  auto t = thread_approximation(s, 2);
  // a deepest-stage vertex supports a real-everywhere thread iff its images
  // at every shallower stage are real
  std::size_t expected = 0;
  for (const auto& v : s.stage(2).vertices()) {
    auto mid = s.map(1).vertex_image(v);
    if (!mid) continue;
    if (s.map(0).vertex_image(*mid)) ++expected;
  }
  CHECK(t.real_vertex_threads == expected);
}

TEST_CASE("real thread counts decrease in depth and stabilize at the limit size") {
  gen::Rng rng(63);
  std::vector<std::pair<TopGraph, FactorMap>> systems;
  systems.emplace_back(fx::fan_graph(), fx::fan_collapse());
  for (int round = 0; round < 25; ++round) {
    auto g = gen::random_graph(rng, 4, 4, 2, 0.2);
    // self-map fixing a forward-closed piece and dropping the rest
    auto kept = gen::random_subset(rng, g.vertices());
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& [id, c] : g.classes())
        if (kept.count(c.dom) && !kept.count(c.ran)) {
          kept.insert(c.ran);
          grew = true;
        }
    }
    FactorMap m;
    m.source = g;
    m.target = g;
    for (const auto& v : kept) m.vertex_map[v] = v;
    for (const auto& [id, c] : g.classes())
      if (kept.count(c.dom) && kept.count(c.ran)) m.edge_map[id] = id;
    validate(m);
    systems.emplace_back(std::move(g), std::move(m));
  }
  for (const auto& [g, m] : systems) {
    auto s = ProjectiveSystem::make_stationary(g, m);
    auto limit = stationary_limit(g, m);
    REQUIRE(limit.has_value());
    std::size_t prev = g.vertices().size() + 1;
    for (std::size_t depth = 0; depth <= g.vertices().size() + 1; ++depth) {
      auto t = thread_approximation(s, depth);
      CHECK(t.real_vertex_threads <= prev);
      prev = t.real_vertex_threads;
    }
    CHECK(prev == limit->vertices().size());
  }
}

TEST_CASE("obstruction set of the fan system") {
  auto limit = stationary_limit(fx::fan_graph(), fx::fan_collapse());
  REQUIRE(limit.has_value());
  auto report = obstruction_report(fx::fan_graph(), fx::fan_collapse(), *limit);
  CHECK(report.open_set.empty());
  CHECK(report.y == std::set<std::string>{"w"});
  CHECK(obstruction_set(fx::fan_graph(), fx::fan_collapse(), *limit) ==
        std::set<std::string>{"w"});
}

TEST_CASE("identity systems have no obstruction") {
  gen::Rng rng(64);
  for (int round = 0; round < 30; ++round) {
    auto g = gen::random_graph(rng, 6, 8, 3, 0.2);
    auto m = identity_map(g);
    auto limit = stationary_limit(g, m);
    REQUIRE(limit.has_value());
    auto report = obstruction_report(g, m, *limit);
    CHECK(report.open_set == classify(g).rg);
    CHECK(report.y.empty());
  }
}

TEST_CASE("surjective regular stationary systems have empty obstruction") {
  gen::Rng rng(65);
  for (int round = 0; round < 100; ++round) {
    auto [f, m] = gen::random_rotation_system(rng);
    auto report = validate_system(ProjectiveSystem::make_stationary(f, m));
    REQUIRE(report.regular);
    REQUIRE(report.surjective);
    auto limit = stationary_limit(f, m);
    REQUIRE(limit.has_value());
    CHECK(obstruction_set(f, m, *limit).empty());
  }
}

TEST_CASE("limit report of the fan system") {
  auto report = limit_algebra_report(fx::fan_graph(), fx::fan_collapse());
  REQUIRE(report.limit.has_value());
  CHECK(report.obstruction_y == std::set<std::string>{"w"});
  CHECK_FALSE(report.colim_isomorphic_to_limit_algebra);
  REQUIRE(report.limit_algebra.has_value());
  CHECK(*report.limit_algebra == AlgebraExpr({2}));
  REQUIRE(report.colim_algebra.has_value());
  CHECK(*report.colim_algebra == AlgebraExpr({2, 1}));
}

TEST_CASE("limit report of the identity system on a line") {
  auto g = fx::line_graph(2);
  auto report = limit_algebra_report(g, identity_map(g));
  REQUIRE(report.limit.has_value());
  CHECK(*report.limit == g);
  CHECK(report.obstruction_y.empty());
  CHECK(report.colim_isomorphic_to_limit_algebra);
  CHECK(*report.limit_algebra == AlgebraExpr({2}));
  CHECK(*report.colim_algebra == AlgebraExpr({2}));
}

TEST_CASE("explicit prefixes report a lower approximation of the open set") {
  auto s = bratteli_to_system(car_prefix(3));
  auto approx = approx_obstruction(s);
  CHECK(approx.stages_used == 3);
  // every deepest-stage receiver is already regular there; the block source
  // projects to sources all the way down
  CHECK(approx.open_set ==
        std::set<std::string>{"v1.2", "v1.3", "v1.4"});
}

TEST_CASE("doubling chain stages and maps") {
  auto s = bratteli_to_system(car_prefix(4));
  REQUIRE(*s.stage_count() == 4);
  CHECK(s.stage(0).vertices().size() == 1);
  CHECK(s.stage(1).vertices().size() == 2);
  CHECK(s.stage(3).vertices().size() == 8);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK_NOTHROW(validate(s.map(n)));
    CHECK(is_regular(s.map(n)));
  }
  CHECK(identify_finite_dim(s.stage(3)) == AlgebraExpr({8}));
}

TEST_CASE("doubling chain edge lifts") {
  auto s = bratteli_to_system(car_prefix(3));
  const FactorMap& m = s.map(1);  // line4 -> line2
  auto at_top = lift_edge(m, "e1.1", "v1.1");
  REQUIRE(at_top.size() == 1);
  CHECK(at_top[0].first == "e1.1");
  auto at_mid = lift_edge(m, "e1.1", "v1.3");
  REQUIRE(at_mid.size() == 1);
  CHECK(at_mid[0].first == "e1.3");
}

TEST_CASE("two blocks into one line") {
  BratteliData b;
  b.levels = {{1, 1}, {3}};
  b.multiplicities = {{{1, 1}}};
  auto s = bratteli_to_system(b);
  const FactorMap& m = s.map(0);
  CHECK(m.vertex_map.at("v1.1") == "v1.1");
  CHECK(m.vertex_map.at("v1.2") == "v2.1");
  CHECK_FALSE(m.vertex_image("v1.3").has_value());
  CHECK_NOTHROW(validate(m));
  CHECK(is_regular(m));
  CHECK(recover_bratteli(s) == b);
}

TEST_CASE("single level round trip") {
  BratteliData b;
  b.levels = {{2, 5}};
  auto s = bratteli_to_system(b);
  REQUIRE(*s.stage_count() == 1);
  CHECK(s.map_count() == 0);
  CHECK(recover_bratteli(s) == b);
}

TEST_CASE("bratteli round trip on random data") {
  gen::Rng rng(66);
  for (int round = 0; round < 150; ++round) {
    BratteliData b;
    std::size_t levels = rng.between(1, 4);
    std::vector<std::uint64_t> prev;
    for (std::size_t n = 0; n < levels; ++n) {
      std::size_t blocks = rng.between(1, 3);
      std::vector<std::uint64_t> level;
      std::vector<std::vector<std::uint64_t>> sigma;
      for (std::size_t i = 0; i < blocks; ++i) {
        if (n == 0) {
          level.push_back(rng.between(1, 4));
          continue;
        }
        std::vector<std::uint64_t> row;
        std::uint64_t used = 0;
        for (auto k : prev) {
          std::uint64_t mult = rng.between(0, 2);
          row.push_back(mult);
          used += mult * k;
        }
        level.push_back(used + rng.between(used == 0 ? 1 : 0, 3));
        sigma.push_back(std::move(row));
      }
      if (n > 0) b.multiplicities.push_back(std::move(sigma));
      b.levels.push_back(level);
      prev = level;
    }
    auto s = bratteli_to_system(b);
    CHECK_NOTHROW(validate_system(s));
    CHECK(recover_bratteli(s) == b);
  }
}

TEST_CASE("stage graphs identify as the dimension vectors") {
  gen::Rng rng(67);
  for (int round = 0; round < 50; ++round) {
    std::size_t blocks = rng.between(1, 4);
    std::vector<std::uint64_t> level;
    for (std::size_t i = 0; i < blocks; ++i) level.push_back(rng.between(1, 6));
    auto g = bratteli_stage(level);
    CHECK(identify_finite_dim(g) == AlgebraExpr(level));
  }
}

TEST_CASE("malformed bratteli data is rejected") {
  BratteliData b;
  b.levels = {{1}, {1}};
  b.multiplicities = {{{2}}};  // 2*1 > 1
  try {
    bratteli_to_system(b);
    FAIL("expected InvariantViolation");
  } catch (const Error& e) {
    CHECK(e.name() == "InvariantViolation");
  }
}

TEST_CASE("line recovery refuses non-lines") {
  auto cyc = fx::two_cycle();
  auto s = ProjectiveSystem::make_explicit({cyc}, {});
  try {
    recover_bratteli(s);
    FAIL("expected NotLineShaped");
  } catch (const Error& e) {
    CHECK(e.name() == "NotLineShaped");
  }
}
