#include "hauv/ingest.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

namespace hauv::ingest {
namespace {

RawGrid small_grid() {
  RawGrid g;
  g.nx = 2;
  g.ny = 2;
  g.nz = 1;
  g.spacing = Vec3(10, 20, 50);
  g.origin = Vec3(0, 0, 0);
  g.info = {0.1, 0.2, 0.3, 0.4};
  g.u = {1, 2, 3, 4};
  g.v = {-1, -2, -3, -4};
  return g;
}

GridErrorKind kind_of(const std::string& text) {
  try {
    parse_forecast_grid(text);
  } catch (const GridParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return GridErrorKind::Io;
}

TEST(Ipgrid, ParsesRowMajorValues) {
  const std::string text =
      "IPGRID v1 2 2 1 10 20 50 0 0 0\nINFO\n0.1 0.2\n0.3 0.4\nU\n1 2\n3 4\nV\n-1 -2\n-3 -4\n";
  const RawGrid g = parse_forecast_grid(text);
  EXPECT_EQ(g.count(), 4u);
  EXPECT_EQ(g.info, (std::vector<double>{0.1, 0.2, 0.3, 0.4}));
  EXPECT_EQ(g.v[3], -4.0);
  EXPECT_EQ(g.spacing, Vec3(10, 20, 50));
}

TEST(Ipgrid, Errors) {
  const std::string head = "IPGRID v1 2 2 2 1 1 1 0 0 0\n";
  const std::string eight = "1 2\n3 4\n5 6\n7 8\n";
  const std::string seven = "1 2\n3 4\n5 6\n7\n";
  EXPECT_EQ(kind_of(head + "INFO\n" + seven + "U\n" + eight + "V\n" + eight), GridErrorKind::Truncated);
  EXPECT_EQ(kind_of(head + "INFO\n" + eight + "U\n" + eight + "V\n" + seven), GridErrorKind::Truncated);
  EXPECT_EQ(kind_of(head + "INFO\n" + eight + "9\nU\n" + eight + "V\n" + eight), GridErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of(head + "INFO\n1 2\n3 nan\n5 6\n7 8\nU\n" + eight + "V\n" + eight), GridErrorKind::NonFinite);
  EXPECT_EQ(kind_of(head + "INFO\n1 2\n3 x\n5 6\n7 8\nU\n" + eight + "V\n" + eight), GridErrorKind::BadToken);
  EXPECT_EQ(kind_of("GRID v1 2 2 2 1 1 1 0 0 0\n"), GridErrorKind::BadHeader);
  EXPECT_EQ(kind_of("IPGRID v1 2 0 2 1 1 1 0 0 0\n"), GridErrorKind::BadHeader);
  EXPECT_EQ(kind_of(head + "INFO\n" + eight + "U\n" + eight), GridErrorKind::Truncated);
}

TEST(Ipgrid, MissingFileIsIoError) {
  try {
    load_forecast_grid("/nonexistent/dir/grid.ipgrid");
    FAIL();
  } catch (const GridParseError& e) {
    EXPECT_EQ(e.kind(), GridErrorKind::Io);
  }
}

TEST(Ipgrid, CanonicalRoundTripIsByteIdentical) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1e3);
  for (int trial = 0; trial < 20; ++trial) {
    RawGrid g;
    g.nx = 1 + trial % 4;
    g.ny = 2 + trial % 3;
    g.nz = 1 + trial % 2;
    g.spacing = Vec3(std::abs(n(rng)) + 1, 7.5, 50);
    g.origin = Vec3(n(rng), n(rng), -300);
    for (std::size_t i = 0; i < g.count(); ++i) {
      g.info.push_back(n(rng));
      g.u.push_back(n(rng) * 1e-7);
      g.v.push_back(n(rng) * 1e9);
    }
    const std::string text = format_forecast_grid(g);
    const RawGrid back = parse_forecast_grid(text);
    EXPECT_EQ(back.info, g.info);
    EXPECT_EQ(back.u, g.u);
    EXPECT_EQ(back.v, g.v);
    EXPECT_EQ(format_forecast_grid(back), text);
  }
}

TEST(Ipgrid, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "hauv_ingest_roundtrip.ipgrid";
  write_forecast_grid(small_grid(), path);
  const auto back = load_forecast_grid(path);
  EXPECT_EQ(back.info, small_grid().info);
  std::filesystem::remove(path);
}

RawGrid covering_grid(const Workspace& ws, auto field) {
  RawGrid g;
  g.spacing = Vec3(250, 250, 50);
  g.origin = Vec3(0, 0, ws.lower().z());
  g.nx = 21;
  g.ny = 21;
  g.nz = ws.nz();
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const Vec3 p = g.origin + Vec3(i * 250.0, j * 250.0, k * 50.0);
        g.info.push_back(field(p));
        g.u.push_back(2.0 * field(p));
        g.v.push_back(-field(p));
      }
  return g;
}

TEST(Interpolation, ReproducesConstants) {
  const auto ws = Workspace::standard();
  const auto out = interpolate_to_workspace(covering_grid(ws, [](const Vec3&) { return 0.37; }), ws);
  for (std::size_t j = 0; j < ws.size(); ++j) {
    ASSERT_EQ(out.info[j], 0.37);
    ASSERT_EQ(out.uv[j].x(), 0.74);
  }
}

TEST(Interpolation, ReproducesAffineFields) {
  const auto ws = Workspace::standard();
  auto f = [](const Vec3& p) { return 0.25 + 1e-3 * p.x() - 2e-4 * p.y() + 3e-3 * p.z(); };
  const auto out = interpolate_to_workspace(covering_grid(ws, f), ws);
  for (std::size_t j = 0; j < ws.size(); ++j) {
    const Vec3 p = ws.point(j);
    ASSERT_NEAR(out.info[j], f(p), 1e-12);
    ASSERT_NEAR(out.uv[j].y(), -f(p), 1e-12);
  }
}

TEST(Interpolation, NodeCoincidenceAndBounds) {
  const Workspace ws(10, 10, 4, 50.0, 2);
  RawGrid g;
  g.nx = 10;
  g.ny = 10;
  g.nz = 4;
  g.spacing = Vec3(50, 50, 50);
  g.origin = Vec3(25, 25, ws.lower().z());
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 7);
  for (std::size_t i = 0; i < g.count(); ++i) {
    g.info.push_back(u(rng));
    g.u.push_back(u(rng));
    g.v.push_back(u(rng));
  }
  const auto out = interpolate_to_workspace(g, ws);
  for (std::size_t j = 0; j < ws.size(); ++j) {
    ASSERT_NEAR(out.info[j], g.info[j], 1e-12);
    ASSERT_NEAR(out.uv[j].x(), g.u[j], 1e-12);
  }
}

TEST(Interpolation, BoundedByRawRange) {
  const auto ws = Workspace::standard();
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1, 1);
  auto g = covering_grid(ws, [&](const Vec3&) { return u(rng); });
  const auto [lo, hi] = std::minmax_element(g.info.begin(), g.info.end());
  const auto out = interpolate_to_workspace(g, ws);
  for (double v : out.info) {
    ASSERT_GE(v, *lo - 1e-12);
    ASSERT_LE(v, *hi + 1e-12);
  }
}

TEST(Interpolation, CoverageErrorNamesAxes) {
  const auto ws = Workspace::standard();
  auto g = covering_grid(ws, [](const Vec3&) { return 1.0; });
  g.origin.x() = 100.0;
  g.origin.z() = -200.0;
  try {
    interpolate_to_workspace(g, ws);
    FAIL();
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.axes(), (std::vector<char>{'x', 'z'}));
  }
}

TEST(NormalizeField, MinMaxCases) {
  EXPECT_EQ(normalize_field({2.0, 4.0}), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(normalize_field({5.0, 5.0, 5.0}), (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_THROW(normalize_field({1.0, INFINITY}), std::invalid_argument);
}

TEST(NormalizeField, IdempotentAndOrderPreservingPerSide) {
  const auto ws = Workspace::standard();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-10, 30);
  std::vector<double> raw(ws.size());
  for (auto& v : raw) v = u(rng);
  const auto once = normalize_field(raw, ws);
  const auto twice = normalize_field(once, ws);
  for (std::size_t j = 0; j < ws.size(); ++j) ASSERT_NEAR(once[j], twice[j], 1e-15);
  const std::size_t split = static_cast<std::size_t>(ws.nx()) * ws.ny() * (ws.sea_level_index() + 1);
  for (std::size_t j = 1; j < split; j += 101) {
    if (raw[j] < raw[j - 1]) ASSERT_LE(once[j], once[j - 1]);
    if (raw[j] > raw[j - 1]) ASSERT_GE(once[j], once[j - 1]);
  }
}

TEST(SampleEnvironment, RoundTripThroughFileRebuildsEnvironment) {
  const auto env = generate_random_environment(5, RandomEnvConfig{});
  const auto ws = env.workspace();
  const auto raw = sample_environment(env, Vec3(50, 50, 50));
  const auto rebuilt = make_environment(parse_forecast_grid(format_forecast_grid(raw)), ws, 1.0, 1.0);
  for (std::size_t j = 0; j < ws.size(); j += 37) {
    ASSERT_NEAR(rebuilt.info().value(j), env.info().value(j), 1e-9);
    ASSERT_NEAR((rebuilt.velocity().at_grid(ws.unflat(j)) - env.velocity().at_grid(ws.unflat(j))).norm(), 0.0,
                1e-12);
  }
}

}  // namespace
}  // namespace hauv::ingest
