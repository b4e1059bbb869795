#include "hauv/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hauv::ingest {

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  // Empty view at end of input.
  std::string_view next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string_view peek() {
    const std::size_t saved = pos_;
    auto tok = next();
    pos_ = saved;
    return tok;
  }

  std::string_view line() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    auto out = text_.substr(start, pos_ - start);
    if (pos_ < text_.size()) ++pos_;
    return out;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool parse_double(std::string_view tok, double& out) {
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

bool parse_int(std::string_view tok, int& out) {
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

bool is_block_name(std::string_view tok) { return tok == "INFO" || tok == "U" || tok == "V"; }

std::vector<double> read_block(Tokenizer& tz, std::string_view name, std::size_t count) {
  const auto head = tz.next();
  if (head.empty())
    throw GridParseError(GridErrorKind::Truncated, "ipgrid: missing block " + std::string(name));
  if (head != name) {
    throw GridParseError(GridErrorKind::BadToken,
                         "ipgrid: expected block " + std::string(name) + ", found '" + std::string(head) + "'");
  }
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto tok = tz.peek();
    if (tok.empty() || is_block_name(tok)) {
      throw GridParseError(GridErrorKind::Truncated, "ipgrid: block " + std::string(name) + " truncated at value " +
                                                         std::to_string(i) + " of " + std::to_string(count));
    }
    tz.next();
    double v = 0.0;
    if (!parse_double(tok, v)) {
      throw GridParseError(GridErrorKind::BadToken, "ipgrid: block " + std::string(name) + " value " +
                                                        std::to_string(i) + " is not a number: '" +
                                                        std::string(tok) + "'");
    }
    if (!std::isfinite(v)) {
      throw GridParseError(GridErrorKind::NonFinite,
                           "ipgrid: block " + std::string(name) + " value " + std::to_string(i) + " is not finite");
    }
    values.push_back(v);
  }
  const auto extra = tz.peek();
  if (!extra.empty() && !is_block_name(extra)) {
    throw GridParseError(GridErrorKind::DimensionMismatch, "ipgrid: block " + std::string(name) +
                                                               " has more than the declared " +
                                                               std::to_string(count) + " values");
  }
  return values;
}

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

RawGrid parse_forecast_grid(std::string_view text) {
  Tokenizer tz(text);
  Tokenizer hdr(tz.line());
  if (hdr.next() != "IPGRID" || hdr.next() != "v1")
    throw GridParseError(GridErrorKind::BadHeader, "ipgrid: header must start with 'IPGRID v1'");
  RawGrid g;
  const char* names[] = {"nx", "ny", "nz"};
  int* dims[] = {&g.nx, &g.ny, &g.nz};
  for (int a = 0; a < 3; ++a) {
    const auto tok = hdr.next();
    if (!parse_int(tok, *dims[a]) || *dims[a] < 1)
      throw GridParseError(GridErrorKind::BadHeader, std::string("ipgrid: header field ") + names[a] + " must be a positive integer");
  }
  const char* fnames[] = {"sx", "sy", "sz", "ox", "oy", "oz"};
  double f[6];
  for (int a = 0; a < 6; ++a) {
    const auto tok = hdr.next();
    if (!parse_double(tok, f[a]) || !std::isfinite(f[a]))
      throw GridParseError(GridErrorKind::BadHeader, std::string("ipgrid: header field ") + fnames[a] + " must be a finite number");
    if (a < 3 && !(f[a] > 0.0))
      throw GridParseError(GridErrorKind::BadHeader, std::string("ipgrid: header field ") + fnames[a] + " must be > 0");
  }
  if (!hdr.next().empty()) throw GridParseError(GridErrorKind::BadHeader, "ipgrid: trailing tokens in header");
  g.spacing = Vec3(f[0], f[1], f[2]);
  g.origin = Vec3(f[3], f[4], f[5]);

  const std::size_t n = g.count();
  g.info = read_block(tz, "INFO", n);
  g.u = read_block(tz, "U", n);
  g.v = read_block(tz, "V", n);
  if (const auto extra = tz.next(); !extra.empty())
    throw GridParseError(GridErrorKind::DimensionMismatch, "ipgrid: unexpected data after block V");
  return g;
}

RawGrid load_forecast_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GridParseError(GridErrorKind::Io, "ipgrid: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_forecast_grid(ss.str());
}

std::string format_forecast_grid(const RawGrid& g) {
  if (g.info.size() != g.count() || g.u.size() != g.count() || g.v.size() != g.count())
    throw std::invalid_argument("ipgrid: field sizes do not match dimensions");
  std::string out = "IPGRID v1 " + std::to_string(g.nx) + ' ' + std::to_string(g.ny) + ' ' + std::to_string(g.nz);
  for (double v : {g.spacing.x(), g.spacing.y(), g.spacing.z(), g.origin.x(), g.origin.y(), g.origin.z()}) {
    out += ' ';
    append_double(out, v);
  }
  out += '\n';
  const std::pair<const char*, const std::vector<double>*> blocks[] = {{"INFO", &g.info}, {"U", &g.u}, {"V", &g.v}};
  for (const auto& [name, values] : blocks) {
    out += name;
    out += '\n';
    for (std::size_t i = 0; i < values->size(); ++i) {
      append_double(out, (*values)[i]);
      out += (i + 1) % static_cast<std::size_t>(g.nx) == 0 ? '\n' : ' ';
    }
  }
  return out;
}

void write_forecast_grid(const RawGrid& grid, const std::filesystem::path& path) {
  const std::string text = format_forecast_grid(grid);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GridParseError(GridErrorKind::Io, "ipgrid: cannot write " + path.string());
  out << text;
  if (!out) throw GridParseError(GridErrorKind::Io, "ipgrid: write failed for " + path.string());
}

namespace {

struct AxisWeights {
  int i0;
  int i1;
  double f;
};

AxisWeights axis(double coord, double origin, double spacing, int n) {
  const double t = (coord - origin) / spacing;
  if (n == 1) return {0, 0, 0.0};
  const int i0 = std::clamp(static_cast<int>(std::floor(t)), 0, n - 2);
  return {i0, i0 + 1, std::clamp(t - i0, 0.0, 1.0)};
}

}  // namespace

ResampledFields interpolate_to_workspace(const RawGrid& raw, const Workspace& ws) {
  const Vec3 lo(ws.x_of(0), ws.y_of(0), ws.z_of(0));
  const Vec3 hi(ws.x_of(ws.nx() - 1), ws.y_of(ws.ny() - 1), ws.z_of(ws.nz() - 1));
  const Vec3 rlo = raw.origin;
  const Vec3 rhi = raw.extent_hi();
  std::vector<char> uncovered;
  std::string detail;
  const char axis_names[] = {'x', 'y', 'z'};
  for (int a = 0; a < 3; ++a) {
    const double tol = 1e-9 * std::max(1.0, std::abs(hi[a]) + std::abs(lo[a]));
    if (lo[a] < rlo[a] - tol || hi[a] > rhi[a] + tol) {
      uncovered.push_back(axis_names[a]);
      detail += std::string(detail.empty() ? "" : ", ") + axis_names[a] + " needs [" + std::to_string(lo[a]) + ", " +
                std::to_string(hi[a]) + "] but grid spans [" + std::to_string(rlo[a]) + ", " +
                std::to_string(rhi[a]) + "]";
    }
  }
  if (!uncovered.empty()) throw CoverageError(uncovered, "ipgrid: workspace not covered: " + detail);

  auto at = [&](const std::vector<double>& f, int i, int j, int k) {
    return f[(static_cast<std::size_t>(k) * raw.ny + j) * raw.nx + i];
  };
  ResampledFields out;
  out.info.resize(ws.size());
  out.uv.resize(ws.size());
  for (int k = 0; k < ws.nz(); ++k) {
    const AxisWeights wz = axis(ws.z_of(k), raw.origin.z(), raw.spacing.z(), raw.nz);
    for (int j = 0; j < ws.ny(); ++j) {
      const AxisWeights wy = axis(ws.y_of(j), raw.origin.y(), raw.spacing.y(), raw.ny);
      for (int i = 0; i < ws.nx(); ++i) {
        const AxisWeights wx = axis(ws.x_of(i), raw.origin.x(), raw.spacing.x(), raw.nx);
        auto tri = [&](const std::vector<double>& f) {
          auto lerp = [](double a, double b, double t) { return a + t * (b - a); };
          const double c00 = lerp(at(f, wx.i0, wy.i0, wz.i0), at(f, wx.i1, wy.i0, wz.i0), wx.f);
          const double c10 = lerp(at(f, wx.i0, wy.i1, wz.i0), at(f, wx.i1, wy.i1, wz.i0), wx.f);
          const double c01 = lerp(at(f, wx.i0, wy.i0, wz.i1), at(f, wx.i1, wy.i0, wz.i1), wx.f);
          const double c11 = lerp(at(f, wx.i0, wy.i1, wz.i1), at(f, wx.i1, wy.i1, wz.i1), wx.f);
          return lerp(lerp(c00, c10, wy.f), lerp(c01, c11, wy.f), wz.f);
        };
        const std::size_t idx = ws.flat(i, j, k);
        out.info[idx] = tri(raw.info);
        out.uv[idx] = Vec2(tri(raw.u), tri(raw.v));
      }
    }
  }
  return out;
}

std::vector<double> normalize_field(std::vector<double> values, const Workspace& ws) {
  normalize_by_side(values, ws);
  return values;
}

std::vector<double> normalize_field(std::vector<double> values) {
  bool any_finite = false;
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("normalize_field: non-finite value");
    any_finite = true;
  }
  if (!any_finite) throw std::invalid_argument("normalize_field: need at least one value");
  normalize_minmax(values);
  return values;
}

RawGrid sample_environment(const Environment& env, const Vec3& spacing) {
  const Workspace& ws = env.workspace();
  RawGrid g;
  g.spacing = spacing;
  g.origin = Vec3(ws.x_of(0), ws.y_of(0), ws.z_of(0));
  const Vec3 span(ws.x_of(ws.nx() - 1) - g.origin.x(), ws.y_of(ws.ny() - 1) - g.origin.y(),
                  ws.z_of(ws.nz() - 1) - g.origin.z());
  int* dims[] = {&g.nx, &g.ny, &g.nz};
  for (int a = 0; a < 3; ++a) {
    if (!(spacing[a] > 0.0)) throw std::invalid_argument("sample_environment: spacing must be > 0");
    *dims[a] = static_cast<int>(std::ceil(span[a] / spacing[a] - 1e-9)) + 1;
  }
  const auto& info = env.info();
  auto info_at = [&](const Vec3& p) {
    // Trilinear over the workspace grid, clamped to its points.
    const AxisWeights wx = axis(p.x(), ws.x_of(0), ws.cell(), ws.nx());
    const AxisWeights wy = axis(p.y(), ws.y_of(0), ws.cell(), ws.ny());
    const AxisWeights wz = axis(p.z(), ws.z_of(0), ws.cell(), ws.nz());
    double sum = 0.0;
    for (int c = 0; c < 8; ++c) {
      const int i = (c & 1) ? wx.i1 : wx.i0;
      const int j = (c & 2) ? wy.i1 : wy.i0;
      const int k = (c & 4) ? wz.i1 : wz.i0;
      const double w = ((c & 1) ? wx.f : 1 - wx.f) * ((c & 2) ? wy.f : 1 - wy.f) * ((c & 4) ? wz.f : 1 - wz.f);
      if (w != 0.0) sum += w * info.value(GridIndex{i, j, k});
    }
    return sum;
  };
  const std::size_t n = g.count();
  g.info.resize(n);
  g.u.resize(n);
  g.v.resize(n);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const Vec3 p = g.origin + Vec3(i * spacing.x(), j * spacing.y(), k * spacing.z());
        const Vec3 q = ws.clamp(p);
        const std::size_t idx = (static_cast<std::size_t>(k) * g.ny + j) * g.nx + i;
        g.info[idx] = info_at(q);
        const Vec3 vel = env.velocity().at(q);
        g.u[idx] = vel.x();
        g.v[idx] = vel.y();
      }
  return g;
}

Environment make_environment(const RawGrid& raw, const Workspace& ws, double kappa_air, double kappa_sea,
                             ObstacleSet obstacles) {
  auto fields = interpolate_to_workspace(raw, ws);
  const auto flags = normalize_by_side(fields.info, ws);
  return Environment(InfoMap(ws, std::move(fields.info), kappa_air, kappa_sea, flags),
                     VelocityField::gridded(ws, std::move(fields.uv)), std::move(obstacles));
}

}  // namespace hauv::ingest
