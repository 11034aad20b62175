#include "swme/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "swme/errors.hpp"
#include "swme/parallel.hpp"
#include "swme/detail/text.hpp"

namespace swme {
namespace {

struct Row {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double fraction = 0.0;
  double u = 0.0;
  double v = 0.0;
  std::size_t line = 0;
};

bool same(double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::max(std::abs(a), std::abs(b))); }

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Cell widths of a centre axis; interior edges at midpoints, outer cells
// mirror their neighbour. A single centre gets unit width.
std::vector<double> widths(const std::vector<double>& centres) {
  const std::size_t n = centres.size();
  if (n == 1) return {1.0};
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = k == 0 ? centres[0] - 0.5 * (centres[1] - centres[0]) : 0.5 * (centres[k - 1] + centres[k]);
    const double hi =
        k + 1 == n ? centres[n - 1] + 0.5 * (centres[n - 1] - centres[n - 2]) : 0.5 * (centres[k] + centres[k + 1]);
    w[k] = hi - lo;
  }
  return w;
}

std::pair<double, double> extent(const std::vector<double>& centres) {
  if (centres.size() == 1) return {centres[0], centres[0]};
  const std::size_t n = centres.size();
  return {centres[0] - 0.5 * (centres[1] - centres[0]), centres[n - 1] + 0.5 * (centres[n - 1] - centres[n - 2])};
}

std::size_t nearest(const std::vector<double>& centres, double p) {
  const auto it = std::lower_bound(centres.begin(), centres.end(), p);
  if (it == centres.begin()) return 0;
  if (it == centres.end()) return centres.size() - 1;
  const auto k = static_cast<std::size_t>(it - centres.begin());
  return (p - centres[k - 1] <= centres[k] - p) ? k - 1 : k;
}

double uniform_dz(const ReferenceDataset& ds) {
  if (ds.nz() < 2) throw UnsupportedFormatError("height extraction needs at least two z cells");
  const double dz = ds.z[1] - ds.z[0];
  for (std::size_t k = 1; k + 1 < ds.nz(); ++k) {
    if (std::abs(ds.z[k + 1] - ds.z[k] - dz) > 1e-9 * dz) {
      throw UnsupportedFormatError("non-uniform z spacing at z = " + compact(ds.z[k]));
    }
  }
  return dz;
}

// Locates a point on a uniform model axis; nullopt outside [x0, x0 + n dx].
std::optional<int> model_index(double p, double origin, double dx, int n) {
  const double s = (p - origin) / dx;
  if (s < -1e-9 || s > n + 1e-9) return std::nullopt;
  return std::clamp(static_cast<int>(std::floor(s)), 0, n - 1);
}

struct Accumulator {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;

  void add(double diff, double weight) {
    const double a = std::abs(diff);
    l1 += weight * a;
    l2 += weight * a * a;
    linf = std::max(linf, a);
  }
  NormSet norms() const { return {l1, std::sqrt(l2), linf}; }
};

}  // namespace

ReferenceDataset parse_dataset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<double> time;
  int dims = 0;
  std::vector<Row> rows;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = text::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const std::string_view body = text::trim(t.substr(1));
      if (body.rfind("time=", 0) == 0) {
        const auto value = text::to_double(body.substr(5));
        if (!value) throw ParseError("malformed time comment", line_no);
        time = *value;
      }
      continue;
    }
    const auto fields = text::split(t);
    if (dims == 0) {
      const std::vector<std::string_view> h2{"x", "z", "fraction", "u"};
      const std::vector<std::string_view> h3{"x", "y", "z", "fraction", "u", "v"};
      if (fields == h2) {
        dims = 1;
      } else if (fields == h3) {
        dims = 2;
      } else {
        throw ParseError("expected header 'x,z,fraction,u' or 'x,y,z,fraction,u,v'", line_no);
      }
      continue;
    }
    const std::size_t expected = dims == 1 ? 4 : 6;
    if (fields.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) + " fields, got " + std::to_string(fields.size()),
                       line_no);
    }
    std::vector<double> vals;
    for (const auto f : fields) {
      const auto v = text::to_double(f);
      if (!v || !std::isfinite(*v)) throw ParseError("invalid number '" + std::string(f) + "'", line_no);
      vals.push_back(*v);
    }
    Row r;
    r.line = line_no;
    if (dims == 1) {
      r.x = vals[0];
      r.z = vals[1];
      r.fraction = vals[2];
      r.u = vals[3];
    } else {
      r.x = vals[0];
      r.y = vals[1];
      r.z = vals[2];
      r.fraction = vals[3];
      r.u = vals[4];
      r.v = vals[5];
    }
    rows.push_back(r);
  }
  if (dims == 0) throw ParseError("missing header", line_no);
  if (rows.empty()) throw ParseError("no data rows", line_no);

  ReferenceDataset ds;
  ds.time = time;

  std::size_t nz = 0;
  while (nz < rows.size() && same(rows[nz].x, rows[0].x) && same(rows[nz].y, rows[0].y)) ++nz;
  for (std::size_t k = 0; k < nz; ++k) {
    if (k > 0 && !(rows[k].z > rows[k - 1].z)) throw ParseError("z axis not strictly increasing", rows[k].line);
    ds.z.push_back(rows[k].z);
  }
  if (rows.size() % nz != 0) {
    throw ParseError("row count " + std::to_string(rows.size()) + " is not a multiple of the column length " +
                         std::to_string(nz),
                     rows.back().line);
  }
  const std::size_t ncol = rows.size() / nz;

  std::size_t ny = 1;
  if (dims == 2) {
    ny = 0;
    while (ny < ncol && same(rows[ny * nz].x, rows[0].x)) ++ny;
    if (ncol % ny != 0) throw ParseError("column count does not match the y axis length", rows.back().line);
  }

  for (std::size_t c = 0; c < ncol; ++c) {
    const std::size_t ix = c / ny;
    const std::size_t iy = c % ny;
    const Row& head = rows[c * nz];
    if (iy == 0) {
      if (ix > 0 && !(head.x > ds.x.back())) throw ParseError("x axis not strictly increasing", head.line);
      ds.x.push_back(head.x);
    } else if (!same(head.x, ds.x.back())) {
      throw ParseError("shape mismatch: expected " + std::to_string(ny) + " y values per x", head.line);
    }
    if (dims == 2) {
      if (ix == 0) {
        if (iy > 0 && !(head.y > ds.y.back())) throw ParseError("y axis not strictly increasing", head.line);
        ds.y.push_back(head.y);
      } else if (!same(head.y, ds.y[iy])) {
        throw ParseError("y axis differs between x columns", head.line);
      }
    }
    for (std::size_t k = 0; k < nz; ++k) {
      const Row& r = rows[c * nz + k];
      if (!same(r.x, head.x) || !same(r.y, head.y)) {
        throw ParseError("shape mismatch: column has " + std::to_string(k) + " cells, expected " + std::to_string(nz),
                         r.line);
      }
      if (!same(r.z, ds.z[k])) throw ParseError("z axis differs between columns", r.line);
    }
  }

  ds.fraction.reserve(rows.size());
  ds.u.reserve(rows.size());
  if (dims == 2) ds.v.reserve(rows.size());
  for (const Row& r : rows) {
    double f = r.fraction;
    if (f < 0.0 || f > 1.0) {
      f = std::clamp(f, 0.0, 1.0);
      ++ds.clipped;
    }
    ds.fraction.push_back(f);
    ds.u.push_back(r.u);
    if (dims == 2) ds.v.push_back(r.v);
  }
  return ds;
}

ReferenceDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open reference file '" + path.string() + "'");
  return parse_dataset(in);
}

void write_dataset(const ReferenceDataset& ds, std::ostream& out) {
  if (ds.time) out << "# time=" << text::format(*ds.time) << '\n';
  out << (ds.dims() == 1 ? "x,z,fraction,u\n" : "x,y,z,fraction,u,v\n");
  for (std::size_t ix = 0; ix < ds.nx(); ++ix) {
    for (std::size_t iy = 0; iy < ds.ny(); ++iy) {
      for (std::size_t iz = 0; iz < ds.nz(); ++iz) {
        const std::size_t n = ds.index(ix, iy, iz);
        out << text::format(ds.x[ix]) << ',';
        if (ds.dims() == 2) out << text::format(ds.y[iy]) << ',';
        out << text::format(ds.z[iz]) << ',' << text::format(ds.fraction[n]) << ',' << text::format(ds.u[n]);
        if (ds.dims() == 2) out << ',' << text::format(ds.v[n]);
        out << '\n';
      }
    }
  }
}

HeightField extract_height(const ReferenceDataset& ds, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("threshold must lie in (0, 1)");
  const double dz = uniform_dz(ds);
  HeightField h;
  h.x = ds.x;
  h.y = ds.y;
  h.threshold = threshold;
  h.values.assign(ds.columns(), 0.0);
  parallel_for(ds.columns(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      std::size_t count = 0;
      for (std::size_t k = 0; k < ds.nz(); ++k) {
        if (ds.fraction[c * ds.nz() + k] >= threshold) ++count;
      }
      h.values[c] = static_cast<double>(count) * dz;
    }
  });
  return h;
}

DepthAverage depth_average(const ReferenceDataset& ds, const HeightField& heights, AveragingMode mode) {
  if (heights.values.size() != ds.columns() || heights.x != ds.x || heights.y != ds.y) {
    throw DomainError("height field does not belong to this dataset");
  }
  const double dz = mode == AveragingMode::fraction_weighted ? uniform_dz(ds) : 0.0;
  DepthAverage out;
  out.u.x = out.v.x = ds.x;
  out.u.y = out.v.y = ds.y;
  out.u.values.assign(ds.columns(), 0.0);
  if (ds.dims() == 2) out.v.values.assign(ds.columns(), 0.0);

  parallel_for(ds.columns(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      if (!(heights.values[c] > 0.0)) continue;
      double su = 0.0;
      double sv = 0.0;
      double weight = 0.0;
      for (std::size_t k = 0; k < ds.nz(); ++k) {
        const std::size_t n = c * ds.nz() + k;
        const double f = ds.fraction[n];
        double w = 0.0;
        if (mode == AveragingMode::water_cells) {
          w = f >= heights.threshold ? 1.0 : 0.0;
        } else {
          w = f * dz;
        }
        su += w * ds.u[n];
        if (ds.dims() == 2) sv += w * ds.v[n];
        weight += w;
      }
      const double denom = mode == AveragingMode::water_cells ? weight : heights.values[c];
      if (!(denom > 0.0)) continue;
      out.u.values[c] = su / denom;
      if (ds.dims() == 2) out.v.values[c] = sv / denom;
    }
  });
  return out;
}

VerticalProfileSample vertical_profile(const ReferenceDataset& ds, double x, double y, double threshold) {
  const auto [xlo, xhi] = extent(ds.x);
  if (!(x >= xlo && x <= xhi)) throw DomainError("x = " + compact(x) + " m lies outside the reference domain");
  VerticalProfileSample s;
  s.ix = nearest(ds.x, x);
  double dy = 0.0;
  if (ds.dims() == 2) {
    const auto [ylo, yhi] = extent(ds.y);
    if (!(y >= ylo && y <= yhi)) throw DomainError("y = " + compact(y) + " m lies outside the reference domain");
    s.iy = nearest(ds.y, y);
    dy = ds.y[s.iy] - y;
  }
  s.distance = std::hypot(ds.x[s.ix] - x, dy);
  for (std::size_t k = 0; k < ds.nz(); ++k) {
    const std::size_t n = ds.index(s.ix, s.iy, k);
    if (ds.fraction[n] < threshold) continue;
    s.points.push_back({ds.z[k], ds.u[n], ds.dims() == 2 ? ds.v[n] : 0.0});
  }
  return s;
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::height:
      return "h";
    case Quantity::mean_u:
      return "um";
    case Quantity::mean_v:
      return "vm";
  }
  return "?";
}

const QuantityReport* ComparisonReport::find(const std::string& quantity) const {
  for (const auto& q : quantities) {
    if (q.quantity == quantity) return &q;
  }
  return nullptr;
}

ComparisonReport compare(const Snapshot& model, const PhysicalSetup& physical, const ReferenceDataset& ds,
                         const CompareOptions& options) {
  physical.validate();
  const GridField& f = model.field;
  if (f.dims() != ds.dims()) {
    throw ComparisonError("model is " + std::to_string(f.dims()) + "D but the reference has " +
                          std::to_string(ds.dims()) + " horizontal dimensions");
  }
  if (ds.time) {
    const double model_seconds = model.t * physical.L / physical.U;
    if (std::abs(model_seconds - *ds.time) > options.time_tolerance) {
      throw ComparisonError("model time " + compact(model_seconds) + " s does not match reference time " +
                            compact(*ds.time) + " s");
    }
  }
  for (const Quantity q : options.quantities) {
    if (q == Quantity::mean_v && f.dims() == 1) throw ComparisonError("vm requested for x-z data");
  }

  const double L = physical.L;
  const HeightField heights = extract_height(ds, options.threshold);
  const DepthAverage avg = depth_average(ds, heights, options.averaging);
  const std::vector<double> wx = widths(ds.x);
  const std::vector<double> wy = ds.dims() == 2 ? widths(ds.y) : std::vector<double>{1.0};

  // Model cell under every reference column, or -1 outside the model domain.
  std::vector<std::optional<std::pair<int, int>>> cell(ds.columns());
  std::size_t overlap = 0;
  for (std::size_t ix = 0; ix < ds.nx(); ++ix) {
    const auto i = model_index(ds.x[ix] / L, f.x0(), f.dx(), f.nx());
    for (std::size_t iy = 0; iy < ds.ny(); ++iy) {
      std::optional<int> j = 0;
      if (ds.dims() == 2) j = model_index(ds.y[iy] / L, f.y0(), f.dy(), f.ny());
      if (i && j) {
        cell[ix * ds.ny() + iy] = std::make_pair(*i, *j);
        ++overlap;
      }
    }
  }
  if (overlap == 0) throw ComparisonError("model and reference domains are disjoint");

  auto model_value = [&](Quantity q, int i, int j) {
    const MomentState s = f.state(i, j);
    switch (q) {
      case Quantity::height:
        return physical.H * s.h();
      case Quantity::mean_u:
        return physical.U * s.velocity(Direction::x);
      case Quantity::mean_v:
        return physical.U * s.velocity(Direction::y);
    }
    return 0.0;
  };
  auto reference_value = [&](Quantity q, std::size_t c) {
    switch (q) {
      case Quantity::height:
        return heights.values[c];
      case Quantity::mean_u:
        return avg.u.values[c];
      case Quantity::mean_v:
        return avg.v.values[c];
    }
    return 0.0;
  };

  ComparisonReport report;
  report.columns_compared = overlap;
  for (const Quantity q : options.quantities) {
    Accumulator acc;
    for (std::size_t ix = 0; ix < ds.nx(); ++ix) {
      for (std::size_t iy = 0; iy < ds.ny(); ++iy) {
        const std::size_t c = ix * ds.ny() + iy;
        if (!cell[c]) continue;
        acc.add(model_value(q, cell[c]->first, cell[c]->second) - reference_value(q, c), wx[ix] * wy[iy]);
      }
    }
    report.quantities.push_back({to_string(q), acc.norms()});
  }

  for (const SliceSpec& spec : options.slices) {
    if (spec.quantity == Quantity::mean_v && f.dims() == 1) throw ComparisonError("vm slice requested for x-z data");
    SeriesRecord rec;
    rec.name = to_string(spec.quantity);
    const bool along_x = f.dims() == 1 || spec.along == Direction::x;
    rec.axis = along_x ? "x" : "y";
    if (f.dims() == 2) rec.name += (along_x ? "_y" : "_x") + compact(spec.location);
    const std::size_t fixed = f.dims() == 1 ? 0 : nearest(along_x ? ds.y : ds.x, spec.location);
    const std::size_t count = along_x ? ds.nx() : ds.ny();
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t ix = along_x ? k : fixed;
      const std::size_t iy = along_x ? fixed : k;
      const std::size_t c = ix * ds.ny() + iy;
      if (!cell[c]) continue;
      rec.coordinate.push_back(along_x ? ds.x[ix] : ds.y[iy]);
      rec.model.push_back(model_value(spec.quantity, cell[c]->first, cell[c]->second));
      rec.reference.push_back(reference_value(spec.quantity, c));
    }
    report.slices.push_back(std::move(rec));
  }

  for (const ProfileSpec& spec : options.profiles) {
    const VerticalProfileSample sample = vertical_profile(ds, spec.x, spec.y, options.threshold);
    const auto& target = cell[sample.ix * ds.ny() + sample.iy];
    if (!target) throw ComparisonError("profile location lies outside the model domain");
    const MomentState s = f.state(target->first, target->second);
    const double depth = physical.H * s.h();
    const MomentCoefficients coeffs = s.coefficients(Direction::x);
    SeriesRecord rec;
    rec.name = "u_x" + compact(spec.x);
    if (f.dims() == 2) rec.name += "_y" + compact(spec.y);
    rec.axis = "z";
    Accumulator acc;
    const double dz = ds.nz() > 1 ? ds.z[1] - ds.z[0] : 1.0;
    for (const ProfilePoint& p : sample.points) {
      if (p.z > depth) continue;
      const double m = physical.U * reconstruct_velocity(coeffs, p.z / depth);
      rec.coordinate.push_back(p.z);
      rec.model.push_back(m);
      rec.reference.push_back(p.u);
      acc.add(m - p.u, dz);
    }
    report.quantities.push_back({"profile_" + rec.name, acc.norms()});
    report.profiles.push_back(std::move(rec));
  }
  return report;
}

std::vector<std::filesystem::path> write_report(const ComparisonReport& report, const std::filesystem::path& dir,
                                                const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw InputError("cannot write '" + p.string() + "'");
    written.push_back(p);
    return out;
  };

  {
    std::ofstream out = open(dir / (stem + "_norms.csv"));
    out << "quantity,norm,value\n";
    for (const auto& q : report.quantities) {
      out << q.quantity << ",l1," << text::format(q.norms.l1) << '\n';
      out << q.quantity << ",l2," << text::format(q.norms.l2) << '\n';
      out << q.quantity << ",linf," << text::format(q.norms.linf) << '\n';
    }
  }
  auto series = [&](const SeriesRecord& rec, const std::string& kind) {
    std::ofstream out = open(dir / (stem + "_" + kind + "_" + rec.name + ".csv"));
    out << rec.axis << ",model,reference\n";
    for (std::size_t k = 0; k < rec.coordinate.size(); ++k) {
      out << text::format(rec.coordinate[k]) << ',' << text::format(rec.model[k]) << ','
          << text::format(rec.reference[k]) << '\n';
    }
  };
  for (const auto& rec : report.slices) series(rec, "slice");
  for (const auto& rec : report.profiles) series(rec, "profile");
  return written;
}

}  // namespace swme
