#include "swme/snapshot_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "swme/errors.hpp"
#include "swme/detail/text.hpp"

namespace swme {
namespace {

double uniform_spacing(const std::vector<double>& centres, const char* axis) {
  if (centres.size() < 3) throw ParseError(std::string("need at least 3 cells along ") + axis, 0);
  const double d = centres[1] - centres[0];
  if (!(d > 0.0)) throw ParseError(std::string(axis) + " centres not increasing", 0);
  for (std::size_t k = 1; k < centres.size(); ++k) {
    if (std::abs(centres[k] - centres[k - 1] - d) > 1e-8 * d) {
      throw ParseError(std::string("non-uniform ") + axis + " spacing", 0);
    }
  }
  return d;
}

}  // namespace

std::string snapshot_header(int dims, int order) {
  std::string h = dims == 1 ? "x,h,um" : "x,y,h,um,vm";
  for (int j = 1; j <= order; ++j) {
    h += ",alpha" + std::to_string(j);
    if (dims == 2) h += ",beta" + std::to_string(j);
  }
  return h;
}

void write_snapshot(const GridField& field, std::ostream& out) {
  out << snapshot_header(field.dims(), field.order()) << '\n';
  const int N = field.order();
  for (int j = 0; j < field.ny(); ++j) {
    for (int i = 0; i < field.nx(); ++i) {
      const MomentState s = field.state(i, j);
      out << text::format(field.x_center(i));
      if (field.dims() == 2) out << ',' << text::format(field.y_center(j));
      out << ',' << text::format(s.h()) << ',' << text::format(s.velocity(Direction::x));
      if (field.dims() == 2) out << ',' << text::format(s.velocity(Direction::y));
      for (int k = 1; k <= N; ++k) {
        out << ',' << text::format(s.coefficient(Direction::x, k));
        if (field.dims() == 2) out << ',' << text::format(s.coefficient(Direction::y, k));
      }
      out << '\n';
    }
  }
}

std::string snapshot_filename(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.6f.csv", t);
  return buf;
}

std::filesystem::path write_snapshot_file(const GridField& field, double t, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / snapshot_filename(t);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write_snapshot(field, out);
  return path;
}

GridField read_snapshot(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  int dims = 0;
  int order = 0;
  std::size_t width = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = text::split(t);
    if (dims == 0) {
      dims = fields.size() >= 2 && fields[1] == "y" ? 2 : 1;
      const std::size_t fixed = dims == 1 ? 3 : 5;
      const std::size_t per = dims == 1 ? 1 : 2;
      if (fields.size() < fixed || (fields.size() - fixed) % per != 0) {
        throw ParseError("unrecognised snapshot header", line_no);
      }
      order = static_cast<int>((fields.size() - fixed) / per);
      if (std::string(t) != snapshot_header(dims, order)) throw ParseError("unrecognised snapshot header", line_no);
      width = fields.size();
      continue;
    }
    if (fields.size() != width) throw ParseError("wrong number of fields", line_no);
    std::vector<double> vals;
    for (const auto f : fields) {
      const auto v = text::to_double(f);
      if (!v || !std::isfinite(*v)) throw ParseError("invalid number '" + std::string(f) + "'", line_no);
      vals.push_back(*v);
    }
    rows.push_back(std::move(vals));
  }
  if (dims == 0) throw ParseError("missing header", line_no);
  if (rows.empty()) throw ParseError("no data rows", line_no);

  std::size_t nx = rows.size();
  std::size_t ny = 1;
  if (dims == 2) {
    nx = 0;
    while (nx < rows.size() && rows[nx][1] == rows[0][1]) ++nx;
    if (rows.size() % nx != 0) throw ParseError("row count does not form a rectangular grid", 0);
    ny = rows.size() / nx;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < nx; ++i) xs.push_back(rows[i][0]);
  for (std::size_t j = 0; j < ny; ++j) ys.push_back(dims == 2 ? rows[j * nx][1] : 0.0);
  const double dx = uniform_spacing(xs, "x");
  const double dy = dims == 2 ? uniform_spacing(ys, "y") : 1.0;

  GridField field(dims, order, static_cast<int>(nx), static_cast<int>(ny), dx, dy, xs[0] - 0.5 * dx,
                  dims == 2 ? ys[0] - 0.5 * dy : 0.0);
  const std::size_t base = dims == 1 ? 2 : 3;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const auto& r = rows[j * nx + i];
      if (std::abs(r[0] - xs[i]) > 1e-8 * dx || (dims == 2 && std::abs(r[1] - ys[j]) > 1e-8 * dy)) {
        throw ParseError("rows are not in x-fastest grid order", 0);
      }
      const double h = r[base - 1];
      MomentCoefficients u{r[base], {}};
      MomentCoefficients v{dims == 2 ? r[base + 1] : 0.0, {}};
      for (int k = 0; k < order; ++k) {
        if (dims == 1) {
          u.alphas.push_back(r[base + 1 + static_cast<std::size_t>(k)]);
        } else {
          u.alphas.push_back(r[base + 2 + 2 * static_cast<std::size_t>(k)]);
          v.alphas.push_back(r[base + 3 + 2 * static_cast<std::size_t>(k)]);
        }
      }
      field.set_state(static_cast<int>(i), static_cast<int>(j), MomentState::from_primitive(dims, h, u, v));
    }
  }
  apply_boundary(field);
  return field;
}

Snapshot read_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open snapshot file '" + path.string() + "'");
  Snapshot s{0.0, read_snapshot(in)};
  const std::string name = path.filename().string();
  double t = 0.0;
  if (std::sscanf(name.c_str(), "snapshot_t%lf.csv", &t) == 1) s.t = t;
  return s;
}

}  // namespace swme
