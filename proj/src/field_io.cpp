#include "lathom/field_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace lathom {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  return os;
}

}  // namespace

void write_field_dump(std::ostream& os, const Pattern& p, const std::vector<double>& values,
                      int ncomp) {
  const std::int64_t m = p.size();
  if (values.size() != static_cast<size_t>(ncomp) * static_cast<size_t>(m))
    throw std::invalid_argument("field size does not match the pattern");
  os << "#pattern " << p.dim();
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) os << ' ' << p.matrix().m(i, j);
  os << '\n';
  os.precision(17);
  for (std::int64_t i = 0; i < m; ++i) {
    bool first = true;
    auto emit = [&](auto v) {
      if (!first) os << ',';
      os << v;
      first = false;
    };
    for (std::int64_t l : p.lambda_of(i)) emit(l);
    for (int c = 0; c < p.dim(); ++c) emit(p.point(i)[c].to_double());
    for (int c = 0; c < ncomp; ++c)
      emit(values[static_cast<size_t>(c) * static_cast<size_t>(m) + static_cast<size_t>(i)]);
    os << '\n';
  }
}

void write_field_dump(const std::string& path, const Pattern& p, const std::vector<double>& values,
                      int ncomp) {
  auto os = open_or_throw(path);
  write_field_dump(os, p, values, ncomp);
}

FieldDump read_field_dump(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("#pattern ", 0) != 0)
    throw std::invalid_argument("field dump must start with a #pattern header");
  std::istringstream hs(header.substr(9));
  int d = 0;
  hs >> d;
  if (d < 1 || d > 3) throw std::invalid_argument("bad dimension in field dump header");
  IMat m(d);
  for (int i = 0; i < d * d; ++i)
    if (!(hs >> m.a[static_cast<size_t>(i)]))
      throw std::invalid_argument("truncated matrix in field dump header");

  const Pattern p = Pattern::build(PatternMatrix(m));
  const std::int64_t count = p.size();
  const int skip = p.pattern_dim() + d;  // lambda indices and coordinates

  FieldDump dump;
  dump.matrix = m;
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(std::stod(cell));
    if (static_cast<int>(cells.size()) <= skip)
      throw std::invalid_argument("field dump record has no value columns");
    rows.push_back(std::move(cells));
  }
  if (static_cast<std::int64_t>(rows.size()) != count)
    throw std::invalid_argument("field dump record count does not match the pattern");

  dump.ncomp = static_cast<int>(rows.front().size()) - skip;
  dump.values.resize(static_cast<size_t>(dump.ncomp) * static_cast<size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != skip + dump.ncomp)
      throw std::invalid_argument("ragged field dump records");
    for (int c = 0; c < dump.ncomp; ++c)
      dump.values[static_cast<size_t>(c) * static_cast<size_t>(count) + static_cast<size_t>(i)] =
          rows[static_cast<size_t>(i)][static_cast<size_t>(skip + c)];
  }
  return dump;
}

FieldDump read_field_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read field dump: " + path);
  return read_field_dump(is);
}

void write_residuals_csv(const std::string& path, const std::vector<double>& residuals) {
  auto os = open_or_throw(path);
  os << "iteration,residual\n";
  os.precision(17);
  for (size_t i = 0; i < residuals.size(); ++i) os << (i + 1) << ',' << residuals[i] << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
  auto os = open_or_throw(path);
  os << content;
}

void write_component_pgm(const std::string& path, const Pattern& p,
                         const std::vector<double>& values, int ncomp, int comp, int width,
                         int height) {
  const std::int64_t m = p.size();
  const int d = p.dim();
  if (values.size() != static_cast<size_t>(ncomp) * static_cast<size_t>(m))
    throw std::invalid_argument("field size does not match the pattern");
  if (comp < 0 || comp >= ncomp) throw std::invalid_argument("component out of range");
  if (d == 3) {
    for (const RatVec& y : p.points())
      if (y[2].num != 0)
        throw std::invalid_argument("image export needs a planar pattern (one x3 point)");
  }

  const double* vals = values.data() + static_cast<size_t>(comp) * static_cast<size_t>(m);
  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  for (std::int64_t i = 0; i < m; ++i) {
    vmin = std::min(vmin, vals[i]);
    vmax = std::max(vmax, vals[i]);
  }
  const double span = vmax > vmin ? vmax - vmin : 1.0;

  const IMat& mm = p.matrix().m;
  const IMat adj = mm.adjugate();
  const std::int64_t det = p.matrix().det();

  // nearest lattice point by searching integer vectors around M x
  auto nearest_index = [&](double x0, double x1) {
    std::array<double, 3> mx{0, 0, 0};
    const std::array<double, 3> x{x0, x1, 0.0};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) mx[static_cast<size_t>(i)] += static_cast<double>(mm(i, j)) * x[static_cast<size_t>(j)];
    std::int64_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    const int w = 2;
    std::array<std::int64_t, 3> z0{};
    for (int i = 0; i < d; ++i) z0[static_cast<size_t>(i)] = std::llround(mx[static_cast<size_t>(i)]);
    std::array<int, 3> dz{};
    const int lo = -w, hi = w;
    for (dz[0] = lo; dz[0] <= hi; ++dz[0])
      for (dz[1] = lo; dz[1] <= hi; ++dz[1])
        for (dz[2] = (d == 3 ? lo : 0); dz[2] <= (d == 3 ? hi : 0); ++dz[2]) {
          RatVec cand(d);
          for (int i = 0; i < d; ++i) {
            std::int64_t num = 0;
            for (int j = 0; j < d; ++j)
              num += adj(i, j) * (z0[static_cast<size_t>(j)] + dz[static_cast<size_t>(j)]);
            cand[i] = Rat(num, det);
          }
          const auto idx = p.index_of(reduce_to_symmetric_cell(cand));
          if (!idx) continue;
          double d2 = 0;
          for (int i = 0; i < 2; ++i) {
            double dd = std::abs(p.point(*idx)[i].to_double() - x[static_cast<size_t>(i)]);
            dd = std::min(dd, 1.0 - dd);  // wrapped distance
            d2 += dd * dd;
          }
          if (d2 < best_d2) {
            best_d2 = d2;
            best = *idx;
          }
        }
    return best;
  };

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << "P5\n" << width << ' ' << height << "\n255\n";
  std::vector<unsigned char> row(static_cast<size_t>(width));
  for (int py = 0; py < height; ++py) {
    // image rows run top to bottom over x2 in [1/2, -1/2)
    const double x1 = 0.5 - (py + 0.5) / height;
    for (int px = 0; px < width; ++px) {
      const double x0 = -0.5 + (px + 0.5) / width;
      const double v = vals[nearest_index(x0, x1)];
      row[static_cast<size_t>(px)] =
          static_cast<unsigned char>(std::lround(255.0 * (v - vmin) / span));
    }
    os.write(reinterpret_cast<const char*>(row.data()), width);
  }

  std::ostringstream side;
  side.precision(17);
  side << "component " << comp << "\nmin " << vmin << "\nmax " << vmax << "\n";
  write_text_file(path + ".range.txt", side.str());
}

}  // namespace lathom
