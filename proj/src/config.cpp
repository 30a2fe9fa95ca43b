#include "lathom/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lathom {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// section -> key -> raw value text
using Sections = std::map<std::string, std::map<std::string, std::string>>;

Sections parse_sections(const std::string& text) {
  Sections out;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty() || key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": key outside a section");
    out[section][key] = value;
  }
  return out;
}

double parse_double(const std::string& v) {
  if (v == "inf" || v == "Inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  size_t pos = 0;
  const double x = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("malformed number: " + v);
  return x;
}

std::vector<double> parse_double_list(const std::string& v) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw std::invalid_argument("expected a bracketed list: " + v);
  std::vector<double> out;
  std::string inner = v.substr(1, v.size() - 2);
  std::istringstream is(inner);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(parse_double(trim(item)));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& v) {
  std::vector<std::int64_t> out;
  for (double x : parse_double_list(v)) {
    if (std::floor(x) != x) throw std::invalid_argument("expected integers: " + v);
    out.push_back(static_cast<std::int64_t>(x));
  }
  return out;
}

class SectionReader {
 public:
  SectionReader(const Sections& s, std::string name) : name_(std::move(name)) {
    auto it = s.find(name_);
    if (it != s.end()) map_ = &it->second;
  }
  bool exists() const { return map_ != nullptr; }
  std::optional<std::string> get(const std::string& key) const {
    if (!map_) return std::nullopt;
    auto it = map_->find(key);
    if (it == map_->end()) return std::nullopt;
    return it->second;
  }
  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw std::invalid_argument("config: missing " + name_ + "." + key);
    return *v;
  }
  double number(const std::string& key, double fallback) const {
    auto v = get(key);
    return v ? parse_double(*v) : fallback;
  }

 private:
  std::string name_;
  const std::map<std::string, std::string>* map_ = nullptr;
};

IsotropicMaterial parse_material(const Sections& s, const std::string& section) {
  SectionReader r(s, section);
  if (!r.exists()) throw std::invalid_argument("config: missing section [" + section + "]");
  return {parse_double(r.require("lambda")), parse_double(r.require("mu"))};
}

std::string format_double(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  const Sections s = parse_sections(text);
  RunConfig cfg;

  SectionReader pattern(s, "pattern");
  cfg.matrix = PatternMatrix(parse_int_matrix(pattern.require("matrix")));

  SectionReader geom(s, "geometry");
  const std::string type = geom.require("type");
  if (type == "laminate") {
    LaminateSpec lam;
    lam.d = cfg.matrix.dim();
    const auto g = parse_int_list(geom.require("normal"));
    if (static_cast<int>(g.size()) != lam.d)
      throw std::invalid_argument("config: laminate normal has wrong dimension");
    for (int i = 0; i < lam.d; ++i) lam.g[static_cast<size_t>(i)] = g[static_cast<size_t>(i)];
    lam.f1 = parse_double(geom.require("f1"));
    lam.mat1 = parse_material(s, "material.phase1");
    lam.mat2 = parse_material(s, "material.phase2");
    lam.validate();
    cfg.geometry = lam;
  } else if (type == "hashin") {
    HashinSpec hs;
    const auto c = parse_double_list(geom.require("c"));
    if (c.size() != 3) throw std::invalid_argument("config: hashin c needs three semi-axes");
    hs.c1 = c[0];
    hs.c2 = c[1];
    hs.c3 = c[2];
    hs.rho_c = parse_double(geom.require("rho_c"));
    hs.rho_e = parse_double(geom.require("rho_e"));
    const auto n = parse_double_list(geom.require("n"));
    if (n.size() != 3) throw std::invalid_argument("config: hashin n needs three components");
    hs.n = Eigen::Vector3d(n[0], n[1], n[2]);
    if (hs.n.norm() == 0.0) throw std::invalid_argument("config: hashin n must be nonzero");
    // keep already-unit vectors bit-stable so that parse/serialize round-trips
    if (std::abs(hs.n.norm() - 1.0) > 1e-12) hs.n.normalize();
    hs.core = parse_material(s, "material.core");
    hs.coating = parse_material(s, "material.coating");
    SectionReader matrix_mat(s, "material.matrix");
    if (matrix_mat.exists()) {
      if (auto mandel = matrix_mat.get("mandel")) {
        const auto v = parse_double_list(*mandel);
        if (v.size() != 36) throw std::invalid_argument("config: material.matrix.mandel needs 36 entries");
        Eigen::MatrixXd mm(6, 6);
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) mm(i, j) = v[static_cast<size_t>(6 * i + j)];
        hs.matrix_material = Tensor4Sym(3, mm);
      } else {
        hs.matrix_material = isotropic_stiffness(parse_material(s, "material.matrix"), 3);
      }
    }
    // a coated ellipsoid run is three-dimensional; planar matrices are
    // embedded with a single x3 sample
    if (cfg.matrix.dim() == 2) {
      const IMat& m2 = cfg.matrix.m;
      cfg.matrix = PatternMatrix{
          {m2(0, 0), m2(0, 1), 0}, {m2(1, 0), m2(1, 1), 0}, {0, 0, 1}};
    }
    hs.validate();
    cfg.geometry = hs;
  } else {
    throw std::invalid_argument("config: unknown geometry type " + type);
  }

  SectionReader loading(s, "loading");
  if (auto e = loading.get("epsilon0")) {
    const auto v = parse_double_list(*e);
    const int nv = mandel_size(cfg.matrix.dim());
    if (static_cast<int>(v.size()) != nv)
      throw std::invalid_argument("config: epsilon0 needs " + std::to_string(nv) + " Mandel components");
    SymTensor2 e0(cfg.matrix.dim());
    for (int i = 0; i < nv; ++i) e0[i] = v[static_cast<size_t>(i)];
    cfg.loading = e0;
  }

  SectionReader solver(s, "solver");
  cfg.solver.tolerance = solver.number("tolerance", 1e-9);
  cfg.solver.max_iterations = static_cast<int>(solver.number("max_iterations", 10000));
  if (auto den = solver.get("denominator")) {
    if (*den == "field")
      cfg.solver.denominator = SolverConfig::Denominator::Field;
    else if (*den == "point")
      cfg.solver.denominator = SolverConfig::Denominator::Point;
    else
      throw std::invalid_argument("config: solver.denominator must be field or point");
  }
  const auto l0 = solver.get("lambda0");
  const auto m0 = solver.get("mu0");
  if (l0.has_value() != m0.has_value())
    throw std::invalid_argument("config: reference override needs both lambda0 and mu0");
  if (l0) cfg.reference_override = IsotropicMaterial{parse_double(*l0), parse_double(*m0)};

  SectionReader output(s, "output");
  if (auto dir = output.get("dir")) cfg.out_dir = *dir;
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "[pattern]\nmatrix = " << format_int_matrix(matrix.m) << "\n\n";

  if (const auto* lam = std::get_if<LaminateSpec>(&geometry)) {
    os << "[geometry]\ntype = laminate\nnormal = [";
    for (int i = 0; i < lam->d; ++i) os << (i ? "," : "") << lam->g[static_cast<size_t>(i)];
    os << "]\nf1 = " << format_double(lam->f1) << "\n\n";
    os << "[material.phase1]\nlambda = " << format_double(lam->mat1.lambda)
       << "\nmu = " << format_double(lam->mat1.mu) << "\n\n";
    os << "[material.phase2]\nlambda = " << format_double(lam->mat2.lambda)
       << "\nmu = " << format_double(lam->mat2.mu) << "\n\n";
  } else {
    const auto& hs = std::get<HashinSpec>(geometry);
    os << "[geometry]\ntype = hashin\nc = [" << format_double(hs.c1) << "," << format_double(hs.c2)
       << "," << format_double(hs.c3) << "]\nrho_c = " << format_double(hs.rho_c)
       << "\nrho_e = " << format_double(hs.rho_e) << "\nn = [" << format_double(hs.n(0)) << ","
       << format_double(hs.n(1)) << "," << format_double(hs.n(2)) << "]\n\n";
    os << "[material.core]\nlambda = " << format_double(hs.core.lambda)
       << "\nmu = " << format_double(hs.core.mu) << "\n\n";
    os << "[material.coating]\nlambda = " << format_double(hs.coating.lambda)
       << "\nmu = " << format_double(hs.coating.mu) << "\n\n";
    if (hs.matrix_material) {
      os << "[material.matrix]\nmandel = [";
      const auto& mm = hs.matrix_material->mandel();
      for (int i = 0; i < 36; ++i) os << (i ? "," : "") << format_double(mm(i / 6, i % 6));
      os << "]\n\n";
    }
  }

  if (loading) {
    os << "[loading]\nepsilon0 = [";
    for (int i = 0; i < loading->size(); ++i) os << (i ? "," : "") << format_double((*loading)[i]);
    os << "]\n\n";
  }

  os << "[solver]\ntolerance = " << format_double(solver.tolerance)
     << "\nmax_iterations = " << solver.max_iterations << "\ndenominator = "
     << (solver.denominator == SolverConfig::Denominator::Field ? "field" : "point") << "\n";
  if (reference_override)
    os << "lambda0 = " << format_double(reference_override->lambda)
       << "\nmu0 = " << format_double(reference_override->mu) << "\n";
  os << "\n[output]\ndir = " << out_dir << "\n";
  return os.str();
}

SymTensor2 RunConfig::effective_loading() const {
  if (loading) return *loading;
  if (const auto* hs = std::get_if<HashinSpec>(&geometry)) return hashin_macroscopic_strain(*hs);
  SymTensor2 e0(matrix.dim());
  e0[0] = 1.0;
  return e0;
}

}  // namespace lathom
