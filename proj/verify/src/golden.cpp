#include "skewlab/verify/golden.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "skewlab/cohomology.hpp"
#include "skewlab/experiment.hpp"
#include "skewlab/verify/oracles.hpp"

namespace skewlab::verify {

namespace {

using Rows = std::vector<std::vector<double>>;

struct Artifact {
  std::string file;
  std::vector<std::string> header;
  double tol;
  std::function<Rows()> oracle;   // baseline values
  std::function<Rows()> library;  // values under test, same layout
};

SkewProductSystem bessel_system() {
  return SkewProductSystem(2, CircleDiffeo(TrigPolynomial()), Ceiling(TrigPolynomial::cosine(1)));
}

Rows bessel_oracle() {
  Rows r;
  for (int b = -8; b <= 8; ++b)
    for (int a = -8; a <= 8; ++a) {
      const cplx z = bessel_adjoint_entry(b, a, 2);
      r.push_back({double(b), double(a), z.real(), z.imag()});
    }
  return r;
}

Rows bessel_library() {
  const SkewProductSystem sys = bessel_system();
  const FrequencyGrid grid = FrequencyGrid::guarded(sys, 2, 8);
  const CMatrix m = assemble(sys, 2, grid, Direction::Adjoint).entries;
  Rows r;
  for (int b = -8; b <= 8; ++b)
    for (int a = -8; a <= 8; ++a) {
      const cplx z = m(grid.index(b), grid.index(a));
      r.push_back({double(b), double(a), z.real(), z.imag()});
    }
  return r;
}

Rows stable_graph(bool oracle) {
  const CocycleContext ctx(doubling_cosine());
  Rows r;
  for (int i = 0; i < 16; ++i) {
    const double x = i / 16.0;
    r.push_back({x, oracle ? doubling_cosine_S(x, 200) : solve_S(ctx, 0, x, 1e-12)});
  }
  return r;
}

Rows correlations(bool oracle) {
  const CocycleContext ctx(standard_model(doubling_cosine()), 0.01);
  const Observable2D phi = smooth_observable(3, 2, 0);
  const Observable2D psi = smooth_observable(3, 2, 1);
  CorrelationEngine eng(ctx, 32);
  const auto series = eng.series_op(0, 4, phi, psi);
  Rows r;
  for (int n = 0; n <= 4; ++n) {
    const cplx z = oracle ? direct_correlation(ctx, 0, n, phi, psi, eng.density(n)) : series[static_cast<std::size_t>(n)];
    r.push_back({double(n), z.real(), z.imag()});
  }
  return r;
}

const std::vector<Artifact>& artifacts() {
  static const std::vector<Artifact> list{
      {"bessel_adjoint_nu2.csv", {"row", "col", "re", "im"}, 1e-8, bessel_oracle, bessel_library},
      {"stable_graph.csv", {"x", "S"}, 1e-9, [] { return stable_graph(true); }, [] { return stable_graph(false); }},
      {"correlation_quadrature.csv", {"n", "re", "im"}, 1e-6, [] { return correlations(true); },
       [] { return correlations(false); }},
  };
  return list;
}

std::string to_csv(const Artifact& a, const Rows& rows) {
  CsvTable t;
  t.header = a.header;
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (double v : row) cells.push_back(format_double(v));
    t.rows.push_back(cells);
  }
  return t.str();
}

bool read_csv(const std::filesystem::path& path, std::size_t columns, Rows& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        return false;
      }
    }
    if (row.size() != columns) return false;
    out.push_back(row);
  }
  return true;
}

}  // namespace

GoldenReport check_golden(const std::string& dir, bool create_missing) {
  namespace fs = std::filesystem;
  GoldenReport rep;
  for (const auto& a : artifacts()) {
    const fs::path path = fs::path(dir) / a.file;
    if (!fs::exists(path)) {
      if (!create_missing) {
        rep.passed = false;
        rep.lines.push_back("GOLDEN FAIL " + a.file + ": missing");
        continue;
      }
      fs::create_directories(dir);
      std::ofstream(path, std::ios::binary) << to_csv(a, a.oracle());
      ++rep.created;
      rep.lines.push_back("GOLDEN NEW  " + a.file + ": written from oracle");
    }
    Rows golden;
    const Rows lib = a.library();
    if (!read_csv(path, a.header.size(), golden) || golden.size() != lib.size()) {
      rep.passed = false;
      rep.lines.push_back("GOLDEN FAIL " + a.file + ": unreadable or wrong shape");
      continue;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < lib.size(); ++i)
      for (std::size_t j = 0; j < lib[i].size(); ++j) worst = std::max(worst, std::abs(lib[i][j] - golden[i][j]));
    const bool ok = worst <= a.tol;
    rep.passed = rep.passed && ok;
    rep.lines.push_back(std::string(ok ? "GOLDEN PASS " : "GOLDEN FAIL ") + a.file + ": max deviation " +
                        format_double(worst) + " (tol " + format_double(a.tol) + ")");
  }
  return rep;
}

}  // namespace skewlab::verify
