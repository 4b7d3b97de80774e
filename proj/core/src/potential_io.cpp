#include "diracac/potential_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace diracac {

namespace {

constexpr const char* kMagic = "dirac1d-potential v1";

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    line.erase(0, pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    return true;
  }
  return false;
}

template <typename T>
T header_field(std::istream& in, const std::string& key) {
  std::string line;
  if (!next_line(in, line))
    throw InvalidArgument("potential file: missing header field " + key);
  std::istringstream ls(line);
  std::string name;
  T value{};
  if (!(ls >> name >> value) || name != key)
    throw InvalidArgument("potential file: expected '" + key + " <value>', got '" +
                          line + "'");
  return value;
}

Complex parse_complex(const std::string& token) {
  const auto comma = token.find(',');
  if (comma == std::string::npos)
    throw InvalidArgument("potential file: malformed entry '" + token + "'");
  try {
    std::size_t used_re = 0, used_im = 0;
    const std::string re = token.substr(0, comma), im = token.substr(comma + 1);
    const double x = std::stod(re, &used_re);
    const double y = std::stod(im, &used_im);
    if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument("");
    return {x, y};
  } catch (const std::exception&) {
    throw InvalidArgument("potential file: malformed entry '" + token + "'");
  }
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
  return buf;
}

}  // namespace

MatrixPotential read_potential(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != kMagic)
    throw InvalidArgument("potential file: missing '" + std::string(kMagic) +
                          "' header");
  const int m = header_field<int>(in, "m");
  const double step = header_field<double>(in, "step");
  const double r_max = header_field<double>(in, "r_max");
  const double support = header_field<double>(in, "support_radius");
  const long nodes = header_field<long>(in, "nodes");
  if (m < 1) throw InvalidArgument("potential file: m must be positive");
  const RadialGrid grid = RadialGrid::uniform(r_max, step);
  if (nodes != static_cast<long>(grid.size()))
    throw InvalidArgument("potential file: node count does not match the grid");
  if (support < 0.0 || support > r_max)
    throw InvalidArgument("potential file: support_radius outside [0, r_max]");

  std::vector<CMatrix> a(grid.size(), CMatrix(m, m)), b(grid.size(), CMatrix(m, m));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!next_line(in, line))
      throw InvalidArgument("potential file: truncated at row " + std::to_string(i));
    std::istringstream ls(line);
    std::string token;
    for (int k = 0; k < 2 * m * m; ++k) {
      if (!(ls >> token))
        throw InvalidArgument("potential file: short row " + std::to_string(i));
      CMatrix& dst = k < m * m ? a[i] : b[i];
      const int e = k % (m * m);
      dst(e / m, e % m) = parse_complex(token);
    }
    if (ls >> token)
      throw InvalidArgument("potential file: long row " + std::to_string(i));
  }
  return MatrixPotential::from_samples(grid, std::move(a), std::move(b), support);
}

MatrixPotential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open potential file " + path);
  return read_potential(in);
}

void write_potential(std::ostream& out, const MatrixPotential& pot,
                     const RadialGrid& grid) {
  const int m = pot.size();
  char buf[64];
  out << kMagic << '\n' << "m " << m << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", grid.step());
  out << "step " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", grid.r_max());
  out << "r_max " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", std::min(pot.support_radius(), grid.r_max()));
  out << "support_radius " << buf << '\n';
  out << "nodes " << grid.size() << '\n';
  CMatrix a, b;
  for (double r : grid.nodes()) {
    pot.evaluate(r, Side::Right, a, b);
    bool first = true;
    for (const CMatrix* mat : {&a, &b})
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          if (!first) out << ' ';
          first = false;
          out << format_complex((*mat)(i, j));
        }
    out << '\n';
  }
}

void save_potential(const std::string& path, const MatrixPotential& pot,
                    const RadialGrid& grid) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write potential file " + path);
  write_potential(out, pot, grid);
}

CMatrix random_hermitian(int m, std::uint64_t seed, double norm) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix h(m, m);
  for (int i = 0; i < m; ++i) {
    h(i, i) = u(rng);
    for (int j = i + 1; j < m; ++j) {
      h(i, j) = Complex(u(rng), u(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  const double n = h.operatorNorm();
  if (n > 0.0) h *= norm / n;
  return h;
}

namespace {

template <typename ProfileFn>
MatrixPotential random_potential(int m, double support, std::uint64_t seed,
                                 double amplitude, int pieces, ProfileFn make) {
  if (!(support > 0.0)) throw InvalidArgument("random potential: support must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<MatrixPotential::Term> terms;
  for (int k = 0; k < pieces; ++k) {
    double lo = support * u(rng), hi = support * u(rng);
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo < 0.05 * support) hi = std::min(support, lo + 0.05 * support);
    if (k == 0) hi = support;  // pin the support radius
    terms.push_back({make(lo, hi), random_hermitian(m, rng(), amplitude * u(rng)),
                     random_hermitian(m, rng(), amplitude * u(rng))});
  }
  return MatrixPotential::from_terms(m, std::move(terms));
}

}  // namespace

MatrixPotential random_step_potential(int m, double support, std::uint64_t seed,
                                      double amplitude, int pieces) {
  return random_potential(m, support, seed, amplitude, pieces, profiles::step);
}

MatrixPotential random_bump_potential(int m, double support, std::uint64_t seed,
                                      double amplitude, int pieces) {
  return random_potential(m, support, seed, amplitude, pieces, profiles::bump);
}

}  // namespace diracac
