#include "specband/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace specband {

namespace {

// Uniform in [0,1) from the top 53 bits; deterministic across platforms.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; consumes two uniforms per pair.
void next_gaussian_pair(std::mt19937_64& rng, double& a, double& b) {
  double u1 = next_uniform(rng);
  while (u1 <= 0.0) u1 = next_uniform(rng);
  const double u2 = next_uniform(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  a = r * std::cos(2.0 * M_PI * u2);
  b = r * std::sin(2.0 * M_PI * u2);
}

std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i + 1 < n; i += 2)
    next_gaussian_pair(rng, v[i], v[i + 1]);
  if (n % 2 == 1) {
    double a, b;
    next_gaussian_pair(rng, a, b);
    v[n - 1] = a;
  }
  return v;
}

double weighted_l2(const GridFunction& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    acc += f.grid->node_weight(i) * f.values[i] * f.values[i];
  return std::sqrt(acc);
}

}  // namespace

Corpus make_corpus(const EigenDecomposition& ed, CorpusKind kind, int count,
                   std::uint64_t seed, double band_lo, double band_hi) {
  if (count <= 0)
    throw std::invalid_argument("make_corpus: count must be positive");
  if (!(band_lo < band_hi))
    throw std::invalid_argument("make_corpus: empty band");

  std::vector<std::size_t> band;
  for (std::size_t k = 0; k < ed.count(); ++k)
    if (ed.eigenvalue(k) >= band_lo && ed.eigenvalue(k) <= band_hi)
      band.push_back(k);
  if (band.empty())
    throw std::invalid_argument(
        "make_corpus: no eigenvalues inside the requested band");

  Corpus corpus;
  corpus.kind = kind;
  corpus.seed = seed;
  corpus.band_lo = band_lo;
  corpus.band_hi = band_hi;

  std::mt19937_64 rng(seed);
  const std::size_t m = ed.count();

  for (int i = 0; i < count; ++i) {
    std::vector<double> coeffs(m, 0.0);
    std::string label;
    double retained = 1.0;
    switch (kind) {
      case CorpusKind::band_limited: {
        const std::vector<double> g = gaussian_vector(rng, band.size());
        for (std::size_t b = 0; b < band.size(); ++b) coeffs[band[b]] = g[b];
        label = "band_limited_" + std::to_string(i);
        break;
      }
      case CorpusKind::gaussians: {
        // exp(-a |x-x0|^2) with a in [0.5, 2.5], x0 in +-L/4, projected
        // onto the band.
        const double a = 0.5 + 2.0 * next_uniform(rng);
        const double L = ed.grid()->halfwidth();
        const double x0 = (next_uniform(rng) - 0.5) * (L / 2.0);
        const double y0 = ed.grid()->dim() == 2
                              ? (next_uniform(rng) - 0.5) * (L / 2.0)
                              : 0.0;
        GridFunction bump = make_function(
            ed.grid(), [a, x0, y0](double x, double y) {
              const double d2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
              return std::exp(-a * d2);
            });
        std::vector<double> c = ed.coefficients(bump);
        double inband = 0.0, total = 0.0;
        for (std::size_t k = 0; k < m; ++k) total += c[k] * c[k];
        for (std::size_t k = 0; k < m; ++k) {
          const double lam = ed.eigenvalue(k);
          if (lam < band_lo || lam > band_hi) {
            c[k] = 0.0;
          } else {
            inband += c[k] * c[k];
          }
        }
        if (inband <= 0.0)
          throw std::invalid_argument(
              "make_corpus: gaussian member has no band content");
        retained = inband / total;
        coeffs = c;
        char buf[80];
        std::snprintf(buf, sizeof(buf), "gaussian_%d_a%.3f_x%.3f", i, a, x0);
        label = buf;
        break;
      }
      case CorpusKind::eigenfunctions: {
        const std::size_t pick = static_cast<std::size_t>(
            next_uniform(rng) * static_cast<double>(band.size()));
        const std::size_t k = band[std::min(pick, band.size() - 1)];
        const double sign = next_uniform(rng) < 0.5 ? -1.0 : 1.0;
        coeffs[k] = sign;
        label = "eigenfunction_k" + std::to_string(k) +
                (sign > 0 ? "_plus" : "_minus");
        break;
      }
    }
    GridFunction f = ed.synthesize(coeffs);
    const double nrm = weighted_l2(f);
    if (nrm <= 0.0)
      throw std::runtime_error("make_corpus: degenerate member");
    for (double& v : f.values) v /= nrm;
    corpus.members.push_back(std::move(f));
    corpus.labels.push_back(std::move(label));
    corpus.retained_mass.push_back(retained);
  }
  return corpus;
}

CorpusKind corpus_kind_from_string(const std::string& s) {
  if (s == "band_limited") return CorpusKind::band_limited;
  if (s == "gaussians") return CorpusKind::gaussians;
  if (s == "eigenfunctions") return CorpusKind::eigenfunctions;
  throw std::invalid_argument("unknown corpus kind: " + s);
}

std::string to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::band_limited: return "band_limited";
    case CorpusKind::gaussians: return "gaussians";
    case CorpusKind::eigenfunctions: return "eigenfunctions";
  }
  return "?";
}

}  // namespace specband
