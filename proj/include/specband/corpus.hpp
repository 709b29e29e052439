#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specband/grid.hpp"
#include "specband/operator.hpp"

namespace specband {

enum class CorpusKind { band_limited, gaussians, eigenfunctions };

// Unit-L2 test functions whose spectral support lies inside the eigenvalue
// band [band_lo, band_hi]. Generation is fully determined by the seed:
// band_limited draws Gaussian eigen-coefficients (hand-rolled Box-Muller
// over mt19937_64 so the stream does not depend on the standard library's
// distribution internals); gaussians are bumps exp(-a|x-x0|^2) projected
// onto the band; eigenfunctions are signed members of the band.
struct Corpus {
  CorpusKind kind;
  std::uint64_t seed = 0;
  double band_lo = 0.0, band_hi = 0.0;
  std::vector<GridFunction> members;
  std::vector<std::string> labels;
  // For projected kinds: L2 mass fraction kept by the band projection.
  std::vector<double> retained_mass;
};

Corpus make_corpus(const EigenDecomposition& ed, CorpusKind kind, int count,
                   std::uint64_t seed, double band_lo, double band_hi);

CorpusKind corpus_kind_from_string(const std::string& s);
std::string to_string(CorpusKind kind);

}  // namespace specband
