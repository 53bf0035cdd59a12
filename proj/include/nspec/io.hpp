// This file is part of neutral-spectra, a spectral toolkit for neutral
// two-dimensional Markov chains. MIT license; see LICENSE at the repo root.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nspec/kernel.hpp"
#include "nspec/lift.hpp"
#include "nspec/moran.hpp"
#include "nspec/qsd.hpp"
#include "nspec/triangle.hpp"

namespace nspec {

// A chain-spec file parsed into the matching in-memory object. The JSON
// document is an object with a "type" discriminator:
//
//   {"type": "general",     "rows": [[...], ...]}
//   {"type": "birth_death", "p": [...], "q": [...]}
//   {"type": "moran3",      "N": 6}
//   {"type": "a2dmc",       "N": 2,
//    "entries": [{"from": [i, j], "to": [k, l], "prob": 0.5}, ...]}
//
// "rows" is the full (N+1)x(N+1) one-dimensional kernel with state 0
// absorbing. "p"/"q" are the birth and death probabilities at states 1..N.
// "entries" lists every nonzero transition of a two-dimensional chain over
// the triangle; rows must be complete, including any mass sent to the
// origin. Exactly one payload is parsed per type; structural validation
// runs immediately, so a ParsedChain is always usable.
struct ParsedChain {
  std::string type;
  std::optional<KernelSpec> kernel;  // general, birth_death
  std::optional<MoranSpec> moran;    // moran3
  std::optional<A2dMCSpec> a2d;      // a2dmc
};

ParsedChain read_chain_file(const std::string& path);
ParsedChain parse_chain_json(const std::string& text);

// Matrix over the triangle as CSV: header "i,j,k,l,value", one line per
// nonzero entry in lexicographic (i,j,k,l) order, values printed with 17
// significant digits so re-ingestion is bit-identical.
void write_matrix_csv(std::ostream& out, const TriIndex& index, const Mat& m);
Mat read_matrix_csv(std::istream& in, const TriIndex& index);

// Distribution (or any vector indexed by the triangle) as CSV with header
// "i,j,value", nonzero entries in lexicographic order.
void write_distribution_csv(std::ostream& out, const TriIndex& index,
                            const std::vector<double>& v);

// Diagonal block over {d..N} as CSV with header "n,m,value".
void write_block_csv(std::ostream& out, const BlockMatrix& block);

// 17-significant-digit decimal form, the round-trip-exact format used by
// every CSV emitter.
std::string format_double(double v);

}  // namespace nspec
