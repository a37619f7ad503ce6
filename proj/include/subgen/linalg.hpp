#pragma once

#include <string>
#include <vector>

#include "subgen/rational.hpp"

namespace subgen {

using RatVec = std::vector<Rational>;

// Small dense matrix over Q. Only what the incidence lattice needs: reduced
// row echelon form as a canonical row-space representative, rank, span tests.
struct RatMatrix {
    size_t cols = 0;
    std::vector<RatVec> rows;

    static RatMatrix from_rows(std::vector<RatVec> rows);
};

// In-place reduced row echelon form with unit pivots; zero rows are dropped.
// Returns the rank. The result is the unique RREF of the row space, so two
// spans are equal iff their RREFs are identical.
size_t rref_in_place(RatMatrix& m);

RatMatrix stacked(const RatMatrix& a, const RatMatrix& b);
size_t rank_of(RatMatrix m);

// v in rowspan(m)? m must be in RREF.
bool in_row_span(const RatMatrix& rref, const RatVec& v);

// Canonical text key for a matrix in RREF; used to dedup flats.
std::string matrix_key(const RatMatrix& rref);

}  // namespace subgen
