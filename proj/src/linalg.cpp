#include "subgen/linalg.hpp"

#include "subgen/errors.hpp"

namespace subgen {

RatMatrix RatMatrix::from_rows(std::vector<RatVec> rows) {
    RatMatrix m;
    if (rows.empty()) throw ValidationError("matrix with no rows");
    m.cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != m.cols) throw ValidationError("ragged matrix rows");
    m.rows = std::move(rows);
    return m;
}

size_t rref_in_place(RatMatrix& m) {
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < m.rows.size() && m.rows[pivot][col].is_zero()) ++pivot;
        if (pivot == m.rows.size()) continue;
        std::swap(m.rows[rank], m.rows[pivot]);
        Rational inv = m.rows[rank][col].inverse();
        for (size_t j = col; j < m.cols; ++j) m.rows[rank][j] *= inv;
        for (size_t i = 0; i < m.rows.size(); ++i) {
            if (i == rank || m.rows[i][col].is_zero()) continue;
            Rational f = m.rows[i][col];
            for (size_t j = col; j < m.cols; ++j) m.rows[i][j] -= f * m.rows[rank][j];
        }
        ++rank;
    }
    m.rows.resize(rank);
    return rank;
}

RatMatrix stacked(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.cols) throw ValidationError("stacking matrices with different widths");
    RatMatrix m;
    m.cols = a.cols;
    m.rows = a.rows;
    m.rows.insert(m.rows.end(), b.rows.begin(), b.rows.end());
    return m;
}

size_t rank_of(RatMatrix m) { return rref_in_place(m); }

bool in_row_span(const RatMatrix& rref, const RatVec& v) {
    if (v.size() != rref.cols) throw ValidationError("span test with wrong vector length");
    RatVec rem = v;
    for (const auto& row : rref.rows) {
        size_t lead = 0;
        while (lead < rref.cols && row[lead].is_zero()) ++lead;
        if (lead == rref.cols) continue;
        if (rem[lead].is_zero()) continue;
        Rational f = rem[lead];  // row has unit pivot
        for (size_t j = lead; j < rref.cols; ++j) rem[j] -= f * row[j];
    }
    for (const auto& x : rem)
        if (!x.is_zero()) return false;
    return true;
}

std::string matrix_key(const RatMatrix& rref) {
    std::string key = std::to_string(rref.rows.size()) + "x" + std::to_string(rref.cols);
    for (const auto& row : rref.rows) {
        key += "|";
        for (const auto& x : row) {
            key += x.str();
            key += ",";
        }
    }
    return key;
}

}  // namespace subgen
