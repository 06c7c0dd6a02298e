#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gsflow/error.hpp"

namespace gsflow {

using Integer = boost::multiprecision::cpp_int;

// Sparse exact integer matrix, stored by column. Zero entries are never stored.
class IntMatrix {
public:
    using Column = std::map<std::size_t, Integer>;

    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }

    Integer at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Integer& value);
    void add_to(std::size_t r, std::size_t c, const Integer& value);

    const Column& column(std::size_t c) const;
    Column row(std::size_t r) const;

    std::size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }
    bool is_square() const { return rows_ == cols(); }
    bool is_strictly_upper() const;

    IntMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    std::vector<std::vector<Integer>> dense() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

private:
    void check(std::size_t r, std::size_t c) const;

    std::size_t rows_ = 0;
    std::vector<Column> cols_;
};

IntMatrix col_combine(const IntMatrix& m, std::size_t src, std::size_t dst, const Integer& c);
IntMatrix row_combine(const IntMatrix& m, std::size_t src, std::size_t dst, const Integer& c);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix add(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);

Integer determinant(const IntMatrix& m);

// Exact inverse of a unimodular matrix; throws NonUnimodular otherwise.
IntMatrix unimodular_inverse(const IntMatrix& t);

// T^-1 * M * T.
IntMatrix conjugate(const IntMatrix& m, const IntMatrix& t);

struct SmithForm {
    std::vector<Integer> diagonal;
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& m);

struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<Integer> torsion;
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

// boundaries[k] is the map C_k -> C_{k-1}; boundaries[0] is a 0 x dim(C_0) matrix.
std::vector<HomologyGroup> homology_of_complex(const std::vector<IntMatrix>& boundaries);

std::string to_string(const Integer& v);
std::string to_text(const IntMatrix& m);
IntMatrix matrix_from_text(const std::string& text);

}  // namespace gsflow
