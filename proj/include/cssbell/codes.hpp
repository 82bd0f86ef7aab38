#pragma once

// CSS code representation: validation, logical-operator extraction, and
// constructors for the code families used by the Bell-measurement analyses
// (quantum parity codes, planar surface codes, 4-8-8 triangular color codes,
// the Steane code, and the Golay code), plus a plain-text code file format.
//
// Conventions:
//  * Qubits are 0-indexed. Stabilizer generators are described by their
//    supports only: row r of h_x is the support of the r-th X-type
//    generator, row r of h_z the support of the r-th Z-type generator.
//  * For a valid code, every h_x row overlaps every h_z row on an even
//    number of qubits (the stabilizer group is abelian), and
//    rank(h_x) + rank(h_z) = n_qubits - n_logical.
//  * logical_x[t] / logical_z[t] are supports of one X̄_t / Z̄_t
//    representative each, chosen so that the symplectic pairing is the
//    identity: logical_x[s] and logical_z[t] overlap on an odd number of
//    qubits exactly when s == t.
//  * A CssCode is immutable after construction, and every constructor runs
//    the full invariant check, so holding a CssCode is proof of validity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cssbell/gf2.hpp"

namespace cssbell::codes {

using gf2::BitMatrix;
using gf2::BitVector;

namespace detail {

// Builds an n_rows x n_cols matrix from supports; an empty row list still
// carries the column count (needed by degenerate codes with no generators
// of one type, e.g. qpc(n,1)).
inline BitMatrix matrix_from_supports(std::size_t n_cols,
                                      const std::vector<std::vector<std::size_t>>& supports) {
    if (supports.empty()) {
        return BitMatrix(0, n_cols);
    }
    std::vector<BitVector> rows;
    rows.reserve(supports.size());
    for (const std::vector<std::size_t>& s : supports) {
        BitVector v(n_cols);
        for (std::size_t i : s) {
            v = v.with_bit(i, true);
        }
        rows.push_back(std::move(v));
    }
    return BitMatrix::from_rows(std::move(rows));
}

// Throws unless every h_x row has even overlap with every h_z row. The
// message names the first offending pair, which is the actionable datum
// when a hand-written code fails to load.
inline void check_css_condition(const BitMatrix& h_x, const BitMatrix& h_z) {
    if (h_x.cols() != h_z.cols()) {
        throw std::invalid_argument("CssCode: h_x acts on " + std::to_string(h_x.cols()) +
                                    " qubits but h_z acts on " + std::to_string(h_z.cols()));
    }
    for (std::size_t i = 0; i < h_x.rows(); ++i) {
        for (std::size_t j = 0; j < h_z.rows(); ++j) {
            if (h_x.row(i).dot(h_z.row(j))) {
                throw std::invalid_argument("CssCode: CSS condition violated: X generator " +
                                            std::to_string(i) + " and Z generator " + std::to_string(j) +
                                            " overlap on an odd number of qubits (they anticommute)");
            }
        }
    }
}

// Canonical representatives spanning kernel(opposite) modulo
// rowspace(same_type): reduce a kernel basis modulo the stabilizer rows,
// then bring the survivors to reduced row echelon form. The reduction
// stays inside kernel(opposite) because the CSS condition puts the
// same-type stabilizer rows in that kernel too, and echelon form with
// lowest-index pivots makes the choice reproducible.
inline std::vector<BitVector> logical_side(const BitMatrix& same_type, const BitMatrix& opposite) {
    gf2::ReducedRowBasis stabilizer(same_type);
    std::vector<BitVector> reduced;
    for (const BitVector& v : gf2::kernel_basis(opposite)) {
        BitVector r = stabilizer.reduce(v);
        if (!r.is_zero()) {
            reduced.push_back(std::move(r));
        }
    }
    gf2::RrefResult rr = gf2::rref(BitMatrix::from_rows(std::move(reduced)));
    std::vector<BitVector> reps;
    reps.reserve(rr.rank);
    for (std::size_t i = 0; i < rr.rank; ++i) {
        reps.push_back(rr.reduced.row(i));
    }
    return reps;
}

// Adjusts the Z-side representatives so the symplectic pairing with the
// X side is exactly the identity matrix: with G[s][t] = <x[s], z[t]>, the
// replacement z'[t] = sum_u inverse(G)[u][t] z[u] gives <x[s], z'[t]> =
// delta_st. G is invertible because the pairing between the two logical
// quotient spaces is non-degenerate.
inline std::vector<BitVector> pair_logicals(const std::vector<BitVector>& x_reps,
                                            std::vector<BitVector> z_reps) {
    std::size_t k = x_reps.size();
    if (k == 0 || k != z_reps.size()) {
        throw std::logic_error("CssCode: logical sides have mismatched dimensions");
    }
    std::vector<BitVector> gram_rows;
    gram_rows.reserve(k);
    for (std::size_t s = 0; s < k; ++s) {
        BitVector row(k);
        for (std::size_t t = 0; t < k; ++t) {
            if (x_reps[s].dot(z_reps[t])) {
                row = row.with_bit(t, true);
            }
        }
        gram_rows.push_back(std::move(row));
    }
    BitMatrix gram_inverse = gf2::inverse(BitMatrix::from_rows(std::move(gram_rows)));
    std::vector<BitVector> paired;
    paired.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
        BitVector acc(z_reps.front().size());
        for (std::size_t u = 0; u < k; ++u) {
            if (gram_inverse.get(u, t)) {
                acc = acc ^ z_reps[u];
            }
        }
        paired.push_back(std::move(acc));
    }
    return paired;
}

// Minimum weight over kernel(opposite) \ rowspace(same_type) — the lowest
// weight of any logical representative on one side. Returns nullopt when
// the kernel is too large to enumerate.
inline std::optional<std::size_t> coset_minimum_weight(const BitMatrix& same_type,
                                                       const BitMatrix& opposite) {
    std::vector<BitVector> kernel = gf2::kernel_basis(opposite);
    if (kernel.empty() || kernel.size() > 20) {
        return std::nullopt;
    }
    gf2::ReducedRowBasis stabilizer(same_type);
    std::size_t best = opposite.cols() + 1;
    for (const BitVector& v : gf2::enumerate_span(kernel)) {
        std::size_t w = v.weight();
        if (w == 0 || w >= best) {
            continue;
        }
        if (!stabilizer.contains(v)) {
            best = w;
        }
    }
    if (best > opposite.cols()) {
        return std::nullopt;
    }
    return best;
}

}  // namespace detail

// A validated CSS code. Construct directly from check matrices (logical
// operators are computed canonically) or with explicit logical
// representatives (they are verified, not trusted). Immutable afterwards.
class CssCode {
public:
    CssCode(std::string name, BitMatrix h_x, BitMatrix h_z)
        : name_(std::move(name)), h_x_(std::move(h_x)), h_z_(std::move(h_z)) {
        establish_matrix_invariants();
        logical_x_ = detail::logical_side(h_x_, h_z_);
        logical_z_ = detail::pair_logicals(logical_x_, detail::logical_side(h_z_, h_x_));
        check_logical_invariants();
        compute_distance_metadata();
    }

    CssCode(std::string name, BitMatrix h_x, BitMatrix h_z, std::vector<BitVector> logical_x,
            std::vector<BitVector> logical_z)
        : name_(std::move(name)),
          h_x_(std::move(h_x)),
          h_z_(std::move(h_z)),
          logical_x_(std::move(logical_x)),
          logical_z_(std::move(logical_z)) {
        establish_matrix_invariants();
        check_logical_invariants();
        compute_distance_metadata();
    }

    const std::string& name() const { return name_; }
    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t n_logical() const { return n_logical_; }
    const BitMatrix& h_x() const { return h_x_; }
    const BitMatrix& h_z() const { return h_z_; }
    const std::vector<BitVector>& logical_x() const { return logical_x_; }
    const std::vector<BitVector>& logical_z() const { return logical_z_; }

    // Code distance, computed by brute force over the logical cosets when
    // the code is small enough (N <= 23); absent otherwise. Metadata only:
    // nothing downstream is allowed to trust a distance it cannot check.
    std::optional<std::size_t> distance() const { return distance_; }

private:
    void establish_matrix_invariants() {
        detail::check_css_condition(h_x_, h_z_);
        n_qubits_ = h_x_.cols();
        std::size_t stabilizer_rank = gf2::rank(h_x_) + gf2::rank(h_z_);
        if (stabilizer_rank == n_qubits_) {
            throw std::invalid_argument("CssCode: matrices define no logical qubit (rank(h_x) + "
                                        "rank(h_z) = " +
                                        std::to_string(n_qubits_) + " = number of qubits)");
        }
        n_logical_ = n_qubits_ - stabilizer_rank;
    }

    void check_logical_invariants() const {
        if (logical_x_.size() != n_logical_ || logical_z_.size() != n_logical_) {
            throw std::invalid_argument("CssCode: expected " + std::to_string(n_logical_) +
                                        " logical representatives per side, got " +
                                        std::to_string(logical_x_.size()) + " X and " +
                                        std::to_string(logical_z_.size()) + " Z");
        }
        for (std::size_t t = 0; t < n_logical_; ++t) {
            if (logical_x_[t].size() != n_qubits_ || logical_z_[t].size() != n_qubits_) {
                throw std::invalid_argument("CssCode: logical representative " + std::to_string(t) +
                                            " has the wrong number of qubits");
            }
            for (std::size_t j = 0; j < h_z_.rows(); ++j) {
                if (logical_x_[t].dot(h_z_.row(j))) {
                    throw std::invalid_argument("CssCode: logical X " + std::to_string(t) +
                                                " anticommutes with Z generator " + std::to_string(j));
                }
            }
            for (std::size_t j = 0; j < h_x_.rows(); ++j) {
                if (logical_z_[t].dot(h_x_.row(j))) {
                    throw std::invalid_argument("CssCode: logical Z " + std::to_string(t) +
                                                " anticommutes with X generator " + std::to_string(j));
                }
            }
            if (gf2::in_row_space(h_x_, logical_x_[t])) {
                throw std::invalid_argument("CssCode: logical X " + std::to_string(t) +
                                            " is a product of X stabilizers");
            }
            if (gf2::in_row_space(h_z_, logical_z_[t])) {
                throw std::invalid_argument("CssCode: logical Z " + std::to_string(t) +
                                            " is a product of Z stabilizers");
            }
        }
        for (std::size_t s = 0; s < n_logical_; ++s) {
            for (std::size_t t = 0; t < n_logical_; ++t) {
                if (logical_x_[s].dot(logical_z_[t]) != (s == t)) {
                    throw std::invalid_argument("CssCode: symplectic pairing of logical X " +
                                                std::to_string(s) + " with logical Z " +
                                                std::to_string(t) + " is not delta_st");
                }
            }
        }
    }

    void compute_distance_metadata() {
        if (n_qubits_ > 23) {
            return;
        }
        std::optional<std::size_t> dx = detail::coset_minimum_weight(h_x_, h_z_);
        std::optional<std::size_t> dz = detail::coset_minimum_weight(h_z_, h_x_);
        if (dx && dz) {
            distance_ = std::min(*dx, *dz);
        }
    }

    std::string name_;
    BitMatrix h_x_;
    BitMatrix h_z_;
    std::vector<BitVector> logical_x_;
    std::vector<BitVector> logical_z_;
    std::size_t n_qubits_ = 0;
    std::size_t n_logical_ = 0;
    std::optional<std::size_t> distance_;
};

// Validates a pair of check matrices and returns the resulting code with
// canonical logical operators.
inline CssCode validate(const BitMatrix& h_x, const BitMatrix& h_z,
                        std::string name = "unnamed") {
    return CssCode(std::move(name), h_x, h_z);
}

// Canonical logical representatives for a pair of check matrices: k
// independent X-side representatives spanning kernel(h_z) modulo
// rowspace(h_x), and k Z-side representatives likewise, paired so the
// symplectic pairing is the identity.
inline std::pair<std::vector<BitVector>, std::vector<BitVector>> logical_operators(
    const BitMatrix& h_x, const BitMatrix& h_z) {
    CssCode code("", h_x, h_z);
    return {code.logical_x(), code.logical_z()};
}

// Bases of the classical codeword spaces C_X = kernel(h_x) and
// C_Z = kernel(h_z). XX outcome strings of a transversal Bell measurement
// range over C_X and ZZ outcome strings over C_Z, so these two kernels
// drive the whole efficiency enumeration downstream.
struct CodewordSpaces {
    std::vector<BitVector> c_x_basis;
    std::vector<BitVector> c_z_basis;
};

inline CodewordSpaces codeword_spaces(const CssCode& code) {
    return {gf2::kernel_basis(code.h_x()), gf2::kernel_basis(code.h_z())};
}

// Quantum parity code QPC(n,m): n blocks of m qubits (qubit (l,j) has
// index l*m + j). Z generators compare neighbouring qubits inside a block,
// X generators compare neighbouring blocks as wholes, encoding one logical
// qubit. QPC(3,3) is the Shor code; QPC(1,1) is a bare qubit.
inline CssCode qpc(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) {
        throw std::invalid_argument("qpc: both block count and block size must be at least 1");
    }
    std::size_t n_qubits = n * m;
    std::vector<std::vector<std::size_t>> z_supports;
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t j = 0; j + 1 < m; ++j) {
            z_supports.push_back({l * m + j, l * m + j + 1});
        }
    }
    std::vector<std::vector<std::size_t>> x_supports;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        std::vector<std::size_t> support(2 * m);
        for (std::size_t i = 0; i < 2 * m; ++i) {
            support[i] = j * m + i;
        }
        x_supports.push_back(std::move(support));
    }
    // X̄ acts on every qubit of the first block, Z̄ on the first qubit of
    // every block; they intersect exactly on qubit 0.
    std::vector<std::size_t> x_bar(m);
    for (std::size_t j = 0; j < m; ++j) {
        x_bar[j] = j;
    }
    std::vector<std::size_t> z_bar(n);
    for (std::size_t l = 0; l < n; ++l) {
        z_bar[l] = l * m;
    }
    return CssCode("qpc(" + std::to_string(n) + "," + std::to_string(m) + ")",
                   detail::matrix_from_supports(n_qubits, x_supports),
                   detail::matrix_from_supports(n_qubits, z_supports),
                   {detail::matrix_from_supports(n_qubits, {x_bar}).row(0)},
                   {detail::matrix_from_supports(n_qubits, {z_bar}).row(0)});
}

// Planar surface code on an n-wide, m-tall patch of the square lattice with
// two rough and two smooth boundaries. Qubits sit on lattice edges and are
// numbered row-major: m rows of n horizontal edges alternate with m-1 rows
// of n-1 vertical edges, N = n*m + (n-1)*(m-1) in total. Z generators come
// from faces, X generators from vertices; the minimum logical weights are
// n for Z̄ (a horizontal edge row) and m for X̄ (a vertical cut).
inline CssCode planar_surface(std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) {
        throw std::invalid_argument("planar_surface: both side lengths must be at least 1");
    }
    std::size_t n_qubits = n * m + (n - 1) * (m - 1);
    // Horizontal edge c of row r, and vertical edge c of the gap below row r.
    auto horizontal = [n](std::size_t r, std::size_t c) { return r * (2 * n - 1) + c; };
    auto vertical = [n](std::size_t r, std::size_t c) { return r * (2 * n - 1) + n + c; };
    std::vector<std::vector<std::size_t>> z_supports;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Face between horizontal rows i and i+1 in column j; boundary
            // faces lack one of the two vertical edges.
            std::vector<std::size_t> s{horizontal(i, j), horizontal(i + 1, j)};
            if (j > 0) {
                s.push_back(vertical(i, j - 1));
            }
            if (j + 1 < n) {
                s.push_back(vertical(i, j));
            }
            z_supports.push_back(std::move(s));
        }
    }
    std::vector<std::vector<std::size_t>> x_supports;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            // Vertex between horizontal edges j and j+1 of row r; boundary
            // vertices lack one of the two vertical edges.
            std::vector<std::size_t> s{horizontal(r, j), horizontal(r, j + 1)};
            if (r > 0) {
                s.push_back(vertical(r - 1, j));
            }
            if (r + 1 < m) {
                s.push_back(vertical(r, j));
            }
            x_supports.push_back(std::move(s));
        }
    }
    // Z̄ runs along the top row of horizontal edges (weight n), X̄ down the
    // left column of horizontal edges (weight m); they meet only at edge 0.
    std::vector<std::size_t> z_bar(n);
    for (std::size_t j = 0; j < n; ++j) {
        z_bar[j] = horizontal(0, j);
    }
    std::vector<std::size_t> x_bar(m);
    for (std::size_t r = 0; r < m; ++r) {
        x_bar[r] = horizontal(r, 0);
    }
    return CssCode("surface(" + std::to_string(n) + "," + std::to_string(m) + ")",
                   detail::matrix_from_supports(n_qubits, x_supports),
                   detail::matrix_from_supports(n_qubits, z_supports),
                   {detail::matrix_from_supports(n_qubits, {x_bar}).row(0)},
                   {detail::matrix_from_supports(n_qubits, {z_bar}).row(0)});
}

// The [[7,1,3]] Steane code with its textbook generators
// {X1X3X5X7, X2X3X6X7, X4X5X6X7} (1-indexed) and identical Z generators.
inline CssCode steane() {
    BitMatrix h = BitMatrix::from_strings({
        "1010101",
        "0110011",
        "0001111",
    });
    BitVector bar = BitVector::from_string("1110000");
    return CssCode("steane", h, h, {bar}, {bar});
}

namespace detail {

// One embedded 4-8-8 triangular color-code patch. Face supports serve as
// both X and Z generators. The three `side_*` arrays are the minimum-weight
// (weight d) logical representatives running along the three boundary
// sides of the triangle; each is labeled by the color that is absent from
// the faces touching that side.
struct Color488Patch {
    std::size_t n_qubits;
    std::vector<std::string> face_rows;
    std::vector<std::size_t> side_g;
    std::vector<std::size_t> side_r;
    std::vector<std::size_t> side_b;
};

// Data tables generated and machine-verified offline (tools/gen_color488.py):
// vertices of a triangular patch of the 4-8-8 tiling, numbered row-major by
// descending lattice row and ascending column within a row. The verifier
// checks qubit count, face coverage, pairwise commutation, stabilizer rank
// (N-1)/2, the exact code distance, and that each side is a weight-d
// logical representative.
inline const Color488Patch& color_488_patch(std::size_t d) {
    static const Color488Patch d3{
        7,
        {
            "0011011",  // octagon, red
            "1111000",  // octagon, blue
            "0101110",  // square, green
        },
        {0, 2, 6},  // green side
        {0, 1, 4},  // red side
        {4, 5, 6},  // blue side
    };
    static const Color488Patch d5{
        17,
        {
            "00000000001100011",  // octagon, red
            "00000000000011011",  // octagon, blue
            "00000000100110010",  // square, green
            "00011011110011000",  // octagon, red
            "10110010000000000",  // square, green
            "11011000000000000",  // octagon, blue
            "00000101010000100",  // octagon, blue
            "01001101000000000",  // square, green
        },
        {9, 10, 13, 14, 16},  // green side
        {0, 1, 2, 5, 14},     // red side
        {2, 6, 8, 10, 11},    // blue side
    };
    switch (d) {
        case 3:
            return d3;
        case 5:
            return d5;
        default:
            throw std::invalid_argument("color_488: supported distances are 3, 5, and 7; got " +
                                        std::to_string(d));
    }
}

}  // namespace detail

// Triangular 4-8-8 color code of distance d (d in {3, 5, 7}), from embedded
// verified data tables. X and Z generators share the same face supports, so
// the two codeword spaces coincide. The d = 3 instance is the Steane code
// up to a qubit relabeling.
inline CssCode color_488(std::size_t d) {
    const detail::Color488Patch& patch = detail::color_488_patch(d);
    std::vector<BitVector> rows;
    rows.reserve(patch.face_rows.size());
    for (const std::string& r : patch.face_rows) {
        rows.push_back(BitVector::from_string(r));
    }
    BitMatrix h = BitMatrix::from_rows(std::move(rows));
    BitVector bar = detail::matrix_from_supports(patch.n_qubits, {patch.side_g}).row(0);
    return CssCode("color_488(" + std::to_string(d) + ")", h, h, {bar}, {bar});
}

// The three weight-d boundary sides of the triangular patch behind
// color_488(d), each a minimum-weight logical representative. Formations
// that treat one triangle side specially consume these.
struct Color488Sides {
    std::vector<std::size_t> green;
    std::vector<std::size_t> red;
    std::vector<std::size_t> blue;
};

inline Color488Sides color_488_sides(std::size_t d) {
    const detail::Color488Patch& patch = detail::color_488_patch(d);
    return {patch.side_g, patch.side_r, patch.side_b};
}

// The [[23,1,7]] Golay code: h_x = h_z = the parity-check matrix of the
// binary [23,12,7] Golay code, whose dual is self-orthogonal. The check
// matrix is built at runtime from the generator polynomial
// g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1: the rows are the 11
// cyclic shifts x^i * h*(x), i = 0..10, of the reciprocal of
// h(x) = (x^23 + 1) / g(x).
inline CssCode golay() {
    constexpr std::size_t n_qubits = 23;
    std::uint32_t g = 0;
    for (int e : {0, 2, 4, 5, 6, 10, 11}) {
        g |= std::uint32_t{1} << e;
    }
    // Polynomial long division of x^23 + 1 by g over GF(2).
    std::uint32_t remainder = (std::uint32_t{1} << n_qubits) | 1u;
    std::uint32_t h = 0;
    for (int shift = static_cast<int>(n_qubits) - 11; shift >= 0; --shift) {
        if ((remainder >> (shift + 11)) & 1u) {
            remainder ^= g << shift;
            h |= std::uint32_t{1} << shift;
        }
    }
    if (remainder != 0) {
        throw std::logic_error("golay: generator polynomial does not divide x^23 + 1");
    }
    // Reciprocal polynomial h*(x) = x^12 h(1/x): reverse the 13 coefficients.
    std::uint32_t h_star = 0;
    for (int i = 0; i <= 12; ++i) {
        if ((h >> i) & 1u) {
            h_star |= std::uint32_t{1} << (12 - i);
        }
    }
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < 11; ++i) {
        BitVector row(n_qubits);
        for (std::size_t j = 0; j <= 12; ++j) {
            if ((h_star >> j) & 1u) {
                row = row.with_bit(i + j, true);
            }
        }
        rows.push_back(std::move(row));
    }
    BitMatrix check = BitMatrix::from_rows(std::move(rows));
    // The all-ones word is a Golay codeword of odd weight, hence a logical
    // representative on both sides, self-paired since 23 is odd.
    BitVector all_ones(n_qubits);
    for (std::size_t i = 0; i < n_qubits; ++i) {
        all_ones = all_ones.with_bit(i, true);
    }
    return CssCode("golay", check, check, {all_ones}, {all_ones});
}

// Parses the plain-text code format:
//
//   # comment
//   N 7 K 1
//   HX
//   1010101
//   0110011
//   0001111
//   HZ
//   1010101
//   0110011
//   0001111
//
// Logical operators are never read from the file; they are recomputed and
// the declared K is checked against the matrices. Parse errors carry the
// 1-based line number.
inline CssCode load_code(const std::string& text, std::string name = "file") {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> n_declared;
    std::optional<std::size_t> k_declared;
    std::vector<BitVector> hx_rows;
    std::vector<BitVector> hz_rows;
    // 0 = expect header, 1 = expect HX, 2 = reading HX rows, 3 = reading HZ rows.
    int state = 0;

    auto fail = [&line_no](const std::string& message) -> void {
        throw std::invalid_argument("load_code: line " + std::to_string(line_no) + ": " + message);
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first)) {
            continue;  // blank or comment-only line
        }
        if (state == 0) {
            long long n_value = -1;
            long long k_value = -1;
            std::string k_marker;
            std::string excess;
            if (first != "N" || !(tokens >> n_value >> k_marker >> k_value) || k_marker != "K" ||
                (tokens >> excess)) {
                fail("expected header 'N <int> K <int>', got '" + line + "'");
            }
            if (n_value < 1 || k_value < 0) {
                fail("N must be positive and K non-negative");
            }
            n_declared = static_cast<std::size_t>(n_value);
            k_declared = static_cast<std::size_t>(k_value);
            state = 1;
            continue;
        }
        std::string excess;
        if (tokens >> excess) {
            fail("unexpected token '" + excess + "' after '" + first + "'");
        }
        if (state == 1) {
            if (first != "HX") {
                fail("expected 'HX' section, got '" + first + "'");
            }
            state = 2;
            continue;
        }
        if (state == 2 && first == "HZ") {
            state = 3;
            continue;
        }
        // A generator row in the current section.
        if (first.size() != *n_declared) {
            fail("row has " + std::to_string(first.size()) + " characters, expected N = " +
                 std::to_string(*n_declared));
        }
        BitVector row(0);
        try {
            row = BitVector::from_string(first);
        } catch (const std::invalid_argument&) {
            fail("row contains a character other than '0'/'1'");
        }
        (state == 2 ? hx_rows : hz_rows).push_back(std::move(row));
    }
    line_no += 1;  // errors below concern the end of input
    if (state == 0) {
        fail("missing 'N <int> K <int>' header");
    }
    if (state < 3) {
        fail("missing 'HZ' section");
    }
    BitMatrix h_x = hx_rows.empty() ? BitMatrix(0, *n_declared) : BitMatrix::from_rows(std::move(hx_rows));
    BitMatrix h_z = hz_rows.empty() ? BitMatrix(0, *n_declared) : BitMatrix::from_rows(std::move(hz_rows));
    CssCode code(std::move(name), std::move(h_x), std::move(h_z));
    if (code.n_logical() != *k_declared) {
        throw std::invalid_argument("load_code: header declares K = " + std::to_string(*k_declared) +
                                    " but the matrices encode k = " + std::to_string(code.n_logical()));
    }
    return code;
}

}  // namespace cssbell::codes
