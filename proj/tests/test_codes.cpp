// Tests for CSS code construction and validation. Expected generator
// matrices, logical classes, and distances are frozen from hand derivations
// and from the offline patch verifier (tools/gen_color488.py).

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cssbell/codes.hpp"

using cssbell::codes::CssCode;
using cssbell::gf2::BitMatrix;
using cssbell::gf2::BitVector;
using Catch::Matchers::ContainsSubstring;

namespace {

// All built-in instances small enough to exercise every invariant quickly.
std::vector<CssCode> builtin_codes() {
    std::vector<CssCode> codes;
    codes.push_back(cssbell::codes::qpc(1, 1));
    codes.push_back(cssbell::codes::qpc(2, 2));
    codes.push_back(cssbell::codes::qpc(3, 3));
    codes.push_back(cssbell::codes::qpc(2, 3));
    codes.push_back(cssbell::codes::qpc(3, 2));
    codes.push_back(cssbell::codes::qpc(4, 1));
    codes.push_back(cssbell::codes::planar_surface(1, 1));
    codes.push_back(cssbell::codes::planar_surface(2, 2));
    codes.push_back(cssbell::codes::planar_surface(3, 2));
    codes.push_back(cssbell::codes::planar_surface(2, 3));
    codes.push_back(cssbell::codes::planar_surface(3, 3));
    codes.push_back(cssbell::codes::steane());
    codes.push_back(cssbell::codes::color_488(3));
    codes.push_back(cssbell::codes::color_488(5));
    codes.push_back(cssbell::codes::golay());
    return codes;
}

std::multiset<std::string> row_set(const BitMatrix& m) {
    std::vector<std::string> rows = m.to_strings();
    return {rows.begin(), rows.end()};
}

bool in_kernel(const BitMatrix& m, const BitVector& v) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.row(i).dot(v)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("steane code matches its textbook generators", "[codes]") {
    CssCode s = cssbell::codes::steane();
    CHECK(s.n_qubits() == 7);
    CHECK(s.n_logical() == 1);
    CHECK(s.h_x().to_strings() == std::vector<std::string>{"1010101", "0110011", "0001111"});
    CHECK(s.h_x() == s.h_z());
    REQUIRE(s.distance().has_value());
    CHECK(*s.distance() == 3);
}

TEST_CASE("validate accepts the Steane matrices and rejects anticommuting rows", "[codes]") {
    BitMatrix h = BitMatrix::from_strings({"1010101", "0110011", "0001111"});
    CssCode code = cssbell::codes::validate(h, h, "steane-by-hand");
    CHECK(code.n_qubits() == 7);
    CHECK(code.n_logical() == 1);

    // Single-qubit overlap between an X and a Z generator violates the CSS
    // condition; the error must name the offending pair.
    BitMatrix bad_x = BitMatrix::from_strings({"110"});
    BitMatrix bad_z = BitMatrix::from_strings({"011"});
    CHECK_THROWS_WITH(cssbell::codes::validate(bad_x, bad_z),
                      ContainsSubstring("X generator 0") && ContainsSubstring("Z generator 0"));
    // One-column matrices with a single shared qubit anticommute outright.
    CHECK_THROWS_WITH(cssbell::codes::validate(BitMatrix::from_strings({"1"}),
                                               BitMatrix::from_strings({"1"})),
                      ContainsSubstring("anticommute"));
}

TEST_CASE("validate rejects matrices that fill the whole space", "[codes]") {
    // h_x = h_z = [11] is CSS (overlap two), but rank 1 + rank 1 = N = 2
    // leaves no logical qubit.
    CHECK_THROWS_WITH(cssbell::codes::validate(BitMatrix::from_strings({"11"}),
                                               BitMatrix::from_strings({"11"})),
                      ContainsSubstring("no logical qubit"));
}

TEST_CASE("qpc builds the expected small instances", "[codes]") {
    CssCode q22 = cssbell::codes::qpc(2, 2);
    CHECK(q22.n_qubits() == 4);
    CHECK(q22.n_logical() == 1);
    CHECK(q22.h_x().to_strings() == std::vector<std::string>{"1111"});
    CHECK(q22.h_z().to_strings() == std::vector<std::string>{"1100", "0011"});

    CssCode q11 = cssbell::codes::qpc(1, 1);
    CHECK(q11.n_qubits() == 1);
    CHECK(q11.n_logical() == 1);
    CHECK(q11.h_x().rows() == 0);
    CHECK(q11.h_z().rows() == 0);
    CHECK(q11.logical_x().at(0).to_string() == "1");
    CHECK(q11.logical_z().at(0).to_string() == "1");

    CssCode shor = cssbell::codes::qpc(3, 3);
    CHECK(shor.n_qubits() == 9);
    CHECK(shor.h_x().rows() + shor.h_z().rows() == 8);
    REQUIRE(shor.distance().has_value());
    CHECK(*shor.distance() == 3);

    CHECK_THROWS_AS(cssbell::codes::qpc(0, 2), std::invalid_argument);
}

TEST_CASE("qpc logical classes match the hand derivation", "[codes]") {
    CssCode q22 = cssbell::codes::qpc(2, 2);
    // X-bar class is {1100, 0011}: stored representative must be in it.
    const BitVector& xbar = q22.logical_x().at(0);
    std::set<std::string> x_class{"1100", "0011"};
    CHECK(x_class.count(xbar.to_string()) == 1);
    // Z-bar class is {1010, 1001, 0110, 0101}.
    const BitVector& zbar = q22.logical_z().at(0);
    std::set<std::string> z_class{"1010", "1001", "0110", "0101"};
    CHECK(z_class.count(zbar.to_string()) == 1);
    // QPC(n,m) distance is min(n,m): X-bar spans a block (weight m), Z-bar
    // crosses the blocks (weight n).
    REQUIRE(cssbell::codes::qpc(2, 3).distance().has_value());
    CHECK(*cssbell::codes::qpc(2, 3).distance() == 2);
    CHECK(*cssbell::codes::qpc(3, 2).distance() == 2);
    CHECK(*cssbell::codes::qpc(4, 1).distance() == 1);
}

TEST_CASE("planar surface code reproduces the reference generators", "[codes]") {
    CssCode s32 = cssbell::codes::planar_surface(3, 2);
    CHECK(s32.n_qubits() == 8);
    CHECK(s32.n_logical() == 1);
    // Z generators, row-major faces: Z1Z4Z6, Z2Z4Z5Z7, Z3Z5Z8 (1-indexed).
    CHECK(s32.h_z().to_strings() ==
          std::vector<std::string>{"10010100", "01011010", "00101001"});
    // X-bar class contains X1X6, Z-bar class contains Z1Z2Z3.
    BitVector x16 = BitVector::from_indices(8, {0, 5});
    BitVector z123 = BitVector::from_indices(8, {0, 1, 2});
    CHECK(cssbell::gf2::in_row_space(s32.h_x(), s32.logical_x().at(0) ^ x16));
    CHECK(cssbell::gf2::in_row_space(s32.h_z(), s32.logical_z().at(0) ^ z123));

    CssCode s22 = cssbell::codes::planar_surface(2, 2);
    CHECK(s22.n_qubits() == 5);
    CHECK(s22.n_logical() == 1);

    // Minimum logical weights: n for Z-bar, m for X-bar.
    REQUIRE(s32.distance().has_value());
    CHECK(*s32.distance() == 2);
    CHECK(*cssbell::codes::planar_surface(3, 3).distance() == 3);

    CHECK_THROWS_AS(cssbell::codes::planar_surface(0, 1), std::invalid_argument);
}

TEST_CASE("planar surface with one row degenerates to qpc", "[codes]") {
    for (std::size_t n : {1, 2, 3, 5}) {
        CssCode surf = cssbell::codes::planar_surface(n, 1);
        CssCode parity = cssbell::codes::qpc(n, 1);
        CHECK(surf.n_qubits() == parity.n_qubits());
        CHECK(row_set(surf.h_x()) == row_set(parity.h_x()));
        CHECK(row_set(surf.h_z()) == row_set(parity.h_z()));
    }
}

TEST_CASE("planar surface transpose is the lattice dual", "[codes]") {
    // Rotating the patch by 90 degrees maps horizontal edge (r,c) of
    // surface(n,m) to horizontal edge (c,r) of surface(m,n) and swaps the
    // roles of faces and vertices, i.e. Z generators map onto X generators.
    for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {2, 2}, {3, 3}, {4, 2}}) {
        CssCode a = cssbell::codes::planar_surface(n, m);
        CssCode b = cssbell::codes::planar_surface(m, n);
        auto phi = [n, m](std::size_t q) {
            // Decompose q in surface(n,m) coordinates.
            std::size_t band = q % (2 * n - 1);
            std::size_t r = q / (2 * n - 1);
            if (band < n) {
                return band * (2 * m - 1) + r;  // horizontal (r, band) -> (band, r)
            }
            std::size_t c = band - n;
            return c * (2 * m - 1) + m + r;  // vertical (r, c) -> (c, r)
        };
        auto map_rows = [&phi, &b](const BitMatrix& rows) {
            std::multiset<std::string> mapped;
            for (std::size_t i = 0; i < rows.rows(); ++i) {
                BitVector v(b.n_qubits());
                for (std::size_t q : rows.row(i).support()) {
                    v = v.with_bit(phi(q), true);
                }
                mapped.insert(v.to_string());
            }
            return mapped;
        };
        CHECK(map_rows(a.h_z()) == row_set(b.h_x()));
        CHECK(map_rows(a.h_x()) == row_set(b.h_z()));
    }
}

TEST_CASE("color codes have identical X and Z row spaces and exact distance", "[codes]") {
    for (std::size_t d : {std::size_t{3}, std::size_t{5}}) {
        CssCode c = cssbell::codes::color_488(d);
        CHECK(c.n_logical() == 1);
        CHECK(row_set(c.h_x()) == row_set(c.h_z()));
        REQUIRE(c.distance().has_value());
        CHECK(*c.distance() == d);
    }
    CHECK(cssbell::codes::color_488(3).n_qubits() == 7);
    CHECK(cssbell::codes::color_488(5).n_qubits() == 17);
    CHECK_THROWS_WITH(cssbell::codes::color_488(4), ContainsSubstring("supported distances"));
}

TEST_CASE("color_488(3) is the Steane code up to qubit relabeling", "[codes]") {
    CssCode c3 = cssbell::codes::color_488(3);
    CssCode st = cssbell::codes::steane();
    REQUIRE(c3.n_qubits() == 7);
    // Search the 7! relabelings for one sending the color-code generators
    // onto the Steane generators as row sets.
    std::array<std::size_t, 7> perm{0, 1, 2, 3, 4, 5, 6};
    std::multiset<std::string> target = row_set(st.h_x());
    bool found = false;
    do {
        std::multiset<std::string> mapped;
        for (std::size_t i = 0; i < c3.h_x().rows(); ++i) {
            BitVector v(7);
            for (std::size_t q : c3.h_x().row(i).support()) {
                v = v.with_bit(perm[q], true);
            }
            mapped.insert(v.to_string());
        }
        if (mapped == target) {
            found = true;
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(found);
}

TEST_CASE("color code boundary sides are minimum-weight logical representatives", "[codes]") {
    for (std::size_t d : {std::size_t{3}, std::size_t{5}}) {
        CssCode c = cssbell::codes::color_488(d);
        cssbell::codes::Color488Sides sides = cssbell::codes::color_488_sides(d);
        std::vector<std::vector<std::size_t>> all{sides.green, sides.red, sides.blue};
        for (const std::vector<std::size_t>& side : all) {
            REQUIRE(side.size() == d);
            BitVector v = BitVector::from_indices(
                c.n_qubits(), std::vector<std::size_t>(side.begin(), side.end()));
            CHECK(in_kernel(c.h_z(), v));
            CHECK_FALSE(cssbell::gf2::in_row_space(c.h_x(), v));
            // Same logical class as the stored representative.
            CHECK(cssbell::gf2::in_row_space(c.h_x(), v ^ c.logical_x().at(0)));
        }
        // The three sides of the triangle meet pairwise in exactly one
        // corner qubit and together cover 3d - 3 boundary qubits.
        std::set<std::size_t> g(sides.green.begin(), sides.green.end());
        std::set<std::size_t> r(sides.red.begin(), sides.red.end());
        std::set<std::size_t> b(sides.blue.begin(), sides.blue.end());
        auto overlap = [](const std::set<std::size_t>& s, const std::set<std::size_t>& t) {
            std::size_t c = 0;
            for (std::size_t q : s) {
                c += t.count(q);
            }
            return c;
        };
        CHECK(overlap(g, r) == 1);
        CHECK(overlap(g, b) == 1);
        CHECK(overlap(r, b) == 1);
        std::set<std::size_t> all_sides = g;
        all_sides.insert(r.begin(), r.end());
        all_sides.insert(b.begin(), b.end());
        CHECK(all_sides.size() == 3 * d - 3);
    }
}

TEST_CASE("golay code validates as [[23,1,7]]", "[codes]") {
    CssCode g = cssbell::codes::golay();
    CHECK(g.n_qubits() == 23);
    CHECK(g.n_logical() == 1);
    CHECK(g.h_x().rows() == 11);
    CHECK(g.h_x() == g.h_z());
    CHECK(cssbell::gf2::rank(g.h_x()) == 11);
    REQUIRE(g.distance().has_value());
    CHECK(*g.distance() == 7);
}

TEST_CASE("logical operators satisfy the full invariant set for every builtin", "[codes]") {
    for (const CssCode& code : builtin_codes()) {
        INFO(code.name());
        std::size_t k = code.n_logical();
        REQUIRE(code.logical_x().size() == k);
        REQUIRE(code.logical_z().size() == k);
        for (std::size_t t = 0; t < k; ++t) {
            CHECK(in_kernel(code.h_z(), code.logical_x().at(t)));
            CHECK(in_kernel(code.h_x(), code.logical_z().at(t)));
            CHECK_FALSE(cssbell::gf2::in_row_space(code.h_x(), code.logical_x().at(t)));
            CHECK_FALSE(cssbell::gf2::in_row_space(code.h_z(), code.logical_z().at(t)));
            for (std::size_t s = 0; s < k; ++s) {
                CHECK(code.logical_x().at(s).dot(code.logical_z().at(t)) == (s == t));
            }
        }
    }
}

TEST_CASE("stabilizers plus logicals span the opposite kernel (Lemma 1)", "[codes]") {
    for (const CssCode& code : builtin_codes()) {
        INFO(code.name());
        // span(rows of h_x + logical_x) = kernel(h_z): dimensions match and
        // every generator lies inside the kernel.
        BitMatrix x_side = cssbell::gf2::BitMatrix::vstack(
            code.h_x(), BitMatrix::from_rows(code.logical_x()));
        std::size_t kernel_dim_z = code.n_qubits() - cssbell::gf2::rank(code.h_z());
        CHECK(cssbell::gf2::rank(x_side) == kernel_dim_z);
        for (std::size_t i = 0; i < x_side.rows(); ++i) {
            CHECK(in_kernel(code.h_z(), x_side.row(i)));
        }

        BitMatrix z_side = cssbell::gf2::BitMatrix::vstack(
            code.h_z(), BitMatrix::from_rows(code.logical_z()));
        std::size_t kernel_dim_x = code.n_qubits() - cssbell::gf2::rank(code.h_x());
        CHECK(cssbell::gf2::rank(z_side) == kernel_dim_x);
        for (std::size_t i = 0; i < z_side.rows(); ++i) {
            CHECK(in_kernel(code.h_x(), z_side.row(i)));
        }
    }
}

TEST_CASE("validate is a fixed point on its own output", "[codes]") {
    for (const CssCode& code : builtin_codes()) {
        INFO(code.name());
        CssCode again = cssbell::codes::validate(code.h_x(), code.h_z(), code.name());
        CHECK(again.n_qubits() == code.n_qubits());
        CHECK(again.n_logical() == code.n_logical());
        // Canonical logicals are deterministic: validating twice agrees.
        CssCode third = cssbell::codes::validate(again.h_x(), again.h_z(), again.name());
        for (std::size_t t = 0; t < again.n_logical(); ++t) {
            CHECK(again.logical_x().at(t) == third.logical_x().at(t));
            CHECK(again.logical_z().at(t) == third.logical_z().at(t));
        }
    }
}

TEST_CASE("codeword spaces are the two kernels", "[codes]") {
    using cssbell::codes::codeword_spaces;
    cssbell::codes::CodewordSpaces qs = codeword_spaces(cssbell::codes::qpc(2, 2));
    // C_Z = kernel(h_z) = {0000, 1100, 0011, 1111}.
    REQUIRE(qs.c_z_basis.size() == 2);
    std::set<std::string> span;
    span.insert(std::string(4, '0'));
    span.insert(qs.c_z_basis[0].to_string());
    span.insert(qs.c_z_basis[1].to_string());
    span.insert((qs.c_z_basis[0] ^ qs.c_z_basis[1]).to_string());
    CHECK(span == std::set<std::string>{"0000", "1100", "0011", "1111"});

    for (const CssCode& code : builtin_codes()) {
        INFO(code.name());
        cssbell::codes::CodewordSpaces spaces = codeword_spaces(code);
        CHECK(spaces.c_x_basis.size() + spaces.c_z_basis.size() ==
              code.n_qubits() + code.n_logical());
        for (const BitVector& v : spaces.c_x_basis) {
            CHECK(in_kernel(code.h_x(), v));
        }
        for (const BitVector& v : spaces.c_z_basis) {
            CHECK(in_kernel(code.h_z(), v));
        }
    }

    // QPC(n,1) has no Z generators, so C_Z is the full space.
    CHECK(codeword_spaces(cssbell::codes::qpc(4, 1)).c_z_basis.size() == 4);
}

TEST_CASE("load_code round-trips the Steane code", "[codes]") {
    std::string text =
        "# the [[7,1,3]] code in file format\n"
        "N 7 K 1\n"
        "HX\n"
        "1010101\n"
        "0110011\n"
        "0001111\n"
        "HZ\n"
        "1010101\n"
        "0110011\n"
        "0001111\n";
    CssCode loaded = cssbell::codes::load_code(text, "steane-file");
    CssCode st = cssbell::codes::steane();
    CHECK(loaded.n_qubits() == 7);
    CHECK(loaded.n_logical() == 1);
    CHECK(row_set(loaded.h_x()) == row_set(st.h_x()));
    CHECK(row_set(loaded.h_z()) == row_set(st.h_z()));
    CHECK(loaded.name() == "steane-file");
}

TEST_CASE("load_code reports parse errors with line numbers", "[codes]") {
    using cssbell::codes::load_code;
    CHECK_THROWS_WITH(load_code("N 7\nHX\n"), ContainsSubstring("line 1"));
    CHECK_THROWS_WITH(load_code("N 4 K 1\nHQ\n"), ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(load_code("N 4 K 1\nHX\n1121\nHZ\n"),
                      ContainsSubstring("line 3") && ContainsSubstring("'0'/'1'"));
    CHECK_THROWS_WITH(load_code("N 4 K 1\nHX\n111\nHZ\n"),
                      ContainsSubstring("line 3") && ContainsSubstring("expected N = 4"));
    CHECK_THROWS_WITH(load_code("N 4 K 1\nHX\n1111\n"), ContainsSubstring("missing 'HZ'"));
    CHECK_THROWS_WITH(load_code(""), ContainsSubstring("missing 'N <int> K <int>'"));
    // Declared K disagrees with the matrices.
    CHECK_THROWS_WITH(load_code("N 4 K 2\nHX\n1111\nHZ\n1100\n0011\n"),
                      ContainsSubstring("K = 2") && ContainsSubstring("k = 1"));
    // Comments and blank lines are ignored wherever they appear.
    CssCode c = load_code("\n# header\nN 1 K 1  # bare qubit\nHX\n# none\nHZ\n");
    CHECK(c.n_qubits() == 1);
    CHECK(c.n_logical() == 1);
}

TEST_CASE("logical_operators agrees with the validated code", "[codes]") {
    BitMatrix h = BitMatrix::from_strings({"1010101", "0110011", "0001111"});
    auto [lx, lz] = cssbell::codes::logical_operators(h, h);
    REQUIRE(lx.size() == 1);
    REQUIRE(lz.size() == 1);
    CHECK(in_kernel(h, lx[0]));
    CHECK(in_kernel(h, lz[0]));
    CHECK(lx[0].dot(lz[0]));
    // Weight-3 representatives exist in each class for the Steane code: the
    // canonical representative must be reachable from one by stabilizers.
    BitVector w3 = BitVector::from_indices(7, {0, 1, 2});
    CHECK(cssbell::gf2::in_row_space(h, lx[0] ^ w3));
}
