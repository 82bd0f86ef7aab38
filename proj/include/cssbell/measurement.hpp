#pragma once

// Models of physical Bell measurements on photon pairs and the information
// each yields about a pair's Bell state.
//
// A Bell state of two qubits is labeled by two bits (x, z): x is the XX
// eigenvalue and z the ZZ eigenvalue under the map +1 <-> 0, -1 <-> 1.  The
// YY eigenvalue is then y = x ^ z ^ sigma, where sigma is a global sign
// convention (default 0; flipping it relabels YY=0 <-> YY=1 triggers).
// Knowing any two of {XX, ZZ, YY} determines the third, so the information
// a measurement yields is always one of: nothing, a single basis value, or
// the full Bell state.
//
// Three families of physical Bell measurements are modeled:
//   * guaranteed-information BMs: pick a basis B and a trigger bit g; the
//     measurement identifies the Bell state completely whenever the state's
//     B-bit equals g, and otherwise reveals only that B-bit.  An optional
//     enhancement parameter p_adv in [0, 1) upgrades each non-triggering
//     outcome to full identification independently with probability p_adv.
//   * unconstrained BMs: always identify the state (a two-qubit gate, not
//     achievable with static linear optics; used for comparison).
//   * state-independent BMs: identify the state with probability p_bm
//     regardless of which state it is, and otherwise yield nothing.
//
// The Charlie construction: any desired per-Bell-state identification
// probability tuple (p_0, p_1, p_2, p_3) with sum <= 2 can be dominated by
// a probability mixture of the six guaranteed-information BMs, with exact
// equality when the sum is exactly 2 (a normalized mixture always induces
// per-state probabilities summing to 2, since each guaranteed-information
// BM identifies exactly two of the four states).  charlie_distribution
// constructs that mixture with exact rational arithmetic: sort the tuple,
// solve the p_min = 0 special case, then shift probability mass toward the
// smallest state until it reaches its target.

#include "rational.hpp"

#include <array>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cssbell::measurement {

enum class Basis { X, Y, Z };

inline char basis_letter(Basis b) {
    switch (b) {
        case Basis::X:
            return 'X';
        case Basis::Y:
            return 'Y';
        default:
            return 'Z';
    }
}

// The realizable per-pair knowledge states.  Knowing two basis values
// implies the third, so "two known" collapses to Full and the only shapes
// are: nothing, exactly one basis, everything.
enum class InfoSet : unsigned char {
    None = 0,  // erased or failed: no information about the pair
    SingleX = 1,
    SingleY = 2,
    SingleZ = 3,
    Full = 4,
};

inline InfoSet single(Basis b) {
    switch (b) {
        case Basis::X:
            return InfoSet::SingleX;
        case Basis::Y:
            return InfoSet::SingleY;
        default:
            return InfoSet::SingleZ;
    }
}

constexpr std::size_t kInfoSetCount = 5;

struct GuaranteedInfo {
    Basis basis;
    int trigger;  // 0 or 1
};

struct Unconstrained {};

struct StateIndependent {
    Rational p_bm;  // in [0, 1]
};

// One physical Bell measurement assigned to one qubit pair.
class BmAssignment {
  public:
    using Variant = std::variant<GuaranteedInfo, Unconstrained, StateIndependent>;

    static BmAssignment guaranteed(Basis basis, int trigger, const Rational& p_adv = 0) {
        if (trigger != 0 && trigger != 1) {
            throw std::invalid_argument("BmAssignment: trigger must be 0 or 1");
        }
        return BmAssignment(GuaranteedInfo{basis, trigger}, p_adv);
    }

    static BmAssignment unconstrained() { return BmAssignment(Unconstrained{}, 0); }

    static BmAssignment state_independent(const Rational& p_bm) {
        if (p_bm < 0 || p_bm > 1) {
            throw std::invalid_argument("BmAssignment: p_bm must lie in [0, 1]");
        }
        return BmAssignment(StateIndependent{p_bm}, 0);
    }

    const Variant& variant() const { return variant_; }
    const Rational& p_adv() const { return p_adv_; }

    bool is_guaranteed() const { return std::holds_alternative<GuaranteedInfo>(variant_); }
    bool is_unconstrained() const { return std::holds_alternative<Unconstrained>(variant_); }
    bool is_state_independent() const {
        return std::holds_alternative<StateIndependent>(variant_);
    }

  private:
    BmAssignment(Variant v, const Rational& p_adv) : variant_(std::move(v)), p_adv_(p_adv) {
        if (p_adv_ < 0 || p_adv_ >= 1) {
            throw std::invalid_argument("BmAssignment: p_adv must lie in [0, 1)");
        }
    }

    Variant variant_;
    Rational p_adv_;  // rescue probability for non-triggering guaranteed BMs
};

// A measurement formation: one Bell measurement per qubit pair.  Length is
// validated against the code at the point of use.
struct Formation {
    std::vector<BmAssignment> assignments;

    std::size_t size() const { return assignments.size(); }
};

// A probability distribution over InfoSet values, indexed by the enum.
struct InfoDistribution {
    std::array<Rational, kInfoSetCount> probability{};

    Rational& operator[](InfoSet s) { return probability[static_cast<std::size_t>(s)]; }
    const Rational& operator[](InfoSet s) const {
        return probability[static_cast<std::size_t>(s)];
    }

    Rational total() const {
        Rational t = 0;
        for (const Rational& p : probability) {
            t += p;
        }
        return t;
    }
};

// The information yielded by one physical BM on one pair, given the pair's
// Bell-state bits (x_bit, z_bit) and whether the pair is erased.  Erasure
// (either photon lost) destroys all information regardless of the BM.
inline InfoDistribution available_info(const BmAssignment& bm, int x_bit, int z_bit,
                                       bool erased, int sigma = 0) {
    InfoDistribution out;
    if (erased) {
        out[InfoSet::None] = 1;
        return out;
    }
    if (bm.is_unconstrained()) {
        out[InfoSet::Full] = 1;
        return out;
    }
    if (bm.is_state_independent()) {
        const Rational& p = std::get<StateIndependent>(bm.variant()).p_bm;
        out[InfoSet::Full] = p;
        out[InfoSet::None] = Rational(1) - p;
        return out;
    }
    const GuaranteedInfo& g = std::get<GuaranteedInfo>(bm.variant());
    int bit = 0;
    switch (g.basis) {
        case Basis::X:
            bit = x_bit & 1;
            break;
        case Basis::Z:
            bit = z_bit & 1;
            break;
        case Basis::Y:
            bit = (x_bit ^ z_bit ^ sigma) & 1;
            break;
    }
    if (bit == g.trigger) {
        out[InfoSet::Full] = 1;
    } else {
        out[InfoSet::Full] = bm.p_adv();
        out[single(g.basis)] = Rational(1) - bm.p_adv();
    }
    return out;
}

// A probability mixture over the six guaranteed-information BMs, indexed by
// (basis, trigger).
struct CharlieMixture {
    // index = 2 * basis + trigger with basis order X, Y, Z
    std::array<Rational, 6> weights{};

    static std::size_t index(Basis b, int trigger) {
        return 2 * static_cast<std::size_t>(b) + static_cast<std::size_t>(trigger & 1);
    }

    Rational& weight(Basis b, int trigger) { return weights[index(b, trigger)]; }
    const Rational& weight(Basis b, int trigger) const { return weights[index(b, trigger)]; }

    Rational total() const {
        Rational t = 0;
        for (const Rational& w : weights) {
            t += w;
        }
        return t;
    }

    // Per-Bell-state identification probabilities induced by the mixture:
    // state s in {0..3} has bits x = s >> 1, z = s & 1, and is identified by
    // the BM (B, g) exactly when its B-bit equals g.  Uses sigma = 0.
    std::array<Rational, 4> induced_probabilities() const {
        std::array<Rational, 4> p{};
        for (int s = 0; s < 4; ++s) {
            int x = (s >> 1) & 1;
            int z = s & 1;
            int y = x ^ z;
            p[s] += weight(Basis::X, x);
            p[s] += weight(Basis::Y, y);
            p[s] += weight(Basis::Z, z);
        }
        return p;
    }
};

namespace detail {

// The guaranteed-information BM that identifies exactly the two Bell states
// a and b (0..3, distinct): the unique basis whose bit the two states share.
inline std::pair<Basis, int> bm_identifying(int a, int b) {
    int xa = (a >> 1) & 1, za = a & 1;
    int xb = (b >> 1) & 1, zb = b & 1;
    if (xa == xb) {
        return {Basis::X, xa};
    }
    if (za == zb) {
        return {Basis::Z, za};
    }
    return {Basis::Y, xa ^ za};  // x and z both differ, so y agrees
}

}  // namespace detail

// Builds Charlie's mixture of guaranteed-information BMs for a desired
// per-Bell-state identification tuple p (state s <-> bits x = s >> 1,
// z = s & 1).  Requires each p[s] in [0, 1] and sum(p) <= 2 (the static
// linear-optics bound); throws std::invalid_argument otherwise.  The
// mixture's induced probabilities dominate p pointwise, with exact equality
// when sum(p) == 2.  All arithmetic is exact.
inline CharlieMixture charlie_distribution(const std::array<Rational, 4>& p) {
    Rational sum = 0;
    for (const Rational& v : p) {
        if (v < 0 || v > 1) {
            throw std::invalid_argument(
                "charlie_distribution: each probability must lie in [0, 1]");
        }
        sum += v;
    }
    if (sum > 2) {
        throw std::invalid_argument(
            "charlie_distribution: probabilities sum to more than 2, which exceeds the "
            "ancilla-free linear-optics bound");
    }

    // Relabel states so s[0] <= s[1] <= s[2] <= s[3]; perm[k] is the
    // original index of the k-th smallest.
    std::array<int, 4> perm{0, 1, 2, 3};
    for (int i = 1; i < 4; ++i) {  // stable insertion sort on 4 elements
        int j = i;
        while (j > 0 && p[perm[j]] < p[perm[j - 1]]) {
            std::swap(perm[j], perm[j - 1]);
            --j;
        }
    }
    std::array<Rational, 4> s;
    for (int k = 0; k < 4; ++k) {
        s[k] = p[perm[k]];
    }

    // Auxiliary tuple t with t[0] = 0, t[k] >= s[k], still sorted, summing
    // to exactly 2: pour the missing mass in from the top (capped at 1).
    std::array<Rational, 4> t{};
    Rational rem = Rational(2) - s[1] - s[2] - s[3];
    for (int k = 3; k >= 1; --k) {
        Rational cap = (k == 3) ? Rational(1) : t[k + 1];
        t[k] = s[k] + rem;
        if (t[k] > cap) {
            t[k] = cap;
        }
        rem -= t[k] - s[k];
    }
    if (rem != 0) {
        throw std::logic_error("charlie_distribution: internal mass-balance failure");
    }

    // Special case t[0] = 0: weight lives on the three pairs within
    // {1, 2, 3}.  pair_w[a][b] (a < b) is the weight on the BM identifying
    // sorted-space states a and b.
    std::array<std::array<Rational, 4>, 4> pair_w{};
    pair_w[2][3] = (t[3] + t[2] - t[1]) / 2;
    pair_w[1][2] = (t[2] + t[1] - t[3]) / 2;
    pair_w[1][3] = (t[3] + t[1] - t[2]) / 2;

    // Shift probability toward state 0 until it reaches s[0]: moving mass
    // from the pair {j, m} to the pair {0, m} lowers state j's induced
    // probability and raises state 0's, leaving states m and the total
    // untouched.
    Rational need = s[0];
    for (int j = 1; j <= 3 && need > 0; ++j) {
        Rational take = t[j] - s[j];
        if (take > need) {
            take = need;
        }
        need -= take;
        for (int m = 1; m <= 3 && take > 0; ++m) {
            if (m == j) {
                continue;
            }
            int a = std::min(j, m), b = std::max(j, m);
            Rational amt = pair_w[a][b] < take ? pair_w[a][b] : take;
            pair_w[a][b] -= amt;
            pair_w[0][m] += amt;
            take -= amt;
        }
        if (take != 0) {
            throw std::logic_error("charlie_distribution: internal shifting failure");
        }
    }
    if (need != 0) {
        throw std::logic_error("charlie_distribution: internal shifting failure");
    }

    // Undo the relabeling and name each pair's BM by (basis, trigger).
    CharlieMixture mix;
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            if (pair_w[a][b] == 0) {
                continue;
            }
            auto [basis, trigger] = detail::bm_identifying(perm[a], perm[b]);
            mix.weight(basis, trigger) += pair_w[a][b];
        }
    }
    return mix;
}

// --- Formation token notation -----------------------------------------
//
// One token per qubit pair, whitespace-separated:
//   X0 X1 Y0 Y1 Z0 Z1   guaranteed-information BM (basis, trigger)
//   U                   unconstrained BM
//   S(p)                state-independent BM with success probability p,
//                       p in rational ("1/2") or decimal ("0.5") form

// Parses a formation string.  p_adv applies to every guaranteed-information
// token.  Throws std::invalid_argument naming the 1-based token position.
inline Formation parse_formation(std::string_view text, const Rational& p_adv = 0) {
    Formation f;
    std::istringstream in{std::string(text)};
    std::string tok;
    std::size_t pos = 0;
    while (in >> tok) {
        ++pos;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("parse_formation: token " + std::to_string(pos) +
                                        " '" + tok + "': " + why);
        };
        if (tok == "U") {
            f.assignments.push_back(BmAssignment::unconstrained());
        } else if (tok.size() >= 3 && tok.compare(0, 2, "S(") == 0 && tok.back() == ')') {
            std::string inner = tok.substr(2, tok.size() - 3);
            Rational p;
            try {
                p = parse_rational(inner);
            } catch (const std::invalid_argument&) {
                fail("cannot parse probability '" + inner + "'");
            }
            if (p < 0 || p > 1) {
                fail("probability must lie in [0, 1]");
            }
            f.assignments.push_back(BmAssignment::state_independent(p));
        } else if (tok.size() == 2 && (tok[1] == '0' || tok[1] == '1')) {
            Basis basis;
            switch (tok[0]) {
                case 'X':
                    basis = Basis::X;
                    break;
                case 'Y':
                    basis = Basis::Y;
                    break;
                case 'Z':
                    basis = Basis::Z;
                    break;
                default:
                    fail("expected one of X0 X1 Y0 Y1 Z0 Z1 U S(p)");
                    return f;  // unreachable
            }
            f.assignments.push_back(BmAssignment::guaranteed(basis, tok[1] - '0', p_adv));
        } else {
            fail("expected one of X0 X1 Y0 Y1 Z0 Z1 U S(p)");
        }
    }
    return f;
}

// Formats a formation back into token notation; parse_formation o
// format_formation is the identity on assignments (p_adv excepted, which
// the notation does not carry).
inline std::string format_formation(const Formation& f) {
    std::string out;
    for (std::size_t i = 0; i < f.assignments.size(); ++i) {
        if (i != 0) {
            out += ' ';
        }
        const BmAssignment& bm = f.assignments[i];
        if (bm.is_unconstrained()) {
            out += 'U';
        } else if (bm.is_state_independent()) {
            out += "S(";
            out += to_string(std::get<StateIndependent>(bm.variant()).p_bm);
            out += ')';
        } else {
            const GuaranteedInfo& g = std::get<GuaranteedInfo>(bm.variant());
            out += basis_letter(g.basis);
            out += static_cast<char>('0' + g.trigger);
        }
    }
    return out;
}

}  // namespace cssbell::measurement
