#!/usr/bin/env python3
"""Independent reference oracle for logical Bell-measurement efficiencies.

Everything here is computed from first principles with exact Fraction
arithmetic and a from-scratch GF(2) toolkit, written independently of the
C++ library so the two implementations can cross-check each other. The
report printed by `python3 tools/oracle_efficiency.py` is the source of the
expected values frozen into the C++ test suite.

Model summary
-------------
A CSS code is (N, h_x, h_z) with rows as bitmasks. Measuring transversal
physical BMs on a logical Bell pair yields an XX-outcome string in
ker h_x and a ZZ-outcome string in ker h_z, uniformly over
2^(N+k) pairs. A physical BM on pair i yields an information set:
  nothing ("-"), one basis value ("X"/"Y"/"Z"), or everything ("*").
The logical BM succeeds when every logical pair operator (XbarXbar_t and
ZbarZbar_t for all t) has a representative, modulo the stabilizer group of
the doubled code, whose per-qubit Pauli content is covered by that qubit's
information set.

Decodability is implemented twice:
  * coset search: multiply the logical representative by all 2^(N-k)
    stabilizer elements and test per-qubit coverage (primary method here);
  * subspace projection: intersect the span of per-qubit known operators
    with the normalizer and project onto logical classes (the method the
    C++ engine uses).
Both must agree everywhere; the oracle asserts it.
"""

from fractions import Fraction
from functools import lru_cache
import itertools
import sys

# ----------------------------------------------------------------------
# GF(2) toolkit: vectors are ints (bit i = coordinate i), matrices are
# lists of ints.


def rref(rows):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    out = []
    pivots = []
    for row in rows:
        for r, p in zip(out, pivots):
            if row >> p & 1:
                row ^= r
        if row == 0:
            continue
        p = row.bit_length() - 1
        # clear this column above
        out = [r ^ row if r >> p & 1 else r for r in out]
        out.append(row)
        pivots.append(p)
    order = sorted(range(len(out)), key=lambda i: -pivots[i])
    return [out[i] for i in order], [pivots[i] for i in order]


def rank(rows):
    return len(rref(rows)[0])


def kernel(rows, width):
    """Basis of {v : parity(v & row) = 0 for all rows}."""
    ech, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for col in range(width):
        if col in pivot_set:
            continue
        v = 1 << col
        for r, p in zip(ech, pivots):
            if r >> col & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def in_span(rows, v):
    for r, p in zip(*rref(rows)):
        if v >> p & 1:
            v ^= r
    return v == 0


def span(basis):
    """All 2^len(basis) combinations (small inputs only)."""
    vecs = [0]
    for b in basis:
        vecs += [v ^ b for v in vecs]
    return vecs


def parity(x):
    return bin(x).count("1") & 1


def weight(x):
    return bin(x).count("1")


# ----------------------------------------------------------------------
# Code constructions, re-derived from their figure definitions.


class Code:
    def __init__(self, name, n, hx, hz):
        self.name = name
        self.n = n
        self.hx = hx
        self.hz = hz
        for a in hx:
            for b in hz:
                assert parity(a & b) == 0, f"{name}: anticommuting rows"
        self.k = n - rank(hx) - rank(hz)
        assert self.k >= 1, f"{name}: no logical qubit"
        self.logical_x, self.logical_z = self._logicals()

    def _logicals(self):
        # X-type logicals: commute with every Z generator (ker h_z), not in
        # the X-stabilizer row space; dual for Z-type.
        def side(opposite, same):
            reps = []
            rows = list(same)
            for v in kernel(opposite, self.n):
                if not in_span(rows, v):
                    reps.append(v)
                    rows.append(v)
            return reps

        xs = side(self.hz, self.hx)
        zs = side(self.hx, self.hz)
        assert len(xs) == len(zs) == self.k, self.name
        # Pair them symplectically: Gram matrix G[s][t] = |x_s & z_t| mod 2,
        # replace z's by G^-1-combinations so that the pairing is identity.
        g = [[parity(xs[s] & zs[t]) for t in range(self.k)] for s in range(self.k)]
        inv = _invert_gf2(g)
        new_z = []
        for t in range(self.k):
            v = 0
            for u in range(self.k):
                if inv[u][t]:
                    v ^= zs[u]
            new_z.append(v)
        for s in range(self.k):
            for t in range(self.k):
                assert parity(xs[s] & new_z[t]) == (1 if s == t else 0)
        return xs, new_z


def _invert_gf2(m):
    k = len(m)
    aug = [[m[i][j] for j in range(k)] + [1 if i == j else 0 for j in range(k)]
           for i in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(k):
            if r != col and aug[r][col]:
                aug[r] = [a ^ b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def qpc(n, m):
    """Quantum parity code: n blocks of m qubits, qubit (l, j) -> l*m + j."""
    hz = []
    for block in range(n):
        for j in range(m - 1):
            hz.append(1 << (block * m + j) | 1 << (block * m + j + 1))
    hx = []
    for j in range(n - 1):
        row = 0
        for i in range(2 * m):
            row |= 1 << (j * m + i)
        hx.append(row)
    return Code(f"qpc({n},{m})", n * m, hx, hz)


def steane():
    rows = [0b1010101, 0b0110011, 0b0001111]
    return Code("steane", 7, rows, rows)


def surface(n, m):
    """Planar surface code: m rows of n horizontal edges, (m-1) rows of
    (n-1) vertical edges. H(r,c) = r(2n-1)+c, V(r,c) = r(2n-1)+n+c."""
    N = n * m + (n - 1) * (m - 1)

    def H(r, c):
        return r * (2 * n - 1) + c

    def V(r, c):
        return r * (2 * n - 1) + n + c

    hz = []
    for i in range(m - 1):
        for j in range(n):
            row = 1 << H(i, j) | 1 << H(i + 1, j)
            if j - 1 >= 0:
                row |= 1 << V(i, j - 1)
            if j <= n - 2:
                row |= 1 << V(i, j)
            hz.append(row)
    hx = []
    for r in range(m):
        for j in range(n - 1):
            row = 1 << H(r, j) | 1 << H(r, j + 1)
            if r - 1 >= 0:
                row |= 1 << V(r - 1, j)
            if r <= m - 1 - 1:
                row |= 1 << V(r, j)
            hx.append(row)
    return Code(f"surface({n},{m})", N, hx, hz)


def surface_zigzag_qubits(n, m):
    """Qubit indices of the ZZ=1 zig-zag for surface(n,m), n >= m >= 2 (the
    diagonal when n = m): horizontal edge k sits at row r_k following a
    triangle wave bouncing between rows 0 and m-1; consecutive horizontal
    edges are joined by the vertical edge at the shared vertex."""
    assert n >= m >= 2

    def row(k):
        t = k % (2 * m - 2)
        return t if t <= m - 1 else 2 * m - 2 - t

    def H(r, c):
        return r * (2 * n - 1) + c

    def V(r, c):
        return r * (2 * n - 1) + n + c

    qubits = []
    for k in range(n):
        qubits.append(H(row(k), k))
        if k < n - 1:
            qubits.append(V(min(row(k), row(k + 1)), k))
    return sorted(qubits)


# ----------------------------------------------------------------------
# Information sets and decodability.
#
# An information configuration is a string over {-, X, Y, Z, *}, one char
# per qubit pair. Coverage: a pair operator with x-support sx and z-support
# sz is measurable iff on every qubit its Pauli ({I,X,Z,Y} from the two
# bits) is inside the qubit's allowed set.

ALLОWED = None  # placeholder to catch typos


def measurable(sx, sz, info, n):
    for i in range(n):
        x = sx >> i & 1
        z = sz >> i & 1
        if not x and not z:
            continue
        c = info[i]
        if c == "*":
            continue
        if c == "-":
            return False
        if x and z:
            ok = c == "Y"
        elif x:
            ok = c == "X"
        else:
            ok = c == "Z"
        if not ok:
            return False
    return True


class Decoder:
    """Coset-search decodability with a subspace cross-check."""

    def __init__(self, code):
        self.code = code
        # the stabilizer group of pair operators: products of (h_x row | 0)
        # and (0 | h_z row); store as (sx, sz) pairs — 2^(N-k) elements.
        gens = [(r, 0) for r in code.hx] + [(0, r) for r in code.hz]
        elems = [(0, 0)]
        seen = {(0, 0)}
        for gx, gz in gens:
            new = []
            for ex, ez in elems:
                cand = (ex ^ gx, ez ^ gz)
                if cand not in seen:
                    seen.add(cand)
                    new.append(cand)
            elems += new
        self.stabilizer = elems
        self.targets = [(lx, 0) for lx in code.logical_x] + [
            (0, lz) for lz in code.logical_z
        ]

    def decodable(self, info):
        got = self._decodable_coset(info)
        check = self._recoverable_dim(info) == 2 * self.code.k
        assert got == check, (self.code.name, info)
        return got

    def _decodable_coset(self, info):
        n = self.code.n
        for tx, tz in self.targets:
            if not any(
                measurable(tx ^ sx, tz ^ sz, info, n) for sx, sz in self.stabilizer
            ):
                return False
        return True

    def _recoverable_dim(self, info):
        """Dimension of the recoverable logical subspace, via the subspace
        method: span of per-qubit known operators, intersected with the
        normalizer, projected onto logical classes by symplectic pairing."""
        code = self.code
        n = code.n
        avail = []  # vectors over 2n bits: low n = x half, high n = z half
        for i, c in enumerate(info):
            if c == "*":
                avail.append(1 << i)
                avail.append(1 << (n + i))
            elif c == "X":
                avail.append(1 << i)
            elif c == "Z":
                avail.append(1 << (n + i))
            elif c == "Y":
                avail.append(1 << i | 1 << (n + i))
        basis, _ = rref(avail)
        # normalizer constraint: symplectic product with every stabilizer
        # row vanishes; <(vx|vz), (sx|sz)> = parity(vx&sz ^ vz&sx)
        stab_rows = [(r, 0) for r in code.hx] + [(0, r) for r in code.hz]
        constraint = []
        for sx, sz in stab_rows:
            row = 0
            for idx, v in enumerate(basis):
                vx = v & ((1 << n) - 1)
                vz = v >> n
                if parity(vx & sz) ^ parity(vz & sx):
                    row |= 1 << idx
            constraint.append(row)
        inter = []
        for coeffs in kernel(constraint, len(basis)):
            v = 0
            for idx in range(len(basis)):
                if coeffs >> idx & 1:
                    v ^= basis[idx]
            inter.append(v)
        # project: alpha_t = <v, (0|lz_t)>, beta_t = <v, (lx_t|0)>
        proj = []
        for v in inter:
            vx = v & ((1 << n) - 1)
            vz = v >> n
            img = 0
            for t in range(code.k):
                if parity(vx & code.logical_z[t]):
                    img |= 1 << t
                if parity(vz & code.logical_x[t]):
                    img |= 1 << (code.k + t)
            proj.append(img)
        return rank(proj)


# ----------------------------------------------------------------------
# Formations and efficiencies.
#
# Formation tokens: "X1", "Z0", "Y1", ... guaranteed-information BMs
# (trigger on the matching outcome bit, sigma = 0 for Y), "U" unconstrained.


def info_char(token, x, z):
    if token == "U":
        return "*"
    basis, trigger = token[0], int(token[1])
    bit = {"X": x, "Z": z, "Y": x ^ z}[basis]
    return "*" if bit == trigger else basis


def efficiency_lossless(code, formation, decoder=None):
    """Exact lossless efficiency: count decodable (x, z) in
    ker h_x x ker h_z over 2^(N+k)."""
    assert len(formation) == code.n
    decoder = decoder or Decoder(code)
    kx = kernel(code.hx, code.n)
    kz = kernel(code.hz, code.n)
    assert len(kx) + len(kz) == code.n + code.k

    @lru_cache(maxsize=None)
    def dec(info):
        return decoder.decodable(info)

    count = 0
    for x in span(kx):
        for z in span(kz):
            info = "".join(
                info_char(formation[i], x >> i & 1, z >> i & 1) for i in range(code.n)
            )
            if dec(info):
                count += 1
    return Fraction(count, 2 ** (code.n + code.k))


def erasure_coefficients(code):
    """e_j = number of weight-j erasure patterns decodable under perfect
    (unconstrained) BMs on the surviving pairs."""
    decoder = Decoder(code)
    coeffs = [0] * (code.n + 1)
    for pattern in range(1 << code.n):
        info = "".join("-" if pattern >> i & 1 else "*" for i in range(code.n))
        if decoder.decodable(info):
            coeffs[weight(pattern)] += 1
    return coeffs


def efficiency_with_loss(code, formation, eta, p_adv=Fraction(0)):
    """Exact lossy efficiency by enumeration over erasure patterns,
    codeword pairs, and rescue subsets. eta is the pair transmission
    (eta1*eta2). Small codes only."""
    decoder = Decoder(code)
    kx = kernel(code.hx, code.n)
    kz = kernel(code.hz, code.n)
    n = code.n

    @lru_cache(maxsize=None)
    def dec(info):
        return decoder.decodable(info)

    total = Fraction(0)
    outcome_weight = Fraction(1, 2 ** (n + code.k))
    for pattern in range(1 << n):
        p_pattern = eta ** (n - weight(pattern)) * (1 - eta) ** weight(pattern)
        if p_pattern == 0:
            continue
        hit = Fraction(0)
        for x in span(kx):
            for z in span(kz):
                base = [
                    "-" if pattern >> i & 1 else info_char(formation[i], x >> i & 1, z >> i & 1)
                    for i in range(n)
                ]
                singles = [i for i, c in enumerate(base) if c in "XYZ"]
                if p_adv == 0:
                    if dec("".join(base)):
                        hit += outcome_weight
                    continue
                for rescue in range(1 << len(singles)):
                    cfg = list(base)
                    for bit, q in enumerate(singles):
                        if rescue >> bit & 1:
                            cfg[q] = "*"
                    p_rescue = p_adv ** bin(rescue).count("1") * (1 - p_adv) ** (
                        len(singles) - bin(rescue).count("1")
                    )
                    if dec("".join(cfg)):
                        hit += outcome_weight * p_rescue
        total += p_pattern * hit
    return total


def search_formations(code, tokens=("X0", "X1", "Y0", "Y1", "Z0", "Z1")):
    """Exhaustive search over token assignments; returns
    (best efficiency, lexicographically first best formation)."""
    decoder = Decoder(code)
    kx = kernel(code.hx, code.n)
    kz = kernel(code.hz, code.n)
    outcomes = [(x, z) for x in span(kx) for z in span(kz)]

    @lru_cache(maxsize=None)
    def dec(info):
        return decoder.decodable(info)

    best = Fraction(-1)
    best_formation = None
    for formation in itertools.product(sorted(tokens), repeat=code.n):
        count = 0
        for x, z in outcomes:
            info = "".join(
                info_char(formation[i], x >> i & 1, z >> i & 1) for i in range(code.n)
            )
            if dec(info):
                count += 1
        eff = Fraction(count, 2 ** (code.n + code.k))
        if eff > best:
            best = eff
            best_formation = formation
    return best, best_formation


def find_achievers(code, target, tokens=("X0", "X1", "Y0", "Y1", "Z0", "Z1"),
                   limit=10):
    """First `limit` formations (lexicographic) achieving exactly target."""
    decoder = Decoder(code)
    kx = kernel(code.hx, code.n)
    kz = kernel(code.hz, code.n)
    outcomes = [(x, z) for x in span(kx) for z in span(kz)]
    denom = 2 ** (code.n + code.k)

    @lru_cache(maxsize=None)
    def dec(info):
        return decoder.decodable(info)

    found = []
    for formation in itertools.product(sorted(tokens), repeat=code.n):
        count = 0
        for x, z in outcomes:
            info = "".join(
                info_char(formation[i], x >> i & 1, z >> i & 1) for i in range(code.n)
            )
            if dec(info):
                count += 1
        if Fraction(count, denom) == target:
            found.append(formation)
            if len(found) >= limit:
                break
    return found


# ----------------------------------------------------------------------
# Canned formations.


def all_same(token, n):
    return [token] * n


def qpc_optimal(n, m):
    """First row ZZ=1, first column below the corner XX=1, YY=1 elsewhere."""
    formation = []
    for block in range(n):
        for j in range(m):
            if block == 0:
                formation.append("Z1")
            elif j == 0:
                formation.append("X1")
            else:
                formation.append("Y1")
    return formation


def surface_zigzag(n, m):
    if n >= m:
        zig = set(surface_zigzag_qubits(n, m))
        N = n * m + (n - 1) * (m - 1)
        return ["Z1" if q in zig else "X1" for q in range(N)]
    # dual: swap roles
    zig = set(surface_zigzag_qubits(m, n))
    N = n * m + (n - 1) * (m - 1)
    dual = ["X1" if q in zig else "Z1" for q in range(m * n + (m - 1) * (n - 1))]
    # relabel dual-lattice qubits back to surface(n,m) numbering:
    # dual H'(c,r) = surface V... the (m,n) lattice qubit at H(r,c) maps to
    # the (n,m) lattice V/H swap: H_{m,n}(r,c) -> H'(c,r) swaps to q' in the
    # (n,m) code via: horizontal (r,c) of (m,n) <-> horizontal (c,r)? The
    # dual relabeling phi: H_(m,n)(r,c) -> V_(n,m)... do it by construction:
    out = [None] * N

    def H(r, c, nn):
        return r * (2 * nn - 1) + c

    def V(r, c, nn):
        return r * (2 * nn - 1) + nn + c

    for r in range(n):
        for c in range(m):
            out[H(c, r, n) if False else 0] = None
    # Simpler: dual of surface(n,m) is surface(m,n) with
    # H_(n,m)(r,c) <-> V_(m,n)(c,r) and V_(n,m)(r,c) <-> H_(m,n)(c,r).
    for r in range(m):
        for c in range(n):
            out[H(r, c, n)] = dual[V(c, r, m)]
    for r in range(m - 1):
        for c in range(n - 1):
            out[V(r, c, n)] = dual[H(c, r, m)]
    return out


# ----------------------------------------------------------------------
# Report.


def report():
    print("=== lossless efficiencies (PAPER pins) ===")
    for n, m in [(1, 1), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (2, 4), (4, 1)]:
        c = qpc(n, m)
        eff = efficiency_lossless(c, all_same("Z1", c.n))
        expect = 1 - Fraction(1, 2**n)
        print(f"qpc({n},{m}) all-Z1: {eff}  (1-2^-n = {expect})  "
              f"{'OK' if eff == expect else 'MISMATCH'}")

    st = steane()
    eff = efficiency_lossless(st, all_same("Z1", 7))
    print(f"steane all-Z1: {eff}  (expect 1/2)  "
          f"{'OK' if eff == Fraction(1, 2) else 'MISMATCH'}")

    for n, m in [(2, 2), (3, 2), (2, 3)]:
        c = surface(n, m)
        eff = efficiency_lossless(c, all_same("Z1", c.n))
        expect = Fraction(1, 2) * (1 + Fraction(3, 4) ** m)
        print(f"surface({n},{m}) all-Z1: {eff}  (1/2(1+(3/4)^m) = {expect})  "
              f"{'OK' if eff == expect else 'MISMATCH'}")

    print()
    print("=== canned formations ===")
    for n, m in [(2, 2), (3, 3), (4, 2)]:
        c = qpc(n, m)
        f = qpc_optimal(n, m)
        eff = efficiency_lossless(c, f)
        expect = 1 - Fraction(1, 2 ** (n + m - 1))
        print(f"qpc({n},{m}) optimal {' '.join(f)}: {eff}  "
              f"(1-2^-(n+m-1) = {expect})  {'OK' if eff == expect else 'MISMATCH'}")

    for n, m in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        c = surface(n, m)
        f = surface_zigzag(n, m)
        eff = efficiency_lossless(c, f)
        expect = 1 - 2 * Fraction(1, 4 ** max(n, m))
        print(f"surface({n},{m}) zigzag {' '.join(f)}: {eff}  "
              f"(1-2*4^-max = {expect})  {'OK' if eff == expect else 'MISMATCH'}")

    f3c = ["Z1", "Z1", "Z1", "X1", "X1", "X1", "X1"]
    eff = efficiency_lossless(st, f3c)
    print(f"steane fig3c {' '.join(f3c)}: {eff}  (expect 7/8)  "
          f"{'OK' if eff == Fraction(7, 8) else 'MISMATCH'}")

    print()
    print("=== DERIVED values to freeze ===")
    q22 = qpc(2, 2)
    print(f"qpc(2,2) all-X1: {efficiency_lossless(q22, all_same('X1', 4))}")
    s22 = surface(2, 2)
    print(f"surface(2,2) all-Z0: {efficiency_lossless(s22, all_same('Z0', 5))}")
    print(f"qpc(2,2) erasure coefficients: {erasure_coefficients(q22)}")
    print(f"qpc(1,1) erasure coefficients: {erasure_coefficients(qpc(1, 1))}")
    print(f"steane erasure coefficients: {erasure_coefficients(st)}")
    dec = Decoder(st)
    dim = dec._recoverable_dim("Z" * 7)
    print(f"steane all-Single-Z recoverable dim: {dim} (expect 1)")

    print()
    print("=== lossy spot values ===")
    v = efficiency_with_loss(q22, all_same("U", 4), Fraction(9, 10))
    expect = Fraction(9, 10) ** 4 + 4 * Fraction(9, 10) ** 3 * Fraction(1, 10)
    print(f"qpc(2,2) all-U eta=9/10: {v}  (e=[1,4,0,0,0] formula: {expect})  "
          f"{'OK' if v == expect else 'MISMATCH'}")
    v = efficiency_with_loss(q22, all_same("Z1", 4), Fraction(3, 4))
    print(f"qpc(2,2) all-Z1 eta=3/4: {v}")
    v = efficiency_with_loss(q22, qpc_optimal(2, 2), Fraction(9, 10))
    print(f"qpc(2,2) optimal eta=9/10: {v}")
    v = efficiency_with_loss(st, f3c, Fraction(1, 2))
    print(f"steane fig3c eta=1/2: {v}")
    v = efficiency_with_loss(q22, all_same("Z1", 4), Fraction(1), Fraction(1, 2))
    print(f"qpc(2,2) all-Z1 p_adv=1/2 lossless: {v}")

    print()
    print("=== conditional one-erasure check (qpc(2,2) all-Z1) ===")
    # erase pair 0 only, count decodable z outcomes (x plays no role)
    d22 = Decoder(q22)
    kz = kernel(q22.hz, 4)
    good = 0
    for z in span(kz):
        info = "-" + "".join("*" if z >> i & 1 else "Z" for i in range(1, 4))
        if d22.decodable(info):
            good += 1
    print(f"decodable z-outcomes with pair 0 erased: {good}/{2 ** len(kz)}")


if __name__ == "__main__":
    if len(sys.argv) > 1 and sys.argv[1] == "search":
        # reconstruction searches for the figure formations (slow-ish)
        s22 = surface(2, 2)
        best, bf = search_formations(s22)
        print(f"surface(2,2) optimum over 6 tokens: {best} at {' '.join(bf)}")
        achievers = find_achievers(s22, Fraction(31, 32), limit=40)
        print(f"surface(2,2) formations achieving 31/32 (first 40):")
        for a in achievers:
            print("   ", " ".join(a))
    else:
        report()
