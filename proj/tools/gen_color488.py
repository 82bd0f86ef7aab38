#!/usr/bin/env python3
"""Derives triangular 4.8.8 color-code patches ([[7,1,3]], [[17,1,5]], [[31,1,7]]).

Model: the truncated-square (4.8.8) tiling with exact quarter-integer
coordinates, scaled by 4 onto the integer grid. Squares sit at centers
(4i, 4j) with vertices one step away; octagons sit at (4i+2, 4j+2) and
take the nearest two corners of each neighbouring square. Squares carry
color G; octagons alternate R/B checkerboard-wise by (i+j) parity.

A patch is defined by its qubit (vertex) set Q alone: every tiling face
becomes a stabilizer generator iff its intersection with Q is even and
has at least 4 qubits. Odd or smaller fragments are dropped — their
qubits must be covered by neighbouring kept faces, and the weight-d
fragments are exactly the boundary-side logical representatives.

Counting face incidences fixes the shape of a distance-d patch:
N = (d^2+2d-1)/2 qubits of which exactly d lie on no square (the
square-free side), the rest tile (N-d)/4 full squares. The script
searches square placements (up to lattice symmetry) and square-free
vertex subsets, then verifies every candidate from scratch:

  * qubit count, full coverage by kept faces,
  * pairwise even overlaps (commuting stabilizers),
  * stabilizer rank (N-1)/2, so k = 1,
  * minimum logical weight exactly d (exhaustive over the kernel),
  * exactly three weight-d boundary sides, one avoiding each color.

The d=3 result must additionally be a relabeling of the Steane code.
"""

from fractions import Fraction
from itertools import combinations, permutations

# ---------------------------------------------------------------- tiling

def sq_verts(i, j):
    cx, cy = 4 * i, 4 * j
    return ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1))


def oct_verts(i, j):
    """Octagon centered (4i+2, 4j+2), listed counterclockwise."""
    cx, cy = 4 * i, 4 * j
    return ((cx + 3, cy), (cx + 4, cy + 1), (cx + 4, cy + 3),
            (cx + 3, cy + 4), (cx + 1, cy + 4), (cx, cy + 3),
            (cx, cy + 1), (cx + 1, cy))


def oct_color(i, j):
    return "R" if (i + j) % 2 == 0 else "B"


def faces_near(verts):
    """All tiling faces meeting the given vertex set."""
    vs = set(verts)
    xs = [x for x, _ in vs]
    ys = [y for _, y in vs]
    lo_i, hi_i = min(xs) // 4 - 1, max(xs) // 4 + 1
    lo_j, hi_j = min(ys) // 4 - 1, max(ys) // 4 + 1
    out = []
    for i in range(lo_i, hi_i + 1):
        for j in range(lo_j, hi_j + 1):
            for color, fv in (("G", sq_verts(i, j)),
                              (oct_color(i, j), oct_verts(i, j))):
                if vs.intersection(fv):
                    out.append((color, fv))
    return out

# ------------------------------------------------------- GF(2) utilities

def echelon_insert(rows, v):
    """Inserts v into echelon rows [(pivot, mask)]; returns True if new."""
    for p, m in rows:
        if (v >> p) & 1:
            v ^= m
    if v == 0:
        return False
    p = v.bit_length() - 1
    rows.append((p, v))
    rows.sort(key=lambda r: -r[0])
    return True


def reduce_vec(v, rows):
    for p, m in rows:
        if (v >> p) & 1:
            v ^= m
    return v


def kernel_masks(face_masks, nbits):
    """Basis of { v : every face has even overlap with v }, as bitmasks."""
    rows = []
    for m in face_masks:
        echelon_insert(rows, m)
    red = {p: m for p, m in rows}
    for p in sorted(red):          # full Jordan reduction for easy reads
        for q in sorted(red):
            if q != p and (red[q] >> p) & 1:
                red[q] ^= red[p]
    free = [c for c in range(nbits) if c not in red]
    kernel = []
    for f in free:
        v = 1 << f
        for p, m in red.items():
            if (m >> f) & 1:
                v |= 1 << p
        kernel.append(v)
    for m in face_masks:
        for v in kernel:
            assert bin(m & v).count("1") % 2 == 0
    return rows, kernel


def logical_reps_of_weight(face_masks, nbits, w_target):
    """All kernel elements of given weight outside the face row space."""
    rows, kernel = kernel_masks(face_masks, nbits)
    reps = []
    for x in range(1, 1 << len(kernel)):
        v = 0
        xx, i = x, 0
        while xx:
            if xx & 1:
                v ^= kernel[i]
            xx >>= 1
            i += 1
        if bin(v).count("1") == w_target and reduce_vec(v, rows) != 0:
            reps.append(v)
    return rows, kernel, sorted(reps)

# ------------------------------------------------------------ verification

def build_and_verify(d, qverts):
    n_target = (d * d + 2 * d - 1) // 2
    verts = sorted(set(qverts), key=lambda p: (-p[1], p[0]))
    assert len(verts) == n_target, f"d={d}: {len(verts)} qubits, want {n_target}"
    index = {p: i for i, p in enumerate(verts)}

    faces = []
    for color, fv in faces_near(verts):
        sel = sorted(index[p] for p in fv if p in index)
        if len(sel) >= 4 and len(sel) % 2 == 0:
            faces.append((color, sel))
    masks = [sum(1 << q for q in f) for _, f in faces]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            assert bin(masks[i] & masks[j]).count("1") % 2 == 0, "odd overlap"
    covered = set()
    for _, f in faces:
        covered.update(f)
    assert covered == set(range(n_target)), "qubit outside every kept face"

    rows, kernel, reps = logical_reps_of_weight(masks, n_target, d)
    rank = len(rows)
    assert rank == (n_target - 1) // 2, f"rank {rank}"
    # Distance: no lighter logical below weight d.
    for x in range(1, 1 << len(kernel)):
        v = 0
        xx, i = x, 0
        while xx:
            if xx & 1:
                v ^= kernel[i]
            xx >>= 1
            i += 1
        if bin(v).count("1") < d:
            assert reduce_vec(v, rows) == 0, "logical below target distance"

    # Boundary sides: weight-d logicals not touching one face color.
    qubit_colors = [set() for _ in range(n_target)]
    for color, f in faces:
        for q in f:
            qubit_colors[q].add(color)
    sides = {}
    for v in reps:
        support = [q for q in range(n_target) if (v >> q) & 1]
        untouched = {"G", "R", "B"} - set().union(*(qubit_colors[q] for q in support))
        for color in untouched:
            sides.setdefault(color, []).append(sorted(support))
    assert sorted(sides) == ["B", "G", "R"], f"boundary colors found: {sorted(sides)}"
    for color in sides:
        assert len(sides[color]) == 1, f"multiple {color} sides {sides[color]}"
    return verts, faces, {c: s[0] for c, s in sides.items()}, reps

# ----------------------------------------------------------------- search

def canonical_triple(cells):
    """Canonical form of a square-center set under translations and D4."""
    best = None
    for op in ((1, 1, False), (1, -1, False), (-1, 1, False), (-1, -1, False),
               (1, 1, True), (1, -1, True), (-1, 1, True), (-1, -1, True)):
        sx, sy, swap = op
        pts = [(sy * j, sx * i) if swap else (sx * i, sy * j) for i, j in cells]
        mi = min(p[0] for p in pts)
        mj = min(p[1] for p in pts)
        key = tuple(sorted((i - mi, j - mj) for i, j in pts))
        if best is None or key < best:
            best = key
    return best


def square_layouts(n_squares, reach):
    """Distinct n-square placements (one fixed at the origin), compact first."""
    if n_squares == 1:
        return [((0, 0),)]
    cells = [(i, j) for i in range(-reach, reach + 1)
             for j in range(-reach, reach + 1) if (i, j) != (0, 0)]
    seen = set()
    layouts = []
    for rest in combinations(cells, n_squares - 1):
        cand = ((0, 0),) + rest
        key = canonical_triple(cand)
        if key in seen:
            continue
        seen.add(key)
        layouts.append(cand)
    layouts.sort(key=lambda cs: sum(abs(a[0] - b[0]) + abs(a[1] - b[1])
                                    for a, b in combinations(cs, 2)))
    return layouts


def search_patch(d, reach=2, layouts=None):
    """Finds a verified distance-d patch: squares + square-free qubits."""
    n_target = (d * d + 2 * d - 1) // 2
    rank_need = (n_target - 1) // 2
    n_squares = (n_target - d) // 4
    if layouts is None:
        layouts = square_layouts(n_squares, reach)
    for squares in layouts:
        sqv = [v for c in squares for v in sq_verts(*c)]
        assert len(set(sqv)) == len(sqv)
        pool_octs = [fv for color, fv in faces_near(sqv) if color != "G"]
        pool = sorted(set(v for fv in pool_octs for v in fv) - set(sqv))
        verts_all = sqv + pool
        index = {v: n for n, v in enumerate(verts_all)}
        face_masks = []
        for _, fv in faces_near(verts_all):
            m = 0
            for p in fv:
                if p in index:
                    m |= 1 << index[p]
            if m.bit_count() >= 4:
                face_masks.append(m)
        sq_mask = (1 << len(sqv)) - 1
        for comb in combinations(range(len(sqv), len(verts_all)), d):
            qm = sq_mask
            for b in comb:
                qm |= 1 << b
            kept = []
            for m in face_masks:
                s = m & qm
                c = s.bit_count()
                if c >= 4 and not (c & 1):
                    kept.append(s)
            if len(kept) < rank_need:
                continue
            cov = 0
            for s in kept:
                cov |= s
            if cov != qm:
                continue
            ok = True
            for a in range(len(kept)):
                sa = kept[a]
                for b in range(a + 1, len(kept)):
                    if (sa & kept[b]).bit_count() & 1:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            rows = []
            for s in kept:
                echelon_insert(rows, s)
            if len(rows) != rank_need:
                continue
            qverts = [verts_all[n] for n in range(len(verts_all))
                      if (qm >> n) & 1]
            try:
                return squares, build_and_verify(d, qverts)
            except AssertionError:
                continue
    raise SystemExit(f"d={d}: no valid patch within reach {reach}")


def covering_square(v):
    """Center of the (unique) tiling square having vertex v."""
    x, y = v
    if y % 4 == 0:
        i = (x - 1) // 4 if x % 4 == 1 else (x + 1) // 4
        return (i, y // 4)
    j = (y - 1) // 4 if y % 4 == 1 else (y + 1) // 4
    return (x // 4, j)


STEANE = [(0, 2, 4, 6), (1, 2, 5, 6), (3, 4, 5, 6)]


def steane_equivalent(faces):
    target = {frozenset(f) for f in STEANE}
    for perm in permutations(range(7)):
        if {frozenset(perm[q] for q in f) for _, f in faces} == target:
            return True
    return False


def main():
    layouts = None   # d=3 searches from scratch; larger d grow the result:
    # the next patch's squares are the previous ones plus the squares
    # covering the previous square-free boundary qubits.
    for d in (3, 5, 7):
        squares, (verts, faces, sides, reps) = search_patch(d, layouts=layouts)
        sq_verts_now = {v for c in squares for v in sq_verts(*c)}
        free = [v for v in verts if v not in sq_verts_now]
        grown = sorted(set(squares) | {covering_square(v) for v in free})
        layouts = [tuple(grown)]
        print(f"d={d}: squares at {list(squares)}")
        print(f"  qubits: {[(Fraction(x, 4), Fraction(y, 4)) for x, y in verts]}")
        n = len(verts)
        colors = [c for c, _ in faces]
        print(f"  N={n}, faces={len(faces)} "
              f"(G {colors.count('G')}, R {colors.count('R')}, B {colors.count('B')}), "
              f"{len(reps)} weight-{d} logical reps")
        for color in "GRB":
            print(f"  side {color}: {sides[color]}")
        if d == 3:
            print(f"  steane-relabeling: {steane_equivalent(faces)}")
            print(f"  faces: {[f for _, f in faces]}")
            continue
        print("  // face supports, one bit string per generator")
        for color, f in faces:
            row = "".join("1" if q in f else "0" for q in range(n))
            print(f'    "{row}",  // {color} {f}')


if __name__ == "__main__":
    main()
