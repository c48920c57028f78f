#!/usr/bin/env python3
"""Regenerates the shipped catalog under catalog/.

Prime-power MOLS come from GF(p^n) built with a brute-forced irreducible
polynomial; small designs are fixed lists or found by short searches. The
library re-verifies every entry when it is loaded, so this script only has
to be deterministic, not trusted.
"""
import itertools
import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "catalog"


def poly_irreducible(p, n):
    # Monic degree-n polynomials over GF(p), coefficients low to high.
    for tail in itertools.product(range(p), repeat=n):
        coeffs = list(tail) + [1]
        if coeffs[0] == 0:
            continue
        if n <= 3:
            if all(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p for x in range(p)):
                return coeffs
        else:
            # Degree 4: no roots and no monic quadratic factor.
            if any(sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0 for x in range(p)):
                continue
            if not any(divides(q, coeffs, p) for q in monic(p, 2)):
                return coeffs
    raise ValueError("no irreducible polynomial")


def monic(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield list(tail) + [1]


def divides(q, f, p):
    f = f[:]
    while len(f) >= len(q):
        lead = f[-1]
        shift = len(f) - len(q)
        for i, c in enumerate(q):
            f[shift + i] = (f[shift + i] - lead * c) % p
        f.pop()
    return not any(f)


def gf(p, n):
    q = p ** n
    mod = poly_irreducible(p, n)

    def digits(a):
        return [(a // p ** i) % p for i in range(n)]

    def num(ds):
        return sum(d * p ** i for i, d in enumerate(ds))

    def mul(a, b):
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(digits(a)):
            for j, y in enumerate(digits(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * n - 2, n - 1, -1):
            lead = prod[k]
            if lead:
                for i, c in enumerate(mod):
                    prod[k - n + i] = (prod[k - n + i] - lead * c) % p
        return num(prod[:n])

    def add(a, b):
        return num([(x + y) % p for x, y in zip(digits(a), digits(b))])

    return q, add, mul


def mols_doc(p, n):
    q, add, mul = gf(p, n)
    squares = []
    for a in range(1, q):
        squares.append([add(mul(a, i), j) for i in range(q) for j in range(q)])
    return {"n": q, "m": 0, "hole": [], "squares": squares,
            "provenance": f"GF({q}) squares a*i+j"}


def design(kind, v, K, blocks, **extra):
    doc = {"kind": kind, "v": v, "lambda": 1, "K": K}
    doc.update(extra)
    doc["blocks"] = [sorted(b) for b in blocks]
    return doc


def kts(v):
    """Resolvable STS(v) by class-by-class backtracking."""
    classes = search_resolvable(v)
    blocks, res = [], []
    for c in classes:
        res.append(list(range(len(blocks), len(blocks) + len(c))))
        blocks.extend(c)
    return blocks, res


def search_resolvable(v):
    n_classes = (v - 1) // 2
    used = [[False] * v for _ in range(v)]
    classes = []

    # Yields each completion of the current class with its pairs marked.
    # The block through 0 takes the least point not yet paired with 0,
    # which orders the classes.
    def class_options(cover, cls):
        free = [p for p in range(v) if not cover[p]]
        if not free:
            yield list(cls)
            return
        a = free[0]
        for i, b in enumerate(free[1:], 1):
            if used[a][b]:
                continue
            if a == 0 and b != min(x for x in range(1, v) if not used[0][x]):
                continue
            for c in free[i + 1:]:
                if used[a][c] or used[b][c]:
                    continue
                for x, y in ((a, b), (a, c), (b, c)):
                    used[x][y] = used[y][x] = True
                cover[a] = cover[b] = cover[c] = True
                cls.append((a, b, c))
                yield from class_options(cover, cls)
                cls.pop()
                cover[a] = cover[b] = cover[c] = False
                for x, y in ((a, b), (a, c), (b, c)):
                    used[x][y] = used[y][x] = False

    def go():
        if len(classes) == n_classes:
            return True
        for cls in class_options([False] * v, []):
            classes.append(cls)
            if go():
                return True
            classes.pop()
        return False

    if not go():
        raise RuntimeError(f"no KTS({v}) found")
    return classes


def min_covering(v):
    """Smallest triple covering of K_v by iterative deepening."""
    lower = math.ceil(v / 3 * math.ceil((v - 1) / 2))
    for b in range(lower, lower + 3):
        sol = cover_search(v, b)
        if sol:
            return sol
    raise RuntimeError("no covering")


def cover_search(v, b):
    count = {}
    chosen = []

    def uncovered():
        for x in range(v):
            for y in range(x + 1, v):
                if count.get((x, y), 0) == 0:
                    return (x, y)
        return None

    def go():
        first = uncovered()
        if first is None:
            return True
        if len(chosen) == b:
            return False
        x, y = first
        for z in range(v):
            if z in (x, y):
                continue
            t = tuple(sorted((x, y, z)))
            chosen.append(t)
            for e in itertools.combinations(t, 2):
                count[e] = count.get(e, 0) + 1
            if go():
                return True
            for e in itertools.combinations(t, 2):
                count[e] -= 1
            chosen.pop()
        return False

    return [list(t) for t in chosen] if go() else None


def affine_plane_3():
    q = 3
    blocks, res = [], []
    # rows, columns, and the two slope classes a*i + j.
    classes = [[[r * q + c for c in range(q)] for r in range(q)],
               [[r * q + c for r in range(q)] for c in range(q)]]
    for a in (1, 2):
        classes.append([[r * q + c for r in range(q) for c in range(q) if (a * r + c) % q == s]
                        for s in range(q)])
    for cls in classes:
        res.append(list(range(len(blocks), len(blocks) + len(cls))))
        blocks.extend(cls)
    return blocks, res


def write(name, doc):
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(doc, separators=(",", ":")) + "\n")
    print("wrote", path.name)


def main():
    OUT.mkdir(exist_ok=True)
    for p, n in ((2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)):
        write(f"mols-{p ** n}", mols_doc(p, n))

    blocks, res = affine_plane_3()
    write("kts-9", design("pbd", 9, [3], blocks, resolution=res,
                          class_kinds=["full"] * len(res), provenance="affine plane of order 3"))
    blocks, res = kts(15)
    write("kts-15", design("pbd", 15, [3], blocks, resolution=res,
                           class_kinds=["full"] * len(res), provenance="resolvable search"))

    write("gdd-2^3-k3", design("gdd", 6, [3], [[0, 2, 4], [0, 3, 5], [1, 2, 5], [1, 3, 4]],
                               groups=[2, 2, 2], provenance="triangle decomposition of K_{2,2,2}"))
    write("packing-5-3", design("packing", 5, [3], [[0, 1, 2], [0, 3, 4]],
                                provenance="two edge-disjoint triangles in K_5"))
    for v in (4, 5, 6, 8):
        write(f"covering-{v}-3", design("covering", v, [3], min_covering(v),
                                        provenance="minimum triple covering by search"))


if __name__ == "__main__":
    main()
