"""Independent oracles shared by test modules.

These deliberately avoid the package's own code paths: determinants by
Bareiss elimination, invariant factors by minor gcds, components by
union-find.
"""

import itertools
from math import gcd


def det(matrix):
    """Integer determinant by fraction-free Gaussian elimination."""
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def minor_gcd_invariant_factors(rows, width):
    """Invariant factors d_k / d_{k-1} from gcds of all k x k minors."""
    nr = len(rows)
    rank_max = min(nr, width)
    divisors = [1]
    for k in range(1, rank_max + 1):
        g = 0
        for ris in itertools.combinations(range(nr), k):
            for cis in itertools.combinations(range(width), k):
                sub = [[rows[i][j] for j in cis] for i in ris]
                g = gcd(g, abs(det(sub)))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def union_find_components(g, cols):
    parent = list(g.vertices)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in cols:
        for v in g.vertices:
            a, b = find(v), find(g.matchings[c][v])
            if a != b:
                parent[a] = b
    groups = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(tuple(sorted(vs)) for vs in groups.values())


def bigon_count(g):
    """Number of bicolored cycles over all color pairs, by direct walking."""
    total = 0
    for i, j in itertools.combinations(g.colors, 2):
        seen = set()
        for v in g.vertices:
            if v in seen:
                continue
            u = v
            while u not in seen:
                seen.add(u)
                step = g.matchings[i][u]
                seen.add(step)
                u = g.matchings[j][step]
            total += 1
    return total
