"""Brute-force reference values for the C++ tests.

Everything here is enumerated directly from the definitions, with no
symmetry reduction, so it shares no code paths with the library.
Run: python3 brute_force.py
"""
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial


def subperm(a, m):
    n = len(a)
    if m == 0:
        return 1
    total = 0
    for rows in combinations(range(n), m):
        for cols in combinations(range(n), m):
            for p in permutations(cols):
                v = 1
                for i, j in zip(rows, p):
                    v *= a[i][j]
                    if v == 0:
                        break
                total += v
    return total


def perm_matrix_sum(perms, n):
    a = [[0] * n for _ in range(n)]
    for p in perms:
        for i, j in enumerate(p):
            a[i][j] += 1
    return a


def e1(n, r, ms):
    total = 0
    count = 0
    for perms in product(permutations(range(n)), repeat=r):
        a = perm_matrix_sum(perms, n)
        v = 1
        for m in ms:
            v *= subperm(a, m)
        total += v
        count += 1
    return Fraction(total, count)


def regular01(n, r):
    rows = [c for c in product((0, 1), repeat=n) if sum(c) == r]
    for choice in product(rows, repeat=n):
        if all(sum(row[j] for row in choice) == r for j in range(n)):
            yield [list(row) for row in choice]


def e_uniform(n, r, ms):
    total = 0
    count = 0
    for a in regular01(n, r):
        v = 1
        for m in ms:
            v *= subperm(a, m)
        total += v
        count += 1
    return Fraction(total, count)


def eb(n, r, ms):
    p = Fraction(r, n)
    total = Fraction(0)
    for bits in product((0, 1), repeat=n * n):
        a = [list(bits[i * n:(i + 1) * n]) for i in range(n)]
        ones = sum(bits)
        w = p ** ones * (1 - p) ** (n * n - ones)
        v = 1
        for m in ms:
            v *= subperm(a, m)
        total += w * v
    return total


if __name__ == "__main__":
    print("e1 n=4 r=2 m=[2,2]", e1(4, 2, [2, 2]))
    print("e1 n=4 r=3 m=[2]", e1(4, 3, [2]))
    print("e1 n=5 r=2 m=[3]", e1(5, 2, [3]))
    print("e1 n=5 r=2 m=[2,2]", e1(5, 2, [2, 2]))
    print("e1 n=4 r=3 m=[2,3]", e1(4, 3, [2, 3]))
    print("e n=5 r=2 m=[2]", e_uniform(5, 2, [2]))
    print("e n=5 r=2 m=[2,3]", e_uniform(5, 2, [2, 3]))
    print("e n=4 r=2 m=[2,2]", e_uniform(4, 2, [2, 2]))
    print("eb n=3 r=1 m=[1,1]", eb(3, 1, [1, 1]))
    print("eb n=3 r=2 m=[2,1]", eb(3, 2, [2, 1]))
    print("eb n=4 r=2 m=[2,2]", eb(4, 2, [2, 2]))
