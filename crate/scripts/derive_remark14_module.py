#!/usr/bin/env python3
"""Derive a faithful irreducible 6-dimensional F_3-module for H = A4 x C4.

Brute force, no external dependencies:

1. A4 = <a, b | a^3 = b^2 = (ab)^3 = 1>. Scan pairs of 3x3 matrices over F_3 in
   lexicographic order and keep the first pair generating a group of order 12
   that acts irreducibly on F_3^3.
2. C4 = <c | c^4 = 1>. Keep the lexicographically first 2x2 matrix of order 4
   with no invariant line.
3. Tensor: H is generated by a (x) I2, b (x) I2 and I3 (x) c acting on F_3^6.
4. Verify that the generated matrix group has order 48 (so the action is
   faithful) and that every nonzero vector spins up to all of F_3^6.

The printed matrices are the ones hard-coded in the `remark14` catalog entry.
"""

import itertools

P = 3


def mat_mul(x, y):
    n = len(x)
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(n)) % P for j in range(n))
        for i in range(n)
    )


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def order(x, bound=20):
    e = identity(len(x))
    y = x
    for k in range(1, bound + 1):
        if y == e:
            return k
        y = mat_mul(y, x)
    return None


def all_matrices(n):
    for entries in itertools.product(range(P), repeat=n * n):
        yield tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))


def closure(gens):
    n = len(gens[0])
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def vec_mat(v, m):
    n = len(v)
    return tuple(sum(v[i] * m[i][j] for i in range(n)) % P for j in range(n))


def span_dimension(vectors, n):
    rows = [list(v) for v in vectors]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % P), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], P - 2, P)
        rows[rank] = [(x * inv) % P for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % P for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def spin(v, gens):
    """Dimension of the submodule generated by v (row vectors, right action)."""
    n = len(v)
    found = {v}
    queue = [v]
    while queue:
        w = queue.pop()
        for g in gens:
            u = vec_mat(w, g)
            if u not in found:
                found.add(u)
                queue.append(u)
    return span_dimension(found, n)


def irreducible(gens):
    n = len(gens[0])
    for v in itertools.product(range(P), repeat=n):
        if any(v) and spin(tuple(v), gens) < n:
            return False
    return True


def find_a4():
    order3 = [m for m in all_matrices(3) if order(m) == 3]
    order2 = [m for m in all_matrices(3) if order(m) == 2]
    for a in order3:
        for b in order2:
            if order(mat_mul(a, b)) != 3:
                continue
            if len(closure([a, b])) == 12 and irreducible([a, b]):
                return a, b
    raise RuntimeError("no 3-dimensional irreducible A4 representation found")


def find_c4():
    for c in all_matrices(2):
        if order(c) == 4 and irreducible([c]):
            return c
    raise RuntimeError("no 2-dimensional irreducible C4 representation found")


def kron(x, y):
    n, m = len(x), len(y)
    return tuple(
        tuple(x[i // m][j // m] * y[i % m][j % m] % P for j in range(n * m))
        for i in range(n * m)
    )


def rust_literal(name, m):
    rows = ",\n".join("        vec![" + ", ".join(str(x) for x in row) + "]" for row in m)
    return f"// {name}\nvec![\n{rows},\n]"


def main():
    a, b = find_a4()
    c = find_c4()
    gens = [kron(a, identity(2)), kron(b, identity(2)), kron(identity(3), c)]
    group_order = len(closure(gens))
    assert group_order == 48, group_order
    assert irreducible(gens)
    print(f"A4 generators: a = {a}, b = {b}")
    print(f"C4 generator: c = {c}")
    print(f"|H| = {group_order}; irreducible on F_3^6 (spun from all 728 nonzero vectors)")
    for name, m in zip(["a (x) I2", "b (x) I2", "I3 (x) c"], gens):
        print(rust_literal(name, m))


if __name__ == "__main__":
    main()
