"""Exact rational arithmetic used to derive expected values independently of numpy."""

from fractions import Fraction


def kernel(weights, beta):
    n = len(weights)
    beta = [Fraction(b) for b in beta]
    T = []
    for x in range(n):
        deg = sum(Fraction(w) for w in weights[x])
        T.append([(1 - beta[x] if x == y else 0) + beta[x] * Fraction(weights[x][y]) / deg for y in range(n)])
    return T


def solve(A, b):
    """Gauss-Jordan elimination over the rationals."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def hitting(weights, beta, target):
    T = kernel(weights, beta)
    n = len(T)
    rest = [x for x in range(n) if x != target]
    A = [[(1 if x == v else 0) - T[x][v] for v in rest] for x in rest]
    h = solve(A, [1] * len(rest))
    out = [Fraction(0)] * n
    for x, val in zip(rest, h):
        out[x] = val
    return out


def vecmat(v, M):
    return [sum(v[i] * M[i][j] for i in range(len(v))) for j in range(len(M[0]))]
