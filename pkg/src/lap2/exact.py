"""Exact Laplacian spectra: rank, multiplicities, characteristic polynomial,
spanning-forest coefficients, rational eigenvectors, and a float spectrum
for the interlacing checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Sequence

import numpy as np

from .errors import ConvergenceFailure, Disconnected, DimensionMismatch, TooLarge
from .graph import Graph, is_connected, laplacian

FOREST_ORACLE_CAP = 10


def bareiss_rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination.

    Every intermediate entry is a minor of the input, so the division by
    the previous pivot is exact.
    """
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r, prev = 0, 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        top = m[r]
        for i in range(r + 1, rows):
            row = m[i]
            f = row[c]
            if f:
                for j in range(c + 1, cols):
                    row[j] = (p * row[j] - f * top[j]) // prev
            else:
                for j in range(c + 1, cols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == rows:
            break
    return r


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k]), None)
            if sw is None:
                return 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def shifted_laplacian(g: Graph, mu: int) -> list[list[int]]:
    L = laplacian(g)
    for i in range(g.n):
        L[i][i] -= mu
    return L


def integral_multiplicity(g: Graph, mu: int) -> int:
    """m_G(mu) = n - rank(L - mu I), computed exactly."""
    return g.n - bareiss_rank(shifted_laplacian(g, mu))


def rational_nullspace(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of ker(a) for an integer matrix, via fraction-free Gauss-Jordan.

    Rows stay integral (divided by their content after each update); each
    basis vector is scaled so its first nonzero entry is +1.
    """
    m = [[int(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        top = m[r]
        p = top[c]
        for i in range(rows):
            f = m[i][c]
            if i == r or not f:
                continue
            row = [p * x - f * y for x, y in zip(m[i], top)]
            g = 0
            for x in row:
                g = gcd(g, x)
            m[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == rows:
            break
    pivot_set = set(pivots)
    basis = []
    for fc in (c for c in range(cols) if c not in pivot_set):
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = Fraction(-m[i][fc], m[i][pc])
        lead = next(x for x in v if x != 0)
        basis.append([x / lead for x in v])
    return basis


def nullspace_2(g: Graph) -> list[list[Fraction]]:
    return rational_nullspace(shifted_laplacian(g, 2))


@dataclass(frozen=True)
class CharPoly:
    """Laplacian coefficients xi_0..xi_n with L_G(x) = sum (-1)^i xi_i x^(n-i)."""

    xi: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.xi) - 1

    def coefficients(self) -> list[int]:
        """Monic coefficients of det(xI - L), highest degree first."""
        return [(-1) ** i * c for i, c in enumerate(self.xi)]

    def __call__(self, x):
        acc = 0
        for c in self.coefficients():
            acc = acc * x + c
        return acc

    def root_multiplicity(self, x0: int) -> int:
        return poly_root_multiplicity(self.coefficients(), x0)

    def count_roots_above(self, x0: int) -> int:
        """Number of roots strictly greater than x0, with multiplicity.

        All roots are real (L is symmetric), so Descartes' rule of signs
        on p(x + x0) is exact.
        """
        shifted = taylor_shift(self.coefficients(), x0)
        while shifted and shifted[-1] == 0:
            shifted.pop()
        signs = [c > 0 for c in shifted if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def char_poly(g: Graph) -> CharPoly:
    """Faddeev-LeVerrier on the integer Laplacian.

    c_{n-k} = -tr(L M_k) / k with M_k = L M_{k-1} + c_{n-k+1} I; all
    divisions are exact for integer matrices.
    """
    return _faddeev(g, keep=False)[0]


def char_poly_with_adjugate(g: Graph) -> tuple[CharPoly, list[list[list[int]]]]:
    """Characteristic polynomial plus the matrices M_1..M_n, which satisfy
    adj(xI - L) = sum_k M_k x^(n-k)."""
    return _faddeev(g, keep=True)


def _faddeev(g: Graph, keep: bool):
    n = g.n
    L = np.array(laplacian(g), dtype=np.int64)
    # |entries of L M| <= 2 dmax |M|, and the trace adds a factor n; fall
    # back to Python integers before int64 could overflow
    scale = max(1, 2 * max(g.degrees, default=0) * n)
    safe = (1 << 62) // scale
    coeff = [0] * (n + 1)  # coeff[i] multiplies x^i
    coeff[n] = 1
    M = np.zeros((n, n), dtype=np.int64)
    kept = []
    LM = M
    for k in range(1, n + 1):
        M = LM.copy()
        M[np.diag_indices(n)] += coeff[n - k + 1]
        if keep:
            kept.append(M)
        if M.dtype != object and int(np.abs(M).max()) >= safe:
            L, M = L.astype(object), M.astype(object)
        LM = L @ M
        tr = int(np.trace(LM))
        assert tr % k == 0
        coeff[n - k] = -tr // k
    monic = coeff[::-1]
    return CharPoly(tuple((-1) ** i * int(c) for i, c in enumerate(monic))), kept


def edge_deleted_poly(poly: CharPoly, adjugate, u: int, v: int) -> CharPoly:
    """Characteristic polynomial of G - uv from that of G.

    L(G - uv) = L(G) - b b^T with b = e_u - e_v, so by the matrix
    determinant lemma det(xI - L + b b^T) = p(x) + b^T adj(xI - L) b.
    """
    mono = poly.coefficients()
    for k, M in enumerate(adjugate, start=1):
        mono[k] += int(M[u][u]) + int(M[v][v]) - 2 * int(M[u][v])
    return CharPoly(tuple((-1) ** i * c for i, c in enumerate(mono)))


def poly_root_multiplicity(coeffs: Sequence[int], x0: int) -> int:
    """Multiplicity of x0 as a root, by repeated synthetic division."""
    p = list(coeffs)
    mult = 0
    while len(p) > 1:
        q, acc = [], 0
        for c in p:
            acc = acc * x0 + c
            q.append(acc)
        if q[-1] != 0:
            break
        p = q[:-1]
        mult += 1
    return mult


def taylor_shift(coeffs: Sequence[int], a: int) -> list[int]:
    """Coefficients (highest first) of p(x + a)."""
    p = list(coeffs)
    n = len(p) - 1
    for i in range(n):
        for j in range(1, n - i + 1):
            p[j] += a * p[j - 1]
    return p


def forest_coefficient_oracle(g: Graph, k: int, cap: int = FOREST_ORACLE_CAP) -> int:
    """Sum over spanning forests with exactly k components of the product of
    component orders, by brute-force enumeration of acyclic edge subsets."""
    if g.n > cap:
        raise TooLarge(f"n={g.n} exceeds oracle cap {cap}")
    if not 1 <= k <= g.n:
        raise ValueError(f"k must lie in 1..{g.n}")
    total = 0
    for sub in combinations(g.edges, g.n - k):
        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in sub:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if not ok:
            continue
        sizes: dict[int, int] = {}
        for x in range(g.n):
            r = find(x)
            sizes[r] = sizes.get(r, 0) + 1
        total += prod(sizes.values())
    return total


def spanning_tree_count(g: Graph, poly: CharPoly | None = None) -> int:
    if not is_connected(g):
        raise Disconnected("spanning tree count needs a connected graph")
    poly = poly or char_poly(g)
    q, r = divmod(poly.xi[g.n - 1], g.n)
    assert r == 0
    return q


def kirchhoff_tree_count(g: Graph) -> int:
    """Spanning trees via the determinant of a reduced Laplacian."""
    if g.n == 1:
        return 1
    L = laplacian(g)
    return bareiss_det([row[:-1] for row in L[:-1]])


def integer_eigenvalues(g: Graph, lo: int = 2) -> dict[int, int]:
    """Exact multiplicities of every integer Laplacian eigenvalue mu >= lo.

    A nonzero integer eigenvalue is a root of p(x)/x, whose constant term
    is +-n*tau, so only divisors of n*tau in [lo, n] need a rank test.
    """
    if not is_connected(g):
        raise Disconnected("integer_eigenvalues expects a connected graph")
    ntau = g.n * kirchhoff_tree_count(g)
    out = {}
    for mu in range(max(lo, 1), g.n + 1):
        if ntau % mu == 0:
            m = integral_multiplicity(g, mu)
            if m:
                out[mu] = m
    return out


def float_spectrum(g: Graph, tol: float = 1e-9) -> list[float]:
    L = np.array(laplacian(g), dtype=float)
    try:
        w, v = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ConvergenceFailure(str(exc)) from exc
    resid = np.abs(L @ v - v * w).max() if g.n else 0.0
    if resid > tol:
        raise ConvergenceFailure(f"residual {resid:.3g} exceeds {tol}")
    return sorted(w.tolist(), reverse=True)


def verify_eigenpair(g: Graph, mu, x: Sequence) -> bool:
    """Exact check of (d(v_i) - mu) x_i = sum_{j in N(v_i)} x_j at every vertex."""
    if len(x) != g.n:
        raise DimensionMismatch(f"vector has {len(x)} entries, graph has {g.n} vertices")
    if all(v == 0 for v in x):
        return False
    for i, nb in enumerate(g.adj):
        if (len(nb) - mu) * x[i] != sum(x[j] for j in nb):
            return False
    return True
