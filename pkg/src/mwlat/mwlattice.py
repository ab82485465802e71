"""Height pairing, Gram matrices and decomposition over a basis."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotInSpan, OddPoleOrder, SpecError
from .fibers import classify_fibers, component_index, contribution, reducible_fibers, sum_ord_delta
from .funcfield import squarefree_decomp
from .weierstrass import ec_add, ec_neg, linear_combination, torsion_order


@dataclass
class HeightContext:
    curve: object
    fibers: list
    chi: int = 1
    # {place label: {point key: index}} for fibers with more than 2 components
    overrides: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, curve, hints=(), overrides=None):
        reports = classify_fibers(curve, hints)
        total = sum_ord_delta(reports)
        if total % 12:
            raise SpecError(f"sum of ord(delta) is {total}, not a multiple of 12")
        chi = total // 12
        if chi != 1:
            raise SpecError(f"expected a rational elliptic surface (chi = 1), got chi = {chi}")
        return cls(curve, reports, chi, dict(overrides or {}))

    def _override(self, report, P):
        table = self.overrides.get(str(report.place))
        if not table:
            return None
        return table.get(P) if isinstance(table, dict) else None


def intersect_zero(ctx, P):
    """(P.O): half the total pole order of x_P, infinity read in the s-chart."""
    if P.is_zero:
        raise SpecError("(P.O) is undefined for the zero section")
    den = P.x.den
    total = 0
    for fac, e in squarefree_decomp(den) if den.degree > 0 else []:
        if e % 2:
            raise OddPoleOrder(f"x has a pole of odd order {e} at the roots of {fac}")
        total += fac.degree * e // 2
    pole_inf = max(0, P.x.degree - 2)
    if pole_inf % 2:
        raise OddPoleOrder(f"x has a pole of odd order {pole_inf} at infinity")
    return total + pole_inf // 2


def local_contributions(ctx, P):
    """[(report, index, contr)] over the reducible fibers."""
    out = []
    for r in reducible_fibers(ctx.fibers):
        idx = component_index(ctx.curve, r, P, ctx._override(r, P))
        out.append((r, idx, contribution(r, idx)))
    return out


def height(ctx, P):
    if P.is_zero:
        return Fraction(0)
    key = ("h", P)
    if key not in ctx._cache:
        contr = sum((c for _, _, c in local_contributions(ctx, P)), Fraction(0))
        ctx._cache[key] = 2 * ctx.chi + 2 * intersect_zero(ctx, P) - contr
    return ctx._cache[key]


def pair(ctx, P, Q):
    """<P, Q> by polarization."""
    S = ec_add(ctx.curve, P, Q)
    return (height(ctx, S) - height(ctx, P) - height(ctx, Q)) / 2


@dataclass(frozen=True)
class GramMatrix:
    basis: tuple
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def size(self):
        return len(self.entries)

    def as_lists(self):
        return [list(r) for r in self.entries]

    def to_json(self):
        return [[str(v) for v in r] for r in self.entries]

    def leading_minors(self):
        return [det([r[:k] for r in self.entries[:k]]) for k in range(1, self.size + 1)]


def gram(ctx, basis):
    n = len(basis)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = height(ctx, basis[i])
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = pair(ctx, basis[i], basis[j])
    return GramMatrix(tuple(basis), tuple(tuple(r) for r in rows))


def det(mat):
    """Determinant of a rational matrix by Gaussian elimination."""
    M = [[Fraction(v) for v in r] for r in mat]
    n = len(M)
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            d = -d
        d *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] -= f * M[k][j]
    return d


def solve(mat, rhs):
    """Solve mat . c = rhs over Q; raises NotInSpan if singular."""
    n = len(mat)
    M = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(mat, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise NotInSpan("Gram matrix is singular")
        M[k], M[piv] = M[piv], M[k]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k] / M[k][k]
                for j in range(k, n + 1):
                    M[i][j] -= f * M[k][j]
    return [M[i][n] / M[i][i] for i in range(n)]


def decompose(ctx, basis, gmat, P):
    """Integer coordinates of P over the basis and the torsion remainder."""
    if not basis:
        return [], P
    rhs = [pair(ctx, P, B) for B in basis]
    coeffs = solve(gmat.as_lists() if isinstance(gmat, GramMatrix) else gmat, rhs)
    if any(c.denominator != 1 for c in coeffs):
        raise NotInSpan(f"non-integral coordinates {[str(c) for c in coeffs]}")
    ints = [int(c) for c in coeffs]
    rebuilt = linear_combination(ctx.curve, ints, basis)
    rest = ec_add(ctx.curve, P, ec_neg(ctx.curve, rebuilt))
    if torsion_order(ctx.curve, rest) is None:
        raise NotInSpan("remainder is not torsion")
    return ints, rest


__all__ = [
    "HeightContext", "GramMatrix", "intersect_zero", "height", "pair", "gram",
    "decompose", "local_contributions", "det", "solve",
]
