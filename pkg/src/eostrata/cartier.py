"""Cartier-Manin matrices and their iterated ranks.

Two independent routes produce the matrix: ``"adjoint"`` applies the
closed formula C(G dx/F_y) = (d_x^2 d_y^2 (F^2 G))^(1/3) dx/F_y to adjoint
numerators, ``"decompose"`` runs the generic p-power decomposition on each
basis differential.  The result is stored already cube-rooted in the column
convention C(omega_j) = sum_i M[i][j] omega_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import linalg
from .curve import (
    CurveModel,
    Differential,
    basis_numerators,
    cartier,
    coordinates,
    differential_from_numerator,
)
from .ff import FieldSpec

BiPoly = dict  # {(i, j): c}


class BasisValidationFailed(ValueError):
    pass


def bmul(F: FieldSpec, a: Mapping, b: Mapping) -> BiPoly:
    add, mul = F.addt, F.mult
    out: dict = {}
    for (i, j), x in a.items():
        row = mul[x]
        for (k, l), y in b.items():
            key = (i + k, j + l)
            out[key] = add[out.get(key, 0)][row[y]]
    return {k: v for k, v in out.items() if v}


def nabla_raw(F: FieldSpec, P: Mapping) -> BiPoly:
    """Coefficients of x^(3k+2) y^(3l+2) moved to x^k y^l (no root taken).

    The factor 2*2 from the two second derivatives is 1 mod 3.
    """
    return {((i - 2) // 3, (j - 2) // 3): c for (i, j), c in P.items() if i % 3 == 2 and j % 3 == 2}


def adjoint_cartier(curve: CurveModel, G: Mapping) -> BiPoly:
    """Numerator of C(G dx/F_y) over dx/F_y."""
    F = curve.field
    c = curve._cache
    if "F2" not in c:
        Fd = curve.F_dict
        c["F2"] = bmul(F, Fd, Fd)
    raw = nabla_raw(F, bmul(F, c["F2"], G))
    return {k: F.ifrob[v] for k, v in raw.items()}


def _solve_numerators(F: FieldSpec, Gs: Sequence[Mapping], target: Mapping) -> list[int] | None:
    keys = sorted(set().union(*[set(g) for g in Gs], set(target)))
    A = [[g.get(k, 0) for g in Gs] for k in keys]
    b = [target.get(k, 0) for k in keys]
    return linalg.solve(F, A, b)


@dataclass(frozen=True)
class CartierMatrix:
    field: FieldSpec
    entries: tuple  # row-major, encoded ints

    @property
    def g(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_json(self) -> dict:
        F = self.field
        return {
            "convention": "column-action-rooted",
            "field": F.to_json(),
            "rows": [[F.decode(v) for v in r] for r in self.entries],
        }

    @staticmethod
    def from_json(d: Mapping) -> "CartierMatrix":
        F = FieldSpec.from_json(d["field"])
        return CartierMatrix(F, tuple(tuple(F.encode(v) for v in r) for r in d["rows"]))


def cartier_manin_matrix(
    curve: CurveModel,
    numerators: Sequence[Mapping] | None = None,
    method: str = "adjoint",
) -> CartierMatrix:
    """Matrix of C on the holomorphic basis (default basis unless numerators
    G_i with omega_i = G_i dx/F_y are given)."""
    F = curve.field
    Gs = list(numerators) if numerators is not None else basis_numerators(curve)
    n = len(Gs)
    cols = []
    if method == "adjoint":
        for G in Gs:
            coords = _solve_numerators(F, Gs, adjoint_cartier(curve, G))
            if coords is None:
                raise BasisValidationFailed("C(omega) leaves the span of the basis")
            cols.append(coords)
    elif method == "decompose":
        omegas = [differential_from_numerator(curve, G) for G in Gs]
        for w in omegas:
            coords = coordinates(omegas, cartier(w))
            if coords is None:
                raise BasisValidationFailed("C(omega) leaves the span of the basis")
            cols.append(coords)
    else:
        raise ValueError(f"unknown method {method!r}")
    return CartierMatrix(F, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def validate_basis(curve: CurveModel, numerators: Sequence[Mapping]) -> None:
    """Raise BasisValidationFailed unless the span is Cartier-stable and independent."""
    F = curve.field
    keys = sorted(set().union(*[set(g) for g in numerators]))
    if linalg.rank(F, [[g.get(k, 0) for k in keys] for g in numerators]) != len(numerators):
        raise BasisValidationFailed("basis differentials are dependent")
    cartier_manin_matrix(curve, numerators)


def semilinear_power(F: FieldSpec, M: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Matrix of C^n: M * sigma^-1(M) * ... * sigma^-(n-1)(M)."""
    out = linalg.identity(len(M))
    for i in range(n):
        out = linalg.matmul(F, out, linalg.frob_matrix(F, M, -i))
    return out


def rank_profile(cm: CartierMatrix) -> tuple[int, ...]:
    F, M = cm.field, cm.rows()
    g = len(M)
    out = []
    P = linalg.identity(g)
    for i in range(g):
        P = linalg.matmul(F, P, linalg.frob_matrix(F, M, -i))
        out.append(linalg.rank(F, P))
    return tuple(out)


def a_number(cm: CartierMatrix) -> int:
    return cm.g - rank_profile(cm)[0]


def p_rank(cm: CartierMatrix) -> int:
    return rank_profile(cm)[-1]
