"""Ekedahl-Oort types of symplectic semilinear modules (p-torsion Dieudonne data).

A module is a 2g-dimensional space with an alternating nondegenerate Gram
matrix and a sigma^-1-linear V(u) = vmat * sigma^-1(u).  F is recovered from
<F u, w> = <u, V w>^sigma, which gives fmat = G^-1 sigma(vmat)^T sigma(G).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import linalg
from .ff import FieldSpec, NonInvertible


class EOError(ValueError):
    pass


class NonNested(EOError):
    pass


class InterpolationAmbiguous(EOError):
    pass


class ModuleInvalid(EOError):
    def __init__(self, msg: str, report: "ValidationReport | None" = None):
        super().__init__(msg)
        self.report = report


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------
@dataclass(frozen=True, order=True)
class EOType:
    parts: tuple[int, ...]
    g: int

    def __post_init__(self):
        p = self.parts
        if any(x <= 0 or x > self.g for x in p) or any(a <= b for a, b in zip(p, p[1:])):
            raise EOError(f"{list(p)} is not an EO type for g={self.g}")

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]" if self.parts else "∅"

    @property
    def codim(self) -> int:
        return sum(self.parts)

    @property
    def p_rank(self) -> int:
        return self.g - (self.parts[0] if self.parts else 0)

    @property
    def a_number(self) -> int:
        return len(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)


def eo_type(parts: Iterable[int], g: int) -> EOType:
    return EOType(tuple(parts), g)


def parse_mu(text: str, g: int) -> EOType:
    text = text.strip().strip("[]")
    if text in ("", "∅", "empty"):
        return EOType((), g)
    return EOType(tuple(int(s) for s in text.split(",")), g)


def codim(mu: EOType) -> int:
    return mu.codim


def p_rank_of(mu: EOType) -> int:
    return mu.p_rank


def a_number_of(mu: EOType) -> int:
    return mu.a_number


def young_diagram(v: Sequence[int], g: int) -> EOType:
    """mu_j = #{1 <= i <= g : v(i) + j <= i}."""
    parts = []
    for j in range(1, g + 1):
        mj = sum(1 for i in range(1, g + 1) if v[i] + j <= i)
        if mj == 0:
            break
        parts.append(mj)
    return EOType(tuple(parts), g)


def _extend_final(head: Sequence[int], g: int) -> tuple[int, ...]:
    """v(0..g) -> v(0..2g) via v(2g - i) = v(i) - i + g."""
    v = list(head) + [0] * g
    for i in range(g):
        v[2 * g - i] = v[i] - i + g
    return tuple(v)


def all_final_types(g: int) -> list[tuple[int, ...]]:
    out = []
    for steps in itertools.product((0, 1), repeat=g):
        head = [0]
        for s in steps:
            head.append(head[-1] + s)
        out.append(_extend_final(head, g))
    return out


def mu_to_final_type(mu: EOType) -> tuple[int, ...]:
    for v in all_final_types(mu.g):
        if young_diagram(v, mu.g) == mu:
            return v
    raise EOError(f"no final type for {mu}")


def enumerate_eo_types(g: int) -> list[EOType]:
    types = [EOType(tuple(sorted(s, reverse=True)), g)
             for r in range(g + 1) for s in itertools.combinations(range(1, g + 1), r)]
    return sorted(types, key=lambda m: (m.codim, m.parts))


def compare(mu: EOType, nu: EOType) -> str:
    """'equal', 'less', 'greater' or 'incomparable' in the order
    mu <= nu iff len(mu) <= len(nu) and mu_i <= nu_i for i <= len(mu)."""
    def le(a: EOType, b: EOType) -> bool:
        return len(a.parts) <= len(b.parts) and all(x <= y for x, y in zip(a.parts, b.parts))
    if mu == nu:
        return "equal"
    if le(mu, nu):
        return "less"
    if le(nu, mu):
        return "greater"
    return "incomparable"


def covering_relations(g: int) -> list[tuple[EOType, EOType]]:
    types = enumerate_eo_types(g)
    less = {(a, b) for a in types for b in types if compare(a, b) == "less"}
    return [(a, b) for (a, b) in sorted(less)
            if not any((a, c) in less and (c, b) in less for c in types)]


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class SymplecticSemilinearModule:
    field: FieldSpec
    gram: tuple
    vmat: tuple
    label: str = ""
    fmat_direct: tuple | None = dc_field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def g(self) -> int:
        return self.dim // 2

    def V(self, u: Sequence[int]) -> list[int]:
        F = self.field
        return linalg.matvec(F, self.vmat, [F.ifrob[x] for x in u])

    @cached_property
    def fmat(self) -> list[list[int]]:
        F = self.field
        Ginv = linalg.inverse(F, self.gram)
        return linalg.matmul(F, linalg.matmul(F, Ginv, linalg.transpose(linalg.frob_matrix(F, self.vmat, 1))),
                             linalg.frob_matrix(F, self.gram, 1))

    def Fop(self, u: Sequence[int]) -> list[int]:
        F = self.field
        return linalg.matvec(F, self.fmat, [F.frob[x] for x in u])

    def pair(self, u: Sequence[int], w: Sequence[int]) -> int:
        F = self.field
        return linalg.dot(F, u, linalg.matvec(F, self.gram, w))

    def scaled(self, c: int) -> "SymplecticSemilinearModule":
        F = self.field
        return SymplecticSemilinearModule(F, _tup(linalg.scale_matrix(F, self.gram, c)), self.vmat, self.label)

    def to_json(self) -> dict:
        F = self.field
        return {
            "g": self.g,
            "field": F.to_json(),
            "gram": [[F.decode(x) for x in r] for r in self.gram],
            "vmat": [[F.decode(x) for x in r] for r in self.vmat],
        }

    @staticmethod
    def from_json(d: Mapping) -> "SymplecticSemilinearModule":
        F = FieldSpec.from_json(d["field"])

        def enc(x) -> int:
            # coefficient list, or a bare int read in the prime field
            if isinstance(x, int) and not isinstance(x, bool):
                return x % F.p
            if isinstance(x, list) and all(isinstance(c, int) for c in x) and len(x) <= F.k:
                return F.encode(x)
            raise ModuleInvalid(f"bad matrix entry {x!r}")

        try:
            gram = _tup([[enc(x) for x in r] for r in d["gram"]])
            vmat = _tup([[enc(x) for x in r] for r in d["vmat"]])
        except (TypeError, KeyError) as exc:
            raise ModuleInvalid(f"malformed module JSON: {exc}") from None
        if any(len(r) != len(gram) for r in gram + vmat):
            raise ModuleInvalid("matrices must be square")
        if len(gram) != 2 * d["g"] or len(vmat) != len(gram):
            raise ModuleInvalid("matrix size does not match g")
        return SymplecticSemilinearModule(F, gram, vmat)


def _tup(M) -> tuple:
    return tuple(tuple(r) for r in M)


# -- subspace operations --------------------------------------------------------
def v_image(M: SymplecticSemilinearModule, W: linalg.Subspace) -> linalg.Subspace:
    return linalg.span(M.field, [M.V(w) for w in W])


def perp(M: SymplecticSemilinearModule, W: linalg.Subspace) -> linalg.Subspace:
    F = M.field
    if not W:
        return linalg.span(F, linalg.identity(M.dim))
    rows = [linalg.matvec(F, M.gram, w) for w in W]
    return linalg.span(F, linalg.nullspace(F, rows, M.dim))


def kernel_V(M: SymplecticSemilinearModule) -> linalg.Subspace:
    F = M.field
    return linalg.span(F, [linalg.frob_vec(F, u, 1) for u in linalg.nullspace(F, M.vmat, M.dim)])


def image_V(M: SymplecticSemilinearModule) -> linalg.Subspace:
    return linalg.span(M.field, linalg.transpose(M.vmat))


def kernel_F(M: SymplecticSemilinearModule, fmat=None) -> linalg.Subspace:
    F = M.field
    fm = M.fmat if fmat is None else fmat
    return linalg.span(F, [linalg.frob_vec(F, u, -1) for u in linalg.nullspace(F, fm, M.dim)])


def image_F(M: SymplecticSemilinearModule, fmat=None) -> linalg.Subspace:
    fm = M.fmat if fmat is None else fmat
    return linalg.span(M.field, linalg.transpose(fm))


def _isotropic(M: SymplecticSemilinearModule, W: linalg.Subspace) -> bool:
    return all(M.pair(u, w) == 0 for u in W for w in W)


# -- validation -----------------------------------------------------------------
@dataclass
class ValidationReport:
    checks: dict[str, bool]
    notes: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "notes": self.notes}


def validate_module(M: SymplecticSemilinearModule) -> ValidationReport:
    """Run every structural check; never raises."""
    F, n, g = M.field, M.dim, M.g
    checks: dict[str, bool] = {}
    notes: list[str] = []
    try:
        G = M.gram
        checks["square"] = n % 2 == 0 and all(len(r) == n for r in G) and len(M.vmat) == n \
            and all(len(r) == n for r in M.vmat)
        if not checks["square"]:
            return ValidationReport(checks, ["bad shape"])
        checks["gram_alternating"] = all(G[i][i] == 0 for i in range(n)) and all(
            G[j][i] == F.neg[G[i][j]] for i in range(n) for j in range(n))
        checks["gram_nondegenerate"] = linalg.rank(F, G) == n
        imV, kerV = image_V(M), kernel_V(M)
        checks["imV_lagrangian"] = len(imV) == g and _isotropic(M, imV)
        checks["kerV_lagrangian"] = len(kerV) == g and _isotropic(M, kerV)
        if checks["gram_nondegenerate"]:
            fm = M.fmat
            checks["kerF_eq_imV"] = kernel_F(M) == imV
            checks["imF_eq_kerV"] = image_F(M) == kerV
            checks["FV_zero"] = not any(any(r) for r in linalg.matmul(F, fm, linalg.frob_matrix(F, M.vmat, 1)))
            checks["VF_zero"] = not any(any(r) for r in linalg.matmul(F, M.vmat, linalg.frob_matrix(F, fm, -1)))
            if M.fmat_direct is not None:
                checks["F_matches_direct"] = [list(r) for r in M.fmat_direct] == fm
    except Exception as exc:  # the report is the error channel
        checks["internal"] = False
        notes.append(f"{type(exc).__name__}: {exc}")
    return ValidationReport(checks, notes)


# -- canonical filtration -------------------------------------------------------
@dataclass(frozen=True)
class Filtration:
    members: tuple            # subspaces sorted by dimension
    images: dict              # dim -> dim of V(member)

    @property
    def dims(self) -> list[int]:
        return [len(W) for W in self.members]


def canonical_filtration(M: SymplecticSemilinearModule) -> Filtration:
    F, n = M.field, M.dim
    full = linalg.span(F, linalg.identity(n))
    seen = {(): None, full: None}
    todo = [full]
    passes = 0
    while todo:
        passes += 1
        if passes > 4 * n * (n + 1):
            raise NonNested("closure did not stabilise")
        W = todo.pop()
        for U in (v_image(M, W), perp(M, W)):
            if U not in seen:
                seen[U] = None
                todo.append(U)
                if len(seen) > n + 1:
                    raise NonNested("more members than dimensions")
    members = sorted(seen, key=len)
    dims = [len(W) for W in members]
    if len(set(dims)) != len(dims):
        raise NonNested("two members of equal dimension")
    for A, B in zip(members, members[1:]):
        if not linalg.contains(F, B, A):
            raise NonNested("members are not nested")
    images = {len(W): len(v_image(M, W)) for W in members}
    return Filtration(tuple(members), images)


def final_type(M: SymplecticSemilinearModule, filt: Filtration | None = None) -> tuple[int, ...]:
    filt = filt or canonical_filtration(M)
    n, g = M.dim, M.g
    v = [0] * (n + 1)
    dims = filt.dims
    for d in dims:
        v[d] = filt.images[d]
    for a, b in zip(dims, dims[1:]):
        dv = v[b] - v[a]
        if dv == b - a:
            for t in range(1, b - a):
                v[a + t] = v[a] + t
        elif dv == 0:
            for t in range(1, b - a):
                v[a + t] = v[a]
        else:
            raise InterpolationAmbiguous(f"slope {dv}/{b - a} between dims {a} and {b}")
    v = tuple(v)
    if v != _extend_final(v[: g + 1], g):
        raise InterpolationAmbiguous("final type is not self-dual")
    return v


def module_eo_type(M: SymplecticSemilinearModule) -> EOType:
    return young_diagram(final_type(M), M.g)


def final_filtration(M: SymplecticSemilinearModule) -> list[linalg.Subspace]:
    """A full V- and perp-stable flag refining the canonical filtration.

    Gaps are filled by pulling back refinements of the target gap through V
    (slope-one gaps) or by taking perps of refined dual gaps.  Raises
    EOError when neither rule applies.
    """
    F, n = M.field, M.dim
    filt = canonical_filtration(M)
    v = final_type(M, filt)
    flag: dict[int, linalg.Subspace] = {len(W): W for W in filt.members}
    changed = True
    while len(flag) < n + 1 and changed:
        changed = False
        for d in range(1, n):
            if d in flag:
                continue
            lo = max(k for k in flag if k < d)
            hi = min(k for k in flag if k > d)
            A, B = flag[lo], flag[hi]
            if v[hi] - v[lo] == hi - lo and v[d] in flag:
                W = flag[v[d]]
                pre = _v_preimage_in(M, B, W)
                cand = linalg.subspace_sum(F, A, pre)
                if len(cand) == d:
                    flag[d] = cand
                    changed = True
            elif (n - d) in flag:
                cand = perp(M, flag[n - d])
                if len(cand) == d:
                    flag[d] = cand
                    changed = True
    if len(flag) < n + 1:
        raise EOError("refinement needs a non-canonical choice")
    return [flag[d] for d in range(n + 1)]


def _v_preimage_in(M: SymplecticSemilinearModule, B: linalg.Subspace, W: linalg.Subspace) -> linalg.Subspace:
    """{u in B : V u in W}."""
    F, n = M.field, M.dim
    if not B:
        return ()
    # V(sum c_i b_i) = sum c_i^(1/p) V(b_i); solve on sigma^-1 of coefficients
    images = [M.V(b) for b in B]
    cols = images + [[F.neg[x] for x in w] for w in W]
    ker = linalg.nullspace(F, linalg.transpose(cols), len(cols))
    vecs = []
    for k in ker:
        coeffs = [F.frob[c] for c in k[: len(B)]]
        u = [0] * n
        for c, b in zip(coeffs, B):
            if c:
                row = F.mult[c]
                u = [F.addt[x][row[y]] for x, y in zip(u, b)]
        vecs.append(u)
    return linalg.span(F, vecs)


# -- constructions --------------------------------------------------------------
def direct_sum(A: SymplecticSemilinearModule, B: SymplecticSemilinearModule) -> SymplecticSemilinearModule:
    if A.field != B.field:
        raise EOError("direct sum over different fields")
    a, b = A.dim, B.dim

    def block(X, Y):
        out = linalg.zeros(a + b, a + b)
        for i in range(a):
            out[i][:a] = list(X[i])
        for i in range(b):
            out[a + i][a:] = list(Y[i])
        return _tup(out)

    return SymplecticSemilinearModule(A.field, block(A.gram, B.gram), block(A.vmat, B.vmat),
                                      f"{A.label}+{B.label}")


def _antidiagonal_gram(F: FieldSpec, g: int) -> tuple:
    n = 2 * g
    G = linalg.zeros(n, n)
    for i in range(n):
        G[i][n - 1 - i] = 1 if i < g else F.neg[1]
    return _tup(G)


NAMED_BLOCKS = ("ordinary-elliptic", "supersingular-elliptic")


def standard_module(spec: str | EOType, F: FieldSpec) -> SymplecticSemilinearModule:
    """Model module with basis X_1..X_2g, V(X_i) = X_v(i) at steps of the
    final type and 0 elsewhere, and <X_i, X_(2g+1-i)> = +-1."""
    if isinstance(spec, str):
        if spec == "ordinary-elliptic":
            return SymplecticSemilinearModule(F, _antidiagonal_gram(F, 1), ((1, 1), (0, 0)), spec)
        if spec == "supersingular-elliptic":
            return SymplecticSemilinearModule(F, _antidiagonal_gram(F, 1), ((0, 1), (0, 0)), spec)
        raise EOError(f"unknown block {spec!r}")
    g = spec.g
    v = mu_to_final_type(spec)
    n = 2 * g
    Vm = linalg.zeros(n, n)
    for i in range(1, n + 1):
        if v[i] == v[i - 1] + 1:
            Vm[v[i] - 1][i - 1] = 1
    return SymplecticSemilinearModule(F, _antidiagonal_gram(F, g), _tup(Vm), f"{spec}@g{g}")


def parse_block(text: str, F: FieldSpec) -> SymplecticSemilinearModule:
    """``ordinary-elliptic``, ``supersingular-elliptic`` or ``[2,1]@g3``."""
    text = text.strip()
    if text in NAMED_BLOCKS:
        return standard_module(text, F)
    if "@g" not in text:
        raise EOError(f"cannot parse block {text!r}")
    mu, g = text.split("@g")
    return standard_module(parse_mu(mu, int(g)), F)


@dataclass(frozen=True)
class ModuleReport:
    v: tuple
    mu: EOType

    def to_json(self) -> dict:
        g = self.mu.g
        return {"v": list(self.v), "mu": self.mu.to_json(), "a": self.mu.a_number,
                "f": self.mu.p_rank, "codim": self.mu.codim, "g": g}


def analyse_module(M: SymplecticSemilinearModule) -> ModuleReport:
    rep = validate_module(M)
    if not rep.ok:
        raise ModuleInvalid(f"invalid module: {rep.failures()} {rep.notes}", rep)
    v = final_type(M)
    return ModuleReport(v, young_diagram(v, M.g))
