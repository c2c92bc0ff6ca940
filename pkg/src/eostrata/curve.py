"""Trigonal curves y^3 + a2(x) y^2 + a1(x) y = h(x) in characteristic 3.

The function field is k(x)[y]/(F) with F = y^3 + a2 y^2 + a1 y - h.  An
element is stored as (N0 + N1 y + N2 y^2) / D with polynomial N_i and a monic
D coprime to the content of the N_i; that form is canonical, so equality is
structural.  Differentials are g dx with g in the function field.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping, Sequence

from . import linalg
from .ff import (
    FieldElement,
    FieldSpec,
    NonInvertible,
    Poly,
    PolyT,
    RatFunc,
    field as make_field,
    padd,
    pcube,
    pderiv,
    pdivmod,
    peval,
    pexactdiv,
    pgcd,
    pifrob,
    pmonic,
    pmul,
    pneg,
    pscale,
    psplit3,
    psub,
    ptrim,
)


class CurveError(ValueError):
    pass


class ConstraintViolation(CurveError):
    pass


class SingularCurve(CurveError):
    def __init__(self, msg: str, witness: dict | None = None):
        super().__init__(msg)
        self.witness = witness or {}


class DecompositionError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------
X = (0, 1)


def _mono(F: FieldSpec, c: int, e: int) -> PolyT:
    return ptrim([0] * e + [c])


def _poly(F: FieldSpec, terms: Mapping[int, int]) -> PolyT:
    n = max(terms) + 1 if terms else 0
    out = [0] * n
    for e, c in terms.items():
        out[e] = F.addt[out[e]][c]
    return ptrim(out)


@dataclass(frozen=True)
class Family:
    name: str
    names: tuple[str, ...]            # every named coefficient
    free: tuple[str, ...]             # coordinates of the parameter space
    derive: Callable[[FieldSpec, dict], dict]
    nonzero: tuple[str, ...]          # coefficients required to be nonzero
    build: Callable[[FieldSpec, dict], tuple[PolyT, PolyT, PolyT]]
    equation: str
    # holomorphic basis: omega_i = g_i / s dx with F_y = lam * s
    basis: Callable[[FieldSpec, dict], tuple[int, list[dict]]] | None
    basis_label: str
    # x-fibres whose singularities are resolved by the family's own model
    resolved: Callable[[FieldSpec, dict], PolyT] | None = None


def _no_derive(F, p):
    return {}


def _f32_build(F, p):
    h = _poly(F, {5: 1, 3: p["a3"], 2: p["a2"], 0: p["a0"]})
    return (1,), ptrim((p["b"],)), h


def _f32_basis(F, p):
    # F_y = 2y + b = -(y - b); omega_4 = dx = F_y dx / F_y
    n1 = F.neg[1]
    return n1, [{(0, 0): 1}, {(1, 0): 1}, {(2, 0): 1}, {(0, 1): 1, (0, 0): F.neg[p["b"]]}]


def _f321_build(F, p):
    nb = F.neg[p["b"]]
    a = _mono(F, nb, 3)
    h = _poly(F, {5: 1, 3: p["c"], 2: p["d"], 0: 1})
    return a, a, h


def _f321_basis(F, p):
    # F_y = b x^3 (y - 1); adjoint numerators x, x^2, xy, y - 1 over s = x^3 (y - 1)
    return p["b"], [{(1, 0): 1}, {(2, 0): 1}, {(1, 1): 1}, {(0, 1): 1, (0, 0): F.neg[1]}]


def _f43a_derive(F, p):
    add, mul = F.addt, F.mult
    b1, a2 = p["b1"], p["a2"]
    b1sq = mul[b1][b1]
    return {
        "b2": add[b1sq][a2],
        "a4": F.subt[b1][1],
        "a3": add[add[add[mul[b1sq][b1]][b1sq]][b1]][a2],
    }


def _f43a_theta(F, p):
    return _poly(F, {3: 1, 2: 1, 1: p["b1"], 0: p["b2"]})


def _f43a_build(F, p):
    h = _poly(F, {5: 1, 4: p["a4"], 3: p["a3"], 2: p["a2"], 1: p["a1"]})
    return (1,), _f43a_theta(F, p), h


def _xy_basis(lam_fn):
    def basis(F, p):
        return lam_fn(F, p), [{(0, 0): 1}, {(1, 0): 1}, {(2, 0): 1}, {(0, 1): 1}]
    return basis


def _f43b_build(F, p):
    return (), (F.neg[1],), _poly(F, {5: 1, 2: p["a2"], 1: p["a1"]})


def _f43c_build(F, p):
    return (1,), _poly(F, {3: 1, 2: 1}), _poly(F, {5: 1, 4: 2, 1: p["a1"], 0: p["a2"]})


def _f21_build(F, p):
    return (), _mono(F, p["b"], 2), _poly(F, {5: 1, 4: p["a"], 1: 1})


FAMILIES: dict[str, Family] = {
    "F32": Family(
        "F32", ("a3", "a2", "a0", "b"), ("a3", "a2", "a0", "b"), _no_derive, ("a2",),
        _f32_build, "y^3+y^2+b*y = x^5+a3*x^3+a2*x^2+a0",
        _f32_basis, "s = y-b; 1/s, x/s, x^2/s, 1"),
    "F321": Family(
        "F321", ("b", "c", "d"), ("b", "c", "d"), _no_derive, ("b", "d"),
        _f321_build, "y^3-b*x^3*(y^2+y) = x^5+c*x^3+d*x^2+1",
        _f321_basis, "s = x^3(y-1); x/s, x^2/s, xy/s, (y-1)/s",
        resolved=lambda F, p: X),
    "F43A": Family(
        "F43A", ("b1", "b2", "a1", "a2", "a3", "a4"), ("b1", "a2", "a1"), _f43a_derive, (),
        _f43a_build, "y^3+y^2+theta*y = h, theta = x^3+x^2+b1*x+b2, h = x^5+a4*x^4+a3*x^3+a2*x^2+a1*x",
        _xy_basis(lambda F, p: F.neg[1]), "s = y-theta; 1/s, x/s, x^2/s, y/s"),
    "F43B": Family(
        "F43B", ("a2", "a1"), ("a2", "a1"), _no_derive, (),
        _f43b_build, "y^3-y = x^5+a2*x^2+a1*x",
        _xy_basis(lambda F, p: F.neg[1]), "s = 1; 1, x, x^2, y"),
    "F43C": Family(
        "F43C", ("a1", "a2"), ("a1", "a2"), _no_derive, ("a1",),
        _f43c_build, "y^3+y^2+(x^3+x^2)*y = x^5+2*x^4+a1*x+a2",
        _xy_basis(lambda F, p: 2), "s = y+2x^3+2x^2; 1/s, x/s, x^2/s, y/s"),
    "F21": Family(
        "F21", ("a", "b"), ("a", "b"), _no_derive, ("b",),
        _f21_build, "y^3+b*x^2*y = x^5+a*x^4+x",
        _xy_basis(lambda F, p: p["b"]), "s = x^2; 1/s, x/s, x^2/s, y/s"),
}
FAMILY_NAMES = tuple(FAMILIES) + ("CUSTOM",)


# ---------------------------------------------------------------------------
# parameter parsing
# ---------------------------------------------------------------------------
_TERM = re.compile(r"^([+-]?)(\d*)(?:\*?(t)(?:\^(\d+))?)?$")


def parse_element(F: FieldSpec, value) -> int:
    """Accepts encoded FieldElement, int (prime field), coefficient list or a
    polynomial string in the field generator t such as ``2t+1``."""
    if isinstance(value, FieldElement):
        if value.field != F:
            raise ConstraintViolation("parameter from a different field")
        return value.v
    if isinstance(value, bool):
        raise ConstraintViolation("boolean parameter")
    if isinstance(value, int):
        return value % F.p
    if isinstance(value, (list, tuple)):
        coeffs = [int(c) % F.p for c in value]
        if len(coeffs) > F.k and any(coeffs[F.k:]):
            raise ConstraintViolation(f"coefficient list {value} too long for GF({F.label()})")
        return F.encode(coeffs[: F.k])
    text = str(value).replace(" ", "")
    if not text:
        raise ConstraintViolation("empty parameter")
    acc = 0
    for tok in re.findall(r"[+-]?[^+-]+", text):
        m = _TERM.match(tok)
        if not m:
            raise ConstraintViolation(f"cannot parse field element {value!r}")
        sign, coef, t, e = m.groups()
        c = int(coef) if coef else 1
        if not t:
            term = c % F.p
        else:
            term = F.mul(c % F.p, F.power(F.t.v, int(e) if e else 1))
        if sign == "-":
            term = F.neg[term]
        acc = F.add(acc, term)
    return acc


def _complete(fam: Family, F: FieldSpec, raw: Mapping[str, int]) -> dict[str, int]:
    unknown = set(raw) - set(fam.names)
    if unknown:
        raise ConstraintViolation(f"{fam.name}: unknown parameters {sorted(unknown)}")
    missing = [n for n in fam.free if n not in raw]
    if missing:
        raise ConstraintViolation(f"{fam.name}: missing parameters {missing}")
    params = dict(raw)
    for name, val in fam.derive(F, params).items():
        if name in params and params[name] != val:
            raise ConstraintViolation(f"{fam.name}: {name} violates the family constraint")
        params[name] = val
    missing = [n for n in fam.names if n not in params]
    if missing:
        raise ConstraintViolation(f"{fam.name}: missing parameters {missing}")
    for name in fam.nonzero:
        if params[name] == 0:
            raise ConstraintViolation(f"{fam.name}: {name} must be nonzero")
    return params


# ---------------------------------------------------------------------------
# the curve
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class CurveModel:
    field: FieldSpec
    a2: PolyT
    a1: PolyT
    h: PolyT
    family: str = "CUSTOM"
    params: tuple = ()      # ((name, encoded value), ...) in declaration order
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def param_dict(self) -> dict[str, int]:
        return dict(self.params)

    @property
    def fam(self) -> Family | None:
        return FAMILIES.get(self.family)

    def poly(self, which: str) -> Poly:
        return Poly._raw(self.field, getattr(self, which))

    def key(self) -> tuple:
        return (self.field.key(), self.a2, self.a1, self.h)

    def __eq__(self, o) -> bool:
        return isinstance(o, CurveModel) and o.key() == self.key()

    def __hash__(self) -> int:
        return hash(self.key())

    # bivariate form of F and its partials: dict {(i, j): c}
    @property
    def F_dict(self) -> dict[tuple[int, int], int]:
        F = self.field
        d: dict[tuple[int, int], int] = {(0, 3): 1}
        for j, a in ((2, self.a2), (1, self.a1)):
            for i, c in enumerate(a):
                if c:
                    d[(i, j)] = c
        for i, c in enumerate(self.h):
            if c:
                d[(i, 0)] = F.add(d.get((i, 0), 0), F.neg[c])
        return {k: v for k, v in d.items() if v}

    def to_json(self) -> dict:
        F = self.field
        out = {"family": self.family, "field": F.to_json()}
        if self.family == "CUSTOM":
            out["params"] = {
                "a2x": [F.decode(c) for c in self.a2],
                "a1x": [F.decode(c) for c in self.a1],
                "hx": [F.decode(c) for c in self.h],
            }
        else:
            out["params"] = {n: F.decode(v) for n, v in self.params}
        return out

    def equation(self) -> str:
        fam = self.fam
        return fam.equation if fam else "y^3+a2(x)*y^2+a1(x)*y = h(x)"


def make_family(name: str, params: Mapping[str, object], F: FieldSpec, check: bool = True) -> CurveModel:
    """Instantiate a named family.  Derived coefficients (F43A) may be omitted.

    Raises ConstraintViolation or SingularCurve.
    """
    if name == "CUSTOM":
        return make_custom(F, params["a2x"], params["a1x"], params["hx"], check=check)
    if name not in FAMILIES:
        raise ConstraintViolation(f"unknown family {name!r}")
    fam = FAMILIES[name]
    raw = {k: parse_element(F, v) for k, v in params.items()}
    full = _complete(fam, F, raw)
    a2, a1, h = fam.build(F, full)
    curve = CurveModel(F, a2, a1, h, name, tuple((n, full[n]) for n in fam.names))
    if check:
        rep = smoothness_check(curve)
        if not rep.smooth:
            raise SingularCurve(f"{name} {rep.describe()}", rep.witness)
    return curve


def make_custom(F: FieldSpec, a2x, a1x, hx, check: bool = True) -> CurveModel:
    def conv(v) -> PolyT:
        if isinstance(v, Poly):
            return v.c
        return ptrim([parse_element(F, c) for c in v])
    curve = CurveModel(F, conv(a2x), conv(a1x), conv(hx), "CUSTOM", ())
    if check:
        if not _is_35_shape(curve):
            raise ConstraintViolation(
                "CUSTOM curves must have deg h = 5, deg a2 <= 1 and deg a1 <= 3")
        rep = smoothness_check(curve)
        if not rep.smooth:
            raise SingularCurve(f"CUSTOM {rep.describe()}", rep.witness)
    return curve


def _is_35_shape(c: CurveModel) -> bool:
    return len(c.h) == 6 and len(c.a2) <= 2 and len(c.a1) <= 4


def curve_from_json(d: Mapping) -> CurveModel:
    F = FieldSpec.from_json(d["field"])
    return make_family(d["family"], d["params"], F)


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------
@dataclass
class SmoothnessReport:
    smooth: bool
    witness: dict
    resolved: list

    def describe(self) -> str:
        if self.smooth:
            return "smooth"
        return f"singular: {self.witness}"


def _strip(F: FieldSpec, g: PolyT, a: PolyT) -> PolyT:
    """Remove from g every root shared with a."""
    if not a:
        return (1,)
    while len(g) > 1:
        c = pgcd(F, g, a)
        if len(c) <= 1:
            break
        g = pexactdiv(F, g, c)
    return g


def smoothness_check(curve: CurveModel) -> SmoothnessReport:
    """Decide whether the affine model is smooth away from resolved fibres.

    Uses y0 = a1/a2 on F_y = 0 when a2(x0) != 0, and the cube-root point
    y0^3 = h(x0) on fibres where a2 and a1 both vanish.
    """
    F = curve.field
    a2, a1, h = curve.a2, curve.a1, curve.h
    da2, da1, dh = pderiv(F, a2), pderiv(F, a1), pderiv(F, h)
    fam = curve.fam
    skip = fam.resolved(F, curve.param_dict) if fam and fam.resolved else (1,)
    resolved = [] if skip == (1,) else [{"x_poly": [F.decode(c) for c in skip]}]
    # fibres with a2(x0) != 0
    if a2:
        P = psub(F, padd(F, pcube(F, a1), pscale(F, pmul(F, pmul(F, a1, a1), pmul(F, a2, a2)), 2)),
                 pmul(F, h, pmul(F, a2, pmul(F, a2, a2))))
        Q = psub(F, padd(F, pmul(F, da2, pmul(F, a1, a1)), pmul(F, da1, pmul(F, a1, a2))),
                 pmul(F, dh, pmul(F, a2, a2)))
        g = pgcd(F, P, Q)
        if not g:
            return SmoothnessReport(False, {"reason": "F is not squarefree"}, resolved)
        g = _strip(F, _strip(F, g, a2), skip)
        if len(g) > 1:
            return SmoothnessReport(False, _witness(curve, g, True), resolved)
    # fibres with a2(x0) = a1(x0) = 0
    g0 = pgcd(F, a2, a1)
    if not g0:
        g0 = ()  # both zero: every fibre has F_y = 0
        cond = psub(F, padd(F, pmul(F, pcube(F, da2), pmul(F, h, h)), pmul(F, pcube(F, da1), h)), pcube(F, dh))
        return SmoothnessReport(False, {"reason": "F_y vanishes identically", "x_poly": list(cond)}, resolved)
    if len(g0) > 1:
        cond = psub(F, padd(F, pmul(F, pcube(F, da2), pmul(F, h, h)), pmul(F, pcube(F, da1), h)), pcube(F, dh))
        g = _strip(F, pgcd(F, g0, cond), skip)
        if len(g) > 1:
            return SmoothnessReport(False, _witness(curve, g, False), resolved)
    return SmoothnessReport(True, {}, resolved)


def _witness(curve: CurveModel, g: PolyT, generic: bool) -> dict:
    F = curve.field
    w: dict = {"x_poly": [F.decode(c) for c in pmonic(F, g)]}
    for x0 in range(F.q):
        if peval(F, g, x0) == 0:
            a2v, a1v = peval(F, curve.a2, x0), peval(F, curve.a1, x0)
            if a2v:
                y0 = F.div(a1v, a2v)
            else:
                y0 = F.ifrob[peval(F, curve.h, x0)] if F.k else 0
            w.update(x=F.decode(x0), y=F.decode(y0))
            break
    return w


# ---------------------------------------------------------------------------
# function field arithmetic
# ---------------------------------------------------------------------------
YPoly = tuple  # (N0, N1, N2)


class FFElement:
    """(N0 + N1 y + N2 y^2)/D on a fixed curve."""

    __slots__ = ("curve", "num", "den")

    def __init__(self, curve: CurveModel, num: Sequence[PolyT], den: PolyT = (1,), normalized: bool = False):
        F = curve.field
        num = tuple(ptrim(n) for n in num) + ((),) * (3 - len(num))
        if not normalized:
            if not den:
                raise NonInvertible("zero denominator")
            g = den
            for n in num:
                if len(g) == 1:
                    break
                g = pgcd(F, g, n)
            if len(g) > 1:
                num = tuple(pexactdiv(F, n, g) for n in num)
                den = pexactdiv(F, den, g)
            if den[-1] != 1:
                il = F.invt[den[-1]]
                num = tuple(pscale(F, n, il) for n in num)
                den = pscale(F, den, il)
            if not any(num):
                den = (1,)
        self.curve, self.num, self.den = curve, num, den

    # -- views --------------------------------------------------------
    @property
    def c0(self) -> RatFunc:
        return RatFunc(self.curve.field, self.num[0], self.den)

    @property
    def c1(self) -> RatFunc:
        return RatFunc(self.curve.field, self.num[1], self.den)

    @property
    def c2(self) -> RatFunc:
        return RatFunc(self.curve.field, self.num[2], self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __eq__(self, o) -> bool:
        return isinstance(o, FFElement) and o.curve == self.curve and o.num == self.num and o.den == self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"FFElement({[list(n) for n in self.num]} / {list(self.den)})"

    def __add__(self, o: "FFElement") -> "FFElement":
        return ff_add(self, o)

    def __sub__(self, o: "FFElement") -> "FFElement":
        return ff_add(self, ff_neg(o))

    def __neg__(self) -> "FFElement":
        return ff_neg(self)

    def __mul__(self, o: "FFElement") -> "FFElement":
        return ff_mul(self, o)


def ff_const(curve: CurveModel, num: Sequence[PolyT], den: PolyT = (1,)) -> FFElement:
    return FFElement(curve, num, den)


def ff_from_dict(curve: CurveModel, d: Mapping[tuple[int, int], int]) -> FFElement:
    """Element from a bivariate polynomial {(i, j): c}; j may exceed 2."""
    F = curve.field
    lists: list[list[int]] = []
    for (i, j), c in d.items():
        while len(lists) <= j:
            lists.append([])
        row = lists[j]
        if len(row) <= i:
            row.extend([0] * (i + 1 - len(row)))
        row[i] = F.addt[row[i]][c]
    return FFElement(curve, _reduce_y(curve, [ptrim(r) for r in lists]))


def ff_x(curve: CurveModel) -> FFElement:
    return FFElement(curve, ((0, 1), (), ()), normalized=True)


def ff_y(curve: CurveModel) -> FFElement:
    return FFElement(curve, ((), (1,), ()), normalized=True)


def _pre(curve: CurveModel) -> dict:
    c = curve._cache
    if "r3" not in c:
        F = curve.field
        a2, a1, h = curve.a2, curve.a1, curve.h
        r3 = (h, pneg(F, a1), pneg(F, a2))
        # y^4 = y * y^3
        r4 = _reduce_y(curve, [(), h, pneg(F, a1), pneg(F, a2)], r3=r3)
        c["r3"], c["r4"] = r3, r4
    return c


def _reduce_y(curve: CurveModel, coeffs: Sequence[PolyT], r3=None, r4=None) -> YPoly:
    F = curve.field
    coeffs = list(coeffs)
    if len(coeffs) <= 3:
        return tuple(coeffs) + ((),) * (3 - len(coeffs))
    pre = None if r3 is not None else _pre(curve)
    if r3 is None:
        r3 = pre["r3"]
    # generic reduction from the top
    while len(coeffs) > 3:
        top = coeffs.pop()
        d = len(coeffs) - 3   # top was y^(d+3) = y^d * y^3
        if not top:
            continue
        for j in range(3):
            if r3[j]:
                coeffs[d + j] = padd(F, coeffs[d + j], pmul(F, top, r3[j]))
    return tuple(coeffs)


def _ymul(curve: CurveModel, a: YPoly, b: YPoly) -> YPoly:
    F = curve.field
    out: list[PolyT] = [()] * 5
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = padd(F, out[i + j], pmul(F, x, y))
    return _reduce_y(curve, out)


def ff_add(u: FFElement, v: FFElement) -> FFElement:
    F = u.curve.field
    if u.den == v.den:
        return FFElement(u.curve, [padd(F, a, b) for a, b in zip(u.num, v.num)], u.den)
    return FFElement(
        u.curve,
        [padd(F, pmul(F, a, v.den), pmul(F, b, u.den)) for a, b in zip(u.num, v.num)],
        pmul(F, u.den, v.den),
    )


def ff_neg(u: FFElement) -> FFElement:
    F = u.curve.field
    return FFElement(u.curve, [pneg(F, a) for a in u.num], u.den, normalized=True)


def ff_scale(u: FFElement, c: int) -> FFElement:
    F = u.curve.field
    if c == 0:
        return FFElement(u.curve, ((), (), ()), normalized=True)
    return FFElement(u.curve, [pscale(F, a, c) for a in u.num], u.den, normalized=True)


def ff_mul(u: FFElement, v: FFElement) -> FFElement:
    F = u.curve.field
    return FFElement(u.curve, _ymul(u.curve, u.num, v.num), pmul(F, u.den, v.den))


def _det3(F: FieldSpec, M) -> PolyT:
    def m(a, b):
        return pmul(F, a, b)
    t0 = m(M[0][0], psub(F, m(M[1][1], M[2][2]), m(M[1][2], M[2][1])))
    t1 = m(M[0][1], psub(F, m(M[1][0], M[2][2]), m(M[1][2], M[2][0])))
    t2 = m(M[0][2], psub(F, m(M[1][0], M[2][1]), m(M[1][1], M[2][0])))
    return padd(F, psub(F, t0, t1), t2)


def _adj3(F: FieldSpec, M) -> list[list[PolyT]]:
    """Adjugate: adj[i][j] = (-1)^(i+j) minor(j, i)."""
    adj = [[()] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            c = [k for k in range(3) if k != i]
            minor = psub(F, pmul(F, M[r[0]][c[0]], M[r[1]][c[1]]), pmul(F, M[r[0]][c[1]], M[r[1]][c[0]]))
            adj[i][j] = minor if (i + j) % 2 == 0 else pneg(F, minor)
    return adj


def ff_inv(u: FFElement) -> FFElement:
    """Inverse via the 3x3 multiplication matrix of u over k(x)."""
    curve, F = u.curve, u.curve.field
    cols = [_ymul(curve, u.num, e) for e in (((1,), (), ()), ((), (1,), ()), ((), (), (1,)))]
    mat = [[cols[c][r] for c in range(3)] for r in range(3)]
    d = _det3(F, mat)
    if not d:
        raise NonInvertible("element is not invertible")
    adj = _adj3(F, mat)
    return FFElement(curve, [pmul(F, u.den, adj[r][0]) for r in range(3)], d)


def ff_div(u: FFElement, v: FFElement) -> FFElement:
    return ff_mul(u, ff_inv(v))


def _frob_data(curve: CurveModel) -> dict:
    c = curve._cache
    if "m" not in c:
        F = curve.field
        r3 = _pre(curve)["r3"]
        m0 = ((1,), (), ())
        m2 = _ymul(curve, r3, r3)
        M = [list(m0), list(r3), list(m2)]
        c["m"] = (m0, r3, m2)
        c["mdet"] = _det3(F, M)
        c["madj"] = _adj3(F, M)
    return c


def ff_cube(u: FFElement) -> FFElement:
    curve, F = u.curve, u.curve.field
    m = _frob_data(curve)["m"]
    out: list[PolyT] = [(), (), ()]
    for b, n in enumerate(u.num):
        if n:
            cn = pcube(F, n)
            for j in range(3):
                if m[b][j]:
                    out[j] = padd(F, out[j], pmul(F, cn, m[b][j]))
    return FFElement(curve, out, pcube(F, u.den))


def p_power_decompose(u: FFElement, check: bool = True) -> tuple[FFElement, FFElement, FFElement]:
    """Return (f0, f1, f2) with u = f0^3 + f1^3 x + f2^3 x^2."""
    curve, F = u.curve, u.curve.field
    fd = _frob_data(curve)
    det, adj = fd["mdet"], fd["madj"]
    if not det:
        raise DecompositionError("y is inseparable over k(x)")
    D = u.den
    D2 = pmul(F, D, D)
    Nt = [pmul(F, n, D2) for n in u.num]
    det2 = pmul(F, det, det)
    E = pmul(F, det, D)
    parts: list[list[PolyT]] = [[(), (), ()] for _ in range(3)]   # parts[i][b]
    for b in range(3):
        nb: PolyT = ()
        for j in range(3):
            if Nt[j] and adj[j][b]:
                nb = padd(F, nb, pmul(F, Nt[j], adj[j][b]))
        if not nb:
            continue
        for i, Q in enumerate(psplit3(pmul(F, nb, det2))):
            parts[i][b] = pifrob(F, Q)
    fs = tuple(FFElement(curve, parts[i], E) for i in range(3))
    if check:
        x = ff_x(curve)
        back = ff_add(ff_add(ff_cube(fs[0]), ff_mul(ff_cube(fs[1]), x)), ff_mul(ff_cube(fs[2]), ff_mul(x, x)))
        if back != u:
            raise DecompositionError("re-cubing check failed")
    return fs  # type: ignore[return-value]


def _dyx(curve: CurveModel) -> FFElement:
    """dy/dx = -F_x / F_y."""
    c = curve._cache
    if "dyx" not in c:
        F = curve.field
        Fx = (pneg(F, pderiv(F, curve.h)), pderiv(F, curve.a1), pderiv(F, curve.a2))
        c["dyx"] = ff_neg(ff_div(FFElement(curve, Fx), F_y(curve)))
    return c["dyx"]


def F_y(curve: CurveModel) -> FFElement:
    F = curve.field
    return FFElement(curve, (curve.a1, pscale(F, curve.a2, 2), ()))


def inv_F_y(curve: CurveModel) -> FFElement:
    c = curve._cache
    if "ify" not in c:
        c["ify"] = ff_inv(F_y(curve))
    return c["ify"]


def ff_derivative(u: FFElement) -> FFElement:
    """du/dx on the curve."""
    curve, F = u.curve, u.curve.field
    N, D = u.num, u.den
    Nx = tuple(pderiv(F, n) for n in N)
    Ny = (N[1], pscale(F, N[2], 2), ())
    dD = pderiv(F, D)
    # (Nx + Ny y') / D - N D'/D^2
    part = ff_add(FFElement(curve, Nx, D), ff_mul(FFElement(curve, Ny, D), _dyx(curve)))
    if dD:
        part = ff_add(part, ff_neg(FFElement(curve, [pmul(F, n, dD) for n in N], pmul(F, D, D))))
    return part


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Differential:
    """g dx."""

    g: FFElement

    @property
    def curve(self) -> CurveModel:
        return self.g.curve

    def __add__(self, o: "Differential") -> "Differential":
        return Differential(ff_add(self.g, o.g))

    def __sub__(self, o: "Differential") -> "Differential":
        return Differential(ff_add(self.g, ff_neg(o.g)))

    def __neg__(self) -> "Differential":
        return Differential(ff_neg(self.g))

    def scale(self, c: int) -> "Differential":
        return Differential(ff_scale(self.g, c))

    def times(self, f: FFElement) -> "Differential":
        return Differential(ff_mul(f, self.g))

    def is_zero(self) -> bool:
        return self.g.is_zero()


def d(u: FFElement) -> Differential:
    return Differential(ff_derivative(u))


def cartier(omega: Differential, check: bool = True) -> Differential:
    """C(f dx) = f_2 dx where f = f_0^3 + f_1^3 x + f_2^3 x^2."""
    return Differential(p_power_decompose(omega.g, check=check)[2])


def differential_from_numerator(curve: CurveModel, G: Mapping[tuple[int, int], int]) -> Differential:
    """G(x, y) dx / F_y."""
    return Differential(ff_mul(ff_from_dict(curve, G), inv_F_y(curve)))


def basis_numerators(curve: CurveModel) -> list[dict]:
    """Numerators G_i with omega_i = G_i dx / F_y for the default holomorphic basis."""
    fam = curve.fam
    F = curve.field
    if fam is None:
        if not _is_35_shape(curve):
            raise CurveError("CUSTOM curves need an explicit holomorphic basis")
        return [{(0, 0): 1}, {(1, 0): 1}, {(2, 0): 1}, {(0, 1): 1}]
    lam, gs = fam.basis(F, curve.param_dict)
    row = F.mult[lam]
    return [{k: row[v] for k, v in g.items()} for g in gs]


def holomorphic_basis(curve: CurveModel) -> list[Differential]:
    return [differential_from_numerator(curve, G) for G in basis_numerators(curve)]


def basis_description(curve: CurveModel) -> str:
    fam = curve.fam
    return fam.basis_label if fam else "1, x, x^2, y over F_y"


def coordinates(omegas: Sequence[Differential], target: Differential) -> list[int] | None:
    """Constants c with target = sum c_i omegas[i], or None."""
    curve = target.curve
    F = curve.field
    elems = [w.g for w in omegas] + [target.g]
    # clear denominators with the lcm
    L: PolyT = (1,)
    for e in elems:
        L = pexactdiv(F, pmul(F, L, e.den), pgcd(F, L, e.den))
    cols = []
    for e in elems:
        mult = pexactdiv(F, L, e.den)
        cols.append([pmul(F, n, mult) for n in e.num])
    length = max((len(n) for col in cols for n in col), default=0)
    rows = []
    for j in range(3):
        for i in range(length):
            rows.append([col[j][i] if i < len(col[j]) else 0 for col in cols])
    A = [r[:-1] for r in rows]
    b = [r[-1] for r in rows]
    if not A:
        return [0] * len(omegas)
    return linalg.solve(F, A, b)
