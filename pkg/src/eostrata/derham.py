"""First de Rham cohomology of the genus-4 families with F, V and the pairing.

Every supported curve has a function T with a single, totally ramified pole
Q and an integral basis 1, b1, b2 of O(X - Q) over k[T] whose pole orders at
Q are distinct mod 3.  The regular differentials on X - Q form a free
k[T]-module on g0, g1, g2 whose valuations at Q are again distinct mod 3.
Then every Laurent monomial T^m b_j (or T^m g_l) has its own valuation at Q,
so the Cech pieces for the cover U1 = X - Q, U2 = X - {T = 0} are read off
monomial by monomial:

* H^1(O) is spanned by the monomials with m < 0 that still have a pole at Q,
* H^0(Omega) by the monomials with m >= 0 and no pole at Q,
* H^1(Omega) by the single monomial with m < 0 and a pole at Q.

For the (3,5) plane families T = x, b_j = y^j and g_l = y^l dx/F_y.  The
F321 family is singular over x = 0 and is handled on the model
T = 1/x, w = (y-1) T^3, z = (w^2 - b w)/T^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from . import linalg
from .cartier import CartierMatrix, bmul, cartier_manin_matrix, nabla_raw, rank_profile
from .curve import (
    CurveModel,
    Differential,
    FFElement,
    basis_numerators,
    ff_add,
    ff_from_dict,
    ff_inv,
    ff_mul,
    ff_scale,
    inv_F_y,
    _is_35_shape,
)
from .eo import (
    EOError,
    EOType,
    ModuleInvalid,
    SymplecticSemilinearModule,
    all_final_types,
    final_type,
    validate_module,
    young_diagram,
)
from .ff import FieldSpec, pderiv, pmul

Laurent = dict  # {exponent: coefficient}
Triple = tuple   # three Laurent polynomials


class BasisConstructionFailed(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Laurent helpers
# ---------------------------------------------------------------------------
def _ladd_into(F: FieldSpec, out: dict, a: Mapping, scale: int = 1, shift: int = 0) -> None:
    add = F.addt
    row = F.mult[scale]
    for k, v in a.items():
        k += shift
        s = add[out.get(k, 0)][row[v]]
        if s:
            out[k] = s
        else:
            out.pop(k, None)


def _lmul(F: FieldSpec, a: Mapping, b: Mapping) -> dict:
    add, mul = F.addt, F.mult
    out: dict = {}
    for i, x in a.items():
        row = mul[x]
        for j, y in b.items():
            k = i + j
            out[k] = add[out.get(k, 0)][row[y]]
    return {k: v for k, v in out.items() if v}


def _lmul_into(F: FieldSpec, out: dict, a: Mapping, b: Mapping) -> None:
    add, mul = F.addt, F.mult
    for i, x in a.items():
        row = mul[x]
        for j, y in b.items():
            k = i + j
            s = add[out.get(k, 0)][row[y]]
            if s:
                out[k] = s
            else:
                out.pop(k, None)


def _lderiv(F: FieldSpec, a: Mapping) -> dict:
    mul = F.mult
    out = {}
    for k, v in a.items():
        c = mul[k % F.p][v]
        if c:
            out[k - 1] = c
    return out


def _lpoly(a: Sequence[int]) -> dict:
    return {i: c for i, c in enumerate(a) if c}


def _lscale(F: FieldSpec, a: Mapping, c: int) -> dict:
    if c == 0:
        return {}
    row = F.mult[c]
    return {k: row[v] for k, v in a.items()}


def _zero() -> Triple:
    return ({}, {}, {})


# ---------------------------------------------------------------------------
# the model
# ---------------------------------------------------------------------------
@dataclass
class TrigonalModel:
    F: FieldSpec
    n: tuple                 # pole orders of 1, b1, b2 at Q
    e: tuple                 # valuations of g0, g1, g2 at Q
    mul: list                # mul[i][j] = b_i b_j in b-coordinates
    act: list                # act[j][l] = b_j g_l in g-coordinates
    dT: Triple
    dbeta: list              # d b_j in g-coordinates
    cart: list               # cart[r][l]: raw C(T^r g_l), coefficients before sigma^-1
    rho: int                 # residue at Q of the H^1(Omega) monomial
    hol: list                # chosen holomorphic basis in g-coordinates
    name: str = ""
    _memo: dict = dc_field(default_factory=dict, repr=False)

    # -- arithmetic -----------------------------------------------------
    def fmul(self, a: Triple, b: Triple) -> Triple:
        F = self.F
        out = ({}, {}, {})
        for i in range(3):
            if not a[i]:
                continue
            for j in range(3):
                if not b[j]:
                    continue
                ab = _lmul(F, a[i], b[j])
                for k in range(3):
                    if self.mul[i][j][k]:
                        _lmul_into(F, out[k], ab, self.mul[i][j][k])
        return out

    def fdiff(self, f: Triple, w: Triple) -> Triple:
        F = self.F
        out = ({}, {}, {})
        for j in range(3):
            if not f[j]:
                continue
            for l in range(3):
                if not w[l]:
                    continue
                ab = _lmul(F, f[j], w[l])
                for k in range(3):
                    if self.act[j][l][k]:
                        _lmul_into(F, out[k], ab, self.act[j][l][k])
        return out

    def _bdT(self) -> list:
        if "bdT" not in self._memo:
            self._memo["bdT"] = [self.fdiff(tuple({0: 1} if i == j else {} for i in range(3)), self.dT)
                                 for j in range(3)]
        return self._memo["bdT"]

    def d(self, f: Triple) -> Triple:
        F = self.F
        bdT = self._bdT()
        out = ({}, {}, {})
        for j in range(3):
            if not f[j]:
                continue
            fj = _lderiv(F, f[j])
            for k in range(3):
                if fj and bdT[j][k]:
                    _lmul_into(F, out[k], fj, bdT[j][k])
                if self.dbeta[j][k]:
                    _lmul_into(F, out[k], f[j], self.dbeta[j][k])
        return out

    def cartier(self, w: Triple) -> Triple:
        F = self.F
        raw = ({}, {}, {})
        for l in range(3):
            for m, c in w[l].items():
                q, r = divmod(m, 3)
                for k in range(3):
                    src = self.cart[r][l][k]
                    if src:
                        _ladd_into(F, raw[k], src, c, q)
        ir = F.ifrob
        return tuple({k: ir[v] for k, v in part.items()} for part in raw)

    def cube(self, f: Triple) -> Triple:
        F = self.F
        if "cubes" not in self._memo:
            cubes = []
            for j in range(3):
                b = tuple({0: 1} if i == j else {} for i in range(3))
                cubes.append(self.fmul(b, self.fmul(b, b)))
            self._memo["cubes"] = cubes
        fr = F.frob
        out = ({}, {}, {})
        for j in range(3):
            if f[j]:
                fj3 = {3 * k: fr[v] for k, v in f[j].items()}
                for k in range(3):
                    if self._memo["cubes"][j][k]:
                        _lmul_into(F, out[k], fj3, self._memo["cubes"][j][k])
        return out

    # -- monomial bookkeeping --------------------------------------------
    def h1o_monomials(self) -> list[tuple[int, int]]:
        out = []
        for j in range(3):
            m = -1
            while -3 * m - self.n[j] < 0:
                out.append((m, j))
                m -= 1
        return out

    def h0_monomials(self) -> list[tuple[int, int]]:
        out = []
        for l in range(3):
            m = 0
            while -3 * m + self.e[l] >= 0:
                out.append((m, l))
                m += 1
        return out

    def h1omega_monomial(self) -> tuple[int, int]:
        cands = []
        for l in range(3):
            m = -1
            while -3 * m + self.e[l] < 0:
                cands.append((m, l))
                m -= 1
        if len(cands) != 1:
            raise BasisConstructionFailed(f"H^1(Omega) monomials {cands}")
        return cands[0]

    @property
    def genus(self) -> int:
        return len(self.h0_monomials())

    def trace(self, w: Triple) -> int:
        m, l = self.h1omega_monomial()
        return self.F.mul(self.rho, w[l].get(m, 0))


# ---------------------------------------------------------------------------
# model builders
# ---------------------------------------------------------------------------
def _ypoly_triple(polys: Sequence[Sequence[int]]) -> Triple:
    return tuple(_lpoly(p) for p in polys) + ({},) * (3 - len(polys))


def _plane_model(curve: CurveModel) -> TrigonalModel:
    from .curve import _reduce_y, _pre
    F = curve.field
    a2, a1, h = curve.a2, curve.a1, curve.h

    def red(k: int) -> Triple:
        coeffs = [()] * k + [(1,)]
        return _ypoly_triple(_reduce_y(curve, coeffs))

    ypow = [red(k) for k in range(5)]
    mul = [[ypow[i + j] for j in range(3)] for i in range(3)]
    dT = _ypoly_triple((a1, tuple(F.mult[2][c] for c in a2)))
    # dy = -F_x dx/F_y, F_x = a2' y^2 + a1' y - h'
    dh, da1, da2 = pderiv(F, h), pderiv(F, a1), pderiv(F, a2)
    dy = _ypoly_triple((dh, tuple(F.neg[c] for c in da1), tuple(F.neg[c] for c in da2)))
    dy2 = ({}, {}, {})
    for k in range(3):
        if dy[k]:
            for t in range(3):
                if ypow[k + 1][t]:
                    _lmul_into(F, dy2[t], _lscale(F, dy[k], 2), ypow[k + 1][t])
    dbeta = [_zero(), dy, dy2]
    Fd = curve.F_dict
    F2 = bmul(F, Fd, Fd)
    cart = []
    for r in range(3):
        row = []
        for l in range(3):
            raw = nabla_raw(F, bmul(F, F2, {(r, l): 1}))
            trip = ({}, {}, {})
            for (k, j), c in raw.items():
                trip[j][k] = c
            row.append(trip)
        cart.append(row)
    hol = []
    for G in basis_numerators(curve):
        trip = ({}, {}, {})
        for (i, j), c in G.items():
            trip[j][i] = F.add(trip[j].get(i, 0), c)
        hol.append(tuple({k: v for k, v in p.items() if v} for p in trip))
    return TrigonalModel(F, (0, 5, 10), (6, 1, -4), mul, mul, dT, dbeta, cart, F.neg[1], hol, "plane")


def _f321_model(curve: CurveModel) -> TrigonalModel:
    F = curve.field
    p = curve.param_dict
    b, c, dd = p["b"], p["c"], p["d"]
    add, mul, neg = F.add, F.mul, F.neg
    ib = F.inv(b)
    c2b = add(c, mul(2, b))
    S = {k: v for k, v in {0: 1, 2: c2b, 3: dd}.items() if v}
    T2S = {k + 2: v for k, v in S.items()}
    one, zero = {0: 1}, {}

    def tri(*xs):
        return tuple(dict(x) for x in xs)

    mul_t = [
        [tri(one, zero, zero), tri(zero, one, zero), tri(zero, zero, one)],
        [tri(zero, one, zero), tri(zero, {0: b}, {2: 1}), tri(T2S, zero, zero)],
        [tri(zero, zero, one), tri(T2S, zero, zero), tri(_lscale(F, S, neg[b]), S, zero)],
    ]
    act = [
        [tri(one, zero, zero), tri(zero, one, zero), tri(zero, zero, one)],
        [tri(zero, one, zero), tri(zero, {0: b}, T2S), tri({2: 1}, zero, zero)],
        [tri(zero, zero, S), tri(T2S, zero, zero), tri({0: neg[b]}, one, zero)],
    ]
    dT = tri(one, zero, zero)
    u = {k: v for k, v in {1: ib, 4: mul(dd, ib)}.items() if v}          # T (1 + d T^3) / b
    dw = tri(zero, zero, u)
    dz = tri(_lscale(F, u, 2), zero, {1: c2b} if c2b else {})
    dbeta = [_zero(), dw, dz]
    # Cartier constants from the plane relation G(T, w) = w^3 - b w^2 - R(T)
    # with gamma_l = h_l dT/G_w, G_w = b w
    R = {k: v for k, v in {4: 1, 6: c2b, 7: dd}.items() if v}
    Gd = {(0, 3): 1, (0, 2): neg[b]}
    for k, v in R.items():
        Gd[(k, 0)] = neg[v]
    G2 = bmul(F, Gd, Gd)
    hs = [{(0, 1): b}, {(0, 2): b}, {(2, 0): b}]
    w_pows = [tri(one, zero, zero), tri(zero, one, zero), tri(zero, {0: b}, {2: 1})]
    model = TrigonalModel(F, (0, 7, 8), (3, -4, 4), mul_t, act, dT, dbeta, [], neg[b], [], "f321")
    cart = []
    for r in range(3):
        row = []
        for l in range(3):
            raw = nabla_raw(F, bmul(F, G2, {(r + i, j): v for (i, j), v in hs[l].items()}))
            rooted = ({}, {}, {})
            for (k, j), v in raw.items():
                v = F.ifrob[v]
                if j == 0:
                    _ladd_into(F, rooted[2], {k - 2: v}, ib)
                else:
                    # T^k w^(j-1) dT / b
                    wp = w_pows[j - 1]
                    f = tuple(_lmul(F, {k: v}, wp[i]) for i in range(3))
                    part = model.fdiff(f, tri(one, zero, zero))
                    for t in range(3):
                        _ladd_into(F, rooted[t], part[t], ib)
            row.append(tuple({k: F.frob[v] for k, v in part.items()} for part in rooted))
        cart.append(row)
    model.cart = cart
    # holomorphic basis: x/s, x^2/s, xy/s, (y-1)/s with s = x^3 (y - 1)
    m1 = neg[1]
    model.hol = [tri(zero, zero, {1: m1}), tri(zero, zero, {0: m1}), tri({0: m1}, zero, {1: m1}),
                 tri({1: m1}, zero, zero)]
    return model


def trigonal_model(curve: CurveModel) -> TrigonalModel:
    c = curve._cache
    if "model" not in c:
        if curve.family == "F321":
            c["model"] = _f321_model(curve)
        elif _is_35_shape(curve):
            c["model"] = _plane_model(curve)
        else:
            raise BasisConstructionFailed("no integral model for this curve")
    return c["model"]


# ---------------------------------------------------------------------------
# Cech classes
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class CechClass:
    """(t, omega1, omega2) with dt = omega1 - omega2, in model coordinates."""

    t: Triple
    w1: Triple
    w2: Triple


class DeRham:
    """H^1_dR of a curve with basis, V, F and the pairing."""

    def __init__(self, curve: CurveModel):
        self.curve = curve
        self.model = M = trigonal_model(curve)
        F = self.F = curve.field
        self.h0 = M.h0_monomials()
        self.h1o = M.h1o_monomials()
        g = self.g = len(self.h0)
        if len(self.h1o) != g or len(M.hol) != g:
            raise BasisConstructionFailed("H^0(Omega) and H^1(O) dimensions disagree")
        self.h1w = M.h1omega_monomial()
        # change of basis from monomials to the chosen holomorphic basis
        B = [[w[l].get(m, 0) for w in M.hol] for (m, l) in self.h0]
        for w in M.hol:
            if any(k < 0 or (k, l) not in self.h0 for l in range(3) for k in w[l]):
                raise BasisConstructionFailed("basis differential is not holomorphic")
        self.Binv = linalg.inverse(F, B)
        classes = [CechClass(_zero(), w, w) for w in M.hol]
        for (m, j) in self.h1o:
            t = tuple({m: 1} if i == j else {} for i in range(3))
            dt = M.d(t)
            w1 = tuple({k: v for k, v in part.items() if k >= 0} for part in dt)
            w2 = tuple({k: F.neg[v] for k, v in part.items() if k < 0} for part in dt)
            if self._has_pole(w2):
                raise BasisConstructionFailed("dt has a residue part at Q")
            classes.append(CechClass(t, w1, w2))
        self.classes = classes

    # -- splitting ---------------------------------------------------------
    def _has_pole(self, w: Triple) -> bool:
        e = self.model.e
        return any(-3 * m + e[l] < 0 for l in range(3) for m in w[l])

    def hol_coords(self, w: Triple) -> list[int]:
        F = self.F
        vec = []
        idx = set(self.h0)
        for l in range(3):
            for m in w[l]:
                if (m, l) not in idx:
                    raise BasisConstructionFailed("differential is not holomorphic")
        vec = [w[l].get(m, 0) for (m, l) in self.h0]
        return linalg.matvec(F, self.Binv, vec)

    def normal_form(self, t: Triple, w1: Triple, w2: Triple | None = None) -> list[int]:
        """Coordinates of the class of (t, w1, w2) in the basis (hol, t-classes)."""
        F, M = self.F, self.model
        n = M.n
        f1 = ({}, {}, {})
        cs = [0] * self.g
        index = {mj: i for i, mj in enumerate(self.h1o)}
        for j in range(3):
            for m, v in t[j].items():
                if m >= 0:
                    f1[j][m] = v
                elif -3 * m - n[j] < 0:
                    cs[index[(m, j)]] = v
        eta = {0: dict(w1[0]), 1: dict(w1[1]), 2: dict(w1[2])}
        for c, xi in zip(cs, self.classes[self.g:]):
            if c:
                for k in range(3):
                    _ladd_into(F, eta[k], xi.w1[k], F.neg[c])
        df1 = M.d(f1)
        for k in range(3):
            _ladd_into(F, eta[k], df1[k], F.neg[1])
        return self.hol_coords((eta[0], eta[1], eta[2])) + cs

    # -- operators ---------------------------------------------------------
    def vmat(self) -> list[list[int]]:
        M = self.model
        cols = [self.normal_form(_zero(), M.cartier(c.w1)) for c in self.classes]
        return linalg.transpose(cols)

    def fmat(self) -> list[list[int]]:
        M = self.model
        cols = [self.normal_form(M.cube(c.t), _zero()) for c in self.classes]
        return linalg.transpose(cols)

    def pairing(self, a: CechClass, b: CechClass) -> int:
        F, M = self.F, self.model
        x = M.fdiff(a.t, b.w2)
        y = M.fdiff(b.t, a.w1)
        return F.sub(M.trace(x), M.trace(y))

    def gram(self) -> list[list[int]]:
        cl = self.classes
        return [[self.pairing(a, b) for b in cl] for a in cl]

    def cartier_matrix(self) -> list[list[int]]:
        M = self.model
        cols = [self.hol_coords(M.cartier(w)) for w in M.hol]
        return linalg.transpose(cols)


def derham(curve: CurveModel) -> DeRham:
    c = curve._cache
    if "derham" not in c:
        c["derham"] = DeRham(curve)
    return c["derham"]


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------
def h1dr_basis(curve: CurveModel) -> list[CechClass]:
    return list(derham(curve).classes)


def verschiebung_matrix(curve: CurveModel) -> list[list[int]]:
    return derham(curve).vmat()


def frobenius_matrix(curve: CurveModel) -> list[list[int]]:
    return derham(curve).fmat()


def gram_matrix(curve: CurveModel) -> list[list[int]]:
    G = derham(curve).gram()
    if linalg.rank(curve.field, G) != len(G):
        raise BasisConstructionFailed("pairing is degenerate on the chosen classes")
    return G


def derham_pairing(curve: CurveModel, a: CechClass, b: CechClass) -> int:
    return derham(curve).pairing(a, b)


def curve_module(curve: CurveModel, validate: bool = True) -> SymplecticSemilinearModule:
    """The validated module (H^1_dR, pairing, V) of the curve."""
    D = derham(curve)
    F = curve.field
    G = gram_matrix(curve)
    V = D.vmat()
    Fm = D.fmat()
    mod = SymplecticSemilinearModule(F, tuple(map(tuple, G)), tuple(map(tuple, V)),
                                     f"{curve.family}", tuple(map(tuple, Fm)))
    if validate:
        cm = cartier_manin_matrix(curve)
        g = D.g
        if [r[:g] for r in V[:g]] != cm.rows() or any(any(r[:g]) for r in V[g:]):
            raise ModuleInvalid("V on H^0 disagrees with the Cartier-Manin matrix")
        rep = validate_module(mod)
        if not rep.ok:
            raise ModuleInvalid(f"curve module failed {rep.failures()} {rep.notes}", rep)
    return mod


@dataclass
class EOReport:
    curve: CurveModel
    cartier: CartierMatrix
    profile: tuple
    mu: EOType | None
    method: str
    ambiguous: bool
    candidates: list = dc_field(default_factory=list)
    v: tuple | None = None
    error: str | None = None

    @property
    def a(self) -> int:
        return self.cartier.g - self.profile[0]

    @property
    def f(self) -> int:
        return self.profile[-1]

    def to_json(self) -> dict:
        out = self.curve.to_json()
        out.update(
            cartier_matrix=self.cartier.to_json(),
            rank_profile=list(self.profile),
            a=self.a,
            f=self.f,
            mu=self.mu.to_json() if self.mu is not None else None,
            method=self.method,
            ambiguous=self.ambiguous,
        )
        if self.ambiguous:
            out["candidates"] = [m.to_json() for m in self.candidates]
        if self.error:
            out["fallback_reason"] = self.error
        return out


def eo_type_from_cartier_only(cm: CartierMatrix) -> tuple[list[EOType], bool]:
    """All final types whose iterates v^n(g) match the rank profile."""
    profile = rank_profile(cm)
    g = cm.g
    cands = []
    for v in all_final_types(g):
        r, seen = g, []
        for _ in range(g):
            r = v[r]
            seen.append(r)
        if tuple(seen) == profile:
            cands.append(young_diagram(v, g))
    cands.sort(key=lambda m: (m.codim, m.parts), reverse=True)
    return cands, len(cands) != 1


def eo_type_of_curve(curve: CurveModel, method: str = "full") -> EOReport:
    """Classify via the full module; fall back to the Cartier-only path on failure."""
    cm = cartier_manin_matrix(curve)
    profile = rank_profile(cm)
    if method == "full":
        try:
            mod = curve_module(curve)
            v = final_type(mod)
            return EOReport(curve, cm, profile, young_diagram(v, mod.g), "full", False, v=v)
        except (EOError, BasisConstructionFailed, ArithmeticError) as exc:
            err = f"{type(exc).__name__}: {exc}"
    else:
        err = None
    cands, amb = eo_type_from_cartier_only(cm)
    return EOReport(curve, cm, profile, None if amb else cands[0], "cartier-only", amb, cands if amb else [],
                    error=err)


# ---------------------------------------------------------------------------
# views in the function field k(x, y)
# ---------------------------------------------------------------------------
def _model_basis_elements(curve: CurveModel) -> tuple[FFElement, list[FFElement], list[Differential]]:
    """T, (1, b1, b2) and (g0, g1, g2) as elements of k(x)[y]/F."""
    c = curve._cache
    if "views" in c:
        return c["views"]
    F = curve.field
    x = ff_from_dict(curve, {(1, 0): 1})
    if curve.family == "F321":
        b = curve.param_dict["b"]
        T = ff_inv(x)
        T3 = ff_mul(T, ff_mul(T, T))
        w = ff_mul(ff_from_dict(curve, {(0, 1): 1, (0, 0): F.neg[1]}), T3)
        z = ff_mul(ff_add(ff_mul(w, w), ff_scale(w, F.neg[b])), ff_mul(x, x))
        dT = ff_scale(ff_mul(T, T), F.neg[1])       # dT = -dx/x^2
        S = ff_from_dict(curve, {})
        p = curve.param_dict
        c2b = F.add(p["c"], F.mul(2, b))
        T2 = ff_mul(T, T)
        S = ff_add(ff_add(ff_from_dict(curve, {(0, 0): 1}), ff_scale(T2, c2b)), ff_scale(ff_mul(T2, T), p["d"]))
        gam = [Differential(dT), Differential(ff_mul(w, dT)), Differential(ff_mul(ff_mul(z, ff_inv(S)), dT))]
        out = (T, [ff_from_dict(curve, {(0, 0): 1}), w, z], gam)
    else:
        ify = inv_F_y(curve)
        y = ff_from_dict(curve, {(0, 1): 1})
        out = (x, [ff_from_dict(curve, {(0, 0): 1}), y, ff_mul(y, y)],
               [Differential(ify), Differential(ff_mul(y, ify)), Differential(ff_mul(ff_mul(y, y), ify))])
    c["views"] = out
    return out


def _laurent_to_ff(curve: CurveModel, T: FFElement, a: Mapping) -> FFElement:
    F = curve.field
    acc = ff_from_dict(curve, {})
    if not a:
        return acc
    Tinv = ff_inv(T)
    for k, v in a.items():
        base, e = (T, k) if k >= 0 else (Tinv, -k)
        term = ff_from_dict(curve, {(0, 0): v})
        for _ in range(e):
            term = ff_mul(term, base)
        acc = ff_add(acc, term)
    return acc


def function_view(curve: CurveModel, f: Triple) -> FFElement:
    T, betas, _ = _model_basis_elements(curve)
    acc = ff_from_dict(curve, {})
    for j in range(3):
        if f[j]:
            acc = ff_add(acc, ff_mul(_laurent_to_ff(curve, T, f[j]), betas[j]))
    return acc


def differential_view(curve: CurveModel, w: Triple) -> Differential:
    T, _, gam = _model_basis_elements(curve)
    acc = ff_from_dict(curve, {})
    for l in range(3):
        if w[l]:
            acc = ff_add(acc, ff_mul(_laurent_to_ff(curve, T, w[l]), gam[l].g))
    return Differential(acc)


def class_view(curve: CurveModel, c: CechClass) -> tuple[FFElement, Differential, Differential]:
    return function_view(curve, c.t), differential_view(curve, c.w1), differential_view(curve, c.w2)
