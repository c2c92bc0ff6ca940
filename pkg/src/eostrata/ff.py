"""Finite fields GF(p^k), univariate polynomials and rational functions.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
coefficients of the residue class modulo the defining polynomial, so the
prime subfield is embedded as ``0..p-1``.  All arithmetic goes through
precomputed tables, which keeps the inner loops of the curve code cheap.

Polynomials travel internally as tuples of encoded coefficients in
little-endian order with no trailing zeros (``()`` is zero).  The public
:class:`Poly` and :class:`RatFunc` wrap those tuples.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 729

# Conway polynomials for p = 3, little-endian.
_DEFAULT_MODULI = {
    1: (1, 1),
    2: (2, 2, 1),
    3: (1, 2, 0, 1),
    4: (2, 0, 0, 2, 1),
    5: (1, 2, 0, 0, 0, 1),
    6: (2, 2, 1, 0, 2, 0, 1),
}


class FieldError(ValueError):
    pass


class NonInvertible(ZeroDivisionError):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _fp_polymod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def _fp_irreducible(m: Sequence[int], p: int) -> bool:
    # Brute force root-free and factor-free check over small degrees.
    d = len(m) - 1
    if d <= 0 or m[-1] % p == 0:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for n in range(p**e):
            f = [(n // p**i) % p for i in range(e)] + [1]
            if not any(_fp_polymod(list(m), f, p)):
                return False
    return True


class FieldSpec:
    """The field GF(p^k) = GF(p)[t]/(modulus)."""

    def __init__(self, p: int = 3, k: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if p**k > MAX_ORDER:
            raise FieldError(f"GF({p}^{k}) exceeds the supported order {MAX_ORDER}")
        if modulus is None:
            if p != 3 or k not in _DEFAULT_MODULI:
                raise FieldError(f"no default modulus for GF({p}^{k})")
            modulus = _DEFAULT_MODULI[k]
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if not _fp_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p, self.k, self.modulus = p, k, modulus
        self.q = q = p**k
        self._build_tables()

    # -- construction -------------------------------------------------
    def _digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.k)]

    def _undigits(self, ds: Iterable[int]) -> int:
        p = self.p
        return sum((c % p) * p**i for i, c in enumerate(ds))

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._undigits(_fp_polymod([c % self.p for c in prod], self.modulus, self.p))

    def _build_tables(self) -> None:
        p, q = self.p, self.q
        add = [[0] * q for _ in range(q)]
        for a in range(q):
            ra = add[a]
            ah, al = divmod(a, p)
            for b in range(q):
                bh, bl = divmod(b, p)
                ra[b] = add[ah][bh] * p + (al + bl) % p if a >= p or b >= p else (al + bl) % p
        self.neg = [self._undigits([-c for c in self._digits(a)]) for a in range(q)]
        self.addt = add
        self.subt = [[add[a][self.neg[b]] for b in range(q)] for a in range(q)]
        # discrete log tables from a primitive element
        gen = None
        for cand in range(1, q):
            x, order = cand, 1
            while x != 1:
                x = self._slow_mul(x, cand)
                order += 1
            if order == q - 1:
                gen = cand
                break
        assert gen is not None
        exp = [1] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self.generator = gen
        self.exp, self.log = exp, log
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la, row = log[a], mul[a]
            for b in range(1, q):
                row[b] = exp[la + log[b]]
        self.mult = mul
        self.invt = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]
        self.frob = [0] + [exp[(log[a] * p) % (q - 1)] for a in range(1, q)]
        self.ifrob = [0] * q
        for a in range(q):
            self.ifrob[self.frob[a]] = a

    # -- scalar API on encoded ints ------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.addt[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.subt[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise NonInvertible("inverse of zero")
        return self.invt[a]

    def div(self, a: int, b: int) -> int:
        return self.mult[a][self.inv(b)]

    def power(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise NonInvertible("zero to a negative power")
            return 1 if n == 0 else 0
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def frob_power(self, a: int, e: int) -> int:
        """sigma^e(a) for any integer e (negative means inverse Frobenius)."""
        e %= self.k
        for _ in range(e):
            a = self.frob[a]
        return a

    def from_int(self, n: int) -> int:
        return n % self.p

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            raise FieldError(f"too many coefficients for GF({self.p}^{self.k})")
        return self._undigits(coeffs)

    def decode(self, a: int) -> list[int]:
        return self._digits(a)

    # -- public conveniences -------------------------------------------
    def __call__(self, x: int | Sequence[int] | "FieldElement") -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldError("element belongs to another field")
            return x
        if isinstance(x, int):
            return FieldElement(self, x % self.p)
        return FieldElement(self, self.encode(list(x)))

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def random(self, rng: random.Random, nonzero: bool = False) -> int:
        return rng.randrange(1 if nonzero else 0, self.q)

    @property
    def t(self) -> "FieldElement":
        return FieldElement(self, self.p % self.q if self.k > 1 else self.neg[self.modulus[0]])

    def key(self) -> tuple:
        return (self.p, self.k, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def label(self) -> str:
        return f"{self.p}^{self.k}"

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(d: dict) -> "FieldSpec":
        return field(d["p"], d["k"], d.get("modulus"))

    def format(self, a: int) -> list[int]:
        return self._digits(a)

    def to_str(self, a: int) -> str:
        """Polynomial in the generator t, e.g. ``2t^2+t+1``; parseable back."""
        terms = []
        for i, c in reversed(list(enumerate(self._digits(a)))):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) or "0"

    def modulus_str(self) -> str:
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(terms)


@lru_cache(maxsize=None)
def _field_cached(p: int, k: int, modulus: tuple | None) -> FieldSpec:
    return FieldSpec(p, k, modulus)


def field(p: int = 3, k: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Cached constructor; fields are immutable so sharing is safe."""
    return _field_cached(p, k, tuple(modulus) if modulus is not None else None)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"3^k"`` or ``"9"``-style labels."""
    text = text.strip()
    if "^" in text:
        p, k = (int(s) for s in text.split("^"))
    else:
        q = int(text)
        p, k = 3, 0
        while 3**k < q:
            k += 1
        if 3**k != q:
            raise FieldError(f"{q} is not a power of 3")
    return field(p, k)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    v: int

    def _other(self, o) -> int:
        if isinstance(o, FieldElement):
            if o.field != self.field:
                raise FieldError("mixed fields")
            return o.v
        if isinstance(o, int):
            return o % self.field.p
        return NotImplemented

    def __add__(self, o):
        return FieldElement(self.field, self.field.add(self.v, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.field, self.field.sub(self.v, self._other(o)))

    def __rsub__(self, o):
        return FieldElement(self.field, self.field.sub(self._other(o), self.v))

    def __mul__(self, o):
        return FieldElement(self.field, self.field.mul(self.v, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.field, self.field.div(self.v, self._other(o)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg[self.v])

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.power(self.v, n))

    def __bool__(self) -> bool:
        return self.v != 0

    def __eq__(self, o) -> bool:
        if isinstance(o, int):
            return self.v == o % self.field.p and (self.v < self.field.p)
        return isinstance(o, FieldElement) and o.field == self.field and o.v == self.v

    def __hash__(self) -> int:
        return hash((self.field.key(), self.v))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.v))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frob[self.v])

    def inv_frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.ifrob[self.v])

    @property
    def coeffs(self) -> list[int]:
        return self.field.decode(self.v)

    def __repr__(self) -> str:
        return f"FieldElement({self.coeffs})"


# ---------------------------------------------------------------------------
# tuple polynomials
# ---------------------------------------------------------------------------
PolyT = tuple


def ptrim(a: Sequence[int]) -> PolyT:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def padd(F: FieldSpec, a: PolyT, b: PolyT) -> PolyT:
    if len(a) < len(b):
        a, b = b, a
    t = F.addt
    out = list(a)
    for i, c in enumerate(b):
        out[i] = t[out[i]][c]
    return ptrim(out)


def psub(F: FieldSpec, a: PolyT, b: PolyT) -> PolyT:
    return padd(F, a, pneg(F, b))


def pneg(F: FieldSpec, a: PolyT) -> PolyT:
    n = F.neg
    return tuple(n[c] for c in a)


def pscale(F: FieldSpec, a: PolyT, c: int) -> PolyT:
    if c == 0:
        return ()
    row = F.mult[c]
    return tuple(row[x] for x in a)


def pshift(a: PolyT, n: int) -> PolyT:
    return (0,) * n + a if a else ()


def pmul(F: FieldSpec, a: PolyT, b: PolyT) -> PolyT:
    if not a or not b:
        return ()
    if len(a) < len(b):
        a, b = b, a
    add, mul = F.addt, F.mult
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            row = mul[y]
            for i, x in enumerate(a):
                if x:
                    out[i + j] = add[out[i + j]][row[x]]
    return ptrim(out)


def pdivmod(F: FieldSpec, a: PolyT, b: PolyT) -> tuple[PolyT, PolyT]:
    if not b:
        raise NonInvertible("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    add, mul, neg = F.addt, F.mult, F.neg
    r = list(a)
    db = len(b) - 1
    inv_lead = F.invt[b[-1]]
    qt = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = mul[c][inv_lead]
            qt[i - db] = c
            nc = neg[c]
            row = mul[nc]
            for j in range(db + 1):
                if b[j]:
                    r[i - db + j] = add[r[i - db + j]][row[b[j]]]
    return ptrim(qt), ptrim(r[:db])


def pmod(F: FieldSpec, a: PolyT, b: PolyT) -> PolyT:
    return pdivmod(F, a, b)[1]


def pexactdiv(F: FieldSpec, a: PolyT, b: PolyT) -> PolyT:
    qt, r = pdivmod(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return qt


def pmonic(F: FieldSpec, a: PolyT) -> PolyT:
    if not a or a[-1] == 1:
        return a
    return pscale(F, a, F.invt[a[-1]])


def pgcd(F: FieldSpec, a: PolyT, b: PolyT) -> PolyT:
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def peval(F: FieldSpec, a: PolyT, x: int) -> int:
    add, mul = F.addt, F.mult
    acc = 0
    for c in reversed(a):
        acc = add[mul[acc][x]][c]
    return acc


def pderiv(F: FieldSpec, a: PolyT) -> PolyT:
    return ptrim([F.mult[F.from_int(i)][a[i]] for i in range(1, len(a))])


def pfrob(F: FieldSpec, a: PolyT, e: int = 1) -> PolyT:
    """Apply sigma^e to every coefficient."""
    e %= F.k
    if e == 0:
        return a
    out = a
    for _ in range(e):
        fr = F.frob
        out = tuple(fr[c] for c in out)
    return out


def pifrob(F: FieldSpec, a: PolyT) -> PolyT:
    ir = F.ifrob
    return tuple(ir[c] for c in a)


def ppow(F: FieldSpec, a: PolyT, n: int) -> PolyT:
    out: PolyT = (1,)
    base = a
    while n:
        if n & 1:
            out = pmul(F, out, base)
        n >>= 1
        if n:
            base = pmul(F, base, base)
    return out


def pcube(F: FieldSpec, a: PolyT) -> PolyT:
    """a(x)^3 = sigma(a)(x^3) in characteristic 3."""
    if F.p != 3:
        return ppow(F, a, 3)
    out = [0] * (3 * len(a) - 2) if a else []
    fr = F.frob
    for i, c in enumerate(a):
        out[3 * i] = fr[c]
    return ptrim(out)


def psplit3(a: PolyT) -> tuple[PolyT, PolyT, PolyT]:
    """Write a = Q0(x^3) + x Q1(x^3) + x^2 Q2(x^3); return (Q0, Q1, Q2)."""
    return tuple(ptrim(a[i::3]) for i in range(3))  # type: ignore[return-value]


def presultant(F: FieldSpec, a: PolyT, b: PolyT) -> int:
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return F.mul(res, F.power(b[0], da))
        r = pmod(F, a, b)
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2 and F.p != 2:
            res = F.neg[res]
        res = F.mul(res, F.power(b[-1], da - dr))
        a, b = b, r


def proots(F: FieldSpec, a: PolyT) -> list[int]:
    return [x for x in range(F.q) if peval(F, a, x) == 0] if a else list(range(F.q))


# ---------------------------------------------------------------------------
# public wrappers
# ---------------------------------------------------------------------------
class Poly:
    """Univariate polynomial over a FieldSpec (canonical: no trailing zeros)."""

    __slots__ = ("field", "c")

    def __init__(self, F: FieldSpec, coeffs: Iterable[int | FieldElement | Sequence[int]] = ()):
        self.field = F
        out = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                out.append(c.v)
            elif isinstance(c, int):
                out.append(c % F.p if c < 0 or c >= F.q else c)
            else:
                out.append(F.encode(list(c)))
        self.c: PolyT = ptrim(out)

    @classmethod
    def _raw(cls, F: FieldSpec, c: PolyT) -> "Poly":
        obj = cls.__new__(cls)
        obj.field, obj.c = F, c
        return obj

    @classmethod
    def x(cls, F: FieldSpec) -> "Poly":
        return cls._raw(F, (0, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __add__(self, o: "Poly") -> "Poly":
        return Poly._raw(self.field, padd(self.field, self.c, o.c))

    def __sub__(self, o: "Poly") -> "Poly":
        return Poly._raw(self.field, psub(self.field, self.c, o.c))

    def __mul__(self, o: "Poly") -> "Poly":
        return Poly._raw(self.field, pmul(self.field, self.c, o.c))

    def __neg__(self) -> "Poly":
        return Poly._raw(self.field, pneg(self.field, self.c))

    def __divmod__(self, o: "Poly") -> tuple["Poly", "Poly"]:
        qt, r = pdivmod(self.field, self.c, o.c)
        return Poly._raw(self.field, qt), Poly._raw(self.field, r)

    def __eq__(self, o) -> bool:
        return isinstance(o, Poly) and o.field == self.field and o.c == self.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __bool__(self) -> bool:
        return bool(self.c)

    def gcd(self, o: "Poly") -> "Poly":
        return Poly._raw(self.field, pgcd(self.field, self.c, o.c))

    def __call__(self, x: FieldElement | int) -> FieldElement:
        xv = x.v if isinstance(x, FieldElement) else x % self.field.p
        return FieldElement(self.field, peval(self.field, self.c, xv))

    def derivative(self) -> "Poly":
        return Poly._raw(self.field, pderiv(self.field, self.c))

    def resultant(self, o: "Poly") -> FieldElement:
        return FieldElement(self.field, presultant(self.field, self.c, o.c))

    def __repr__(self) -> str:
        return f"Poly({[self.field.decode(c) if self.field.k > 1 else c for c in self.c]})"


def gcd(a: Poly, b: Poly) -> Poly:
    return a.gcd(b)


def resultant(a: Poly, b: Poly) -> FieldElement:
    return a.resultant(b)


class RatFunc:
    """num/den with monic den and gcd(num, den) = 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, F: FieldSpec, num: PolyT, den: PolyT = (1,)):
        if not den:
            raise NonInvertible("zero denominator")
        g = pgcd(F, num, den)
        if g != (1,):
            num, den = pexactdiv(F, num, g), pexactdiv(F, den, g)
        lead = den[-1]
        if lead != 1:
            il = F.invt[lead]
            num, den = pscale(F, num, il), pscale(F, den, il)
        self.field, self.num, self.den = F, num, den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p.field, p.c)

    def __add__(self, o: "RatFunc") -> "RatFunc":
        F = self.field
        return RatFunc(F, padd(F, pmul(F, self.num, o.den), pmul(F, o.num, self.den)), pmul(F, self.den, o.den))

    def __sub__(self, o: "RatFunc") -> "RatFunc":
        return self + (-o)

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.field, pneg(self.field, self.num), self.den)

    def __mul__(self, o: "RatFunc") -> "RatFunc":
        F = self.field
        return RatFunc(F, pmul(F, self.num, o.num), pmul(F, self.den, o.den))

    def __truediv__(self, o: "RatFunc") -> "RatFunc":
        if not o.num:
            raise NonInvertible("division by zero rational function")
        F = self.field
        return RatFunc(F, pmul(F, self.num, o.den), pmul(F, self.den, o.num))

    def __eq__(self, o) -> bool:
        return isinstance(o, RatFunc) and o.field == self.field and (o.num, o.den) == (self.num, self.den)

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __repr__(self) -> str:
        return f"RatFunc({list(self.num)}/{list(self.den)})"
