"""Arithmetic in finite fields F_q, q = p^m.

Elements are plain integers in ``[0, q)``: the coefficient vector of the
residue polynomial packed base ``p`` (coefficient of ``x^i`` is digit ``i``).
This canonical index is also the on-disk representation of a symbol.

Default moduli
--------------
``make_field(p, m)`` picks the monic irreducible polynomial of degree ``m``
whose lower coefficients have the smallest canonical index.  That rule yields

========  ==========================
(p, m)    modulus
========  ==========================
(p, 1)    x
(2, 2)    x^2 + x + 1
(2, 3)    x^3 + x + 1
(2, 4)    x^4 + x + 1
(2, 8)    x^8 + x^4 + x^3 + x + 1  (the AES polynomial)
(3, 2)    x^2 + 1
========  ==========================

and is stable, so serialized codewords are portable.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Sequence

import numpy as np

MAX_ORDER = 1 << 20


class FieldMismatchError(ValueError):
    """Raised when elements of different fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists low -> high -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    r = _trim(list(a))
    b = _trim(list(b))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(r) - 1 >= db and r:
        coef = r[-1] * inv_lead % p
        shift = len(r) - 1 - db
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * bi) % p
        _trim(r)
    return r


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    mod = _trim(list(modulus))
    deg = len(mod) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(mod, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for idx in range(p**m):
        low = [(idx // p**i) % p for i in range(m)]
        if low[0] == 0:
            continue
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """Finite field of order ``p**m`` defined by an irreducible ``modulus``.

    ``modulus`` is a coefficient tuple (low to high, monic, length ``m + 1``).
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int = dc_field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", self.p**self.m)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={self.modulus})"

    # --- representation helpers -------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.m)]

    def from_digits(self, ds: Sequence[int]) -> int:
        p = self.p
        return sum(d * p**i for i, d in enumerate(ds))

    def element(self, value: int) -> "Fq":
        return Fq(self, self.check(value))

    def elements(self) -> Iterator["Fq"]:
        for v in range(self.q):
            yield Fq(self, v)

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of F_{self.q}")
        return a

    # --- slow polynomial multiplication, used only to build tables ---------

    def _slow_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_digits(_poly_mod(prod, self.modulus, p) + [0] * m)

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    @cached_property
    def _tables(self) -> tuple[list[int], list[int], int]:
        q = self.q
        if q == 2:
            return [1, 1], [0, 0], 1
        order = q - 1
        factors = _prime_factors(order)
        if self.m == 1:
            candidates = range(2, q)
        else:
            # linear polynomials are cheap to multiply by; try them first
            linear = list(range(self.p, self.p * self.p))
            candidates = linear + [g for g in range(2, q) if g >= self.p * self.p]
        gen = None
        for g in candidates:
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                gen = g
                break
        assert gen is not None
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        step = self._step_fn(gen)
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = step(x)
        exp[order:] = exp[:order]
        return exp, log, gen

    def _step_fn(self, g: int):
        p, m, q = self.p, self.m, self.q
        if m == 1:
            return lambda a: a * g % p
        if p == 2 and g in (2, 3):
            poly = self.from_digits(self.modulus[:m]) | q

            def step2(a: int) -> int:
                b = a << 1
                if b & q:
                    b ^= poly
                return b ^ a if g == 3 else b

            return step2
        if p <= g < p * p:
            c0, c1 = g % p, g // p
            red = [(-x) % p for x in self.modulus[:m]]
            weights = [p**i for i in range(m)]

            def step(a: int) -> int:
                # a * (c1 x + c0): shift up one degree, reduce x^m, scale, add
                ds = [(a // w) % p for w in weights]
                lead = ds[-1]
                out = [0] + ds[:-1]
                if lead:
                    out = [o + lead * r for o, r in zip(out, red)]
                out = [(c1 * o + c0 * d) % p for o, d in zip(out, ds)]
                return sum(o * w for o, w in zip(out, weights))

            return step
        return lambda a: self._slow_mul(a, g)

    @property
    def generator(self) -> int:
        return self._tables[2]

    # --- arithmetic on canonical indices ---------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        p = self.p
        out, scale = 0, 1
        while a:
            out += (-(a % p) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp, log, _ = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        exp, log, _ = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        exp, log, _ = self._tables
        return exp[log[a] - log[b] + self.q - 1]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        exp, log, _ = self._tables
        return exp[(log[a] * e) % (self.q - 1)]


    # --- vectorised arithmetic on int64 arrays ------------------------------

    @cached_property
    def _np_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        exp, log, _ = self._tables
        exp_np = np.array(exp + exp[:2], dtype=np.int64)
        log_np = np.array(log, dtype=np.int64)
        weights = np.array([self.p**i for i in range(self.m)], dtype=np.int64)
        return exp_np, log_np, weights

    def _vdigits(self, a: np.ndarray) -> np.ndarray:
        w = self._np_tables[2]
        return (a[..., None] // w) % self.p

    def _vpack(self, ds: np.ndarray) -> np.ndarray:
        return (ds % self.p) @ self._np_tables[2]

    def vadd(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self._vpack(self._vdigits(a) + self._vdigits(b))

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return self._vpack(-self._vdigits(a))

    def vsub(self, a, b) -> np.ndarray:
        if self.p == 2:
            return np.asarray(a, dtype=np.int64) ^ np.asarray(b, dtype=np.int64)
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        exp, log, _ = self._np_tables
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        exp, log, _ = self._np_tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def vsum(self, a, axis: int = 0) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        ax = axis if axis >= 0 else axis - 1
        return self._vpack(self._vdigits(a).sum(axis=ax))

    def vprod(self, a, axis: int = 0) -> np.ndarray:
        """Product along ``axis`` (zero if any factor is zero)."""
        a = np.asarray(a, dtype=np.int64)
        exp, log, _ = self._np_tables
        logs = (log[a].sum(axis=axis)) % (self.q - 1)
        return np.where(np.any(a == 0, axis=axis), 0, exp[logs])


@lru_cache(maxsize=None)
def _cached_field(p: int, m: int, modulus: tuple[int, ...]) -> FieldSpec:
    return FieldSpec(p, m, modulus)


def make_field(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Return the field of order ``p**m``.

    Raises ``ValueError`` when ``p`` is not prime, ``m < 1``, the order
    exceeds ``2**20``, or a supplied ``modulus`` is not a monic irreducible
    polynomial of degree ``m``.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    if p**m > MAX_ORDER:
        raise ValueError(f"field order {p}^{m} exceeds the 2^20 cap")
    if modulus is None:
        mod = default_modulus(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        if not is_irreducible(mod, p):
            raise ValueError(f"modulus {mod} is reducible over F_{p}")
    return _cached_field(p, m, mod)


@dataclass(frozen=True)
class Fq:
    """A field element bound to its field; arithmetic checks the context."""

    field: FieldSpec
    value: int

    def _other(self, other) -> int:
        if isinstance(other, Fq):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field.check(other)

    def __add__(self, other) -> "Fq":
        return Fq(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other) -> "Fq":
        return Fq(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other) -> "Fq":
        return Fq(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self) -> "Fq":
        return Fq(self.field, self.field.neg(self.value))

    def __mul__(self, other) -> "Fq":
        return Fq(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Fq":
        return Fq(self.field, self.field.div(self.value, self._other(other)))

    def inverse(self) -> "Fq":
        return Fq(self.field, self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Fq({self.value} in F_{self.field.q})"


def _unwrap(f: FieldSpec, a) -> int:
    if isinstance(a, Fq):
        if a.field != f:
            raise FieldMismatchError(f"element of {a.field} used with {f}")
        return a.value
    return f.check(a)


def add(f: FieldSpec, a, b):
    r = f.add(_unwrap(f, a), _unwrap(f, b))
    return Fq(f, r) if isinstance(a, Fq) else r


def mul(f: FieldSpec, a, b):
    r = f.mul(_unwrap(f, a), _unwrap(f, b))
    return Fq(f, r) if isinstance(a, Fq) else r


def inv(f: FieldSpec, a):
    r = f.inv(_unwrap(f, a))
    return Fq(f, r) if isinstance(a, Fq) else r
