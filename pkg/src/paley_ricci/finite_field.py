"""Finite fields GF(p^n) backed by exponent / discrete-log tables.

Elements are plain integers in ``[0, q)``. The integer ``i`` stands for the
polynomial ``a_0 + a_1 x + ... + a_{n-1} x^{n-1}`` (mod the field modulus)
whose coefficients are the base-``p`` digits of ``i``, least significant
first. All binary operations accept scalars or numpy integer arrays and
broadcast like numpy ufuncs.

Construction is deterministic: the modulus is the lexicographically smallest
monic irreducible polynomial (compared on ``(c_0, ..., c_{n-1})``) and the
primitive element ``theta`` is the smallest index of multiplicative order
``q - 1``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import (
    BadK,
    CacheInvalid,
    CompositeP,
    PaleyError,
    PreconditionViolated,
    SizeExceeded,
    ZeroArgument,
    ZeroInverse,
)

__all__ = [
    "DEFAULT_SIZE_CAP",
    "FieldParams",
    "FieldElement",
    "FieldStructure",
    "KPowerSubgroup",
    "build_field",
    "is_prime",
    "factorize",
    "divisors",
    "is_irreducible",
    "kth_power_subgroup",
    "is_kth_power",
    "prime_subfield_in_kpowers",
    "corollary_kn_check",
    "theta_k_subfield_degree",
    "load_field_cache",
    "save_field_cache",
]

DEFAULT_SIZE_CAP = 10**6


# --- integer helpers ---------------------------------------------------------

def is_prime(m: int) -> bool:
    """Deterministic trial-division primality test."""
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def factorize(m: int) -> dict[int, int]:
    """Prime factorization of ``m >= 1`` by trial division."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1 if f == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def divisors(m: int) -> list[int]:
    """All positive divisors of ``m``, ascending."""
    divs = [1]
    for prime, mult in factorize(m).items():
        divs = [d * prime**e for d in divs for e in range(mult + 1)]
    return sorted(divs)


# --- polynomials over GF(p), little-endian coefficient tuples ---------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, f, p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    r = _poly_trim([c % p for c in a])
    df = len(f) - 1
    while len(r) - 1 >= df:
        lead = r[-1]
        shift = len(r) - 1 - df
        for i, c in enumerate(f):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _poly_trim(r)
    return r


def _poly_mulmod(a, b, f, p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_rem(prod, f, p)


def is_irreducible(f, p: int) -> bool:
    """Irreducibility of monic ``f`` over GF(p) by trial division.

    Every monic polynomial of degree ``1 .. deg(f) // 2`` is tried as a divisor.
    """
    f = tuple(int(c) % p for c in f)
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        raise ValueError("expected a monic polynomial of degree >= 1")
    if n == 1:
        return True
    if f[0] == 0:
        return False
    for deg in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not _poly_rem(f, tail + (1,), p):
                return False
    return True


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    for coeffs in itertools.product(range(p), repeat=n):
        f = coeffs + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- field -------------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    p: int
    n: int
    q: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise CompositeP(f"p={self.p} is not prime")
        if self.n < 1:
            raise PaleyError(f"n={self.n} must be a positive integer")
        if self.q != self.p**self.n:
            raise PaleyError(f"q={self.q} differs from p**n={self.p**self.n}")


class FieldElement(NamedTuple):
    index: int
    coeffs: tuple[int, ...]


class FieldStructure:
    """GF(p^n) with a fixed modulus, primitive element and log tables.

    Treat instances as immutable; the tables are read-only numpy arrays so a
    structure can be shared between threads or pickled to worker processes.

    Attributes
    ----------
    params : FieldParams
    modulus : tuple of int
        Monic irreducible ``(c_0, ..., c_{n-1}, 1)``.
    theta : int
        Index of the primitive element.
    exp : ndarray, shape (q - 1,)
        ``exp[e]`` is the index of ``theta**e``.
    dlog : ndarray, shape (q,)
        Inverse of ``exp`` on nonzero indices; ``dlog[0] == -1``.
    digits : ndarray, shape (q, n)
        Base-p digits (polynomial coefficients) of every index.
    """

    def __init__(self, params: FieldParams, modulus, theta: int, exp, digits):
        self.params = params
        self.modulus = tuple(int(c) for c in modulus)
        self.theta = int(theta)
        self.exp = exp
        self.digits = digits
        self.place = params.p ** np.arange(params.n, dtype=np.int64)
        dlog = np.full(params.q, -1, dtype=np.int64)
        dlog[exp] = np.arange(params.q - 1, dtype=np.int64)
        self.dlog = dlog
        for arr in (self.exp, self.digits, self.place, self.dlog):
            arr.setflags(write=False)

    # shorthands
    @property
    def p(self) -> int:
        return self.params.p

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def q(self) -> int:
        return self.params.q

    def __repr__(self):
        return f"FieldStructure(p={self.p}, n={self.n}, modulus={self.modulus}, theta={self.theta})"

    def element(self, index: int) -> FieldElement:
        return FieldElement(int(index), tuple(int(c) for c in self.digits[index]))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.n - len(coeffs))
        if len(coeffs) != self.n or any(not 0 <= c < self.p for c in coeffs):
            raise PaleyError(f"bad coefficient vector {coeffs!r}")
        return int(np.dot(coeffs, self.place))

    def _compose(self, digits):
        out = digits @ self.place
        return int(out) if np.ndim(out) == 0 else out

    def _as_index(self, x):
        if isinstance(x, FieldElement):
            return x.index
        return x

    # -- additive structure
    def add(self, x, y):
        x, y = self._as_index(x), self._as_index(y)
        if self.n == 1:
            out = (np.asarray(x) + np.asarray(y)) % self.p
        else:
            return self._compose((self.digits[x] + self.digits[y]) % self.p)
        return int(out) if np.ndim(out) == 0 else out

    def neg(self, x):
        x = self._as_index(x)
        if self.n == 1:
            out = (-np.asarray(x)) % self.p
            return int(out) if np.ndim(out) == 0 else out
        return self._compose((-self.digits[x]) % self.p)

    def sub(self, x, y):
        x, y = self._as_index(x), self._as_index(y)
        if self.n == 1:
            out = (np.asarray(x) - np.asarray(y)) % self.p
            return int(out) if np.ndim(out) == 0 else out
        return self._compose((self.digits[x] - self.digits[y]) % self.p)

    def scale(self, c, x):
        """Multiply ``x`` by the prime-field scalar ``c`` (an int mod p)."""
        x = self._as_index(x)
        c = np.asarray(c) % self.p
        if self.n == 1:
            out = (c * np.asarray(x)) % self.p
            return int(out) if np.ndim(out) == 0 else out
        return self._compose((c[..., None] * self.digits[x]) % self.p)

    # -- multiplicative structure (log tables)
    def mul(self, x, y):
        x, y = np.asarray(self._as_index(x)), np.asarray(self._as_index(y))
        e = (self.dlog[x] + self.dlog[y]) % (self.q - 1)
        out = np.where((x == 0) | (y == 0), 0, self.exp[e])
        return int(out) if out.ndim == 0 else out

    def inv(self, x):
        x = np.asarray(self._as_index(x))
        if np.any(x == 0):
            raise ZeroInverse("0 has no multiplicative inverse")
        out = self.exp[(-self.dlog[x]) % (self.q - 1)]
        return int(out) if out.ndim == 0 else out

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, e: int):
        x = np.asarray(self._as_index(x))
        e = int(e)
        if e < 0:
            return self.pow(self.inv(x), -e)
        if e == 0:
            out = np.ones_like(x)
        else:
            out = np.where(x == 0, 0, self.exp[(self.dlog[x] * (e % (self.q - 1))) % (self.q - 1)])
        return int(out) if out.ndim == 0 else out

    # -- multiplication by polynomial arithmetic (independent of the tables)
    def mul_poly(self, x: int, y: int) -> int:
        """Multiply two scalar elements by schoolbook polynomial arithmetic."""
        prod = _poly_mulmod(list(self.digits[x]), list(self.digits[y]), self.modulus, self.p)
        return self.from_coeffs(prod)

    def pow_poly(self, x: int, e: int) -> int:
        result, base = 1, int(x)
        while e:
            if e & 1:
                result = self.mul_poly(result, base)
            base = self.mul_poly(base, base)
            e >>= 1
        return result

    def order(self, x: int) -> int:
        if x == 0:
            raise ZeroArgument("0 has no multiplicative order")
        return (self.q - 1) // np.gcd(int(self.dlog[x]), self.q - 1)

    def log(self, x: int) -> int:
        if x == 0:
            raise ZeroArgument("discrete log of 0 is undefined")
        return int(self.dlog[x])

    def evaluate(self, poly, x: int) -> int:
        """Evaluate a polynomial with prime-field coefficients at ``x`` (Horner)."""
        acc = 0
        for c in reversed(tuple(poly)):
            acc = self.add(self.mul(acc, x), int(c) % self.p)
        return acc

    # -- theta-basis coordinates
    @cached_property
    def theta_coords(self) -> np.ndarray:
        """Coordinates of every element in the basis 1, theta, ..., theta^(n-1).

        Row ``i`` holds ``(a_0, ..., a_{n-1})`` with
        ``i = a_0 + a_1 theta + ... + a_{n-1} theta^(n-1)``.
        """
        basis = self.digits[self.exp[: self.n]].T  # column j = theta^j in x-basis
        inv = _matinv_mod(basis, self.p)
        out = (self.digits @ inv.T) % self.p
        out.setflags(write=False)
        return out

    def from_theta_coords(self, coords) -> int:
        acc = 0
        for j, c in enumerate(coords):
            acc = self.add(acc, self.scale(c, int(self.exp[j])))
        return acc

    # -- subfields
    def subfield_elements(self, a: int) -> np.ndarray:
        """Sorted indices of the subfield GF(p^a): all x with x**(p**a) == x."""
        if a < 1 or self.n % a:
            raise PaleyError(f"a={a} does not divide n={self.n}")
        xs = np.arange(self.q)
        return xs[self.pow(xs, self.p**a) == xs]

    def embed_subfield(self, sub: "FieldStructure") -> np.ndarray:
        """Field embedding GF(p^a) -> self as an index lookup array.

        The subfield's polynomial generator ``x`` is sent to the smallest-index
        root of the subfield's modulus inside ``self``; every other element
        follows by linearity, so the map is a ring homomorphism.
        """
        if sub.p != self.p or self.n % sub.n:
            raise PaleyError(f"GF({sub.q}) is not a subfield of GF({self.q})")
        candidates = self.subfield_elements(sub.n)
        root = next(int(r) for r in candidates if self.evaluate(sub.modulus, int(r)) == 0)
        powers = [self.pow(root, j) for j in range(sub.n)]
        acc = np.zeros(sub.q, dtype=np.int64)
        for j, rj in enumerate(powers):
            acc = self.add(acc, self.scale(sub.digits[:, j], np.full(sub.q, rj)))
        return np.asarray(acc, dtype=np.int64)


def _matinv_mod(m: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square integer matrix over GF(p) by Gauss-Jordan."""
    size = m.shape[0]
    a = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(size, dtype=np.int64)], axis=1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r, col]), None)
        if pivot is None:
            raise PaleyError("matrix is singular mod p")
        a[[col, pivot]] = a[[pivot, col]]
        a[col] = (a[col] * pow(int(a[col, col]), -1, p)) % p
        for r in range(size):
            if r != col and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[col]) % p
    return a[:, size:]


def _is_primitive(field_poly, p: int, n: int, cand: int, prime_factors) -> bool:
    q = p**n
    coeffs = [(cand // p**i) % p for i in range(n)]

    def power(e):
        result, base = [1], _poly_trim(list(coeffs))
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, field_poly, p)
            base = _poly_mulmod(base, base, field_poly, p)
            e >>= 1
        return result

    if not _poly_trim(list(coeffs)):
        return False
    if power(q - 1) != [1]:
        return False
    return all(power((q - 1) // r) != [1] for r in prime_factors)


def _make_tables(p: int, n: int, modulus, theta: int):
    q = p**n
    idx = np.arange(q, dtype=np.int64)
    place = p ** np.arange(n, dtype=np.int64)
    digits = (idx[:, None] // place[None, :]) % p
    # multiplication-by-theta as an F_p-linear map on coefficient vectors
    mat = np.zeros((n, n), dtype=np.int64)
    theta_digits = [(theta // p**i) % p for i in range(n)]
    for j in range(n):
        col = _poly_mulmod([0] * j + [1], _poly_trim(list(theta_digits)), modulus, p)
        mat[: len(col), j] = col
    times_theta = ((digits @ mat.T) % p) @ place
    exp = np.empty(q - 1, dtype=np.int64)
    cur = 1
    tt = times_theta.tolist()
    for e in range(q - 1):
        exp[e] = cur
        cur = tt[cur]
    if cur != 1 or len(set(exp.tolist())) != q - 1:
        raise CacheInvalid(f"theta={theta} is not primitive for modulus {modulus}")
    return exp, digits


def build_field(p: int, n: int = 1, *, size_cap: int = DEFAULT_SIZE_CAP, cache=None) -> FieldStructure:
    """Construct GF(p^n) deterministically.

    Parameters
    ----------
    p, n : int
        Characteristic (prime) and extension degree (``n >= 1``).
    size_cap : int
        Refuse fields with more than ``size_cap`` elements.
    cache : path-like, optional
        Plain-text cache written by :func:`save_field_cache`. A hit is
        re-validated (irreducibility and primitivity) before use.
    """
    p, n = int(p), int(n)
    if not is_prime(p):
        raise CompositeP(f"p={p} is not prime")
    if n < 1:
        raise PaleyError(f"n={n} must be a positive integer")
    q = p**n
    if q > size_cap:
        raise SizeExceeded(f"q={q} exceeds the size cap {size_cap}")
    params = FieldParams(p, n, q)
    factors = sorted(factorize(q - 1))

    entry = load_field_cache(cache).get((p, n)) if cache is not None else None
    if entry is not None:
        modulus, theta = entry
        if len(modulus) != n + 1 or not is_irreducible(modulus, p):
            raise CacheInvalid(f"cached modulus for ({p}, {n}) is not irreducible")
        if not 0 < theta < q or not _is_primitive(modulus, p, n, theta, factors):
            raise CacheInvalid(f"cached theta for ({p}, {n}) is not primitive")
    else:
        modulus = _smallest_irreducible(p, n)
        theta = next(c for c in range(1, q) if _is_primitive(modulus, p, n, c, factors))
    exp, digits = _make_tables(p, n, modulus, theta)
    return FieldStructure(params, modulus, theta, exp, digits)


_CACHE_LINE = re.compile(r"^p=(\d+)\s+n=(\d+)\s+modulus=([\d,]+)\s+theta=(\d+)$")


def load_field_cache(path) -> dict[tuple[int, int], tuple[tuple[int, ...], int]]:
    """Read a field cache file.

    One entry per line, ``p=<p> n=<n> modulus=<c_0,...,c_n> theta=<index>``;
    blank lines and ``#`` comments are ignored. A missing file is an empty cache.
    """
    path = Path(path)
    if not path.exists():
        return {}
    out = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _CACHE_LINE.match(line)
        if m is None:
            raise CacheInvalid(f"{path}:{lineno}: malformed cache line {raw!r}")
        p, n, mod, theta = m.groups()
        out[(int(p), int(n))] = (tuple(int(c) for c in mod.split(",")), int(theta))
    return out


def save_field_cache(path, fields) -> None:
    """Write (or merge into) a field cache file, entries sorted by (p, n)."""
    entries = load_field_cache(path)
    for F in fields:
        entries[(F.p, F.n)] = (F.modulus, F.theta)
    lines = ["# p, n -> modulus coefficients c_0..c_n (little-endian) and theta index"]
    for (p, n), (mod, theta) in sorted(entries.items()):
        lines.append(f"p={p} n={n} modulus={','.join(map(str, mod))} theta={theta}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# --- k-th powers ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KPowerSubgroup:
    """The subgroup of nonzero k-th powers, generated by ``theta**k``.

    ``members`` is sorted by index; ``mask`` is a length-q membership bitmap.
    """

    k: int
    members: tuple[int, ...]
    mask: np.ndarray

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _check_k(F: FieldStructure, k: int) -> None:
    if k < 1 or (F.q - 1) % k:
        raise BadK(f"k={k} does not divide q-1={F.q - 1}")


def kth_power_subgroup(F: FieldStructure, k: int) -> KPowerSubgroup:
    k = int(k)
    _check_k(F, k)
    members = F.exp[np.arange(0, F.q - 1, k)]
    mask = np.zeros(F.q, dtype=bool)
    mask[members] = True
    mask.setflags(write=False)
    return KPowerSubgroup(k, tuple(sorted(int(m) for m in members)), mask)


def is_kth_power(F: FieldStructure, x, k: int) -> bool:
    _check_k(F, k)
    x = x.index if isinstance(x, FieldElement) else int(x)
    if x == 0:
        raise ZeroArgument("0 is excluded from the k-th power subgroup")
    return F.log(x) % k == 0


def _check_2k(F: FieldStructure, k: int) -> None:
    if k < 1 or (F.q - 1) % (2 * k):
        raise BadK(f"2k={2 * k} does not divide q-1={F.q - 1}")


def prime_subfield_in_kpowers(F: FieldStructure, k: int) -> bool:
    """Whether every nonzero element of GF(p) is a k-th power in F."""
    _check_2k(F, k)
    return ((F.q - 1) // (F.p - 1)) % k == 0


def corollary_kn_check(F: FieldStructure, k: int) -> bool:
    """Prime-subfield containment when additionally ``k | p - 1``: holds iff ``k | n``."""
    _check_2k(F, k)
    if (F.p - 1) % k:
        raise PreconditionViolated(f"k={k} does not divide p-1={F.p - 1}")
    return F.n % k == 0


def theta_k_subfield_degree(F: FieldStructure, k: int) -> int:
    """Degree over GF(p) of the smallest subfield holding all nonzero k-th powers."""
    _check_2k(F, k)
    size = (F.q - 1) // k
    return next(a for a in divisors(F.n) if (F.p**a - 1) % size == 0)
