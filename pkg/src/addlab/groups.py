"""Finite fields F_{p^r}, the two ambient group kinds, and their characters.

Group elements are handled as integer indices in [0, N).  The bijection is
part of the public contract: cyclic groups use the residue itself, vector
spaces over F_q use mixed-radix base-p digits (coordinate 0 least
significant, each coordinate holding r base-p digits in the power basis
1, y, ..., y^{r-1}).  All arithmetic helpers accept scalars or numpy arrays.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "FieldCtx",
    "GroupCtx",
    "CyclicCtx",
    "VectorCtx",
    "is_prime",
    "parse_ctx",
    "BUILTIN_MODULI",
]

# Monic irreducible moduli, little-endian coefficients, for the odd primes we
# ship ready-made.  Anything else must be supplied explicitly (and is checked).
BUILTIN_MODULI = {
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),      # y^2 + 1
    (3, 3): (1, 2, 0, 1),   # y^3 + 2y + 1
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),      # y^2 + 2
    (5, 3): (1, 1, 0, 1),   # y^3 + y + 1
    (7, 1): (0, 1),
    (7, 2): (1, 0, 1),      # y^2 + 1
    (7, 3): (2, 0, 0, 1),   # y^3 + 2
}

_MAX_DENSE_ORDER = 1 << 26  # largest N for which dense tables are allowed


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_divmod(num, den, p):
    """Polynomial divmod over F_p on little-endian coefficient lists."""
    num = [c % p for c in num]
    den = [c % p for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(den[-1], -1, p)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 1)
    rem = list(num)
    for k in range(len(rem) - 1, deg_d - 1, -1):
        coef = rem[k] * inv_lead % p
        if coef:
            quot[k - deg_d] = coef
            for j, dc in enumerate(den):
                rem[k - deg_d + j] = (rem[k - deg_d + j] - coef * dc) % p
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


class FieldCtx:
    """F_q = F_p[y]/(m(y)) with q = p^r; elements are indices in [0, q).

    Index e encodes the polynomial sum(d_j y^j) with d_j the base-p digits
    of e, little-endian.  Multiplication is schoolbook polynomial multiply
    followed by reduction (r <= 4 at desk scale), with a cached q x q table
    for small q.
    """

    def __init__(self, p: int, r: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is unsupported (odd q only)")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            try:
                modulus = BUILTIN_MODULI[(p, r)]
            except KeyError:
                raise ValueError(
                    f"no built-in modulus for p={p}, r={r}; supply one explicitly"
                ) from None
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree r (little-endian)")
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = modulus
        if self.q > 10**4:
            raise ValueError(f"q = {self.q} exceeds the desk-scale bound 10^4")
        self._check_irreducible()
        self._red_rows = self._reduction_rows()
        self._mul_table = None
        self._inv_table = None
        self._trace_table = None
        self._char_kernel = {}

    # -- construction checks -------------------------------------------------

    def _check_irreducible(self):
        p, r, m = self.p, self.r, self.modulus
        if r == 1:
            return
        if r > 4:
            raise ValueError("irreducibility check supports r <= 4 only")
        for x in range(p):
            acc = 0
            for c in reversed(m):
                acc = (acc * x + c) % p
            if acc == 0:
                raise ValueError(f"modulus has root {x} mod {p}; not irreducible")
        if r == 4:
            # degree 4 with no roots can still split into two quadratics
            for b in range(p):
                for c in range(p):
                    _, rem = _poly_divmod(list(m), [c, b, 1], p)
                    if not rem:
                        raise ValueError(
                            f"modulus divisible by y^2+{b}y+{c}; not irreducible"
                        )

    def _reduction_rows(self):
        # row k = coefficients of y^{r+k} mod m(y), k = 0..r-2
        p, r = self.p, self.r
        rows = np.zeros((max(r - 1, 1), r), dtype=np.int64)
        cur = np.array([(-c) % p for c in self.modulus[:r]], dtype=np.int64)
        for k in range(r - 1):
            rows[k] = cur
            nxt = np.roll(cur, 1)
            carry = nxt[0]
            nxt[0] = 0
            if carry:
                nxt = (nxt + carry * rows[0]) % p
            cur = nxt
        return rows

    # -- digit codecs ----------------------------------------------------------

    def digits(self, a):
        """Base-p digits of field indices, shape (..., r)."""
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (self.r,), dtype=np.int64)
        for j in range(self.r):
            out[..., j] = a % self.p
            a = a // self.p
        return out

    def from_digits(self, d):
        d = np.asarray(d, dtype=np.int64) % self.p
        weights = self.p ** np.arange(self.r, dtype=np.int64)
        return (d * weights).sum(axis=-1)

    # -- arithmetic ------------------------------------------------------------

    def add(self, a, b):
        return self.from_digits(self.digits(a) + self.digits(b))

    def neg(self, a):
        return self.from_digits(-self.digits(a))

    def sub(self, a, b):
        return self.from_digits(self.digits(a) - self.digits(b))

    def _mul_digits(self, da, db):
        p, r = self.p, self.r
        shape = np.broadcast_shapes(da.shape[:-1], db.shape[:-1])
        conv = np.zeros(shape + (2 * r - 1,), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                conv[..., i + j] += da[..., i] * db[..., j]
        conv %= p
        res = conv[..., :r].copy()
        for k in range(r - 1):
            res = (res + conv[..., r + k, None] * self._red_rows[k]) % p
        return res

    def mul(self, a, b):
        if self._mul_table is not None:
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            out = self._mul_table[a, b]
            return out if out.ndim else int(out)
        out = self.from_digits(self._mul_digits(self.digits(a), self.digits(b)))
        return out if np.asarray(out).ndim else int(out)

    def pow(self, a, e: int):
        e = int(e)
        if e < 0:
            a, e = self.inv(a), -e
        result = np.ones_like(np.asarray(a, dtype=np.int64))
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = np.asarray(self.mul(result, base), dtype=np.int64)
            base = np.asarray(self.mul(base, base), dtype=np.int64)
            e >>= 1
        return result if result.ndim else int(result)

    def inv(self, a):
        table = self.inv_table
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        out = table[a]
        return out if out.ndim else int(out)

    # -- cached tables -----------------------------------------------------------

    @property
    def mul_table(self):
        if self._mul_table is None:
            q = self.q
            all_digits = self.digits(np.arange(q))
            table = np.empty((q, q), dtype=np.int64)
            for a in range(q):
                table[a] = self.from_digits(
                    self._mul_digits(all_digits[a][None, :], all_digits)
                )
            self._mul_table = table
        return self._mul_table

    @property
    def inv_table(self):
        if self._inv_table is None:
            tbl = self.mul_table
            inv = np.zeros(self.q, dtype=np.int64)
            rows, cols = np.nonzero(tbl == 1)
            inv[rows] = cols
            self._inv_table = inv
        return self._inv_table

    @property
    def trace_table(self):
        """Tr(a) = a + a^p + ... + a^{p^{r-1}}, as an element of F_p."""
        if self._trace_table is None:
            idx = np.arange(self.q, dtype=np.int64)
            acc = idx.copy()
            frob = idx.copy()
            for _ in range(self.r - 1):
                frob = np.asarray(self.pow(frob, self.p), dtype=np.int64)
                acc = self.add(acc, frob)
            dig = self.digits(acc)
            if self.r > 1 and np.any(dig[..., 1:]):
                raise AssertionError("trace left the prime subfield")
            self._trace_table = dig[..., 0].astype(np.int64)
        return self._trace_table

    def trace(self, a):
        out = self.trace_table[np.asarray(a, dtype=np.int64)]
        return out if out.ndim else int(out)

    def char_kernel(self, inverse: bool = False):
        """q x q matrix K[a, b] = exp(-+2*pi*i * Tr(ab)/p); the length-q DFT kernel."""
        key = bool(inverse)
        if key not in self._char_kernel:
            tr = self.trace_table[self.mul_table]
            sign = 1.0 if inverse else -1.0
            self._char_kernel[key] = np.exp(sign * 2j * np.pi * tr / self.p)
        return self._char_kernel[key]

    # -- misc ----------------------------------------------------------------------

    def format_element(self, a) -> str:
        return ",".join(str(int(d)) for d in self.digits(int(a)))

    def parse_element(self, text: str) -> int:
        digs = [int(t) for t in text.split(",")]
        if len(digs) != self.r or any(not 0 <= d < self.p for d in digs):
            raise ValueError(f"bad field element {text!r} for F_{self.p}^{self.r}")
        return int(self.from_digits(np.array(digs)))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, r={self.r}, modulus={self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))


class GroupCtx:
    """Common interface of the two ambient groups; immutable after construction."""

    kind: str
    N: int

    # index arithmetic -------------------------------------------------------
    def add(self, i, j):
        raise NotImplementedError

    def neg(self, i):
        raise NotImplementedError

    def sub(self, i, j):
        return self.add(i, self.neg(j))

    def scale_int(self, c: int, i):
        raise NotImplementedError

    def scale_field(self, s: int, i):
        raise ValueError("field-scalar action requires a vector-space context")

    def elements(self):
        return np.arange(self.N, dtype=np.int64)

    # characters ---------------------------------------------------------------
    def char_phase(self, x, xi):
        """(numerator, denominator) with character = exp(2*pi*i*num/den)."""
        raise NotImplementedError

    def character(self, x, xi):
        num, den = self.char_phase(x, xi)
        out = np.exp(2j * np.pi * np.asarray(num) / den)
        return out if out.ndim else complex(out)

    # transforms (forward kernel conj(character)) -------------------------------
    def fft(self, values):
        raise NotImplementedError

    def ifft(self, values):
        raise NotImplementedError

    # text encodings --------------------------------------------------------------
    def format_element(self, idx) -> str:
        raise NotImplementedError

    def parse_element(self, text: str) -> int:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    @staticmethod
    def cyclic(M: int) -> "CyclicCtx":
        return CyclicCtx(M)

    @staticmethod
    def vector_space(field: FieldCtx, n: int) -> "VectorCtx":
        return VectorCtx(field, n)


class CyclicCtx(GroupCtx):
    kind = "cyclic"

    def __init__(self, M: int):
        M = int(M)
        if M < 1:
            raise ValueError("cyclic order must be positive")
        if M >= 1 << 31:
            raise ValueError("cyclic order exceeds the desk-scale bound 2^31")
        self.M = M
        self.N = M

    def add(self, i, j):
        out = (np.asarray(i, dtype=np.int64) + np.asarray(j, dtype=np.int64)) % self.M
        return out if out.ndim else int(out)

    def neg(self, i):
        out = (-np.asarray(i, dtype=np.int64)) % self.M
        return out if out.ndim else int(out)

    def scale_int(self, c: int, i):
        out = (int(c) * np.asarray(i, dtype=np.int64)) % self.M
        return out if out.ndim else int(out)

    def translation(self, y: int) -> np.ndarray:
        return (int(y) + np.arange(self.M, dtype=np.int64)) % self.M

    def char_phase(self, x, xi):
        num = (np.asarray(x, dtype=np.int64) * np.asarray(xi, dtype=np.int64)) % self.M
        return (num if num.ndim else int(num)), self.M

    def fft(self, values):
        return np.fft.fft(values)

    def ifft(self, values):
        return np.fft.ifft(values)

    def format_element(self, idx) -> str:
        return str(int(idx) % self.M)

    def parse_element(self, text: str) -> int:
        v = int(text)
        if not 0 <= v < self.M:
            v %= self.M
        return v

    def describe(self) -> str:
        return f"cyclic;M={self.M}"

    def __repr__(self):
        return f"CyclicCtx(M={self.M})"

    def __eq__(self, other):
        return isinstance(other, CyclicCtx) and self.M == other.M

    def __hash__(self):
        return hash(("cyclic", self.M))


class VectorCtx(GroupCtx):
    kind = "vector"

    def __init__(self, field: FieldCtx, n: int):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        N = field.q**n
        if N > 1 << 48:
            raise ValueError(f"group order q^n = {N} exceeds 2^48")
        self.field = field
        self.n = n
        self.N = int(N)
        self._ndigits = n * field.r

    # base-p digit view over all n*r positions --------------------------------
    def _digits(self, i):
        i = np.asarray(i, dtype=np.int64)
        out = np.empty(i.shape + (self._ndigits,), dtype=np.int64)
        p = self.field.p
        for j in range(self._ndigits):
            out[..., j] = i % p
            i = i // p
        return out

    def _from_digits(self, d):
        p = self.field.p
        d = np.asarray(d, dtype=np.int64) % p
        weights = p ** np.arange(self._ndigits, dtype=np.int64)
        return (d * weights).sum(axis=-1)

    def coords(self, i):
        """Field-element indices of the n coordinates, shape (..., n)."""
        i = np.asarray(i, dtype=np.int64)
        out = np.empty(i.shape + (self.n,), dtype=np.int64)
        q = self.field.q
        for j in range(self.n):
            out[..., j] = i % q
            i = i // q
        return out

    def from_coords(self, c):
        q = self.field.q
        c = np.asarray(c, dtype=np.int64)
        weights = q ** np.arange(self.n, dtype=np.int64)
        return (c * weights).sum(axis=-1)

    def add(self, i, j):
        out = self._from_digits(self._digits(i) + self._digits(j))
        return out if out.ndim else int(out)

    def neg(self, i):
        out = self._from_digits(-self._digits(i))
        return out if out.ndim else int(out)

    def translation(self, y: int) -> np.ndarray:
        """add(y, arange(N)) using a cached digit table for the full index range."""
        if not hasattr(self, "_all_digits"):
            self._all_digits = self._digits(np.arange(self.N, dtype=np.int64))
        return self._from_digits(self._all_digits + self._digits(np.int64(y)))

    def scale_int(self, c: int, i):
        out = self._from_digits(int(c) * self._digits(i))
        return out if out.ndim else int(out)

    def scale_field(self, s: int, i):
        """Multiply every coordinate by the F_q scalar with index s."""
        cs = self.coords(i)
        out = self.from_coords(self.field.mul(np.int64(s), cs))
        return out if np.asarray(out).ndim else int(out)

    def dot(self, x, xi):
        """Standard F_q dot product of the coordinate vectors."""
        cx = self.coords(x)
        cxi = self.coords(xi)
        prod = np.asarray(self.field.mul(cx, cxi), dtype=np.int64)
        acc = prod[..., 0]
        for j in range(1, self.n):
            acc = self.field.add(acc, prod[..., j])
        return acc if np.asarray(acc).ndim else int(acc)

    def char_phase(self, x, xi):
        tr = self.field.trace(self.dot(x, xi))
        return tr, self.field.p

    def fft(self, values):
        return self._transform(values, inverse=False)

    def ifft(self, values):
        return self._transform(values, inverse=True) / self.N

    def _transform(self, values, inverse: bool):
        q, n = self.field.q, self.n
        kernel = self.field.char_kernel(inverse)
        arr = np.asarray(values, dtype=np.complex128).reshape((q,) * n)
        for ax in range(n):
            arr = np.moveaxis(np.tensordot(kernel, arr, axes=([1], [ax])), 0, ax)
        return arr.reshape(-1)

    def format_element(self, idx) -> str:
        cs = self.coords(int(idx))
        return " ".join(self.field.format_element(int(c)) for c in cs)

    def parse_element(self, text: str) -> int:
        parts = text.split()
        if len(parts) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(parts)}")
        cs = np.array([self.field.parse_element(p) for p in parts])
        return int(self.from_coords(cs))

    def describe(self) -> str:
        mod = ",".join(str(c) for c in self.field.modulus)
        return f"vector;p={self.field.p};r={self.field.r};n={self.n};mod={mod}"

    def __repr__(self):
        return f"VectorCtx(F_{self.field.q}^{self.n})"

    def __eq__(self, other):
        return (
            isinstance(other, VectorCtx)
            and self.field == other.field
            and self.n == other.n
        )

    def __hash__(self):
        return hash(("vector", self.field, self.n))


def parse_ctx(text: str) -> GroupCtx:
    """Inverse of GroupCtx.describe()."""
    parts = text.strip().split(";")
    if parts[0] == "cyclic":
        kv = dict(p.split("=", 1) for p in parts[1:])
        return CyclicCtx(int(kv["M"]))
    if parts[0] == "vector":
        kv = dict(p.split("=", 1) for p in parts[1:])
        modulus = (
            tuple(int(c) for c in kv["mod"].split(",")) if "mod" in kv else None
        )
        field = FieldCtx(int(kv["p"]), int(kv["r"]), modulus)
        return VectorCtx(field, int(kv["n"]))
    raise ValueError(f"unknown group encoding {text!r}")
