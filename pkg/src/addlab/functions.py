"""Dense functions on a group context: Fourier transform, convolution, norms.

Conventions (shared by both group kinds, dual identified with the group):

    hat(h)(xi) = sum_x h(x) * conj(character(x, xi))
    inverse has the 1/N factor
    (h1 * h2)(x) = sum_y h1(y) h2(x - y)

Physical-side norms are plain sums; Fourier-side norms are means over the
dual group, so Parseval reads sum_x |h|^2 = (1/N) sum_xi |hat h|^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import GroupCtx, parse_ctx

__all__ = [
    "Dfn",
    "fourier",
    "inverse_fourier",
    "convolve",
    "norms",
    "fourier_mean_norm",
    "Norms",
    "save_dfn",
    "load_dfn",
]

_DIRECT_LIMIT = 4096  # largest N for O(N^2) reference paths
_REAL_TOL = 1e-12


class Dfn:
    """A finitely supported function on a group, stored as a dense array."""

    __slots__ = ("ctx", "values", "tag", "_hat")

    def __init__(self, ctx: GroupCtx, values, tag: str | None = None):
        values = np.asarray(values)
        if values.shape != (ctx.N,):
            raise ValueError(f"expected {ctx.N} values, got shape {values.shape}")
        if tag is None:
            tag = "complex" if np.iscomplexobj(values) else "real"
        if tag == "real" and np.iscomplexobj(values):
            if np.max(np.abs(values.imag)) > _REAL_TOL:
                raise ValueError("real-tagged Dfn with non-negligible imaginary part")
            values = values.real
        self.ctx = ctx
        self.values = values
        self.tag = tag
        self._hat = None

    # constructors -------------------------------------------------------------
    @classmethod
    def zeros(cls, ctx):
        return cls(ctx, np.zeros(ctx.N))

    @classmethod
    def delta(cls, ctx, at: int = 0):
        v = np.zeros(ctx.N, dtype=np.int64)
        v[at % ctx.N] = 1
        return cls(ctx, v)

    @classmethod
    def constant(cls, ctx, c=1.0):
        return cls(ctx, np.full(ctx.N, c))

    @classmethod
    def indicator(cls, ctx, indices):
        v = np.zeros(ctx.N, dtype=np.int64)
        if len(indices):
            v[np.asarray(indices, dtype=np.int64)] = 1
        return cls(ctx, v)

    # basic queries -------------------------------------------------------------
    def is_integer_valued(self) -> bool:
        if np.issubdtype(self.values.dtype, np.integer):
            return True
        if self.tag == "complex":
            return False
        return bool(np.all(self.values == np.round(self.values)))

    def support(self) -> np.ndarray:
        return np.nonzero(self.values)[0]

    def mass(self):
        return self.values.sum()

    def hat(self) -> np.ndarray:
        """Cached fast transform of the values."""
        if self._hat is None:
            self._hat = self.ctx.fft(self.values.astype(np.complex128))
        return self._hat

    # arithmetic (pointwise) ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Dfn):
            if other.ctx != self.ctx:
                raise ValueError("group context mismatch")
            return other.values
        return other

    def __add__(self, other):
        return Dfn(self.ctx, self.values + self._coerce(other))

    def __sub__(self, other):
        return Dfn(self.ctx, self.values - self._coerce(other))

    def __mul__(self, other):
        return Dfn(self.ctx, self.values * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Dfn(self.ctx, -self.values)

    def translate(self, c: int):
        """x -> h(x - c)."""
        idx = self.ctx.sub(self.ctx.elements(), int(c))
        out = np.empty_like(self.values)
        out[self.ctx.elements()] = self.values[idx]
        return Dfn(self.ctx, out)

    def __repr__(self):
        return f"Dfn({self.ctx!r}, tag={self.tag}, mass={self.mass()})"


def _character_matrix(ctx, conj: bool) -> np.ndarray:
    if ctx.N > _DIRECT_LIMIT:
        raise ValueError(f"direct transform limited to N <= {_DIRECT_LIMIT}")
    idx = ctx.elements()
    num, den = ctx.char_phase(idx[:, None], idx[None, :])
    sign = -1.0 if conj else 1.0
    return np.exp(sign * 2j * np.pi * np.asarray(num) / den)


def fourier(h: Dfn, method: str = "fast") -> Dfn:
    """hat(h)(xi) = sum_x h(x) conj(character(x, xi)); 'direct' is the O(N^2) oracle."""
    if method == "fast":
        return Dfn(h.ctx, h.hat().copy(), tag="complex")
    if method == "direct":
        W = _character_matrix(h.ctx, conj=True)
        return Dfn(h.ctx, h.values.astype(np.complex128) @ W, tag="complex")
    raise ValueError(f"unknown method {method!r}")


def inverse_fourier(H: Dfn, method: str = "fast") -> Dfn:
    if method == "fast":
        vals = H.ctx.ifft(H.values.astype(np.complex128))
    elif method == "direct":
        W = _character_matrix(H.ctx, conj=False)
        vals = (H.values.astype(np.complex128) @ W) / H.ctx.N
    else:
        raise ValueError(f"unknown method {method!r}")
    return Dfn(H.ctx, vals, tag="complex")


def _direct_convolve_values(ctx, v1, v2):
    if ctx.kind == "cyclic":
        lin = np.convolve(v1, v2)
        out = lin[: ctx.N].copy()
        if len(lin) > ctx.N:
            tail = lin[ctx.N :]
            out[: len(tail)] += tail
        return out
    # vector space: accumulate translates over the sparser support
    if np.count_nonzero(v2) < np.count_nonzero(v1):
        v1, v2 = v2, v1
    out = np.zeros(ctx.N, dtype=np.result_type(v1, v2))
    for y in np.nonzero(v1)[0]:
        out[ctx.translation(int(y))] += v1[y] * v2
    return out


def convolve(h1: Dfn, h2: Dfn, method: str = "fast") -> Dfn:
    """(h1 * h2)(x) = sum_y h1(y) h2(x - y).

    'direct' sums exactly (integer inputs stay integers); 'fast' multiplies
    in Fourier space, and rounds integer inputs back to integers, checking
    the rounding error stays below 1e-6.
    """
    if h1.ctx != h2.ctx:
        raise ValueError("group context mismatch")
    ctx = h1.ctx
    both_int = h1.is_integer_valued() and h2.is_integer_valued()
    if method == "direct":
        if both_int:
            vals = _direct_convolve_values(
                ctx, h1.values.astype(np.int64), h2.values.astype(np.int64)
            )
            return Dfn(ctx, vals)
        vals = _direct_convolve_values(
            ctx,
            h1.values.astype(np.complex128 if "complex" in (h1.tag, h2.tag) else np.float64),
            h2.values.astype(np.complex128 if "complex" in (h1.tag, h2.tag) else np.float64),
        )
        tag = "complex" if "complex" in (h1.tag, h2.tag) else "real"
        return Dfn(ctx, vals, tag=tag)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    vals = ctx.ifft(h1.hat() * h2.hat())
    if both_int:
        rounded = np.round(vals.real)
        err = np.max(np.abs(vals - rounded))
        if err >= 1e-6:
            raise ArithmeticError(f"integer convolution rounding error {err:.3g}")
        return Dfn(ctx, rounded.astype(np.int64))
    if h1.tag == "real" and h2.tag == "real":
        return Dfn(ctx, vals.real, tag="real")
    return Dfn(ctx, vals, tag="complex")


@dataclass
class Norms:
    l1: float
    l2: float
    lp: float
    sup: float
    fourier_sup: float


def norms(h: Dfn, p: float = 2.0) -> Norms:
    """Physical-side norms as plain sums; fourier_sup = max |hat h|."""
    if p < 1:
        raise ValueError("p must be >= 1")
    a = np.abs(h.values.astype(np.complex128 if h.tag == "complex" else np.float64))
    return Norms(
        l1=float(a.sum()),
        l2=float(np.sqrt((a**2).sum())),
        lp=float((a**p).sum() ** (1.0 / p)),
        sup=float(a.max()) if len(a) else 0.0,
        fourier_sup=float(np.abs(h.hat()).max()),
    )


def fourier_mean_norm(h: Dfn, p: float) -> float:
    """((1/N) sum_xi |hat h(xi)|^p)^(1/p) -- the dual-group mean L^p norm."""
    if p == np.inf:
        return float(np.abs(h.hat()).max())
    mags = np.abs(h.hat())
    return float(((mags**p).mean()) ** (1.0 / p))


# -- serialization -------------------------------------------------------------


def save_dfn(h: Dfn, path):
    with open(path, "w") as fh:
        fh.write(f"ctx={h.ctx.describe()} tag={h.tag}\n")
        if h.tag == "complex":
            for v in h.values.astype(np.complex128):
                fh.write(f"{float(v.real)!r} {float(v.imag)!r}\n")
        elif np.issubdtype(h.values.dtype, np.integer):
            for v in h.values:
                fh.write(f"{int(v)}\n")
        else:
            for v in h.values:
                fh.write(f"{float(v)!r}\n")


def load_dfn(path) -> Dfn:
    with open(path) as fh:
        header = fh.readline().strip()
        fields = dict(part.split("=", 1) for part in header.split(" "))
        ctx = parse_ctx(fields["ctx"])
        tag = fields["tag"]
        rows = [line.split() for line in fh if line.strip()]
    if tag == "complex":
        vals = np.array([complex(float(a), float(b)) for a, b in rows])
    else:
        raw = [r[0] for r in rows]
        if all(("." not in s and "e" not in s and "E" not in s) for s in raw):
            vals = np.array([int(s) for s in raw], dtype=np.int64)
        else:
            vals = np.array([float(s) for s in raw])
    return Dfn(ctx, vals, tag=tag)
