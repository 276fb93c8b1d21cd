"""The symmetric group S_r as the Weyl group of GL_r.

Permutations act on weight vectors by permuting positions,
(w.lam)_{w(i)} = lam_i, so w.mu sorts mu when w is the sorting
permutation.  Simple reflections s_i swap positions i, i+1 (1-based).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..r} in one-line notation: one_line[i-1] = w(i)."""

    one_line: tuple

    def __post_init__(self):
        ol = tuple(self.one_line)
        object.__setattr__(self, "one_line", ol)
        if sorted(ol) != list(range(1, len(ol) + 1)):
            raise ValueError(f"not a permutation of 1..{len(ol)}: {ol}")

    @property
    def r(self):
        return len(self.one_line)

    @classmethod
    def identity(cls, r):
        return cls(tuple(range(1, r + 1)))

    @classmethod
    def simple(cls, i, r):
        """The transposition s_i of i and i+1."""
        if not 1 <= i < r:
            raise ValueError(f"simple reflection index {i} out of range")
        ol = list(range(1, r + 1))
        ol[i - 1], ol[i] = ol[i], ol[i - 1]
        return cls(tuple(ol))

    @classmethod
    def from_word(cls, word, r):
        """Product s_{i_1} s_{i_2} ... applied as written (left to right)."""
        w = cls.identity(r)
        for i in word:
            w = w * cls.simple(i, r)
        return w

    @classmethod
    def all(cls, r):
        for ol in itertools.permutations(range(1, r + 1)):
            yield cls(ol)

    def __call__(self, i):
        return self.one_line[i - 1]

    def __mul__(self, other):
        """Composition (u*v)(i) = u(v(i))."""
        return Permutation(tuple(self.one_line[j - 1] for j in other.one_line))

    def inverse(self):
        inv = [0] * self.r
        for i, wi in enumerate(self.one_line, start=1):
            inv[wi - 1] = i
        return Permutation(tuple(inv))

    def act(self, vec):
        """Position action on a vector: (w.vec)_{w(i)} = vec_i."""
        if len(vec) != self.r:
            raise ValueError("vector length mismatch")
        out = [None] * self.r
        for i0, x in enumerate(vec):
            out[self.one_line[i0] - 1] = x
        return tuple(out)

    def is_identity(self):
        return self.one_line == tuple(range(1, self.r + 1))

    def word(self):
        """A reduced word, extracted by leftmost descents (right multiplication)."""
        w = self
        out = []
        while not w.is_identity():
            i = next(i for i in range(1, w.r) if w(i) > w(i + 1))
            out.append(i)
            w = w * Permutation.simple(i, w.r)
        out.reverse()
        return tuple(out)

    def __str__(self):
        if self.is_identity():
            return "e"
        return " ".join(f"s{i}" for i in self.word())

    def __repr__(self):
        return f"Permutation({self.one_line})"


def length(w):
    """Inversion count = Coxeter length."""
    ol = w.one_line
    return sum(1 for i in range(len(ol)) for j in range(i + 1, len(ol)) if ol[i] > ol[j])


def parse_permutation(text, r):
    """Parse 'e', a word like 's1 s2', or one-line notation like '2 1 3'."""
    text = text.strip()
    if text in ("e", "id", ""):
        return Permutation.identity(r)
    parts = text.replace(",", " ").split()
    if all(p.startswith("s") for p in parts):
        word = [int(p[1:]) for p in parts]
        return Permutation.from_word(word, r)
    ol = tuple(int(p) for p in parts)
    if len(ol) != r:
        raise ValueError(f"one-line notation must have length {r}")
    return Permutation(ol)


def floorn(x, n):
    """Least nonnegative residue of x mod n, in [0, n)."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    return x % n


def ceiln(x, n):
    """Least strictly positive residue of x mod n, in (0, n]."""
    r0 = floorn(x, n)
    return n if r0 == 0 else r0


def is_almost_dominant(lam, w_prime):
    """Whether lam is w'-almost dominant.

    For every simple index i: <alpha_i^v, lam> = lam_i - lam_{i+1} must be
    >= 0 when w'^{-1} alpha_i > 0 (w'^{-1}(i) < w'^{-1}(i+1)), and >= -1
    when w'^{-1} alpha_i < 0.
    """
    inv = w_prime.inverse()
    for i in range(1, len(lam)):
        d = lam[i - 1] - lam[i]
        bound = 0 if inv(i) < inv(i + 1) else -1
        if d < bound:
            return False
    return True


def staircase(r):
    """rho = (r-1, r-2, ..., 0)."""
    return tuple(range(r - 1, -1, -1))


def almost_dominant_decompose(mu):
    """The unique (w', lam) with w'.mu = lam + rho and lam w'-almost dominant.

    w'.mu is mu sorted descending; among equal parts the original indices
    are taken in decreasing order, which is exactly the tie-break that
    makes lam w'-almost dominant (equal sorted parts force the inverse
    images to decrease).
    """
    r = len(mu)
    if any(m < 0 for m in mu):
        raise ValueError("mu must have nonnegative parts")
    order = sorted(range(1, r + 1), key=lambda idx: (-mu[idx - 1], -idx))
    w_prime = Permutation(tuple(order)).inverse()
    rho = staircase(r)
    lam = tuple(s - p for s, p in zip(w_prime.act(mu), rho))
    return w_prime, lam


def bruhat_path(frm, to):
    """A path frm -> s_{i_1} frm -> ... -> to with per-step ascent flags.

    The word is a reduced word for to * frm^{-1} extracted by leftmost
    right-descents; it is applied on the left, one reflection per step.
    Each step is flagged True when the length increases.  Any valid path
    would do; this one is deterministic and has minimal length.
    """
    if frm.r != to.r:
        raise ValueError("rank mismatch")
    u = to * frm.inverse()
    word = []
    # u == s_{i_k} ... s_{i_1} with word == [i_1, ..., i_k]: right-descent
    # extraction yields the reflections in left-application order.
    while not u.is_identity():
        i = next(i for i in range(1, u.r) if u(i) > u(i + 1))
        word.append(i)
        u = u * Permutation.simple(i, u.r)
    steps = []
    cur = frm
    cur_len = length(cur)
    for i in word:
        cur = Permutation.simple(i, cur.r) * cur
        new_len = length(cur)
        steps.append((i, new_len > cur_len))
        cur_len = new_len
    assert cur == to
    return steps
