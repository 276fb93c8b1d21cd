"""Metaplectic Iwahori ice: systems, state enumeration, partition functions.

Grid conventions (fixed once here, used by every figure-facing routine):

* rows are numbered 1..r top to bottom and carry the variables z_1..z_r;
* monochrome columns are numbered left to right; blocks of r consecutive
  columns are numbered N*n-1 .. 0 **left to right decreasing**; the block
  with number b has scolor w_{b mod n}; inside a block the column colors
  are c_1..c_r left to right (so the leftmost column is (c_1, w_{n-1}));
* colors are 1..r, scolors are 0..n-1.

Horizontal spins are ``('c', k)`` or ``('w', x)``; vertical spins are
frozensets of (color, scolor) pairs (empty = '+').  A monochrome vertical
in column (c, w) is {} or {(c, w)}; fused verticals hold one pair per
occupied subcolumn.

Boundary data for a system S_{mu, theta, w}: bottom verticals empty; at
row i the left edge carries scolor theta_i and the right edge the color
c_{r+1-w^{-1}(i)}; on top, for each j the column in block mu_j with color
c_{r+1-j} is filled.

Colored paths run from the top boundary to the right one, scolored paths
from the top to the left; the row scan below treats spins as constraints
on edges, so the direction of travel never enters the code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .coefficients import GaussElem
from .laurent import LaurentPoly
from .weyl import Permutation, floorn

VARIANTS = ("monochrome", "color_fused", "fully_fused")

#: weight factors (v_exp, (1-v)_exp, g-args tuple, z_exp)
_UNIT = (0, 0, (), 0)


@dataclass(frozen=True)
class SystemSpec:
    """A boundary datum (n, r, mu, theta, w, variant, block parameter N)."""

    n: int
    r: int
    mu: tuple
    theta: tuple
    w: Permutation
    variant: str = "monochrome"
    N: int = None

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError("n and r must be positive")
        mu = tuple(self.mu)
        theta = tuple(t % self.n for t in self.theta)
        if len(mu) != self.r or len(theta) != self.r:
            raise ValueError("mu and theta must have length r")
        if any(m < 0 for m in mu):
            raise ValueError("mu must have nonnegative parts")
        if self.w.r != self.r:
            raise ValueError("w must be a permutation of 1..r")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        N = self.N if self.N is not None else max(mu) // self.n + 1
        if N * self.n <= max(mu):
            raise ValueError("N*n must exceed max(mu)")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "N", N)

    def with_variant(self, variant):
        return SystemSpec(self.n, self.r, self.mu, self.theta, self.w,
                          variant, self.N)

    def with_N(self, N):
        return SystemSpec(self.n, self.r, self.mu, self.theta, self.w,
                          self.variant, N)


def mono_column_pairs(spec):
    """(color, scolor) of every monochrome column, left to right."""
    out = []
    for j0 in range(spec.N * spec.n * spec.r):
        block = spec.N * spec.n - 1 - j0 // spec.r
        out.append((j0 % spec.r + 1, block % spec.n))
    return out

def grid_columns(spec):
    """Column descriptors for the spec's variant.

    Each grid column is the tuple of monochrome (color, scolor) pairs it
    fuses over: length 1, r, or n*r.
    """
    pairs = mono_column_pairs(spec)
    size = {"monochrome": 1, "color_fused": spec.r,
            "fully_fused": spec.n * spec.r}[spec.variant]
    return [tuple(pairs[k:k + size]) for k in range(0, len(pairs), size)]


@dataclass(frozen=True)
class Boundary:
    top: tuple       # vertical spin per grid column
    left: tuple      # horizontal spin per row
    right: tuple
    bottom: tuple    # all empty frozensets


def boundary(spec):
    """The boundary spin assignment of the system."""
    n, r = spec.n, spec.r
    m_cols = spec.N * n * r
    filled = {}
    for j in range(1, r + 1):
        b = spec.mu[j - 1]
        color = r + 1 - j
        col0 = (spec.N * n - 1 - b) * r + (color - 1)
        filled.setdefault(col0, set()).add((color, b % n))
    size = {"monochrome": 1, "color_fused": r, "fully_fused": n * r}[spec.variant]
    top = []
    for k in range(0, m_cols, size):
        pairs = set()
        for j0 in range(k, k + size):
            pairs |= filled.get(j0, set())
        top.append(frozenset(pairs))
    left = tuple(('w', floorn(t, n)) for t in spec.theta)
    winv = spec.w.inverse()
    right = tuple(('c', r + 1 - winv(i)) for i in range(1, r + 1))
    bottom = tuple(frozenset() for _ in top)
    return Boundary(tuple(top), left, right, bottom)


# -- vertex weights ------------------------------------------------------

def _mono_options(n, c, w, top_filled, left):
    """Admissible (bottom_filled, right, factors) for known (top, left).

    Branching happens only when a color may pass or turn down (b2 vs c1)
    and when a scolor may pass or split the vertical (b1 vs c2).
    """
    kind, val = left
    if not top_filled:
        if kind == 'w':
            return ((False, left, _UNIT),)
        if val == c:
            return ((False, left, (0, 0, (), 1)),
                    (True, ('w', w), (0, 1, (), 1)))
        return ((False, left, _UNIT),)
    if kind == 'c':
        if c > val:
            return ((True, left, (1, 0, (), 0)),)
        if c == val:
            return ((True, left, (0, 0, (), 1)),)
        return ((True, left, _UNIT),)
    opts = ((True, left, (0, 0, ((val - w) % n,), 0)),)
    if val == w:
        opts += ((False, ('c', c), _UNIT),)
    return opts


def mono_vertex_weight(n, c, w, top_filled, left, bottom_filled, right):
    """Weight factors of a monochrome vertex, or None if inadmissible."""
    for bot, rgt, f in _mono_options(n, c, w, top_filled, left):
        if bot == bottom_filled and rgt == right:
            return f
    return None


def _combine(f1, f2):
    return (f1[0] + f2[0], f1[1] + f2[1], f1[2] + f2[2], f1[3] + f2[3])


@lru_cache(maxsize=None)
def _block_options(n, subcols, top_key, left):
    """Options for a fused column: scan its subcolumns left to right.

    ``top_key`` is a tuple of booleans, one per subcolumn.  Interior
    horizontal spins are forced once (top, left) per subcolumn are known,
    so the branching is exactly the monochrome branching.
    """
    results = []

    def rec(k, h, bottoms, acc):
        if k == len(subcols):
            results.append((tuple(bottoms), h, acc))
            return
        c, w = subcols[k]
        for bot, rgt, f in _mono_options(n, c, w, top_key[k], h):
            bottoms.append(bot)
            rec(k + 1, rgt, bottoms, _combine(acc, f))
            bottoms.pop()

    rec(0, left, [], _UNIT)
    return tuple(results)


def column_options(n, subcols, top_set, left):
    """Admissible (bottom_set, right, factors) for a grid column."""
    top_key = tuple(p in top_set for p in subcols)
    out = []
    for bottoms, right, f in _block_options(n, subcols, top_key, left):
        bottom = frozenset(p for p, b in zip(subcols, bottoms) if b)
        out.append((bottom, right, f))
    return out


def column_weight(n, subcols, top_set, left, bottom_set, right):
    """Weight factors of a fused (or monochrome) vertex, or None."""
    if not (top_set <= set(subcols) and bottom_set <= set(subcols)):
        return None
    acc = _UNIT
    h = left
    for c, w in subcols:
        t = (c, w) in top_set
        b = (c, w) in bottom_set
        # the right spin is forced once (top, bottom, left) are known
        f = None
        for bot, rgt, ff in _mono_options(n, c, w, t, h):
            if bot == b:
                f, h = ff, rgt
                break
        if f is None:
            return None
        acc = _combine(acc, f)
    if h != right:
        return None
    return acc


def factors_coeff(n, factors):
    """Convert weight factors (sans z) to a GaussElem."""
    v_exp, omv, gargs, _ = factors
    coeff = GaussElem.from_terms(n, [(v_exp, tuple((a, 1) for a in gargs), 1)])
    if omv:
        coeff = coeff * GaussElem.one_minus_v(n) ** omv
    return coeff


def color_fused_weight(n, r, w, top_colors, left, bottom_colors, right):
    """Direct color-fused weight table (scolor-w vertex), as a one-row check
    against the product of monochrome weights.

    ``top_colors``/``bottom_colors`` are sets of color indices; the weight
    is returned as (GaussElem, z_exp) or None.
    """
    top = frozenset(top_colors)
    bot = frozenset(bottom_colors)
    kind_l, val_l = left
    kind_r, val_r = right

    def count(s, lo, hi):
        return sum(1 for c in s if lo <= c <= hi)

    if kind_l == 'c' and kind_r == 'c':
        i, j = val_l, val_r
        if i == j and top == bot:
            f = (count(top, i + 1, r), 0, (), 1)
        elif i < j and j in top and i not in top and bot == (top - {j}) | {i}:
            f = (count(bot, j + 1, r), 1, (0,) * count(bot, i + 1, j - 1), 1)
        else:
            return None
    elif kind_l == 'w' and kind_r == 'c':
        i = val_r
        if val_l == w and i in top and bot == top - {i}:
            f = (count(bot, i + 1, r), 0, (0,) * count(bot, 1, i - 1), 0)
        else:
            return None
    elif kind_l == 'c' and kind_r == 'w':
        i = val_l
        if val_r == w and i not in top and bot == top | {i}:
            f = (0, 1, (0,) * count(bot, i + 1, r), 1)
        else:
            return None
    else:
        if val_l == val_r and top == bot:
            f = (0, 0, ((val_l - w) % n,) * len(top), 0)
        else:
            return None
    return factors_coeff(n, f), f[3]


# -- states and enumeration ----------------------------------------------

@dataclass
class LatticeState:
    """One admissible edge assignment, with its Boltzmann weight."""

    spec: SystemSpec
    verticals: tuple   # (r+1) x C vertical spins, row boundaries top to bottom
    horizontals: tuple  # r x (C+1) horizontal spins
    coeff: GaussElem = field(repr=False)
    z_exps: tuple = ()

    def weight(self):
        return LaurentPoly.monomial(self.spec.r, self.spec.n, self.z_exps, self.coeff)

    def dump(self):
        """Debug format: one line per edge, 'row,col,side=spin'."""
        lines = []
        C = len(self.verticals[0])
        for i in range(1, self.spec.r + 1):
            for j in range(1, C + 1):
                lines.append(f"{i},{j},top={_spin_str(self.verticals[i - 1][j - 1])}")
                lines.append(f"{i},{j},left={_spin_str(self.horizontals[i - 1][j - 1])}")
                if j == C:
                    lines.append(f"{i},{j},right={_spin_str(self.horizontals[i - 1][j])}")
                if i == self.spec.r:
                    lines.append(f"{i},{j},bottom={_spin_str(self.verticals[i][j - 1])}")
        return lines

    def colored_edges(self):
        """Map color index -> frozenset of edges carrying that color."""
        out = {}
        for i, row in enumerate(self.verticals):
            for j, s in enumerate(row):
                for c, _ in s:
                    out.setdefault(c, set()).add(('v', i, j))
        for i, row in enumerate(self.horizontals):
            for j, s in enumerate(row):
                if s[0] == 'c':
                    out.setdefault(s[1], set()).add(('h', i, j))
        return {c: frozenset(es) for c, es in out.items()}


def _spin_str(spin):
    if isinstance(spin, frozenset):
        if not spin:
            return "+"
        parts = sorted(spin)
        if len(parts) == 1:
            c, w = parts[0]
            return f"c{c}w{w}"
        return "{" + ",".join(f"c{c}w{w}" for c, w in parts) + "}"
    kind, val = spin
    return f"{kind}{val}"


def enumerate_states(spec, collect=True):
    """All admissible states, in deterministic DFS order.

    The scan runs row by row, left to right; at each vertex the (top,
    left) spins are known and the weight tables admit at most a few
    (bottom, right) continuations.  With ``collect=False`` only the
    accumulated weights are returned (as (GaussElem, z_exps) pairs).
    """
    n, r = spec.n, spec.r
    cols = grid_columns(spec)
    C = len(cols)
    bnd = boundary(spec)
    verts = list(bnd.top)
    acc = {"v": 0, "omv": 0, "g": [], "z": [0] * r}
    horiz = [[None] * (C + 1) for _ in range(r)] if collect else None
    vsnaps = []
    out = []

    def accept():
        coeff = GaussElem.from_terms(
            n, [(acc["v"], tuple((a, 1) for a in acc["g"]), 1)])
        if acc["omv"]:
            coeff = coeff * GaussElem.one_minus_v(n) ** acc["omv"]
        if coeff.is_zero():
            return
        z_exps = tuple(acc["z"])
        if collect:
            verticals = tuple(vsnaps) + (tuple(verts),)
            horizontals = tuple(tuple(row) for row in horiz)
            out.append(LatticeState(spec, verticals, horizontals, coeff, z_exps))
        else:
            out.append((coeff, z_exps))

    def scan_row(i):
        vsnaps.append(tuple(verts))
        if collect:
            horiz[i][0] = bnd.left[i]
        step(i, 0, bnd.left[i])
        vsnaps.pop()

    def step(i, j, h):
        if j == C:
            if h != bnd.right[i]:
                return
            if i == r - 1:
                accept()
            else:
                scan_row(i + 1)
            return
        t = verts[j]
        last = i == r - 1
        for bottom, right, f in column_options(n, cols[j], t, h):
            if last and bottom:
                continue
            verts[j] = bottom
            acc["v"] += f[0]
            acc["omv"] += f[1]
            acc["g"].extend(f[2])
            acc["z"][i] += f[3]
            if collect:
                horiz[i][j + 1] = right
            step(i, j + 1, right)
            acc["z"][i] -= f[3]
            if f[2]:
                del acc["g"][len(acc["g"]) - len(f[2]):]
            acc["omv"] -= f[1]
            acc["v"] -= f[0]
            verts[j] = t

    scan_row(0)
    return out


def partition_function(spec):
    """Z(S) = sum over admissible states of the product of vertex weights."""
    total = LaurentPoly.zero(spec.r, spec.n)
    for coeff, z_exps in enumerate_states(spec, collect=False):
        total = total + LaurentPoly.monomial(spec.r, spec.n, z_exps, coeff)
    return total


def fuse(spec, target):
    """The fused system: same boundary datum, coarser grid.

    Valid transitions: monochrome -> color_fused (group the r columns of
    each block) and color_fused -> fully_fused (group the n scolor
    columns); weights of fused vertices are products of the constituent
    monochrome weights, so the partition function is preserved.
    """
    allowed = {("monochrome", "color_fused"), ("color_fused", "fully_fused")}
    if (spec.variant, target) not in allowed:
        raise ValueError(f"cannot fuse {spec.variant} -> {target}")
    return spec.with_variant(target)


def fuse_state(state, target):
    """Project a state onto the fused grid (verticals union over groups)."""
    spec = state.spec
    fused = fuse(spec, target)
    group = {"color_fused": spec.r, "fully_fused": spec.n}[target]
    C = len(state.verticals[0])
    verticals = tuple(
        tuple(frozenset().union(*row[k:k + group]) for k in range(0, C, group))
        for row in state.verticals)
    horizontals = tuple(tuple(row[j] for j in range(0, C + 1, group))
                        for row in state.horizontals)
    return LatticeState(fused, verticals, horizontals, state.coeff, state.z_exps)
