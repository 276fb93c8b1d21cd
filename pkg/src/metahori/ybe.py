"""R-matrices and Yang-Baxter verifiers (auxiliary RTT, fused RTT, RRR).

An R-vertex is read as a crossing with two incoming edges on the left
(NW, SW) and two outgoing on the right (NE, SE).  In R_{z_i, z_j} the
z_i strand enters at SW and leaves at NE, the z_j strand enters at NW
and leaves at SE; weights are functions of the four edge spins only.

All verifiers accumulate both sides of the identity over interior spins
and report any boundary tuple where they differ; failures are data, not
exceptions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .coefficients import GaussElem, admissible_g_values, gauss_symbol
from .laurent import LaurentPoly
from . import lattice


def horizontal_spins(n, r):
    """The n+r horizontal spins: colors then scolors, ascending."""
    return [('c', k) for k in range(1, r + 1)] + [('w', x) for x in range(n)]


def successor(n, r, c, w):
    """The cyclic successor (c', w') of a column label (c, w)."""
    if c < r:
        return c + 1, w
    return 1, (w - 1) % n


def _zz(rank, n, i, j, a, b, coeff=1):
    e = [0] * rank
    e[i - 1] += a
    e[j - 1] += b
    return LaurentPoly.monomial(rank, n, e, coeff)


def r_weight_mono(n, rank, i, j, c, w, nw, sw, ne, se):
    """Monochrome R-matrix weight for column data (c, w), rows (z_i, z_j).

    Unlisted spin patterns (anything violating color/scolor conservation)
    get weight zero.
    """
    omv = GaussElem.one_minus_v(n)
    v = GaussElem.v_power(n)

    def zi(a, b=0, coeff=1):
        return _zz(rank, n, i, j, a, b, coeff)

    def zj(b, a=0, coeff=1):
        return _zz(rank, n, i, j, a, b, coeff)

    zin_m_zjn = zi(n) - zj(n)
    kn, vn = nw
    ks, vs = sw
    if kn == ks == 'c':
        if nw == sw == ne == se:
            return zi(n) - zj(n, coeff=v)
        if vn != vs and ne == sw and se == nw:
            return zin_m_zjn * v if vs < vn else zin_m_zjn
        if vn != vs and ne == nw and se == sw:
            a, b = vs, vn
            if a < b < c or c <= a < b:
                return zi(n, coeff=omv)
            if a < c <= b:
                return zi(n - 1, 1, coeff=omv)
            if a >= c > b:
                return zj(n - 1, 1, coeff=omv)
            return zj(n, coeff=omv)
        return LaurentPoly.zero(rank, n)
    if kn == ks == 'w':
        if nw == sw == ne == se:
            return zj(n) - zi(n, coeff=v)
        x, y = vs, vn
        if x != y and ne == sw and se == nw:
            return zin_m_zjn * gauss_symbol(n, y - x)
        if x != y and ne == nw and se == sw:
            # (z_j / z_i)^(y - x) twist
            tw = _zz(rank, n, i, j, -(y - x), y - x)
            return (zi(n) if y > x else zj(n)) * tw * omv
        return LaurentPoly.zero(rank, n)
    # mixed color/scolor
    if ne == sw and se == nw:
        return zin_m_zjn * v if ks == 'w' else zin_m_zjn
    if ne == nw and se == sw:
        if ks == 'c':
            a, x = vs, vn
            m = x - w if a < c else x - w - 1
            tw = _zz(rank, n, i, j, -m, m)
            lead = zi(n) if (a < c and w <= x) or (a >= c and w < x) else zj(n)
            return lead * tw * omv
        a, x = vn, vs
        m = x - w if a < c else x - w - 1
        tw = _zz(rank, n, i, j, m, -m)
        lead = zj(n) if (a < c and w <= x) or (a >= c and w < x) else zi(n)
        return lead * tw * omv
    return LaurentPoly.zero(rank, n)


def r_weight_fused(n, rank, i, j, nw, sw, ne, se):
    """Fully-fused R-matrix weight, coded directly from its own table.

    It agrees with r_weight_mono at (c, w) = (c_1, w_{n-1}); that identity
    is checked exhaustively in the test suite.
    """
    omv = GaussElem.one_minus_v(n)
    v = GaussElem.v_power(n)

    def zi(a, b=0, coeff=1):
        return _zz(rank, n, i, j, a, b, coeff)

    def zj(b, a=0, coeff=1):
        return _zz(rank, n, i, j, a, b, coeff)

    zin_m_zjn = zi(n) - zj(n)
    kn, vn = nw
    ks, vs = sw
    if kn == ks == 'c':
        if nw == sw == ne == se:
            return zi(n) - zj(n, coeff=v)
        if vn != vs and ne == sw and se == nw:
            return zin_m_zjn * v if vs < vn else zin_m_zjn
        if vn != vs and ne == nw and se == sw:
            return zi(n, coeff=omv) if vs < vn else zj(n, coeff=omv)
        return LaurentPoly.zero(rank, n)
    if kn == ks == 'w':
        if nw == sw == ne == se:
            return zj(n) - zi(n, coeff=v)
        x, y = vs, vn
        if x != y and ne == sw and se == nw:
            return zin_m_zjn * gauss_symbol(n, y - x)
        if x != y and ne == nw and se == sw:
            tw = _zz(rank, n, i, j, -(y - x), y - x)
            return (zi(n) if y > x else zj(n)) * tw * omv
        return LaurentPoly.zero(rank, n)
    if ne == sw and se == nw:
        return zin_m_zjn * v if ks == 'w' else zin_m_zjn
    if ne == nw and se == sw:
        if ks == 'c':
            x = vn
            return zi(n, coeff=omv) * _zz(rank, n, i, j, -x, x)
        x = vs
        return zj(n, coeff=omv) * _zz(rank, n, i, j, x, -x)
    return LaurentPoly.zero(rank, n)


@dataclass
class Report:
    """Outcome of a verifier sweep; failures are boundary tuples with sides."""

    suite: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def add_failure(self, boundary, lhs, rhs):
        self.failures.append({"boundary": boundary, "lhs": str(lhs), "rhs": str(rhs)})

    def to_json(self):
        return {"suite": self.suite, "checked": self.checked,
                "failures": self.failures}

    def summary(self):
        status = "pass" if self.ok else f"FAIL ({len(self.failures)} failures)"
        return f"{self.suite}: {status}, {self.checked} cases checked"


def _spin_name(s):
    if isinstance(s, frozenset):
        return lattice._spin_str(s)
    return f"{s[0]}{s[1]}"


def _r_options(weight_fn, spins):
    """Map (nw, sw) -> [(ne, se, weight)] with zero weights dropped."""
    opts = {}
    for nw in spins:
        for sw in spins:
            lst = []
            for ne in spins:
                for se in spins:
                    wgt = weight_fn(nw, sw, ne, se)
                    if not wgt.is_zero():
                        lst.append((ne, se, wgt))
            opts[(nw, sw)] = lst
    return opts


def _t_options_mono(n, rank, pos, c, w, spins):
    """Map (top, left) -> [(bottom, right, weight)] for a monochrome T-vertex.

    ``pos`` is the 1-based z-variable carried by the vertex row.
    """
    opts = {}
    for top in (False, True):
        for left in spins:
            lst = []
            for bot, rgt, f in lattice._mono_options(n, c, w, top, left):
                e = [0] * rank
                e[pos - 1] = f[3]
                wgt = LaurentPoly.monomial(rank, n, e, lattice.factors_coeff(n, f))
                lst.append((bot, rgt, wgt))
            opts[(top, left)] = lst
    return opts


def _t_options_fused(n, r, rank, pos, spins):
    """Map (top_set, left) -> [(bottom_set, right, weight)] for fused T."""
    subcols = tuple(lattice.grid_columns(
        lattice.SystemSpec(n, r, (0,) * r, (0,) * r,
                           _identity(r), "fully_fused", 1))[0])
    pairs = list(subcols)
    opts = {}
    for top in _all_subsets(pairs):
        for left in spins:
            lst = []
            for bot, rgt, f in lattice.column_options(n, subcols, top, left):
                e = [0] * rank
                e[pos - 1] = f[3]
                wgt = LaurentPoly.monomial(rank, n, e, lattice.factors_coeff(n, f))
                lst.append((bot, rgt, wgt))
            opts[(top, left)] = lst
    return opts, pairs


def _identity(r):
    from .weyl import Permutation
    return Permutation.identity(r)


def _all_subsets(items):
    out = [frozenset()]
    for it in items:
        out += [s | {it} for s in out]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _accumulate_sides(r_first, t_i, t_j, r_second, verticals, spins):
    """Both sides of an RTT-shaped identity, accumulated per boundary.

    Left system: R then a column of two T's (z_i above z_j); right system:
    the T's (z_j above z_i) then the successor R.  Keys are full boundary
    tuples (tau, sigma, beta, theta, rho, alpha).
    """
    lhs = {}
    rhs = {}
    for tau in spins:
        for sigma in spins:
            for beta in verticals:
                for nu, mu, w1 in r_first[(tau, sigma)]:
                    for gamma, theta, w2 in t_i[(beta, nu)]:
                        w12 = w1 * w2
                        for alpha, rho, w3 in t_j[(gamma, mu)]:
                            key = (tau, sigma, beta, theta, rho, alpha)
                            acc = lhs.get(key)
                            term = w12 * w3
                            lhs[key] = term if acc is None else acc + term
                for delta, psi, w1 in t_j[(beta, tau)]:
                    for alpha, phi, w2 in t_i[(delta, sigma)]:
                        w12 = w1 * w2
                        for theta, rho, w3 in r_second[(psi, phi)]:
                            key = (tau, sigma, beta, theta, rho, alpha)
                            acc = rhs.get(key)
                            term = w12 * w3
                            rhs[key] = term if acc is None else acc + term
    return lhs, rhs


def _compare_maps(report, lhs, rhs, total, label=None):
    report.checked += total
    zero = None
    for key in sorted(lhs.keys() | rhs.keys(), key=repr):
        a = lhs.get(key)
        b = rhs.get(key)
        if a is None:
            a = LaurentPoly.zero(b.rank, b.n)
        if b is None:
            b = LaurentPoly.zero(a.rank, a.n)
        if a != b:
            name = tuple(_spin_name(s) for s in key)
            if label is not None:
                name = (label,) + name
            report.add_failure(name, a, b)
    return report


def verify_aux_ybe(n, r):
    """Auxiliary Yang-Baxter equation for every column label (c, w)."""
    spins = horizontal_spins(n, r)
    report = Report(f"ybe-aux n={n} r={r}")
    for c in range(1, r + 1):
        for w in range(n):
            c2, w2 = successor(n, r, c, w)
            r_first = _r_options(
                lambda nw, sw, ne, se: r_weight_mono(n, 2, 1, 2, c, w, nw, sw, ne, se),
                spins)
            r_second = _r_options(
                lambda nw, sw, ne, se: r_weight_mono(n, 2, 1, 2, c2, w2, nw, sw, ne, se),
                spins)
            t_i = _t_options_mono(n, 2, 1, c, w, spins)
            t_j = _t_options_mono(n, 2, 2, c, w, spins)
            verticals = (False, True)
            lhs, rhs = _accumulate_sides(r_first, t_i, t_j, r_second, verticals, spins)
            total = len(spins) ** 4 * len(verticals) ** 2
            _compare_maps(report, lhs, rhs, total, label=f"c{c}w{w}")
    return report


def verify_fused_rtt(n, r):
    """RTT Yang-Baxter equation for the fully-fused model.

    The auxiliary space W is the full 2^(nr) power set of (color, scolor)
    pairs; n*r is capped so the sweep stays enumerable.
    """
    if n * r > 6:
        raise ValueError("fused RTT sweep requires n*r <= 6")
    spins = horizontal_spins(n, r)
    report = Report(f"ybe-rtt n={n} r={r}")
    t_i, pairs = _t_options_fused(n, r, 2, 1, spins)
    t_j, _ = _t_options_fused(n, r, 2, 2, spins)
    r_opts = _r_options(
        lambda nw, sw, ne, se: r_weight_fused(n, 2, 1, 2, nw, sw, ne, se),
        spins)
    verticals = _all_subsets(pairs)
    lhs, rhs = _accumulate_sides(r_opts, t_i, t_j, r_opts, verticals, spins)
    total = len(spins) ** 4 * len(verticals) ** 2
    return _compare_maps(report, lhs, rhs, total)


def verify_rrr(n, r):
    """RRR Yang-Baxter equation for the fully-fused R-matrix, symbolic."""
    spins = horizontal_spins(n, r)
    report = Report(f"ybe-rrr n={n} r={r}")
    r12 = _r_options(lambda nw, sw, ne, se: r_weight_fused(n, 3, 1, 2, nw, sw, ne, se), spins)
    r13 = _r_options(lambda nw, sw, ne, se: r_weight_fused(n, 3, 1, 3, nw, sw, ne, se), spins)
    r23 = _r_options(lambda nw, sw, ne, se: r_weight_fused(n, 3, 2, 3, nw, sw, ne, se), spins)
    lhs = {}
    rhs = {}
    for a_i in spins:
        for a_j in spins:
            for a_k in spins:
                key_in = (a_i, a_j, a_k)
                for x_i, y_j, w1 in r12[(a_j, a_i)]:
                    for b_i, u_k, w2 in r13[(a_k, x_i)]:
                        w12 = w1 * w2
                        for b_j, b_k, w3 in r23[(u_k, y_j)]:
                            key = key_in + (b_i, b_j, b_k)
                            acc = lhs.get(key)
                            term = w12 * w3
                            lhs[key] = term if acc is None else acc + term
                for x_j, y_k, w1 in r23[(a_k, a_j)]:
                    for u_i, b_k, w2 in r13[(y_k, a_i)]:
                        w12 = w1 * w2
                        for b_i, b_j, w3 in r12[(x_j, u_i)]:
                            key = key_in + (b_i, b_j, b_k)
                            acc = rhs.get(key)
                            term = w12 * w3
                            rhs[key] = term if acc is None else acc + term
    total = len(spins) ** 6
    return _compare_maps(report, lhs, rhs, total)


# -- randomized numeric passes -------------------------------------------

def _rand_spin(rng, spins):
    return spins[rng.randrange(len(spins))]


def _rand_z(rng):
    from fractions import Fraction
    while True:
        z = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if z != 0:
            return z


def verify_aux_ybe_numeric(n, r, samples=1000, seed=1):
    """Randomized numeric auxiliary-YBE check (admissible specializations).

    Each sample draws a column label, a boundary tuple, admissible
    (v, g) values and nonzero z values, then compares both sides exactly
    in rational arithmetic.
    """
    from fractions import Fraction

    rng = random.Random(seed)
    spins = horizontal_spins(n, r)
    report = Report(f"ybe-aux-numeric n={n} r={r}")
    for _ in range(samples):
        c = rng.randint(1, r)
        w = rng.randrange(n)
        c2, w2 = successor(n, r, c, w)
        v_val, g_vals = admissible_g_values(n, rng)
        z_vals = [_rand_z(rng), _rand_z(rng)]

        def rnum(cc, ww, nw, sw, ne, se):
            return r_weight_mono(n, 2, 1, 2, cc, ww, nw, sw, ne, se).specialize(
                z_vals, v_val, g_vals, check=False)

        def tnum(pos, top, left, bot, rgt):
            f = lattice.mono_vertex_weight(n, c, w, top, left, bot, rgt)
            if f is None:
                return Fraction(0)
            val = lattice.factors_coeff(n, f).specialize(v_val, g_vals, check=False)
            return val * z_vals[pos - 1] ** f[3]

        tau, sigma, theta, rho = (_rand_spin(rng, spins) for _ in range(4))
        beta = rng.random() < 0.5
        alpha = rng.random() < 0.5
        lhs = Fraction(0)
        for nu in spins:
            for mu in spins:
                w1 = rnum(c, w, tau, sigma, nu, mu)
                if not w1:
                    continue
                for gamma in (False, True):
                    lhs += w1 * tnum(1, beta, nu, gamma, theta) \
                        * tnum(2, gamma, mu, alpha, rho)
        rhs = Fraction(0)
        for delta in (False, True):
            for psi in spins:
                w1 = tnum(2, beta, tau, delta, psi)
                if not w1:
                    continue
                for phi in spins:
                    w2 = tnum(1, delta, sigma, alpha, phi)
                    if not w2:
                        continue
                    rhs += w1 * w2 * rnum(c2, w2, psi, phi, theta, rho)
        report.checked += 1
        if lhs != rhs:
            report.add_failure(
                tuple(_spin_name(s) for s in (tau, sigma, theta, rho))
                + (beta, alpha, f"c{c}w{w}"), lhs, rhs)
    return report


def verify_rrr_numeric(n, r, samples=3, seed=1):
    """Randomized numeric RRR check: full out-maps at random specializations."""
    from fractions import Fraction

    rng = random.Random(seed)
    spins = horizontal_spins(n, r)
    report = Report(f"ybe-rrr-numeric n={n} r={r}")
    for _ in range(samples):
        v_val, g_vals = admissible_g_values(n, rng)
        z_vals = [_rand_z(rng), _rand_z(rng), _rand_z(rng)]

        def ropt(i, j):
            opts = {}
            for nw in spins:
                for sw in spins:
                    lst = []
                    for ne in spins:
                        for se in spins:
                            w = r_weight_fused(n, 3, i, j, nw, sw, ne, se)
                            if not w.is_zero():
                                lst.append((ne, se, w.specialize(
                                    z_vals, v_val, g_vals, check=False)))
                    opts[(nw, sw)] = lst
            return opts

        r12, r13, r23 = ropt(1, 2), ropt(1, 3), ropt(2, 3)
        for a_i in spins:
            for a_j in spins:
                for a_k in spins:
                    lhs = {}
                    rhs = {}
                    for x_i, y_j, w1 in r12[(a_j, a_i)]:
                        for b_i, u_k, w2 in r13[(a_k, x_i)]:
                            for b_j, b_k, w3 in r23[(u_k, y_j)]:
                                key = (b_i, b_j, b_k)
                                lhs[key] = lhs.get(key, Fraction(0)) + w1 * w2 * w3
                    for x_j, y_k, w1 in r23[(a_k, a_j)]:
                        for u_i, b_k, w2 in r13[(y_k, a_i)]:
                            for b_i, b_j, w3 in r12[(x_j, u_i)]:
                                key = (b_i, b_j, b_k)
                                rhs[key] = rhs.get(key, Fraction(0)) + w1 * w2 * w3
                    report.checked += 1
                    for key in lhs.keys() | rhs.keys():
                        a = lhs.get(key, Fraction(0))
                        b = rhs.get(key, Fraction(0))
                        if a != b:
                            report.add_failure(
                                tuple(_spin_name(s) for s in (a_i, a_j, a_k) + key),
                                a, b)
    return report
