"""Exact arithmetic in the Gauss-sum coefficient ring.

The ring is generated over the rationals by an invertible symbol ``v`` and
formal symbols ``g(a)`` indexed by nonzero residues ``a`` mod ``n``, subject to

    g(0) = -v,        g(a) * g(n - a) = v   (a != 0 mod n).

For even ``n`` the self-paired case reads ``g(n/2)**2 = v``.  Elements are
kept in a canonical normal form so equality is structural:

* ``g(0)`` is rewritten to ``-v`` at construction and never stored;
* for every opposite pair the product ``g(a) g(n-a)`` is rewritten to ``v``,
  i.e. ``min(exp[a], exp[n-a]) == 0`` in a stored monomial;
* for even ``n``, the stored exponent of ``g(n/2)`` is 0 or 1;
* g-exponents are kept nonnegative; inverses route through
  ``g(a)**-1 = v**-1 * g(n-a)``.

Coefficients are exact rationals throughout.
"""

from __future__ import annotations

from fractions import Fraction


class RingMismatch(ValueError):
    """Raised when elements from rings with different moduli are combined."""


class NotMonomialError(ValueError):
    """Raised when an operation requires a single-monomial element."""


def _normalize_monomial(n, v_exp, g_exp):
    """Reduce a raw (v exponent, g multiset) pair to normal form.

    Returns (sign, v_exp, gkey) where gkey is a sorted tuple of (a, e)
    pairs with e > 0.  The sign is (-1)**e0 from rewriting g(0)**e0.
    """
    acc = {}
    for a, e in g_exp:
        if e == 0:
            continue
        a = a % n
        acc[a] = acc.get(a, 0) + e
    sign = 1
    e0 = acc.pop(0, 0)
    if e0:
        v_exp += e0
        if e0 % 2:
            sign = -1
    for a in sorted(acc):
        e = acc.get(a, 0)
        if e <= 0:
            continue
        b = (n - a) % n
        if a == b:
            # even n, a = n/2: g(n/2)^2 = v
            v_exp += e // 2
            acc[a] = e % 2
        elif b in acc:
            m = min(e, acc[b])
            if m > 0:
                v_exp += m
                acc[a] = e - m
                acc[b] -= m
    gkey = tuple((a, e) for a, e in sorted(acc.items()) if e > 0)
    return sign, v_exp, gkey


def _coerce_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


class GaussElem:
    """An element of the Gauss-sum coefficient ring, in normal form.

    ``terms`` maps normal-form monomials ``(v_exp, gkey)`` to nonzero
    rationals; the zero element is the empty map.  Values are immutable
    by convention: no method mutates ``terms`` after construction.
    """

    def __init__(self, n, terms):
        if n < 1:
            raise ValueError("ring modulus n must be >= 1")
        self.n = n
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def from_terms(cls, n, raw):
        """Build from an iterable of (v_exp, g_exp_pairs, rational)."""
        terms = {}
        for v_exp, g_exp, coef in raw:
            coef = _coerce_rational(coef)
            if coef == 0:
                continue
            sign, v_exp, gkey = _normalize_monomial(n, v_exp, g_exp)
            key = (v_exp, gkey)
            c = terms.get(key, Fraction(0)) + sign * coef
            if c:
                terms[key] = c
            else:
                terms.pop(key, None)
        return cls(n, terms)

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def one(cls, n):
        return cls(n, {(0, ()): Fraction(1)})

    @classmethod
    def rational(cls, n, q):
        q = _coerce_rational(q)
        return cls(n, {(0, ()): q} if q else {})

    @classmethod
    def v_power(cls, n, k=1):
        return cls(n, {(k, ()): Fraction(1)})

    @classmethod
    def one_minus_v(cls, n):
        return cls(n, {(0, ()): Fraction(1), (1, ()): Fraction(-1)})

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0, ()): Fraction(1)}

    def is_monomial(self):
        return len(self.terms) == 1

    def _check(self, other):
        if self.n != other.n:
            raise RingMismatch(f"mixed ring moduli {self.n} and {other.n}")

    # -- ring operations ----------------------------------------------

    def _wrap(self, x):
        if isinstance(x, GaussElem):
            self._check(x)
            return x
        return GaussElem.rational(self.n, x)

    def __add__(self, other):
        other = self._wrap(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return GaussElem(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return GaussElem(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        other = self._wrap(other)
        n = self.n
        terms = {}
        for (v1, g1), c1 in self.terms.items():
            for (v2, g2), c2 in other.terms.items():
                sign, v_exp, gkey = _normalize_monomial(n, v1 + v2, g1 + g2)
                key = (v_exp, gkey)
                c = terms.get(key, Fraction(0)) + sign * c1 * c2
                if c:
                    terms[key] = c
                else:
                    terms.pop(key, None)
        return GaussElem(n, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.invert() ** (-k)
        out = GaussElem.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussElem.rational(self.n, other)
        if not isinstance(other, GaussElem):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def invert(self):
        """Inverse of a monomial element; g(a)^-1 rewrites to v^-1 g(n-a)."""
        if len(self.terms) != 1:
            raise NotMonomialError("only monomial elements are invertible here")
        ((v_exp, gkey), coef), = self.terms.items()
        inv_g = []
        inv_v = -v_exp
        for a, e in gkey:
            inv_v -= e
            inv_g.append(((self.n - a) % self.n, e))
        return GaussElem.from_terms(self.n, [(inv_v, tuple(inv_g), Fraction(1) / coef)])

    def divide_exact(self, other):
        """Exact division by ``other``; raises NotMonomialError on failure.

        Monomial divisors invert directly; general divisors are divided in
        the free Laurent-monomial coordinates (the normal-form monomials
        form a free abelian group, so the ring is a Laurent polynomial
        ring over the rationals).
        """
        other = self._wrap(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero GaussElem")
        if other.is_monomial():
            return self * other.invert()
        quot = _laurent_div(self._flatten(), other._flatten())
        if quot is None:
            raise NotMonomialError("GaussElem division is not exact")
        return GaussElem._unflatten(self.n, quot)

    # -- flattening to free Laurent coordinates ------------------------

    def _flatten(self):
        return {_flatten_mono(self.n, key): c for key, c in self.terms.items()}

    @classmethod
    def _unflatten(cls, n, flat):
        raw = []
        for vec, c in flat.items():
            v_exp, g_exp = _unflatten_mono(n, vec)
            raw.append((v_exp, g_exp, c))
        return cls.from_terms(n, raw)

    # -- evaluation -----------------------------------------------------

    def specialize(self, v_val, g_vals, check=True):
        """Evaluate at exact rational values of v and g(a).

        ``g_vals`` maps every residue 1..n-1 to a nonzero rational; the
        admissibility relations are verified up front when ``check``.
        """
        v_val = _coerce_rational(v_val)
        if check:
            check_g_values(self.n, v_val, g_vals)
        total = Fraction(0)
        for (v_exp, gkey), coef in self.terms.items():
            val = coef * v_val ** v_exp
            for a, e in gkey:
                val *= _coerce_rational(g_vals[a]) ** e
            total += val
        return total

    # -- canonical output -----------------------------------------------

    def _sort_key(self, key):
        v_exp, gkey = key
        gvec = [0] * self.n
        for a, e in gkey:
            gvec[a] = e
        return (v_exp, tuple(gvec))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self._sort_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [_monomial_str(key, coef) for key, coef in self.sorted_terms()]
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"coef": [c.numerator, c.denominator], "v_exp": v, "g_exp": list(g)}
                for (v, g), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        raw = [
            (t["v_exp"], tuple((a, e) for a, e in t["g_exp"]),
             Fraction(t["coef"][0], t["coef"][1]))
            for t in data["terms"]
        ]
        return cls.from_terms(data["n"], raw)


def gauss_symbol(n, a):
    """The ring element g(a); g(0) is rewritten to -v."""
    return GaussElem.from_terms(n, [(0, ((a % n, 1),), Fraction(1))])


def _monomial_str(key, coef):
    v_exp, gkey = key
    factors = []
    if v_exp:
        factors.append("v" if v_exp == 1 else f"v^{v_exp}")
    for a, e in gkey:
        factors.append(f"g[{a}]" if e == 1 else f"g[{a}]^{e}")
    if not factors:
        return str(coef)
    if coef == 1:
        return "*".join(factors)
    if coef == -1:
        return "-" + "*".join(factors)
    return "*".join([str(coef)] + factors)


def check_g_values(n, v_val, g_vals):
    """Validate admissibility: g(a)g(n-a) = v for all nonzero a, v != 0."""
    v_val = _coerce_rational(v_val)
    if v_val == 0:
        raise ValueError("v must be nonzero")
    for a in range(1, n):
        if a not in g_vals:
            raise ValueError(f"missing g value for residue {a}")
        ga = _coerce_rational(g_vals[a])
        gb = _coerce_rational(g_vals[n - a])
        if ga * gb != v_val:
            raise ValueError(f"inadmissible g values: g({a})g({n-a}) != v")


def admissible_g_values(n, rng):
    """Sample a random admissible (v, {g(a)}) pair with exact entries.

    For even n we need v to be a perfect square (v = g(n/2)**2), so v is
    always drawn as t**2 for a random nonzero rational t; this also keeps
    v away from 0 and 1.
    """
    while True:
        t = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if t != 0 and t * t != 1:
            break
    v_val = t * t
    g_vals = {}
    for a in range(1, n):
        b = n - a
        if a == b:
            g_vals[a] = t if rng.random() < 0.5 else -t
        elif a < b:
            while True:
                ga = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                if ga != 0:
                    break
            g_vals[a] = ga
            g_vals[b] = v_val / ga
    return v_val, g_vals


# -- free-coordinate helpers used by exact division ---------------------

def _gauss_reps(n):
    """Residues a with 1 <= a <= n//2; the free g-coordinates."""
    return list(range(1, n // 2 + 1))


def _flatten_mono(n, key):
    v_exp, gkey = key
    reps = _gauss_reps(n)
    idx = {a: i for i, a in enumerate(reps)}
    even = n % 2 == 0
    t = 2 * v_exp if even else v_exp
    xs = [0] * len(reps)
    for a, e in gkey:
        b = (n - a) % n
        if even and a == n // 2:
            t += e
        elif a <= n // 2:
            xs[idx[a]] += e
        else:
            # g(n-b) with b < n/2 counts as v * g(b)^-1
            t += 2 * e if even else e
            xs[idx[b]] -= e
    return (t, *xs)


def _unflatten_mono(n, vec):
    t, *xs = vec
    reps = _gauss_reps(n)
    even = n % 2 == 0
    g_exp = []
    correction = 0
    for a, x in zip(reps, xs):
        if even and a == n // 2:
            continue
        if x >= 0:
            if x:
                g_exp.append((a, x))
        else:
            g_exp.append((n - a, -x))
            correction += -x
    if even:
        half = t % 2
        if half:
            g_exp.append((n // 2, 1))
        v_exp = (t - half) // 2 - correction
    else:
        v_exp = t - correction
    return v_exp, tuple(g_exp)


def _laurent_div(p, q):
    """Exact division of dict[int-tuple -> Fraction] Laurent polynomials.

    Returns the quotient dict, or None when no exact quotient exists.
    Terms are eliminated in descending lexicographic order; quotient
    exponents are bounded below by lexmin(p) - lexmin(q), which makes the
    loop terminate on inexact input.
    """
    if not q:
        raise ZeroDivisionError
    if not p:
        return {}
    lead_q = max(q)
    min_bound = tuple(a - b for a, b in zip(min(p), min(q)))
    rem = dict(p)
    quot = {}
    while rem:
        lead_r = max(rem)
        t_exp = tuple(a - b for a, b in zip(lead_r, lead_q))
        if t_exp < min_bound:
            return None
        t_coef = rem[lead_r] / q[lead_q]
        quot[t_exp] = t_coef
        for e, c in q.items():
            key = tuple(a + b for a, b in zip(t_exp, e))
            s = rem.get(key, Fraction(0)) - t_coef * c
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return quot
