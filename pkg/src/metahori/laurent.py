"""Multivariate Laurent polynomials in z_1..z_r over the Gauss-sum ring.

Exponent vectors are plain int tuples of length ``rank``.  The canonical
term order is descending lexicographic on exponent vectors; printing and
iteration follow it so output is reproducible.  ``RationalLaurent`` is a
thin numerator/denominator pair used only where an intermediate
denominator is unavoidable; everything else stays polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .coefficients import GaussElem, NotMonomialError, RingMismatch, check_g_values

#: counters for guard events; see the polynomiality acceptance criterion
GUARD_EVENTS = {"not_divisible": 0, "grading_violation": 0}


class NotDivisible(ArithmeticError):
    """Exact division failed; upstream this signals a violated grading."""

    def __init__(self, msg="quotient is not a Laurent polynomial"):
        GUARD_EVENTS["not_divisible"] += 1
        super().__init__(msg)


def _coerce_coeff(n, c):
    if isinstance(c, GaussElem):
        return c
    return GaussElem.rational(n, c)


class LaurentPoly:
    """Finitely supported map from Z^rank exponent vectors to GaussElem."""

    def __init__(self, rank, n, terms):
        self.rank = rank
        self.n = n
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def from_terms(cls, rank, n, items):
        terms = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != rank:
                raise ValueError("exponent vector has wrong length")
            coeff = _coerce_coeff(n, coeff)
            acc = terms.get(exps)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = coeff
        return cls(rank, n, terms)

    @classmethod
    def zero(cls, rank, n):
        return cls(rank, n, {})

    @classmethod
    def one(cls, rank, n):
        return cls.const(rank, n, 1)

    @classmethod
    def const(cls, rank, n, c):
        c = _coerce_coeff(n, c)
        return cls(rank, n, {} if c.is_zero() else {(0,) * rank: c})

    @classmethod
    def monomial(cls, rank, n, exps, coeff=1):
        """The one-term polynomial coeff * z^exps."""
        coeff = _coerce_coeff(n, coeff)
        exps = tuple(exps)
        if len(exps) != rank:
            raise ValueError("exponent vector has wrong length")
        return cls(rank, n, {} if coeff.is_zero() else {exps: coeff})

    # -- queries --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.rank != other.rank or self.n != other.n:
            raise RingMismatch("mixed polynomial rings")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussElem)):
            other = LaurentPoly.const(self.rank, self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.rank, self.n) == (other.rank, other.n) and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, self.n, frozenset((e, hash(c)) for e, c in self.terms.items())))

    # -- ring operations ----------------------------------------------

    def _wrap(self, x):
        if isinstance(x, LaurentPoly):
            self._check(x)
            return x
        return LaurentPoly.const(self.rank, self.n, x)

    def __add__(self, other):
        other = self._wrap(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            c = c if acc is None else acc + c
            if c.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = c
        return LaurentPoly(self.rank, self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.rank, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussElem)):
            return self.scale(other)
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = terms.get(e)
                c = c if acc is None else acc + c
                if c.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = c
        return LaurentPoly(self.rank, self.n, terms)

    def __rmul__(self, other):
        return self * other

    def scale(self, c):
        c = _coerce_coeff(self.n, c)
        if c.is_zero():
            return LaurentPoly.zero(self.rank, self.n)
        out = {}
        for e, c0 in self.terms.items():
            c1 = c0 * c
            if not c1.is_zero():
                out[e] = c1
        return LaurentPoly(self.rank, self.n, out)

    def mul_monomial(self, exps, coeff=1):
        """Fast multiplication by a single term coeff * z^exps."""
        coeff = _coerce_coeff(self.n, coeff)
        if coeff.is_zero():
            return LaurentPoly.zero(self.rank, self.n)
        exps = tuple(exps)
        out = {}
        for e, c in self.terms.items():
            c1 = c * coeff
            if not c1.is_zero():
                out[tuple(a + b for a, b in zip(e, exps))] = c1
        return LaurentPoly(self.rank, self.n, out)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers of polynomials are not defined")
        out = LaurentPoly.one(self.rank, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- Weyl action ----------------------------------------------------

    def weyl_act(self, w):
        """Permute variables: z_i -> z_{w(i)}, i.e. exponent lambda -> w(lambda)."""
        if w.r != self.rank:
            raise ValueError("permutation rank mismatch")
        out = {}
        ol = w.one_line
        for e, c in self.terms.items():
            ne = [0] * self.rank
            for i0, k in enumerate(e):
                ne[ol[i0] - 1] = k
            out[tuple(ne)] = c
        return LaurentPoly(self.rank, self.n, out)

    # -- division --------------------------------------------------------

    def exact_div(self, q):
        """Return t with t*q == self, or raise NotDivisible.

        Leading-term elimination in the descending lex order.  The lex-min
        term of an exact quotient equals lexmin(self) - lexmin(q) (the ring
        of coefficients is a domain), which bounds the loop on bad input.
        """
        q = self._wrap(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        lead_q = max(q.terms)
        lead_qc = q.terms[lead_q]
        min_bound = tuple(a - b for a, b in zip(min(self.terms), min(q.terms)))
        rem = dict(self.terms)
        quot = {}
        while rem:
            lead_r = max(rem)
            t_exp = tuple(a - b for a, b in zip(lead_r, lead_q))
            if t_exp < min_bound:
                raise NotDivisible()
            try:
                t_coef = rem[lead_r].divide_exact(lead_qc)
            except NotMonomialError:
                raise NotDivisible() from None
            quot[t_exp] = t_coef
            for e, c in q.terms.items():
                key = tuple(a + b for a, b in zip(t_exp, e))
                acc = rem.get(key)
                s = -(t_coef * c) if acc is None else acc - t_coef * c
                if s.is_zero():
                    rem.pop(key, None)
                else:
                    rem[key] = s
        return LaurentPoly(self.rank, self.n, quot)

    # -- evaluation -------------------------------------------------------

    def specialize(self, z_vals, v_val, g_vals, check=True):
        """Exact numeric evaluation; z values must all be nonzero."""
        z_vals = [Fraction(z) if isinstance(z, int) else z for z in z_vals]
        if len(z_vals) != self.rank:
            raise ValueError("wrong number of z values")
        if any(z == 0 for z in z_vals):
            raise ValueError("z values must be nonzero")
        if check:
            check_g_values(self.n, v_val, g_vals)
        total = Fraction(0)
        for e, c in self.terms.items():
            val = c.specialize(v_val, g_vals, check=False)
            for z, k in zip(z_vals, e):
                val *= z ** k
            total += val
        return total

    # -- canonical output ---------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            zs = [f"z{i + 1}" + (f"^{k}" if k != 1 else "")
                  for i, k in enumerate(e) if k != 0]
            cs = str(c)
            if c.is_monomial():
                if cs == "1" and zs:
                    parts.append("*".join(zs))
                    continue
                if cs == "-1" and zs:
                    parts.append("-" + "*".join(zs))
                    continue
            elif zs:
                cs = f"({cs})"
            parts.append("*".join([cs] + zs))
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return {
            "rank": self.rank,
            "terms": [{"z_exp": list(e), "coeff": c.to_json()}
                      for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data):
        rank = data["rank"]
        terms = [(tuple(t["z_exp"]), GaussElem.from_json(t["coeff"]))
                 for t in data["terms"]]
        n = terms[0][1].n if terms else 1
        return cls.from_terms(rank, n, terms)


def alpha_vec(rank, i, k=1):
    """Exponent vector of k*alpha_i = k*(e_i - e_{i+1}); i is 1-based."""
    if not 1 <= i < rank:
        raise ValueError(f"simple root index {i} out of range for rank {rank}")
    e = [0] * rank
    e[i - 1] = k
    e[i] = -k
    return tuple(e)


class RationalLaurent:
    """A num/den pair of Laurent polynomials with den != 0.

    Equality is tested by cross-multiplication; reduction to a polynomial
    happens only through exact division.
    """

    def __init__(self, num, den=None):
        if den is None:
            den = LaurentPoly.one(num.rank, num.n)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    def __add__(self, other):
        other = self._wrap(other)
        return RationalLaurent(self.num * other.den + other.num * self.den,
                               self.den * other.den)

    def __sub__(self, other):
        other = self._wrap(other)
        return RationalLaurent(self.num * other.den - other.num * self.den,
                               self.den * other.den)

    def __neg__(self):
        return RationalLaurent(-self.num, self.den)

    def __mul__(self, other):
        other = self._wrap(other)
        return RationalLaurent(self.num * other.num, self.den * other.den)

    def _wrap(self, x):
        if isinstance(x, RationalLaurent):
            return x
        if isinstance(x, LaurentPoly):
            return RationalLaurent(x)
        return RationalLaurent(LaurentPoly.const(self.num.rank, self.num.n, x))

    def __eq__(self, other):
        other = self._wrap(other)
        return self.num * other.den == other.num * self.den

    def is_zero(self):
        return self.num.is_zero()

    def to_poly(self):
        """Exact reduction to a LaurentPoly; raises NotDivisible."""
        return self.num.exact_div(self.den)

    def __str__(self):
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__
