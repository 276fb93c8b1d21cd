"""GL_r metaplectic Iwahori Whittaker values via vector operators.

A WhittakerVector holds one Laurent polynomial per functional index
theta in (Z/nZ)^r.  Its grading invariant: every exponent lam occurring
in component theta satisfies lam == floor(theta) - rho (mod n)
componentwise, with rho = (r-1, ..., 0).

The operator T_i routes mass between components theta and s_i(theta).
Its application is monomial-wise and division-free: for a monomial z^lam
in component theta, with d = lam_i - lam_{i+1} and
k = (ceiln(theta_i - theta_{i+1}) - 1 - d) / n (an integer exactly when
the grading holds), the diagonal part is a finite geometric sum of
z^{j n alpha_i} shifts and the off-diagonal part moves g(.) z^{s_i lam
- alpha_i} into component s_i(theta).  A verbatim rational form of the
same operator is kept alongside as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import GaussElem, gauss_symbol
from .laurent import GUARD_EVENTS, LaurentPoly, RationalLaurent, alpha_vec
from .weyl import (Permutation, bruhat_path, ceiln, floorn, is_almost_dominant,
                   length, staircase)


class NotAlmostDominant(ValueError):
    """The weight is not w'-almost dominant, so the value would vanish."""


class GradingViolation(ValueError):
    """An operator met a monomial outside the mod-n support grading."""

    def __init__(self, msg="component support violates the mod-n grading"):
        GUARD_EVENTS["grading_violation"] += 1
        super().__init__(msg)


class WhittakerVector:
    """Family of Laurent polynomials indexed by theta in (Z/nZ)^r."""

    def __init__(self, n, r, components=None):
        self.n = n
        self.r = r
        self.components = {}
        if components:
            for theta, poly in components.items():
                self[theta] = poly

    def __getitem__(self, theta):
        theta = tuple(t % self.n for t in theta)
        return self.components.get(theta, LaurentPoly.zero(self.r, self.n))

    def __setitem__(self, theta, poly):
        theta = tuple(t % self.n for t in theta)
        if poly.is_zero():
            self.components.pop(theta, None)
        else:
            self.components[theta] = poly

    def __eq__(self, other):
        return (self.n, self.r) == (other.n, other.r) \
            and self.components == other.components

    def __add__(self, other):
        out = WhittakerVector(self.n, self.r, dict(self.components))
        for theta, poly in other.components.items():
            out[theta] = out[theta] + poly
        return out

    def scale(self, c):
        return WhittakerVector(
            self.n, self.r,
            {t: p.scale(c) for t, p in self.components.items()})

    def is_zero(self):
        return not self.components

    def sum_components(self):
        total = LaurentPoly.zero(self.r, self.n)
        for poly in self.components.values():
            total = total + poly
        return total

    def check_grading(self):
        rho = staircase(self.r)
        for theta, poly in self.components.items():
            for exps in poly.terms:
                if any((e - t + p) % self.n for e, t, p in zip(exps, theta, rho)):
                    raise GradingViolation(
                        f"component {theta} holds exponent {exps}")
        return True

    def __str__(self):
        if not self.components:
            return "0"
        lines = []
        for theta in sorted(self.components):
            lines.append(f"theta {','.join(map(str, theta))}: {self.components[theta]}")
        return "\n".join(lines)

    __repr__ = __str__

    def to_json(self):
        return {
            "n": self.n,
            "r": self.r,
            "components": [
                {"theta": list(t), "poly": self.components[t].to_json()}
                for t in sorted(self.components)
            ],
        }

    @classmethod
    def from_json(cls, data):
        out = cls(data["n"], data["r"])
        for item in data["components"]:
            out[tuple(item["theta"])] = LaurentPoly.from_json(item["poly"])
        return out


def base_case(n, lam, w_prime, relaxed=False):
    """The vector at the group argument labeled by (lam, w'): component
    theta == lam + rho (mod n) equals v^len(w') z^lam, all others vanish.

    Raises NotAlmostDominant unless lam is w'-almost dominant; with
    ``relaxed`` the zero vector is returned instead (the value a vanishing
    Whittaker function would give).
    """
    r = w_prime.r
    if len(lam) != r:
        raise ValueError("lambda must have length r")
    if not is_almost_dominant(lam, w_prime):
        if relaxed:
            return WhittakerVector(n, r)
        raise NotAlmostDominant(f"{lam} is not {w_prime}-almost dominant")
    rho = staircase(r)
    theta = tuple((l + p) % n for l, p in zip(lam, rho))
    out = WhittakerVector(n, r)
    out[theta] = LaurentPoly.monomial(r, n, lam, GaussElem.v_power(n, length(w_prime)))
    return out


def lift(n, r, lam):
    """z^lam placed in its graded component theta == lam + rho (mod n)."""
    rho = staircase(r)
    theta = tuple((l + p) % n for l, p in zip(lam, rho))
    out = WhittakerVector(n, r)
    out[theta] = LaurentPoly.monomial(r, n, lam, 1)
    return out


def _geom_shifts(poly, alpha, n_, k, coeff):
    """coeff * poly * sum of z^{j*n*alpha} over the k-range; k>=0 sums
    j=0..k-1 with a minus sign, k<0 sums j=k..-1 with a plus sign."""
    out = LaurentPoly.zero(poly.rank, poly.n)
    rng = range(0, k) if k >= 0 else range(k, 0)
    sign = -1 if k >= 0 else 1
    for jj in rng:
        shift = tuple(a * jj * n_ for a in alpha)
        out = out + poly.mul_monomial(shift, coeff * sign)
    return out


def _apply_operator(i, f, inverse):
    n, r = f.n, f.r
    alpha = alpha_vec(r, i)
    omv = GaussElem.one_minus_v(n)
    vinv = GaussElem.v_power(n, -1)
    si = Permutation.simple(i, r)
    out = WhittakerVector(n, r)
    for theta, poly in f.components.items():
        ceil = ceiln(theta[i - 1] - theta[i], n)
        # diagonal part stays in component theta
        diag = LaurentPoly.zero(r, n)
        for exps, coef in poly.terms.items():
            d = exps[i - 1] - exps[i]
            num = ceil - 1 - d
            if num % n:
                raise GradingViolation()
            k = num // n
            mono = LaurentPoly.monomial(r, n, exps, coef)
            if not inverse:
                diag = diag + _geom_shifts(mono, alpha, n, k, omv)
            else:
                # shifting the j-range by one absorbs the extra z^{n alpha}
                # of the inverse: sum over j=1..k-1 resp. j=k..0
                part = _geom_shifts(mono, alpha, n, k, omv) + mono.scale(omv)
                diag = diag + part.scale(vinv)
        out[theta] = out[theta] + diag
        # off-diagonal part moves into component s_i(theta)
        target = tuple(si.act(theta))
        garg = (target[i - 1] - target[i]) % n
        gcoef = gauss_symbol(n, garg)
        if inverse:
            gcoef = gcoef * vinv
        moved = poly.weyl_act(si).mul_monomial(tuple(-a for a in alpha), gcoef)
        out[target] = out[target] + moved
    return out


def apply_T(i, f):
    """The vector Demazure-Whittaker operator T_i (division-free form)."""
    return _apply_operator(i, f, inverse=False)


def apply_T_inv(i, f):
    """The inverse operator; carries a global v^-1 and the shifted diagonal."""
    return _apply_operator(i, f, inverse=True)


def apply_T_rational(i, f):
    """Cross-check path: the displayed rational formula, exact-divided.

    (T_i f)^theta = [(1-v)(z^{(ceil-1)alpha} s_i - 1) f^theta
                     + g(theta_i - theta_{i+1}) z^{-alpha}(1 - z^{n alpha})
                       s_i f^{s_i theta}] / (1 - z^{n alpha}).
    """
    n, r = f.n, f.r
    alpha = alpha_vec(r, i)
    nalpha = tuple(n * a for a in alpha)
    omv = GaussElem.one_minus_v(n)
    si = Permutation.simple(i, r)
    one = LaurentPoly.one(r, n)
    den = one - LaurentPoly.monomial(r, n, nalpha)
    out = WhittakerVector(n, r)
    thetas = set(f.components)
    thetas |= {tuple(si.act(t)) for t in thetas}
    for theta in sorted(thetas):
        ceil = ceiln(theta[i - 1] - theta[i], n)
        own = f[theta]
        other = f[tuple(si.act(theta))]
        num = (own.weyl_act(si).mul_monomial(
            tuple((ceil - 1) * a for a in alpha)) - own).scale(omv)
        garg = (theta[i - 1] - theta[i]) % n
        num = num + other.weyl_act(si).mul_monomial(
            tuple(-a for a in alpha), gauss_symbol(n, garg)) * den
        out[theta] = num.exact_div(den)
    return out


def evaluate_vector(n, w, lam, w_prime, relaxed=True):
    """The full vector at (lam, w'), transported from w' to w along a
    Bruhat path (T_i on ascents, T_i^{-1} on descents)."""
    f = base_case(n, lam, w_prime, relaxed=relaxed)
    if f.is_zero():
        return f
    for i, ascent in bruhat_path(w_prime, w):
        f = apply_T(i, f) if ascent else apply_T_inv(i, f)
    return f


def evaluate(n, theta, w, lam, w_prime):
    """One Whittaker value: component theta of the vector at (lam, w').

    Non-almost-dominant lam gives the zero polynomial (the function
    vanishes there), matching the sweep semantics; use base_case for the
    strict constructor.
    """
    return evaluate_vector(n, w, lam, w_prime, relaxed=True)[theta]


@dataclass
class TauCoeffs:
    """Scattering coefficients for one simple index and one theta."""

    i: int
    theta: tuple
    diag: RationalLaurent
    off: LaurentPoly


def tau_coeffs(n, r, i, theta):
    """The tau^1 (diagonal) and tau^2 (into theta from s_i theta) entries:

    tau1 = (1-v) z^{(1-ceil)alpha_i} / (1 - z^{-n alpha_i}),
    tau2 = g(theta_i - theta_{i+1}) z^{alpha_i}.
    """
    theta = tuple(t % n for t in theta)
    alpha = alpha_vec(r, i)
    ceil = ceiln(theta[i - 1] - theta[i], n)
    omv = GaussElem.one_minus_v(n)
    num = LaurentPoly.monomial(r, n, tuple((1 - ceil) * a for a in alpha), omv)
    den = LaurentPoly.one(r, n) - LaurentPoly.monomial(
        r, n, tuple(-n * a for a in alpha))
    off = LaurentPoly.monomial(r, n, alpha,
                               gauss_symbol(n, (theta[i - 1] - theta[i]) % n))
    return TauCoeffs(i, theta, RationalLaurent(num, den), off)


def c_alpha_inv(n, r, i, sign=1):
    """c_{alpha_i}(z^{-1}) for sign=+1, c_{-alpha_i}(z^{-1}) for sign=-1."""
    e = tuple(-sign * n * a for a in alpha_vec(r, i))
    v = GaussElem.v_power(n)
    num = LaurentPoly.one(r, n) - LaurentPoly.monomial(r, n, e, v)
    den = LaurentPoly.one(r, n) - LaurentPoly.monomial(r, n, e)
    return RationalLaurent(num, den)


def functional_equation_check(n, theta, w, lam, w_prime, i):
    """Exact check of the scattering functional equation at one datum.

    z^alpha [ (1-v) z^{-ceil*alpha} phi_{theta,w}(z)
              + g(theta_i - theta_{i+1}) (1 - z^{-n alpha}) phi_{s_i theta,w}(z) ]
    equals, depending on whether s_i w ascends,
      (1-v) phi_{theta,w}(s_i z) + (1 - z^{-n alpha}) phi_{theta,s_i w}(s_i z)
    or
      (1-v) z^{-n alpha} phi_{theta,w}(s_i z)
              + v (1 - z^{-n alpha}) phi_{theta,s_i w}(s_i z).
    """
    r = w.r
    theta = tuple(t % n for t in theta)
    si = Permutation.simple(i, r)
    alpha = alpha_vec(r, i)
    vec = evaluate_vector(n, w, lam, w_prime)
    vec_si = evaluate_vector(n, si * w, lam, w_prime)
    phi = vec[theta]
    phi_stheta = vec[tuple(si.act(theta))]
    phi_s = phi.weyl_act(si)
    phi_siw_s = vec_si[theta].weyl_act(si)

    omv = GaussElem.one_minus_v(n)
    ceil = ceiln(theta[i - 1] - theta[i], n)
    one = LaurentPoly.one(r, n)
    z_na_inv = LaurentPoly.monomial(r, n, tuple(-n * a for a in alpha))
    lhs = phi.mul_monomial(tuple(-ceil * a for a in alpha), omv) \
        + phi_stheta.mul_monomial(
            (0,) * r, gauss_symbol(n, (theta[i - 1] - theta[i]) % n)) \
        * (one - z_na_inv)
    lhs = lhs.mul_monomial(alpha)
    if length(si * w) > length(w):
        rhs = phi_s.scale(omv) + (one - z_na_inv) * phi_siw_s
    else:
        rhs = phi_s.mul_monomial(tuple(-n * a for a in alpha), omv) \
            + (one - z_na_inv) * phi_siw_s.scale(GaussElem.v_power(n))
    return lhs == rhs


# -- averaged operators and the deformed Weyl action ----------------------

def cg_star(i, p):
    """The deformed (Chinta-Gunnells) action of s_i on a Laurent polynomial.

    Extended monomial-linearly: with d = lam_i - lam_{i+1},

        s_i * z^lam = z^{s_i lam} [ (1-v) z^{floorn(d) alpha}
                       - g(-1-d) z^{(n-1) alpha} (1 - z^{-n alpha}) ]
                      / (1 - v z^{-n alpha}).
    """
    n, r = p.n, p.rank
    alpha = alpha_vec(r, i)
    si = Permutation.simple(i, r)
    omv = GaussElem.one_minus_v(n)
    one = LaurentPoly.one(r, n)
    z_na_inv = LaurentPoly.monomial(r, n, tuple(-n * a for a in alpha))
    num = LaurentPoly.zero(r, n)
    for exps, coef in p.terms.items():
        d = exps[i - 1] - exps[i]
        s_exps = tuple(si.act(exps))
        t1 = LaurentPoly.monomial(
            r, n, tuple(a + floorn(d, n) * b for a, b in zip(s_exps, alpha)),
            omv * coef)
        g = gauss_symbol(n, (-1 - d) % n)
        t2 = LaurentPoly.monomial(
            r, n, tuple(a + (n - 1) * b for a, b in zip(s_exps, alpha)),
            g * coef) * (one - z_na_inv)
        num = num + t1 - t2
    den = one - z_na_inv.scale(GaussElem.v_power(n))
    return RationalLaurent(num, den)


def cg_star_rational(i, q):
    """cg_star extended to num/den pairs whose denominator has all
    exponents divisible by n (it then transforms by plain s_i)."""
    n, r = q.num.n, q.num.rank
    if any(e % n for exps in q.den.terms for e in exps):
        raise ValueError("denominator must lie in the n-divisible subring")
    si = Permutation.simple(i, r)
    star_num = cg_star(i, q.num)
    return RationalLaurent(star_num.num, star_num.den * q.den.weyl_act(si))


def averaged_T(i, p):
    """The averaged Demazure-Whittaker operator on Laurent polynomials:

        f |-> D(z^{-1}) f - z^{-n alpha_i} c_{alpha_i}(z^{-1}) (s_i * f),

    computed through cg_star and exact-divided back to a polynomial.
    """
    n, r = p.n, p.rank
    alpha = alpha_vec(r, i)
    omv = GaussElem.one_minus_v(n)
    one = LaurentPoly.one(r, n)
    z_na = LaurentPoly.monomial(r, n, tuple(n * a for a in alpha))
    d_term = RationalLaurent(p.scale(omv), z_na - one)
    z_na_inv = LaurentPoly.monomial(r, n, tuple(-n * a for a in alpha))
    c_term = RationalLaurent(one - z_na_inv.scale(GaussElem.v_power(n)),
                             one - z_na_inv)
    star = cg_star(i, p)
    total = d_term - RationalLaurent(z_na_inv) * c_term * star
    return total.to_poly()
