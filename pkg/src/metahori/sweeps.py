"""Verification sweeps: cross-checks between lattice and operator sides.

Every suite returns a ``ybe.Report``; failures carry printable both-sides
data.  Case enumeration is sorted, so reports are byte-stable; the heavy
suites fan out over a process pool when METAHORI_WORKERS > 1 (the case
order, and hence the report, is unchanged).
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor

from .coefficients import GaussElem, gauss_symbol
from .laurent import LaurentPoly, RationalLaurent, alpha_vec
from .lattice import SystemSpec, partition_function
from .weyl import (Permutation, almost_dominant_decompose, ceiln, length,
                   staircase)
from .ybe import (Report, verify_aux_ybe, verify_aux_ybe_numeric,
                  verify_fused_rtt, verify_rrr, verify_rrr_numeric)
from . import whittaker as wh


def worker_count():
    try:
        return max(1, int(os.environ.get("METAHORI_WORKERS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    workers = worker_count()
    if workers <= 1 or len(items) < 4:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def _merge(report, results):
    for checked, failures in results:
        report.checked += checked
        report.failures.extend(failures)
    return report


def _nr_pairs(max_n, max_r):
    return [(n, r) for n in range(1, max_n + 1) for r in range(1, max_r + 1)]


# -- ground state ----------------------------------------------------------

def _ground_state_case(args):
    n, r, mu = args
    wp, lam = almost_dominant_decompose(mu)
    rho = staircase(r)
    shifted = tuple(l + p for l, p in zip(lam, rho))
    failures = []
    checked = 0
    for theta in itertools.product(range(n), repeat=r):
        spec = SystemSpec(n, r, mu, theta, wp)
        z = partition_function(spec)
        if all((t - s) % n == 0 for t, s in zip(theta, shifted)):
            expect = LaurentPoly.monomial(r, n, shifted,
                                          GaussElem.v_power(n, length(wp)))
        else:
            expect = LaurentPoly.zero(r, n)
        checked += 1
        if z != expect:
            failures.append({"boundary": (n, r, mu, theta),
                             "lhs": str(z), "rhs": str(expect)})
    return checked, failures


def ground_state_suite(max_n=3, max_r=3, max_mu=4):
    """Z(S_{mu,theta,w'}) == v^len(w') z^{lam+rho} or 0, by enumeration."""
    report = Report(f"ground-state n<={max_n} r<={max_r} mu<={max_mu}")
    cases = [(n, r, mu)
             for n, r in _nr_pairs(max_n, max_r)
             for mu in itertools.product(range(max_mu + 1), repeat=r)]
    return _merge(report, _pmap(_ground_state_case, cases))


# -- main theorem ----------------------------------------------------------

def _main_theorem_case(args):
    n, r, mu, w_ol = args
    w = Permutation(w_ol)
    wp, lam = almost_dominant_decompose(mu)
    rho = staircase(r)
    vec = wh.evaluate_vector(n, w, lam, wp)
    failures = []
    checked = 0
    for theta in itertools.product(range(n), repeat=r):
        spec = SystemSpec(n, r, mu, theta, w)
        z = partition_function(spec)
        expect = vec[theta].mul_monomial(rho)
        checked += 1
        if z != expect:
            failures.append({"boundary": (n, r, mu, theta, w_ol),
                             "lhs": str(z), "rhs": str(expect)})
    return checked, failures


def main_theorem_suite(pairs, max_mu=3):
    """Partition function == z^rho * operator-recursion value, everywhere."""
    report = Report(f"main-theorem pairs={sorted(pairs)} mu<={max_mu}")
    cases = [(n, r, mu, w.one_line)
             for n, r in sorted(pairs)
             for mu in itertools.product(range(max_mu + 1), repeat=r)
             for w in Permutation.all(r)]
    return _merge(report, _pmap(_main_theorem_case, cases))


# -- fusion invariance ------------------------------------------------------

def _fusion_case(args):
    n, r, mu, w_ol = args
    w = Permutation(w_ol)
    failures = []
    checked = 0
    for theta in itertools.product(range(n), repeat=r):
        spec = SystemSpec(n, r, mu, theta, w)
        z = partition_function(spec)
        others = [partition_function(spec.with_variant("color_fused")),
                  partition_function(spec.with_variant("fully_fused")),
                  partition_function(spec.with_N(spec.N + 1))]
        checked += 1
        if any(o != z for o in others):
            failures.append({"boundary": (n, r, mu, theta, w_ol),
                             "lhs": str(z),
                             "rhs": "; ".join(str(o) for o in others)})
    return checked, failures


def fusion_suite(max_n=3, max_r=3, max_mu=3):
    """Z is identical across the three variants and under N -> N+1."""
    report = Report(f"fusion n<={max_n} r<={max_r} mu<={max_mu}")
    cases = [(n, r, mu, w.one_line)
             for n, r in _nr_pairs(max_n, max_r)
             for mu in itertools.product(range(max_mu + 1), repeat=r)
             for w in Permutation.all(r)]
    return _merge(report, _pmap(_fusion_case, cases))


# -- lattice recursion -------------------------------------------------------

def _recursion_case(args):
    n, r, mu, theta, w_ol = args
    w = Permutation(w_ol)
    failures = []
    checked = 0
    z_theta = partition_function(SystemSpec(n, r, mu, theta, w))
    omv = GaussElem.one_minus_v(n)
    for i in range(1, r):
        si = Permutation.simple(i, r)
        alpha = alpha_vec(r, i)
        theta_d = (theta[i - 1] - theta[i]) % n
        ceil = ceiln(theta[i - 1] - theta[i], n)
        s_theta = tuple(si.act(theta))
        z_stheta = partition_function(SystemSpec(n, r, mu, s_theta, w))
        z_theta_s = z_theta.weyl_act(si)
        z_siw_s = partition_function(
            SystemSpec(n, r, mu, theta, si * w)).weyl_act(si)
        one = LaurentPoly.one(r, n)
        z_na_inv = LaurentPoly.monomial(r, n, tuple(-n * a for a in alpha))
        lhs = z_theta.mul_monomial(tuple(-ceil * a for a in alpha), omv) \
            + z_stheta.scale(gauss_symbol(n, theta_d)) * (one - z_na_inv)
        if length(si * w) > length(w):
            rhs = z_theta_s.scale(omv) + (one - z_na_inv) * z_siw_s
        else:
            rhs = z_theta_s.mul_monomial(tuple(-n * a for a in alpha), omv) \
                + (one - z_na_inv) * z_siw_s.scale(GaussElem.v_power(n))
        checked += 1
        if lhs != rhs:
            failures.append({"boundary": (n, r, mu, theta, w_ol, i),
                             "lhs": str(lhs), "rhs": str(rhs)})
    return checked, failures


def recursion_suite(max_n=2, max_r=3, max_mu=2):
    """The exchange identity tying Z at theta, s_i theta, w and s_i w."""
    report = Report(f"recursion n<={max_n} r<={max_r} mu<={max_mu}")
    cases = [(n, r, mu, theta, w.one_line)
             for n, r in _nr_pairs(max_n, max_r) if r >= 2
             for mu in itertools.product(range(max_mu + 1), repeat=r)
             for theta in itertools.product(range(n), repeat=r)
             for w in Permutation.all(r)]
    return _merge(report, _pmap(_recursion_case, cases))


# -- Hecke relations ---------------------------------------------------------

def _graded_box_vectors(n, r):
    """All monomial basis vectors z^lam e_theta with lam in [-n, n]^r;
    theta is forced by the grading."""
    for lam in itertools.product(range(-n, n + 1), repeat=r):
        yield lam, wh.lift(n, r, lam)


def _hecke_case(args):
    n, r = args
    failures = []
    checked = 0
    v = GaussElem.v_power(n)
    for lam, f in _graded_box_vectors(n, r):
        for i in range(1, r):
            t1 = wh.apply_T(i, f)
            t2 = wh.apply_T(i, t1)
            quad = t2 + t1.scale(1 - v) + f.scale(-v)
            checked += 1
            if not quad.is_zero():
                failures.append({"boundary": (n, r, lam, i, "quadratic"),
                                 "lhs": str(quad), "rhs": "0"})
        if r >= 3:
            for i in range(1, r - 1):
                j = i + 1
                lhs = wh.apply_T(i, wh.apply_T(j, wh.apply_T(i, f)))
                rhs = wh.apply_T(j, wh.apply_T(i, wh.apply_T(j, f)))
                checked += 1
                if lhs != rhs:
                    failures.append({"boundary": (n, r, lam, i, "braid"),
                                     "lhs": str(lhs), "rhs": str(rhs)})
    return checked, failures


def _bernstein_case(args):
    n, r = args
    failures = []
    checked = 0
    omv = GaussElem.one_minus_v(n)
    box = [tuple(s * n if k == j else 0 for k in range(r))
           for j in range(r) for s in (1, -1)]
    for lam_t in box:
        for i in range(1, r):
            si = Permutation.simple(i, r)
            s_lam = tuple(si.act(lam_t))
            num = LaurentPoly.monomial(r, n, tuple(-a for a in lam_t), -omv) \
                - LaurentPoly.monomial(r, n, tuple(-a for a in s_lam), -omv)
            den = LaurentPoly.one(r, n) - LaurentPoly.monomial(
                r, n, tuple(n * a for a in alpha_vec(r, i)))
            q = num.exact_div(den)
            for lam, f in _graded_box_vectors(n, r):
                tf = wh.apply_T(i, f)
                lhs = _mul_components(tf, LaurentPoly.monomial(
                    r, n, tuple(-a for a in lam_t)))
                rhs_in = _mul_components(f, LaurentPoly.monomial(
                    r, n, tuple(-a for a in s_lam)))
                lhs = lhs + wh.apply_T(i, rhs_in).scale(-1)
                want = _mul_components(f, q)
                checked += 1
                if lhs != want:
                    failures.append(
                        {"boundary": (n, r, lam_t, lam, i, "bernstein"),
                         "lhs": str(lhs), "rhs": str(want)})
    return checked, failures


def _mul_components(vec, poly):
    out = wh.WhittakerVector(vec.n, vec.r)
    for theta, p in vec.components.items():
        out[theta] = p * poly
    return out


def hecke_suite(max_n=3, max_r=3):
    """Quadratic relation, braid relations, and the modified Bernstein
    relation for lam in {+-n e_j}, on graded monomial basis vectors."""
    report = Report(f"hecke n<={max_n} r<={max_r}")
    pairs = [(n, r) for n, r in _nr_pairs(max_n, max_r) if r >= 2]
    _merge(report, _pmap(_hecke_case, pairs))
    _merge(report, _pmap(_bernstein_case, pairs))
    return report


# -- tau unitarity -----------------------------------------------------------

def _tau_matrix(n, r, i):
    """Entries [target, source] of the scattering matrix at one index."""
    entries = {}
    si = Permutation.simple(i, r)
    for theta in itertools.product(range(n), repeat=r):
        tc = wh.tau_coeffs(n, r, i, theta)
        src = tuple(si.act(theta))
        _tau_add(entries, (theta, theta), tc.diag)
        _tau_add(entries, (theta, src), RationalLaurent(tc.off))
    return entries


def _tau_add(entries, key, val):
    entries[key] = entries[key] + val if key in entries else val


def tau_unitarity_suite(max_n=3, max_r=2):
    """sum_nu tau_{mu,nu}(s_i z) tau_{nu,lam}(z) == c c' delta, exactly."""
    report = Report(f"tau-unitarity n<={max_n} r<={max_r}")
    for n in range(1, max_n + 1):
        for r in range(2, max_r + 1):
            for i in range(1, r):
                si = Permutation.simple(i, r)
                mat = _tau_matrix(n, r, i)
                mat_s = {k: RationalLaurent(v.num.weyl_act(si), v.den.weyl_act(si))
                         for k, v in mat.items()}
                cc = wh.c_alpha_inv(n, r, i, 1) * wh.c_alpha_inv(n, r, i, -1)
                thetas = list(itertools.product(range(n), repeat=r))
                for mu in thetas:
                    for lam in thetas:
                        total = None
                        for nu in thetas:
                            a = mat_s.get((mu, nu))
                            b = mat.get((nu, lam))
                            if a is None or b is None:
                                continue
                            term = a * b
                            total = term if total is None else total + term
                        if total is None:
                            total = RationalLaurent(LaurentPoly.zero(r, n))
                        want = cc if mu == lam else RationalLaurent(
                            LaurentPoly.zero(r, n))
                        report.checked += 1
                        if not total == want:
                            report.add_failure((n, r, i, mu, lam),
                                               total, want)
    return report


# -- averaged operator equivalence -------------------------------------------

def _averaged_case(args):
    n, r = args
    failures = []
    checked = 0
    for lam in itertools.product(range(-n, n + 1), repeat=r):
        mono = LaurentPoly.monomial(r, n, lam, 1)
        f = wh.lift(n, r, lam)
        for i in range(1, r):
            via_scalar = wh.averaged_T(i, mono)
            via_vector = wh.apply_T(i, f).sum_components()
            checked += 1
            if via_scalar != via_vector:
                failures.append({"boundary": (n, r, lam, i),
                                 "lhs": str(via_scalar),
                                 "rhs": str(via_vector)})
    return checked, failures


def averaged_suite(max_n=3, max_r=3):
    """averaged_T on z^lam == component sum of the vector operator route."""
    report = Report(f"averaged n<={max_n} r<={max_r}")
    pairs = [(n, r) for n, r in _nr_pairs(max_n, max_r) if r >= 2]
    return _merge(report, _pmap(_averaged_case, pairs))


# -- CLI suite registry --------------------------------------------------------

def run_suite(name, max_n, max_r, max_mu):
    if name == "ground-state":
        return ground_state_suite(max_n, max_r, max_mu)
    if name == "main-theorem":
        return main_theorem_suite(_nr_pairs(max_n, max_r), max_mu)
    if name == "fusion":
        return fusion_suite(max_n, max_r, max_mu)
    if name == "recursion":
        return recursion_suite(max_n, max_r, max_mu)
    if name == "hecke":
        return hecke_suite(max_n, max_r)
    if name == "tau-unitarity":
        return tau_unitarity_suite(max_n, max_r)
    if name == "averaged":
        return averaged_suite(max_n, max_r)
    if name == "ybe-aux":
        report = Report(f"ybe-aux n<={max_n} r<={max_r}")
        for n, r in _nr_pairs(max_n, max_r):
            sub = verify_aux_ybe(n, r)
            report.checked += sub.checked
            report.failures.extend(sub.failures)
        return report
    if name == "ybe-rtt":
        report = Report(f"ybe-rtt n<={max_n} r<={max_r}")
        for n, r in _nr_pairs(max_n, max_r):
            if n * r > 6:
                continue
            sub = verify_fused_rtt(n, r)
            report.checked += sub.checked
            report.failures.extend(sub.failures)
        return report
    if name == "ybe-rrr":
        report = Report(f"ybe-rrr n<={max_n} r<={max_r}")
        for n, r in _nr_pairs(max_n, max_r):
            if (n + r) ** 6 > 5000:
                sub = verify_rrr_numeric(n, r)
            else:
                sub = verify_rrr(n, r)
            report.checked += sub.checked
            report.failures.extend(sub.failures)
        return report
    raise ValueError(f"unknown suite {name!r}")


SUITES = ("main-theorem", "ybe-aux", "ybe-rtt", "ybe-rrr", "hecke", "fusion",
          "ground-state", "recursion", "tau-unitarity", "averaged")
