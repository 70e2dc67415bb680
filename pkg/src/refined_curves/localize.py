"""Atiyah-Bott evaluation over S^[n] (and S^[n] x P^(chi-1)) in exact
arithmetic.

The two equivariant parameters are collapsed to one localization variable u
by a seeded specialization t1 = alpha*u, t2 = beta*u: every weight becomes a
nonzero rational multiple of u, every Euler-class denominator a rational
times u^(2n), and each fixed point contributes a Laurent series in u.  The
summed series must have zero coefficient in every negative power of u; the
u^0 coefficient is the integral.  That cancellation, plus agreement of two
independently drawn specializations, certifies the non-equivariant value.
Both checks are enforced here and raise on failure.

Per fixed point the integrand is assembled in log space:

    exp( sum_W log X(c_W u)  -  sum_V log X(c_V u + x) ) * prod_V (c_V u + x)

which replaces per-weight series products and inversions by cached-series
additions and a single exponential; the shift by the formal variable x (the
twist by e^x) acts on the cached log-X coefficients through binomial
rebinning.  The same skeleton serves the total-Chern-class (y = 1) route
with log(1+t) in place of log X and the hyperplane class H in place of x,
with H nilpotent of order chi(L).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from math import comb

from refined_curves._rat import RAT_ONE, rat
from refined_curves.hilb import enumerate_fixed_points, tangent_character, taut_character
from refined_curves.series import LaurentZ, TruncSeries
from refined_curves.special import log_insertion_series, log_x_series

log = logging.getLogger("refined_curves")

CHI_Y = "CHI_Y"
D_INTEGRAND = "D_INTEGRAND"
EULER = "EULER"


class LocalizationError(RuntimeError):
    pass


class CancellationError(LocalizationError):
    """A negative power of u survived the fixed-point sum."""


class SpecializationMismatch(LocalizationError):
    """Two specializations disagree: arithmetic or convention bug."""


class DegenerateSpecialization(ValueError):
    pass


@dataclass(frozen=True)
class Specialization:
    """The substitution t1 = alpha*u, t2 = beta*u."""

    alpha: object
    beta: object

    def form(self, weight):
        """The u-coefficient of the specialized weight; must be nonzero."""
        v = weight[0] * self.alpha + weight[1] * self.beta
        if v == 0:
            raise DegenerateSpecialization("weight %r pairs to zero" % (weight,))
        return v


def all_weights(model, bundle, n_values):
    """Distinct tangent and tautological weights over all fixed points."""
    seen = set()
    for n in n_values:
        for fp in enumerate_fixed_points(model, n):
            seen.update(tangent_character(model, fp))
            if bundle is not None:
                seen.update(taut_character(model, bundle, fp))
    seen.discard((0, 0))
    return seen


def draw_specializations(model, bundle, n_max, seed=0, count=2):
    """Seeded draw of `count` specializations valid for all n <= n_max.

    Small-height rationals keep coefficient growth bounded; degenerate
    pairings are rejected and re-drawn.
    """
    weights = all_weights(model, bundle, range(n_max + 1))
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000:
            raise DegenerateSpecialization("could not find a valid specialization")
        num_a = rng.randint(-97, 97)
        num_b = rng.randint(-97, 97)
        den_a = rng.randint(1, 97)
        den_b = rng.randint(1, 97)
        if num_a == 0 or num_b == 0:
            continue
        spec = Specialization(rat(num_a, den_a), rat(num_b, den_b))
        try:
            for w in weights:
                spec.form(w)
        except DegenerateSpecialization:
            continue
        if any(s.alpha * spec.beta == s.beta * spec.alpha for s in out):
            continue  # proportional draws are not independent
        out.append(spec)
    return out


def weight_form(weight, spec: Specialization):
    return spec.form(weight)


# ---------------------------------------------------------------------------
# per-call context: cached series keyed by weight-form values
# ---------------------------------------------------------------------------

_Z_ONE = LaurentZ.one()
_Z_ZERO = LaurentZ.zero()


def _binom_rebin(coeffs, u_order, x_order, var):
    """From scalar series sum_k a_k T^k, the series in (c*u + x):
    u^j coefficient before scaling by c^j is sum_k C(k,j) a_(k+j) x^k."""
    out = []
    for j in range(u_order + 1):
        lst = [comb(k + j, j) * coeffs[k + j] if k + j < len(coeffs) else _Z_ZERO
               for k in range(x_order + 1)]
        out.append(TruncSeries(var, 0, lst, _norm=False))
    return out


class _EngineContext:
    """Caches for one (ring flavor, u_order, x_order, specialization) run."""

    def __init__(self, u_order, x_order, xvar, flavor):
        # flavor "xy": log X over LaurentZ; flavor "chern": log(1+t) over Q
        self.u_order = u_order
        self.x_order = x_order
        self.xvar = xvar
        need = u_order + x_order
        if flavor == "xy":
            lam = log_x_series(need)
            self.scalars = [lam.at(k) for k in range(need + 1)]
        else:
            self.scalars = [_Z_ZERO if k == 0 else
                            LaurentZ.term(rat((-1) ** (k + 1), k))
                            for k in range(need + 1)]
        self.shifted = _binom_rebin(self.scalars, u_order, x_order, xvar)
        self.x_zero = TruncSeries(xvar, x_order, [_Z_ZERO], _norm=False)
        self.x_one = TruncSeries.constant(xvar, _Z_ONE, x_order)
        # the bare variable x (or H) as a coefficient-series
        if x_order >= 1:
            self.x_lin = TruncSeries(xvar, 1, [_Z_ONE] + [_Z_ZERO] * (x_order - 1),
                                     _norm=False)
        else:
            self.x_lin = self.x_zero
        self._tan = {}
        self._taut = {}

    def log_at_u(self, c):
        """log-series evaluated at c*u: u^j coefficient is a_j c^j (x-free)."""
        hit = self._tan.get(c)
        if hit is None:
            p = RAT_ONE
            lst = []
            for j in range(self.u_order + 1):
                lst.append(TruncSeries.constant(self.xvar, self.scalars[j] * p,
                                                self.x_order))
                p = p * c
            hit = TruncSeries("u", 0, lst, _norm=False)
            self._tan[c] = hit
        return hit

    def log_at_ux(self, c):
        """log-series evaluated at c*u + x."""
        hit = self._taut.get(c)
        if hit is None:
            p = RAT_ONE
            lst = []
            for j in range(self.u_order + 1):
                lst.append(self.shifted[j].scale(p))
                p = p * c
            hit = TruncSeries("u", 0, lst, _norm=False)
            self._taut[c] = hit
        return hit

    def linear_factor(self, c):
        """c*u + x as a u-polynomial, exact through u^u_order."""
        lst = [self.x_lin, TruncSeries.constant(self.xvar, LaurentZ.term(c),
                                                self.x_order)]
        lst += [self.x_zero] * (self.u_order - 1)
        return TruncSeries("u", 0, lst[: self.u_order + 1], _norm=False)


def _fp_contribution(ctx, model, bundle, fp, spec, integrand):
    tangent = tangent_character(model, fp)
    e_den = RAT_ONE
    logsum = None
    for w in tangent:
        c = spec.form(w)
        e_den = e_den * c
        t = ctx.log_at_u(c)
        logsum = t if logsum is None else logsum + t
    if integrand == EULER:
        # e(T)/e(T) = 1 at each fixed point: contribution is exactly u^(2n)
        n2 = len(tangent)
        if n2 > ctx.u_order:
            raise LocalizationError("u_order too small for EULER")
        lst = [ctx.x_zero] * n2 + [ctx.x_one] + [ctx.x_zero] * (ctx.u_order - n2)
        return TruncSeries("u", 0, lst, _norm=False)
    if integrand == D_INTEGRAND:
        taut = taut_character(model, bundle, fp)
        numfac = None
        for v in taut:
            c = spec.form(v)
            logsum = logsum - ctx.log_at_ux(c)
            f = ctx.linear_factor(c)
            numfac = f if numfac is None else (numfac * f).truncate(ctx.u_order)
        ex = logsum.exp() if logsum is not None else None
        if ex is None:
            res = TruncSeries("u", 0, [ctx.x_one], _norm=False)
        elif numfac is None:
            res = ex
        else:
            res = (ex * numfac).truncate(ctx.u_order)
    elif integrand == CHI_Y:
        res = logsum.exp() if logsum is not None else TruncSeries(
            "u", 0, [ctx.x_one], _norm=False)
    else:
        raise ValueError("unknown integrand %r" % integrand)
    return res.scale(1 / e_den)


def _sum_over_fps(ctx, model, bundle, n, spec, integrand, fps=None):
    total = None
    count = 0
    for fp in (fps if fps is not None else enumerate_fixed_points(model, n)):
        t = _fp_contribution(ctx, model, bundle, fp, spec, integrand)
        total = t if total is None else total + t
        count += 1
    return total, count


def integrate_hilb(model, bundle, n, integrand, x_order, spec, workers=1):
    """One equivariant integral over S^[n]; returns an x-series over LaurentZ.

    Asserts the vanishing of every negative u-power of the fixed-point sum
    (the engine's primary self-diagnostic) before extracting u^0.
    """
    ctx = _EngineContext(2 * n, x_order, "x", "xy")
    if workers > 1:
        total, count = _sum_parallel(ctx, model, bundle, n, spec, integrand, workers)
    else:
        total, count = _sum_over_fps(ctx, model, bundle, n, spec, integrand)
    log.info("S^[%d] of %s / %s: %d fixed points", n, model.name,
             bundle.name if bundle else "-", count)
    return _extract_u0(total, 2 * n, what="%s n=%d" % (integrand, n))


def _extract_u0(total, pole_order, what=""):
    """Read u^0 of total/u^pole_order, checking all negative powers vanish."""
    for j in range(pole_order):
        c = total.at(j)
        if not c.is_zero():
            raise CancellationError(
                "negative u-power u^%d survives in %s: %r" % (j - pole_order, what, c)
            )
    return total.at(pole_order)


# -- optional worker-pool evaluation (exact, order-independent reduce)

def _worker_task(args):
    (model, bundle, n, spec, integrand, x_order, chunk) = args
    ctx = _EngineContext(2 * n, x_order, "x", "xy")
    total, _ = _sum_over_fps(ctx, model, bundle, n, spec, integrand, fps=chunk)
    return total


def _sum_parallel(ctx, model, bundle, n, spec, integrand, workers):
    import multiprocessing

    fps = list(enumerate_fixed_points(model, n))
    if not fps:
        return None, 0
    chunks = [fps[i::workers] for i in range(workers) if fps[i::workers]]
    args = [(model, bundle, n, spec, integrand, ctx.x_order, ch) for ch in chunks]
    with multiprocessing.Pool(min(workers, len(chunks))) as pool:
        parts = pool.map(_worker_task, args)
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total, len(fps)


# ---------------------------------------------------------------------------
# the D-series and the S^[n] x P^(chi-1) integrals
# ---------------------------------------------------------------------------

def d_series_single(model, bundle, n_max, x_order, spec, workers=1):
    """sum_n w^n int_{S^[n]} X(TS)c_n(L^[n] e^x)/X(L^[n] e^x), one spec."""
    coeffs = [integrate_hilb(model, bundle, n, D_INTEGRAND, x_order, spec,
                             workers=workers)
              for n in range(n_max + 1)]
    return TruncSeries("w", 0, coeffs, _norm=False)


def d_series(model, bundle, n_max, x_order, seed=0, paranoid=False, workers=1,
             cache=None):
    """The refined generating series D(x, y, w) through w^n_max, x^x_order.

    Computed under two (three with `paranoid`) independent specializations
    and asserted identical.  An optional cache maps (n -> x-series).
    """
    count = 3 if paranoid else 2
    specs = draw_specializations(model, bundle, n_max, seed=seed, count=count)
    coeffs = []
    for n in range(n_max + 1):
        key = None
        if cache is not None:
            key = cache.key(model, bundle, "d_integrand", n=n, x_order=x_order)
            hit = cache.get(key)
            if hit is not None:
                coeffs.append(hit)
                continue
        vals = [integrate_hilb(model, bundle, n, D_INTEGRAND, x_order, s,
                               workers=workers) for s in specs]
        for v in vals[1:]:
            if v != vals[0]:
                raise SpecializationMismatch(
                    "specializations disagree at n=%d for %s/%s"
                    % (n, model.name, bundle.name))
        coeffs.append(vals[0])
        if cache is not None:
            cache.put(key, vals[0])
    return TruncSeries("w", 0, coeffs, _norm=False)


def _rename_var(s: TruncSeries, var: str) -> TruncSeries:
    return TruncSeries(var, s.low, s.coeffs, _norm=False)


def chern_integral_y1(model, bundle, geom, n, m, spec, workers=1):
    """int over S^[n] x P^(chi-1) of c_n(L^[n] (x) O(1)) c(TS^[n]) (1+H)^chi
    / c(L^[n] (x) O(1)) * H^m, exactly (the y = 1 Chern side).

    Returns an exact rational (an integer in practice).
    """
    chi = geom.chiL
    if not 0 <= m <= chi - 1:
        raise ValueError("need 0 <= m <= chi(L)-1")
    h_order = chi - 1
    ctx = _EngineContext(2 * n, h_order, "H", "chern")
    total, count = _sum_over_fps(ctx, model, bundle, n, spec, D_INTEGRAND)
    log.info("chern y1 S^[%d] x P^%d: %d fixed points", n, h_order, count)
    s = _extract_u0(total, 2 * n, what="chern_y1 n=%d" % n)
    # global projective factor (1+H)^chi, fixed-point independent
    lg = TruncSeries("H", 0, [_Z_ZERO if k == 0 else
                              LaurentZ.term(rat((-1) ** (k + 1) * chi, k))
                              for k in range(h_order + 1)], _norm=False)
    s = (s * lg.exp()).truncate(h_order)
    val = s.at(chi - 1 - m)  # reading H^(chi-1) of s * H^m
    if val.support() not in ([], [0]):
        raise LocalizationError("y=1 route produced z-dependence: %r" % val)
    return val.coeff(0)


def eq7_direct(model, bundle, geom, n, m, spec, workers=1):
    """The refined integral of the main formula, directly over
    S^[n] x P^(chi-1): X-classes, the point-insertion factor, and H^m.

    Returns (with_prefactor, prefactor_free): the paper-prefactored value
    (-1)^vd * I and the bare integrand value I, as Laurent polynomials in z.
    """
    chi = geom.chiL
    if not 0 <= m <= chi - 1:
        raise ValueError("need 0 <= m <= chi(L)-1")
    delta = chi - 1 - m
    h_order = chi - 1
    ctx = _EngineContext(2 * n, h_order, "H", "xy")
    total, count = _sum_over_fps(ctx, model, bundle, n, spec, D_INTEGRAND)
    log.info("eq7 S^[%d] x P^%d: %d fixed points", n, h_order, count)
    s = _extract_u0(total, 2 * n, what="eq7 n=%d" % n)
    # global X(H)^(delta+1) * ins(H)^m factor, fixed-point independent
    glob = _rename_var(log_x_series(h_order).scale(delta + 1)
                       + log_insertion_series(h_order).scale(m), "H").exp()
    s = (s * glob).truncate(h_order)
    bare = s.at(delta)  # reading H^(chi-1) of s * H^m
    vd = n + chi - 1
    signed = bare if vd % 2 == 0 else -bare
    return signed, bare
