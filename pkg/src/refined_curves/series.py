"""Exact coefficient rings: Laurent polynomials in z = y^(1/2) and truncated
formal power/Laurent series in one named variable.

Everything here is exact rational arithmetic.  ``LaurentZ`` is the refinement
ring: sparse Laurent polynomials in z, where z stands for y^(1/2), so the
y = 1 specialization is evaluation at z = 1.  ``TruncSeries`` is a dense
truncated series in a single named formal variable whose coefficients live in
a declared ring (rationals, LaurentZ, or another TruncSeries); all operations
propagate the minimum truncation order of their operands and never silently
extend precision.

Values are immutable after construction; operations are pure functions, so
instances are safe to share between workers.
"""

from __future__ import annotations

from refined_curves._kernels import conv_lists, dict_mul
from refined_curves._rat import RAT_ONE, RAT_ZERO, rat


class SeriesError(ValueError):
    """Contract violation in a series operation."""


class VariableMismatch(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


class CoeffWindow(SeriesError):
    """Requested coefficient lies above the known truncation."""


# ---------------------------------------------------------------------------
# LaurentZ
# ---------------------------------------------------------------------------

class LaurentZ:
    """Laurent polynomial in z with exact rational coefficients (sparse).

    No zero coefficients are stored.  Supports evaluation at z = 1 and the
    z <-> 1/z involution used for palindromicity reports.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None, _clean=True):
        if coeffs is None:
            self.c = {}
        elif _clean:
            self.c = {int(e): v for e, v in coeffs.items() if v != 0}
        else:
            self.c = coeffs

    # -- constructors

    @staticmethod
    def zero():
        return _Z_ZERO

    @staticmethod
    def one():
        return _Z_ONE

    @staticmethod
    def term(coeff, exp=0):
        c = rat(coeff) if isinstance(coeff, int) else coeff
        if c == 0:
            return _Z_ZERO
        return LaurentZ({int(exp): c}, _clean=False)

    @staticmethod
    def from_pairs(pairs):
        d = {}
        for e, v in pairs:
            v = rat(v) if isinstance(v, int) else v
            if e in d:
                d[e] = d[e] + v
            else:
                d[e] = v
        return LaurentZ(d)

    # -- queries

    def is_zero(self):
        return not self.c

    def support(self):
        return sorted(self.c)

    def min_exp(self):
        return min(self.c)

    def max_exp(self):
        return max(self.c)

    def coeff(self, e):
        return self.c.get(e, RAT_ZERO)

    def at_one(self):
        """Exact evaluation at z = 1, i.e. the y = 1 specialization."""
        s = RAT_ZERO
        for v in self.c.values():
            s = s + v
        return s

    def flip(self):
        """The involution z -> 1/z  (y -> 1/y)."""
        return LaurentZ({-e: v for e, v in self.c.items()}, _clean=False)

    def is_monomial(self):
        return len(self.c) == 1

    # -- arithmetic

    def __add__(self, other):
        if not isinstance(other, LaurentZ):
            return NotImplemented
        d = dict(self.c)
        for e, v in other.c.items():
            s = d.get(e)
            if s is None:
                d[e] = v
            else:
                s = s + v
                if s == 0:
                    del d[e]
                else:
                    d[e] = s
        return LaurentZ(d, _clean=False)

    def __sub__(self, other):
        if not isinstance(other, LaurentZ):
            return NotImplemented
        d = dict(self.c)
        for e, v in other.c.items():
            s = d.get(e)
            if s is None:
                d[e] = -v
            else:
                s = s - v
                if s == 0:
                    del d[e]
                else:
                    d[e] = s
        return LaurentZ(d, _clean=False)

    def __neg__(self):
        return LaurentZ({e: -v for e, v in self.c.items()}, _clean=False)

    def __mul__(self, other):
        if isinstance(other, LaurentZ):
            return LaurentZ(dict_mul(self.c, other.c), _clean=False)
        if isinstance(other, int):
            if other == 0:
                return _Z_ZERO
            return LaurentZ({e: v * other for e, v in self.c.items()}, _clean=False)
        # assume exact rational scalar
        if other == 0:
            return _Z_ZERO
        return LaurentZ({e: v * other for e, v in self.c.items()}, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        r = _Z_ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def inv(self):
        """Inverse; defined only for monomials c*z^e."""
        if len(self.c) != 1:
            raise NotInvertible(
                "LaurentZ inverse requires a monomial, got support %s" % self.support()
            )
        (e, v), = self.c.items()
        return LaurentZ({-e: 1 / v}, _clean=False)

    def __eq__(self, other):
        if isinstance(other, LaurentZ):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __getstate__(self):
        return self.c

    def __setstate__(self, state):
        self.c = state

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            parts.append("%s*z^%d" % (v, e) if e else str(v))
        return " + ".join(parts)


_Z_ZERO = LaurentZ({}, _clean=False)
_Z_ONE = LaurentZ({0: RAT_ONE}, _clean=False)
Z = LaurentZ({1: RAT_ONE}, _clean=False)
ZINV = LaurentZ({-1: RAT_ONE}, _clean=False)


# ---------------------------------------------------------------------------
# coefficient-ring dispatch
# ---------------------------------------------------------------------------

def zero_like(c):
    if isinstance(c, TruncSeries):
        return TruncSeries(c.var, c.order, [zero_like(c.coeffs[0])], _norm=False)
    if isinstance(c, LaurentZ):
        return _Z_ZERO
    return RAT_ZERO


def one_like(c):
    if isinstance(c, TruncSeries):
        if c.order < 0:
            raise SeriesError("no exponent-0 slot at this truncation")
        return TruncSeries.constant(c.var, one_like(c.coeffs[0]), c.order)
    if isinstance(c, LaurentZ):
        return _Z_ONE
    return RAT_ONE


def is_zero_coeff(c):
    if isinstance(c, TruncSeries):
        return all(is_zero_coeff(x) for x in c.coeffs)
    if isinstance(c, LaurentZ):
        return c.is_zero()
    return c == 0


def _inv_coeff(c):
    if isinstance(c, TruncSeries):
        return c.invert()
    if isinstance(c, LaurentZ):
        return c.inv()
    if c == 0:
        raise NotInvertible("zero scalar")
    return 1 / c


def _exp_coeff(c):
    if isinstance(c, TruncSeries):
        return c.exp()
    if is_zero_coeff(c):
        return one_like(c)
    raise SeriesError("exp requires zero constant term, got %r" % (c,))


def _log_coeff(c):
    if isinstance(c, TruncSeries):
        return c.log()
    if c == one_like(c):
        return zero_like(c)
    raise SeriesError("log requires constant term 1, got %r" % (c,))


def _scal(c, r):
    """Scalar multiple; r is an int/rational (or LaurentZ over a LaurentZ ring)."""
    if isinstance(c, TruncSeries):
        return c.scale(r)
    return c * r


# ---------------------------------------------------------------------------
# TruncSeries
# ---------------------------------------------------------------------------

class TruncSeries:
    """Dense truncated series sum(coeffs[k] * var^(low+k)).

    ``order`` is the largest exponent whose coefficient is known; exponents
    above it are unknown (truncated), exponents below ``low`` are known to be
    zero.  ``low`` may be negative (Laurent series in the localization
    variable).  Coefficients live in a single ring: rationals, LaurentZ, or a
    nested TruncSeries; the nesting order is fixed per computation by the
    caller so variable collisions cannot occur.
    """

    __slots__ = ("var", "low", "coeffs")

    def __init__(self, var, low, coeffs, _norm=True):
        if not coeffs:
            raise SeriesError("empty coefficient list")
        if _norm:
            # strip known-zero leading coefficients; keep the order marker
            i = 0
            while i < len(coeffs) - 1 and is_zero_coeff(coeffs[i]):
                i += 1
            if i:
                coeffs = coeffs[i:]
                low += i
        self.var = var
        self.low = low
        self.coeffs = coeffs

    @property
    def order(self):
        return self.low + len(self.coeffs) - 1

    # -- constructors

    @staticmethod
    def constant(var, value, order):
        """The constant series `value`, known through var^order."""
        if order < 0:
            raise SeriesError("constant needs order >= 0")
        z = zero_like(value)
        return TruncSeries(var, 0, [value] + [z] * order, _norm=False)

    @staticmethod
    def variable(var, sample_one, order):
        """The series `var` itself, known through var^order."""
        if order < 1:
            raise SeriesError("variable needs order >= 1")
        return TruncSeries(var, 1, [sample_one] + [zero_like(sample_one)] * (order - 1),
                           _norm=False)

    @staticmethod
    def from_coeffs(var, coeffs, low=0):
        return TruncSeries(var, low, list(coeffs))

    # -- queries

    def at(self, e):
        """Coefficient of var^e; exact zero below `low`, error above `order`."""
        if e > self.order:
            raise CoeffWindow(
                "coefficient of %s^%d not known (truncated at %d)" % (self.var, e, self.order)
            )
        if e < self.low:
            return zero_like(self.coeffs[0])
        return self.coeffs[e - self.low]

    def coeff(self, e):
        return self.at(e)

    def is_zero(self):
        return all(is_zero_coeff(c) for c in self.coeffs)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if not is_zero_coeff(c):
                return self.low + k
        return None

    def map_coeffs(self, f):
        return TruncSeries(self.var, self.low, [f(c) for c in self.coeffs])

    def truncate(self, order):
        """Drop knowledge above `order` (never extends)."""
        if order >= self.order:
            return self
        if order < self.low:
            return TruncSeries(self.var, order, [zero_like(self.coeffs[0])], _norm=False)
        return TruncSeries(self.var, self.low, self.coeffs[: order - self.low + 1],
                           _norm=False)

    # -- ring operations

    def _check(self, other):
        if self.var != other.var:
            raise VariableMismatch("%s vs %s" % (self.var, other.var))

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        low = min(self.low, other.low)
        order = min(self.order, other.order)
        if order < low:
            raise SeriesError("no overlapping known range in add")
        z = zero_like(self.coeffs[0])
        out = [z] * (order - low + 1)
        for k in range(low, order + 1):
            a = self.coeffs[k - self.low] if self.low <= k <= self.order else z
            b = other.coeffs[k - other.low] if other.low <= k <= other.order else z
            out[k - low] = a + b
        return TruncSeries(self.var, low, out)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TruncSeries(self.var, self.low, [-c for c in self.coeffs], _norm=False)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        low = self.low + other.low
        order = min(self.order + other.low, other.order + self.low)
        n_out = order - low + 1
        raw = conv_lists(self.coeffs, other.coeffs, n_out)
        z = zero_like(self.coeffs[0])
        return TruncSeries(self.var, low, [z if c is None else c for c in raw])

    def scale(self, r):
        """Multiply by a scalar from the coefficient ring (or int/rational)."""
        if isinstance(r, int) and r == 1:
            return self
        return TruncSeries(self.var, self.low, [_scal(c, r) for c in self.coeffs],
                           _norm=True)

    def shift(self, k):
        """Multiply by var^k (exact)."""
        if k == 0:
            return self
        return TruncSeries(self.var, self.low + k, self.coeffs, _norm=False)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            return self.invert() ** (-k)
        r = TruncSeries.constant(self.var, one_like(self.coeffs[0]),
                                 max(self.order, 0))
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def invert(self):
        """Multiplicative inverse up to truncation.

        Requires an invertible lowest-order coefficient; for a series of
        valuation v known through order N, the inverse has valuation -v and
        is valid through N - 2v.
        """
        v = self.valuation()
        if v is None:
            raise NotInvertible("cannot invert the zero series")
        a = self.coeffs[v - self.low:]
        n = len(a)
        inv0 = _inv_coeff(a[0])
        out = [inv0]
        ninv0 = -inv0
        for k in range(1, n):
            s = None
            for j in range(1, min(k, n - 1) + 1):
                t = a[j] * out[k - j]
                s = t if s is None else s + t
            out.append(zero_like(inv0) if s is None else ninv0 * s)
        return TruncSeries(self.var, -v, out)

    def exp(self):
        """exp of a series; the innermost scalar constant term must vanish."""
        if self.low < 0:
            raise SeriesError("exp of a Laurent series")
        n = self.order
        if n < 0:
            raise SeriesError("exp needs a known constant term")
        a = [self.at(k) for k in range(0, n + 1)]
        e0 = _exp_coeff(a[0])
        out = [e0]
        for k in range(1, n + 1):
            s = None
            for j in range(1, k + 1):
                t = _scal(a[j] * out[k - j], j)
                s = t if s is None else s + t
            out.append(_scal(s, rat(1, k)) if s is not None else zero_like(e0))
        return TruncSeries(self.var, 0, out)

    def log(self):
        """log of a series whose innermost scalar constant term is 1."""
        if self.low > 0:
            raise SeriesError("log of a series with zero constant term")
        if self.low < 0:
            raise SeriesError("log of a Laurent series")
        n = self.order
        a = self.coeffs
        l0 = _log_coeff(a[0])
        unit0 = is_zero_coeff(a[0] - one_like(a[0]))
        inv0 = None if unit0 else _inv_coeff(a[0])
        out = [l0]
        for k in range(1, n + 1):
            s = None
            for j in range(1, k):
                t = _scal(out[j] * a[k - j], j)
                s = t if s is None else s + t
            lk = a[k]
            if s is not None:
                lk = lk - _scal(s, rat(1, k))
            if inv0 is not None:
                lk = inv0 * lk
            out.append(lk)
        return TruncSeries(self.var, 0, out)

    def substitute(self, value):
        """Compose: replace this series' variable by `value`.

        `value` must be a TruncSeries of positive valuation (substituting a
        unit would need infinitely many host coefficients).  Negative host
        exponents go through invert(value).  Truncation bookkeeping is then
        automatic: the result's order falls out of the ring operations.
        """
        if not isinstance(value, TruncSeries):
            raise SeriesError("substitution value must be a TruncSeries")
        vv = value.valuation()
        if vv is None:
            # value = 0: only the constant term survives
            c0 = self.at(0) if self.low <= 0 else zero_like(self.coeffs[0])
            return TruncSeries.constant(value.var, c0, value.order)
        if vv < 1:
            raise SeriesError("substitution of a series with invertible constant term")
        one = one_like(self.coeffs[0])
        # positive part by Horner from the top
        res = None
        for k in range(self.order, max(self.low, 0) - 1, -1):
            c = self.at(k)
            term = TruncSeries.constant(value.var, c, value.order)
            res = term if res is None else res * value + term
        if res is None:
            res = TruncSeries.constant(value.var, zero_like(self.coeffs[0]), value.order)
        if self.low < 0:
            vinv = value.invert()
            power = vinv
            neg = None
            for k in range(-1, self.low - 1, -1):
                c = self.at(k)
                if not is_zero_coeff(c):
                    t = power.scale(c)
                    neg = t if neg is None else neg + t
                if k > self.low:
                    power = power * vinv
            if neg is not None:
                res = res + neg
        # the host's own truncation limits validity: the first unknown host
        # term c_{N+1} * value^(N+1) enters at exponent (N+1)*val(value)
        return res.truncate((self.order + 1) * vv - 1)

    # -- comparisons / output

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.var != other.var or self.order != other.order:
            return False
        lo = min(self.low, other.low)
        for k in range(lo, self.order + 1):
            a = self.at(k) if k >= self.low else None
            b = other.at(k) if k >= other.low else None
            if a is None:
                if not is_zero_coeff(b):
                    return False
            elif b is None:
                if not is_zero_coeff(a):
                    return False
            elif not is_zero_coeff(a - b):
                return False
        return True

    def __hash__(self):
        return hash((self.var, self.low, self.order))

    def __getstate__(self):
        return (self.var, self.low, self.coeffs)

    def __setstate__(self, state):
        self.var, self.low, self.coeffs = state

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not is_zero_coeff(c):
                parts.append("(%r)*%s^%d" % (c, self.var, self.low + k))
        body = " + ".join(parts) if parts else "0"
        return "%s + O(%s^%d)" % (body, self.var, self.order + 1)


# ---------------------------------------------------------------------------
# spec-level operation aliases
# ---------------------------------------------------------------------------

def series_mul(a, b):
    return a * b


def series_invert(a):
    return a.invert()


def series_exp(a):
    return a.exp()


def series_log(a):
    return a.log()


def substitute(host, value):
    return host.substitute(value)


def coeff(host, e):
    return host.at(e)
