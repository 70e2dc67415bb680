"""Torus-fixed-point models of toric surfaces and equivariant line bundles.

A surface model is its list of charts: per torus-fixed point, the two
tangent weights in Z^2 (characters of the 2-torus on the chart coordinates),
plus the Chern numbers (K^2, c2).  A line bundle carries one fiber character
per fixed point plus its intersection numbers (L^2, L.K).

Built-in presets: P^2 with O(d), P^1 x P^1 with O(a,b), and the Hirzebruch
surfaces F_a with L = c1*s + c2*f in the basis (s = section with s^2 = -a,
f = fiber), giving L^2 = 2*c1*c2 - a*c1^2 and L.K = (a-2)*c1 - 2*c2.

Every model is validated on construction by Atiyah-Bott sums evaluated at a
generic rational point of the torus: the declared L^2, L.K, K^2 must match
the localized intersection numbers, and chi(O) must satisfy Noether's
formula.  Custom models load from JSON (see README for the schema).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from refined_curves._rat import rat


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ToricSurfaceModel:
    name: str
    charts: tuple  # tuple of ((a,b),(c,d)) tangent-weight pairs
    K2: int
    c2: int
    chiO: int = 1

    @property
    def euler(self):
        return len(self.charts)

    def canonical_character(self, i):
        """Character of K_S = det T^* at fixed point i."""
        (a, b), (c, d) = self.charts[i]
        return (-(a + c), -(b + d))


@dataclass(frozen=True)
class EquivLineBundle:
    name: str
    characters: tuple  # one weight in Z^2 per chart
    L2: int
    LK: int


def _ab_pairing(w, t1, t2):
    return w[0] * t1 + w[1] * t2


def _ab_sum(model, numerators, t1, t2):
    """sum over fixed points of numerator_i / (v_i . t)(w_i . t)."""
    s = Fraction(0)
    for i, (v, w) in enumerate(model.charts):
        den = _ab_pairing(v, t1, t2) * _ab_pairing(w, t1, t2)
        if den == 0:
            raise ModelError("degenerate torus point for chart %d" % i)
        s += Fraction(numerators[i], den)
    return s


def validate_model(model: ToricSurfaceModel, bundle: EquivLineBundle | None = None):
    """Check declared Chern/intersection numbers against localization.

    The Atiyah-Bott sums below are degree-0, so one generic rational point
    of the torus evaluates them exactly.
    """
    t1, t2 = Fraction(97, 89), Fraction(1, 103)
    if model.c2 != model.euler:
        raise ModelError("c2 must equal the number of fixed points")
    ks = [model.canonical_character(i) for i in range(model.euler)]
    k2 = _ab_sum(model, [_ab_pairing(k, t1, t2) ** 2 for k in ks], t1, t2)
    if k2 != model.K2:
        raise ModelError("K^2 mismatch: declared %s, localized %s" % (model.K2, k2))
    if (model.K2 + model.c2) % 12 != 0 or (model.K2 + model.c2) // 12 != model.chiO:
        raise ModelError("Noether formula fails: chi(O) != (K^2+c2)/12")
    if bundle is not None:
        if len(bundle.characters) != model.euler:
            raise ModelError("bundle needs one character per fixed point")
        mus = [_ab_pairing(m, t1, t2) for m in bundle.characters]
        l2 = _ab_sum(model, [m * m for m in mus], t1, t2)
        if l2 != bundle.L2:
            raise ModelError("L^2 mismatch: declared %s, localized %s" % (bundle.L2, l2))
        lk = _ab_sum(model, [m * _ab_pairing(k, t1, t2) for m, k in zip(mus, ks)], t1, t2)
        if lk != bundle.LK:
            raise ModelError("L.K mismatch: declared %s, localized %s" % (bundle.LK, lk))


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def p2_model() -> ToricSurfaceModel:
    charts = (
        (((1, 0), (0, 1))),
        (((-1, 0), (-1, 1))),
        (((0, -1), (1, -1))),
    )
    return ToricSurfaceModel("p2", charts, K2=9, c2=3)


def p2_bundle(d: int) -> EquivLineBundle:
    # characters solve <mu, v_rho> = d_rho on each cone's rays (the sign that
    # makes mixed integrals like int c1(L).c1(TS) = -L.K come out right)
    return EquivLineBundle("O(%d)" % d, ((0, 0), (-d, 0), (0, -d)), L2=d * d, LK=-3 * d)


def hirzebruch_model(a: int) -> ToricSurfaceModel:
    # rays (1,0), (0,1), (-1,a), (0,-1); charts are the dual bases of the
    # four maximal cones, in cyclic order
    charts = (
        ((1, 0), (0, 1)),
        ((a, 1), (-1, 0)),
        ((-1, 0), (-a, -1)),
        ((0, -1), (1, 0)),
    )
    name = "p1xp1" if a == 0 else "hirzebruch:%d" % a
    return ToricSurfaceModel(name, charts, K2=8, c2=4)


def hirzebruch_bundle(a: int, c1: int, c2: int) -> EquivLineBundle:
    # L = c1*s + c2*f, s = D_{v2} (s^2 = -a), f = D_{v1}; characters solve
    # <mu, v_rho> = d_rho on each cone (same sign convention as p2_bundle)
    chars = (
        (c2, c1),
        (a * c1, c1),
        (0, 0),
        (c2, 0),
    )
    return EquivLineBundle(
        "O(%d,%d)" % (c1, c2),
        chars,
        L2=2 * c1 * c2 - a * c1 * c1,
        LK=(a - 2) * c1 - 2 * c2,
    )


def p1xp1_model() -> ToricSurfaceModel:
    return hirzebruch_model(0)


def p1xp1_bundle(a: int, b: int) -> EquivLineBundle:
    return hirzebruch_bundle(0, a, b)


def from_preset(spec: str):
    """Parse a CLI surface/bundle id: p2:d | p1xp1:a,b | hirzebruch:a:c1,c2
    or a path to a JSON model file."""
    if spec.endswith(".json"):
        return load_model_file(spec)
    parts = spec.split(":")
    try:
        if parts[0] == "p2" and len(parts) == 2:
            model, bundle = p2_model(), p2_bundle(int(parts[1]))
        elif parts[0] == "p1xp1" and len(parts) == 2:
            a, b = (int(x) for x in parts[1].split(","))
            model, bundle = p1xp1_model(), p1xp1_bundle(a, b)
        elif parts[0] == "hirzebruch" and len(parts) == 3:
            a = int(parts[1])
            c1, c2 = (int(x) for x in parts[2].split(","))
            model, bundle = hirzebruch_model(a), hirzebruch_bundle(a, c1, c2)
        else:
            raise ValueError(spec)
    except (ValueError, IndexError):
        raise ModelError(
            "unknown preset %r (want p2:d, p1xp1:a,b, hirzebruch:a:c1,c2, or a .json path)"
            % spec
        ) from None
    validate_model(model, bundle)
    return model, bundle


def load_model_file(path: str):
    with open(path) as fh:
        data = json.load(fh)
    charts = tuple(
        (tuple(ch["weights"][0]), tuple(ch["weights"][1])) for ch in data["charts"]
    )
    model = ToricSurfaceModel(
        data["name"], charts, K2=data["K2"], c2=data["c2"],
        chiO=data.get("chiO", 1),
    )
    chars = tuple(tuple(ch["character"]) for ch in data["charts"])
    bundle = EquivLineBundle(
        data.get("bundle_name", "L"), chars, L2=data["L2"], LK=data["LK"]
    )
    validate_model(model, bundle)
    return model, bundle
