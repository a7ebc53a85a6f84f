"""Distance-propagation ledger.

Starting from the axiom "distance d is preserved", each derivation step
appends a fact whose witness is a concrete, numerically validated point
configuration:

* midpoint-rule(q)   -- a (q*d)-probe: its eleven distances force the
                        parallelogram identity b3 = b1 + b2 - a;
* scale-up(n, q)     -- a collinear chain of n+1 points at spacing q*d,
                        endpoints n*q*d apart;
* scale-down(n, q)   -- the five-point configuration a, b, c, e, f with
                        e = c + n(a-c), f = c + n(b-c) that transports
                        distance q*d down to q*d/n;
* rational p/q       -- scale-down then scale-up, yielding (p/q)*d;
* squeeze-bound      -- rationals p, q with q < eps/d and
                        p - q < ||a-b||/d < p + q, witnessed by a point at
                        distances p*d from a and q*d from b.

Facts record their rule and parent fact ids.  ``verify_map`` replays every
witness through a candidate plane transformation and checks the implied
constraints; this is a necessary-condition check on finite configurations,
not a proof about all maps.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .circles import DEFAULT_CONFIG, SolverConfig, two_radius_point
from .geom import Point2, Scalar
from .norms import Norm, norm_from_jsonable, norm_to_jsonable
from .probe import DProbe, build_probe, require_urtc, sphere_map_f, validate_probe

DIST_PRESERVED = "dist-preserved"
COLLINEAR_CHAIN = "collinear-chain"
MIDPOINT_RULE = "midpoint-rule"
SQUEEZE_BOUND = "squeeze-bound"

CONSTRUCTION_TOL = 1e-8
REVALIDATION_TOL = 1e-7

LEDGER_FORMAT = 1


class LedgerError(ValueError):
    """Derivation precondition failed (missing parent, bad argument)."""


class WitnessValidationError(ValueError):
    """A witness configuration does not satisfy its claimed constraints."""


class LedgerImportError(ValueError):
    """A ledger file is malformed or fails re-validation."""


@dataclass(frozen=True)
class WitnessReport:
    max_distance_residual: float
    max_collinear_residual: float

    def ok(self, tol: float) -> bool:
        return self.max_distance_residual <= tol and self.max_collinear_residual <= tol


@dataclass(frozen=True)
class WitnessConfig:
    """Named points with required gauge distances and collinear triples."""

    points: dict[str, Point2]
    required_distances: tuple[tuple[str, str, Scalar], ...]
    collinear_triples: tuple[tuple[str, str, str], ...] = ()

    def validate(self, norm: Norm) -> WitnessReport:
        dist_res = 0.0
        for n1, n2, value in self.required_distances:
            got = norm.gauge(self.points[n2] - self.points[n1])
            dist_res = max(dist_res, abs(float(got) - float(value)))
        col_res = 0.0
        for n1, n2, n3 in self.collinear_triples:
            u = self.points[n2] - self.points[n1]
            v = self.points[n3] - self.points[n1]
            scale = max(abs(float(u.x)), abs(float(u.y)),
                        abs(float(v.x)), abs(float(v.y)))
            if scale == 0.0:
                continue
            col_res = max(col_res, abs(float(u.cross(v))) / (scale * scale))
        return WitnessReport(dist_res, col_res)


@dataclass(frozen=True)
class Fact:
    id: int
    kind: str
    params: dict
    rule: str
    parents: tuple[int, ...]
    witness: WitnessConfig


class Ledger:
    """Ordered list of certified facts over one norm and base distance d.

    Fact 0 is always the axiom dist-preserved(q = 1) with no parents.
    Appending validates the witness at ``CONSTRUCTION_TOL``.
    """

    def __init__(self, norm: Norm, d: Scalar):
        self.norm = norm
        self.d = d
        self.facts: list[Fact] = []
        self._index: dict[tuple, int] = {}

    def __len__(self):
        return len(self.facts)

    @property
    def axiom(self) -> Fact:
        return self.facts[0]

    @staticmethod
    def _key(kind: str, params: dict) -> Optional[tuple]:
        if kind == DIST_PRESERVED:
            return (kind, params["q"])
        if kind == MIDPOINT_RULE:
            return (kind, params["q"])
        if kind == COLLINEAR_CHAIN:
            return (kind, params["n"], params["q"])
        return None  # squeeze bounds are never deduplicated

    def find(self, kind: str, **params) -> Optional[Fact]:
        idx = self._index.get(self._key(kind, params))
        return self.facts[idx] if idx is not None else None

    def append(self, kind: str, params: dict, rule: str,
               parents: tuple[int, ...], witness: WitnessConfig) -> Fact:
        for pid in parents:
            if not 0 <= pid < len(self.facts):
                raise LedgerError(f"parent id {pid} not in ledger")
        report = witness.validate(self.norm)
        if not report.ok(CONSTRUCTION_TOL):
            raise WitnessValidationError(
                f"witness for {kind}{params} fails validation: "
                f"distance residual {report.max_distance_residual:.3g}, "
                f"collinearity residual {report.max_collinear_residual:.3g}"
            )
        fact = Fact(len(self.facts), kind, params, rule, tuple(parents), witness)
        self.facts.append(fact)
        key = self._key(kind, params)
        if key is not None and key not in self._index:
            self._index[key] = fact.id
        return fact

    # -- deterministic base direction --------------------------------------

    _unit_cache: Optional[Point2] = None

    def unit_direction(self) -> Point2:
        """Boundary point on the positive x ray; exact on exact backends."""
        if self._unit_cache is None:
            self._unit_cache = self.norm.boundary_on_ray(Point2(1, 0))
        return self._unit_cache


def _scaled(q: Union[Fraction, int], d: Scalar) -> Scalar:
    """q*d without needlessly leaving the exact lane."""
    if isinstance(d, float):
        return float(q) * d
    v = Fraction(q) * Fraction(d)
    return int(v) if v.denominator == 1 else v


def new_ledger(norm: Norm, d: Scalar, config: SolverConfig = DEFAULT_CONFIG) -> Ledger:
    """Fresh ledger holding the axiom: distance d is preserved."""
    require_urtc(norm)
    if not float(d) > 0:
        raise LedgerError("base distance d must be positive")
    ledger = Ledger(norm, d)
    u = ledger.unit_direction()
    witness = WitnessConfig(
        {"a": Point2(0, 0), "b": u * _scaled(1, d)},
        (("a", "b", d),),
    )
    ledger.append(DIST_PRESERVED, {"q": Fraction(1)}, "axiom", (), witness)
    return ledger


def _probe_witness(probe: DProbe) -> WitnessConfig:
    from .probe import PROBE_EDGES

    names = ("a", "b1", "b2", "b3", "c1", "c2", "c3")
    return WitnessConfig(
        {n: probe.point(n) for n in names},
        tuple((n1, n2, probe.d) for n1, n2 in PROBE_EDGES),
    )


def derive_midpoint_rule(ledger: Ledger, q: Union[Fraction, int] = 1,
                         config: SolverConfig = DEFAULT_CONFIG) -> Fact:
    """Append the midpoint rule at scale q*d, witnessed by a fresh probe."""
    q = Fraction(q)
    existing = ledger.find(MIDPOINT_RULE, q=q)
    if existing is not None:
        return existing
    base = ledger.find(DIST_PRESERVED, q=q)
    if base is None:
        raise LedgerError(f"no dist-preserved({q}) fact to build the midpoint rule on")
    s = _scaled(q, ledger.d)
    b0 = Point2(0, 0)
    b1 = ledger.unit_direction() * s
    b2 = sphere_map_f(ledger.norm, b1, s, config)
    probe = build_probe(ledger.norm, b0, b1, b2, s, config)
    report = validate_probe(ledger.norm, probe)
    if not report.ok(CONSTRUCTION_TOL):
        raise WitnessValidationError(f"probe residuals too large:\n{report}")
    return ledger.append(
        MIDPOINT_RULE, {"q": q}, "midpoint-rule", (base.id,), _probe_witness(probe)
    )


def derive_scale_up(ledger: Ledger, n: int, q: Union[Fraction, int] = 1,
                    config: SolverConfig = DEFAULT_CONFIG) -> tuple[Fact, Fact]:
    """Distance n*(q*d) is preserved, with the collinear chain statement.

    Witness: points b0, b2, ..., b(2n) spaced q*d along the deterministic
    unit direction; consecutive pairs at distance q*d, endpoints at n*q*d.
    """
    if not isinstance(n, int) or n < 2:
        raise LedgerError(f"scale-up needs an integer n >= 2, got {n!r}")
    q = Fraction(q)
    base = ledger.find(DIST_PRESERVED, q=q)
    if base is None:
        raise LedgerError(f"no dist-preserved({q}) fact to scale up from")
    mid = derive_midpoint_rule(ledger, q, config)
    dist_fact = ledger.find(DIST_PRESERVED, q=n * q)
    chain_fact = ledger.find(COLLINEAR_CHAIN, n=n, q=q)
    if dist_fact is not None and chain_fact is not None:
        return dist_fact, chain_fact
    s = _scaled(q, ledger.d)
    u = ledger.unit_direction()
    pts = {f"b{2*k}": u * _scaled(k, s) for k in range(n + 1)}
    required = [(f"b{2*k}", f"b{2*k+2}", s) for k in range(n)]
    required.append(("b0", f"b{2*n}", _scaled(n, s)))
    collinear = tuple(
        (f"b{2*k-2}", f"b{2*k}", f"b{2*k+2}") for k in range(1, n)
    )
    witness = WitnessConfig(pts, tuple(required), collinear)
    parents = (base.id, mid.id)
    if dist_fact is None:
        dist_fact = ledger.append(
            DIST_PRESERVED, {"q": n * q}, "scale-up", parents, witness
        )
    if chain_fact is None:
        chain_fact = ledger.append(
            COLLINEAR_CHAIN, {"n": n, "q": q}, "scale-up", parents, witness
        )
    return dist_fact, chain_fact


def derive_scale_down(ledger: Ledger, n: int, q: Union[Fraction, int] = 1,
                      config: SolverConfig = DEFAULT_CONFIG) -> Fact:
    """Distance (q*d)/n is preserved.

    Witness (five points): ||a-b|| = s/n, c at distance s from both, and the
    stretched images e = c + n(a-c), f = c + n(b-c) giving ||a-e|| = ||b-f||
    = (n-1)s, ||e-f|| = s, with (c,a,e) and (c,b,f) collinear.
    """
    if not isinstance(n, int) or n < 2:
        raise LedgerError(f"scale-down needs an integer n >= 2, got {n!r}")
    q = Fraction(q)
    target = q / n
    existing = ledger.find(DIST_PRESERVED, q=target)
    if existing is not None:
        return existing
    base = ledger.find(DIST_PRESERVED, q=q)
    if base is None:
        raise LedgerError(f"no dist-preserved({q}) fact to scale down from")
    if n == 2:
        prev = base
        _, chain = derive_scale_up(ledger, 2, q, config)
    else:
        prev, _ = derive_scale_up(ledger, n - 1, q, config)
        _, chain = derive_scale_up(ledger, n, q, config)
    s = _scaled(q, ledger.d)
    u = ledger.unit_direction()
    a = Point2(0, 0)
    b = u * _scaled(Fraction(1, n), s)
    c = two_radius_point(ledger.norm, a, b, s, s, config)
    e = c + (a - c) * n
    f = c + (b - c) * n
    witness = WitnessConfig(
        {"a": a, "b": b, "c": c, "e": e, "f": f},
        (
            ("a", "b", _scaled(Fraction(1, n), s)),
            ("a", "c", s),
            ("b", "c", s),
            ("e", "f", s),
            ("a", "e", _scaled(n - 1, s)),
            ("b", "f", _scaled(n - 1, s)),
        ),
        (("c", "a", "e"), ("c", "b", "f")),
    )
    parents = tuple(dict.fromkeys((base.id, prev.id, chain.id)))
    return ledger.append(DIST_PRESERVED, {"q": target}, "scale-down", parents, witness)


def derive_rational(ledger: Ledger, p: int, q: int,
                    config: SolverConfig = DEFAULT_CONFIG) -> Fact:
    """Distance (p/q)*d is preserved, via scale-down(q) then scale-up(p)."""
    if not (isinstance(p, int) and isinstance(q, int) and p >= 1 and q >= 1):
        raise LedgerError(f"need integers p, q >= 1, got p={p!r}, q={q!r}")
    target = Fraction(p, q)
    existing = ledger.find(DIST_PRESERVED, q=target)
    if existing is not None:
        return existing
    num, den = target.numerator, target.denominator
    if den == 1:
        fact, _ = derive_scale_up(ledger, num, 1, config)
        return fact
    down = derive_scale_down(ledger, den, 1, config)
    if num == 1:
        return down
    fact, _ = derive_scale_up(ledger, num, Fraction(1, den), config)
    return fact


def squeeze_bound(ledger: Ledger, a: Point2, b: Point2, eps: Scalar,
                  config: SolverConfig = DEFAULT_CONFIG) -> Fact:
    """Pin ||a - b|| between preserved rational distances.

    Finds rationals p, q in units of the ledger base d, smallest denominators
    first, with 0 < q < eps/(2d) and |p - r| < q for r = ||a-b||/d; then
    p - q < r < p + q with both endpoints strictly inside (r - eps/d,
    r + eps/d).  The witness is a point c with ||a - c|| = p*d and
    ||b - c|| = q*d, which exists because |p - r| < q.
    """
    if a == b:
        raise LedgerError("a and b must be distinct")
    r_abs = ledger.norm.gauge(b - a)
    eps_f = float(eps)
    if not (0 < eps_f < float(r_abs) / 3):
        raise LedgerError(
            f"eps must lie in (0, ||a-b||/3) = (0, {float(r_abs)/3}), got {eps_f}"
        )
    d = ledger.d
    r_units = Fraction(r_abs) / Fraction(d) if not isinstance(r_abs, float) and not isinstance(d, float) \
        else float(r_abs) / float(d)
    # q: the smallest-denominator unit fraction strictly below eps/(2d);
    # halving guarantees p +- q stays strictly inside (r - eps/d, r + eps/d).
    # Exact arithmetic so the "strictly below" cut is placed correctly.
    eps_units = Fraction(eps) / Fraction(d)
    q_u = Fraction(1, math.floor(2 / eps_units) + 1)
    p_u = None
    den = 0
    while p_u is None:
        den += 1
        cand = Fraction(round(float(r_units) * den), den)
        if cand > 0 and abs(cand - r_units) < q_u:
            p_u = cand
    if not (p_u - q_u < r_units < p_u + q_u):
        raise AssertionError("rational search violated its own bracket")
    p_fact = derive_rational(ledger, p_u.numerator, p_u.denominator, config)
    q_fact = derive_rational(ledger, q_u.numerator, q_u.denominator, config)
    c = two_radius_point(
        ledger.norm, a, b, _scaled(p_u, d), _scaled(q_u, d), config
    )
    witness = WitnessConfig(
        {"a": a, "b": b, "c": c},
        (
            ("a", "b", r_abs),
            ("a", "c", _scaled(p_u, d)),
            ("b", "c", _scaled(q_u, d)),
        ),
    )
    return ledger.append(
        SQUEEZE_BOUND, {"r": r_units, "p": p_u, "q": q_u},
        "squeeze", (p_fact.id, q_fact.id), witness,
    )


# ---------------------------------------------------------------------------
# Candidate maps
# ---------------------------------------------------------------------------


class CandidateMap:
    """An evaluable transformation of the plane."""

    def __call__(self, p: Point2) -> Point2:
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class AffineMap(CandidateMap):
    m00: float = 1.0
    m01: float = 0.0
    m10: float = 0.0
    m11: float = 1.0
    tx: float = 0.0
    ty: float = 0.0

    def __call__(self, p: Point2) -> Point2:
        x, y = float(p.x), float(p.y)
        return Point2(self.m00 * x + self.m01 * y + self.tx,
                      self.m10 * x + self.m11 * y + self.ty)

    @classmethod
    def rotation(cls, radians: float) -> "AffineMap":
        c, s = math.cos(radians), math.sin(radians)
        return cls(c, -s, s, c)

    @classmethod
    def scaling(cls, factor: float) -> "AffineMap":
        return cls(factor, 0.0, 0.0, factor)

    @classmethod
    def translation(cls, dx: float, dy: float) -> "AffineMap":
        return cls(tx=dx, ty=dy)

    def describe(self) -> str:
        return (f"affine[{self.m00:g} {self.m01:g}; {self.m10:g} {self.m11:g}]"
                f"+({self.tx:g}, {self.ty:g})")


@dataclass(frozen=True)
class LinearMap(CandidateMap):
    """Exact linear map (rational matrix); keeps the exact lane exact."""

    m00: Scalar = 1
    m01: Scalar = 0
    m10: Scalar = 0
    m11: Scalar = 1

    def __call__(self, p: Point2) -> Point2:
        return Point2(self.m00 * p.x + self.m01 * p.y,
                      self.m10 * p.x + self.m11 * p.y)

    def describe(self) -> str:
        return f"linear[{self.m00} {self.m01}; {self.m10} {self.m11}]"


@dataclass(frozen=True)
class ComposedMap(CandidateMap):
    maps: tuple[CandidateMap, ...]  # applied left to right

    def __call__(self, p: Point2) -> Point2:
        for m in self.maps:
            p = m(p)
        return p

    def describe(self) -> str:
        return " then ".join(m.describe() for m in self.maps)


class PointwiseMap(CandidateMap):
    """Map given by an arbitrary python callable on points."""

    def __init__(self, fn: Callable[[Point2], Point2], label: str = "pointwise"):
        self._fn = fn
        self._label = label

    def __call__(self, p: Point2) -> Point2:
        return self._fn(p)

    def describe(self) -> str:
        return self._label


class TabulatedMap(CandidateMap):
    """Map defined on a finite point set only."""

    def __init__(self, pairs: dict[Point2, Point2]):
        self._pairs = dict(pairs)

    def __call__(self, p: Point2) -> Point2:
        try:
            return self._pairs[p]
        except KeyError:
            raise KeyError(f"tabulated map is not defined at {p}") from None

    def describe(self) -> str:
        return f"tabulated({len(self._pairs)} points)"


# ---------------------------------------------------------------------------
# Map verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    first_violation: Optional[str]
    pairs_checked: int
    facts_checked: int

    def __str__(self):
        if self.passed:
            return (f"pass: {self.pairs_checked} unit pairs and "
                    f"{self.facts_checked} witness replays satisfied "
                    "(necessary-condition check)")
        return f"fail: {self.first_violation}"


def verify_map(norm: Norm, candidate: CandidateMap, ledger: Ledger,
               samples: int = 200, seed: int = 0,
               tol: float = REVALIDATION_TOL) -> VerifyReport:
    """Necessary-condition check of a candidate map against the ledger.

    Stage 1 samples random pairs at the base distance d and checks their
    images stay at distance d.  Stage 2 replays every ledger witness through
    the map: required distances, collinear triples, and (for midpoint facts)
    the parallelogram identity on the probe's b3 must survive.
    """
    rng = random.Random(seed)
    df = float(ledger.d)
    pairs = 0
    for _ in range(samples):
        x = Point2(rng.uniform(-3.0, 3.0) * df, rng.uniform(-3.0, 3.0) * df)
        u = norm.boundary_point(rng.uniform(0.0, 2.0 * math.pi))
        y = x + u * df
        ix, iy = candidate(x), candidate(y)
        pairs += 1
        err = abs(float(norm.gauge(iy - ix)) - df)
        if err > tol * max(1.0, df):
            return VerifyReport(
                False,
                f"unit pair #{pairs}: image distance off by {err:.3g} "
                f"for x={x}, y={y}",
                pairs, 0,
            )
    checked = 0
    for fact in ledger.facts:
        images = {name: candidate(pt) for name, pt in fact.witness.points.items()}
        for n1, n2, value in fact.witness.required_distances:
            err = abs(float(norm.gauge(images[n2] - images[n1])) - float(value))
            if err > tol * max(1.0, abs(float(value))):
                return VerifyReport(
                    False,
                    f"fact {fact.id} ({fact.kind}): image distance {n1}-{n2} "
                    f"off by {err:.3g}",
                    pairs, checked,
                )
        for n1, n2, n3 in fact.witness.collinear_triples:
            u = images[n2] - images[n1]
            v = images[n3] - images[n1]
            scale = max(abs(float(u.x)), abs(float(u.y)),
                        abs(float(v.x)), abs(float(v.y)))
            if scale > 0 and abs(float(u.cross(v))) / (scale * scale) > tol:
                return VerifyReport(
                    False,
                    f"fact {fact.id} ({fact.kind}): image triple "
                    f"({n1},{n2},{n3}) not collinear",
                    pairs, checked,
                )
        if fact.kind == MIDPOINT_RULE:
            forced = images["b1"] + images["b2"] - images["a"]
            err = float(norm.gauge(images["b3"] - forced))
            if err > tol * max(1.0, df):
                return VerifyReport(
                    False,
                    f"fact {fact.id} (midpoint-rule): image of b3 misses the "
                    f"parallelogram point by {err:.3g}",
                    pairs, checked,
                )
        checked += 1
    return VerifyReport(True, None, pairs, checked)


# ---------------------------------------------------------------------------
# Ledger export / import (line-delimited records)
# ---------------------------------------------------------------------------


def _encode_scalar(v: Scalar) -> str:
    if isinstance(v, float):
        s = format(v, ".17g")
        if "." not in s and "e" not in s and "E" not in s:
            s += ".0"
        return s
    return str(Fraction(v))


def _decode_scalar(s: str) -> Scalar:
    text = s.strip()
    if "/" in text:
        return Fraction(text)
    if "." in text or "e" in text or "E" in text:
        return float(text)
    return int(text)


def _fact_to_jsonable(fact: Fact, norm: Norm) -> dict:
    report = fact.witness.validate(norm)
    params = {}
    for key, value in fact.params.items():
        params[key] = value if isinstance(value, int) and not isinstance(value, bool) \
            else _encode_scalar(value)
    return {
        "record": "fact",
        "id": fact.id,
        "kind": fact.kind,
        "rule": fact.rule,
        "parents": list(fact.parents),
        "params": params,
        "witness": {
            "points": {
                name: [_encode_scalar(p.x), _encode_scalar(p.y)]
                for name, p in fact.witness.points.items()
            },
            "distances": [
                [n1, n2, _encode_scalar(v)]
                for n1, n2, v in fact.witness.required_distances
            ],
            "collinear": [list(t) for t in fact.witness.collinear_triples],
        },
        "residuals": {
            "distance": _encode_scalar(report.max_distance_residual),
            "collinear": _encode_scalar(report.max_collinear_residual),
        },
    }


def ledger_to_lines(ledger: Ledger) -> list[str]:
    try:
        norm_obj = norm_to_jsonable(ledger.norm)
    except Exception:
        norm_obj = {"kind": ledger.norm.kind}
    header = {
        "record": "header",
        "format": LEDGER_FORMAT,
        "d": _encode_scalar(ledger.d),
        "norm": norm_obj,
    }
    lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
    for fact in ledger.facts:
        lines.append(json.dumps(
            _fact_to_jsonable(fact, ledger.norm), sort_keys=True, separators=(",", ":")
        ))
    return lines


def write_ledger(ledger: Ledger, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for line in ledger_to_lines(ledger):
            fh.write(line + "\n")


def _params_from_jsonable(obj: dict) -> dict:
    out = {}
    for key, value in obj.items():
        out[key] = value if isinstance(value, int) else _decode_scalar(value)
        if key in ("q", "p") and not isinstance(out[key], float):
            out[key] = Fraction(out[key])
    return out


def read_ledger(path, norm: Optional[Norm] = None, revalidate: bool = True,
                tol: float = REVALIDATION_TOL) -> Ledger:
    """Load a ledger file, re-validating every witness against the norm.

    The embedded norm spec is used unless an explicit norm is supplied
    (custom gauges are not serializable, so they must be supplied).
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise LedgerImportError("empty ledger file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise LedgerImportError(f"bad header line: {exc}") from None
    if header.get("record") != "header" or header.get("format") != LEDGER_FORMAT:
        raise LedgerImportError("missing or unsupported ledger header")
    if norm is None:
        norm_obj = header.get("norm", {})
        if norm_obj.get("kind") not in ("polygonal", "p"):
            raise LedgerImportError(
                "ledger norm is not self-describing; pass the norm explicitly"
            )
        norm = norm_from_jsonable(norm_obj)
    ledger = Ledger(norm, _decode_scalar(header["d"]))
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LedgerImportError(f"line {lineno}: bad JSON: {exc}") from None
        if obj.get("record") != "fact":
            raise LedgerImportError(f"line {lineno}: expected a fact record")
        fid = obj["id"]
        if fid != len(ledger.facts):
            raise LedgerImportError(f"line {lineno}: fact ids must be sequential")
        parents = tuple(obj.get("parents", ()))
        for pid in parents:
            if not 0 <= pid < fid:
                raise LedgerImportError(
                    f"line {lineno}: parent {pid} does not precede fact {fid}"
                )
        wobj = obj["witness"]
        try:
            witness = WitnessConfig(
                {name: Point2(_decode_scalar(xs), _decode_scalar(ys))
                 for name, (xs, ys) in wobj["points"].items()},
                tuple((n1, n2, _decode_scalar(v)) for n1, n2, v in wobj["distances"]),
                tuple(tuple(t) for t in wobj.get("collinear", ())),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise LedgerImportError(f"line {lineno}: bad witness: {exc}") from None
        if revalidate:
            report = witness.validate(norm)
            if not report.ok(tol):
                raise LedgerImportError(
                    f"line {lineno}: fact {fid} witness fails re-validation "
                    f"(distance residual {report.max_distance_residual:.3g}, "
                    f"collinearity residual {report.max_collinear_residual:.3g})"
                )
        fact = Fact(fid, obj["kind"], _params_from_jsonable(obj.get("params", {})),
                    obj.get("rule", ""), parents, witness)
        ledger.facts.append(fact)
        key = Ledger._key(fact.kind, fact.params) if fact.kind in (
            DIST_PRESERVED, MIDPOINT_RULE, COLLINEAR_CHAIN) else None
        if key is not None and key not in ledger._index:
            ledger._index[key] = fact.id
    if not ledger.facts:
        raise LedgerImportError("ledger has no facts")
    return ledger
