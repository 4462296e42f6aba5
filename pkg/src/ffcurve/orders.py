"""Order sequences of a morphism: generic, Frobenius, and the
two-Frobenius-row variant, by greedy lexicographic rank scans.

Rows are Hasse-derivative vectors D^(e)(f_0, ..., f_n), optionally seeded
with Frobenius-power rows (f_i^(q^r)).  The greedy scan picks the
smallest derivative order that enlarges the row space; by matroid
exchange the result is the lexicographically minimal valid sequence.

Rank decisions use one of two oracles:

* ``exact``: incremental echelon form over the function field K itself;
  sound in both directions but expensive when rows contain large
  Frobenius powers.
* ``screen``: rows are evaluated at sample places of the curve over a
  large extension (seeded, recorded).  A rank increase of the scalar
  matrix proves independence over K (evaluation is a ring homomorphism on
  the local ring), so every accepted order carries an exact certificate.
  Rejections are Monte-Carlo with error probability bounded by
  deg/|sample space| per test; ``verify_minimality`` re-checks rejections
  with exact determinants where that is affordable.

The `auto` mode keeps exact ranks for small inputs and switches to the
screen for rows whose Frobenius power would be expensive to carry
symbolically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .curve import AlgFunc, hasse, qpower
from .errors import (
    CoprimalityError,
    DegenerateMorphismError,
    ReportedViolation,
)
from .field import FieldElem, embed_raw, make_field
from .ratfun import PoleError
from .upoly import UniPoly, roots


@dataclass(frozen=True)
class OrderSeq:
    """Strictly increasing non-negative integers tagged with their kind.

    kind is one of ('generic',), ('frobenius', r), ('kappa', u, m) or
    ('pointwise', label).
    """
    kind: tuple
    values: tuple

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise ValueError("order sequence entries must be non-negative")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError("order sequence must be strictly increasing")

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def total(self):
        return sum(self.values)

    def is_classical(self):
        return self.values == tuple(range(len(self.values)))


class Morphism:
    """A nondegenerate morphism to projective n-space, f_0 = 1 by convention.

    deg_series is the degree d of the associated linear series; it is
    trusted catalog metadata and caps the greedy order search.
    """

    def __init__(self, curve, coords, deg_series, base_order=None, name=""):
        coords = tuple(coords)
        if len(coords) < 3:
            raise ValueError("need projective dimension n >= 2")
        self.curve = curve
        self.coords = coords
        self.n = len(coords) - 1
        self.deg_series = deg_series
        self.base_order = base_order or curve.field.order
        self.name = name
        self._lift_cache = {}

    def frobenius_row(self, r):
        return tuple(qpower(c, r, self.base_order) for c in self.coords)

    def hasse_row(self, e):
        return tuple(hasse(c, e) for c in self.coords)

    def change_field(self, new_field):
        if new_field == self.curve.field:
            return self
        key = (new_field.p, new_field.h, new_field.modulus)
        if key not in self._lift_cache:
            sub = self.curve.field
            lifted_curve = self.curve.change_field(new_field)

            def emb(raw):
                return embed_raw(raw, sub, new_field)

            coords = tuple(c.map_curve(lifted_curve, emb) for c in self.coords)
            self._lift_cache[key] = Morphism(
                lifted_curve, coords, self.deg_series,
                base_order=self.base_order, name=self.name)
        return self._lift_cache[key]

    def __repr__(self):
        return (f"Morphism({self.name or 'phi'}: n={self.n}, "
                f"d={self.deg_series}, q={self.base_order})")


# ---------------------------------------------------------------------------
# rank oracles
# ---------------------------------------------------------------------------

class _ExactEchelon:
    """Row space over K in echelon form; try_add is sound both ways."""

    def __init__(self, width):
        self.rows = []  # (pivot_index, normalized row)
        self.width = width

    def _reduce(self, vec):
        vec = list(vec)
        for piv, row in self.rows:
            c = vec[piv]
            if not c.is_zero():
                for i in range(self.width):
                    vec[i] = vec[i] - c * row[i]
        return vec

    def try_add(self, vec):
        vec = self._reduce(vec)
        piv = next((i for i, v in enumerate(vec) if not v.is_zero()), None)
        if piv is None:
            return False
        inv = vec[piv].inverse()
        self.rows.append((piv, [v * inv for v in vec]))
        self.rows.sort(key=lambda t: t[0])
        return True

    @property
    def rank(self):
        return len(self.rows)


class _SamplePlace:
    """A place of the curve over a large extension, as a scalar pair (a, b)."""

    def __init__(self, morphism, rng, min_size=1 << 24):
        curve = morphism.curve
        base = curve.field
        s = 1
        while base.order ** s < min_size:
            s += 1
        self.ext = make_field(base.p, base.h * s)
        self.lifted = curve.change_field(self.ext)
        self.base_sub = base
        self.rng = rng
        self._draw()

    def _draw(self):
        for _ in range(200):
            a = self.ext.random_element(self.rng)
            gy = self.lifted.y_poly_at(a)
            if gy.degree() < self.lifted.deg_y:
                continue  # leading y-coefficient vanishes at a
            sq = gy.gcd(gy.derivative())
            if sq.degree() > 0:
                continue  # ramified or repeated roots; pick elsewhere
            rs = roots(gy)
            if not rs:
                continue
            self.a = a
            self.b = rs[0]
            return
        raise RuntimeError("could not draw a sample place")  # pragma: no cover

    def eval_vec(self, vec_lifted):
        return [g.eval(self.a, self.b) for g in vec_lifted]


class _AllPlacesPoledOut(Exception):
    pass


class _ScreenOracle:
    """Scalar rank tests at sampled places; accepts carry exact certificates.

    A place whose evaluation hits a pole can no longer certify the full
    committed row set and is dropped; with no live places left the whole
    scan is retried at a fresh seed.
    """

    def __init__(self, morphism, seed, places=2):
        self.morphism = morphism
        self.seed = seed
        rng = random.Random(seed)
        self.places = [_SamplePlace(morphism, rng) for _ in range(places)]
        self.echelons = [[] for _ in self.places]
        self.alive = [True] * len(self.places)
        sub = morphism.curve.field

        def lift(vec, place):
            def emb(raw):
                return embed_raw(raw, sub, place.ext)
            return [g.map_curve(place.lifted, emb) for g in vec]

        self._lift = lift

    def try_add(self, vec):
        evals = [None] * len(self.places)
        for k, place in enumerate(self.places):
            if not self.alive[k]:
                continue
            lifted = self._lift(vec, place)
            try:
                evals[k] = place.eval_vec(lifted)
            except (PoleError, ZeroDivisionError):
                self.alive[k] = False
        if not any(self.alive):
            raise _AllPlacesPoledOut
        accept = any(
            self.alive[k] and evals[k] is not None
            and self._scalar_reduce(self.echelons[k], evals[k]) is not None
            for k in range(len(self.places)))
        if not accept:
            return False
        for k, scal in enumerate(evals):
            if not self.alive[k] or scal is None:
                continue
            red = self._scalar_reduce(self.echelons[k], scal)
            if red is None:
                # the row is dependent at this place but independent over K;
                # the place can no longer witness the committed row set
                self.alive[k] = False
            else:
                self.echelons[k].append(red)
        if not any(self.alive):
            raise _AllPlacesPoledOut
        return True

    @staticmethod
    def _scalar_reduce(echelon, scal):
        vec = list(scal)
        for piv, row in echelon:
            c = vec[piv]
            if not c.is_zero():
                for i in range(len(vec)):
                    vec[i] = vec[i] - c * row[i]
        piv = next((i for i, v in enumerate(vec) if not v.is_zero()), None)
        if piv is None:
            return None
        inv = vec[piv].inverse()
        return piv, [v * inv for v in vec]


_EXACT_FROB_LIMIT = 256


def _pick_mode(morphism, frob_levels, rank_mode):
    if rank_mode in ("exact", "screen"):
        return rank_mode
    if rank_mode != "auto":
        raise ValueError(f"unknown rank mode {rank_mode!r}")
    q = morphism.base_order
    big = any(q ** r > _EXACT_FROB_LIMIT for r in frob_levels)
    if big or (frob_levels and morphism.n > 3):
        return "screen"
    return "exact"


def _greedy(morphism, frob_levels, count, *, rank_mode="auto", seed=0):
    """Seed with Frobenius rows, then pick `count` Hasse orders greedily."""
    mode = _pick_mode(morphism, frob_levels, rank_mode)
    for attempt in range(5):
        if mode == "exact":
            oracle = _ExactEchelon(morphism.n + 1)
        else:
            oracle = _ScreenOracle(morphism, seed + 1009 * attempt)
        try:
            return _greedy_scan(morphism, frob_levels, count, oracle), mode
        except _AllPlacesPoledOut:
            continue
    raise RuntimeError("all screen places hit poles repeatedly")


def _greedy_scan(morphism, frob_levels, count, oracle):
    for r in frob_levels:
        if not oracle.try_add(morphism.frobenius_row(r)):
            raise DegenerateMorphismError(
                f"Frobenius row q^{r} did not enlarge the row space")
    picked = []
    e = 0
    cap = morphism.deg_series
    while len(picked) < count:
        if e > cap:
            raise DegenerateMorphismError(
                f"only {len(picked)} independent derivative rows with "
                f"orders <= deg(D) = {cap}; morphism degenerate or "
                "deg_series metadata wrong")
        if oracle.try_add(morphism.hasse_row(e)):
            picked.append(e)
        e += 1
    return picked


def generic_orders(morphism, *, rank_mode="auto", seed=0):
    """The order sequence (lexicographic minimum with nonzero Wronskian)."""
    vals, _ = _greedy(morphism, [], morphism.n + 1,
                      rank_mode=rank_mode, seed=seed)
    return OrderSeq(("generic",), tuple(vals))


def frobenius_orders(morphism, r, *, rank_mode="auto", seed=0):
    """Frobenius order sequence over the degree-r extension of the base."""
    if r < 1:
        raise ValueError("extension level r must be >= 1")
    vals, _ = _greedy(morphism, [r], morphism.n,
                      rank_mode=rank_mode, seed=seed)
    return OrderSeq(("frobenius", r), tuple(vals))


def kappa_orders(morphism, u, m, *, rank_mode="auto", seed=0):
    """Order sequence seeded with both q^m and q^u Frobenius rows."""
    _check_um(u, m)
    vals, _ = _greedy(morphism, [m, u], morphism.n - 1,
                      rank_mode=rank_mode, seed=seed)
    return OrderSeq(("kappa", u, m), tuple(vals))


def _check_um(u, m):
    import math
    if not (m > u >= 1):
        raise CoprimalityError(f"need m > u >= 1, got u={u}, m={m}")
    if math.gcd(u, m) != 1:
        raise CoprimalityError(f"u={u} and m={m} are not coprime")


# ---------------------------------------------------------------------------
# exact determinants
# ---------------------------------------------------------------------------

def _det(rows):
    """Exact determinant of a square AlgFunc matrix.

    Laplace expansion along the first two rows (which carry the big
    Frobenius powers when present), with subset-DP minors for the rest.
    Division-free, so no spurious zero-pivot failures.
    """
    k = len(rows)
    curve = rows[0][0].curve
    zero = AlgFunc.zero(curve)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if k == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return (a * (e * i - f * h) - b * (d * i - f * g)
                + c * (d * h - e * g))
    cols = list(range(k))
    lower = rows[2:]
    one = AlgFunc.one(curve)
    memo = {(): one}

    def lower_minor(remaining):
        # determinant of the lower rows on the given columns; the row to
        # expand along is implied by how many columns are left
        if remaining in memo:
            return memo[remaining]
        row_idx = len(lower) - len(remaining)
        total = zero
        sign = 1
        for pos, col in enumerate(remaining):
            entry = lower[row_idx][col]
            if not entry.is_zero():
                term = entry * lower_minor(remaining[:pos] + remaining[pos + 1:])
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[remaining] = total
        return total

    total = zero
    for li in range(k):
        for ki_ in range(li + 1, k):
            two = (rows[0][li] * rows[1][ki_]
                   - rows[0][ki_] * rows[1][li])
            if two.is_zero():
                continue
            rest = tuple(c for c in cols if c not in (li, ki_))
            sub = lower_minor(rest)
            if sub.is_zero():
                continue
            term = two * sub
            # Laplace sign (-1)^(0 + 1 + li + ki)
            if (li + ki_) % 2:
                total = total + term
            else:
                total = total - term
    return total


def wronskian_A(morphism, u, m, rho):
    """The (n+1)x(n+1) determinant with rows phi^(q^m), phi^(q^u) and the
    Hasse rows D^(rho_i) phi, as an exact element of K."""
    _check_um(u, m)
    rho = tuple(rho)
    if len(rho) != morphism.n - 1:
        raise ValueError(f"need {morphism.n - 1} derivative orders")
    if any(a >= b for a, b in zip(rho, rho[1:])) or any(r < 0 for r in rho):
        raise ValueError("orders must be strictly increasing and >= 0")
    rows = [morphism.frobenius_row(m), morphism.frobenius_row(u)]
    rows += [morphism.hasse_row(e) for e in rho]
    return _det(rows)


def generic_wronskian(morphism, eps):
    rows = [morphism.hasse_row(e) for e in eps]
    return _det(rows)


def frobenius_wronskian(morphism, r, nu):
    rows = [morphism.frobenius_row(r)]
    rows += [morphism.hasse_row(e) for e in nu]
    return _det(rows)


def verify_minimality(morphism, seq):
    """Exhaustive exact check that every single-entry decrease of the
    sequence gives a singular row system.  Raises ReportedViolation."""
    kind = seq.kind
    vals = list(seq.values)

    def system_det(values):
        if kind[0] == "generic":
            return generic_wronskian(morphism, values)
        if kind[0] == "frobenius":
            return frobenius_wronskian(morphism, kind[1], values)
        return wronskian_A(morphism, kind[1], kind[2], values)

    if system_det(vals).is_zero():
        raise ReportedViolation(f"{seq} has a singular row system")
    used = set(vals)
    for i, v in enumerate(vals):
        lo = vals[i - 1] + 1 if i else 0
        for smaller in range(lo, v):
            if smaller in used:
                continue
            trial = sorted(set(vals) - {v} | {smaller})
            if not system_det(trial).is_zero():
                raise ReportedViolation(
                    f"{seq}: replacing {v} by {smaller} still has full rank, "
                    "so the sequence is not minimal")


# ---------------------------------------------------------------------------
# classicality report
# ---------------------------------------------------------------------------

@dataclass
class ClassicalityReport:
    u: int
    m: int
    epsilon: OrderSeq
    nu_u: OrderSeq
    mu_m: OrderSeq
    kappa: OrderSeq
    classical: bool
    frobenius_classical_u: bool
    frobenius_classical_m: bool
    kappa_classical: bool
    dropped_from_nu: int
    dropped_from_mu: int
    checks: dict
    seed: int
    rank_mode: str

    def as_dict(self):
        return {
            "u": self.u, "m": self.m,
            "epsilon": list(self.epsilon.values),
            "nu_u": list(self.nu_u.values),
            "mu_m": list(self.mu_m.values),
            "kappa": list(self.kappa.values),
            "classical": self.classical,
            "frobenius_classical_u": self.frobenius_classical_u,
            "frobenius_classical_m": self.frobenius_classical_m,
            "kappa_classical": self.kappa_classical,
            "dropped_from_nu": self.dropped_from_nu,
            "dropped_from_mu": self.dropped_from_mu,
            "checks": self.checks,
            "seed": self.seed,
            "rank_mode": self.rank_mode,
        }


def classicality_report(morphism, u, m, *, rank_mode="auto", seed=0):
    """Compute all four sequences and verify the theorem-mandated relations.

    Any failed mandated relation raises ReportedViolation: it signals an
    implementation bug, never a mathematical outcome.
    """
    _check_um(u, m)
    eps = generic_orders(morphism, rank_mode=rank_mode, seed=seed)
    nu = frobenius_orders(morphism, u, rank_mode=rank_mode, seed=seed)
    mu = frobenius_orders(morphism, m, rank_mode=rank_mode, seed=seed)
    kap = kappa_orders(morphism, u, m, rank_mode=rank_mode, seed=seed)
    p = morphism.curve.field.p
    n = morphism.n
    checks = {}

    kset, nset, mset = set(kap.values), set(nu.values), set(mu.values)
    if not (kset <= nset and len(nset - kset) == 1):
        raise ReportedViolation(
            f"kappa {kap.values} is not nu {nu.values} minus one element")
    if not (kset <= mset and len(mset - kset) == 1):
        raise ReportedViolation(
            f"kappa {kap.values} is not mu {mu.values} minus one element")
    dropped_nu = (nset - kset).pop()
    dropped_mu = (mset - kset).pop()
    checks["set_relation"] = True

    # p divides the first out-of-place kappa entry
    first_bad = next((i for i, v in enumerate(kap.values) if v > i), None)
    if first_bad is None:
        checks["p_divides_first_jump"] = "vacuous"
    else:
        if kap.values[first_bad] % p != 0:
            raise ReportedViolation(
                f"kappa_{first_bad} = {kap.values[first_bad]} is not "
                f"divisible by p = {p}")
        checks["p_divides_first_jump"] = True

    # kappa_0 > 0 forces kappa_0 = q^u
    if kap.values[0] > 0:
        if kap.values[0] != morphism.base_order ** u:
            raise ReportedViolation(
                f"kappa_0 = {kap.values[0]} differs from q^u = "
                f"{morphism.base_order ** u}")
        checks["kappa0_equals_qu"] = True
    else:
        checks["kappa0_equals_qu"] = "vacuous"

    kap_classical = kap.is_classical()
    if p > morphism.deg_series and not kap_classical:
        raise ReportedViolation(
            "p > deg(D) but the two-Frobenius sequence is nonclassical")
    checks["classical_when_p_large"] = (
        True if p > morphism.deg_series else "vacuous")

    nu_classical = nu.is_classical()
    mu_classical = mu.is_classical()
    if not kap_classical and p > n - 1:
        if nu_classical or mu_classical:
            raise ReportedViolation(
                "kappa nonclassical with p > n-1, but a Frobenius sequence "
                "is classical")
        checks["nonclassical_propagates"] = True
    else:
        checks["nonclassical_propagates"] = "vacuous"

    mode = _pick_mode(morphism, [u, m], rank_mode)
    return ClassicalityReport(
        u=u, m=m, epsilon=eps, nu_u=nu, mu_m=mu, kappa=kap,
        classical=eps.is_classical(),
        frobenius_classical_u=nu_classical,
        frobenius_classical_m=mu_classical,
        kappa_classical=kap_classical,
        dropped_from_nu=dropped_nu,
        dropped_from_mu=dropped_mu,
        checks=checks, seed=seed, rank_mode=mode)
