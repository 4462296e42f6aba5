"""Closed-form point-count bounds with verified hypotheses.

All arithmetic is exact (integers and fractions); floors happen once, at
record emission.  Every record carries its inputs, whether the governing
hypotheses were verified, and the slack rhs - lhs.  A negative slack on a
record whose hypotheses verified signals an implementation bug upstream
(census, orders, or valuations) and raises ReportedViolation there, not
here: the evaluators themselves just report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import EmptyClassError


@dataclass
class BoundRecord:
    formula_id: str
    lhs: object                 # int or Fraction
    rhs: object                 # int or Fraction
    inputs: dict
    hypotheses_verified: bool
    hypothesis_detail: str = ""
    applicable: bool = True

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def holds(self):
        return self.slack >= 0

    def implied_bound(self, coeff, other):
        """Largest integer N with coeff*N + other <= rhs."""
        return _floor_frac((Fraction(self.rhs) - other) / coeff)

    def as_dict(self):
        def enc(v):
            if isinstance(v, Fraction):
                return {"num": v.numerator, "den": v.denominator}
            return v
        return {
            "formula_id": self.formula_id,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "slack": enc(self.slack),
            "inputs": {k: enc(v) for k, v in self.inputs.items()},
            "hypotheses_verified": self.hypotheses_verified,
            "hypothesis_detail": self.hypothesis_detail,
            "applicable": self.applicable,
        }


def _floor_frac(v):
    if isinstance(v, Fraction):
        return v.numerator // v.denominator
    return v


# ---------------------------------------------------------------------------
# baselines
# ---------------------------------------------------------------------------

def weil_bound(g, q, r=1):
    """1 + q^r + floor(2 g sqrt(q^r)), exact integer arithmetic."""
    if g < 0 or r < 1:
        raise ValueError("need g >= 0 and r >= 1")
    Q = q ** r
    return 1 + Q + math.isqrt(4 * g * g * Q)


def ihara_bound(g, q):
    """floor(q + 1 + (sqrt((8q+1) g^2 + 4(q^2-q) g) - g) / 2)."""
    if g < 0:
        raise ValueError("need g >= 0")
    X = (8 * q + 1) * g * g + 4 * (q * q - q) * g
    return q + 1 + (math.isqrt(X) - g) // 2


def sv_bound(nu_sum, g, q, n, d):
    """(sum nu_i (2g - 2) + (q + n) d) / 2 as an exact fraction."""
    return Fraction(nu_sum * (2 * g - 2) + (q + n) * d, 2)


def deg_T(kappa_sum, g, q, u, m, n, d):
    """Degree of the two-Frobenius divisor."""
    return kappa_sum * (2 * g - 2) + (q ** m + q ** u + n - 1) * d


# ---------------------------------------------------------------------------
# the main bound and its corollaries
# ---------------------------------------------------------------------------

def analytic_c_values(epsilon, kappa, q, u, m, n):
    """Per-class valuation floors used when classes are not enumerated:
    c_1 >= q^u + eps_2 (n-1), c_(m-u) >= q^u, and the level-u/m floors
    from the generic case inequality with j_i >= eps_i."""
    eps = epsilon.values
    kap = kappa.values
    c_um = sum(eps[i] - kap[i - 1] for i in range(1, n))
    return {
        1: q ** u + eps[2] * (n - 1),
        "u": max(c_um, 1),
        "m": max(c_um, 1),
        "m-u": q ** u,
    }


def main_bound_44(counts, c_values, *, kappa_sum, g, d, n, q, u, m,
                  corrections=0, c_mode="exact", empty_classes=()):
    """The weighted-count inequality against deg(T) minus corrections.

    counts holds N_r for r in {1, u, m, m-u}; c_values maps the same keys
    to the per-class minimum valuations (exact mode) or floors (analytic).
    Empty classes contribute nothing and are recorded.
    """
    n1 = counts[1]
    lhs = 0
    detail = []
    for key, level in (("1", 1), ("u", u), ("m", m), ("m-u", m - u)):
        size = n1 if key == "1" else counts[level] - n1
        if level in empty_classes or size == 0:
            detail.append(f"class {key} empty; term dropped")
            continue
        c = c_values[1 if key == "1" else key]
        lhs += c * size
    rhs = deg_T(kappa_sum, g, q, u, m, n, d) - corrections
    return BoundRecord(
        formula_id="thm44",
        lhs=lhs, rhs=rhs,
        inputs={"q": q, "u": u, "m": m, "n": n, "d": d, "g": g,
                "kappa_sum": kappa_sum, "c_mode": c_mode,
                "c_values": {str(k): v for k, v in c_values.items()},
                "counts": {str(k): counts[k]
                           for k in sorted({1, u, m, m - u})},
                "corrections": corrections},
        hypotheses_verified=True,
        hypothesis_detail="; ".join(detail) if detail else "all classes used")


def cor46_bound(counts, *, g, d, n, q, u, m, correction_sum=0,
                kappa_classical=True):
    """(n-1) N_u + (n-1) N_m + q^u N_(m-u) against the classical right side."""
    lhs = ((n - 1) * counts[u] + (n - 1) * counts[m]
           + q ** u * counts[m - u])
    rhs = ((n - 1) * (n - 2) * (g - 1)
           + d * (q ** m + q ** u + n - 1) - correction_sum)
    return BoundRecord(
        formula_id="cor46", lhs=lhs, rhs=rhs,
        inputs={"q": q, "u": u, "m": m, "n": n, "d": d, "g": g,
                "correction_sum": correction_sum},
        hypotheses_verified=kappa_classical,
        hypothesis_detail="requires the two-Frobenius sequence classical",
        applicable=kappa_classical)


def cor47_bound(n1, n2, *, d, q, correction_sum=0, formula_id="cor47"):
    """(q+1) N_1 + N_2 <= d (q^2 + q + 1) - corrections, plane curves."""
    lhs = (q + 1) * n1 + n2
    rhs = d * (q * q + q + 1) - correction_sum
    return BoundRecord(
        formula_id=formula_id, lhs=lhs, rhs=rhs,
        inputs={"q": q, "d": d, "N_1": n1, "N_2": n2,
                "correction_sum": correction_sum},
        hypotheses_verified=True,
        hypothesis_detail="plane curve of degree > 1")


def eq52_bound(n1, *, d, q):
    """N_1 <= (q - 1 + 3/(q+2)) d, the N_1-only consequence."""
    rhs = (Fraction(q - 1) + Fraction(3, q + 2)) * d
    return BoundRecord(
        formula_id="eq52", lhs=n1, rhs=rhs,
        inputs={"q": q, "d": d, "N_1": n1},
        hypotheses_verified=True,
        hypothesis_detail="plane curve; uses N_1 <= N_2")


def eq53_bound(n1, *, d, q, has_total_inflection):
    """N_1 <= ((q^2 + q) d + 2) / (q + 2) given a rational total inflection."""
    rhs = Fraction((q * q + q) * d + 2, q + 2)
    return BoundRecord(
        formula_id="eq53", lhs=n1, rhs=rhs,
        inputs={"q": q, "d": d, "N_1": n1},
        hypotheses_verified=has_total_inflection,
        hypothesis_detail="needs a rational point with j_2 = d",
        applicable=has_total_inflection)


def prop410_bound(counts, *, eps_k, eps_n, g, d, n, q, u, m, eps_mid_sum,
                  hypotheses_ok, detail=""):
    """eps_k N_u + eps_n N_m + q^u N_(m-u) against the refined right side."""
    lhs = eps_k * counts[u] + eps_n * counts[m] + q ** u * counts[m - u]
    rhs = (2 * g - 2) * eps_mid_sum + d * (q ** m + q ** u + n - 1)
    return BoundRecord(
        formula_id="prop410", lhs=lhs, rhs=rhs,
        inputs={"q": q, "u": u, "m": m, "n": n, "d": d, "g": g,
                "eps_k": eps_k, "eps_n": eps_n},
        hypotheses_verified=hypotheses_ok, hypothesis_detail=detail,
        applicable=hypotheses_ok)


def cor411_bound(counts, *, eps2, d, q, u, m, hypotheses_ok, detail="",
                 formula_id="cor411"):
    """eps_2 N_m + q^u N_(m-u) <= (q^m + d - 1) d for Frobenius
    nonclassical plane curves with unit first orders at level m."""
    lhs = eps2 * counts[m] + q ** u * counts[m - u]
    rhs = (q ** m + d - 1) * d
    return BoundRecord(
        formula_id=formula_id, lhs=lhs, rhs=rhs,
        inputs={"q": q, "u": u, "m": m, "d": d, "eps_2": eps2},
        hypotheses_verified=hypotheses_ok, hypothesis_detail=detail,
        applicable=hypotheses_ok)


def prop413_bound(n1, n2, *, eps_k, eps_n, eps_mid_sum, g, d, n, q,
                  correction_sum, hypotheses_ok, detail="",
                  formula_id="prop413"):
    """(q + eps_k) N_1 + eps_n N_2 against the corrected right side
    (the m = 2 refinement with per-point corrections)."""
    lhs = (q + eps_k) * n1 + eps_n * n2
    rhs = ((2 * g - 2) * eps_mid_sum + d * (q * q + q + n - 1)
           - correction_sum)
    return BoundRecord(
        formula_id=formula_id, lhs=lhs, rhs=rhs,
        inputs={"q": q, "n": n, "d": d, "g": g, "eps_k": eps_k,
                "eps_n": eps_n, "N_1": n1, "N_2": n2,
                "correction_sum": correction_sum},
        hypotheses_verified=hypotheses_ok, hypothesis_detail=detail,
        applicable=hypotheses_ok)


def degT_record(*, kappa_sum, g, q, u, m, n, d):
    val = deg_T(kappa_sum, g, q, u, m, n, d)
    return BoundRecord(
        formula_id="degT", lhs=val, rhs=val,
        inputs={"q": q, "u": u, "m": m, "n": n, "d": d, "g": g,
                "kappa_sum": kappa_sum},
        hypotheses_verified=True, hypothesis_detail="definition")
