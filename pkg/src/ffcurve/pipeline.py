"""Orchestration: runs the order engine, census, and per-place analysis
for a catalog instance and assembles bound records with verified
hypotheses and per-point corrections.

Precision policy: branches start at 2 (deg D + n + 2) and double on
PrecisionExhausted up to deg(T) + 8; a valuation of the (globally
nonzero) Wronskian at one place can never exceed the divisor degree, so
the retry always terminates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import bounds as bnd
from .census import extension_field
from .errors import EmptyClassError, PrecisionExhaustedError, ReportedViolation
from .field import binom_det_mod_p
from .local import check_point_bounds, point_orders, valuation_T
from .orders import classicality_report


@dataclass
class PlaceAnalysis:
    label: str
    kind: str
    level: int
    rat_levels: frozenset
    j: tuple
    e_p: int
    v: int

    def as_dict(self):
        return {"label": self.label, "level": self.level,
                "rat_levels": sorted(self.rat_levels),
                "j": list(self.j), "e_p": self.e_p, "v": self.v}


@dataclass
class Analysis:
    instance: object
    morphism_name: str
    u: int
    m: int
    report: object               # ClassicalityReport
    counts: object               # CountTable
    places: list                 # [PlaceAnalysis]
    c_exact: dict                # level -> min valuation (present classes)
    empty_classes: tuple
    seed: int

    @property
    def levels(self):
        return sorted({1, self.u, self.m, self.m - self.u})

    def places_at(self, level):
        return [p for p in self.places if level in p.rat_levels]

    def sum_v(self):
        return sum(p.v for p in self.places if p.v is not None)


def _prec0(morphism):
    return 2 * (morphism.deg_series + morphism.n + 2)


def analyze_place(morphism, ref, u, m, kappa, *, prec0, cap, want_v=True):
    """Branch with doubling retry; returns (PointOrders, valuation or None)."""
    lifted = morphism.change_field(
        extension_field(morphism.curve.field, ref.level))
    prec = prec0
    while True:
        br = ref.branch(prec)
        try:
            po = point_orders(lifted, br, rat_levels=ref.rat_levels)
            v = valuation_T(lifted, br, u, m, kappa) if want_v else None
            return po, v
        except PrecisionExhaustedError:
            prec *= 2
            if prec > cap:
                raise


def analyze(instance, morphism_name, u, m, *, seed=0, rank_mode="auto",
            workers=1, point_levels=None, v_levels=None, with_points=True):
    """Full pipeline for one instance and exponent pair.

    point_levels restricts which rationality levels get per-place
    analysis; v_levels further restricts which of those get the Wronskian
    valuation (orders alone suffice for several hypothesis checks and are
    much cheaper at large extensions).
    """
    morphism = instance.morphism(morphism_name)
    report = classicality_report(morphism, u, m,
                                 rank_mode=rank_mode, seed=seed)
    levels = sorted({1, u, m, m - u})
    counts = instance.count_table(levels, workers=workers)
    places = []
    c_exact = {}
    empty = []
    if with_points:
        if point_levels is None:
            point_levels = levels
        if v_levels is None:
            v_levels = point_levels
        kappa = report.kappa
        d = morphism.deg_series
        g = instance.genus
        cap = bnd.deg_T(kappa.total, g if g is not None else 0,
                        morphism.base_order, u, m, morphism.n, d) + 8
        for ref in instance.enumerate_places(point_levels):
            want_v = ref.level in v_levels
            po, v = analyze_place(morphism, ref, u, m, kappa,
                                  prec0=_prec0(morphism), cap=cap,
                                  want_v=want_v)
            places.append(PlaceAnalysis(
                label=ref.label, kind=ref.kind, level=ref.level,
                rat_levels=ref.rat_levels, j=po.j.values, e_p=po.e_p, v=v))
        for r in levels:
            members = [p for p in places if r in p.rat_levels]
            if not members:
                if r in point_levels:
                    empty.append(r)
                continue
            # the exact class minimum needs the whole class valuated
            if all(p.v is not None for p in members):
                c_exact[r] = min(p.v for p in members)
    return Analysis(instance=instance, morphism_name=morphism_name,
                    u=u, m=m, report=report, counts=counts, places=places,
                    c_exact=c_exact, empty_classes=tuple(empty), seed=seed)


def verify_place_inequalities(analysis):
    """Run the per-point case inequalities at every analyzed place.

    Raises ReportedViolation on any failure; returns the report list.
    """
    rep = analysis.report
    inst = analysis.instance
    p = inst.field.p
    q = inst.morphism(analysis.morphism_name).base_order
    out = []
    from .local import PointOrders
    from .orders import OrderSeq
    for pa in analysis.places:
        if pa.v is None:
            continue
        po = PointOrders(
            j=OrderSeq(("pointwise", pa.label), pa.j),
            e_p=pa.e_p, center=pa.label, rat_levels=pa.rat_levels)
        out.append(check_point_bounds(
            po, rep.kappa, rep.epsilon, pa.v, p=p,
            qu=q ** analysis.u, u=analysis.u, m=analysis.m,
            nu=rep.nu_u, mu=rep.mu_m))
    return out


# ---------------------------------------------------------------------------
# hypothesis checks shared by the refined bounds
# ---------------------------------------------------------------------------

def split_shape(report):
    """The refined-bound shape: mu agrees with epsilon up to n-1 and nu is
    epsilon with one middle entry dropped.  Returns k or None."""
    eps = report.epsilon.values
    n = len(eps) - 1
    if report.mu_m.values != eps[:n]:
        return None
    if not (set(report.nu_u.values) <= set(eps)
            and len(set(eps) - set(report.nu_u.values)) == 1):
        return None
    k = eps.index((set(eps) - set(report.nu_u.values)).pop())
    if not 1 <= k <= n - 1:
        return None
    return k


def binomial_condition_at_level_m(analysis):
    """p does not divide det(C(j_i, eps_r)) for 0 <= i, r <= n-1 at every
    analyzed level-m place outside the rational class."""
    rep = analysis.report
    eps = rep.epsilon.values
    n = len(eps) - 1
    p = analysis.instance.field.p
    for pa in analysis.places_at(analysis.m):
        if 1 in pa.rat_levels:
            continue
        if binom_det_mod_p(pa.j[:n], eps[:n], p) == 0:
            return False, pa.label
    return True, ""


def unit_j1_at_level_m(analysis):
    p = analysis.instance.field.p
    for pa in analysis.places_at(analysis.m):
        if 1 in pa.rat_levels:
            continue
        if pa.j[1] % p == 0:
            return False, pa.label
    return True, ""


# ---------------------------------------------------------------------------
# record assembly
# ---------------------------------------------------------------------------

def records_for(analysis, *, c_mode="auto", with_corrections=True):
    """Every applicable bound record for the analysis."""
    inst = analysis.instance
    rep = analysis.report
    u, m = analysis.u, analysis.m
    morphism = inst.morphism(analysis.morphism_name)
    q = morphism.base_order
    n = morphism.n
    d = morphism.deg_series
    g = inst.genus
    counts = analysis.counts
    kappa = rep.kappa
    eps = rep.epsilon
    p = inst.field.p
    records = []

    if g is None:
        raise ReportedViolation(
            f"{inst.name}: genus unknown; bounds need genus metadata")

    records.append(bnd.degT_record(
        kappa_sum=kappa.total, g=g, q=q, u=u, m=m, n=n, d=d))

    # main bound; exact class minima where the class was fully valuated,
    # the analytic floors elsewhere (any valid per-class lower bound keeps
    # the inequality true)
    mode = c_mode
    if mode == "auto":
        mode = "exact" if analysis.c_exact else "analytic"
    floors = bnd.analytic_c_values(eps, kappa, q, u, m, n)
    if mode == "exact" and analysis.c_exact:
        ce = analysis.c_exact
        c_values = {1: ce.get(1, floors[1]),
                    "u": ce.get(u, floors["u"]),
                    "m": ce.get(m, floors["m"]),
                    "m-u": ce.get(m - u, floors["m-u"])}
    else:
        mode = "analytic"
        c_values = floors
    corrections = 0
    level1 = analysis.places_at(1)
    level1_v_complete = bool(level1) and all(
        p_.v is not None for p_ in level1)
    if with_corrections and mode == "exact" and 1 in analysis.c_exact \
            and level1_v_complete:
        c1 = analysis.c_exact[1]
        corrections = sum(p_.v - c1 for p_ in level1)
    records.append(bnd.main_bound_44(
        counts, c_values, kappa_sum=kappa.total, g=g, d=d, n=n, q=q,
        u=u, m=m, corrections=corrections, c_mode=mode,
        empty_classes=analysis.empty_classes))

    # classical-kappa corollary
    if kappa.is_classical():
        corr46 = 0
        if with_corrections and analysis.places:
            qu = q ** u
            for pa in level1:
                corr46 += qu * (pa.j[1] - 1) + sum(
                    pa.j[i] - i for i in range(2, n + 1))
        records.append(bnd.cor46_bound(
            counts, g=g, d=d, n=n, q=q, u=u, m=m,
            correction_sum=corr46, kappa_classical=True))

    # plane-curve specializations at (u, m) = (1, 2)
    if n == 2 and (u, m) == (1, 2):
        corr51 = 0
        if with_corrections and analysis.places:
            for pa in analysis.places_at(1):
                corr51 += q * (pa.j[1] - 1) + (pa.j[2] - 2)
        records.append(bnd.cor47_bound(
            counts[1], counts[2], d=d, q=q, correction_sum=corr51,
            formula_id="cor47"))
        records.append(bnd.cor47_bound(
            counts[1], counts[2], d=d, q=q, correction_sum=corr51,
            formula_id="eq51"))
        records.append(bnd.eq52_bound(counts[1], d=d, q=q))
        has_ti = any(pa.j[-1] == d for pa in analysis.places_at(1))
        records.append(bnd.eq53_bound(
            counts[1], d=d, q=q, has_total_inflection=has_ti))

    # refined bounds under the split Frobenius shape
    k = split_shape(rep)
    if k is not None:
        ok_det, bad = binomial_condition_at_level_m(analysis)
        detail = ("split shape verified; binomial dets unit at level m"
                  if ok_det else
                  f"binomial determinant divisible by p at {bad}")
        eps_mid_sum = sum(eps.values[i] for i in range(1, n) if i != k)
        records.append(bnd.prop410_bound(
            counts, eps_k=eps.values[k], eps_n=eps.values[n], g=g, d=d,
            n=n, q=q, u=u, m=m, eps_mid_sum=eps_mid_sum,
            hypotheses_ok=ok_det, detail=detail))
        if m == 2:
            corr = 0
            if with_corrections and level1_v_complete:
                # exact per-point excess over the charged weight
                charge = q ** u + eps.values[k] + eps.values[n]
                for pa in level1:
                    b = pa.v - charge
                    if b < 0:
                        raise ReportedViolation(
                            f"negative excess {b} at {pa.label}")
                    corr += b
            elif with_corrections and analysis.places:
                # order-only floor for the excess
                qu = q ** u
                for pa in level1:
                    b = qu * (pa.j[1] - 1) - pa.j[1] + sum(
                        pa.j[i] - eps.values[i] for i in range(1, n + 1))
                    corr += max(b, 0)
            records.append(bnd.prop413_bound(
                counts[1], counts[2], eps_k=eps.values[k],
                eps_n=eps.values[n], eps_mid_sum=eps_mid_sum, g=g, d=d,
                n=n, q=q, correction_sum=corr, hypotheses_ok=ok_det,
                detail=detail, formula_id="prop413"))
            if n > 2:
                records.append(bnd.prop413_bound(
                    counts[1], counts[2], eps_k=eps.values[k],
                    eps_n=eps.values[n], eps_mid_sum=eps_mid_sum, g=g,
                    d=d, n=n, q=q, correction_sum=corr,
                    hypotheses_ok=ok_det, detail=detail,
                    formula_id="eq56"))

    # Frobenius-nonclassical plane corollary; it descends from the split
    # shape, so the level-m sequence must be classical (a curve that is
    # Frobenius nonclassical at both levels is exactly the excluded case)
    if n == 2 and not rep.frobenius_classical_u and k is not None:
        ok_j1, bad = unit_j1_at_level_m(analysis)
        detail = ("Frobenius nonclassical at level u; unit j_1 at level m"
                  if ok_j1 else f"j_1 divisible by p at {bad}")
        records.append(bnd.cor411_bound(
            counts, eps2=eps.values[2], d=d, q=q, u=u, m=m,
            hypotheses_ok=ok_j1, detail=detail, formula_id="cor411"))
        records.append(bnd.cor411_bound(
            counts, eps2=eps.values[2], d=d, q=q, u=u, m=m,
            hypotheses_ok=ok_j1, detail=detail, formula_id="eq57"))

    for rec in records:
        if rec.applicable and rec.hypotheses_verified and not rec.holds:
            raise ReportedViolation(
                f"{rec.formula_id} violated on {inst.name}: "
                f"lhs {rec.lhs} > rhs {rec.rhs}")
    return records


# ---------------------------------------------------------------------------
# comparison report
# ---------------------------------------------------------------------------

@dataclass
class CompareReport:
    analysis: Analysis
    records: list
    baselines: dict              # target level -> {weil, ihara, sv}
    implied: dict                # target level -> {formula_id: bound}
    best: dict                   # target level -> (formula_id, bound)

    def as_dict(self):
        return {
            "curve": self.analysis.instance.name,
            "params": self.analysis.instance.params,
            "u": self.analysis.u, "m": self.analysis.m,
            "seed": self.analysis.seed,
            "rank_mode": self.analysis.report.rank_mode,
            "orders": self.analysis.report.as_dict(),
            "counts": self.analysis.counts.as_dict(),
            "records": [r.as_dict() for r in self.records],
            "baselines": {str(k): v for k, v in self.baselines.items()},
            "implied": {str(k): v for k, v in self.implied.items()},
            "best": {str(k): list(v) for k, v in self.best.items()},
        }


def _implied_for_record(rec, counts, target, u, m, q):
    """Bound on N_target implied by the record, when it is linear there."""
    fid = rec.formula_id
    n1 = counts[1]
    if fid in ("cor47", "eq51") and target == 2:
        return rec.rhs - (q + 1) * n1
    if fid in ("prop413", "eq56") and target == 2:
        eps_n = rec.inputs["eps_n"]
        other = (q + rec.inputs["eps_k"]) * n1
        return rec.implied_bound(eps_n, other)
    if fid in ("cor411", "eq57") and target == m:
        other = q ** u * counts[m - u]
        return rec.implied_bound(rec.inputs["eps_2"], other)
    if fid == "thm44" and target == m and target != 1:
        cm = rec.inputs["c_values"].get("m")
        if not cm:
            return None
        other = rec.lhs - cm * (counts[m] - n1)
        return n1 + rec.implied_bound(cm, other)
    if fid == "cor46" and target == m:
        n = rec.inputs["n"]
        if n - 1 <= 0:
            return None
        other = rec.lhs - (n - 1) * counts[m]
        return rec.implied_bound(n - 1, other)
    return None


def compare_report(analysis, targets=None, **record_kw):
    """Records plus implied per-target bounds and the classical baselines."""
    inst = analysis.instance
    morphism = inst.morphism(analysis.morphism_name)
    q = morphism.base_order
    u, m = analysis.u, analysis.m
    records = records_for(analysis, **record_kw)
    if targets is None:
        targets = [m]
    baselines = {}
    implied = {}
    best = {}
    g = inst.genus
    nu_sums = {}
    for t in targets:
        from .orders import frobenius_orders
        nu_t = frobenius_orders(morphism, t, seed=analysis.seed)
        baselines[t] = {
            "weil": bnd.weil_bound(g, q, t),
            "ihara": bnd.ihara_bound(g, q ** t),
            "sv": bnd._floor_frac(bnd.sv_bound(
                nu_t.total, g, q ** t, morphism.n, morphism.deg_series)),
        }
        per = {}
        for rec in records:
            if not (rec.applicable and rec.hypotheses_verified):
                continue
            got = _implied_for_record(rec, analysis.counts, t, u, m, q)
            if got is not None:
                per[rec.formula_id] = bnd._floor_frac(got)
        implied[t] = per
        candidates = dict(per)
        candidates.update(baselines[t])
        fid, val = min(candidates.items(), key=lambda kv: (kv[1], kv[0]))
        best[t] = (fid, val)
    return CompareReport(analysis=analysis, records=records,
                         baselines=baselines, implied=implied, best=best)
