"""Consolidated verification report over every built-in instance.

:func:`verify_paper` returns a JSON-ready dict. Each check carries an
``id``, a ``status`` of ``pass`` or ``fail``, a ``level`` (``proved`` for
exact single computations, ``grid-verified`` where a weight ratio is only
sampled), free-text ``notes``, and a ``witness`` or ``certificate`` that
was re-validated before it was written.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

from .counterexamples import (BOTH_SIDES_COMBINATION, CIRCUIT_WEIGHTS, GRID, PROVED,
                              THREE_PLAYER_COMBINATION, CounterexampleReport, _labelled_cert,
                              circuit_system, corrupted_schedules, default_lambda_grid,
                              verify_counterexample_i, verify_counterexample_ii,
                              verify_counterexample_iii, verify_farkas_combination,
                              verify_symmetric)
from .feasibility import InfeasCert, LinearSystem, check_certificate, check_point, combine
from .instances import (ARRANGEMENT, BOTH_SIDES, SHARED_PAIR, SYMMETRIC, THREE_PLAYER,
                        THREE_PLAYER_AXIS_ORDER)
from .mechanism import OutcomeFunction, TypeSpace, ic_multi_failures, ic_set, is_ic_single
from .rational import format_rat, to_rat
from .roberts import am_check, am_refutation, am_system, check_am_witness, perturb_second_player, var
from .suites import ALL_SUITES

REPORT_SCHEMA = 1
STATUSES = ("pass", "fail")
LEVELS = (PROVED, GRID)

# the four cell inequalities of the worked example, weighted to give 0 >= alpha1,
# plus alpha1 >= 1 to close the contradiction
EXAMPLE_COMBINATION = {"am:(1,1),1": 3, "am:(1,2),3": 1, "am:(2,2),2": 2, "am:(3,1),2": 1,
                       "pos:alpha[1]": 1}


def certificate_json(system: LinearSystem, cert: InfeasCert) -> Dict[str, Any]:
    """Multipliers with their constraint labels, plus the combined inequality."""
    rows = []
    strict = False
    for index in sorted(cert.multipliers):
        weight = Fraction(cert.multipliers[index])
        if not weight:
            continue
        c = system.constraints[index]
        strict |= c.relation == ">" and weight > 0
        rows.append({"index": index, "label": c.label, "relation": c.relation,
                     "weight": format_rat(weight)})
    lhs, rhs = combine(system, cert.multipliers)
    return {"multipliers": rows,
            "combination": f"0 {'>' if strict else '>='} {format_rat(rhs)}",
            "lhs_vanishes": not lhs,
            "valid": check_certificate(system, cert)}


def point_json(point: Mapping[str, Fraction]) -> Dict[str, Any]:
    return {k: format_rat(Fraction(v)) for k, v in point.items()}


def matrix_json(space: TypeSpace) -> List[List[Any]]:
    return [[format_rat(v) for v in row] for row in space.matrix]


def vectors_json(vectors) -> List[List[int]]:
    return [list(v) for v in vectors]


@dataclass
class _Builder:
    checks: List[Dict[str, Any]]

    def add(self, check_id: str, passed: bool, *, level: str = PROVED, notes: Sequence[str] = (),
            witness: Any = None, certificate: Any = None) -> None:
        entry: Dict[str, Any] = {"id": check_id, "status": "pass" if passed else "fail",
                                 "level": level, "notes": list(notes)}
        if certificate is not None:
            entry["certificate"] = certificate
            if not certificate.get("valid", True):
                entry["status"] = "fail"
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    def cert(self, check_id: str, system: LinearSystem, cert: Optional[InfeasCert], **kw) -> None:
        if cert is None:
            self.add(check_id, False, notes=list(kw.pop("notes", ())) + ["no certificate"], **kw)
            return
        body = certificate_json(system, cert)
        self.add(check_id, body["valid"], certificate=body, **kw)


def _fiber_payments(g: OutcomeFunction, spaces: Sequence[TypeSpace]) -> List[Dict[str, Any]]:
    rows = []
    for axis, space in enumerate(spaces):
        for fixed, vec in g.fibers(axis):
            x = is_ic_single(vec, space)
            rows.append({"axis": axis + 1,
                         "fiber": [i + 1 if i >= 0 else "*" for i in fixed],
                         "outcomes": list(vec),
                         "payments": None if x is None else [format_rat(v) for v in x]})
    return rows


def _example_checks(b: _Builder) -> None:
    inst = ARRANGEMENT
    g = inst.outcomes["g"]
    T1, T2, S2 = inst.spaces["T1"], inst.spaces["T2"], inst.spaces["S2"]
    b.add("example.ic_multi", not ic_multi_failures(g, [T1, T2]),
          witness={"fibers": _fiber_payments(g, [T1, T2])})

    system, result = am_refutation(g, [T1, T2])
    b.cert("example.am.T1T2", system, getattr(result, "certificate", None),
           notes=["g is not an affine maximizer on (T1, T2)"])
    b.cert("example.am.T1T2.combination", system, _labelled_cert(system, EXAMPLE_COMBINATION),
           notes=["weights 3, 1, 2, 1 on four cell inequalities give 0 >= alpha1; "
                  "alpha1 >= 1 closes it"])

    witness = am_check(g, [T1, S2])
    passed = witness is not None and check_am_witness(g, [T1, S2], witness)
    unit = False
    if witness is not None:
        fixed = am_system(g, [T1, S2], alphas=(1, 1))
        unit = check_point(fixed, {var("z", k): v for k, v in enumerate(witness.z, start=1)})
    zero = check_point(am_system(g, [T1, S2], alphas=(1, 1)),
                       {var("z", k): 0 for k in range(1, g.m + 1)})
    b.add("example.am.T1S2", passed and unit,
          witness=None if witness is None else {
              "alphas": [format_rat(a) for a in witness.alphas],
              "z": [format_rat(v) for v in witness.z]},
          notes=["alpha = (1, 1) with the solver's z passes the fixed-weight system",
                 f"z = 0 {'also passes' if zero else 'does not pass'} for this hand-built S2"])

    S2p = perturb_second_player(g, T1)
    fixed = am_system(g, [T1, S2p], alphas=(1, 1))
    ok = check_point(fixed, {var("z", k): 0 for k in range(1, g.m + 1)})
    b.add("thm1.1.perturb.example", ok and am_check(g, [T1, S2p]) is not None,
          witness={"S2": matrix_json(S2p), "alphas": [1, 1], "z": [0] * g.m})

    inst = BOTH_SIDES
    g, T1 = inst.outcomes["g"], inst.spaces["T1"]
    S2p = perturb_second_player(g, T1)
    fixed = am_system(g, [T1, S2p], alphas=(1, 1))
    ok = check_point(fixed, {var("z", k): 0 for k in range(1, g.m + 1)})
    b.add("thm1.1.perturb.both_sides", ok,
          witness={"S2": matrix_json(S2p), "alphas": [1, 1], "z": [0] * g.m},
          notes=["the second IC set is not preserved here; only the first type space is kept"])


def _report_checks(b: _Builder, prefix: str, report: CounterexampleReport,
                   names: Mapping[str, str], witnesses: Mapping[str, Any] = None,
                   notes: Mapping[str, Sequence[str]] = None) -> None:
    witnesses, notes = witnesses or {}, notes or {}
    for key, check_id in names.items():
        b.add(f"{prefix}.{check_id}", report.checks[key], level=report.level,
              witness=witnesses.get(key), notes=notes.get(key, ()))


def _joint(b: _Builder, prefix: str, report: CounterexampleReport, extra: Sequence[str] = ()):
    b.cert(f"{prefix}.joint", report.encoding, report.certificate, level=report.level,
           notes=[report.claim, *report.notes, *extra])


def _sweep(b: _Builder, prefix: str, report: CounterexampleReport, valid_key: str) -> None:
    infeasible = [lam for lam, v in report.sweep if v == "infeasible"]
    feasible = [format_rat(lam) for lam, v in report.sweep if v != "infeasible"]
    b.add(f"{prefix}.sweep", bool(report.sweep) and not feasible and report.checks[valid_key],
          level=GRID,
          witness={"points": len(report.sweep), "infeasible": len(infeasible),
                   "feasible_at": feasible, "certificates_valid": report.checks[valid_key]},
          notes=["each grid point solved exactly with its certificate re-checked; "
                 "ratios off the grid are not covered"])


def _three_player(b: _Builder) -> None:
    rep = verify_counterexample_i()
    inst = THREE_PLAYER
    g = inst.outcomes["g"]
    spaces = [inst.spaces[n] for n in THREE_PLAYER_AXIS_ORDER]
    literal = ic_multi_failures(g, [inst.spaces[n] for n in ("T1", "T2", "T3")])
    b.add("thm1.2(i).ic_multi", rep.checks["g_is_ic"] and rep.checks["listed_fibers_ic"],
          witness={"axis_spaces": list(THREE_PLAYER_AXIS_ORDER),
                   "fibers": _fiber_payments(g, spaces)},
          notes=["axis 2 is paired with T3 and axis 3 with T2, matching the listed fibers",
                 f"pairing axes with (T1, T2, T3) in order leaves {len(literal)} fibers non-IC"])
    _joint(b, "thm1.2(i)", rep)
    b.cert("thm1.2(i).hand_certificate", rep.encoding,
           _labelled_cert(rep.encoding, THREE_PLAYER_COMBINATION),
           notes=["the leading 2x2 minor of T1 is maximised only by the off-diagonal (4 > 3); "
                  "four cell inequalities force the diagonal"])
    _report_checks(b, "thm1.2(i)", rep, {
        "ablation_no_multifield_feasible": "ablation.no_multifield",
        "ablation_constant_g_feasible": "ablation.constant_g"})


def _both_sides(b: _Builder) -> None:
    rep = verify_counterexample_ii()
    inst = BOTH_SIDES
    _report_checks(b, "thm1.2(ii)", rep, {
        "ic_set_T1": "ic_set.T1", "ic_set_T2": "ic_set.T2", "g_is_ic": "ic_multi"},
        witnesses={"ic_set_T1": vectors_json(ic_set(inst.spaces["T1"])),
                   "ic_set_T2": vectors_json(ic_set(inst.spaces["T2"]))})
    _joint(b, "thm1.2(ii)", rep)
    b.cert("thm1.2(ii).hand_certificate", rep.encoding,
           _labelled_cert(rep.encoding, BOTH_SIDES_COMBINATION))
    _report_checks(b, "thm1.2(ii)", rep, {
        "ablation_no_U1_multifield_feasible": "ablation.no_U1_multifield",
        "ablation_no_U2_multifield_feasible": "ablation.no_U2_multifield"})


def _farkas(b: _Builder, prefix: str) -> None:
    for case in ("ge", "lt"):
        b.add(f"{prefix}.farkas.{case}", verify_farkas_combination(case), level=GRID,
              notes=["symbolic in alpha1, alpha2, beta1, beta2 > 0; "
                     + ("alpha1*beta2 >= alpha2*beta1" if case == "ge"
                        else "alpha1*beta2 < alpha2*beta1")])
        rejected = {name: not verify_farkas_combination(case, sched)
                    for name, sched in corrupted_schedules(case)}
        b.add(f"{prefix}.farkas.{case}.corruptions", all(rejected.values()), level=GRID,
              witness={"rejected": rejected},
              notes=["each multiplier altered on its own must break the combination"])


def _shared_pair(b: _Builder, grid) -> None:
    rep = verify_counterexample_iii(grid)
    inst = SHARED_PAIR
    _report_checks(b, "thm1.2(iii)", rep, {
        "ic_set_T1": "ic_set.T1", "ic_set_T2": "ic_set.T2",
        "g1_is_ic": "ic_multi.g1", "g2_is_ic": "ic_multi.g2"},
        witnesses={"ic_set_T1": vectors_json(ic_set(inst.spaces["T1"])),
                   "ic_set_T2": vectors_json(ic_set(inst.spaces["T2"]))})
    _joint(b, "thm1.2(iii)", rep, ["certificate shown for the ratio 1"])
    _sweep(b, "thm1.2(iii)", rep, "certificates_valid")
    _farkas(b, "thm1.2(iii)")
    _report_checks(b, "thm1.2(iii)", rep,
                   {"ablation_no_multifield_feasible": "ablation.no_multifield"})


def _symmetric(b: _Builder, grid) -> None:
    inst = SYMMETRIC
    rep = verify_symmetric(grid)
    _report_checks(b, "thm1.3", rep, {
        "ic_set_T1": "ic_set.T1", "g_is_ic": "ic_multi", "g_symmetric": "symmetric"},
        witnesses={"ic_set_T1": vectors_json(ic_set(inst.spaces["T1"]))})
    _joint(b, "thm1.3", rep)
    circuit = circuit_system()
    b.cert("thm1.3.circuit", circuit, InfeasCert({i: 1 for i in range(len(circuit))}),
           level=GRID, notes=["six inequalities with unit weights sum to 0 > 0"])
    b.cert("thm1.3.circuit_in_system", rep.encoding,
           _labelled_cert(rep.encoding, CIRCUIT_WEIGHTS), level=GRID)
    _sweep(b, "thm1.3", rep, "sweep_certificates_valid")
    _report_checks(b, "thm1.3", rep,
                   {"ablation_no_multifield_feasible": "ablation.no_multifield"})


def _suites(b: _Builder, seed: int) -> None:
    for suite in ALL_SUITES:
        kwargs = {} if suite.__name__ == "oracle_equivalence" else {"seed": seed}
        res = suite(**kwargs)
        b.add(f"suite.{res.name}", res.ok,
              witness={"cases": res.cases, "failed": res.failed, "examples": res.failures},
              notes=[(suite.__doc__ or "").strip().splitlines()[0]])


def verify_paper(lambda_grid: Optional[Sequence[Fraction]] = None, *, seed: int = 0,
                 suites: bool = True) -> Dict[str, Any]:
    """Run every check and return the report; see :func:`validate_report` for its shape."""
    grid = default_lambda_grid() if lambda_grid is None else [to_rat(v) for v in lambda_grid]
    b = _Builder([])
    _example_checks(b)
    _three_player(b)
    _both_sides(b)
    _shared_pair(b, grid)
    _symmetric(b, grid)
    if suites:
        _suites(b, seed)
    failed = [c["id"] for c in b.checks if c["status"] != "pass"]
    report = {
        "schema": REPORT_SCHEMA,
        "lambda_grid": {"points": len(grid), "min": format_rat(min(grid)),
                        "max": format_rat(max(grid))},
        "summary": {"checks": len(b.checks), "passed": len(b.checks) - len(failed),
                    "failed": failed},
        "checks": b.checks,
    }
    validate_report(report)
    return report


def validate_report(report: Mapping[str, Any]) -> None:
    """Raise ``ValueError`` unless ``report`` has the documented shape."""
    if report.get("schema") != REPORT_SCHEMA:
        raise ValueError("report schema mismatch")
    seen = set()
    for entry in report.get("checks", ()):
        for key in ("id", "status", "level", "notes"):
            if key not in entry:
                raise ValueError(f"check without {key!r}: {entry}")
        if entry["id"] in seen:
            raise ValueError(f"duplicate check id {entry['id']}")
        seen.add(entry["id"])
        if entry["status"] not in STATUSES or entry["level"] not in LEVELS:
            raise ValueError(f"bad status or level in {entry['id']}")
        cert = entry.get("certificate")
        if cert is not None and entry["status"] == "pass" and not cert.get("valid"):
            raise ValueError(f"{entry['id']} passes with an invalid certificate")
