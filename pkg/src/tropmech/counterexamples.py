"""Machine checks that certain perturbations cannot exist.

Each verifier builds one joint linear system in the unknown type matrices
(and the auxiliary payment vectors), asks :func:`~tropmech.feasibility.solve`
for a verdict and re-validates any certificate. Where a type matrix enters
under two different weights the weight ratio ``lam`` cannot be absorbed, so
those checks sweep a grid of ratios and are labelled ``grid-verified``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import EmptyGrid
from .feasibility import (GE, GT, InfeasCert, Infeasible, LinearSystem, check_certificate,
                          solve)
from .instances import (BOTH_SIDES, SHARED_PAIR, SYMMETRIC, SYMMETRIC_CELL, THREE_PLAYER,
                        THREE_PLAYER_AXIS_ORDER, THREE_PLAYER_FIBERS)
from .mechanism import OutcomeFunction, ic_set, is_ic_multi, is_ic_single
from .rational import RatLike, to_rat
from .roberts import add_strict_covector, add_symbolic_am, encode_ic_equality, var

PROVED = "proved"
GRID = "grid-verified"


def default_lambda_grid() -> List[Fraction]:
    """Distinct ratios ``k/10`` for ``k = 1..100`` and ``10/k`` for ``k = 1..10``, sorted."""
    values = {Fraction(k, 10) for k in range(1, 101)} | {Fraction(10, k) for k in range(1, 11)}
    return sorted(values)


def parse_lambda_grid(spec: str) -> List[Fraction]:
    """``"default"`` or a comma-separated list of positive rationals such as ``"1/4,1,2"``."""
    if spec.strip() == "default":
        return default_lambda_grid()
    grid = [to_rat(part) for part in spec.split(",") if part.strip()]
    if not grid:
        raise EmptyGrid("lambda grid is empty")
    if any(lam <= 0 for lam in grid):
        raise ValueError("lambda values must be positive")
    return grid


@dataclass
class CounterexampleReport:
    instance: str
    claim: str
    encoding: LinearSystem
    verdict: str
    certificate: Optional[InfeasCert] = None
    level: str = PROVED
    checks: Dict[str, bool] = field(default_factory=dict)
    sweep: List[Tuple[Fraction, str]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        swept = all(v == "infeasible" for _, v in self.sweep)
        return self.verdict == "infeasible" and swept and all(self.checks.values())


def _verdict(system: LinearSystem) -> Tuple[str, Optional[InfeasCert], bool]:
    """Solve and re-check: ``(verdict, certificate, certificate_valid)``."""
    result = solve(system)
    if isinstance(result, Infeasible):
        return "infeasible", result.certificate, check_certificate(system, result.certificate)
    return "feasible", None, True


def _is_feasible(system: LinearSystem) -> bool:
    return solve(system).feasible


def _constant_like(g: OutcomeFunction) -> OutcomeFunction:
    return OutcomeFunction(g.shape, (1,) * len(g.values), g.m)


def _labelled_cert(system: LinearSystem, weights: Mapping[str, RatLike]) -> InfeasCert:
    return InfeasCert({system.find(label): to_rat(w) for label, w in weights.items()})


# ---------------------------------------------------------------------------
# three players, first IC set preserved

def three_player_system(g: OutcomeFunction, with_multifield: bool = True) -> LinearSystem:
    space = THREE_PLAYER.spaces["T1"]
    system = LinearSystem()
    add_symbolic_am(system, g, ["U1", "U2", "U3"], [1, 1, 1], "z", [(2, 6)] * 3)
    if with_multifield:
        encode_ic_equality(space, "U1", system)
    return system


# four cell inequalities summing to U1[1,1]+U1[2,2] >= U1[1,2]+U1[2,1], against the strict
# reverse inequality forced by the first type matrix (its leading 2x2 minor favours the swap)
THREE_PLAYER_COMBINATION = {"am:(1,1,1),2": 1, "am:(1,2,2),2": 1, "am:(2,1,2),1": 1,
                            "am:(2,2,1),1": 1, "mf:U1:12|12:12": 2}


def verify_counterexample_i() -> CounterexampleReport:
    inst = THREE_PLAYER
    g = inst.outcomes["g"]
    spaces = [inst.spaces[name] for name in THREE_PLAYER_AXIS_ORDER]
    system = three_player_system(g)
    verdict, cert, valid = _verdict(system)
    checks = {
        "g_is_ic": is_ic_multi(g, spaces),
        "listed_fibers_ic": all(is_ic_single(vec, inst.spaces[name]) is not None
                                for name, vecs in THREE_PLAYER_FIBERS.items() for vec in vecs),
        "certificate_valid": valid,
        "ablation_no_multifield_feasible": _is_feasible(three_player_system(g, False)),
        "ablation_constant_g_feasible": _is_feasible(three_player_system(_constant_like(g))),
    }
    hand = _labelled_cert(system, THREE_PLAYER_COMBINATION)
    checks["hand_certificate_valid"] = check_certificate(system, hand)
    return CounterexampleReport(
        instance=inst.name,
        claim="no U1, U2, U3 with g an affine maximizer and IC(U1) = IC(T1)",
        encoding=system, verdict=verdict, certificate=cert, checks=checks,
        notes=["unknown matrices absorb the weights (U^j = alpha_j S^j); IC sets are scale invariant",
               "fibers along axis 2 are IC on T3 and along axis 3 on T2, as in the listed fibers",
               "the leading 2x2 minor of T1 is maximised only by the off-diagonal (4 > 3)"])


# ---------------------------------------------------------------------------
# two players, both IC sets preserved

def both_sides_system(first: bool = True, second: bool = True) -> LinearSystem:
    inst = BOTH_SIDES
    system = LinearSystem()
    add_symbolic_am(system, inst.outcomes["g"], ["U1", "U2"], [1, 1], "z", [(2, 4)] * 2)
    if first:
        encode_ic_equality(inst.spaces["T1"], "U1", system)
    if second:
        encode_ic_equality(inst.spaces["T2"], "U2", system)
    return system


# two strict minor inequalities plus four cell inequalities cancel to 0 > 0
BOTH_SIDES_COMBINATION = {"mf:U1:12|24:21": 1, "mf:U2:12|13:12": 1,
                          "am:(1,1),3": 1, "am:(1,2),2": 1, "am:(2,1),4": 1, "am:(2,2),1": 1}


def verify_counterexample_ii() -> CounterexampleReport:
    inst = BOTH_SIDES
    g = inst.outcomes["g"]
    T1, T2 = inst.spaces["T1"], inst.spaces["T2"]
    system = both_sides_system()
    verdict, cert, valid = _verdict(system)
    hand = _labelled_cert(system, BOTH_SIDES_COMBINATION)
    checks = {
        "ic_set_T1": ic_set(T1) == inst.expected_ic["T1"],
        "ic_set_T2": ic_set(T2) == inst.expected_ic["T2"],
        "g_is_ic": is_ic_multi(g, [T1, T2]),
        "certificate_valid": valid,
        "hand_certificate_valid": check_certificate(system, hand),
        "ablation_no_U1_multifield_feasible": _is_feasible(both_sides_system(first=False)),
        "ablation_no_U2_multifield_feasible": _is_feasible(both_sides_system(second=False)),
    }
    return CounterexampleReport(
        instance=inst.name,
        claim="no U1, U2 with g an affine maximizer, IC(U1) = IC(T1) and IC(U2) = IC(T2)",
        encoding=system, verdict=verdict, certificate=cert, checks=checks,
        notes=["unknown matrices absorb the weights (U^j = alpha_j S^j); IC sets are scale invariant"])


# ---------------------------------------------------------------------------
# one perturbed space shared by two outcome functions

def shared_pair_system(lam: RatLike, with_multifield: bool = True) -> LinearSystem:
    inst = SHARED_PAIR
    system = LinearSystem()
    shapes = [(2, 3), (2, 3)]
    add_symbolic_am(system, inst.outcomes["g1"], ["S1", "S2"], [1, 1], "Y", shapes, tag="1")
    add_symbolic_am(system, inst.outcomes["g2"], ["S1", "S2"], [1, lam], "Z", shapes, tag="2")
    if with_multifield:
        encode_ic_equality(inst.spaces["T1"], "S1", system)
    return system


def verify_counterexample_iii(lambda_grid: Optional[Sequence[RatLike]] = None
                              ) -> CounterexampleReport:
    inst = SHARED_PAIR
    grid = default_lambda_grid() if lambda_grid is None else [to_rat(l) for l in lambda_grid]
    if not grid:
        raise EmptyGrid("lambda grid is empty")
    T1, T2 = inst.spaces["T1"], inst.spaces["T2"]
    checks = {
        "ic_set_T1": ic_set(T1) == inst.expected_ic["T1"],
        "ic_set_T2": ic_set(T2) == inst.expected_ic["T2"],
        "g1_is_ic": is_ic_multi(inst.outcomes["g1"], [T1, T2]),
        "g2_is_ic": is_ic_multi(inst.outcomes["g2"], [T1, T2]),
    }
    sweep = []
    certs_valid = True
    for lam in grid:
        verdict, _, valid = _verdict(shared_pair_system(lam))
        sweep.append((lam, verdict))
        certs_valid &= valid
    checks["certificates_valid"] = certs_valid
    checks["farkas_ge"] = verify_farkas_combination("ge")
    checks["farkas_lt"] = verify_farkas_combination("lt")
    checks["ablation_no_multifield_feasible"] = _is_feasible(shared_pair_system(1, False))
    main = shared_pair_system(1)
    verdict, cert, valid = _verdict(main)
    checks["unit_ratio_certificate_valid"] = valid
    return CounterexampleReport(
        instance=inst.name,
        claim="no S1, S2 with g1 and g2 both affine maximizers and IC(S1) = IC(T1)",
        encoding=main, verdict=verdict, certificate=cert, level=GRID, checks=checks,
        sweep=sweep,
        notes=["g1 uses weights (1, 1) and g2 uses (1, lam) with lam = a1*b2/(a2*b1)",
               "finite grid of ratios plus a symbolic check of both case combinations; "
               "not a proof for every real ratio"])


# ---------------------------------------------------------------------------
# symbolic two-case combination for the shared-pair instance

def _farkas_inequalities():
    """Named linear forms ``(coeffs, strict)`` meaning ``sum coeffs * var >= 0`` (or ``> 0``)."""
    import sympy

    a1, a2, b1, b2 = sympy.symbols("alpha1 alpha2 beta1 beta2", positive=True)
    inst = SHARED_PAIR

    def cell_forms(g, weights, z):
        forms = {}
        for i in range(2):
            for j in range(2):
                best = g[i, j]
                for k in range(1, 4):
                    if k == best:
                        continue
                    form: Dict[str, object] = {}
                    for w, prefix, row in zip(weights, ("S1", "S2"), (i + 1, j + 1)):
                        form[var(prefix, row, best)] = form.get(var(prefix, row, best), 0) + w
                        form[var(prefix, row, k)] = form.get(var(prefix, row, k), 0) - w
                    form[var(z, best)] = -1
                    form[var(z, k)] = 1
                    forms[f"({i + 1},{j + 1}),{k}"] = form
        return forms

    y_forms = cell_forms(inst.outcomes["g1"], (a1, a2), "Y")
    z_forms = cell_forms(inst.outcomes["g2"], (b1, b2), "Z")

    def add(*forms, scale=1):
        out: Dict[str, object] = {}
        for f in forms:
            for k, v in f.items():
                out[k] = out.get(k, 0) + v * scale
        return out

    mf = LinearSystem()
    encode_ic_equality(inst.spaces["T1"], "S1", mf)
    s112 = dict(mf.constraints[mf.find("mf:S1:12|12:21")].coeffs)
    s123 = dict(mf.constraints[mf.find("mf:S1:12|23:12")].coeffs)
    forms = {
        "s112": (s112, True),
        "s123": (s123, True),
        "yz1": (add(y_forms["(1,1),3"], y_forms["(1,2),1"], y_forms["(2,2),2"]), False),
        "yz2": (add(z_forms["(1,2),3"], z_forms["(2,1),2"], z_forms["(2,2),1"]), False),
        "s232": (add(z_forms["(2,1),2"], z_forms["(2,2),3"], scale=1 / b2), False),
    }
    return (a1, a2, b1, b2), forms


def farkas_schedule(case: str):
    """The two-case multiplier schedules as ``{inequality name: sympy expression}``."""
    import sympy

    a1, a2, b1, b2 = sympy.symbols("alpha1 alpha2 beta1 beta2", positive=True)
    if case == "ge":
        return {"s123": a2 * b1, "s112": a1 * b2 - a2 * b1, "yz1": b2, "yz2": a2}
    if case == "lt":
        return {"s123": a1 * b1, "s232": a2 * b1 - a1 * b2, "yz1": b1, "yz2": a1}
    raise ValueError(f"case must be 'ge' or 'lt', got {case!r}")


def corrupted_schedules(case: str):
    """Yield ``(name, schedule)`` with one multiplier altered.

    The two beta parameters are swapped inside that multiplier, or the two
    alphas when the betas do not occur in it.
    """
    import sympy

    a1, a2, b1, b2 = sympy.symbols("alpha1 alpha2 beta1 beta2", positive=True)
    schedule = farkas_schedule(case)
    for name, w in schedule.items():
        bad = w.subs({b1: b2, b2: b1}, simultaneous=True)
        if sympy.expand(bad - w) == 0:
            bad = w.subs({a1: a2, a2: a1}, simultaneous=True)
        yield name, {**schedule, name: bad}


def _nonnegative_polynomial(expr, params) -> bool:
    """Sufficient test: after cancelling, numerator and denominator have no negative coefficient."""
    import sympy

    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    for part in (num, den):
        poly = sympy.Poly(sympy.expand(part), *params)
        if any(c < 0 for c in poly.coeffs()):
            return False
    return True


def verify_farkas_combination(case: str, multipliers: Optional[Mapping[str, object]] = None
                              ) -> bool:
    """Check a parametric nonnegative combination that cancels to ``0 > 0``.

    The weights are polynomials in positive parameters ``alpha1, alpha2,
    beta1, beta2``. Case ``ge`` assumes ``alpha1*beta2 >= alpha2*beta1``, case
    ``lt`` the strict reverse; the case is imposed by substituting a slack
    ``d`` (``d >= 0`` resp. ``d > 0``) so that every weight can be tested
    for sign on the positive orthant.
    """
    import sympy

    (a1, a2, b1, b2), forms = _farkas_inequalities()
    weights = farkas_schedule(case) if multipliers is None else dict(multipliers)
    total: Dict[str, object] = {}
    for name, w in weights.items():
        coeffs, _ = forms[name]
        for k, v in coeffs.items():
            total[k] = total.get(k, 0) + w * v
    if any(sympy.cancel(v) != 0 for v in total.values()):
        return False

    d = sympy.symbols("d", positive=True)
    if case == "ge":
        sub = {a1: (a2 * b1 + d) / b2}
        params, strict_params = (a2, b1, b2, d), (a2, b1, b2)
    else:
        sub = {a2: (a1 * b2 + d) / b1}
        params, strict_params = (a1, b1, b2, d), (a1, b1, b2, d)
    strict_positive = False
    for name, w in weights.items():
        w_case = sympy.cancel(sympy.sympify(w).subs(sub))
        if not _nonnegative_polynomial(w_case, params):
            return False
        if forms[name][1] and w_case != 0:
            if case == "ge":
                # d may vanish, so a strict weight must stay positive at d = 0
                at_zero = sympy.cancel(w_case.subs(d, 0))
                if at_zero != 0 and _nonnegative_polynomial(at_zero, strict_params):
                    strict_positive = True
            else:
                strict_positive = True
    return strict_positive


# ---------------------------------------------------------------------------
# symmetric outcome function on a shared type space

def symmetric_system(lam: RatLike = 1, with_multifield: bool = True,
                     with_cell: bool = True) -> LinearSystem:
    inst = SYMMETRIC
    space = inst.spaces["T1"]
    system = LinearSystem()
    add_symbolic_am(system, inst.outcomes["g"], ["S", "S"], [1, lam], "Z", [(3, 3)] * 2)
    if with_cell:
        add_strict_covector(system, SYMMETRIC_CELL, "S", "Y", space.m)
    if with_multifield:
        encode_ic_equality(space, "S", system)
    return system


CIRCUIT_WEIGHTS = {"cov:1,2": 2, "cov:2,3": 2, "cov:3,1": 2,
                   "am:(1,1),3": 1, "am:(2,2),1": 1, "am:(3,3),2": 1}


def circuit_system() -> LinearSystem:
    """The six-inequality circuit on its own, in its doubled form."""
    system = LinearSystem()
    S = lambda i, k: var("S", i, k)  # noqa: E731
    Y = lambda k: var("Y", k)  # noqa: E731
    Z = lambda k: var("Z", k)  # noqa: E731
    for i in (1, 2, 3):
        for k in (1, 2, 3):
            system.add_variable(S(i, k))
    for k in (1, 2, 3):
        system.add_variable(Y(k))
    for k in (1, 2, 3):
        system.add_variable(Z(k))
    for i, h, k in ((1, 3, 2), (2, 1, 3), (3, 2, 1)):
        system.add({S(i, h): 2, Y(h): -2, S(i, k): -2, Y(k): 2}, GT, 0, label=f"cell:{i}")
    for i, h, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        system.add({S(i, h): 2, Z(h): -1, S(i, k): -2, Z(k): 1}, GE, 0, label=f"diag:{i}")
    return system


def verify_symmetric(lambda_grid: Optional[Sequence[RatLike]] = None) -> CounterexampleReport:
    inst = SYMMETRIC
    space, g = inst.spaces["T1"], inst.outcomes["g"]
    grid = default_lambda_grid() if lambda_grid is None else [to_rat(l) for l in lambda_grid]
    if not grid:
        raise EmptyGrid("lambda grid is empty")
    system = symmetric_system(1)
    verdict, cert, valid = _verdict(system)
    circuit = circuit_system()
    checks = {
        "ic_set_T1": ic_set(space) == inst.expected_ic["T1"],
        "cell_is_ic": SYMMETRIC_CELL in inst.expected_ic["T1"],
        "g_symmetric": all(g[i, j] == g[j, i] for i in range(3) for j in range(3)),
        "g_is_ic": is_ic_multi(g, [space, space]),
        "certificate_valid": valid,
        "circuit_certificate_valid": check_certificate(
            circuit, InfeasCert({i: Fraction(1) for i in range(len(circuit))})),
        "circuit_in_system_valid": check_certificate(system, _labelled_cert(system, CIRCUIT_WEIGHTS)),
        "ablation_no_multifield_feasible": _is_feasible(symmetric_system(1, with_multifield=False,
                                                                         with_cell=False)),
    }
    sweep = []
    certs_valid = True
    for lam in grid:
        v, _, ok = _verdict(symmetric_system(lam))
        sweep.append((lam, v))
        certs_valid &= ok
    checks["sweep_certificates_valid"] = certs_valid
    return CounterexampleReport(
        instance=inst.name,
        claim="no S with IC(S) = IC(T1) on which symmetric g is an affine maximizer on S x S",
        encoding=system, verdict=verdict, certificate=cert, level=GRID, checks=checks,
        sweep=sweep,
        notes=["unit weights solved exactly; unequal weights (1, lam) checked on a finite grid",
               "Y ranges over the open cell with covector (3,1,2)"])
