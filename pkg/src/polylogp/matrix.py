"""The verification matrices: which (p, n, k) cells each check runs over.

One source of truth shared by ``polylogp verify all`` and the acceptance
test suite.  The ``full`` matrix is the release gate; ``small`` is a smoke
pass over a few cheap cells.
"""

from __future__ import annotations

from . import coleman, identities, section3
from .finite_poly import (
    FiniteField,
    check_inversion_identity,
    check_inversion_identity_frobenius,
)
from . import report as report_mod

DEFAULT_SEED = 20260809


def theorem_cells(full: bool = True):
    if not full:
        return [(5, 2, 1), (7, 3, 2)]
    return [
        (p, n, k)
        for p in (5, 7, 11, 13)
        for n in (2, 3, 4)
        if p > n + 1
        for k in (1, 2)
    ]


def proposition_cells(full: bool = True):
    if not full:
        return [(5, 1, 1)]
    return [(p, n, k) for p in (5, 7, 11) for n in (1, 2, 3) for k in (1, 2)]


def corollary_fields(full: bool = True):
    if not full:
        return [(5, 1), (5, 2)]
    out = []
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        out.append((p, 1))
    out += [(3, 2), (5, 2), (7, 2), (3, 3)]
    return [(p, k) for (p, k) in out if p**k <= 49]


def maincong_cells(full: bool = True):
    if not full:
        return [(5, 2, 1)]
    return [
        (p, n, k)
        for p in (5, 7, 11)
        for n in (1, 2, 3)
        if p > n + 1
        for k in (1, 2)
    ]


def funceq_cells(full: bool = True):
    if not full:
        return [(7, 2, 1)]
    return [(p, n, 1) for p in (5, 7, 11) for n in (2, 3, 4) if p > n + 1]


def g_valuation_cells(full: bool = True):
    if not full:
        return [(5, 2, 1)]
    return [(p, n, 1) for p in (5, 7, 11) for n in (1, 2, 3) if p > n + 1]


def delprop_cells(full: bool = True):
    if not full:
        return [(7, 2, 1)]
    return [(p, n, 1) for p in (5, 7, 11) for n in (0, 1, 2, 3) if p > n + 2]


def flemma_cells(full: bool = True):
    if not full:
        return [(5, 2, 1)]
    return [(p, n, 1) for p in (5, 7, 11) for n in (0, 1, 2, 3) if p > n + 1]


def erecover_cells(full: bool = True):
    if not full:
        return [(7, 2, 1)]
    return [(7, 2, 1), (7, 3, 1), (11, 3, 1)]


def inversion_cells(full: bool = True):
    if not full:
        return [(5, 1, 2), (7, 1, 3)]
    return [
        (p, k, n)
        for p in (5, 7, 11, 13)
        for k in (1, 2)
        for n in (2, 3, 4, 5, 6)
    ]


def inversion_check_report(p: int, k: int, ns) -> dict:
    """Both inversion forms per weight; ``pass`` is the plain stated form.

    The plain form is false on proper extensions (see the Frobenius-corrected
    companion, which holds for every k); failing cells carry their
    counterexamples so the defect is visible, not hidden.
    """
    field = FiniteField(p, k)
    records = []
    for idx, n in enumerate(ns):
        rep = check_inversion_identity(n, field)
        frob = check_inversion_identity_frobenius(n, field)
        records.append(
            {
                "index": idx,
                "n": n,
                "checked": rep.checked,
                "counterexamples": rep.counterexamples[:5],
                "counterexampleCount": len(rep.counterexamples),
                "frobeniusFormOk": frob.passed,
                "pass": rep.passed,
            }
        )
    return report_mod.assemble(
        "inversion", {"p": p, "k": k, "ns": list(ns)}, None, records
    )


def run_matrix(kind: str = "full", seed: int = DEFAULT_SEED, jobs: int = 1,
               progress=None) -> dict:
    """Run every check over its matrix; returns an aggregate report."""
    full = kind == "full"
    samples = {
        "theorem": 20 if full else 5,
        "proposition1": 50 if full else 10,
        "maincong": 50 if full else 10,
        "funceq": 20 if full else 5,
        "delprop": 10 if full else 3,
        "f-lemmas": 10 if full else 3,
        "e-recover": 10 if full else 3,
    }
    reports = []

    def emit(rep):
        reports.append(rep)
        if progress is not None:
            progress(rep)

    for p, n, k in theorem_cells(full):
        emit(coleman.verify_theorem(p, n, k, samples["theorem"], seed, jobs=jobs))
    for p, n, k in proposition_cells(full):
        emit(coleman.check_prop_reduction(p, n, k, samples["proposition1"], seed,
                                          jobs=jobs))
    for p, k in corollary_fields(full):
        emit(coleman.check_corollary(p, k))
    for p, n, k in maincong_cells(full):
        emit(coleman.check_maincong(p, n, k, samples["maincong"], seed, jobs=jobs))
    for p, n, k in g_valuation_cells(full):
        emit(coleman.check_g_valuations(p, n, k, count=5, seed=seed))
    for p, n, k in funceq_cells(full):
        emit(coleman.check_functional_equation(p, n, k, samples["funceq"], seed,
                                               jobs=jobs))
    for p, n, k in delprop_cells(full):
        emit(section3.delprop_check(p, n, k, samples["delprop"], seed, jobs=jobs))
    for p, n, k in flemma_cells(full):
        emit(section3.f_lemmas_check(p, n, k, samples["f-lemmas"], seed, jobs=jobs))
    for p, n, k in erecover_cells(full):
        emit(section3.e_recover_check(p, n, k, samples["e-recover"], seed, jobs=jobs))
    emit(identities.identities_report(nmax=12 if full else 6))
    inversion_groups: dict = {}
    for p, k, n in inversion_cells(full):
        inversion_groups.setdefault((p, k), []).append(n)
    for (p, k), ns in sorted(inversion_groups.items()):
        emit(inversion_check_report(p, k, ns))
    return {
        "schemaVersion": report_mod.SCHEMA_VERSION,
        "command": "all",
        "params": {"matrix": kind, "seed": seed},
        "reports": reports,
        "failures": sum(1 for r in reports if not r["pass"]),
        "pass": all(r["pass"] for r in reports),
    }
