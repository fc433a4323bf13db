"""End-to-end report: rebuild the balanced non-partitionable example and check each claim."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from .coloring import critical_vertices, is_balanced, is_proper
from .complex import euler_characteristic, f_vector, h_vector
from .constructions import TAU, TAU_PRIME, Corpus, Q_FACETS
from .homology import FieldSpec, betti, boundary_matrix, is_cohen_macaulay
from .partition import (
    NOT_PARTITIONABLE,
    PARTITIONABLE,
    decide_partitionable,
    h_from_partition,
    interval_face_count,
    partition_from_shelling,
    shelling_search,
    verify_partition,
)
from .transform import barycentric_subdivision, dimension_coloring, is_automorphism


@dataclass
class ClaimResult:
    claim: str
    status: str
    expected: str
    got: str
    source: str
    ms: float

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def line(self) -> str:
        return f"CLAIM {self.claim} {self.status} expected={self.expected} got={self.got} {self.ms:.0f}ms"


@dataclass
class VerificationReport:
    results: list[ClaimResult]
    field: int

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        passed = sum(r.passed for r in self.results)
        lines.append(f"SUMMARY {passed}/{len(self.results)} claims passed (field GF({self.field}))")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {"field": self.field, "ok": self.ok, "claims": [asdict(r) for r in self.results]},
            indent=2,
        )


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    if isinstance(v, (set, frozenset)):
        return "{" + ",".join(str(x) for x in sorted(v)) + "}"
    return str(v).replace(" ", "")


Claim = tuple[str, str, object, Callable[[], object]]


def claims(corpus: Corpus, field: int = 2, c3_budget: float | None = None) -> list[Claim]:
    """(id, source, expected, compute) in report order.

    ``source`` is "reference" for fixed published values and "derived" for
    identities checked by computation.
    """
    p = FieldSpec(field)
    cp = corpus

    def cm(c):
        return is_cohen_macaulay(c, p).cohen_macaulay

    def shell_h(c):
        v = shelling_search(c)
        if not v:
            return v.status
        part = partition_from_shelling(c, v.order)
        if not verify_partition(c, part):
            return "partition-invalid"
        return h_from_partition(part, c.dim + 1)

    def balanced_verified(c):
        b = is_balanced(c)
        return bool(b) and is_proper(c, b.coloring, c.dim + 1)

    def part_status(x, **kw):
        v = decide_partitionable(x, **kw)
        if v.status == PARTITIONABLE and not verify_partition(x, v.certificate):
            return "certificate-invalid"
        return v.status

    def glue_identity():
        fx, fa = f_vector(cp.X), f_vector(cp.A_star)
        out = []
        for n in (1, 2, 3, 5):
            want = tuple(n * fx[i] + (fa[i] if i < len(fa) else 0) for i in range(len(fx)))
            out.append(f_vector(cp.C(n)) == want)
        return all(out)

    def difference():
        fq, fa, fx = f_vector(cp.Q_star), f_vector(cp.A_star), f_vector(cp.X)
        fa = fa + (0,) * (len(fq) - len(fa))
        return tuple(a - b for a, b in zip(fq, fa)) == fx

    def certificate_identities():
        ok = True
        for c in (cp.Q_star, cp.A_star):
            v = shelling_search(c)
            part = partition_from_shelling(c, v.order)
            ok &= interval_face_count(part) == sum(f_vector(c))
            ok &= h_from_partition(part, c.dim + 1) == h_vector(f_vector(c))
        v = decide_partitionable(cp.C(2))
        if v.certificate is not None:
            ok &= interval_face_count(v.certificate) == sum(f_vector(cp.C(2)))
            ok &= h_from_partition(v.certificate, 4) == h_vector(f_vector(cp.C(2)))
        else:
            ok = False
        return ok

    def boundary_squared():
        for c in (cp.Q_star, cp.A_star, cp.C(3)):
            for k in range(c.dim):
                prod = boundary_matrix(c, k, p) @ boundary_matrix(c, k + 1, p)
                if (prod % field).any():
                    return False
        return True

    def euler():
        ok = True
        for c in (cp.Q, cp.A, cp.Q_star, cp.A_star, cp.C(3)):
            bs = betti(c, p)
            ok &= sum((-1) ** i * b for i, b in enumerate(bs, start=-1)) == euler_characteristic(f_vector(c))
        return ok

    def sd_balanced():
        ok = True
        for c in (cp.Q, cp.A_star):
            sd = barycentric_subdivision(c)
            ok &= bool(is_balanced(sd)) and is_proper(sd, dimension_coloring(c), sd.dim + 1)
        return ok

    c3_kw = {"max_seconds": c3_budget} if c3_budget else {}
    return [
        ("1.f-Qstar", "reference", (1, 14, 45, 52, 20), lambda: f_vector(cp.Q_star)),
        ("1.f-Astar", "reference", (1, 10, 17, 8), lambda: f_vector(cp.A_star)),
        ("1.f-X", "reference", (0, 4, 28, 44, 20), lambda: f_vector(cp.X)),
        ("1.f-C3", "reference", (1, 22, 101, 140, 60), lambda: f_vector(cp.C(3))),
        ("2.faces-Astar", "reference", 36, lambda: sum(f_vector(cp.A_star))),
        ("2.f-X-difference", "reference", True, difference),
        ("3.balanced-Q", "reference", False, lambda: bool(is_balanced(cp.Q))),
        ("3.balanced-Qstar", "reference", True, lambda: balanced_verified(cp.Q_star)),
        ("3.balanced-C3", "reference", True, lambda: balanced_verified(cp.C(3))),
        ("3.balanced-C37", "reference", True, lambda: balanced_verified(cp.C(37))),
        ("4.critical-Q", "reference", {1, 2, 4, 5, 6, 8, 9},
         lambda: {v.base for v in critical_vertices(cp.Q)}),
        ("4.critical-Qstar", "reference", set(), lambda: set(critical_vertices(cp.Q_star))),
        ("5.tau-Q", "reference", True, lambda: is_automorphism(cp.Q, TAU)),
        ("5.tau-A", "reference", True, lambda: is_automorphism(cp.A, TAU)),
        ("5.tauprime-Qstar", "reference", True, lambda: is_automorphism(cp.Q_star, TAU_PRIME)),
        ("5.tauprime-Astar", "reference", True,
         lambda: is_automorphism(cp.A_star, TAU_PRIME.restrict(cp.A_star.vertices))),
        ("6.shelling-h-Qstar", "reference+derived", (1, 10, 9, 0, 0), lambda: shell_h(cp.Q_star)),
        ("6.shelling-h-Astar", "reference+derived", (1, 7, 0, 0), lambda: shell_h(cp.A_star)),
        ("7.cm-Qstar", "reference", True, lambda: cm(cp.Q_star)),
        ("7.cm-Astar", "reference", True, lambda: cm(cp.A_star)),
        ("7.cm-C3", "reference", True, lambda: cm(cp.C(3))),
        ("7.cm-C37", "reference", True, lambda: cm(cp.C(37))),
        ("8.partition-X", "reference", NOT_PARTITIONABLE, lambda: part_status(cp.X)),
        ("8.partition-C2", "reference", PARTITIONABLE, lambda: part_status(cp.C(2))),
        ("8.partition-C3", "reference", NOT_PARTITIONABLE, lambda: part_status(cp.C(3), **c3_kw)),
        ("9.boundary-squared-zero", "derived", True, boundary_squared),
        ("9.betti-euler", "derived", True, euler),
        ("9.sd-balanced", "derived", True, sd_balanced),
        ("9.glue-f-identity", "derived", True, glue_identity),
        ("9.certificate-identities", "derived", True, certificate_identities),
    ]


def verify_paper(
    field: int = 2,
    q_facets: Iterable[Sequence[object]] = Q_FACETS,
    only: Iterable[str] | None = None,
    c3_budget: float | None = None,
    echo: Callable[[str], None] | None = None,
) -> VerificationReport:
    """Run every claim in order; a claim that raises is reported as FAIL."""
    corpus = Corpus(q_facets)
    wanted = set(only) if only is not None else None
    results = []
    for cid, source, expected, compute in claims(corpus, field, c3_budget):
        if wanted is not None and cid not in wanted:
            continue
        t0 = time.perf_counter()
        try:
            got = compute()
            status = "PASS" if got == expected else "FAIL"
            got_s = _fmt(got)
        except Exception as exc:  # a broken construction must not abort the report
            status, got_s = "FAIL", f"error:{type(exc).__name__}"
        res = ClaimResult(cid, status, _fmt(expected), got_s, source, (time.perf_counter() - t0) * 1000)
        results.append(res)
        if echo:
            echo(res.line())
    return VerificationReport(results, field)
