"""Parameter sweeps over GF towers and isomorphism-class censuses."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from . import __version__
from .doubling import TABLE_LIMIT, AlgebraError, DoublingParams, gf_algebra
from .gf_tower import AutMap, make_tower
from .morphisms import (ISO_LIMIT, LinearMapTable, MorphismCandidate, _restricted_iter,
                        iso_bruteforce, verify_linear_map)
from .rings import GFRing
from .structure import YES, StructureReport, probe

SCHEMA = 1


class GuardError(ValueError):
    """A sweep or census request exceeds the brute-force size guards."""


@dataclass
class SweepSpec:
    p: int
    s: int
    r: int
    c_values: list | None = None  # literals or encoded ints; None = all of K^x
    sigmas: list | None = None  # exponent 4-tuples; None = all of Aut_F(K)^4
    division_only: bool = False
    proper_only: bool = False  # drop associative algebras

    def tower(self):
        t = make_tower(self.p, self.s, self.r)
        if t.q > TABLE_LIMIT:
            raise GuardError(f"sweeps need |K| <= {TABLE_LIMIT}, got {t.q}")
        return t

    def params(self) -> list[tuple[int, tuple[int, ...]]]:
        """(c, sigma exponents) in canonical order: c by discrete log, then sigma."""
        t = self.tower()
        if self.c_values is None:
            cs = list(range(1, t.q))
        else:
            cs = [t.parse(c) if isinstance(c, str) else int(c) for c in self.c_values]
            if any(c <= 0 or c >= t.q for c in cs):
                raise GuardError("c values must be nonzero elements of K")
        m = t.degree
        if self.sigmas is None:
            sig = list(product(range(m), repeat=4))
        else:
            sig = [tuple(int(j) % m for j in s) for s in self.sigmas]
            if any(len(s) != 4 for s in sig):
                raise GuardError("each sigma entry needs four exponents")
        keys = {(c, s) for c in cs for s in sig}
        return sorted(keys, key=lambda k: canonical_key(t, *k))

    @classmethod
    def from_json(cls, d: dict) -> "SweepSpec":
        known = {"p", "s", "r", "c_values", "sigmas", "division_only", "proper_only"}
        extra = set(d) - known
        if extra:
            raise GuardError(f"unknown sweep fields {sorted(extra)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise GuardError(f"bad sweep spec: {exc}") from None

    def to_json(self) -> dict:
        return {"p": self.p, "s": self.s, "r": self.r, "c_values": self.c_values,
                "sigmas": self.sigmas, "division_only": self.division_only,
                "proper_only": self.proper_only}


def canonical_key(tower, c: int, sigma) -> tuple:
    return (tower.log[c], tuple(sigma))


@dataclass
class SweepEntry:
    c: int
    sigma: tuple
    algebra: DoublingParams
    report: StructureReport

    def label(self) -> dict:
        return {"c": self.algebra.ring.format(self.c), "sigma": list(self.sigma)}


def _algebra(t, c, sigma) -> DoublingParams:
    return gf_algebra(t, c, list(sigma))


def _probe_block(args):
    p, s, r, block = args
    t = make_tower(p, s, r)
    return [probe(_algebra(t, c, sg)) for c, sg in block]


def sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepEntry]:
    """Probe every algebra the sweep describes; output order does not depend on jobs."""
    t = spec.tower()
    keys = spec.params()
    if jobs > 1 and len(keys) > 1:
        size = -(-len(keys) // (4 * jobs))
        blocks = [keys[i:i + size] for i in range(0, len(keys), size)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = ex.map(_probe_block, [(spec.p, spec.s, spec.r, b) for b in blocks])
            reports = [rep for part in parts for rep in part]
        # reports carry their own algebra objects; rebuild on this side for one tower
        entries = [SweepEntry(c, sg, _algebra(t, c, sg), rep) for (c, sg), rep in zip(keys, reports)]
    else:
        entries = [SweepEntry(c, sg, A, probe(A)) for c, sg in keys
                   for A in [_algebra(t, c, sg)]]
    if spec.division_only:
        entries = [e for e in entries if e.report.is_division == YES]
    if spec.proper_only:
        entries = [e for e in entries if not e.report.is_associative]
    return entries


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> int:
        """Merge, keeping the smaller index as root (the canonical representative)."""
        a, b = self.find(i), self.find(j)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
        return a


def _invariants(rep: StructureReport) -> tuple:
    return (rep.is_division, rep.is_associative, rep.is_commutative, rep.commutator.dim,
            tuple(rep.nucleus(s).dim for s in ("left", "middle", "right")), rep.center.dim)


def _witness_json(w) -> dict:
    if isinstance(w, MorphismCandidate):
        return {"kind": "restricted", **w.to_json()}
    return {"kind": "matrix", "images": [[int(x) for x in col] for col in w.images]}


@dataclass
class CensusReport:
    spec: SweepSpec
    mode: str
    entries: list[SweepEntry]
    classes: list[list[int]]  # entry indices; first is the representative
    provenance: dict = field(default_factory=dict)  # member index -> (method, witness)

    @property
    def ok(self) -> bool:
        return all(e.report.ok for e in self.entries)

    def to_json(self) -> dict:
        t = self.spec.tower()
        classes = []
        for members in self.classes:
            rep = self.entries[members[0]]
            rows = []
            for i in members[1:]:
                method, wit = self.provenance[i]
                rows.append({**self.entries[i].label(), "method": method, "witness": _witness_json(wit)})
            classes.append({"representative": rep.label(), "members": rows})
        return {
            "schema": SCHEMA,
            "tool_version": __version__,
            "tower": {"base": "gf", **t.descriptor()},
            "spec": self.spec.to_json(),
            "mode": self.mode,
            "algebras": [{**e.label(), "class": self.class_of(i), "report": e.report.to_json()}
                         for i, e in enumerate(self.entries)],
            "classes": classes,
            "class_count": len(self.classes),
            "disagreements": [{**e.label(), "flags": e.report.disagreements}
                              for e in self.entries if not e.report.ok],
        }

    def class_of(self, i: int) -> int:
        for k, members in enumerate(self.classes):
            if i in members:
                return k
        raise KeyError(i)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["c", "s1", "s2", "s3", "s4", "division", "associative", "commutative",
                     "dim_comm", "dim_nuc_l", "dim_nuc_m", "dim_nuc_r", "dim_center", "class", "ok"])
        for i, e in enumerate(self.entries):
            rep = e.report
            wr.writerow([e.label()["c"], *e.sigma, rep.is_division, int(rep.is_associative),
                         int(rep.is_commutative), rep.commutator.dim,
                         *(rep.nucleus(s).dim for s in ("left", "middle", "right")),
                         rep.center.dim, self.class_of(i), int(rep.ok)])
        return buf.getvalue()


def census(spec: SweepSpec, mode: str = "restricted", jobs: int = 1) -> CensusReport:
    """Partition the sweep into isomorphism classes.

    Each algebra is compared with existing class representatives whose cheap
    invariants match.  restricted mode merges on a K-restricting isomorphism;
    full mode tries that first and then the generator-image oracle.
    """
    if mode not in ("restricted", "full"):
        raise GuardError(f"unknown census mode {mode!r}")
    t = spec.tower()
    if mode == "full" and t.q ** 2 > ISO_LIMIT:
        raise GuardError(f"full census needs q^2 <= {ISO_LIMIT}")
    entries = sweep(spec, jobs)
    uf = UnionFind(len(entries))
    reps: list[int] = []
    prov = {}
    inv = [_invariants(e.report) for e in entries]
    for i, e in enumerate(entries):
        for k in reps:
            if inv[k] != inv[i]:
                continue
            B = entries[k].algebra
            wit = next(_restricted_iter(e.algebra, B), None)
            method = "restricted"
            if wit is None and mode == "full":
                found = iso_bruteforce(e.algebra, B, first_only=True)
                wit = found[0] if found else None
                method = "full"
            if wit is not None:
                uf.union(k, i)
                prov[i] = (method, wit)
                break
        else:
            reps.append(i)
    groups: dict[int, list[int]] = {}
    for i in range(len(entries)):
        groups.setdefault(uf.find(i), []).append(i)
    classes = [groups[k] for k in sorted(groups)]
    return CensusReport(spec, mode, entries, classes, prov)


def dump_census(report: CensusReport) -> str:
    return json.dumps(report.to_json(), indent=1, sort_keys=True)


def verify_census_json(data: dict) -> list[str]:
    """Re-check every stored witness; returns a list of failure messages."""
    if data.get("schema") != SCHEMA:
        raise AlgebraError(f"unsupported census schema {data.get('schema')!r}")
    tw = data["tower"]
    t = make_tower(tw["p"], tw["s"], tw["r"], tw.get("modulus"))
    R = GFRing(t)
    failures = []
    for cls in data["classes"]:
        rep = cls["representative"]
        B = gf_algebra(t, rep["c"], rep["sigma"])
        for m in cls["members"]:
            A = gf_algebra(t, m["c"], m["sigma"])
            w = m["witness"]
            if w["kind"] == "restricted":
                G = MorphismCandidate(A, B, AutMap(w["g"], t.degree), AutMap(w["h"], t.degree),
                                      R.parse(w["b"]))
                good = G.verify()
            else:
                images = tuple(tuple(col) for col in w["images"])
                table = LinearMapTable(A, B, images, True)
                good = verify_linear_map(A, B, lambda a: B.from_coords(
                    table.apply_coords(A.coords(a)))) is not None
            if not good:
                failures.append(f"witness {m['c']} {m['sigma']} -> {rep['c']} {rep['sigma']} fails")
    return failures
