"""Breadth-first enumeration of projections by Move 1 from curl seeds.

Level 0 holds every R1-trivial projection within the curl budget; level
``k + 1`` holds every projection obtained from a level-``k`` projection by one
Move 1 and not already seen.  Each projection is collapsed to its family key
and the class table keeps the least level at which each family appears.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

from . import diagram as dg
from . import oracle
from .codec import emit_keg, parse_keg
from .keg import KnotEulerianGraph
from .projection import Projection, emit_gauss, from_projection, r1_reduce
from .reducer import canonical_key, reduce

MAX_BUDGET = 8


class BudgetTooLarge(ValueError):
    pass


class StaleSite(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    budget: int = 4
    max_level: int = 3
    max_crossings: Optional[int] = None
    max_diagrams: int = 2_000_000
    max_classes: int = 100_000

    def crossing_cap(self) -> int:
        if self.max_crossings is not None:
            return self.max_crossings
        return self.budget + self.max_level

    def as_dict(self) -> dict:
        return {"budget": self.budget, "max_level": self.max_level,
                "max_crossings": self.crossing_cap(), "max_diagrams": self.max_diagrams,
                "max_classes": self.max_classes}


# --- seeds ----------------------------------------------------------------


def enumerate_seeds(budget: int) -> list[Projection]:
    """R1-trivial projections with at most ``budget`` crossings, one per sphere class."""
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if budget > MAX_BUDGET:
        raise BudgetTooLarge(f"curl budget is capped at {MAX_BUDGET}")
    seen = {dg.canonical_form(dg.CIRCLE): dg.CIRCLE}
    level = [dg.CIRCLE]
    for _ in range(budget):
        nxt = []
        for nbr in level:
            darts = range(len(nbr)) if nbr else [0]
            for h in darts:
                for left in (True, False):
                    new = dg.add_curl(nbr, h, left)
                    key = dg.canonical_form(new)
                    if key not in seen:
                        seen[key] = new
                        nxt.append(new)
        level = nxt
    seeds = []
    for key in sorted(seen):
        p = Projection(seen[key])
        if not oracle.is_r1_trivial(p.code):
            raise AssertionError(f"seed {emit_gauss(p, bare=True)} is not R1-trivial")
        seeds.append(p)
    return seeds


# --- Move 1 ---------------------------------------------------------------


@dataclass(frozen=True)
class Move1Site:
    """Two darts on one face walk of ``source``; the new crossing joins their edges.

    Inside a disk face the four cut ends can be joined crosswise in one way
    only, so ``variant`` is always 0.  On the bare circle both darts are
    ``None`` and the site is one of its two faces.
    """

    face: int
    first: Optional[int]
    second: Optional[int]
    source: dg.Nbr
    variant: int = 0

    def describe(self) -> str:
        return f"face {self.face} darts {self.first},{self.second}"


def move1_sites(p: Projection) -> list[Move1Site]:
    nbr = p.nbr
    if not nbr:
        return [Move1Site(0, None, None, nbr), Move1Site(1, None, None, nbr)]
    sites = []
    for fi, face in enumerate(dg.faces(nbr)):
        for i in range(len(face)):
            for j in range(i + 1, len(face)):
                h1, h2 = face[i], face[j]
                if h2 in (h1, nbr[h1]):
                    continue
                if dg.component_count(dg.insert_crossing(nbr, h1, h2)) == 1:
                    sites.append(Move1Site(fi, h1, h2, nbr))
    return sites


def apply_move1(p: Projection, site: Move1Site) -> Projection:
    if site.source != p.nbr:
        raise StaleSite("site belongs to a different projection")
    if site.first is None:
        return Projection(dg.add_curl(dg.CIRCLE, 0, True))
    out = dg.insert_crossing(p.nbr, site.first, site.second)
    if dg.component_count(out) != 1 or not dg.is_spherical(out):
        raise AssertionError("Move 1 produced an invalid projection")
    return Projection(out)


# --- class table ----------------------------------------------------------


@dataclass
class ClassRecord:
    key: str
    level: int
    representative: KnotEulerianGraph
    witness: tuple  # (seed projection, tuple of projections after each move)
    composite: bool = False

    @property
    def vertex_count(self) -> int:
        return len(self.representative.real_vertices)

    @property
    def parities(self) -> str:
        return "".join(sorted("o" if v.parity == "odd" else "e"
                              for v in self.representative.real_vertices))


@dataclass
class ClassTable:
    records: dict[str, ClassRecord] = field(default_factory=dict)
    levels_done: int = -1
    incomplete: Optional[str] = None
    incomplete_level: Optional[int] = None  # first level that may be missing entries

    def mark_incomplete(self, level: int, reason: str) -> None:
        if self.incomplete_level is None or level < self.incomplete_level:
            self.incomplete_level = level
            self.incomplete = reason

    def complete_below(self, level: int) -> bool:
        return self.incomplete_level is None or self.incomplete_level >= level

    def __contains__(self, key: str) -> bool:
        return key in self.records

    def __getitem__(self, key: str) -> ClassRecord:
        return self.records[key]

    def __len__(self) -> int:
        return len(self.records)

    def at_level(self, level: int, prime_only: bool = True) -> list[ClassRecord]:
        return sorted((r for r in self.records.values()
                       if r.level == level and not (prime_only and r.composite)),
                      key=lambda r: r.key)

    def offer(self, key: str, level: int, rep, witness, composite: bool) -> bool:
        old = self.records.get(key)
        if old is not None and old.level <= level:
            return False
        self.records[key] = ClassRecord(key, level, rep, witness, composite)
        return True

    # persistence

    def save(self, directory: os.PathLike) -> None:
        d = Path(directory)
        (d / "keg").mkdir(parents=True, exist_ok=True)
        rows = sorted(self.records.values(), key=lambda r: (r.level, r.key))
        with open(d / "classes.tsv", "w", newline="") as fh:
            w = csv.writer(fh, delimiter="\t", lineterminator="\n")
            w.writerow(["canonical_key", "level", "vertex_count", "parities",
                        "composite_flag", "witness_ref"])
            for i, r in enumerate(rows):
                ref = f"keg/class{i:05d}.keg"
                (d / ref).write_text(emit_keg(r.representative))
                (d / f"keg/class{i:05d}.witness").write_text(_witness_text(r.witness))
                w.writerow([r.key, r.level, r.vertex_count, r.parities,
                            int(r.composite), ref])
        meta = (f"levels_done\t{self.levels_done}\nincomplete\t{self.incomplete or ''}\n"
                f"incomplete_level\t{'' if self.incomplete_level is None else self.incomplete_level}\n")
        (d / "table.meta").write_text(meta)

    @classmethod
    def load(cls, directory: os.PathLike) -> "ClassTable":
        d = Path(directory)
        table = cls()
        with open(d / "classes.tsv", newline="") as fh:
            for row in csv.DictReader(fh, delimiter="\t"):
                rep = parse_keg((d / row["witness_ref"]).read_text())
                wpath = d / row["witness_ref"].replace(".keg", ".witness")
                witness = _parse_witness(wpath.read_text()) if wpath.exists() else None
                table.records[row["canonical_key"]] = ClassRecord(
                    row["canonical_key"], int(row["level"]), rep, witness,
                    row["composite_flag"] == "1")
        meta = d / "table.meta"
        if meta.exists():
            info = dict(line.split("\t", 1) for line in meta.read_text().splitlines())
            table.levels_done = int(info.get("levels_done", -1))
            table.incomplete = info.get("incomplete") or None
            lvl = info.get("incomplete_level")
            table.incomplete_level = int(lvl) if lvl else None
        return table


def _witness_text(witness) -> str:
    seed, chain = witness
    return "\n".join(emit_gauss(p) for p in (seed, *chain)) + "\n"


def _parse_witness(text: str):
    from .projection import parse_gauss

    ps = [parse_gauss(line) if line else Projection(dg.CIRCLE)
          for line in text.rstrip("\n").split("\n")]
    return ps[0], tuple(ps[1:])


# --- enumeration ----------------------------------------------------------


def family_of(p: Projection) -> tuple[str, KnotEulerianGraph]:
    """Family key of ``p``, read off its curl-free projection."""
    g = reduce(from_projection(Projection(r1_reduce(p.nbr)[0])))
    return canonical_key(g), g


def _expand(nbr: dg.Nbr) -> list[tuple[tuple, dg.Nbr]]:
    p = Projection(nbr)
    out = []
    for s in move1_sites(p):
        q = apply_move1(p, s).nbr
        out.append((dg.canonical_form(q), q))
    return out


def _classify(nbr: dg.Nbr) -> tuple[str, KnotEulerianGraph, bool]:
    from .solver import detect_composite

    key, g = family_of(Projection(nbr))
    return key, g, not detect_composite(g).prime


class Engine:
    """Incremental level-by-level enumeration; ``extend`` adds levels on demand.

    Every diagram met is kept with its level and the diagram it came from,
    so witnesses can be rebuilt for any of them.
    """

    def __init__(self, caps: Caps = Caps(), jobs: int = 1):
        self.caps = caps
        self.jobs = max(1, jobs)
        self.table = ClassTable()
        self.level_of: dict[tuple, int] = {}
        self.parent: dict[tuple, Optional[tuple]] = {}
        self.nbr_of: dict[tuple, dg.Nbr] = {}
        self.frontier: list[tuple] = []  # canonical forms at the last level
        self.truncated_at: Optional[int] = None  # first level cut by the diagram cap

    @property
    def diagrams(self) -> int:
        return len(self.level_of)

    def witness(self, key: tuple) -> tuple:
        chain = []
        while key is not None:
            chain.append(Projection(self.nbr_of[key]))
            key = self.parent[key]
        chain.reverse()
        return chain[0], tuple(chain[1:])

    def diagram_level(self, p: Projection) -> Optional[int]:
        return self.level_of.get(p.canonical)

    def _map(self, fn, items: list) -> Iterable:
        if self.jobs == 1 or len(items) < 64:
            return map(fn, items)
        pool = ProcessPoolExecutor(self.jobs)
        try:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (8 * self.jobs))))
        finally:
            pool.shutdown()

    def _record(self, level: int) -> None:
        batch = self.frontier
        results = self._map(_classify, [self.nbr_of[k] for k in batch])
        for dkey, (key, g, composite) in zip(batch, results):
            old = self.table.records.get(key)
            if old is None or old.level > level:
                self.table.offer(key, level, g, self.witness(dkey), composite)
        if len(self.table) > self.caps.max_classes:
            self.table.mark_incomplete(level, f"class cap {self.caps.max_classes} reached")

    def extend(self, n: int) -> ClassTable:
        """Run levels up to ``n`` (bounded by the level cap)."""
        if n > self.caps.max_level:
            self.table.mark_incomplete(self.caps.max_level + 1, f"level cap {self.caps.max_level}")
            n = self.caps.max_level
        if self.table.levels_done < 0:
            for p in enumerate_seeds(self.caps.budget):
                k = p.canonical
                self.level_of[k], self.parent[k], self.nbr_of[k] = 0, None, p.nbr
                self.frontier.append(k)
            self._record(0)
            self.table.levels_done = 0
        while self.table.levels_done < n:
            level = self.table.levels_done + 1
            cap = self.caps.crossing_cap()
            parents = [k for k in self.frontier if dg.crossing_count(self.nbr_of[k]) < cap]
            if len(parents) < len(self.frontier):
                self.table.mark_incomplete(level, f"crossing cap {cap} reached")
            found: dict[tuple, tuple] = {}
            for pk, children in zip(parents, self._map(_expand, [self.nbr_of[k] for k in parents])):
                for key, q in children:
                    if key not in self.level_of and key not in found:
                        found[key] = (pk, q)
            # parents are visited in sorted order, so the first parent to reach
            # a diagram does not depend on how the work was scheduled
            self.frontier = sorted(found)
            for k in self.frontier:
                self.parent[k], self.nbr_of[k] = found[k]
                self.level_of[k] = level
            if self.diagrams > self.caps.max_diagrams:
                self.table.mark_incomplete(level + 1, f"diagram cap {self.caps.max_diagrams} reached")
                self.truncated_at = level + 1
            self._record(level)
            self.table.levels_done = level
            if self.diagrams > self.caps.max_diagrams:
                break
        return self.table


def generate(n: int, budget: int = 4, caps: Optional[Caps] = None, jobs: int = 1) -> ClassTable:
    if caps is None:
        caps = Caps(budget=budget, max_level=max(n, 0))
    if n < 0:
        raise ValueError("level must be nonnegative")
    return Engine(caps, jobs).extend(n)


def witness_moves(witness) -> Iterator[tuple[Projection, Projection]]:
    seed, chain = witness
    prev = seed
    for q in chain:
        yield prev, q
        prev = q
