"""Classification of cyclic combinatorial 3-manifolds on a fixed vertex count.

The search universe for n vertices is the set of canonical difference cycles
of dimension 3, one per rotation class of 4-part compositions of n.  A union
of cycle orbits is a closed pseudomanifold exactly when every triangle of the
expansion lies in two facets; that condition lives entirely on the orbit
level, as weighted incidences between tetrahedral cycles and their
vertex-deleted triangle cycles (``ridge_orbits``).  ``classify`` therefore
runs an exact-double-cover DFS: branch on the smallest triangle orbit still
covered once, add a compatible cycle, prune any overshoot past two, and test
the completed candidates for sphere links and connectivity.

Every connected manifold is reachable this way because its facet graph is
strongly connected, so a proper sub-union always leaves some triangle orbit
half covered.  A disconnected union can still appear when one orbit spreads
facets over several components (a cycle of even differences on even n splits
over the two parity classes); the connectivity filter removes those, and the
reported complexes are exactly the connected combinatorial manifolds.

Results reduce in two stages: grouping by the multiplier action of the units
of Z_n, then merging multiplier classes through explicit isomorphism search
on the expansions.  A ``Registry`` persists one JSON-lines file per n plus a
manifest with counts and checksums; interrupted runs checkpoint the finished
DFS seeds and resume from there.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import gcd
from pathlib import Path

from .cycles import CyclicComplex, DifferenceCycle, FacetComplex, parse_complex
from .homology import homology
from .topology import f_vector, is_connected, is_sphere_2d, link

__all__ = [
    "RidgeOrbit",
    "EnumerationResult",
    "Registry",
    "RegistryError",
    "all_difference_cycles",
    "ridge_orbits",
    "classify",
    "dedupe_multipliers",
    "iso_classes",
    "are_isomorphic",
    "registry",
]

DEFAULT_REGISTRY_ENV = "DIFFCYC_REGISTRY"


class RegistryError(LookupError):
    """A registry file is missing, incomplete, or fails its checksum."""


def all_difference_cycles(n: int, d: int = 3) -> list[DifferenceCycle]:
    """Every canonical difference cycle of dimension d on n vertices, sorted.

    One representative per rotation class of compositions of n into d+1
    positive parts; the count is the necklace number of such compositions.
    """
    if n < d + 2:
        raise ValueError(f"need n >= {d + 2} in dimension {d}, got n={n}")
    seen: set[DifferenceCycle] = set()
    for cuts in combinations(range(1, n), d):
        bounds = (0,) + cuts + (n,)
        parts = tuple(b - a for a, b in zip(bounds, bounds[1:]))
        seen.add(DifferenceCycle(parts))
    return sorted(seen)


@dataclass(frozen=True)
class RidgeOrbit:
    """A triangle orbit in the boundary of a tetrahedral cycle's facets.

    ``multiplicity`` counts how many facets of the tetrahedral orbit contain
    any fixed triangle of this orbit; the count is uniform because both
    orbits are translates of each other under the same cyclic group.
    """

    cycle: DifferenceCycle
    multiplicity: int

    def __post_init__(self) -> None:
        if self.cycle.dim != 2:
            raise ValueError("ridge orbits are 2-dimensional")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")


def ridge_orbits(c: DifferenceCycle) -> list[RidgeOrbit]:
    """The triangle orbits covered by c's facets, with incidence multiplicities.

    Deleting vertex j of the generator simplex merges the adjacent entries
    a_{j-1} and a_j into one; the four deletions fall into at most four
    canonical triangle classes.  Slot counts convert to per-triangle
    multiplicities through the two orbit lengths, so that
    sum(multiplicity * triangle orbit length) == 4 * orbit_length(c).
    """
    if c.dim != 3:
        raise ValueError(f"expected a 3-dimensional cycle, got dimension {c.dim}")
    a = c.parts
    slots: dict[DifferenceCycle, int] = {}
    for j in range(4):
        merged = (a[(j - 1) % 4] + a[j], a[(j + 1) % 4], a[(j + 2) % 4])
        t = DifferenceCycle(merged)
        slots[t] = slots.get(t, 0) + 1
    out = []
    for t in sorted(slots):
        weight = slots[t] * c.orbit_length()
        out.append(RidgeOrbit(t, weight // t.orbit_length()))
    return out


@lru_cache(maxsize=32)
def _search_tables(n: int):
    """Universe, per-cycle ridge profiles, and ridge-to-cycle index for n.

    Cycles hitting any triangle orbit more than twice on their own can never
    join a double cover and are dropped from the searchable universe.
    """
    cycles = tuple(all_difference_cycles(n))
    ridge_ids: dict[DifferenceCycle, int] = {}
    raw_profiles = []
    for c in cycles:
        profile = []
        for orbit in ridge_orbits(c):
            rid = ridge_ids.setdefault(orbit.cycle, len(ridge_ids))
            profile.append((rid, orbit.multiplicity))
        raw_profiles.append(tuple(profile))
    # ridge ids reordered lexicographically so "smallest open ridge" is stable
    order = sorted(ridge_ids, key=lambda t: t.parts)
    rank = {ridge_ids[t]: i for i, t in enumerate(order)}
    profiles = tuple(
        tuple(sorted((rank[rid], m) for rid, m in p)) for p in raw_profiles
    )
    usable = tuple(
        i for i, p in enumerate(profiles) if all(m <= 2 for _, m in p)
    )
    by_ridge: dict[int, list[tuple[int, int]]] = {}
    for i in usable:
        for rid, m in profiles[i]:
            by_ridge.setdefault(rid, []).append((i, m))
    return cycles, profiles, by_ridge, frozenset(usable)


def _solve_seed(n: int, seed: int) -> tuple[list[tuple[int, ...]], int, int]:
    """Double covers with smallest member ``seed`` whose links are spheres.

    Returns (solutions, raw, nodes): ``raw`` counts every double cover found,
    while ``solutions`` keeps only those whose vertex link is a 2-sphere.
    """
    cycles, profiles, by_ridge, usable = _search_tables(n)
    if seed not in usable:
        return [], 0, 0
    solutions: list[tuple[int, ...]] = []
    raw = 0
    nodes = 0
    cover: dict[int, int] = {}
    chosen: list[int] = []
    members: set[int] = set()

    def try_add(i: int) -> bool:
        applied = 0
        for rid, m in profiles[i]:
            if cover.get(rid, 0) + m > 2:
                for rid2, m2 in profiles[i][:applied]:
                    cover[rid2] -= m2
                return False
            cover[rid] = cover.get(rid, 0) + m
            applied += 1
        chosen.append(i)
        members.add(i)
        return True

    def undo(i: int) -> None:
        chosen.pop()
        members.remove(i)
        for rid, m in profiles[i]:
            cover[rid] -= m

    def walk() -> None:
        nonlocal nodes, raw
        nodes += 1
        open_ridge = min(
            (rid for rid, w in cover.items() if w == 1), default=None
        )
        if open_ridge is None:
            raw += 1
            C = CyclicComplex((cycles[i] for i in chosen), n=n)
            if is_sphere_2d(link(C.expand(), 0)):
                solutions.append(tuple(chosen))
            return
        # the ridge needs exactly one more facet, so only weight-1 cycles fit
        for j, m in by_ridge.get(open_ridge, ()):
            if m != 1 or j <= seed or j in members:
                continue
            if try_add(j):
                walk()
                undo(j)

    if try_add(seed):
        walk()
    return solutions, raw, nodes


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of classifying all cyclic 3-manifolds on n vertices.

    ``raw`` counts double-cover solutions from the search, ``distinct`` those
    whose vertex links are 2-spheres, ``connected`` the connected manifolds
    among them; ``all_complexes`` holds exactly the connected ones.  When a
    time limit interrupts the search, ``complete`` is False and the counts
    reflect only the finished seeds.
    """

    n: int
    all_complexes: tuple[CyclicComplex, ...]
    multiplier_classes: tuple[tuple[CyclicComplex, ...], ...]
    iso_classes: tuple[tuple[CyclicComplex, ...], ...]
    raw: int
    distinct: int
    connected: int
    seconds: float
    nodes: int
    complete: bool = True

    def __post_init__(self) -> None:
        total = len(self.all_complexes)
        if sum(len(g) for g in self.multiplier_classes) != total:
            raise ValueError("multiplier classes do not partition the complexes")
        if sum(len(g) for g in self.iso_classes) != total:
            raise ValueError("iso classes do not partition the complexes")
        if not (self.raw >= self.distinct >= self.connected == total):
            raise ValueError("inconsistent counters")

    def summary(self) -> dict:
        return {
            "n": self.n,
            "raw": self.raw,
            "distinct": self.distinct,
            "connected": self.connected,
            "multiplier_classes": len(self.multiplier_classes),
            "iso_classes": len(self.iso_classes),
            "nodes": self.nodes,
            "complete": self.complete,
        }


def _units(n: int) -> list[int]:
    return [u for u in range(1, n) if gcd(u, n) == 1]


def dedupe_multipliers(
    complexes: list[CyclicComplex] | tuple[CyclicComplex, ...],
) -> list[list[CyclicComplex]]:
    """Group complexes by the vertex-relabeling action of the units of Z_n."""
    complexes = list(complexes)
    if not complexes:
        return []
    n = complexes[0].n
    if any(C.n != n for C in complexes):
        raise ValueError("all complexes must share the same number of vertices")
    units = _units(n)
    groups: dict[str, list[CyclicComplex]] = {}
    for C in complexes:
        key = min(str(C.multiply(u)) for u in units)
        groups.setdefault(key, []).append(C)
    out = [sorted(g, key=str) for g in groups.values()]
    out.sort(key=lambda g: str(g[0]))
    return out


def _link_fvectors(K: FacetComplex) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(f_vector(link(K, v)) for v in K.vertices))


def _fingerprint(C: CyclicComplex):
    K = C.expand()
    H = homology(K)
    return (f_vector(K), H.betti, H.torsion, _link_fvectors(K))


def are_isomorphic(A: CyclicComplex, B: CyclicComplex) -> bool:
    """Exact combinatorial isomorphism test on the expansions.

    Seeds a vertex bijection on one facet pair and propagates it across
    shared triangles; in a pseudomanifold each mapped triangle determines the
    next facet image, so the branching stays near 1.  Both complexes must be
    connected, which holds for everything the classifier emits.
    """
    KA, KB = A.expand(), B.expand()
    facA = [frozenset(f) for f in KA.facets]
    facB = {frozenset(f) for f in KB.facets}
    if len(facA) != len(facB) or f_vector(KA) != f_vector(KB):
        return False
    if _link_fvectors(KA) != _link_fvectors(KB):
        return False
    start = min(facA, key=sorted)
    rest = [f for f in facA if f != start]
    start_t = tuple(sorted(start))
    for target in facB:
        for image in permutations(sorted(target)):
            vmap = dict(zip(start_t, image))
            if _extend_iso(vmap, rest, facB):
                return True
    return False


def _extend_iso(
    vmap: dict[int, int],
    pending: list[frozenset],
    facB: set[frozenset],
) -> bool:
    if not pending:
        used = set(vmap.values())
        return len(used) == len(vmap)
    # prefer a facet with the most mapped vertices; its image is most pinned
    best = max(pending, key=lambda f: sum(1 for v in f if v in vmap))
    known = sum(1 for v in best if v in vmap)
    if known == 0:
        # disconnected input; this search only follows shared vertices
        raise ValueError("isomorphism search requires connected complexes")
    remaining = [f for f in pending if f is not best]
    free = [v for v in best if v not in vmap]
    mapped = frozenset(vmap[v] for v in best if v in vmap)
    taken = set(vmap.values())
    for g in facB:
        if not mapped <= g:
            continue
        candidates = [w for w in g if w not in mapped]
        if len(candidates) != len(free):
            continue
        for assignment in permutations(candidates):
            if any(w in taken for w in assignment):
                continue
            trial = dict(vmap)
            trial.update(zip(free, assignment))
            if _extend_iso(trial, remaining, facB):
                return True
    return False


def iso_classes(
    complexes: list[CyclicComplex] | tuple[CyclicComplex, ...],
) -> list[list[CyclicComplex]]:
    """Partition into combinatorial isomorphism classes.

    Multiplier grouping runs first since unit relabelings are isomorphisms;
    the surviving class representatives are bucketed by invariant fingerprint
    and merged by the explicit search only inside each bucket.
    """
    mult = dedupe_multipliers(complexes)
    return [sorted(g, key=str) for g in _merge_multiplier_classes(mult)]


def _merge_multiplier_classes(
    mult: list[list[CyclicComplex]],
) -> list[list[CyclicComplex]]:
    reps = [g[0] for g in mult]
    parent = list(range(len(mult)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    buckets: dict[object, list[int]] = {}
    for i, rep in enumerate(reps):
        buckets.setdefault(_fingerprint(rep), []).append(i)
    for members in buckets.values():
        for a, b in combinations(members, 2):
            ra, rb = find(a), find(b)
            if ra != rb and are_isomorphic(reps[a], reps[b]):
                parent[max(ra, rb)] = min(ra, rb)
    merged: dict[int, list[CyclicComplex]] = {}
    for i, group in enumerate(mult):
        merged.setdefault(find(i), []).extend(group)
    out = [sorted(g, key=str) for g in merged.values()]
    out.sort(key=lambda g: str(g[0]))
    return out


def classify(
    n: int,
    *,
    jobs: int = 1,
    time_limit: float | None = None,
    checkpoint_every: int | None = None,
    registry: "Registry | None" = None,
) -> EnumerationResult:
    """Enumerate all connected cyclic combinatorial 3-manifolds on n vertices.

    Runs the double-cover DFS once per seed cycle, optionally across a
    process pool (``jobs``).  With a registry attached, finished seeds are
    checkpointed every ``checkpoint_every`` seeds and on hitting
    ``time_limit`` (seconds), and a completed run is persisted; a later call
    resumes from the checkpoint.  An interrupted run returns a result with
    ``complete=False`` built from the finished seeds only.
    """
    if n < 5:
        raise ValueError(f"classification needs n >= 5, got {n}")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    started = time.monotonic()
    deadline = None if time_limit is None else started + time_limit
    cycles, _, _, usable = _search_tables(n)
    seeds = sorted(usable)

    done: set[int] = set()
    solutions: list[tuple[int, ...]] = []
    raw = 0
    nodes = 0
    if registry is not None:
        state = registry.read_checkpoint(n)
        if state is not None:
            done = set(state["done"])
            solutions = [tuple(s) for s in state["solutions"]]
            raw = state["raw"]
            nodes = state["nodes"]
    pending = [s for s in seeds if s not in done]

    def note_done(seed: int, sols: list[tuple[int, ...]], r: int, count: int) -> None:
        nonlocal raw, nodes
        done.add(seed)
        solutions.extend(sols)
        raw += r
        nodes += count

    def checkpoint() -> None:
        if registry is not None:
            registry.write_checkpoint(n, done, solutions, raw, nodes)

    interrupted = False
    processed = 0
    if jobs == 1:
        for seed in pending:
            if deadline is not None and time.monotonic() > deadline:
                interrupted = True
                break
            sols, r, count = _solve_seed(n, seed)
            note_done(seed, sols, r, count)
            processed += 1
            if checkpoint_every and processed % checkpoint_every == 0:
                checkpoint()
    elif pending:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_solve_seed, n, s): s for s in pending}
            for fut in as_completed(futures):
                if fut.cancelled():
                    interrupted = True
                    continue
                sols, r, count = fut.result()
                note_done(futures[fut], sols, r, count)
                processed += 1
                if checkpoint_every and processed % checkpoint_every == 0:
                    checkpoint()
                if deadline is not None and time.monotonic() > deadline:
                    # cancel what has not started; running seeds still finish
                    # and their results are consumed, never discarded
                    for f in futures:
                        if not f.done():
                            f.cancel()

    if interrupted:
        checkpoint()

    manifolds = [
        CyclicComplex((cycles[i] for i in sol), n=n) for sol in solutions
    ]
    distinct = len(manifolds)
    kept = sorted(
        (C for C in manifolds if is_connected(C.expand())), key=str
    )
    connected_count = len(kept)
    mult = dedupe_multipliers(kept)
    iso = _merge_multiplier_classes(mult)
    result = EnumerationResult(
        n=n,
        all_complexes=tuple(kept),
        multiplier_classes=tuple(tuple(g) for g in mult),
        iso_classes=tuple(tuple(g) for g in iso),
        raw=raw,
        distinct=distinct,
        connected=connected_count,
        seconds=time.monotonic() - started,
        nodes=nodes,
        complete=not interrupted,
    )
    if registry is not None and result.complete:
        registry.store(result)
        registry.clear_checkpoint(n)
    return result


class Registry:
    """Persistent store: one JSON-lines file per n plus a manifest.

    Lines are sorted by the canonical text of the complex, so (n, index)
    addresses are stable across runs and machines.  The manifest records
    counts and a sha256 per data file; ``load`` verifies the checksum.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def data_path(self, n: int) -> Path:
        return self.root / f"{n}.jsonl"

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def checkpoint_path(self, n: int) -> Path:
        return self.root / f"checkpoint-{n}.json"

    def _manifest(self) -> dict:
        if not self.manifest_path.exists():
            return {"version": 1, "entries": {}}
        return json.loads(self.manifest_path.read_text())

    def _write_json(self, path: Path, payload) -> None:
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        os.replace(tmp, path)

    def has(self, n: int) -> bool:
        return str(n) in self._manifest()["entries"] and self.data_path(n).exists()

    def store(self, result: EnumerationResult) -> Path:
        if not result.complete:
            raise ValueError("refusing to store an interrupted classification")
        class_index: dict[CyclicComplex, tuple[int, int]] = {}
        for mi, group in enumerate(result.multiplier_classes):
            for C in group:
                class_index[C] = (mi, -1)
        for ii, group in enumerate(result.iso_classes):
            for C in group:
                class_index[C] = (class_index[C][0], ii)
        lines = []
        for i, C in enumerate(result.all_complexes):
            H = homology(C)
            mi, ii = class_index[C]
            lines.append(
                json.dumps(
                    {
                        "index": i,
                        "cycles": str(C),
                        "fvector": list(f_vector(C)),
                        "homology": H.as_dict(),
                        "multiplier_class": mi,
                        "iso_class": ii,
                    },
                    sort_keys=True,
                )
            )
        path = self.data_path(result.n)
        tmp = path.with_suffix(".tmp")
        tmp.write_text("\n".join(lines) + ("\n" if lines else ""))
        os.replace(tmp, path)
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        manifest = self._manifest()
        manifest["entries"][str(result.n)] = {
            "complexes": result.connected,
            "raw": result.raw,
            "distinct": result.distinct,
            "multiplier_classes": len(result.multiplier_classes),
            "iso_classes": len(result.iso_classes),
            "lines": len(lines),
            "sha256": digest,
        }
        self._write_json(self.manifest_path, manifest)
        return path

    def counts(self, n: int) -> dict:
        entry = self._manifest()["entries"].get(str(n))
        if entry is None:
            raise RegistryError(f"no classification stored for n = {n}")
        return dict(entry)

    def load(self, n: int) -> list[dict]:
        entry = self.counts(n)
        path = self.data_path(n)
        if not path.exists():
            raise RegistryError(f"missing data file {path}")
        blob = path.read_bytes()
        digest = hashlib.sha256(blob).hexdigest()
        if digest != entry["sha256"]:
            raise RegistryError(f"checksum mismatch for {path}")
        return [json.loads(line) for line in blob.decode().splitlines() if line]

    def complexes(self, n: int) -> list[CyclicComplex]:
        return [parse_complex(row["cycles"]) for row in self.load(n)]

    def complex(self, n: int, index: int) -> CyclicComplex:
        rows = self.load(n)
        if not 0 <= index < len(rows):
            raise IndexError(
                f"index {index} out of range; n = {n} has {len(rows)} complexes"
            )
        return parse_complex(rows[index]["cycles"])

    def representatives(self, n: int) -> list[CyclicComplex]:
        """One complex per isomorphism class, in stored order."""
        seen: set[int] = set()
        reps = []
        for row in self.load(n):
            if row["iso_class"] not in seen:
                seen.add(row["iso_class"])
                reps.append(parse_complex(row["cycles"]))
        return reps

    def read_checkpoint(self, n: int) -> dict | None:
        path = self.checkpoint_path(n)
        if not path.exists():
            return None
        state = json.loads(path.read_text())
        if state.get("n") != n:
            raise RegistryError(f"checkpoint {path} belongs to n = {state.get('n')}")
        return state

    def write_checkpoint(
        self,
        n: int,
        done: set[int],
        solutions: list[tuple[int, ...]],
        raw: int,
        nodes: int,
    ) -> None:
        self._write_json(
            self.checkpoint_path(n),
            {
                "n": n,
                "done": sorted(done),
                "solutions": [list(s) for s in solutions],
                "raw": raw,
                "nodes": nodes,
            },
        )

    def clear_checkpoint(self, n: int) -> None:
        path = self.checkpoint_path(n)
        if path.exists():
            path.unlink()


def registry(n: int, index: int, root: str | Path | None = None) -> CyclicComplex:
    """Fetch the complex at address (n, index) from a registry directory.

    ``root`` defaults to the DIFFCYC_REGISTRY environment variable, then to
    ``./registry``.
    """
    if root is None:
        root = os.environ.get(DEFAULT_REGISTRY_ENV, "registry")
    return Registry(root).complex(n, index)
