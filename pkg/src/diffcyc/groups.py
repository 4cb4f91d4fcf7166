"""Edge-path group presentations, Tietze simplification, abelianization.

The edge-path presentation of a connected complex takes one generator per edge
outside a breadth-first spanning tree and one relator per triangle.  Words are
tuples of nonzero ints: +k traverses generator k forward, -k backward.

Simplification is best effort within a step budget and never claimed minimal;
the abelianization is computed exactly from exponent sums and Smith normal
form, and is invariant under the simplification.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import CyclicComplex, FacetComplex, as_facet_complex
from .homology import chain_faces
from .smith import invariant_factors


@dataclass(frozen=True)
class AbelianInvariants:
    """An abelian group Z^rank + Z_t1 + Z_t2 + ... with t1 | t2 | ..."""

    rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        terms = []
        if self.rank == 1:
            terms.append("Z")
        elif self.rank > 1:
            terms.append(f"Z^{self.rank}")
        terms.extend(f"Z_{t}" for t in self.torsion)
        return " + ".join(terms) if terms else "0"

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


class GroupPresentation:
    """A finite presentation with ngens generators and signed-word relators."""

    __slots__ = ("_ngens", "_relators")

    def __init__(self, ngens: int, relators=()):
        if ngens < 0:
            raise ValueError("the number of generators cannot be negative")
        rels = []
        for rel in relators:
            word = tuple(rel)
            for g in word:
                if not isinstance(g, int) or g == 0 or abs(g) > ngens:
                    raise ValueError(f"relator letter {g!r} out of range")
            word = _free_reduce(word)
            if word:
                rels.append(word)
        self._ngens = ngens
        self._relators = tuple(sorted(set(rels), key=lambda w: (len(w), w)))

    @property
    def ngens(self) -> int:
        return self._ngens

    @property
    def relators(self) -> tuple[tuple[int, ...], ...]:
        return self._relators

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupPresentation)
            and self._ngens == other._ngens
            and self._relators == other._relators
        )

    def __hash__(self) -> int:
        return hash((self._ngens, self._relators))

    def __repr__(self) -> str:
        return f"GroupPresentation(ngens={self._ngens}, relators={len(self._relators)})"

    def __str__(self) -> str:
        return export_presentation(self)

    def is_trivial_presentation(self) -> bool:
        """True when there are no generators left (hence the trivial group)."""
        return self._ngens == 0

    def simplify(self, budget: int = 10000) -> "GroupPresentation":
        return tietze_simplify(self, budget=budget)

    def abelianization(self) -> AbelianInvariants:
        return abelianization(self)


def _free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _cyclic_reduce(word: tuple[int, ...]) -> tuple[int, ...]:
    word = _free_reduce(word)
    while len(word) > 1 and word[0] == -word[-1]:
        word = word[1:-1]
    return word


def _inverse(word: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-g for g in reversed(word))


def _cyclic_key(word: tuple[int, ...]) -> tuple[int, ...]:
    """Least rotation over the word and its inverse; identifies equal relators."""
    if not word:
        return word
    candidates = []
    for w in (word, _inverse(word)):
        candidates.extend(w[i:] + w[:i] for i in range(len(w)))
    return min(candidates)


def fundamental_group(
    K: FacetComplex | CyclicComplex, *, simplify: bool = True, budget: int = 10000
) -> GroupPresentation:
    """Edge-path presentation of the fundamental group of a connected complex.

    The spanning tree is grown breadth-first from the smallest vertex, visiting
    neighbors in ascending order, so the presentation is deterministic.
    """
    K = as_facet_complex(K)
    if not K.facets:
        raise ValueError("the empty complex has no fundamental group")
    faces = chain_faces(K)
    edges = [tuple(e) for e in faces[1]] if len(faces) > 1 else []
    triangles = [tuple(t) for t in faces[2]] if len(faces) > 2 else []
    adj: dict[int, list[int]] = {v: [] for (v,) in faces[0]}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    root = min(adj)
    tree: set[tuple[int, int]] = set()
    seen = {root}
    queue = [root]
    while queue:
        u = queue.pop(0)
        for v in sorted(adj[u]):
            if v not in seen:
                seen.add(v)
                tree.add((u, v) if u < v else (v, u))
                queue.append(v)
    if len(seen) != len(adj):
        raise ValueError("the fundamental group needs a connected complex")
    gen_of = {
        e: i + 1 for i, e in enumerate(e for e in edges if e not in tree)
    }

    def letter(a: int, b: int) -> tuple[int, ...]:
        e = (a, b) if a < b else (b, a)
        g = gen_of.get(e)
        if g is None:
            return ()
        return (g,) if a < b else (-g,)

    relators = []
    for u, v, w in triangles:
        relators.append(letter(u, v) + letter(v, w) + letter(w, u))
    P = GroupPresentation(len(gen_of), relators)
    return tietze_simplify(P, budget=budget) if simplify else P


def tietze_simplify(P: GroupPresentation, budget: int = 10000) -> GroupPresentation:
    """Shrink a presentation: reductions, dedupe, generator elimination, cuts.

    Deterministic and budget-limited; the result presents the same group but is
    not claimed canonical or minimal.
    """
    ngens = P.ngens
    rels: list[tuple[int, ...]] = list(P.relators)
    steps = max(0, budget)
    while steps > 0:
        rels, dropped = _normalize(rels)
        steps -= dropped
        result = _eliminate_one(ngens, rels)
        if result is not None:
            ngens, rels = result
            steps -= 1
            continue
        cuts = _cut_once(rels)
        if cuts is not None:
            rels = cuts
            steps -= 1
            continue
        break
    rels, _ = _normalize(rels)
    return GroupPresentation(ngens, rels)


def _normalize(rels: list[tuple[int, ...]]) -> tuple[list[tuple[int, ...]], int]:
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    work = 0
    for rel in rels:
        red = _cyclic_reduce(rel)
        if red != rel:
            work += 1
        if not red:
            continue
        key = _cyclic_key(red)
        if key not in seen:
            seen[key] = red
    out = sorted(seen.values(), key=lambda w: (len(w), w))
    return out, work


def _eliminate_one(ngens: int, rels: list[tuple[int, ...]]):
    """Remove one generator occurring exactly once in some relator, if any."""
    for idx, rel in enumerate(rels):
        for pos, g in enumerate(rel):
            gen = abs(g)
            if sum(1 for h in rel if abs(h) == gen) != 1:
                continue
            # rotate the single occurrence to the end: p * g^e == 1
            rot = rel[pos + 1 :] + rel[:pos]
            replacement = _inverse(rot) if g > 0 else rot
            new_rels = []
            for j, other in enumerate(rels):
                if j == idx:
                    continue
                word: list[int] = []
                for h in other:
                    if h == gen:
                        word.extend(replacement)
                    elif h == -gen:
                        word.extend(_inverse(replacement))
                    else:
                        word.append(h)
                new_rels.append(_free_reduce(tuple(word)))
            renumbered = [
                tuple(h - (1 if h > gen else 0) if h > 0 else h + (1 if -h > gen else 0)
                      for h in rel2)
                for rel2 in new_rels
            ]
            return ngens - 1, renumbered
    return None


def _cut_once(rels: list[tuple[int, ...]]):
    """Cut one cyclic occurrence of a shorter relator inside a longer one."""
    for i, r in enumerate(rels):
        patterns = {r[k:] + r[:k] for k in range(len(r))}
        inv = _inverse(r)
        patterns.update(inv[k:] + inv[:k] for k in range(len(inv)))
        for j, s in enumerate(rels):
            if j == i or len(s) < len(r):
                continue
            if len(s) == len(r) and j < i:
                continue
            doubled = s + s
            for start in range(len(s)):
                window = doubled[start : start + len(r)]
                if window in patterns:
                    rest = doubled[start + len(r) : start + len(s)]
                    out = list(rels)
                    out[j] = _free_reduce(rest)
                    return out
    return None


def abelianization(P: GroupPresentation) -> AbelianInvariants:
    """Exponent-sum matrix reduced by Smith normal form."""
    rows: dict[int, dict[int, int]] = {}
    for i, rel in enumerate(P.relators):
        row: dict[int, int] = {}
        for g in rel:
            col = abs(g) - 1
            row[col] = row.get(col, 0) + (1 if g > 0 else -1)
        row = {c: v for c, v in row.items() if v}
        if row:
            rows[i] = row
    diag = invariant_factors(rows)
    return AbelianInvariants(P.ngens - len(diag), tuple(t for t in diag if t > 1))


def export_presentation(P: GroupPresentation) -> str:
    """Text form ``F := FreeGroup(n); G := F / [ w1, w2, ... ];``"""
    words = ", ".join(_word_text(rel) for rel in P.relators)
    inner = f" {words} " if words else " "
    return f"F := FreeGroup({P.ngens}); G := F / [{inner}];"


def _word_text(rel: tuple[int, ...]) -> str:
    runs: list[tuple[int, int]] = []
    for g in rel:
        gen, e = abs(g), (1 if g > 0 else -1)
        if runs and runs[-1][0] == gen and (runs[-1][1] > 0) == (e > 0):
            runs[-1] = (gen, runs[-1][1] + e)
        else:
            runs.append((gen, e))
    parts = [f"F.{g}" if e == 1 else f"F.{g}^{e}" for g, e in runs]
    return "*".join(parts)


def parse_presentation(text: str) -> GroupPresentation:
    """Parse the ``export_presentation`` format back into a presentation."""
    import re

    m = re.search(r"FreeGroup\(\s*(\d+)\s*\)", text)
    if not m:
        raise ValueError("missing FreeGroup(n)")
    ngens = int(m.group(1))
    lb = text.find("[", m.end())
    rb = text.rfind("]")
    if lb < 0 or rb < lb:
        raise ValueError("missing relator list [...]")
    body = text[lb + 1 : rb].strip()
    relators = []
    if body:
        for chunk in body.split(","):
            word: list[int] = []
            for term in chunk.strip().split("*"):
                tm = re.fullmatch(r"F\.(\d+)(?:\^(-?\d+))?", term.strip())
                if not tm:
                    raise ValueError(f"bad term {term.strip()!r}")
                g = int(tm.group(1))
                e = int(tm.group(2)) if tm.group(2) else 1
                if g < 1 or g > ngens:
                    raise ValueError(f"generator F.{g} out of range")
                word.extend([g if e > 0 else -g] * abs(e))
            relators.append(tuple(word))
    return GroupPresentation(ngens, relators)
