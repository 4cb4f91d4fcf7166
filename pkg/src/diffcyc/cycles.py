"""Difference cycles on Z_n and the cyclic complexes they span.

A difference cycle ``(a_0:a_1:...:a_d)`` with ``a_i >= 1`` and ``n = a_0 + ... + a_d``
encodes the orbit of the d-simplex ``<0, a_0, a_0+a_1, ..., a_0+...+a_{d-1}>`` under
the cyclic shift ``v -> v + 1 (mod n)``.  Reading the gaps between consecutive
vertices of any facet of the orbit (cyclically, around Z_n) recovers the tuple up to
rotation, so a cycle is stored in canonical form: the lexicographically smallest
rotation.  Distinct canonical cycles therefore expand to disjoint facet orbits.

A set of difference cycles with a common modulus is a cyclic complex: a pure
simplicial complex admitting the transitive cyclic automorphism group generated by
the shift.  Multiplying all vertex labels by a unit of Z_n maps difference cycles to
difference cycles and induces the combinatorial equivalences that preserve the
cyclic symmetry.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Iterator


class InvalidCycleError(ValueError):
    """Raised for data that does not define a difference cycle or cyclic complex."""


class InvalidMultiplierError(ValueError):
    """Raised when a multiplier is not a unit of Z_n."""


class ParseError(ValueError):
    """Malformed cycle or complex text; ``position`` indexes the offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def canonicalize(parts: Iterable[int]) -> tuple[int, ...]:
    """Return the lexicographically smallest rotation of a gap tuple."""
    t = tuple(parts)
    if not t:
        raise InvalidCycleError("empty gap tuple")
    return min(t[i:] + t[:i] for i in range(len(t)))


class DifferenceCycle:
    """A difference cycle, kept in canonical (lexicographically least) rotation."""

    __slots__ = ("_parts",)

    def __init__(self, *parts):
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        if len(parts) < 2:
            raise InvalidCycleError("a difference cycle needs at least two entries")
        for a in parts:
            if not isinstance(a, int) or isinstance(a, bool) or a < 1:
                raise InvalidCycleError(f"entries must be integers >= 1, got {a!r}")
        self._parts = canonicalize(parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def n(self) -> int:
        """Modulus: the number of vertices the orbit lives on."""
        return sum(self._parts)

    @property
    def dim(self) -> int:
        return len(self._parts) - 1

    @property
    def period(self) -> int:
        """Smallest k with ``a_i == a_{i+k}`` cyclically; divides ``dim + 1``."""
        p = self._parts
        m = len(p)
        for k in range(1, m + 1):
            if m % k == 0 and p == p[k:] + p[:k]:
                return k
        raise AssertionError("unreachable: the full rotation always fixes the tuple")

    def orbit_length(self) -> int:
        """Number of distinct facets in the orbit: ``n * period / (dim + 1)``."""
        return sum(self._parts[: self.period])

    def generator_simplex(self) -> tuple[int, ...]:
        """The facet ``<0, a_0, a_0+a_1, ...>`` whose shifts make up the orbit."""
        verts = [0]
        for a in self._parts[:-1]:
            verts.append(verts[-1] + a)
        return tuple(verts)

    def facets(self) -> tuple[tuple[int, ...], ...]:
        """All facets of the orbit, as sorted vertex tuples in sorted order."""
        n = self.n
        gen = self.generator_simplex()
        orbit = {tuple(sorted((v + t) % n for v in gen)) for t in range(n)}
        return tuple(sorted(orbit))

    def multiply(self, lam: int) -> "DifferenceCycle":
        """Image cycle under ``v -> lam * v (mod n)`` for a unit ``lam``."""
        n = self.n
        if gcd(lam % n, n) != 1:
            raise InvalidMultiplierError(f"{lam} is not a unit modulo {n}")
        img = sorted(v * lam % n for v in self.generator_simplex())
        gaps = [b - a for a, b in zip(img, img[1:])]
        gaps.append(n - img[-1] + img[0])
        return DifferenceCycle(*gaps)

    def __eq__(self, other) -> bool:
        return isinstance(other, DifferenceCycle) and self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __lt__(self, other: "DifferenceCycle") -> bool:
        return self._parts < other._parts

    def __le__(self, other: "DifferenceCycle") -> bool:
        return self._parts <= other._parts

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __str__(self) -> str:
        return "(" + ":".join(str(a) for a in self._parts) + ")"

    def __repr__(self) -> str:
        return "DifferenceCycle(" + ", ".join(str(a) for a in self._parts) + ")"


class CyclicComplex:
    """A finite set of difference cycles with a common modulus n.

    Cycles are stored canonically and sorted, so equal complexes compare and format
    identically.  An empty complex needs an explicit ``n``.
    """

    __slots__ = ("_n", "_cycles")

    def __init__(self, cycles: Iterable = (), n: int | None = None):
        cs = sorted(
            {c if isinstance(c, DifferenceCycle) else DifferenceCycle(c) for c in cycles}
        )
        if cs:
            mods = {c.n for c in cs}
            if len(mods) != 1:
                raise InvalidCycleError(f"cycles have differing moduli {sorted(mods)}")
            mod = mods.pop()
            if n is not None and n != mod:
                raise InvalidCycleError(f"cycles sum to {mod}, not the stated n={n}")
            n = mod
            if len({c.dim for c in cs}) != 1:
                raise InvalidCycleError("cycles have differing dimensions")
        elif n is None:
            raise InvalidCycleError("an empty complex needs an explicit n")
        elif n < 1:
            raise InvalidCycleError(f"n must be positive, got {n}")
        self._n = n
        self._cycles = tuple(cs)

    @property
    def n(self) -> int:
        return self._n

    @property
    def cycles(self) -> tuple[DifferenceCycle, ...]:
        return self._cycles

    @property
    def dim(self) -> int:
        return self._cycles[0].dim if self._cycles else -1

    def expand(self) -> "FacetComplex":
        """The underlying simplicial complex: the union of all facet orbits."""
        faces: set[tuple[int, ...]] = set()
        for c in self._cycles:
            faces.update(c.facets())
        return FacetComplex(self._n, faces)

    def multiply(self, lam: int) -> "CyclicComplex":
        """Image complex under ``v -> lam * v (mod n)`` for a unit ``lam``."""
        if gcd(lam % self._n, self._n) != 1:
            raise InvalidMultiplierError(f"{lam} is not a unit modulo {self._n}")
        return CyclicComplex((c.multiply(lam) for c in self._cycles), n=self._n)

    def multipliers(self) -> tuple[int, ...]:
        """Units lam of Z_n with ``lam * C == C``; a subgroup of Z_n^*."""
        return tuple(
            lam
            for lam in range(1, self._n)
            if gcd(lam, self._n) == 1 and self.multiply(lam) == self
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclicComplex)
            and self._n == other._n
            and self._cycles == other._cycles
        )

    def __hash__(self) -> int:
        return hash((self._n, self._cycles))

    def __lt__(self, other: "CyclicComplex") -> bool:
        return (self._n, self._cycles) < (other._n, other._cycles)

    def __iter__(self) -> Iterator[DifferenceCycle]:
        return iter(self._cycles)

    def __len__(self) -> int:
        return len(self._cycles)

    def __contains__(self, cycle) -> bool:
        if not isinstance(cycle, DifferenceCycle):
            cycle = DifferenceCycle(cycle)
        return cycle in set(self._cycles)

    def __str__(self) -> str:
        return "{" + ",".join(str(c) for c in self._cycles) + "}"

    def __repr__(self) -> str:
        return f"CyclicComplex.parse({str(self)!r})" if self._cycles else (
            f"CyclicComplex((), n={self._n})"
        )

    @staticmethod
    def parse(text: str) -> "CyclicComplex":
        return parse_complex(text)


class FacetComplex:
    """Maximal faces of a finite simplicial complex on vertex set {0, ..., n-1}.

    Expansions of cyclic complexes are pure; induced subcomplexes and collapse
    residues may mix dimensions, in which case only inclusion-maximal faces are
    kept.  Faces are sorted vertex tuples and the facet list is sorted, so equal
    complexes compare identically.
    """

    __slots__ = ("_n", "_facets", "_facet_set")

    def __init__(self, n: int, faces: Iterable[Iterable[int]] = ()):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        normalized: set[tuple[int, ...]] = set()
        for face in faces:
            f = tuple(sorted(face))
            if not f:
                raise ValueError("faces must be nonempty")
            if len(set(f)) != len(f):
                raise ValueError(f"face {f} has repeated vertices")
            if f[0] < 0 or f[-1] >= n:
                raise ValueError(f"face {f} has vertices outside 0..{n - 1}")
            normalized.add(f)
        self._n = n
        self._facets = tuple(sorted(_maximal_faces(normalized)))
        self._facet_set = frozenset(self._facets)

    @property
    def n(self) -> int:
        return self._n

    @property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        return self._facets

    @property
    def facet_set(self) -> frozenset:
        return self._facet_set

    @property
    def dim(self) -> int:
        return max((len(f) for f in self._facets), default=0) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) <= 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self._facets for v in f}))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FacetComplex)
            and self._n == other._n
            and self._facets == other._facets
        )

    def __hash__(self) -> int:
        return hash((self._n, self._facets))

    def __len__(self) -> int:
        return len(self._facets)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self._facets)

    def __contains__(self, face: Iterable[int]) -> bool:
        return tuple(sorted(face)) in self._facet_set

    def __repr__(self) -> str:
        return f"FacetComplex(n={self._n}, facets={len(self._facets)})"


def _maximal_faces(faces: set[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Drop faces strictly contained in another; equal-size faces never nest."""
    if len({len(f) for f in faces}) <= 1:
        return list(faces)
    by_size: dict[int, list[frozenset]] = {}
    for f in faces:
        by_size.setdefault(len(f), []).append(frozenset(f))
    sizes = sorted(by_size, reverse=True)
    kept: list[tuple[int, ...]] = []
    larger: list[frozenset] = []
    for s in sizes:
        for fs in by_size[s]:
            if not any(fs < g for g in larger):
                kept.append(tuple(sorted(fs)))
        larger.extend(by_size[s])
    return kept


def expand(complex_: CyclicComplex) -> FacetComplex:
    """Expand a cyclic complex to its underlying facet complex."""
    return complex_.expand()


def as_facet_complex(obj) -> FacetComplex:
    """Coerce a CyclicComplex (by expanding) or FacetComplex to a FacetComplex."""
    if isinstance(obj, FacetComplex):
        return obj
    if isinstance(obj, CyclicComplex):
        return obj.expand()
    raise TypeError(f"expected a complex, got {type(obj).__name__}")


def multiply(complex_: CyclicComplex, lam: int) -> CyclicComplex:
    """Relabel a cyclic complex by the unit ``lam`` of Z_n."""
    return complex_.multiply(lam)


def multipliers(complex_: CyclicComplex) -> tuple[int, ...]:
    """The subgroup of units fixing the complex."""
    return complex_.multipliers()


_IGNORED = frozenset(" \t\r\n!\\")


class _Scanner:
    """Character scanner for cycle/complex text.

    Whitespace is skipped everywhere; so are "!" and "\\", which appear as spacing
    artifacts in typeset sources of cycle tables.
    """

    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def _skip(self) -> None:
        while self.i < len(self.text) and self.text[self.i] in _IGNORED:
            self.i += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str) -> None:
        got = self.peek()
        if got != ch:
            shown = f"{got!r}" if got else "end of input"
            raise ParseError(f"expected {ch!r}, got {shown}", self.i)
        self.i += 1

    def integer(self) -> int:
        if not self.peek().isdigit():
            shown = f"{self.peek()!r}" if self.peek() else "end of input"
            raise ParseError(f"expected an integer, got {shown}", self.i)
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        value = int(self.text[start : self.i])
        if value < 1:
            raise ParseError("entries must be >= 1", start)
        return value

    def expect_end(self) -> None:
        if self.peek():
            raise ParseError(f"trailing input {self.peek()!r}", self.i)


def _scan_cycle(sc: _Scanner) -> DifferenceCycle:
    sc.expect("(")
    parts = [sc.integer()]
    sc.expect(":")
    parts.append(sc.integer())
    while sc.peek() == ":":
        sc.expect(":")
        parts.append(sc.integer())
    sc.expect(")")
    return DifferenceCycle(*parts)


def parse_cycle(text: str) -> DifferenceCycle:
    """Parse ``(a_0:a_1:...:a_d)``; raises ParseError with a position on bad text."""
    sc = _Scanner(text)
    cycle = _scan_cycle(sc)
    sc.expect_end()
    return cycle


def parse_complex(text: str) -> CyclicComplex:
    """Parse ``{(..),(..),...}``; all cycles must share one modulus."""
    sc = _Scanner(text)
    sc.expect("{")
    cycles = [_scan_cycle(sc)]
    while sc.peek() == ",":
        sc.expect(",")
        cycles.append(_scan_cycle(sc))
    sc.expect("}")
    sc.expect_end()
    return CyclicComplex(cycles)


def parse(text: str) -> CyclicComplex | DifferenceCycle:
    """Parse either a complex (leading ``{``) or a single cycle (leading ``(``)."""
    sc = _Scanner(text)
    first = sc.peek()
    if first == "{":
        return parse_complex(text)
    if first == "(":
        return parse_cycle(text)
    raise ParseError(f"expected '{{' or '(', got {first!r}" if first else
                     "expected '{' or '(', got end of input", sc.i)
