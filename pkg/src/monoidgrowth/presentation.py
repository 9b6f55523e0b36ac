"""Monoid presentations: homogeneous relations, Artin monoids from a
Coxeter matrix, free monoids, and free groups.

A presentation is immutable once constructed.  Generators are ordered and
every canonical form downstream (lexicographic minima, element ids) uses
that order.  For free groups the generators are the symmetric set: they
must come in consecutive (x, x^-1) pairs, so index 2i and 2i+1 are
mutually inverse.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

#: Off-diagonal Coxeter entry encoding m(a, b) = infinity, both in memory
#: and in the presentation file format.
INFINITY = 0

KINDS = ("homogeneous-monoid", "artin", "free-monoid", "free-group")

Word = tuple[int, ...]


class PresentationError(ValueError):
    """Raised when a presentation or Coxeter matrix is malformed."""


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric integer matrix with 1 on the diagonal; off-diagonal
    entries are >= 2 or INFINITY (encoded as 0)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if n == 0:
            raise PresentationError("Coxeter matrix must be nonempty")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise PresentationError("Coxeter matrix must be square")
            if row[i] != 1:
                raise PresentationError(f"diagonal entry m({i},{i}) must be 1")
            for j, m in enumerate(row):
                if i == j:
                    continue
                if m != INFINITY and m < 2:
                    raise PresentationError(
                        f"off-diagonal entry m({i},{j})={m} must be >= 2 or infinity"
                    )
                if m != self.entries[j][i]:
                    raise PresentationError("Coxeter matrix must be symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    @staticmethod
    def from_rows(rows: list[list[int]]) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class Presentation:
    """A monoid presentation over an ordered generator list.

    Relations are pairs of equal-length words, each word a tuple of
    generator indices.  Free kinds carry no relations; the artin kind
    additionally records its Coxeter matrix.
    """

    kind: str
    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...] = ()
    coxeter: CoxeterMatrix | None = field(default=None)

    def __post_init__(self) -> None:
        report = validate_presentation(self)
        if not report.passed:
            raise PresentationError("; ".join(report.failures))

    @property
    def rank(self) -> int:
        """Number of generators (size of the edge-label alphabet)."""
        return len(self.generators)

    @property
    def free_rank(self) -> int:
        """Number of base generators: rank for free monoids, rank/2 for
        free groups (the generator list is the symmetric set)."""
        if self.kind == "free-group":
            return len(self.generators) // 2
        return len(self.generators)

    def inverse_generator(self, g: int) -> int:
        if self.kind != "free-group":
            raise PresentationError("only free groups have inverse generators")
        return g ^ 1

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def word_from_names(self, names: list[str] | str) -> Word:
        """Parse a word given as a list of generator names, or as a plain
        string when every generator name is a single character."""
        if isinstance(names, str):
            names = list(names)
        return tuple(self.generator_index(s) for s in names)

    def word_to_names(self, word: Word) -> str:
        return "".join(self.generators[g] for g in word)

    def to_dict(self) -> dict:
        data: dict = {"kind": self.kind, "generators": list(self.generators)}
        if self.kind == "artin":
            assert self.coxeter is not None
            data["coxeter"] = [list(row) for row in self.coxeter.entries]
        else:
            data["relations"] = [
                [[self.generators[g] for g in side] for side in rel]
                for rel in self.relations
            ]
        return data

    def canonical_json(self) -> str:
        """Canonical serialization: sorted keys, no whitespace variance.
        Feeds the cache digest."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _alternating_word(first: int, second: int, length: int) -> Word:
    """<ab>^m: alternating word a b a b ... of the given length."""
    return tuple(first if i % 2 == 0 else second for i in range(length))


def artin_presentation(matrix: CoxeterMatrix, names: tuple[str, ...] | list[str]) -> Presentation:
    """Artin monoid presentation: one braid relation <ab>^m = <ba>^m per
    unordered generator pair with finite Coxeter entry m.

    Relations come out in a fixed canonical order (pairs sorted by
    generator index), so equal inputs give identical presentations.
    """
    names = tuple(names)
    if len(names) != matrix.size:
        raise PresentationError(
            f"{len(names)} generator names for a Coxeter matrix of size {matrix.size}"
        )
    relations = []
    for i in range(matrix.size):
        for j in range(i + 1, matrix.size):
            m = matrix.entry(i, j)
            if m == INFINITY:
                continue
            relations.append((_alternating_word(i, j, m), _alternating_word(j, i, m)))
    return Presentation("artin", names, tuple(relations), matrix)


def free_monoid_presentation(names: tuple[str, ...] | list[str]) -> Presentation:
    return Presentation("free-monoid", tuple(names))


_FG_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def free_group_presentation(free_rank: int) -> Presentation:
    """Free group on `free_rank` letters; the generator system is the
    symmetric set x1, x1^-1, ..., with the inverse named by the uppercase
    letter."""
    if not 1 <= free_rank <= len(_FG_LETTERS):
        raise PresentationError(f"free rank must be in 1..{len(_FG_LETTERS)}")
    names: list[str] = []
    for i in range(free_rank):
        names.append(_FG_LETTERS[i])
        names.append(_FG_LETTERS[i].upper())
    return Presentation("free-group", tuple(names))


def homogeneous_presentation(
    names: tuple[str, ...] | list[str],
    relations: list[tuple[list[str] | str, list[str] | str]],
) -> Presentation:
    """General homogeneous presentation with relations given by generator
    names (strings allowed when all names are single characters)."""
    names = tuple(names)
    index = {s: i for i, s in enumerate(names)}

    def parse(side: list[str] | str) -> Word:
        letters = list(side) if isinstance(side, str) else side
        missing = [s for s in letters if s not in index]
        if missing:
            raise PresentationError(f"unknown generator {missing[0]!r} in relation")
        return tuple(index[s] for s in letters)

    rels = tuple((parse(a), parse(b)) for a, b in relations)
    return Presentation("homogeneous-monoid", names, rels)


def validate_presentation(p: Presentation) -> ValidationReport:
    """Check the structural invariants; a passing report means the
    enumeration modules accept the presentation."""
    failures: list[str] = []
    if p.kind not in KINDS:
        failures.append(f"unknown kind {p.kind!r}")
    if not p.generators:
        failures.append("generator list is empty")
    if len(set(p.generators)) != len(p.generators):
        failures.append("duplicate generator names")
    for k, (lhs, rhs) in enumerate(p.relations):
        if len(lhs) != len(rhs) or not lhs:
            failures.append(
                f"relation {k} is not homogeneous: sides of length {len(lhs)} and {len(rhs)}"
            )
        for letter in lhs + rhs:
            if not 0 <= letter < len(p.generators):
                failures.append(f"relation {k} uses unknown generator index {letter}")
                break
    if p.kind in ("free-monoid", "free-group") and p.relations:
        failures.append(f"{p.kind} presentation must have no relations")
    if p.kind == "free-group" and len(p.generators) % 2 != 0:
        failures.append("free-group generators must come in (x, x^-1) pairs")
    if p.kind == "artin":
        if p.coxeter is None:
            failures.append("artin presentation requires a Coxeter matrix")
        elif p.coxeter.size != len(p.generators):
            failures.append("Coxeter matrix size does not match generator count")
        else:
            expected = []
            for i in range(p.coxeter.size):
                for j in range(i + 1, p.coxeter.size):
                    m = p.coxeter.entry(i, j)
                    if m == INFINITY:
                        continue
                    expected.append((_alternating_word(i, j, m), _alternating_word(j, i, m)))
            if tuple(expected) != p.relations:
                failures.append("artin relations do not match the Coxeter matrix")
    elif p.coxeter is not None:
        failures.append("only artin presentations carry a Coxeter matrix")
    return ValidationReport(tuple(failures))


def presentation_to_json(p: Presentation) -> str:
    return json.dumps(p.to_dict(), sort_keys=True, indent=2) + "\n"


def presentation_from_dict(data: dict) -> Presentation:
    kind = data.get("kind")
    generators = tuple(data.get("generators", ()))
    if kind == "artin":
        matrix = CoxeterMatrix.from_rows(data["coxeter"])
        return artin_presentation(matrix, generators)
    index = {s: i for i, s in enumerate(generators)}
    relations = []
    for rel in data.get("relations", []):
        if len(rel) != 2:
            raise PresentationError("each relation must have exactly two sides")
        sides = []
        for side in rel:
            try:
                sides.append(tuple(index[s] for s in side))
            except KeyError as exc:
                raise PresentationError(f"unknown generator {exc.args[0]!r}") from None
        relations.append((sides[0], sides[1]))
    return Presentation(kind, generators, tuple(relations))


def load_presentation(path: str) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return presentation_from_dict(json.load(fh))
