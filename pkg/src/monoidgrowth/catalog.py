"""Named presentations for the CLI and tests.

Catalog names: A<l>, B<l>, D<l>, E6, E7, E8, F4, G2, H3, H4, I2:<p> for
Artin monoids, plus Free:<f> (free monoid) and FreeGroup:<f>.
"""

from __future__ import annotations

from monoidgrowth.presentation import (
    INFINITY,
    CoxeterMatrix,
    Presentation,
    artin_presentation,
    free_group_presentation,
    free_monoid_presentation,
)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class CatalogError(ValueError):
    pass


def _names(l: int) -> tuple[str, ...]:
    if not 1 <= l <= len(_LETTERS):
        raise CatalogError(f"rank {l} outside 1..{len(_LETTERS)}")
    return tuple(_LETTERS[:l])


def _path_matrix(l: int, labels: dict[tuple[int, int], int]) -> CoxeterMatrix:
    rows = [[2] * l for _ in range(l)]
    for i in range(l):
        rows[i][i] = 1
    for (i, j), m in labels.items():
        rows[i][j] = m
        rows[j][i] = m
    return CoxeterMatrix.from_rows(rows)


def coxeter_matrix_for(name: str) -> CoxeterMatrix:
    """Coxeter matrix of a named indecomposable finite type."""
    name = name.strip()
    if name.startswith("I2:"):
        p = int(name[3:])
        if p < 3:
            raise CatalogError("I2:<p> needs p >= 3")
        return _path_matrix(2, {(0, 1): p})
    family, rest = name[0], name[1:]
    if family in "ABDEFGH" and rest.isdigit():
        l = int(rest)
        if family == "A" and l >= 1:
            return _path_matrix(l, {(i, i + 1): 3 for i in range(l - 1)})
        if family == "B" and l >= 2:
            labels = {(i, i + 1): 3 for i in range(l - 2)}
            labels[(l - 2, l - 1)] = 4
            return _path_matrix(l, labels)
        if family == "D" and l >= 4:
            labels = {(i, i + 1): 3 for i in range(l - 2)}
            labels[(l - 3, l - 1)] = 3
            return _path_matrix(l, labels)
        if family == "E" and l in (6, 7, 8):
            labels = {(i, i + 1): 3 for i in range(l - 2)}
            labels[(2, l - 1)] = 3
            return _path_matrix(l, labels)
        if family == "F" and l == 4:
            return _path_matrix(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3})
        if family == "G" and l == 2:
            return _path_matrix(2, {(0, 1): 6})
        if family == "H" and l in (3, 4):
            labels = {(i, i + 1): 3 for i in range(1, l - 1)}
            labels[(0, 1)] = 5
            return _path_matrix(l, labels)
    raise CatalogError(f"unknown Coxeter type {name!r}")


def catalog_presentation(name: str) -> Presentation:
    name = name.strip()
    if name.startswith("Free:"):
        return free_monoid_presentation(_names(int(name[5:])))
    if name.startswith("FreeGroup:"):
        return free_group_presentation(int(name[10:]))
    matrix = coxeter_matrix_for(name)
    return artin_presentation(matrix, _names(matrix.size))


__all__ = ["CatalogError", "catalog_presentation", "coxeter_matrix_for", "INFINITY"]
