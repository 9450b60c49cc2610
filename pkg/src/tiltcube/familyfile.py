"""Plain-text family files.

    # optional comments
    n=4
    {}
    1,2
    1,3

The header gives the ground-set size; each further line is one set with
ascending comma-separated elements, ``{}`` being the empty set.
"""
from __future__ import annotations

from .core import SetFamily, from_elements, to_elements


class FamilyFileError(ValueError):
    pass


def format_family(family: SetFamily) -> str:
    lines = [f"n={family.n}"]
    for w in family.members:
        elems = to_elements(w)
        lines.append(",".join(map(str, elems)) if elems else "{}")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SetFamily:
    n = None
    sets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise FamilyFileError(f"line {lineno}: expected header 'n=<N>', got {line!r}")
            try:
                n = int(line[2:])
            except ValueError:
                raise FamilyFileError(f"line {lineno}: bad ground-set size {line[2:]!r}") from None
            continue
        if line == "{}":
            sets.append(0)
            continue
        try:
            elems = [int(tok) for tok in line.split(",")]
        except ValueError:
            raise FamilyFileError(f"line {lineno}: bad set {line!r}") from None
        if any(e < 1 or e > n for e in elems):
            raise FamilyFileError(f"line {lineno}: element outside [1, {n}] in {line!r}")
        sets.append(from_elements(elems))
    if n is None:
        raise FamilyFileError("missing 'n=<N>' header")
    try:
        return SetFamily(n, sets)
    except ValueError as exc:
        raise FamilyFileError(str(exc)) from None


def read_family(path: str) -> SetFamily:
    with open(path) as fh:
        return parse_family(fh.read())


def write_family(family: SetFamily, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_family(family))
