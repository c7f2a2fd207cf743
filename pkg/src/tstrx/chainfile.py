"""Line-oriented chain files, object literals and T-set literals.

    quiver A2:R
    window 1 2
    T 1 = 0,1
    T 2 = full          # or: empty, or dimvecs joined by ';'

Indecomposables are addressed by dimension vector.  ``#`` starts a comment.
"""
from __future__ import annotations

import re

from tstrx.derived_window import StalkSum
from tstrx.errors import InputParseError
from tstrx.quiver_rep import Ind, Quiver, enumerate_indecomposables, parse_quiver, sort_inds
from tstrx.tstructure import TorsionChain, Window

_T_LINE = re.compile(r"^T\s+(-?\d+)\s*=\s*(.*)$")


def parse_ind(q: Quiver, text: str) -> Ind:
    text = text.strip()
    try:
        dv = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputParseError(f"bad dimension vector {text!r}") from None
    for ind in enumerate_indecomposables(q):
        if ind.dimvec == dv:
            return ind
    raise InputParseError(f"{text!r} is not the dimension vector of an indecomposable of {q.spec}")


def parse_tset(q: Quiver, text: str) -> frozenset:
    """``S=0,1;1,1`` or ``0,1;1,1``; ``S=`` alone is the empty set."""
    text = text.strip()
    if text.startswith("S="):
        text = text[2:]
    if not text.strip():
        return frozenset()
    return frozenset(parse_ind(q, part) for part in text.split(";"))


def parse_object(q: Quiver, text: str) -> StalkSum:
    """``deg:dimvec(+deg:dimvec)*``; ``0`` is the zero object."""
    text = text.strip()
    if text == "0":
        return StalkSum()
    terms = []
    for part in text.split("+"):
        deg, sep, dv = part.partition(":")
        if not sep:
            raise InputParseError(f"bad stalk {part!r}, expected deg:dimvec")
        try:
            j = int(deg)
        except ValueError:
            raise InputParseError(f"bad degree {deg!r}") from None
        terms.append((j, parse_ind(q, dv)))
    return StalkSum(tuple(terms))


def parse_chain_file(text: str, field: int | None = None) -> TorsionChain:
    q = None
    window = None
    classes: dict[int, frozenset] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "quiver":
            if q is not None:
                raise InputParseError(f"line {lineno}: duplicate quiver line")
            q = parse_quiver(rest.strip())
            if field is not None:
                q = q.with_field(field)
        elif head == "window":
            if q is None or window is not None:
                raise InputParseError(f"line {lineno}: window must follow a single quiver line")
            parts = rest.split()
            if len(parts) != 2:
                raise InputParseError(f"line {lineno}: expected 'window <lo> <hi>'")
            try:
                window = Window(int(parts[0]), int(parts[1]))
            except ValueError as exc:
                raise InputParseError(f"line {lineno}: {exc}") from None
        else:
            m = _T_LINE.match(line)
            if not m or window is None:
                raise InputParseError(f"line {lineno}: unexpected {line!r}")
            j, body = int(m.group(1)), m.group(2).strip()
            if not window.lo <= j <= window.hi:
                raise InputParseError(f"line {lineno}: degree {j} is outside the window")
            if j in classes:
                raise InputParseError(f"line {lineno}: degree {j} given twice")
            if body == "full":
                classes[j] = frozenset(enumerate_indecomposables(q))
            elif body == "empty":
                classes[j] = frozenset()
            else:
                classes[j] = frozenset(parse_ind(q, part) for part in body.split(";"))
    if q is None or window is None:
        raise InputParseError("chain file needs a quiver line and a window line")
    missing = [j for j in window.degrees() if j not in classes]
    if missing:
        raise InputParseError(f"no class given for degree {missing[0]}")
    return TorsionChain(q, window, tuple(classes[j] for j in window.degrees()))


def render_chain_file(chain: TorsionChain) -> str:
    q = chain.quiver
    lines = [f"quiver {q.spec}", f"window {chain.window.lo} {chain.window.hi}"]
    everything = chain.everything
    for j in chain.window.degrees():
        c = chain.at(j)
        if c == everything:
            body = "full"
        elif not c:
            body = "empty"
        else:
            body = ";".join(M.label for M in sort_inds(c))
        lines.append(f"T {j} = {body}")
    return "\n".join(lines) + "\n"
