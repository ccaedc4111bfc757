"""Combinatorial maps for knot projections on the sphere.

A projection with ``n`` crossings is stored as a planar-diagram style
neighbour table: half-edge ``h = 4*c + i`` is leg ``i`` of crossing ``c``,
legs are numbered counterclockwise, and a strand passes straight through a
crossing from leg ``i`` to leg ``i + 2``.  ``nbr[h]`` is the half-edge at the
other end of the edge leaving ``h``.  The crossingless circle is ``()``.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

Nbr = tuple[int, ...]

CIRCLE: Nbr = ()
# One crossing, two monogons.
FIGURE_EIGHT_CURVE: Nbr = (1, 0, 3, 2)


def opposite(h: int) -> int:
    return h ^ 2


def ccw_next(h: int) -> int:
    return (h & ~3) | ((h + 1) & 3)


def ccw_prev(h: int) -> int:
    return (h & ~3) | ((h - 1) & 3)


def crossing_count(nbr: Sequence[int]) -> int:
    return len(nbr) // 4


def walk(nbr: Sequence[int], start: int) -> list[int]:
    """Half-edges departed from while following the strand out of ``start``."""
    out = [start]
    h = opposite(nbr[start])
    while h != start:
        out.append(h)
        h = opposite(nbr[h])
    return out


def component_count(nbr: Sequence[int]) -> int:
    if not nbr:
        return 1
    seen = [False] * len(nbr)
    count = 0
    for h in range(len(nbr)):
        if seen[h]:
            continue
        count += 1
        for g in walk(nbr, h):
            seen[g] = True
            seen[nbr[g]] = True
    return count


def faces(nbr: Sequence[int]) -> list[list[int]]:
    """Face boundary walks as lists of departing half-edges.

    Leaving ``h`` we arrive at ``nbr[h]`` and turn to ``ccw_next(nbr[h])``;
    the corner used at that crossing is corner ``nbr[h] % 4`` (between legs
    ``i`` and ``i + 1``).
    """
    seen = [False] * len(nbr)
    out = []
    for h in range(len(nbr)):
        if seen[h]:
            continue
        face = []
        g = h
        while not seen[g]:
            seen[g] = True
            face.append(g)
            g = ccw_next(nbr[g])
        out.append(face)
    return out


def face_count(nbr: Sequence[int]) -> int:
    return 2 if not nbr else len(faces(nbr))


def is_spherical(nbr: Sequence[int]) -> bool:
    return face_count(nbr) == crossing_count(nbr) + 2


# --- signed Gauss codes ---------------------------------------------------
#
# A flat sign of +1 means the second pass through the crossing goes from the
# right of the first pass to its left.


def from_signed_code(code: Sequence[int], signs: dict[int, int]) -> Nbr:
    if not code:
        return CIRCLE
    index: dict[int, int] = {}
    for lab in code:
        index.setdefault(lab, len(index))
    seen: set[int] = set()
    entry, exit_ = [], []
    for lab in code:
        c = index[lab]
        if lab not in seen:
            seen.add(lab)
            i = 0
        else:
            i = 1 if signs[lab] > 0 else 3
        entry.append(4 * c + i)
        exit_.append(4 * c + (i + 2) % 4)
    nbr = [0] * (4 * len(index))
    m = len(code)
    for t in range(m):
        a, b = exit_[t], entry[(t + 1) % m]
        nbr[a] = b
        nbr[b] = a
    return tuple(nbr)


def signed_code(nbr: Sequence[int], start: int = 0, mirror: bool = False
                ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Signed Gauss code read along the strand leaving half-edge ``start``.

    Labels are 1, 2, ... in order of first appearance; the second tuple gives
    the flat sign of each label.
    """
    if not nbr:
        return (), ()
    label: dict[int, int] = {}
    first_entry: dict[int, int] = {}
    code = []
    signs: list[int] = []
    for h in walk(nbr, start):
        arrive = nbr[h]
        c = arrive >> 2
        if c not in label:
            label[c] = len(label) + 1
            first_entry[c] = arrive & 3
            signs.append(0)
        else:
            d = ((arrive & 3) - first_entry[c]) % 4
            s = 1 if d == 1 else -1
            signs[label[c] - 1] = -s if mirror else s
        code.append(label[c])
    return tuple(code), tuple(signs)


def canonical_form(nbr: Sequence[int]) -> tuple:
    """Minimal signed code over start dart, direction and sphere reflection."""
    if not nbr:
        return ()
    best = None
    for h in range(len(nbr)):
        for mirror in (False, True):
            code, signs = signed_code(nbr, h, mirror)
            key = code + signs
            if best is None or key < best:
                best = key
    return best


def relabel(nbr: Sequence[int], order: Sequence[int]) -> Nbr:
    """Renumber crossings so that old crossing ``order[k]`` becomes ``k``."""
    new_of = {old: k for k, old in enumerate(order)}
    out = [0] * (4 * len(order))
    for k, old in enumerate(order):
        for i in range(4):
            g = nbr[4 * old + i]
            out[4 * k + i] = 4 * new_of[g >> 2] + (g & 3)
    return tuple(out)


# --- local moves ----------------------------------------------------------


def insert_crossing(nbr: Sequence[int], h1: int, h2: int) -> Nbr:
    """Put a new crossing inside the face walked through darts ``h1``, ``h2``.

    The two edges are cut and their four ends joined crosswise through the new
    crossing, so the ends ``h1`` and ``h2`` become opposite legs.  Darts must
    belong to the same face walk and to distinct edges.
    """
    a, b = h1, nbr[h1]
    c, d = h2, nbr[h2]
    if len({a, b, c, d}) != 4:
        raise ValueError("darts must lie on distinct edges")
    n = crossing_count(nbr)
    x = 4 * n
    out = list(nbr) + [0, 0, 0, 0]
    # face walks turn clockwise, so around the new crossing the ends appear
    # as a, d, c, b counterclockwise
    for leg, end in ((0, a), (1, d), (2, c), (3, b)):
        out[x + leg] = end
        out[end] = x + leg
    return tuple(out)


def add_curl(nbr: Sequence[int], h: int, left: bool) -> Nbr:
    """First Reidemeister move: a kink on the edge leaving ``h``."""
    if not nbr:
        return FIGURE_EIGHT_CURVE
    a, b = h, nbr[h]
    x = 4 * crossing_count(nbr)
    out = list(nbr) + [0, 0, 0, 0]
    # strand a -> leg 0 -> leg 2 -> loop -> leg (1 or 3) -> leg (3 or 1) -> b
    if left:
        loop, tail = (2, 1), 3
    else:
        loop, tail = (2, 3), 1
    out[a], out[x] = x, a
    out[x + loop[0]], out[x + loop[1]] = x + loop[1], x + loop[0]
    out[x + tail], out[b] = b, x + tail
    return tuple(out)


def _drop_crossing(nbr: Sequence[int], c: int, pairs: tuple[tuple[int, int], ...]
                   ) -> tuple[Nbr, int]:
    """Remove crossing ``c`` (not the last one) joining its legs in ``pairs``.

    Returns the new table and the number of crossingless circles split off.
    """
    legs = range(4 * c, 4 * c + 4)
    join = {}
    for i, j in pairs:
        join[4 * c + i] = 4 * c + j
        join[4 * c + j] = 4 * c + i
    out = list(nbr)
    visited: set[int] = set()
    for h in legs:
        if h in visited or (nbr[h] >> 2) == c:
            continue
        visited.add(h)
        g = join[h]
        visited.add(g)
        while (nbr[g] >> 2) == c:
            p = nbr[g]
            g = join[p]
            visited.update((p, g))
        out[nbr[h]] = nbr[g]
        out[nbr[g]] = nbr[h]
    free_loops = 0
    for h in legs:
        if h in visited:
            continue
        free_loops += 1
        g = h
        while g not in visited:
            visited.update((g, join[g]))
            g = nbr[join[g]]
    order = [k for k in range(crossing_count(nbr)) if k != c]
    return relabel(out, order), free_loops


def splice(nbr: Sequence[int], c: int) -> Optional[Nbr]:
    """Smooth crossing ``c`` the way that keeps a single component.

    This is the inverse of a component-preserving crossing insertion.
    Returns ``None`` if no smoothing keeps one component.
    """
    n = crossing_count(nbr)
    for pairs in (((0, 1), (2, 3)), ((0, 3), (1, 2))):
        if n == 1:
            loops = _loops_after_last(nbr, pairs)
            if loops == 1:
                return CIRCLE
            continue
        new, free_loops = _drop_crossing(nbr, c, pairs)
        if free_loops == 0 and component_count(new) == 1:
            return new
    return None


def _loops_after_last(nbr: Sequence[int], pairs) -> int:
    join = {}
    for i, j in pairs:
        join[i], join[j] = j, i
    seen: set[int] = set()
    loops = 0
    for h in range(4):
        if h in seen:
            continue
        loops += 1
        g = h
        while g not in seen:
            seen.add(g)
            seen.add(join[g])
            g = nbr[join[g]]
    return loops


def monogon_corners(nbr: Sequence[int]) -> Iterator[tuple[int, int]]:
    """(crossing, corner) pairs where a monogon sits."""
    for h in range(len(nbr)):
        if nbr[h] == ccw_prev(h):
            yield h >> 2, ccw_prev(h) & 3
