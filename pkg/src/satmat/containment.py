"""Exact pattern containment with submatrix selection semantics.

A host M contains a pattern P when we can pick a strictly increasing index
selection per dimension such that every 1-entry of P maps to a 1-entry of M
(extra host 1s are weakened to 0s for free).  The search below enumerates
selections for dimensions 1..d-1 in lexicographic order and closes the last
dimension with a leftmost-greedy scan over per-index candidate bitmasks, so
the first witness found is the lexicographically least selection vector.
Anchored variants pin one host index per dimension at a prescribed rank,
which is what "the new copy must use the flipped cell" amounts to.

Pure functions over immutable values throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, prod
from typing import Iterator

from .core import Coord, Matrix01, Shape

# Above this many candidate embeddings enumerate_embeddings refuses to run.
ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class Embedding:
    """Per-dimension strictly increasing 1-based host index selections."""

    selections: tuple[tuple[int, ...], ...]

    def host_cell(self, pattern_coord: Coord) -> Coord:
        return tuple(self.selections[i][q - 1] for i, q in enumerate(pattern_coord))


def embedding_is_valid(m: Matrix01, p: Matrix01, e: Embedding) -> bool:
    """Check the weakening-soundness of a witness cell by cell."""
    if len(e.selections) != m.shape.d or m.shape.d != p.shape.d:
        return False
    for sel, l, n in zip(e.selections, p.shape.extents, m.shape.extents):
        if len(sel) != l or any(not 1 <= x <= n for x in sel):
            return False
        if any(a >= b for a, b in zip(sel, sel[1:])):
            return False
    return all(m.get(e.host_cell(q)) for q in p.iter_ones())


def _check_same_d(m: Matrix01, p: Matrix01) -> None:
    if m.shape.d != p.shape.d:
        raise ValueError(
            f"dimension mismatch: host is {m.shape.d}-dimensional, "
            f"pattern is {p.shape.d}-dimensional"
        )


def _fits(m: Matrix01, p: Matrix01) -> bool:
    return m.shape.fits(p.shape)


# ---------------------------------------------------------------------------
# Pattern metadata: 1-entries grouped by their last coordinate, with the
# distinct (d-1)-dimensional prefixes interned so the kernel can AND host
# line masks per last-coordinate group.


@lru_cache(maxsize=512)
def _pattern_meta(p: Matrix01):
    d = p.shape.d
    prefix_ids: dict[tuple[int, ...], int] = {}
    by_last: list[list[int]] = [[] for _ in range(p.shape.extents[-1])]
    ones: list[tuple[int, ...]] = []
    for c in p.iter_ones():
        c0 = tuple(x - 1 for x in c)
        ones.append(c0)
        pref = c0[: d - 1]
        pid = prefix_ids.setdefault(pref, len(prefix_ids))
        by_last[c0[-1]].append(pid)
    prefixes = tuple(prefix_ids)
    return prefixes, tuple(tuple(g) for g in by_last), tuple(ones)


def _dim_selections(n: int, l: int, pin):
    """0-based ascending selections of l indices from range(n), lex order.

    ``pin=(rank, idx)`` restricts to selections holding ``idx`` at position
    ``rank``; the restricted stream is still lexicographic.
    """
    if pin is None:
        return combinations(range(n), l)
    rank, idx = pin
    if rank > idx or l - rank - 1 > n - idx - 1:
        return iter(())

    def gen():
        for lo in combinations(range(idx), rank):
            for hi in combinations(range(idx + 1, n), l - rank - 1):
                yield lo + (idx,) + hi

    return gen()


def _search(lines, n_ext, l_ext, prefixes, by_last, pins):
    """Core lexicographic search; returns 0-based selections or None.

    ``lines`` maps each (d-1)-prefix flat index of the host to the bitmask of
    its cells along the last dimension.  ``pins`` is None or a per-dimension
    tuple of (rank, index) pins.
    """
    d = len(n_ext)
    n_last, l_last = n_ext[-1], l_ext[-1]
    last_pin = pins[-1] if pins is not None else None
    pstr = [1] * (d - 1)
    for i in range(d - 3, -1, -1):
        pstr[i] = pstr[i + 1] * n_ext[i + 1]
    full = (1 << n_last) - 1
    sel: list[tuple[int, ...]] = [()] * (d - 1)

    def close_last():
        flats = []
        for pf in prefixes:
            f = 0
            for k in range(d - 1):
                f += sel[k][pf[k]] * pstr[k]
            flats.append(f)
        out = []
        pos = 0
        for c in range(l_last):
            mask = full
            for pid in by_last[c]:
                mask &= lines[flats[pid]]
                if not mask:
                    return None
            if last_pin is not None:
                prank, pidx = last_pin
                if c == prank:
                    if pos > pidx or not (mask >> pidx) & 1:
                        return None
                    out.append(pidx)
                    pos = pidx + 1
                    continue
                if c < prank:
                    mm = mask >> pos
                    if not mm:
                        return None
                    y = pos + ((mm & -mm).bit_length() - 1)
                    if y >= pidx:
                        return None
                    out.append(y)
                    pos = y + 1
                    continue
            mm = mask >> pos
            if not mm:
                return None
            y = pos + ((mm & -mm).bit_length() - 1)
            out.append(y)
            pos = y + 1
        return tuple(out)

    def rec(i):
        if i == d - 1:
            return close_last()
        pin = pins[i] if pins is not None else None
        for choice in _dim_selections(n_ext[i], l_ext[i], pin):
            sel[i] = choice
            r = rec(i + 1)
            if r is not None:
                return r
        return None

    last = rec(0)
    if last is None:
        return None
    return tuple(sel) + (last,)


def _to_embedding(sel0) -> Embedding:
    return Embedding(tuple(tuple(i + 1 for i in s) for s in sel0))


# ---------------------------------------------------------------------------
# Public operations


def contains(m: Matrix01, p: Matrix01) -> Embedding | None:
    """Lexicographically least embedding of p in m, or None.

    Patterns exceeding the host extent in some dimension are vacuously
    avoided (None), not an error.  An all-zero pattern that fits is matched
    by the identity selections.
    """
    _check_same_d(m, p)
    if not _fits(m, p):
        return None
    prefixes, by_last, _ = _pattern_meta(p)
    sel = _search(
        m._last_lines, m.shape.extents, p.shape.extents, prefixes, by_last, None
    )
    return None if sel is None else _to_embedding(sel)


def _pin_feasible(o: Coord, anchor: Coord, l_ext, n_ext) -> bool:
    return all(
        o[i] <= anchor[i] and l_ext[i] - o[i] <= n_ext[i] - anchor[i]
        for i in range(len(o))
    )


def anchored_contains(m: Matrix01, p: Matrix01, anchor: Coord) -> Embedding | None:
    """Least embedding that selects ``anchor`` and maps it to a 1-entry of p."""
    _check_same_d(m, p)
    if not m.shape.in_bounds(anchor):
        raise ValueError(f"anchor {anchor} out of bounds")
    if not m.get(anchor):
        raise ValueError(f"anchor {anchor} is a 0-entry")
    if not _fits(m, p):
        return None
    prefixes, by_last, ones = _pattern_meta(p)
    n_ext, l_ext = m.shape.extents, p.shape.extents
    lines = m._last_lines
    best = None
    for o0 in ones:
        o = tuple(x + 1 for x in o0)
        if not _pin_feasible(o, anchor, l_ext, n_ext):
            continue
        pins = tuple((o0[i], anchor[i] - 1) for i in range(len(o0)))
        sel = _search(lines, n_ext, l_ext, prefixes, by_last, pins)
        if sel is not None and (best is None or sel < best):
            best = sel
    return None if best is None else _to_embedding(best)


def potentially_matches(m: Matrix01, z: Coord, p: Matrix01, o: Coord) -> bool:
    """Whether flipping the 0-entry z yields a copy of p mapping z to o."""
    _check_same_d(m, p)
    if not m.shape.in_bounds(z):
        raise ValueError(f"coordinate {z} out of bounds")
    if m.get(z):
        raise ValueError(f"{z} is a 1-entry of the host")
    if not p.get(o):
        raise ValueError(f"{o} is a 0-entry of the pattern")
    if not _fits(m, p):
        return False
    n_ext, l_ext = m.shape.extents, p.shape.extents
    if not _pin_feasible(o, z, l_ext, n_ext):
        return False
    prefixes, by_last, _ = _pattern_meta(p)
    lines = _lines_with_flip(m, z)
    pins = tuple((o[i] - 1, z[i] - 1) for i in range(len(o)))
    return _search(lines, n_ext, l_ext, prefixes, by_last, pins) is not None


def _lines_with_flip(m: Matrix01, z: Coord) -> list[int]:
    flat = m.shape.flat_index(z)
    n_last = m.shape.extents[-1]
    lines = list(m._last_lines)
    lines[flat // n_last] |= 1 << (flat % n_last)
    return lines


def _anchored_exists(lines, n_ext, p: Matrix01, anchor: Coord) -> bool:
    """Existence-only anchored search over a prepared line table."""
    l_ext = p.shape.extents
    if any(l > n for l, n in zip(l_ext, n_ext)):
        return False
    prefixes, by_last, ones = _pattern_meta(p)
    for o0 in ones:
        pins = []
        ok = True
        for i in range(len(o0)):
            rank, idx = o0[i], anchor[i] - 1
            if rank > idx or l_ext[i] - rank - 1 > n_ext[i] - idx - 1:
                ok = False
                break
            pins.append((rank, idx))
        if not ok:
            continue
        if _search(lines, n_ext, l_ext, prefixes, by_last, tuple(pins)) is not None:
            return True
    return False


def anchored_exists_after_flip(m: Matrix01, p: Matrix01, z: Coord) -> bool:
    """Would flipping the 0-entry z create a copy of p that uses z as a 1?

    Package-internal fast path shared by the saturation verdicts and the
    greedy construction; equivalent to
    ``anchored_contains(m.flip(z), p, z) is not None``.
    """
    return _anchored_exists(_lines_with_flip(m, z), m.shape.extents, p, z)


# ---------------------------------------------------------------------------
# Whole-embedding enumeration.  Over the all-one host every selection is an
# embedding; the helpers below expose the 1-entry images, which is what both
# the sweep-style verdicts and the exact searches consume.


def embeddings_count(host_shape: Shape, p: Matrix01) -> int:
    """Number of selections of p's shape inside the host shape."""
    if host_shape.d != p.shape.d:
        raise ValueError("dimension mismatch")
    return prod(comb(n, l) for n, l in zip(host_shape.extents, p.shape.extents))


def iter_selection_images(host_shape: Shape, p: Matrix01) -> Iterator[tuple[tuple, tuple]]:
    """Yield (0-based selections, flat indices of the 1-entry images).

    Streams every selection in lexicographic order regardless of host
    content.  Intended for small instances only.
    """
    if host_shape.d != p.shape.d:
        raise ValueError("dimension mismatch")
    if not host_shape.fits(p.shape):
        return
    ones0 = [tuple(x - 1 for x in c) for c in p.iter_ones()]
    strides = host_shape.strides
    d = host_shape.d
    dim_choices = [
        list(combinations(range(n), l))
        for n, l in zip(host_shape.extents, p.shape.extents)
    ]
    for sels in product(*dim_choices):
        flats = tuple(
            sum(sels[i][q[i]] * strides[i] for i in range(d)) for q in ones0
        )
        yield sels, flats


@lru_cache(maxsize=64)
def one_image_masks(host_shape: Shape, p: Matrix01) -> tuple[int, ...]:
    """Bitmask of the 1-entry image of every selection, as flat host cells.

    A host M then contains p iff some mask is a subset of M's bits, and
    flipping a 0-cell z creates a copy using z iff some mask misses exactly
    the bit of z.  Cached because verdict sweeps reuse the table across many
    hosts of one shape.
    """
    if host_shape.d != p.shape.d:
        raise ValueError("dimension mismatch")
    if not host_shape.fits(p.shape):
        return ()
    ones0 = [tuple(x - 1 for x in c) for c in p.iter_ones()]
    k = len(ones0)
    strides = host_shape.strides
    d = host_shape.d
    tabs = []
    for i, (n, l) in enumerate(zip(host_shape.extents, p.shape.extents)):
        tab = [
            tuple(sel[q[i]] * strides[i] for q in ones0)
            for sel in combinations(range(n), l)
        ]
        tabs.append(tab)
    masks: list[int] = []
    if d == 1:
        for t in tabs[0]:
            e = 0
            for s in t:
                e |= 1 << s
            masks.append(e)
        return tuple(masks)

    def rec(i, acc):
        if i == d - 1:
            for t in tabs[i]:
                e = 0
                for j in range(k):
                    e |= 1 << (acc[j] + t[j])
                masks.append(e)
            return
        for t in tabs[i]:
            rec(i + 1, tuple(a + b for a, b in zip(acc, t)))

    rec(0, (0,) * k)
    return tuple(masks)


def enumerate_embeddings(
    m: Matrix01, p: Matrix01, limit: int = ENUMERATION_LIMIT
) -> list[Embedding]:
    """All valid embeddings of p in m, in lexicographic order.

    Gated to small instances; raises ValueError when the raw selection count
    exceeds ``limit``.
    """
    _check_same_d(m, p)
    if not _fits(m, p):
        return []
    total = embeddings_count(m.shape, p)
    if total > limit:
        raise ValueError(
            f"{total} candidate selections exceeds the enumeration cap {limit}"
        )
    bits = m.bits
    out = []
    for sels, flats in iter_selection_images(m.shape, p):
        if all((bits >> f) & 1 for f in flats):
            out.append(_to_embedding(sels))
    return out
