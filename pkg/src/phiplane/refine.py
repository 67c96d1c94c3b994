"""Factor complexity of exchange codings by exact partition refinement.

A depth-n cell is the set of points sharing one length-n coding prefix.
Cells are built by prepending a symbol: the cell of i.u is the piece of
i intersected with the preimage of the cell of u.  Preimages act on
strips exactly and keep the leading coefficient, so every depth stays
inside one quadratic family.
"""

from __future__ import annotations

from dataclasses import dataclass
from .exchange import INV_PHI2, T_PHI_DRIFT, PieceExchange
from .field import QPhi, ZERO, ONE
from .geometry import Region, Strip, merge_strips, region_intersect
from .words import Language, Word


@dataclass(frozen=True)
class Cell:
    """A positive-area coding cell."""

    word: Word
    region: Region
    cell_area: QPhi


def _strip_unshear(s: Strip) -> Strip:
    # (x, y) -> (x, y - x)
    return Strip(s.x_lo, s.x_hi,
                 s.lower.add_affine(-ONE, ZERO),
                 s.upper.add_affine(-ONE, ZERO),
                 s.lo_closed, s.hi_closed, s.lower_closed, s.upper_closed)


def _strip_translate(s: Strip, u: QPhi, v: QPhi) -> Strip:
    return Strip(s.x_lo + u, s.x_hi + u,
                 s.lower.shift_x(-u).add_affine(ZERO, v),
                 s.upper.shift_x(-u).add_affine(ZERO, v),
                 s.lo_closed, s.hi_closed, s.lower_closed, s.upper_closed)


def preimage(exchange: PieceExchange, label: int, region: Region) -> Region:
    """Preimage of a region under the branch acting on piece `label`."""
    n, m = exchange.piece(label).shift
    base = exchange.base
    out = []
    for s in region.strips:
        t = _strip_translate(s, QPhi(n), QPhi(m))
        if base.kind == "T_phi":
            t = _strip_translate(t, -INV_PHI2, -T_PHI_DRIFT)
            t = _strip_unshear(t)
        else:
            t = _strip_translate(t, -base.alpha, -base.beta)
        out.append(t)
    return Region(tuple(merge_strips(out)))


def refine(exchange: PieceExchange, n: int) -> list[Cell]:
    """All positive-area depth-n cells, in word lexicographic order."""
    if n < 1:
        raise ValueError("depth must be >= 1")
    cells = [Cell((p.label,), p.region, p.region.area())
             for p in exchange.pieces
             if p.region.area() > ZERO]
    for _ in range(n - 1):
        nxt: list[Cell] = []
        for piece in exchange.pieces:
            for c in cells:
                r = region_intersect(piece.region, preimage(exchange, piece.label, c.region))
                a = r.area()
                if a > ZERO:
                    nxt.append(Cell((piece.label,) + c.word, r, a))
        cells = nxt
    return sorted(cells, key=lambda c: c.word)


def refinement_chain(exchange: PieceExchange, max_n: int) -> list[list[Cell]]:
    """Cells at every depth 1..max_n, reusing each previous depth."""
    if max_n < 1:
        raise ValueError("depth must be >= 1")
    out = [refine(exchange, 1)]
    for _ in range(max_n - 1):
        nxt: list[Cell] = []
        for piece in exchange.pieces:
            for c in out[-1]:
                r = region_intersect(piece.region, preimage(exchange, piece.label, c.region))
                a = r.area()
                if a > ZERO:
                    nxt.append(Cell((piece.label,) + c.word, r, a))
        out.append(sorted(nxt, key=lambda c: c.word))
    return out


def complexity_table(exchange: PieceExchange, max_n: int) -> list[tuple[int, int]]:
    """Rows (n, p(n)) where p counts positive-area depth-n cells."""
    return [(n + 1, len(cells))
            for n, cells in enumerate(refinement_chain(exchange, max_n))]


def language_from_refinement(exchange: PieceExchange, max_n: int) -> Language:
    """Factorial language of the coding, words up to length max_n."""
    m = max(p.label for p in exchange.pieces)
    words: set[Word] = set()
    for cells in refinement_chain(exchange, max_n):
        words.update(c.word for c in cells)
    return Language.from_words(words, m, max_n)


def max_cell_area(exchange: PieceExchange, n: int) -> QPhi:
    best = ZERO
    for c in refine(exchange, n):
        if c.cell_area > best:
            best = c.cell_area
    return best


def matching_horizon(exchange: PieceExchange, cap: int = 12) -> int:
    """Largest M <= cap with p(k) = k+1 for every k = 1..M (0 if none)."""
    m = 0
    for k, p in complexity_table(exchange, cap):
        if p != k + 1:
            break
        m = k
    return m


def complexity_csv_rows(level: int,
                        table: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
    return [(level, n, p) for n, p in table]


def three_distance_gaps(alpha: QPhi, n: int) -> list[QPhi]:
    """Sorted gaps of the circle partition by {0, {alpha}, ..., {n*alpha}}.

    Independent one-dimensional oracle: the largest gap bounds the
    marginal extent of any depth-(n+1) coding cell of the rotation.
    """
    pts = [QPhi(0)]
    x = QPhi(0)
    for _ in range(n):
        x = (x + alpha).frac()
        pts.append(x)
    pts = sorted(set(pts))
    gaps = [pts[i + 1] - pts[i] for i in range(len(pts) - 1)]
    gaps.append(QPhi(1) - pts[-1])
    return sorted(gaps)
