"""Stem and twig inventories, relating pairs, and the filling constants.

Products of reduced combinations over a reduced family cancel only at
junctions between adjacent factors (see `nielsen.reduce_combination`),
so the blocks that can survive (stems) and the blocks that can cancel
(twigs) range over finite sets computable from pairwise cancellation
alone.  A relating pair records one way a prefix of one stem can lie
inside another stem; counting the nontrivial ones drives a chain of
constants that bound the certificate searches elsewhere in the
package.

`find_matchless_identical_segments` is the desk-scale falsifier for
the combinatorial fact underneath those bounds: whenever two products
share a block longer than the threshold C, some stem inside the shared
block must overlay an identically cut copy of itself.  The search
enumerates every pair of small combinations, every alignment of their
products, and every shared block, and reports any block longer than C
without such a forced overlay.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nielsen import find_n_violation, reduce_combination, signed_family
from .words import Word, cancellation_length, inverse, shortlex_key


@dataclass(frozen=True, order=True)
class StemEntry:
    """One way a family element can be cut in a reduced combination.

    element is the signed family word; left_cut and right_cut are the
    number of letters cancelled by some admissible neighbour on each
    side (0 stands for no neighbour); stem is what survives.
    """

    element: Word
    left_cut: int
    right_cut: int
    stem: Word

    @property
    def partition(self):
        """The (left twig, stem, right twig) decomposition of element."""
        v = self.element
        return (
            inverse(v[: self.left_cut]),
            self.stem,
            v[len(v) - self.right_cut :],
        )


@dataclass(frozen=True)
class StemTable:
    stems: frozenset
    twigs: frozenset

    @property
    def max_stem_length(self) -> int:
        return max((len(e.stem) for e in self.stems), default=0)

    @property
    def max_twig_length(self) -> int:
        return max((len(t) for t in self.twigs), default=0)


def enumerate_stems_twigs(words) -> StemTable:
    """All stems and twigs any reduced combination over words can produce.

    A stem of v is v minus a prefix of length c(u, v) and a suffix of
    length c(v, w), over all admissible neighbours u, w (signed family
    elements whose product with v on that side is not 1, or no
    neighbour at all).  A twig is the block an admissible neighbour
    pair actually cancels: the suffix of u of length c(u, v).  The
    empty twig is always present for a nonempty family since boundary
    factors have no neighbour.

    Raises ValueError when the family is not reduced.
    """
    words = [tuple(w) for w in words]
    violation = find_n_violation(words)
    if violation is not None:
        raise ValueError(f"family fails reduction condition ({violation.condition})")
    fam = signed_family(words)
    stems = set()
    twigs = set()
    if fam:
        twigs.add(())
    for v in fam:
        vinv = inverse(v)
        left_cuts = {0} | {cancellation_length(u, v) for u in fam if u != vinv}
        right_cuts = {0} | {cancellation_length(v, w) for w in fam if w != vinv}
        for lc in left_cuts:
            for rc in right_cuts:
                stem = v[lc : len(v) - rc]
                assert stem, "cuts overlap: family is not reduced"
                stems.add(StemEntry(v, lc, rc, stem))
    for u in fam:
        uinv = inverse(u)
        for v in fam:
            if v == uinv:
                continue
            c = cancellation_length(u, v)
            twigs.add(u[len(u) - c :] if c else ())
    return StemTable(frozenset(stems), frozenset(twigs))


def _occurs(needle: Word, hay: Word) -> bool:
    return any(
        hay[i : i + len(needle)] == needle for i in range(len(hay) - len(needle) + 1)
    )


@dataclass(frozen=True, order=True)
class RelatingPair:
    """A prefix of one stem lying somewhere inside another stem.

    segment is a nonempty prefix of first.stem occurring as a block in
    second.stem.  Occurrence positions are not part of the identity.
    The pair is trivial when it merely matches a stem with an
    identically cut copy of itself in full.
    """

    first: StemEntry
    second: StemEntry
    segment: Word

    @property
    def trivial(self) -> bool:
        return self.first == self.second and self.segment == self.first.stem


def enumerate_relating_pairs(words):
    """All relating pairs over the stem table, and the nontrivial count."""
    table = enumerate_stems_twigs(words)
    entries = sorted(table.stems)
    pairs = set()
    for first in entries:
        for second in entries:
            for n in range(1, len(first.stem) + 1):
                segment = first.stem[:n]
                if _occurs(segment, second.stem):
                    pairs.add(RelatingPair(first, second, segment))
    nontrivial = sum(1 for p in pairs if not p.trivial)
    return frozenset(pairs), nontrivial


@dataclass(frozen=True)
class ConstantsReport:
    """Derived constants of a reduced family.

    S: longest stem.  T: longest twig.  R: number of nontrivial
    relating pairs.  C = (R + 3) * S is the shared-block threshold
    above which a trivial overlay is forced.  D = 3C + 2S + 2T bounds
    the combinations worth switching in the certificate search.  B is
    the per-letter area multiplier; B_alt is its variant with half the
    linear terms, kept for comparison.
    """

    S: int
    T: int
    R: int
    C: int
    D: int
    B: int
    B_alt: int

    def as_dict(self) -> dict:
        return {
            "S": self.S,
            "T": self.T,
            "R": self.R,
            "C": self.C,
            "D": self.D,
            "B": self.B,
            "B_alt": self.B_alt,
        }


def compute_constants(words) -> ConstantsReport:
    table = enumerate_stems_twigs(words)
    _, nontrivial = enumerate_relating_pairs(words)
    s = table.max_stem_length
    t = table.max_twig_length
    c = (nontrivial + 3) * s
    d = 3 * c + 2 * s + 2 * t
    b = d + d * s + 8 * s + 8 * t + 4 * c + 1
    b_alt = d + d * s + 4 * s + 4 * t + 4 * c + 1
    return ConstantsReport(s, t, nontrivial, c, d, b, b_alt)


@dataclass(frozen=True)
class MatchlessSegment:
    """A shared block longer than C whose overlays are all nontrivial.

    The block is product1[start1 : start1 + len(segment)] and equals
    product2[start2 : ...] for the reduced products of the two
    combinations.  Existence contradicts the threshold claim, so for a
    malnormal subgroup family the search must never return one.
    """

    combo1: tuple
    combo2: tuple
    start1: int
    start2: int
    segment: Word


def _reduced_combinations(fam, max_letters):
    """Nonempty reduced combinations with factor letters summing <= bound."""
    fam = sorted(fam, key=shortlex_key)
    out = []

    def extend(combo, used):
        for v in fam:
            if combo and v == inverse(combo[-1]):
                continue
            total = used + len(v)
            if total > max_letters:
                continue
            grown = combo + (v,)
            out.append(grown)
            extend(grown, total)

    extend((), 0)
    return out


def _stem_layout(words, combo):
    product, stems, twigs = reduce_combination(words, combo)
    layout = []
    pos = 0
    for i, stem in enumerate(stems):
        entry = StemEntry(combo[i], len(twigs[i]), len(twigs[i + 1]), stem)
        layout.append((pos, entry))
        pos += len(stem)
    return product, layout


def find_matchless_identical_segments(words, max_combination_letters: int):
    """Search small combination pairs for a shared block that defeats C.

    Enumerates every ordered pair of reduced combinations whose factor
    letters total at most max_combination_letters, every alignment of
    their reduced products, and every maximal run of agreement under
    that alignment.  Within a run, a window is defeated as soon as it
    fully contains a stem of the second product that lands exactly on
    an identically cut copy of itself in the first (a trivial overlay).
    Reports the first window longer than C that no stem defeats, or
    None.
    """
    report = compute_constants(words)
    threshold = report.C
    fam = signed_family([tuple(w) for w in words])
    if not fam or max_combination_letters <= 0:
        return None
    combos = _reduced_combinations(fam, max_combination_letters)
    layouts = [(combo, *_stem_layout(words, combo)) for combo in combos]

    for combo1, p1, layout1 in layouts:
        if len(p1) <= threshold:
            continue
        # stem occupying each position of p1, for alignment lookups
        stem_at = {}
        for pos, entry in layout1:
            for k in range(len(entry.stem)):
                stem_at[pos + k] = (pos, entry)
        for combo2, p2, layout2 in layouts:
            for shift in range(-(len(p2) - 1), len(p1)):
                lo = max(0, shift)
                hi = min(len(p1), len(p2) + shift)
                if hi - lo <= threshold:
                    continue
                # maximal agreement runs between p1 and shifted p2
                runs = []
                start = None
                for p in range(lo, hi):
                    if p1[p] == p2[p - shift]:
                        if start is None:
                            start = p
                    elif start is not None:
                        runs.append((start, p))
                        start = None
                if start is not None:
                    runs.append((start, hi))
                for a, b in runs:
                    if b - a <= threshold:
                        continue
                    blockers = []
                    for q0, entry2 in layout2:
                        a0 = q0 + shift
                        m = len(entry2.stem)
                        if a0 < a or a0 + m > b:
                            continue
                        hit = stem_at.get(a0)
                        if hit is not None and hit == (a0, entry2):
                            blockers.append((a0, a0 + m))
                    blockers.sort(key=lambda iv: iv[1])
                    max_start = None
                    k = 0
                    for end in range(a + 1, b + 1):
                        while k < len(blockers) and blockers[k][1] <= end:
                            s0 = blockers[k][0]
                            max_start = s0 if max_start is None else max(max_start, s0)
                            k += 1
                        left = a if max_start is None else max(a, max_start + 1)
                        if end - left > threshold:
                            segment = p1[left:end]
                            return MatchlessSegment(
                                combo1, combo2, left, left - shift, segment
                            )
    return None
