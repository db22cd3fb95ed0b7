"""Nielsen reduction of finite families of free group words.

A family W = (w_1, ..., w_n) of reduced words is handled through its
signed family: the list w_1, w_1^-1, w_2, w_2^-1, ... in that order.
All scans below run in signed family order, so reported witnesses are
deterministic.

The family is reduced when three conditions hold for signed elements
v, v1, v2, v3:

  (0) every v is nonempty;
  (1) v1 v2 != 1 implies |v1 v2| >= max(|v1|, |v2|);
  (2) v1 v2 != 1 and v2 v3 != 1 imply |v1 v2 v3| > |v1| - |v2| + |v3|.

Condition (1) says no product of two elements shortens either factor,
condition (2) says the middle factor is never swallowed completely.

`nielsen_reduce` turns any family into a reduced one generating the
same subgroup and returns a replayable log of elementary moves, which
lets a caller carry words of a second free group along the same
transformation (see `apply_log`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import (
    Word,
    cancellation_length,
    concat,
    free_reduce,
    inverse,
    is_reduced,
    shortlex_key,
)


def signed_family(words):
    """All elements and inverses in scan order w1, w1^-1, w2, ..."""
    out = []
    for w in words:
        out.append(tuple(w))
        out.append(inverse(w))
    return out


@dataclass(frozen=True)
class NViolation:
    """First witness, in scan order, of a failed reduction condition."""

    condition: int
    witness: tuple


def find_n_violation(words) -> NViolation | None:
    words = [tuple(w) for w in words]
    for w in words:
        assert is_reduced(w)
        if not w:
            return NViolation(0, (w,))
    fam = signed_family(words)
    for v1 in fam:
        for v2 in fam:
            p = concat(v1, v2)
            if p and len(p) < max(len(v1), len(v2)):
                return NViolation(1, (v1, v2))
    for v1 in fam:
        for v2 in fam:
            if not concat(v1, v2):
                continue
            for v3 in fam:
                if not concat(v2, v3):
                    continue
                if len(concat(v1, v2, v3)) <= len(v1) - len(v2) + len(v3):
                    return NViolation(2, (v1, v2, v3))
    return None


def is_n_reduced(words) -> bool:
    return find_n_violation(words) is None


@dataclass(frozen=True)
class NielsenStep:
    """One elementary move on a family, addressed by position.

    op is one of "swap", "invert", "mulL", "mulR", "drop".  mulL sets
    words[i] = words[j] * words[i], mulR sets words[i] = words[i] *
    words[j]; both require i != j.  drop removes position i and shifts
    later positions down.
    """

    op: str
    i: int
    j: int | None = None


def apply_log(log, words):
    """Replay a move log on a parallel list of words."""
    xs = [tuple(w) for w in words]
    for step in log:
        if step.op == "swap":
            xs[step.i], xs[step.j] = xs[step.j], xs[step.i]
        elif step.op == "invert":
            xs[step.i] = inverse(xs[step.i])
        elif step.op == "mulL":
            xs[step.i] = concat(xs[step.j], xs[step.i])
        elif step.op == "mulR":
            xs[step.i] = concat(xs[step.i], xs[step.j])
        elif step.op == "drop":
            del xs[step.i]
        else:
            raise ValueError(f"unknown op {step.op!r}")
    return xs


class _Session:
    """Working family plus the log of every move applied to it."""

    def __init__(self, words):
        self.words = [free_reduce(w) for w in words]
        self.log: list[NielsenStep] = []

    def emit(self, op, i, j=None):
        step = NielsenStep(op, i, j)
        self.words[:] = apply_log([step], self.words)
        self.log.append(step)

    def mul(self, side, i, j, sign):
        # words[i] *= words[j]^sign on the given side; sign -1 is
        # emulated so the log stays within the five ops.
        assert i != j
        if sign < 0:
            self.emit("invert", j)
        self.emit("mulL" if side == "L" else "mulR", i, j)
        if sign < 0:
            self.emit("invert", j)


def _shorten_once(s: _Session) -> bool:
    """Apply one length-reducing pair move, if any exists.

    Scans products x * y of signed elements at distinct positions and
    replaces the factor the product is shorter than.  Products equal to
    1 count as shortenings; they empty one position, to be dropped by
    the caller.
    """
    ws = s.words
    for i in range(len(ws)):
        for ei in (1, -1):
            x = ws[i] if ei > 0 else inverse(ws[i])
            for j in range(len(ws)):
                if i == j:
                    continue
                for ej in (1, -1):
                    y = ws[j] if ej > 0 else inverse(ws[j])
                    n = len(concat(x, y))
                    if n < len(ws[j]):
                        # replace y by x y, i.e. words[j] by (x y)^ej
                        if ej > 0:
                            s.mul("L", j, i, ei)
                        else:
                            s.mul("R", j, i, -ei)
                        return True
                    if n < len(ws[i]):
                        if ei > 0:
                            s.mul("R", i, j, ej)
                        else:
                            s.mul("L", i, j, -ej)
                        return True
    return False


def _drop_empties(s: _Session):
    i = 0
    while i < len(s.words):
        if s.words[i]:
            i += 1
        else:
            s.emit("drop", i)


def _phase1(s: _Session):
    _drop_empties(s)
    while _shorten_once(s):
        _drop_empties(s)


def _n2_move(s: _Session) -> bool:
    """Fix one condition (2) violation; assumes phase 1 is stable.

    Stability forces every violation v1 v2 v3 into the shape |v2| = 2k
    with both neighbours cancelling exactly half of v2 = p q.  When
    q^-1 < p we rewrite v1 := v1 v2 (its tail p^-1 becomes the smaller
    q), otherwise v3 := v2 v3.  Either rewrite keeps all lengths and
    strictly lowers the multiset of word halves, which is the
    termination argument for the outer loop.
    """
    ws = s.words
    fam = [(i, e, ws[i] if e > 0 else inverse(ws[i])) for i in range(len(ws)) for e in (1, -1)]
    for i1, e1, v1 in fam:
        for i2, e2, v2 in fam:
            if not concat(v1, v2):
                continue
            for i3, e3, v3 in fam:
                if not concat(v2, v3):
                    continue
                if len(concat(v1, v2, v3)) > len(v1) - len(v2) + len(v3):
                    continue
                k, odd = divmod(len(v2), 2)
                assert not odd and cancellation_length(v1, v2) == k
                assert cancellation_length(v2, v3) == k
                p, q = v2[:k], v2[k:]
                if shortlex_key(inverse(q)) < shortlex_key(p):
                    # v1 keeps its length, i1 != i2 since v1 is not
                    # v2 or v2^-1 here
                    if e1 > 0:
                        s.mul("R", i1, i2, e2)
                    else:
                        s.mul("L", i1, i2, -e2)
                else:
                    if e3 > 0:
                        s.mul("L", i3, i2, e2)
                    else:
                        s.mul("R", i3, i2, -e2)
                return True
    return False


def _halves_measure(words):
    halves = sorted(
        (
            shortlex_key(w[: (len(w) + 1) // 2]),
            shortlex_key(inverse(w)[: (len(w) + 1) // 2]),
        )
        for w in words
    )
    return sum(len(w) for w in words), halves


def _sort_with_swaps(s: _Session):
    n = len(s.words)
    for i in range(n):
        best = min(range(i, n), key=lambda k: shortlex_key(s.words[k]))
        if best != i:
            s.emit("swap", i, best)


def nielsen_reduce(words):
    """Reduce a family, returning (basis, log).

    The basis is reduced in the sense of `is_n_reduced`, sorted in
    shortlex order, and generates the same subgroup as the input.  The
    log replays the input to the basis through `apply_log`.
    """
    s = _Session(words)
    _phase1(s)
    measure = _halves_measure(s.words)
    while _n2_move(s):
        _phase1(s)
        next_measure = _halves_measure(s.words)
        assert next_measure < measure
        measure = next_measure
    _sort_with_swaps(s)
    assert apply_log(s.log, [free_reduce(w) for w in words]) == s.words
    return tuple(s.words), s.log


def cancelled_head(words, v) -> Word:
    """Longest prefix of v that multiplication by a signed family
    element other than v^-1 can cancel."""
    v = tuple(v)
    vinv = inverse(v)
    best = 0
    for u in signed_family(words):
        if u == vinv:
            continue
        best = max(best, cancellation_length(u, v))
    return v[:best]


def split_word(words, v):
    """Split v = head * core * tail relative to its family.

    head is `cancelled_head(words, v)`; tail is the inverse of the head
    of v^-1.  For a reduced family the core is nonempty, and any
    product of family elements in which v appears keeps the core of v
    intact (only head and tail letters can cancel).
    """
    v = tuple(v)
    head = cancelled_head(words, v)
    tail = inverse(cancelled_head(words, inverse(v)))
    if len(head) + len(tail) >= len(v) and v:
        raise ValueError("family is not reduced: core of a word vanished")
    return head, v[len(head) : len(v) - len(tail)], tail


def word_core(words, v) -> Word:
    return split_word(words, v)[1]


def reduce_combination(words, combo):
    """Multiply out a reduced combination and partition each factor.

    combo is a sequence of signed family elements of `words` in which
    no two neighbours multiply to 1.  Over a reduced family the product
    v_1 ... v_t cancels only between adjacent factors, so each factor
    splits as

        v_i = twig_{i-1}^-1 + stem_i + twig_i

    where twig_i is the block cancelled between v_i and v_{i+1}, and
    the stems concatenate to the reduced product with no further
    cancellation.  Returns (product, stems, twigs); twigs has one more
    entry than stems, with empty words at both ends.

    Raises ValueError if combo uses a word outside the signed family or
    has an adjacent inverse pair.  The empty combination is allowed and
    yields an empty product.
    """
    fam = set(signed_family(words))
    combo = [tuple(v) for v in combo]
    for v in combo:
        if v not in fam:
            raise ValueError("combination uses a word outside the signed family")
    for v, nxt in zip(combo, combo[1:]):
        if nxt == inverse(v):
            raise ValueError("combination is not reduced: adjacent inverse pair")
    if not combo:
        return (), (), ((),)

    cuts = [0]
    for v, nxt in zip(combo, combo[1:]):
        cuts.append(cancellation_length(v, nxt))
    cuts.append(0)

    stems = []
    twigs = [()]
    for i, v in enumerate(combo):
        left, right = cuts[i], cuts[i + 1]
        stem = v[left : len(v) - right]
        twig = v[len(v) - right :]
        # the cancelled block really is the mirror of the next prefix
        assert not twig or combo[i + 1][:right] == inverse(twig)
        assert stem, "empty stem: family is not reduced"
        stems.append(stem)
        twigs.append(twig)

    product = sum(stems, ())
    # adjacent-only cancellation: stems survive into the product verbatim
    assert is_reduced(product) and product == free_reduce(concat(*combo))
    return product, tuple(stems), tuple(twigs)
