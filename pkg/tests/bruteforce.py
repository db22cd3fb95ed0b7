"""Definition-level brute force used to cross-check the package.

Everything here recomputes quantities from first principles: products
are reduced letter by letter with provenance tracking, and tables are
read off actual combinations instead of pairwise cancellation.  Slow
and simple on purpose, so tests can compare two independent routes.
"""

from dehncert.nielsen import signed_family
from dehncert.words import inverse


def reduced_combinations(words, max_factors):
    """All nonempty combinations of at most max_factors signed elements."""
    fam = signed_family(words)
    out = []

    def extend(combo):
        if combo:
            out.append(tuple(combo))
        if len(combo) == max_factors:
            return
        for v in fam:
            if combo and v == inverse(combo[-1]):
                continue
            combo.append(v)
            extend(combo)
            combo.pop()

    extend([])
    return out


def annotated_product(combo):
    """Stack-reduce the concatenation, remembering letter provenance."""
    stack = []  # (letter, factor index, offset in factor)
    for fi, v in enumerate(combo):
        for off, x in enumerate(v):
            if stack and stack[-1][0] == -x:
                stack.pop()
            else:
                stack.append((x, fi, off))
    return stack


def observed_stems_twigs(words, max_factors):
    """Stem and twig tuples read off actual reduced products.

    Stems come back as (element, left cut, right cut, stem word)
    tuples, twigs as plain words, exactly the shapes a complete table
    must contain.
    """
    stems = set()
    twigs = set()
    for combo in reduced_combinations(words, max_factors):
        stack = annotated_product(combo)
        twigs.add(())  # boundary factors lose nothing
        for fi, v in enumerate(combo):
            offsets = [off for _, f, off in stack if f == fi]
            assert offsets, "a factor vanished: family is not reduced"
            left = min(offsets)
            right = len(v) - 1 - max(offsets)
            assert offsets == list(range(left, len(v) - right))
            stems.add((v, left, right, v[left : len(v) - right]))
            twigs.add(v[len(v) - right :] if right else ())
    return stems, twigs


def observed_relating_pairs(stems):
    """Prefix-in-stem scan over a stem tuple set; returns (pairs, count).

    Pairs are ((v1, l1, r1), (v2, l2, r2), segment) tuples; the count
    excludes the trivial ones, where both cut stems coincide and the
    segment is the whole stem.
    """
    pairs = set()
    for v1, l1, r1, s1 in stems:
        for v2, l2, r2, s2 in stems:
            for n in range(1, len(s1) + 1):
                seg = s1[:n]
                for i in range(len(s2) - n + 1):
                    if s2[i : i + n] == seg:
                        pairs.add(((v1, l1, r1), (v2, l2, r2), seg))
                        break
    trivial = {((v, l, r), (v, l, r), s) for (v, l, r, s) in stems}
    nontrivial = sum(1 for p in pairs if p not in trivial)
    return pairs, nontrivial


def constants_from_table(stems, twigs, nontrivial):
    """(S, T, R, C, D, B) recomputed from raw tuple sets."""
    s = max((len(st[3]) for st in stems), default=0)
    t = max((len(tw) for tw in twigs), default=0)
    c = (nontrivial + 3) * s
    d = 3 * c + 2 * s + 2 * t
    b = d + d * s + 8 * s + 8 * t + 4 * c + 1
    return s, t, nontrivial, c, d, b
