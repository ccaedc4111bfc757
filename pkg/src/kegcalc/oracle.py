"""Brute-force u^- of a projection, computed on bare Gauss words.

Nothing here touches knot Eulerian graphs, the reducer or the engine.  A
component-preserving crossing insertion turns ``A B C`` into
``A c rev(B) c C``; undoing it is the splice ``A c B c C -> A rev(B) C``.
So a projection is reached from an R1-trivial one by ``n`` insertions
exactly when ``n`` successive splices reach an R1-trivial word, and the
search runs backwards from the target level by level.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .results import EXACT, UNKNOWN, CrosscapResult

Word = tuple[int, ...]


def r1_normal_form(word: Sequence[int]) -> Word:
    """Delete cyclically adjacent repeated labels (curls) until none remain."""
    stack: list[int] = []
    for lab in word:
        if stack and stack[-1] == lab:
            stack.pop()
        else:
            stack.append(lab)
    lo, hi = 0, len(stack) - 1
    while hi > lo and stack[lo] == stack[hi]:
        lo += 1
        hi -= 1
    return tuple(stack[lo:hi + 1])


def is_r1_trivial(word: Sequence[int]) -> bool:
    return not r1_normal_form(word)


def splice(word: Word, label: int) -> Word:
    i = word.index(label)
    j = word.index(label, i + 1)
    return word[:i] + word[j - 1:i:-1] + word[j + 1:]


def insert(word: Word, i: int, j: int, label: int) -> Word:
    """Insert ``label`` after positions ``i < j`` with the middle reversed."""
    return word[:i + 1] + (label,) + word[j:i:-1] + (label,) + word[j + 1:]


def canonical_word(word: Sequence[int]) -> Word:
    """Smallest relabelled rotation of the word or of its reverse."""
    if not word:
        return ()
    best = None
    n = len(word)
    for w in (tuple(word), tuple(reversed(word))):
        for r in range(n):
            rot = w[r:] + w[:r]
            names: dict[int, int] = {}
            cand = tuple(names.setdefault(x, len(names) + 1) for x in rot)
            if best is None or cand < best:
                best = cand
    return best


def oracle_uminus(word: Sequence[int], max_level: int = 6, max_states: int = 200_000
                  ) -> CrosscapResult:
    """Least number of splices taking ``word`` to an R1-trivial word.

    The witness is the chain of words from the input down to the trivial one.
    """
    start = canonical_word(word)
    caps = {"max_level": max_level, "max_states": max_states}
    parent: dict[Word, Word] = {start: start}
    level = [start]
    for n in range(max_level + 1):
        for w in level:
            if is_r1_trivial(w):
                chain = [w]
                while parent[chain[-1]] != chain[-1]:
                    chain.append(parent[chain[-1]])
                return CrosscapResult(n, EXACT, list(reversed(chain)), caps)
        if n == max_level:
            break
        nxt = []
        for w in level:
            for lab in sorted(set(w)):
                s = canonical_word(splice(w, lab))
                if s not in parent:
                    parent[s] = w
                    nxt.append(s)
                    if len(parent) > max_states:
                        return CrosscapResult(None, UNKNOWN, None, caps)
        level = nxt
    return CrosscapResult(None, UNKNOWN, None, caps)


def curl_words(budget: int) -> Iterable[Word]:
    """All R1-trivial Gauss words with at most ``budget`` crossings, canonical."""
    seen = {()}
    level = [()]
    yield ()
    for n in range(1, budget + 1):
        nxt = []
        for w in level:
            for pos in range(len(w) + 1):
                c = canonical_word(w[:pos] + (n, n) + w[pos:])
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
                    yield c
        level = nxt
