"""Clopen subsets of the full shift as finite unions of cylinders.

Every clopen set is a finite union of cylinders over one common window,
stored here as a half-open coordinate interval plus the set of admitted
window words.  All binary operations first re-express both operands over
the union window (extending words in every possible way), so the algebra
is exact and normalization stays deterministic.
"""

from __future__ import annotations

from itertools import product


class ClopenError(ValueError):
    pass


class ClopenSet:
    """Union of cylinders ``[w]_start`` for ``w`` in ``words``.

    ``words`` all share one length L; the window is ``[start, start+L)``.
    The empty word-set denotes the empty subset of the full shift.
    """

    __slots__ = ("alphabet", "start", "length", "words")

    def __init__(self, alphabet, start, length, words):
        words = frozenset(tuple(w) for w in words)
        if length < 1:
            raise ClopenError("window length must be >= 1")
        for w in words:
            if len(w) != length:
                raise ClopenError(f"word {w!r} does not fit window of length {length}")
            if any(not 0 <= s < alphabet.size for s in w):
                raise ClopenError(f"word {w!r} uses symbols outside the alphabet")
        self.alphabet = alphabet
        self.start = start
        self.length = length
        self.words = words

    @classmethod
    def cylinder(cls, alphabet, word, start=0):
        word = alphabet.word(word)
        return cls(alphabet, start, len(word), {word})

    @classmethod
    def full(cls, alphabet):
        return cls(alphabet, 0, 1, {(a,) for a in range(alphabet.size)})

    @classmethod
    def empty(cls, alphabet):
        return cls(alphabet, 0, 1, ())

    @classmethod
    def symbol_union(cls, alphabet, symbols, start=0):
        """Union of the single-symbol cylinders ``[s]_start``."""
        return cls(alphabet, start, 1, {(alphabet.index(s) if isinstance(s, str) else s,) for s in symbols})

    @classmethod
    def ball_around(cls, shift, n):
        """The clopen set of points whose central (2n+1)-window reads a
        word of the given subshift: the window-ball realization of a
        metric neighborhood of the shift."""
        return cls(shift.alphabet, -n, 2 * n + 1, shift.language(2 * n + 1))

    @property
    def end(self):
        return self.start + self.length

    @property
    def is_empty(self):
        return not self.words

    @property
    def is_full(self):
        lo = min(self.start, 0)
        hi = max(self.end, 1)
        return len(self.on_window(lo, hi)) == self.alphabet.size ** (hi - lo)

    def on_window(self, lo, hi):
        """Word set re-expressed over the window ``[lo, hi)`` (which must
        contain the current one)."""
        if lo > self.start or hi < self.end:
            raise ClopenError("target window must contain the current window")
        m = self.alphabet.size
        left = self.start - lo
        right = hi - self.end
        if left == 0 and right == 0:
            return set(self.words)
        out = set()
        for pre in product(range(m), repeat=left):
            for suf in product(range(m), repeat=right):
                for w in self.words:
                    out.add(pre + w + suf)
        return out

    def _aligned(self, other):
        if self.alphabet != other.alphabet:
            raise ClopenError("alphabet mismatch")
        lo = min(self.start, other.start)
        hi = max(self.end, other.end)
        return lo, hi, self.on_window(lo, hi), other.on_window(lo, hi)

    def union(self, other):
        lo, hi, a, b = self._aligned(other)
        return ClopenSet(self.alphabet, lo, hi - lo, a | b)

    def intersection(self, other):
        lo, hi, a, b = self._aligned(other)
        return ClopenSet(self.alphabet, lo, hi - lo, a & b)

    def difference(self, other):
        lo, hi, a, b = self._aligned(other)
        return ClopenSet(self.alphabet, lo, hi - lo, a - b)

    def complement(self):
        every = set(self.alphabet.all_words(self.length))
        return ClopenSet(self.alphabet, self.start, self.length, every - self.words)

    def shift(self, n=1):
        """Image under the n-th power of the shift map; the window moves
        by ``-n`` (``shift(1)`` of ``[u]_0`` is ``[u]_-1``)."""
        return ClopenSet(self.alphabet, self.start - n, self.length, self.words)

    def contains(self, config):
        """Membership of a finitely described configuration."""
        return config.window(self.start, self.end) in self.words

    def __or__(self, other):
        return self.union(other)

    def __and__(self, other):
        return self.intersection(other)

    def __sub__(self, other):
        return self.difference(other)

    def __invert__(self):
        return self.complement()

    def __eq__(self, other):
        if not isinstance(other, ClopenSet):
            return NotImplemented
        if self.alphabet != other.alphabet:
            return False
        lo, hi, a, b = self._aligned(other)
        return a == b

    def __hash__(self):
        # weak on purpose: equality is window-alignment based, so only
        # window-insensitive data may enter the hash
        return hash((self.alphabet, not self.words))

    def __repr__(self):
        fmt = self.alphabet.format_word
        shown = sorted(self.words)
        inner = ", ".join(fmt(w) for w in shown[:6])
        if len(shown) > 6:
            inner += ", ..."
        return f"<ClopenSet [{self.start},{self.end}) {{{inner}}}>"

    def to_json(self):
        fmt = self.alphabet.format_word
        return {
            "window_start": self.start,
            "window_length": self.length,
            "words": sorted(fmt(w) for w in self.words),
        }
