"""Alphabets and words.

Throughout the package a *word* is a plain tuple of symbol indices
(small ints).  The :class:`Alphabet` owns the mapping between indices
and symbol names and provides parsing/formatting, including the
concatenated-name encoding used by rule files.
"""

from __future__ import annotations

from itertools import product


class AlphabetError(ValueError):
    pass


class Alphabet:
    """An ordered finite set of named symbols.

    Symbol order is significant: it fixes the lexicographic order of
    neighborhoods and therefore the canonical numbering of rules.
    Alphabets of size one are accepted but flagged ``degenerate``.
    """

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols):
        symbols = tuple(str(s) for s in symbols)
        if not symbols:
            raise AlphabetError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"alphabet symbols must be distinct: {symbols!r}")
        if any(s == "" for s in symbols):
            raise AlphabetError("empty string is not a valid symbol name")
        self.symbols = symbols
        self._index = {s: i for i, s in enumerate(symbols)}

    @property
    def size(self):
        return len(self.symbols)

    @property
    def degenerate(self):
        """True for single-symbol alphabets (shift theory assumes >= 2)."""
        return len(self.symbols) < 2

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def __contains__(self, name):
        return name in self._index

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetError(f"symbol {name!r} not in alphabet {self.symbols}") from None

    def name(self, index):
        return self.symbols[index]

    def word(self, text):
        """Parse a word into a tuple of symbol indices.

        Accepts an iterable of symbol names, or a single string which is
        tokenized into symbol names (see :meth:`tokenize`).
        """
        if isinstance(text, str):
            return self.tokenize(text)
        return tuple(self.index(s) for s in text)

    def format_word(self, word):
        """Concatenated symbol names of an index tuple."""
        return "".join(self.symbols[i] for i in word)

    def tokenize(self, text):
        """Split a concatenated-names string into a unique symbol sequence.

        Uses dynamic programming over all tokenizations; raises if the
        string has no parse or more than one (symbol names may overlap,
        e.g. ``0`` and ``0_prime``, so uniqueness must be checked rather
        than assumed).
        """
        n = len(text)
        counts = [0] * (n + 1)
        counts[0] = 1
        for i in range(1, n + 1):
            for s in self.symbols:
                ls = len(s)
                if ls <= i and counts[i - ls] and text.endswith(s, 0, i):
                    counts[i] += counts[i - ls]
        if counts[n] == 0:
            raise AlphabetError(f"cannot tokenize {text!r} over alphabet {self.symbols}")
        if counts[n] > 1:
            raise AlphabetError(f"ambiguous tokenization of {text!r} over alphabet {self.symbols}")
        out = []
        i = n
        while i > 0:
            for s in self.symbols:
                ls = len(s)
                if ls <= i and counts[i - ls] and text.endswith(s, 0, i):
                    out.append(self._index[s])
                    i -= ls
                    break
        out.reverse()
        return tuple(out)

    def all_words(self, length):
        """All index tuples of the given length, in lexicographic order."""
        return product(range(len(self.symbols)), repeat=length)

    def count_words(self, length):
        return len(self.symbols) ** length


BINARY = Alphabet(("0", "1"))
