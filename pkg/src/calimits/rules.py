"""Local rules of one-dimensional cellular automata.

A rule of radius ``r`` over an ``m``-symbol alphabet is stored as a flat
numpy table of length ``m**(2r+1)`` indexed by the lexicographic code of
the neighborhood (leftmost cell most significant).  For the binary
radius-1 alphabet this makes the table number coincide with the usual
Wolfram numbering of elementary rules.

Rule numbering
--------------
``canonical_id`` enumerates *all* rules injectively:

* rules with alphabet size 2 and radius 1 occupy the ids ``0..255``,
  equal to their Wolfram number;
* every other ``(alphabet size, radius)`` class follows, in increasing
  ``size + radius`` (ties by size), each class occupying the next
  contiguous block of ids, ordered inside the block by table number.

Two rules get the same id exactly when alphabet size, radius and table
coincide.  Symbol *names* are deliberately not part of the id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .alphabet import Alphabet, AlphabetError


class RuleError(ValueError):
    pass


def words_array(m, length):
    """All words of the given length over ``m`` symbols, one per row,
    in lexicographic order (row index == word code)."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    codes = np.arange(m**length, dtype=np.int64)
    powers = m ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // powers[None, :]) % m


def encode_word(word, m):
    code = 0
    for s in word:
        code = code * m + s
    return code


def sliding_apply(table, m, r, rows):
    """Apply a rule table to every window of each row of ``rows``.

    ``rows`` has shape (N, L); the result has shape (N, L - 2r) with the
    rule applied to each (2r+1)-window.  Vectorized over rows.
    """
    n = 2 * r + 1
    N, L = rows.shape
    if L < n:
        raise RuleError(f"word of length {L} is shorter than the neighborhood size {n}")
    out = np.empty((N, L - 2 * r), dtype=rows.dtype)
    powers = m ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for j in range(L - 2 * r):
        codes = rows[:, j : j + n] @ powers
        out[:, j] = table[codes]
    return out


class LocalRule:
    """A total map from (2r+1)-neighborhoods to symbols."""

    __slots__ = ("alphabet", "radius", "table")

    def __init__(self, alphabet, radius, table):
        if radius < 0:
            raise RuleError("radius must be nonnegative")
        m = alphabet.size
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (m ** (2 * radius + 1),):
            raise RuleError(
                f"table must have {m ** (2 * radius + 1)} entries for "
                f"alphabet size {m} and radius {radius}, got shape {table.shape}"
            )
        if table.size and (table.min() < 0 or table.max() >= m):
            raise RuleError("table outputs must be symbol indices of the alphabet")
        self.alphabet = alphabet
        self.radius = radius
        self.table = table
        self.table.setflags(write=False)

    # -- basic application ------------------------------------------------

    @property
    def neighborhood_size(self):
        return 2 * self.radius + 1

    def __call__(self, neighborhood):
        if len(neighborhood) != self.neighborhood_size:
            raise RuleError(
                f"neighborhood must have length {self.neighborhood_size}, got {len(neighborhood)}"
            )
        return int(self.table[encode_word(neighborhood, self.alphabet.size)])

    def extend(self, word):
        """The sliding-block extension: maps a word of length ``k`` to the
        word of length ``k - 2r`` of rule outputs, one per window."""
        word = tuple(word)
        n = self.neighborhood_size
        if len(word) < n:
            raise RuleError(
                f"extension needs a word of length >= {n}, got {len(word)}"
            )
        m = self.alphabet.size
        out = []
        code = encode_word(word[: n - 1], m)
        window_mod = m ** (n - 1)
        for i in range(n - 1, len(word)):
            code = (code % window_mod) * m + word[i]
            out.append(int(self.table[code]))
        return tuple(out)

    def extend_rows(self, rows):
        """Vectorized :meth:`extend` over a 2-d numpy array of words."""
        return sliding_apply(self.table, self.alphabet.size, self.radius, rows)

    def power(self, n):
        """The local rule of the n-th iterate (radius ``n * r``)."""
        if n < 1:
            raise RuleError("power requires n >= 1 (use identity_rule for the 0-th iterate)")
        if n == 1:
            return self
        m = self.alphabet.size
        r = self.radius
        rows = words_array(m, 2 * n * r + 1)
        for _ in range(n):
            rows = self.extend_rows(rows)
        return LocalRule(self.alphabet, n * r, rows[:, 0].copy())

    # -- identities and conventions ---------------------------------------

    @property
    def table_number(self):
        """Table read as an integer: sum of ``output * m**code`` over all
        neighborhood codes.  Equals the Wolfram number on binary radius 1."""
        m = self.alphabet.size
        num = 0
        for code in range(len(self.table) - 1, -1, -1):
            num = num * m + int(self.table[code])
        return num

    def descriptor(self):
        return RuleDescriptor.of(self)

    def __eq__(self, other):
        return (
            isinstance(other, LocalRule)
            and self.alphabet == other.alphabet
            and self.radius == other.radius
            and bool(np.array_equal(self.table, other.table))
        )

    def __hash__(self):
        return hash((self.alphabet, self.radius, self.table.tobytes()))

    def __repr__(self):
        return (
            f"<LocalRule |A|={self.alphabet.size} r={self.radius} "
            f"#={self.descriptor().canonical_id}>"
        )

    # -- serialization -----------------------------------------------------

    def to_json_dict(self):
        fmt = self.alphabet.format_word
        m = self.alphabet.size
        n = self.neighborhood_size
        rows = words_array(m, n)
        return {
            "alphabet": list(self.alphabet.symbols),
            "radius": self.radius,
            "table": {
                fmt(tuple(int(x) for x in rows[c])): self.alphabet.name(int(self.table[c]))
                for c in range(len(self.table))
            },
        }

    @classmethod
    def from_json_dict(cls, data):
        try:
            alphabet = Alphabet(data["alphabet"])
            radius = int(data["radius"])
            entries = data["table"]
        except (KeyError, TypeError) as exc:
            raise RuleError(f"malformed rule file: missing field ({exc})") from exc
        if radius < 0:
            raise RuleError("malformed rule file: radius must be nonnegative")
        m = alphabet.size
        n = 2 * radius + 1
        table = np.full(m**n, -1, dtype=np.int64)
        for key, value in entries.items():
            try:
                word = alphabet.tokenize(key)
            except AlphabetError as exc:
                raise RuleError(f"bad neighborhood {key!r}: {exc}") from exc
            if len(word) != n:
                raise RuleError(
                    f"neighborhood {key!r} has length {len(word)}, expected {n}"
                )
            if value not in alphabet:
                raise RuleError(f"output {value!r} for {key!r} is not an alphabet symbol")
            code = encode_word(word, m)
            if table[code] != -1:
                raise RuleError(f"duplicate table entry for neighborhood {key!r}")
            table[code] = alphabet.index(value)
        if (table == -1).any():
            missing = int((table == -1).sum())
            raise RuleError(f"table is not total: {missing} neighborhoods missing")
        return cls(alphabet, radius, table)

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise RuleError(f"rule file is not valid JSON: {exc}") from exc
        return cls.from_json_dict(data)


def identity_rule(alphabet, radius=0):
    """The rule that outputs the center cell (radius 0 by default)."""
    m = alphabet.size
    rows = words_array(m, 2 * radius + 1)
    return LocalRule(alphabet, radius, rows[:, radius].copy())


def eca_rule(number):
    """Elementary rule in the Wolfram convention: the output for the
    neighborhood read as a 3-bit code is the corresponding bit of
    ``number``."""
    if not 0 <= number <= 255:
        raise RuleError("elementary rule numbers range over 0..255")
    table = np.array([(number >> code) & 1 for code in range(8)], dtype=np.int64)
    return LocalRule(Alphabet(("0", "1")), 1, table)


def _class_size(m, r):
    return m ** (m ** (2 * r + 1))


def _class_offset(m, r):
    """Start of the id block of the (alphabet size, radius) class.

    The binary radius-1 class sits first (so its ids equal the Wolfram
    numbers); remaining classes follow in increasing ``m + r``, ties by
    ``m``.
    """
    if (m, r) == (2, 1):
        return 0
    offset = _class_size(2, 1)
    d = 1
    while True:
        for mm in range(1, d + 1):
            rr = d - mm
            if (mm, rr) == (2, 1):
                continue
            if (mm, rr) == (m, r):
                return offset
            offset += _class_size(mm, rr)
        d += 1


@dataclass(frozen=True)
class RuleDescriptor:
    """Injective integer id of a rule plus its defining coordinates."""

    alphabet_size: int
    radius: int
    table_number: int
    canonical_id: int

    @classmethod
    def of(cls, rule):
        t = rule.table_number
        return cls(
            alphabet_size=rule.alphabet.size,
            radius=rule.radius,
            table_number=t,
            canonical_id=_class_offset(rule.alphabet.size, rule.radius) + t,
        )
