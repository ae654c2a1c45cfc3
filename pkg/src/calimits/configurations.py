"""Finitely described points of the full shift.

Two families are enough for every certificate the package emits:
spatially periodic configurations, and configurations that are periodic
to the left and to the right of a finite middle block (used as witnesses
for non-closing maps and similar asymptotic phenomena).

Positions are absolute integers; ``symbol_at(i)`` is the cell value at
coordinate ``i``.  Words are index tuples over the owning alphabet,
which the configuration itself does not store.
"""

from __future__ import annotations

from math import lcm


def _primitive_root(word):
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


class PeriodicConfiguration:
    """The bi-infinite point ``x`` with ``x[i] = word[(i - phase) % p]``.

    Equality and hashing use the canonical form: the lexicographically
    least rotation of the primitive root, with the phase reduced
    accordingly.  Two objects are equal exactly when they describe the
    same point.
    """

    __slots__ = ("word", "phase")

    def __init__(self, word, phase=0):
        word = tuple(word)
        if not word:
            raise ValueError("repeating word must be nonempty")
        self.word = word
        self.phase = phase

    @property
    def period(self):
        return len(self.word)

    def symbol_at(self, i):
        return self.word[(i - self.phase) % len(self.word)]

    def window(self, lo, hi):
        return tuple(self.symbol_at(i) for i in range(lo, hi))

    def canonical(self):
        root = _primitive_root(self.word)
        d = len(root)
        best_t = min(range(d), key=lambda t: root[t:] + root[:t])
        rot = root[best_t:] + root[:best_t]
        return PeriodicConfiguration(rot, (self.phase + best_t) % d)

    def step(self, rule):
        """Image under one application of ``rule`` (same spatial period)."""
        r = rule.radius
        new = tuple(rule(self.window(i - r, i + r + 1)) for i in range(len(self.word)))
        return PeriodicConfiguration(new, 0)

    def __eq__(self, other):
        if not isinstance(other, PeriodicConfiguration):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.word == b.word and a.phase == b.phase

    def __hash__(self):
        c = self.canonical()
        return hash((c.word, c.phase))

    def __repr__(self):
        return f"PeriodicConfiguration({self.word!r}, phase={self.phase})"

    def to_json(self, alphabet):
        return {"repeating_word": alphabet.format_word(self.word), "phase": self.phase}

    @classmethod
    def from_json(cls, data, alphabet):
        return cls(alphabet.word(data["repeating_word"]), int(data.get("phase", 0)))

    @classmethod
    def constant(cls, symbol_index):
        return cls((symbol_index,), 0)


class EventuallyPeriodicConfiguration:
    """Left-periodic tail, finite middle block, right-periodic tail.

    ``x[i]`` equals ``left`` repeated for ``i < mid_start``, the middle
    block on ``[mid_start, mid_start + len(mid))`` and ``right`` repeated
    from there on.  ``mid`` may be empty.
    """

    __slots__ = ("left", "mid", "right", "mid_start")

    def __init__(self, left, mid, right, mid_start=0):
        self.left = tuple(left)
        self.mid = tuple(mid)
        self.right = tuple(right)
        self.mid_start = mid_start
        if not self.left or not self.right:
            raise ValueError("periodic tails must be nonempty words")

    @property
    def mid_end(self):
        return self.mid_start + len(self.mid)

    def symbol_at(self, i):
        if i < self.mid_start:
            return self.left[(i - self.mid_start) % len(self.left)]
        if i < self.mid_end:
            return self.mid[i - self.mid_start]
        return self.right[(i - self.mid_end) % len(self.right)]

    def window(self, lo, hi):
        return tuple(self.symbol_at(i) for i in range(lo, hi))

    def step(self, rule):
        """Image under ``rule``; the non-periodic zone widens by the radius."""
        r = rule.radius
        a, b = self.mid_start, self.mid_end
        if r == 0:
            return EventuallyPeriodicConfiguration(
                tuple(rule((s,)) for s in self.left),
                tuple(rule((s,)) for s in self.mid),
                tuple(rule((s,)) for s in self.right),
                a,
            )
        left = rule.extend(self.window(a - 2 * r - len(self.left), a))
        mid = rule.extend(self.window(a - 2 * r, b + 2 * r))
        right = rule.extend(self.window(b, b + len(self.right) + 2 * r))
        return EventuallyPeriodicConfiguration(left, mid, right, a - r)

    def __eq__(self, other):
        if not isinstance(other, EventuallyPeriodicConfiguration):
            return NotImplemented
        lo = min(self.mid_start, other.mid_start) - lcm(len(self.left), len(other.left))
        hi = max(self.mid_end, other.mid_end) + lcm(len(self.right), len(other.right))
        return self.window(lo, hi) == other.window(lo, hi)

    def __hash__(self):
        # weak but consistent: hash a window that determines equality class size-wise
        lo = self.mid_start - len(self.left)
        hi = self.mid_end + len(self.right)
        return hash(self.window(lo, hi))

    def __repr__(self):
        return (
            f"EventuallyPeriodicConfiguration(left={self.left!r}, mid={self.mid!r}, "
            f"right={self.right!r}, mid_start={self.mid_start})"
        )

    def to_json(self, alphabet):
        return {
            "left_word": alphabet.format_word(self.left),
            "mid_word": alphabet.format_word(self.mid),
            "right_word": alphabet.format_word(self.right),
            "mid_start": self.mid_start,
        }

    @classmethod
    def from_json(cls, data, alphabet):
        return cls(
            alphabet.word(data["left_word"]),
            alphabet.word(data["mid_word"]),
            alphabet.word(data["right_word"]),
            int(data.get("mid_start", 0)),
        )

    def mirrored(self):
        """The configuration read right-to-left (coordinate negation)."""
        # x'[i] = x[-i]; midpoints map accordingly
        return EventuallyPeriodicConfiguration(
            tuple(reversed(self.right)),
            tuple(reversed(self.mid)),
            tuple(reversed(self.left)),
            1 - self.mid_end,
        )
