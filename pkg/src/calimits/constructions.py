"""Rule-to-rule constructions with audited certificates.

Three transformations, each returning the new automaton together with a
JSON-ready certificate block describing the audits performed:

* ``augment_spreading`` adds a fresh spreading state that absorbs the
  all-s neighborhood of an existing spreading state s, leaving every
  other neighborhood's behavior unchanged;
* ``product_collapse`` runs two automata in parallel on a product
  alphabet recoded so that the second layer disappears wherever it
  carries its spreading state;
* ``surjective_counterexample`` adds a symbol that is immediately
  rewritten into an existing one, destroying surjectivity without
  changing any forward image.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphabet import Alphabet
from .ca import CellularAutomaton, spreading_states
from .configurations import PeriodicConfiguration
from .decisions import check_surjective
from .params import DEFAULT_SPATIAL_PERIOD, DEFAULT_STEP_BUDGET
from .rules import LocalRule, words_array


class ConstructionError(ValueError):
    pass


def _fresh_name(base, taken):
    if base not in taken:
        return base
    raise ConstructionError(
        f"reserved symbol name {base!r} already present in the alphabet; rename your symbols"
    )


# ---------------------------------------------------------------------------
# spreading-state augmentation


def augment_spreading(ca, s):
    """Extend the alphabet by a fresh state s' and route to it every
    neighborhood that either touches s' or consists entirely of the
    spreading state ``s``; all other neighborhoods keep their outputs.

    The new state is spreading, and the all-s word is the only
    neighborhood of old symbols mapped to it.  The construction
    preserves nilpotency in both directions and destroys stability
    otherwise.
    """
    if isinstance(s, str):
        s = ca.alphabet.index(s)
    if s not in spreading_states(ca):
        raise ConstructionError(
            f"symbol {ca.alphabet.name(s)!r} is not a spreading state"
        )
    old = ca.alphabet
    prime_name = _fresh_name(f"{old.name(s)}_prime", old.symbols)
    new_alph = Alphabet(old.symbols + (prime_name,))
    prime = new_alph.size - 1

    r = ca.radius
    n = 2 * r + 1
    m_new = new_alph.size
    rows = words_array(m_new, n)
    all_old = (rows < prime).all(axis=1)
    all_s = (rows == s).all(axis=1)

    table = np.full(len(rows), prime, dtype=np.int64)
    old_mask = all_old & ~all_s
    if old_mask.any():
        old_powers = old.size ** np.arange(n - 1, -1, -1, dtype=np.int64)
        old_codes = rows[old_mask] @ old_powers
        table[old_mask] = ca.rule.table[old_codes]

    rule = LocalRule(new_alph, r, table)
    result = CellularAutomaton(rule)

    audit = {
        "kind": "spreading_augmentation",
        "source_spreading_state": old.name(s),
        "new_state": prime_name,
        "new_state_spreading": prime in spreading_states(result),
        "only_all_s_maps_to_new": _only_all_s_maps_to_prime(rule, s, prime),
        "old_neighborhoods_preserved": _old_neighborhoods_preserved(ca, rule, s, prime),
    }
    return result, audit


def _only_all_s_maps_to_prime(rule, s, prime):
    rows = words_array(rule.alphabet.size, rule.neighborhood_size)
    all_old = (rows < prime).all(axis=1)
    hits = rule.table[all_old] == prime
    expected = (rows[all_old] == s).all(axis=1)
    return bool((hits == expected).all())


def _old_neighborhoods_preserved(old_ca, rule, s, prime):
    rows = words_array(rule.alphabet.size, rule.neighborhood_size)
    all_old = (rows < prime).all(axis=1)
    not_all_s = ~(rows == s).all(axis=1)
    keep = all_old & not_all_s
    old_powers = old_ca.alphabet.size ** np.arange(
        rule.neighborhood_size - 1, -1, -1, dtype=np.int64
    )
    codes = rows[keep] @ old_powers
    return bool((rule.table[keep] == old_ca.rule.table[codes]).all())


def find_state_avoiding_orbit(ca, s, max_spatial=DEFAULT_SPATIAL_PERIOD,
                              max_steps=DEFAULT_STEP_BUDGET):
    """Bounded search for a spatially periodic configuration whose whole
    orbit avoids the symbol ``s``.

    When the orbit closes a cycle without ever producing ``s`` the
    avoidance holds forever and the configuration is returned; None
    means the search was exhausted (such a configuration may still
    exist: its general existence is a compactness fact, not an
    algorithm).
    """
    if isinstance(s, str):
        s = ca.alphabet.index(s)
    for p in range(1, max_spatial + 1):
        for word in ca.alphabet.all_words(p):
            if s in word:
                continue
            x = PeriodicConfiguration(word)
            seen = set()
            ok = True
            while True:
                key = x.canonical()
                if (key.word, key.phase) in seen:
                    break
                seen.add((key.word, key.phase))
                if len(seen) > max_steps:
                    ok = False
                    break
                x = x.step(ca.rule)
                if s in x.word:
                    ok = False
                    break
            if ok:
                return PeriodicConfiguration(word)
    return None


# ---------------------------------------------------------------------------
# product with a collapsing layer


@dataclass(frozen=True)
class ProductAlphabet:
    """Alphabet of the collapsed product: a bare name ``a`` stands for
    (a, s) and ``a_b`` for (a, b) with b != s."""

    alphabet: Alphabet
    first: Alphabet
    second: Alphabet
    collapse: int

    def encode(self, a, b):
        if b == self.collapse:
            return a
        shifted = b if b < self.collapse else b - 1
        return self.first.size + a * (self.second.size - 1) + shifted

    def decode(self, c):
        if c < self.first.size:
            return c, self.collapse
        c -= self.first.size
        a, shifted = divmod(c, self.second.size - 1)
        b = shifted if shifted < self.collapse else shifted + 1
        return a, b


def product_alphabet(first, second, collapse):
    """Build the recoded product alphabet, checking name collisions."""
    if isinstance(collapse, str):
        collapse = second.index(collapse)
    names = list(first.symbols)
    for a in first.symbols:
        for j, b in enumerate(second.symbols):
            if j == collapse:
                continue
            names.append(f"{a}_{b}")
    if len(set(names)) != len(names):
        raise ConstructionError(
            "product symbol names collide with existing alphabet symbols; rename your symbols"
        )
    return ProductAlphabet(Alphabet(names), first, second, collapse)


def product_collapse(ca_first, ca_second, s):
    """Parallel product of two automata over the recoded alphabet.

    ``s`` must be a spreading state of the second automaton; wherever
    the second layer carries ``s`` the recoding shows only the first
    layer's symbol.  Radii are equalized by treating the smaller-radius
    rule as a rule of the larger radius that ignores its outer cells.
    """
    if isinstance(s, str):
        s = ca_second.alphabet.index(s)
    if s not in spreading_states(ca_second):
        raise ConstructionError(
            f"symbol {ca_second.alphabet.name(s)!r} is not a spreading state of the second automaton"
        )
    prod = product_alphabet(ca_first.alphabet, ca_second.alphabet, s)
    r = max(ca_first.radius, ca_second.radius)
    f = _pad_radius(ca_first.rule, r)
    g = _pad_radius(ca_second.rule, r)

    n = 2 * r + 1
    rows = words_array(prod.alphabet.size, n)
    decoded = np.empty((len(rows), n, 2), dtype=np.int64)
    for c in range(prod.alphabet.size):
        a, b = prod.decode(c)
        mask = rows == c
        decoded[..., 0][mask] = a
        decoded[..., 1][mask] = b
    fa_powers = ca_first.alphabet.size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    fb_powers = ca_second.alphabet.size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    outs_a = f.table[decoded[..., 0] @ fa_powers]
    outs_b = g.table[decoded[..., 1] @ fb_powers]
    table = np.array(
        [prod.encode(int(a), int(b)) for a, b in zip(outs_a, outs_b)], dtype=np.int64
    )
    rule = LocalRule(prod.alphabet, r, table)
    result = CellularAutomaton(rule)
    audit = {
        "kind": "product_collapse",
        "collapse_state": ca_second.alphabet.name(s),
        "radius": r,
        "alphabet_size": prod.alphabet.size,
        "decode_encode_roundtrip": all(
            prod.encode(*prod.decode(c)) == c for c in range(prod.alphabet.size)
        ),
        "symbol_names": list(prod.alphabet.symbols),
    }
    return result, prod, audit


def _pad_radius(rule, r):
    """View a rule as one of larger radius by ignoring the outer cells."""
    if rule.radius == r:
        return rule
    if rule.radius > r:
        raise ConstructionError("cannot shrink a rule's radius")
    m = rule.alphabet.size
    pad = r - rule.radius
    rows = words_array(m, 2 * r + 1)
    inner = rows[:, pad : 2 * r + 1 - pad]
    powers = m ** np.arange(inner.shape[1] - 1, -1, -1, dtype=np.int64)
    return LocalRule(rule.alphabet, r, rule.table[inner @ powers].copy())


# ---------------------------------------------------------------------------
# surjectivity counterexample


def surjective_counterexample(ca, a, new_symbol="b"):
    """Add a fresh symbol that the rule reads as ``a``; the result is
    never surjective (the new symbol has no preimage) yet its forward
    image is the original full shift, so the limit set is untouched.

    Requires the input automaton to be surjective.
    """
    if isinstance(a, str):
        a = ca.alphabet.index(a)
    surj = check_surjective(ca)
    if not surj.is_true:
        raise ConstructionError("the source automaton must be surjective")
    old = ca.alphabet
    name = _fresh_name(new_symbol, old.symbols)
    new_alph = Alphabet(old.symbols + (name,))
    fresh = new_alph.size - 1

    n = ca.rule.neighborhood_size
    rows = words_array(new_alph.size, n)
    substituted = np.where(rows == fresh, a, rows)
    powers = old.size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    table = ca.rule.table[substituted @ powers]
    rule = LocalRule(new_alph, ca.radius, table.copy())
    result = CellularAutomaton(rule)
    audit = {
        "kind": "surjective_counterexample",
        "substituted_to": old.name(a),
        "new_symbol": name,
        "source_surjective": True,
        "new_symbol_unreachable": bool((table != fresh).all()),
    }
    return result, audit
