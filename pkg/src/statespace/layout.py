"""Bit-packed state vectors: variable declarations and their word layout.

A state is a sequence of fixed-width unsigned words. State variables are
declared with an element count and a width in bits, and are packed into
the words in declaration order. A declaration is placed as one unit: if
all of its bits fit into the unused tail of the most recently used word,
it goes there; otherwise it starts a fresh word and may span as many
whole words as it needs. An element never straddles a word boundary
(it starts at the next word instead, and the skipped bits stay zero).
Because every unassigned bit is zero, two states are equal exactly when
their word sequences are equal.

The declaration order matters for memory: for 64-bit words,
``x:1x3, A:16x4, y:1x1`` needs three words while ``A:16x4, x:1x3, y:1x1``
needs only two.
"""

from __future__ import annotations

from dataclasses import dataclass


class LayoutError(ValueError):
    """A declaration cannot be laid out (zero width, too wide, duplicate name)."""


@dataclass(frozen=True)
class VarDecl:
    """One state variable: `count` unsigned elements of `bits` bits each.

    Scalars are arrays of length 1. Element values range over
    0 .. 2**bits - 1 and start at 0.
    """

    name: str
    count: int = 1
    bits: int = 8

    def __post_init__(self):
        if self.count < 1:
            raise LayoutError(f"{self.name}: element count must be positive, got {self.count}")
        if self.bits < 1:
            raise LayoutError(f"{self.name}: bit width must be positive, got {self.bits}")


class StateLayout:
    """Fixed placement of declared variables inside a word vector.

    Placement is a pure function of (word_width, declaration order), so two
    layouts built from the same inputs are interchangeable.
    """

    def __init__(self, word_width, decls, placements, positions):
        self.word_width = word_width
        self.decls = tuple(decls)
        #: per declaration: (start word, start bit)
        self.placements = tuple(placements)
        self.total_words = 0
        self._fields = {}
        for decl, pos in zip(self.decls, positions):
            self._fields[decl.name] = (decl, (1 << decl.bits) - 1, tuple(pos))
            self.total_words = max(self.total_words, pos[-1][0] + 1)

    def __repr__(self):
        vars_ = ", ".join(d.name for d in self.decls)
        return f"StateLayout({self.total_words} x u{self.word_width}: {vars_})"

    def new_state(self):
        """A fresh all-zero state vector."""
        return [0] * self.total_words

    def decl(self, name):
        return self._fields[name][0]

    def positions(self, name):
        """(word, shift) of every element of a variable."""
        return self._fields[name][2]

    def read(self, state, name, element=0):
        decl, mask, pos = self._fields[name]
        if not 0 <= element < decl.count:
            raise IndexError(f"{name}[{element}]: index out of range (count {decl.count})")
        word, shift = pos[element]
        return (state[word] >> shift) & mask

    def write(self, state, name, element, value):
        decl, mask, pos = self._fields[name]
        if not 0 <= element < decl.count:
            raise IndexError(f"{name}[{element}]: index out of range (count {decl.count})")
        if not 0 <= value <= mask:
            raise ValueError(f"{name}[{element}] = {value}: out of range for {decl.bits} bits")
        word, shift = pos[element]
        state[word] = (state[word] & ~(mask << shift)) | (value << shift)

    def accessors(self, name):
        """A bound (get, set) closure pair for one variable.

        These are the fast path used inside model callbacks; unlike read and
        write they do not re-validate the element index on every call.
        """
        decl, mask, pos = self._fields[name]

        def get(state, element=0):
            word, shift = pos[element]
            return (state[word] >> shift) & mask

        def set_(state, element, value):
            if not 0 <= value <= mask:
                raise ValueError(f"{name}[{element}] = {value}: out of range for {decl.bits} bits")
            word, shift = pos[element]
            state[word] = (state[word] & ~(mask << shift)) | (value << shift)

        return get, set_


def build_layout(word_width, decls):
    """Pack the declarations into `word_width`-bit words, in order.

    The most recently used word keeps accepting declarations as long as they
    fit entirely into its unused bits; anything larger starts a fresh word.
    Raises LayoutError for widths outside 1..word_width or duplicate names.
    """
    if word_width not in (32, 64):
        raise LayoutError(f"word width must be 32 or 64, got {word_width}")
    placements = []
    positions = []
    seen = set()
    words_used = 0
    cur_bit = word_width  # no free bits before the first word exists
    for decl in decls:
        if decl.bits > word_width:
            raise LayoutError(
                f"{decl.name}: {decl.bits} bits does not fit a {word_width}-bit word"
            )
        if decl.name in seen:
            raise LayoutError(f"{decl.name}: duplicate declaration")
        seen.add(decl.name)
        need = decl.count * decl.bits
        if words_used > 0 and need <= word_width - cur_bit:
            word, bit = words_used - 1, cur_bit
        else:
            word, bit = words_used, 0
        placements.append((word, bit))
        pos = []
        for _ in range(decl.count):
            if bit + decl.bits > word_width:
                word += 1
                bit = 0
            pos.append((word, bit))
            bit += decl.bits
        positions.append(pos)
        words_used = word + 1
        cur_bit = bit
    return StateLayout(word_width, decls, placements, positions)
