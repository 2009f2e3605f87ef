"""Demand-driven token ring: n customers, n servers, one circulating token.

Customer i may request access to a critical section, leave it again, or
terminate for good from its idle state. Only the server holding the token
may grant access to its own customer. The token is passed on demand: a
server that needs it raises a wait flag, and wait information travels
against the token's direction.

State variables (2 bits unless noted):

* ``C[i]`` customer i: 0 idle, 1 requested, 2 critical, 3 terminated
* ``S[i]`` server i: 0 idle, 1 waiting for token, 2 waiting for customer
* ``T[i]`` (1 bit) server i holds the token
* ``c0now`` (8 bits, only with symm_must) current index of the original
  customer 0, maintained across symmetry rotations

Transition numbering (m = 3n): 0..n-1 customer i requests or leaves,
n..2n-1 customer i-n terminates, 2n..3n-1 server i-2n acts.

Variants:

* ``correct`` - the ring as described.
* ``faulty_guard`` - an idle server also reacts to a waiting successor
  that already holds the token. Safety still holds, but the reduced
  search with stubborn sets runs into states from which termination has
  become unreachable.
* ``modified_progress`` - a server whose customer left the critical
  section keeps the token and returns to waiting instead of passing it
  on; a requesting neighbour can then starve, which must-progress
  checking detects.
"""

from __future__ import annotations

from ..layout import VarDecl
from ..model import Model

VARIANTS = ("correct", "faulty_guard", "modified_progress")

_CUSTOMER_CHARS = "-RC "  # index 3 (terminated) prints as a blank
_SERVER_CHARS = "iwt"


class TokenRing(Model):
    name = "tokenring"
    enabled_checks = frozenset({"chk_state", "chk_deadlock"})

    def __init__(self, n=6, variant="correct", symm_must=False):
        if n < 2:
            raise ValueError(f"ring size must be at least 2, got {n}")
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
        if symm_must and n > 256:
            raise ValueError("c0now is 8 bits wide, symm_must supports n <= 256")
        self.n = n
        self.variant = variant
        self.symm_must = symm_must
        self._faulty_guard = variant == "faulty_guard"
        self._keeps_token = variant == "modified_progress"

    def declarations(self):
        n = self.n
        decls = [VarDecl("C", n, 2), VarDecl("S", n, 2), VarDecl("T", n, 1)]
        if self.symm_must:
            decls.append(VarDecl("c0now", 1, 8))
        return decls

    def bind(self, layout):
        super().bind(layout)
        self._getC, self._setC = layout.accessors("C")
        self._getS, self._setS = layout.accessors("S")
        self._getT, self._setT = layout.accessors("T")
        if self.symm_must:
            self._getC0, self._setC0 = layout.accessors("c0now")

    def init(self, state):
        self._setT(state, 1, 1)
        return 3 * self.n

    def fire(self, state, t):
        n = self.n
        getC = self._getC
        if t >= 2 * n:
            # server i
            i = t - 2 * n
            getS = self._getS
            setS = self._setS
            getT = self._getT
            nxt = i + 1
            if nxt == n:
                nxt = 0
            s = getS(state, i)
            if s == 0:
                # react to own customer requesting or to a waiting successor
                if getC(state, i) == 1 or (
                    getS(state, nxt) == 1
                    and (self._faulty_guard or not getT(state, nxt))
                ):
                    setS(state, i, 1)
                    return True
                return False
            if s == 1:
                if not getT(state, i):
                    return False
                if getC(state, i) == 1:
                    self._setC(state, i, 2)
                    setS(state, i, 2)
                    return True
                if getS(state, nxt) == 1:
                    self._setT(state, i, 0)
                    self._setT(state, nxt, 1)
                    setS(state, i, 0)
                    return True
                return False
            if s == 2:
                if getC(state, i) == 2:
                    return False
                if self._keeps_token:
                    setS(state, i, 1)
                    return True
                self._setT(state, i, 0)
                self._setT(state, nxt, 1)
                setS(state, i, 0)
                return True
            self.err_msg = "Illegal local state"
            return False
        if t >= n:
            # customer i terminates
            i = t - n
            if getC(state, i) == 0:
                self._setC(state, i, 3)
                return True
            return False
        # customer t requests access or leaves the critical section
        c = getC(state, t)
        if c == 0:
            self._setC(state, t, 1)
            return True
        if c == 2:
            self._setC(state, t, 0)
            return True
        return False

    def format_state(self, state):
        getC = self._getC
        getS = self._getS
        getT = self._getT
        parts = []
        for i in range(self.n):
            parts.append(_CUSTOMER_CHARS[getC(state, i)])
            parts.append(_SERVER_CHARS[getS(state, i)])
            parts.append("*" if getT(state, i) else " ")
        return "".join(parts)

    def check_state(self, state):
        getC = self._getC
        critical = 0
        for i in range(self.n):
            if getC(state, i) == 2:
                critical += 1
                if critical >= 2:
                    return "Mutual exclusion violated"
        return None

    def check_deadlock(self, state):
        getC = self._getC
        for i in range(self.n):
            if getC(state, i) != 3:
                return "Customer not terminated"
        return None

    def is_must_progress(self, state):
        c0 = self._getC0(state) if self.symm_must else 0
        return self._getC(state, c0) != 1

    def next_stubborn(self, state, t, emitter):
        n = self.n
        getC = self._getC
        getS = self._getS
        getT = self._getT
        stb = emitter.stb
        if t >= 2 * n:
            i = t - 2 * n
            nxt = i + 1
            if nxt == n:
                nxt = 0
            s = getS(state, i)
            if s == 0:
                # mirrors the firing guard, including the variant's weakening
                if getC(state, i) == 1 or (
                    getS(state, nxt) == 1
                    and (self._faulty_guard or not getT(state, nxt))
                ):
                    return
                stb(i, nxt + 2 * n)
                return
            if s == 1:
                if not getT(state, i):
                    prv = i - 1 if i else n - 1
                    stb(prv + 2 * n)
                    return
                if getC(state, i) == 1:
                    return
                if getS(state, nxt) == 1:
                    stb(i)
                    return
                stb(i, nxt + 2 * n)
                return
            if s == 2:
                if getC(state, i) == 2:
                    stb(i)
                return
            return
        if t >= n:
            stb(t - n)
            return
        c = getC(state, t)
        if c == 0:
            stb(t + n, t + 2 * n)
        elif c == 1:
            stb(t + 2 * n)
        elif c == 2:
            emitter.stb_all()

    def symmetry_representative(self, state):
        n = self.n
        getT = self._getT
        i = 0
        while not getT(state, i):
            i += 1
        i = i - 1 if i else n - 1
        if not i:
            return
        for get, set_ in ((self._getC, self._setC), (self._getS, self._setS), (self._getT, self._setT)):
            rotated = [get(state, (i + j) % n) for j in range(n)]
            for j in range(n):
                set_(state, j, rotated[j])
        if self.symm_must:
            self._setC0(state, 0, (self._getC0(state) + n - i) % n)
