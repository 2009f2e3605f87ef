"""Stubborn set reduction: fire only a closed set of transitions per state.

The model supplies state-dependent obligation rules through
``next_stubborn(state, t, emitter)``: "if t is in the set, these must be
too". A stubborn set is any set closed under those rules that contains
an enabled transition. Per state the engine trial-fires all transitions
to find the enabled ones, computes the obligation closure of each
enabled root, and keeps the closure with the fewest enabled members
(ties: lowest root). Only the enabled members of that closure are fired.

Reduction preserves the set of terminal states. Safety and progress
results are only trustworthy when, in addition, a terminal state stays
reachable from everywhere, so after an otherwise clean reduced run the
engine verifies exactly that with a backward search from the terminal
states and reports a trace into a non-terminating cycle if it fails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .explorer import counterexample, successors_of
from .model import ModelContractError, ModelError
from .progress import CheckError, backward_reach

log = logging.getLogger(__name__)


class ObligationEmitter:
    """Collects the obligations one next_stubborn call emits."""

    __slots__ = ("collected", "all_flag")

    def __init__(self):
        self.collected = set()
        self.all_flag = False

    def stb(self, *transitions):
        """These transitions must also be in the stubborn set."""
        self.collected.update(transitions)

    def stb_all(self):
        """Give up on reduction for this state: the set becomes all transitions."""
        self.all_flag = True


@dataclass(frozen=True)
class StubbornSelection:
    transitions: frozenset
    enabled: tuple  # enabled members, ascending


def _emissions(model, state, t, m, cache):
    got = cache.get(t)
    if got is None:
        emitter = ObligationEmitter()
        model.next_stubborn(state, t, emitter)
        if model.err_msg is not None:
            raise ModelError(model.err_msg)
        for u in emitter.collected:
            if not 0 <= u < m:
                raise ModelContractError(f"next_stubborn({t}) emitted invalid transition {u}")
        got = (emitter.all_flag, frozenset(emitter.collected))
        cache[t] = got
    return got


def _closure(model, state, root, m, cache):
    seen = {root}
    stack = [root]
    while stack:
        all_flag, required = _emissions(model, state, stack.pop(), m, cache)
        if all_flag:
            return set(range(m))
        for u in required:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def closure(model, state, root, m):
    """Smallest set containing root and closed under the obligations in this state."""
    return _closure(model, state, root, m, {})


def select_stubborn(model, state, m, base=None):
    """Pick the stubborn set to fire in this state, or None if it is terminal.

    `state` must be a scratch copy of `base` (defaults to a snapshot); the
    trial firings restore it. Deterministic: roots are tried in ascending
    order and the first minimal-enabled-count closure wins.
    """
    if base is None:
        base = tuple(state)
    fire = model.fire
    enabled = []
    for t in range(m):
        if fire(state, t):
            enabled.append(t)
            state[:] = base
        if model.err_msg is not None:
            raise ModelError(model.err_msg)
    if not enabled:
        return None
    cache = {}
    best = None
    best_count = m + 1
    for root in enabled:
        cl = _closure(model, state, root, m, cache)
        count = sum(1 for t in enabled if t in cl)
        if count < best_count:
            best = cl
            best_count = count
            if count == 1:
                break
    return StubbornSelection(frozenset(best), tuple(t for t in enabled if t in best))


def check_closure_soundness(model, state, selection, m):
    """Re-evaluate the rules for every member: emissions must stay inside the set."""
    cache = {}
    for t in sorted(selection.transitions):
        all_flag, required = _emissions(model, state, t, m, cache)
        if all_flag:
            if len(selection.transitions) != m:
                raise ModelContractError(
                    f"transition {t} demands the full set but the selection is smaller"
                )
            continue
        leaked = required - selection.transitions
        if leaked:
            raise ModelContractError(
                f"obligations of transition {t} leak outside the stubborn set: {sorted(leaked)}"
            )


def check_ag_ef_terminating(plan, result, rg):
    """None if a terminal state is reachable from every stored state, else a CheckError.

    On failure the counterexample shows the path to the lowest-indexed state
    that cannot terminate, then walks first-fired successors inside the
    non-terminating region until a state repeats, exposing a cycle.
    """
    log.info("checking that termination stays reachable")
    store = result.store
    n = len(store)
    marked = backward_reach(rg, rg.terminal_states)
    if len(marked) == n:
        return None
    worst = min(i for i in range(n) if i not in marked)
    path = counterexample(result, worst)
    seq = [worst]
    position = {worst: 0}
    current = worst
    while True:
        succ = successors_of(plan, store, current)
        nxt = succ[0][1]
        at = position.get(nxt)
        if at is not None:
            cycle_start = at
            break
        position[nxt] = len(seq)
        seq.append(nxt)
        current = nxt
    return CheckError(
        "State was reached from which termination is unreachable",
        stem=path[:-1],
        trap=seq[:cycle_start],
        cycle=seq[cycle_start:],
    )
