"""Stage 1: breadth-first state-space construction with on-the-fly checks.

States are processed in discovery order, which makes the store's index
order a breadth-first order and keeps counterexamples shortest. For each
dequeued state the engine fires either all transitions (plain mode) or
the enabled members of a stubborn selection, canonicalizes successors
when symmetry is on, interns them, and checks every newly interned state
with check_state. A state where none of the m transitions is enabled is
terminal and goes through check_deadlock. The first failing check ends
the run with its verdict.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .model import ModelError, fire_checked
from .store import StateStore
from .symmetry import canonicalize

log = logging.getLogger(__name__)

PASS = "pass"
SAFETY_ERROR = "safety_error"
DEADLOCK_ERROR = "deadlock_error"
MODEL_ERROR = "model_error"
LIMIT_EXCEEDED = "limit_exceeded"


@dataclass
class ExplorationResult:
    store: StateStore
    edges: int
    verdict: str
    message: str | None = None
    error_index: int | None = None
    #: per-state (transition, successor index) firings; kept only on request,
    #: everything downstream recomputes them by re-firing
    fired: list | None = field(default=None, repr=False)

    @property
    def states(self):
        return len(self.store)


def explore(plan, record_fired=False):
    """Run stage 1 for a validated plan and return an ExplorationResult."""
    model = plan.model
    m = plan.m
    store = StateStore()
    states = store.states
    index = store.index
    pred_s = store._pred_state
    pred_t = store._pred_trans
    if plan.debug_checks:
        fire = lambda s, t: fire_checked(model, s, t)  # noqa: E731
    else:
        fire = model.fire
    check_state = model.check_state if plan.chk_state else None
    check_deadlock = model.check_deadlock if plan.chk_deadlock else None
    symmetry = plan.symmetry
    debug = plan.debug_checks
    stop = plan.stop_cnt or 0
    stubborn_mode = plan.stubborn
    if stubborn_mode:
        from .stubborn import check_closure_soundness, select_stubborn
    fired = [] if record_fired else None
    edges = 0
    log.info("stage 1: breadth-first exploration (%d transitions)", m)

    work = list(plan.initial)
    try:
        if symmetry:
            canonicalize(model, work, debug)
        key = tuple(work)
        states.append(key)
        index[key] = 0
        pred_s.append(-1)
        pred_t.append(-1)
        if check_state is not None:
            msg = check_state(work)
            if model.err_msg is not None:
                raise ModelError(model.err_msg)
            if msg is not None:
                return ExplorationResult(store, 0, SAFETY_ERROR, msg, 0, fired)

        all_transitions = tuple(range(m))
        index_get = index.get
        states_append = states.append
        nstates = 1
        cursor = 0
        while cursor < nstates:
            base = states[cursor]
            work[:] = base
            out = [] if record_fired else None
            if stubborn_mode:
                sel = select_stubborn(model, work, m, base)
                if sel is None:
                    fire_list = ()
                    enabled_any = False
                else:
                    if debug:
                        check_closure_soundness(model, work, sel, m)
                    fire_list = sel.enabled
                    enabled_any = True
            else:
                fire_list = all_transitions
                enabled_any = False
            for t in fire_list:
                enabled = fire(work, t)
                if model.err_msg is not None:
                    raise ModelError(model.err_msg)
                if not enabled:
                    continue
                enabled_any = True
                edges += 1
                if symmetry:
                    canonicalize(model, work, debug)
                key = tuple(work)
                j = index_get(key)
                if j is None:
                    j = nstates
                    index[key] = j
                    states_append(key)
                    pred_s.append(cursor)
                    pred_t.append(t)
                    nstates += 1
                    if check_state is not None:
                        msg = check_state(work)
                        if model.err_msg is not None:
                            raise ModelError(model.err_msg)
                        if msg is not None:
                            return ExplorationResult(store, edges, SAFETY_ERROR, msg, j, fired)
                    if stop and nstates > stop:
                        return ExplorationResult(store, edges, LIMIT_EXCEEDED, None, None, fired)
                if record_fired:
                    out.append((t, j))
                work[:] = base
            if not enabled_any and check_deadlock is not None:
                msg = check_deadlock(work)
                if model.err_msg is not None:
                    raise ModelError(model.err_msg)
                if msg is not None:
                    return ExplorationResult(store, edges, DEADLOCK_ERROR, msg, cursor, fired)
            if record_fired:
                fired.append(out)
            cursor += 1
    except ModelError as exc:
        return ExplorationResult(store, edges, MODEL_ERROR, str(exc), None, fired)
    log.info("stage 1 done: %d states, %d edges", nstates, edges)
    return ExplorationResult(store, edges, PASS, None, None, fired)


def successors_of(plan, store, u):
    """Replay the stage-1 firings of state u: (transition, successor index) pairs.

    Uses the same transition selection and canonicalization as stage 1, so
    over all states it reproduces exactly the stage-1 edge multiset. An empty
    result means u is terminal.
    """
    model = plan.model
    base = store.states[u]
    work = list(base)
    if plan.stubborn:
        from .stubborn import select_stubborn

        sel = select_stubborn(model, work, plan.m, base)
        fire_list = sel.enabled if sel is not None else ()
    else:
        fire_list = range(plan.m)
    fire = model.fire
    index_get = store.index.get
    out = []
    for t in fire_list:
        enabled = fire(work, t)
        if model.err_msg is not None:
            raise ModelError(model.err_msg)
        if not enabled:
            continue
        if plan.symmetry:
            canonicalize(model, work)
        v = index_get(tuple(work))
        if v is None:
            raise RuntimeError(f"replay of state {u} reached a state not seen in stage 1")
        out.append((t, v))
        work[:] = base
    return out


def counterexample(result, target):
    """Indices of the breadth-first tree path from the initial state to target."""
    store = result.store
    path = [target]
    i = target
    while i != 0:
        p = store.pred(i)
        if p is None:
            raise ValueError(f"state {i} has no predecessor record")
        i = p[0]
        path.append(i)
    path.reverse()
    return path


def stats_line(result):
    return f"{len(result.store)} states, {result.edges} edges"
