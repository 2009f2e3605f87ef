"""Stage 2: reversed-edge graph and the progress checks over it.

The reversed graph is rebuilt from the model rather than recorded during
stage 1: two passes over the stored states re-fire exactly the stage-1
transition selections, the first pass counting in-degrees and the second
filling a flat target array. That costs one integer per edge instead of
two, at the price of firing everything twice.

Checks:

* may progress - every reachable state must be able to reach a terminal
  state or a state accepted by is_may_progress. Checked with one backward
  search from those seeds along the reversed edges.
* must progress - no cycle may avoid is_must_progress-accepted states.
  Checked with a depth-first search restricted to non-accepted states.
"""

from __future__ import annotations

import logging
from array import array
from dataclasses import dataclass

from .explorer import counterexample, successors_of
from .model import ModelError

log = logging.getLogger(__name__)


@dataclass
class ReverseGraph:
    """Predecessor lists in compressed form: one array entry per edge."""

    offsets: array
    targets: array
    terminal_states: frozenset

    def predecessors(self, v):
        """Predecessor indices of v, with edge multiplicity."""
        return self.targets[self.offsets[v] : self.offsets[v + 1]]

    def edge_count(self):
        return len(self.targets)


@dataclass
class CheckError:
    """A failed graph check, with the pieces of its counterexample.

    The transcript prints `stem`, then a ten-'=' marker and `trap` when
    present, then a ten-'-' marker and `cycle` when present, then the
    message. All three hold state indices.
    """

    message: str
    stem: list
    trap: list | None = None
    cycle: list | None = None


def build_reverse(plan, result):
    """Reconstruct all stage-1 edges in reverse direction.

    Raises RuntimeError if the replay does not reproduce the stage-1 edge
    count exactly; that would mean the model or selection is not
    deterministic.
    """
    store = result.store
    n = len(store)
    log.info("stage 2: building reversed edges for %d states", n)
    indeg = array("q", bytes(8 * n))
    terminal = []
    total = 0
    for u in range(n):
        succ = successors_of(plan, store, u)
        if not succ:
            terminal.append(u)
        total += len(succ)
        for _, v in succ:
            indeg[v] += 1
    if total != result.edges:
        raise RuntimeError(
            f"edge replay mismatch: stage 1 fired {result.edges} edges, replay {total}"
        )
    offsets = array("q", bytes(8 * (n + 1)))
    for v in range(n):
        offsets[v + 1] = offsets[v] + indeg[v]
    cursor = array("q", offsets[:n])
    targets = array("q", bytes(8 * total))
    for u in range(n):
        for _, v in successors_of(plan, store, u):
            targets[cursor[v]] = u
            cursor[v] += 1
    return ReverseGraph(offsets, targets, frozenset(terminal))


def backward_reach(rg, seeds):
    """All states from which some seed is forward-reachable."""
    offsets = rg.offsets
    targets = rg.targets
    marked = set(seeds)
    stack = list(marked)
    while stack:
        v = stack.pop()
        for k in range(offsets[v], offsets[v + 1]):
            u = targets[k]
            if u not in marked:
                marked.add(u)
                stack.append(u)
    return marked


def _evaluate(model, predicate, states):
    out = bytearray(len(states))
    for i, key in enumerate(states):
        if predicate(key):
            out[i] = 1
        if model.err_msg is not None:
            raise ModelError(model.err_msg)
    return out


def check_may_progress(plan, result, rg):
    """None if every state can still make progress, else a CheckError.

    The error names the lowest-indexed state from which neither a terminal
    state nor an is_may_progress state is reachable, with its shortest path.
    """
    log.info("checking may progress")
    store = result.store
    accepted = _evaluate(plan.model, plan.model.is_may_progress, store.states)
    seeds = set(rg.terminal_states)
    seeds.update(i for i in range(len(store)) if accepted[i])
    marked = backward_reach(rg, seeds)
    if len(marked) == len(store):
        return None
    worst = min(i for i in range(len(store)) if i not in marked)
    return CheckError("May progress violated", stem=counterexample(result, worst))


def _forward_adjacency(rg):
    n = len(rg.offsets) - 1
    adj = [[] for _ in range(n)]
    offsets = rg.offsets
    targets = rg.targets
    for v in range(n):
        for k in range(offsets[v], offsets[v + 1]):
            adj[targets[k]].append(v)
    return adj


def check_must_progress(plan, result, rg):
    """None if every cycle visits an is_must_progress state, else a CheckError.

    Runs an iterative three-color depth-first search over the subgraph of
    non-accepted states; the first back edge found yields the cycle.
    """
    log.info("checking must progress")
    store = result.store
    n = len(store)
    bad = _evaluate(plan.model, lambda s: not plan.model.is_must_progress(s), store.states)
    adj = _forward_adjacency(rg)
    color = bytearray(n)  # 0 unvisited, 1 on stack, 2 done
    for start in range(n):
        if not bad[start] or color[start]:
            continue
        color[start] = 1
        stack = [(start, iter(adj[start]))]
        path = [start]
        while stack:
            node, succ_iter = stack[-1]
            advanced = False
            for v in succ_iter:
                if not bad[v]:
                    continue
                if color[v] == 1:
                    cycle = path[path.index(v) :]
                    stem = counterexample(result, cycle[0])
                    return CheckError("Must progress violated", stem=stem[:-1], cycle=cycle)
                if color[v] == 0:
                    color[v] = 1
                    stack.append((v, iter(adj[v])))
                    path.append(v)
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                path.pop()
                color[node] = 2
    return None
