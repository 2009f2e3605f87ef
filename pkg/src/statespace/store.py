"""Interning store that assigns dense indices to packed states.

Indices follow first-interning order: the initial state gets 0, each
previously unseen state gets the next free index. Each state optionally
carries a (predecessor index, transition) record so that shortest
breadth-first paths can be reconstructed later.
"""

from array import array


class StateStore:
    """States are tuples of unsigned words, interned once each."""

    def __init__(self):
        self.states = []  # index -> state tuple
        self.index = {}  # state tuple -> index
        self._pred_state = array("q")
        self._pred_trans = array("q")

    def __len__(self):
        return len(self.states)

    def intern(self, state, pred=(-1, -1)):
        """Return (index, is_new); `pred` is recorded only for new states."""
        key = tuple(state)
        idx = self.index.get(key)
        if idx is not None:
            return idx, False
        idx = len(self.states)
        self.index[key] = idx
        self.states.append(key)
        self._pred_state.append(pred[0])
        self._pred_trans.append(pred[1])
        return idx, True

    def pred(self, idx):
        """(predecessor index, transition) that first reached idx, or None for the root."""
        p = self._pred_state[idx]
        if p < 0:
            return None
        return p, self._pred_trans[idx]

    def bookkeeping_words(self):
        """Number of integers held per run beyond the packed state words themselves."""
        return len(self._pred_state) + len(self._pred_trans) + len(self.index)
