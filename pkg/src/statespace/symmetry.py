"""Successor canonicalization through the model's symmetry representative.

With symmetry reduction on, the engine maps the initial state and the
result of every successful firing to a representative before interning.
States with the same representative merge, so the stored graph is a
quotient of the full one; trace edges may therefore contain symmetry
swaps (the printed successor is a symmetric stand-in for the real one).
"""

from .model import ModelContractError, ModelError


def canonicalize(model, state, debug=False):
    """Replace `state` in place by its representative.

    With debug on, applying the representative a second time must be a
    fixed point; a model whose mapping is not idempotent would silently
    split orbits, so that is reported as a contract fault.
    """
    model.symmetry_representative(state)
    if model.err_msg is not None:
        raise ModelError(model.err_msg)
    if debug:
        again = list(state)
        model.symmetry_representative(again)
        if model.err_msg is not None:
            raise ModelError(model.err_msg)
        if again != state:
            raise ModelContractError("symmetry_representative is not idempotent")
