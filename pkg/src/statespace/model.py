"""The model contract and run configuration.

A model is an ordinary Python object that declares its state variables
and implements a handful of callbacks over packed state vectors. The
engine owns exploration; the model owns meaning. Required callbacks:

* ``declarations()`` - the state variables, in packing order.
* ``init(state)`` - mutate the fresh all-zero initial state if needed and
  return the number of transitions m. Transitions are numbered 0..m-1.
* ``fire(state, t)`` - attempt transition t: return True and mutate the
  state if t is enabled, return False and leave the state untouched
  otherwise. Firing is deterministic, and a disabled transition must not
  change the state (that lets the engine retry on the same buffer).
* ``format_state(state)`` - one text line for counterexample output.

Optional capabilities, detected by presence:

* ``check_state(state)`` - message string if the state is bad, else None.
* ``check_deadlock(state)`` - message if this terminal state is illegal.
* ``is_may_progress(state)`` / ``is_must_progress(state)`` - progress
  predicates for the stage-2 graph checks.
* ``next_stubborn(state, t, emitter)`` - obligation rules for stubborn
  set reduction.
* ``symmetry_representative(state)`` - mutate the state to a symmetric
  representative, for symmetry reduction.

A model may assign a string to ``err_msg`` during any callback to flag an
inconsistency it believes impossible; the engine notices after the
callback returns and aborts the run with that message.
"""

from __future__ import annotations

from dataclasses import dataclass

from .layout import LayoutError, build_layout


class ConfigError(Exception):
    """The run configuration asks for something the model does not provide."""


class ModelError(Exception):
    """The model flagged an internal inconsistency through err_msg."""


class ModelContractError(Exception):
    """The model broke an engine-checked contract (disabled purity, idempotence)."""


class Model:
    """Base class for checkable models. Subclasses add capabilities as plain methods."""

    name = "model"
    #: check flags switched on by default when the capability exists,
    #: e.g. frozenset({"chk_state", "chk_deadlock"})
    enabled_checks: frozenset = frozenset()
    #: assign a string here from any callback to abort the run
    err_msg = None
    layout = None

    def declarations(self):
        raise NotImplementedError

    def bind(self, layout):
        """Called once with the computed layout, before init. Cache accessors here."""
        self.layout = layout

    def init(self, state):
        raise NotImplementedError

    def fire(self, state, t):
        raise NotImplementedError

    def format_state(self, state):
        raise NotImplementedError


@dataclass
class RunConfig:
    """Runtime switches; None check flags fall back to the model's defaults."""

    stubborn: bool = False
    symmetry: bool = False
    chk_state: bool | None = None
    chk_deadlock: bool | None = None
    chk_may_progress: bool | None = None
    chk_must_progress: bool | None = None
    stop_cnt: int | None = None
    debug_checks: bool = False
    word_width: int = 64


@dataclass
class RunPlan:
    """A validated configuration: resolved flags, layout, and the initial state."""

    model: Model
    layout: object
    m: int
    initial: tuple
    stubborn: bool
    symmetry: bool
    chk_state: bool
    chk_deadlock: bool
    chk_may_progress: bool
    chk_must_progress: bool
    stop_cnt: int | None
    debug_checks: bool


_CHECK_CAPABILITIES = {
    "chk_state": "check_state",
    "chk_deadlock": "check_deadlock",
    "chk_may_progress": "is_may_progress",
    "chk_must_progress": "is_must_progress",
}


def provides(model, capability):
    return callable(getattr(model, capability, None))


def validate(model, cfg=None):
    """Check the configuration against the model and produce a run plan.

    Builds the layout, binds it to the model, and runs init exactly once on
    a fresh all-zero state. Raises ConfigError for impossible requests and
    ModelError if init sets err_msg.
    """
    if cfg is None:
        cfg = RunConfig()
    if cfg.word_width not in (32, 64):
        raise ConfigError(f"word width must be 32 or 64, got {cfg.word_width}")
    if cfg.stop_cnt is not None and cfg.stop_cnt < 1:
        raise ConfigError(f"stop_cnt must be positive, got {cfg.stop_cnt}")

    flags = {}
    for flag, cap in _CHECK_CAPABILITIES.items():
        want = getattr(cfg, flag)
        have = provides(model, cap)
        if want is None:
            want = have and flag in model.enabled_checks
        elif want and not have:
            raise ConfigError(f"{flag}: model {model.name!r} does not provide {cap}")
        flags[flag] = bool(want)
    if cfg.stubborn and not provides(model, "next_stubborn"):
        raise ConfigError(f"stubborn: model {model.name!r} does not provide next_stubborn")
    if cfg.symmetry and not provides(model, "symmetry_representative"):
        raise ConfigError(
            f"symmetry: model {model.name!r} does not provide symmetry_representative"
        )

    try:
        layout = build_layout(cfg.word_width, model.declarations())
    except LayoutError as exc:
        raise ConfigError(f"layout: {exc}") from exc
    model.bind(layout)
    state = layout.new_state()
    m = model.init(state)
    if model.err_msg is not None:
        raise ModelError(model.err_msg)
    if not isinstance(m, int) or m < 0:
        raise ConfigError(f"init returned an invalid transition count: {m!r}")
    return RunPlan(
        model=model,
        layout=layout,
        m=m,
        initial=tuple(state),
        stubborn=cfg.stubborn,
        symmetry=cfg.symmetry,
        stop_cnt=cfg.stop_cnt,
        debug_checks=cfg.debug_checks,
        **flags,
    )


def fire_checked(model, state, t):
    """fire, plus verification that a disabled transition left the state untouched."""
    before = list(state)
    enabled = model.fire(state, t)
    if not enabled and state != before:
        raise ModelContractError(f"transition {t} reported disabled but changed the state")
    return enabled
