"""Small models and run utilities shared across the tests."""

import io

from statespace import Model, RunConfig, TokenRing, VarDecl, explore, run, validate


def run_capture(model, cfg=None, quiet=False):
    """Run the full pipeline, returning (exit code, transcript lines)."""
    buf = io.StringIO()
    code = run(model, cfg, out=buf, quiet=quiet)
    return code, buf.getvalue().splitlines()


def explore_model(model, **cfg_kwargs):
    plan = validate(model, RunConfig(**cfg_kwargs))
    return plan, explore(plan)


class TwoStateLoop(Model):
    """x=0 -> x=1 via t0; t1 is a self-loop enabled only at x=1."""

    name = "twostate"

    def declarations(self):
        return [VarDecl("x", 1, 1)]

    def init(self, state):
        return 2

    def fire(self, state, t):
        x = state[0] & 1
        if t == 0:
            if x == 0:
                state[0] |= 1
                return True
            return False
        return x == 1

    def format_state(self, state):
        return f"x={state[0] & 1}"


class MayLoop(TwoStateLoop):
    """TwoStateLoop with a configurable may-progress predicate."""

    def __init__(self, accepted=()):
        self.accepted = set(accepted)

    def is_may_progress(self, state):
        return (state[0] & 1) in self.accepted


class StubbornLoop(TwoStateLoop):
    """TwoStateLoop with trivial stubborn rules and an always-happy state check."""

    def next_stubborn(self, state, t, emitter):
        pass

    def check_state(self, state):
        return None


class NoTransitions(Model):
    """A single-state model; records check_deadlock invocations."""

    name = "frozen"
    enabled_checks = frozenset({"chk_deadlock"})

    def __init__(self):
        self.deadlock_states = []

    def declarations(self):
        return [VarDecl("x", 1, 1)]

    def init(self, state):
        return 0

    def fire(self, state, t):
        raise AssertionError("fire must not be called when m == 0")

    def format_state(self, state):
        return "frozen"

    def check_deadlock(self, state):
        self.deadlock_states.append(tuple(state))
        return None


class GrantWithoutToken(TokenRing):
    """Token test removed from the grant step: mutual exclusion breaks."""

    def fire(self, state, t):
        n = self.n
        if t >= 2 * n:
            i = t - 2 * n
            if self._getS(state, i) == 1 and self._getC(state, i) == 1:
                self._setC(state, i, 2)
                self._setS(state, i, 2)
                return True
        return super().fire(state, t)


class CriticalZeroForbidden(TokenRing):
    """State check that rejects any state where customer 0 is critical."""

    def check_state(self, state):
        if self._getC(state, 0) == 2:
            return "customer 0 entered the critical section"
        return None


class MayTokenRing(TokenRing):
    """Token ring plus an is_may_progress predicate that accepts nothing."""

    def is_may_progress(self, state):
        return False


class PurityViolator(Model):
    """fire mutates the state and then claims the transition was disabled."""

    def declarations(self):
        return [VarDecl("x", 1, 4)]

    def init(self, state):
        return 1

    def fire(self, state, t):
        state[0] = (state[0] + 1) & 0xF
        return False

    def format_state(self, state):
        return str(state[0])


class DriftingRepresentative(TokenRing):
    """A symmetry mapping that keeps moving: not idempotent."""

    def symmetry_representative(self, state):
        x = self._getC(state, 0)
        self._setC(state, 0, (x + 1) & 3)


class CallbackRecorder(TwoStateLoop):
    """Sets err_msg during the second firing attempt and logs every callback."""

    def __init__(self):
        self.calls = []

    def fire(self, state, t):
        self.calls.append(("fire", t))
        if t == 1:
            self.err_msg = "inconsistent"
            return False
        return super().fire(state, t)

    def check_state(self, state):
        self.calls.append(("check_state", tuple(state)))
        return None


class InitCounter(TwoStateLoop):
    def __init__(self):
        self.init_calls = 0

    def init(self, state):
        self.init_calls += 1
        return super().init(state)
