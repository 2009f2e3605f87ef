"""Bundled models and the name registry used by the command line."""

from .tokenring import TokenRing

MODELS = {
    "tokenring": TokenRing,
}


def register_model(name, factory):
    """Make a model constructible from the command line under `name`."""
    MODELS[name] = factory
