"""ddmin-loc: localize faults from a single failing string input.

Submodules are imported lazily so the subject-runner subprocess path stays
cheap to start.
"""

__version__ = "0.1.0"

_SUBMODULES = (
    "core",
    "ddmin",
    "oracle",
    "sbfl",
    "locfusion",
    "metrics",
    "minilang",
    "harness",
)


def __getattr__(name):
    if name in _SUBMODULES:
        import importlib

        return importlib.import_module(f".{name}", __name__)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
